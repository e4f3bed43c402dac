use std::fmt;

use crate::error::{Error, Result};
use crate::exact::rates::RateTable;
use crate::exact::{BusyPeriodDistribution, Method, Scalar};
use crate::model::Model;
use crate::rational::{to_pq, ExactRational};

/// Dense lower-triangular `N × N` matrix with 1-based `(row, col)` access.
/// Only `col ≤ row` is stored; entries above the diagonal read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularMatrix<T = ExactRational> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> TriangularMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        TriangularMatrix {
            rows: (1..=dim).map(|r| vec![T::zero(); r]).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 1..=dim {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds from row slices; row `r` must hold exactly `r` entries.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != idx + 1 {
                return Err(Error::IndexOutOfRange(format!(
                    "row {} has {} entries, expected {}",
                    idx + 1,
                    row.len(),
                    idx + 1
                )));
            }
        }
        Ok(TriangularMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        assert!(row >= 1 && row <= self.dim() && col >= 1 && col <= self.dim(), "({row}, {col}) out of range");
        if col > row {
            T::zero()
        } else {
            self.rows[row - 1][col - 1].clone()
        }
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        assert!(col >= 1 && col <= row && row <= self.dim(), "({row}, {col}) not in lower triangle");
        self.rows[row - 1][col - 1] = value;
    }

    /// Stored entries of row `r` (columns `1..=r`).
    pub fn row(&self, r: usize) -> &[T] {
        &self.rows[r - 1]
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.dim());
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect()
    }

    /// Product of two lower-triangular matrices (again lower-triangular).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        let dim = self.dim();
        let mut out = Self::zeros(dim);
        for r in 1..=dim {
            for c in 1..=r {
                let mut acc = T::zero();
                for k in c..=r {
                    acc = acc + self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }
}

impl fmt::Display for TriangularMatrix<ExactRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.dim() {
            let cells: Vec<String> = (1..=self.dim()).map(|c| to_pq(&self.get(r, c))).collect();
            writeln!(f, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// `(A)_{n,i} = ρ_n^{−i} ∏_{k=i}^{n−1} λ_k/(λ_k − λ_n)` for `i ≤ n`.
pub fn matrix_a(model: &Model) -> Result<TriangularMatrix> {
    matrix_a_as::<ExactRational>(model)
}

pub fn matrix_a_as<T: Scalar>(model: &Model) -> Result<TriangularMatrix<T>> {
    let table = RateTable::<T>::new(model)?;
    build_a(&table)
}

fn build_a<T: Scalar>(table: &RateTable<T>) -> Result<TriangularMatrix<T>> {
    let rows = (1..=table.n())
        .map(|n| {
            let rho = table.rho(n);
            (1..=n)
                .map(|i| table.run(i, n).clone() / rho.powu(i as u32))
                .collect()
        })
        .collect();
    TriangularMatrix::from_rows(rows)
}

/// `b_n = ∏_{k=1}^{n−1} λ_k/(λ_k − λ_n)`; `b_1 = 1`.
pub fn vector_b(model: &Model) -> Result<Vec<ExactRational>> {
    vector_b_as::<ExactRational>(model)
}

pub fn vector_b_as<T: Scalar>(model: &Model) -> Result<Vec<T>> {
    let table = RateTable::<T>::new(model)?;
    Ok(build_b(&table))
}

fn build_b<T: Scalar>(table: &RateTable<T>) -> Vec<T> {
    (1..=table.n()).map(|n| table.run(1, n).clone()).collect()
}

/// Inverse by the triangular recurrence
/// `(A⁻¹)_{n,n} = 1/(A)_{n,n}` and
/// `(A⁻¹)_{n,i} = −(A⁻¹)_{i,i} Σ_{k=i+1}^{n} (A⁻¹)_{n,k} (A)_{k,i}`,
/// filled one sub-diagonal at a time from the main diagonal outwards.
pub fn invert_lower_triangular<T: Scalar>(a: &TriangularMatrix<T>) -> Result<TriangularMatrix<T>> {
    let dim = a.dim();
    let mut inv = TriangularMatrix::zeros(dim);
    for n in 1..=dim {
        let d = a.get(n, n);
        if d.is_zero() {
            return Err(Error::SingularMatrix(n));
        }
        inv.set(n, n, T::one() / d);
    }
    for offset in 1..dim {
        for n in offset + 1..=dim {
            let i = n - offset;
            let mut acc = T::zero();
            for k in i + 1..=n {
                acc = acc + inv.get(n, k) * a.get(k, i);
            }
            let value = -(inv.get(i, i) * acc);
            inv.set(n, i, value);
        }
    }
    Ok(inv)
}

/// `s = A⁻¹ b`.
pub fn busy_dist_matrix(model: &Model) -> Result<BusyPeriodDistribution> {
    busy_dist_matrix_as::<ExactRational>(model)
}

pub fn busy_dist_matrix_as<T: Scalar>(model: &Model) -> Result<BusyPeriodDistribution<T>> {
    let table = RateTable::<T>::new(model)?;
    let a = build_a(&table)?;
    let b = build_b(&table);
    let inv = invert_lower_triangular(&a)?;
    Ok(BusyPeriodDistribution::new(
        inv.mul_vec(&b),
        Method::MatrixInverse,
        model.digest(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::busy_dist_recursion;
    use crate::model::random_model;
    use crate::rational::{binomial, int, pow, ratio};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn a_entries_for_three_customers() {
        let m = Model::proportional(3, 1, 1).unwrap();
        let a = matrix_a(&m).unwrap();
        assert_eq!(a.get(2, 2), int(4));
        assert_eq!(a.get(2, 1), int(4));
        assert_eq!(a.get(1, 1), int(3));
        assert_eq!(a.get(1, 3), int(0));
        for n in 1..=3 {
            assert_eq!(a.get(n, n), pow(&m.rho(n).unwrap(), n as u32).recip());
        }
    }

    #[test]
    fn b_vector() {
        let m = Model::proportional(3, 1, 1).unwrap();
        assert_eq!(vector_b(&m).unwrap(), vec![int(1), int(2), int(1)]);
        for n in 1..=10 {
            let m = Model::from_rate(n, ratio(3, 7), int(2)).unwrap();
            let b = vector_b(&m).unwrap();
            assert_eq!(b[0], int(1));
            for (idx, entry) in b.iter().enumerate() {
                let expected = ExactRational::from_integer(binomial(n as u64 - 1, idx as u64));
                assert_eq!(entry, &expected);
            }
        }
    }

    #[test]
    fn inverse_of_identity() {
        let id = TriangularMatrix::<ExactRational>::identity(5);
        assert_eq!(invert_lower_triangular(&id).unwrap(), id);
    }

    #[test]
    fn inverse_diagonal_is_rho_power() {
        let m = Model::proportional(3, 1, 1).unwrap();
        let inv = invert_lower_triangular(&matrix_a(&m).unwrap()).unwrap();
        assert_eq!(inv.get(2, 2), ratio(1, 4));
        assert_eq!(inv.get(1, 1), ratio(1, 3));
        assert_eq!(inv.get(3, 3), int(1));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = TriangularMatrix::from_rows(vec![vec![int(1)], vec![int(2), int(0)]]).unwrap();
        assert_eq!(invert_lower_triangular(&a).unwrap_err(), Error::SingularMatrix(2));
        assert!(TriangularMatrix::from_rows(vec![vec![int(1), int(2)]]).is_err());
    }

    #[test]
    fn product_with_inverse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in 1..=10 {
            let a = matrix_a(&random_model(n, &mut rng)).unwrap();
            let inv = invert_lower_triangular(&a).unwrap();
            assert_eq!(a.mul(&inv), TriangularMatrix::identity(n));
            assert_eq!(inv.mul(&a), TriangularMatrix::identity(n));
        }
    }

    #[test]
    fn matrix_route_small_models() {
        let d = busy_dist_matrix(&Model::proportional(3, 1, 1).unwrap()).unwrap();
        assert_eq!(d.values(), &[ratio(1, 3), ratio(1, 6), ratio(1, 2)]);
        assert_eq!(d.method(), Method::MatrixInverse);
        let d = busy_dist_matrix(&Model::proportional(1, 4, 9).unwrap()).unwrap();
        assert_eq!(d.values(), &[int(1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn matrix_route_equals_recursion(n in 1usize..=10, seed in any::<u64>()) {
            let model = random_model(n, &mut ChaCha8Rng::seed_from_u64(seed));
            let a = busy_dist_matrix(&model).unwrap();
            let b = busy_dist_recursion(&model).unwrap();
            prop_assert!(a.same_values(&b));
        }
    }
}
