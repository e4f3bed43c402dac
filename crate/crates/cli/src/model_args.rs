use std::path::PathBuf;

use busyq_core::model::ModelConfig;
use busyq_core::rational::{int, parse_rational};
use busyq_core::{ExactRational, Model};
use clap::Args;

use crate::failure::Failure;

/// One model source: `--n` (with `--lambda`, `--mu`), `--lambda-seq` (with
/// `--mu`), or `--config FILE`.
#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    /// Pool size N; arrival rates λ_j = λ(N − j).
    #[arg(long)]
    pub n: Option<usize>,
    /// Base arrival rate λ as p/q, integer or decimal (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Service rate μ (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Explicit comma-separated rates λ_1 > … > λ_N = 0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda_seq: Option<Vec<String>>,
    /// Model JSON: {"n", "lambda", "mu"} or {"lambda_seq", "mu"}.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn rational(flag: &str, text: &str) -> Result<ExactRational, Failure> {
    parse_rational(text).map_err(|e| Failure::BadInput(format!("--{flag}: {e}")))
}

impl ModelArgs {
    pub fn is_empty(&self) -> bool {
        self.n.is_none()
            && self.lambda.is_none()
            && self.mu.is_none()
            && self.lambda_seq.is_none()
            && self.config.is_none()
    }

    /// Builds the model; `default_n` fills in N when only rates are given.
    pub fn build_with_default_n(&self, default_n: Option<usize>) -> Result<Model, Failure> {
        let sources = [self.n.is_some(), self.lambda_seq.is_some(), self.config.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if sources > 1 {
            return Err(Failure::BadInput(
                "give exactly one model source: --n, --lambda-seq or --config".into(),
            ));
        }
        if let Some(path) = &self.config {
            if self.lambda.is_some() || self.mu.is_some() {
                return Err(Failure::BadInput("--config cannot be combined with --lambda/--mu".into()));
            }
            return Ok(ModelConfig::load(path)?.build()?);
        }
        let mu = match &self.mu {
            Some(t) => rational("mu", t)?,
            None => int(1),
        };
        if let Some(seq) = &self.lambda_seq {
            if self.lambda.is_some() {
                return Err(Failure::BadInput("--lambda cannot be combined with --lambda-seq".into()));
            }
            let seq = seq
                .iter()
                .map(|t| rational("lambda-seq", t))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Model::from_sequence(seq, mu)?);
        }
        let n = self.n.or(default_n).ok_or_else(|| {
            Failure::BadInput("no model given: use --n, --lambda-seq or --config".into())
        })?;
        let lambda = match &self.lambda {
            Some(t) => rational("lambda", t)?,
            None => int(1),
        };
        Ok(Model::from_rate(n, lambda, mu)?)
    }

    pub fn build(&self) -> Result<Model, Failure> {
        self.build_with_default_n(None)
    }
}
