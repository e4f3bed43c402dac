use std::fmt;

use busyq_core::Error;

/// Command failure carrying its exit code class.
#[derive(Debug)]
pub enum Failure {
    Mismatch(String),
    BadInput(String),
    CapExceeded(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::BadInput(_) => 2,
            Failure::CapExceeded(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Mismatch(m) | Failure::BadInput(m) | Failure::CapExceeded(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap_exceeded() {
            Failure::CapExceeded(e.to_string())
        } else {
            Failure::BadInput(e.to_string())
        }
    }
}
