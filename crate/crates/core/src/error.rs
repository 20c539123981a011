use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("tuple is not a member: {0}")]
    NotMember(String),
    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("loop refinement exceeded {cap} samples near parameter {parameter}")]
    RefinementCap { cap: usize, parameter: f64 },
    #[error("loop passes through zero at parameter {0}")]
    ZeroOnLoop(f64),
    #[error("winding sum {0} is not close to an integer")]
    NonInteger(f64),
    #[error("no member found after {attempts} attempts ({rejected} rejected)")]
    Exhausted { attempts: usize, rejected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
