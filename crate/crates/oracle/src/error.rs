use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("budget exceeded: p^(3n) = {cost} > {budget} for p = {p}, n = {n}")]
    BudgetExceeded { p: u64, n: u32, cost: u128, budget: u128 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("non-character input: inner product residual {0:e}")]
    NonCharacter(f64),
    #[error("incompatible (phi, Psi_X) pair: {0}")]
    IncompatiblePair(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("character table construction failed: {0}")]
    Table(String),
    #[error(transparent)]
    Engine(#[from] sl2_branching::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
