use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} is outside the stream domain (starts at {start})")]
    OutOfDomain { index: u64, start: u64 },

    #[error("factor set for n = {n} did not stabilize within a prefix of {cap} symbols")]
    NoStabilization { n: usize, cap: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("rank {rank} exceeds cap {cap}")]
    RankCap { rank: usize, cap: usize },

    #[error("oracle is not consistent with a linear representation at depth {depth}: {detail}")]
    Inconsistent { depth: usize, detail: String },

    #[error("orbit not finite within cap of {cap} states")]
    StateCap { cap: usize },

    #[error("singular system while fitting closed form: {0}")]
    Singular(String),

    #[error("unknown set {0:?}")]
    UnknownSet(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fitted closed form fails at a holdout point: {0}")]
    Holdout(String),

    #[error("representation disagrees with the oracle at n = {n}: {detail}")]
    Uncertified { n: u64, detail: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
