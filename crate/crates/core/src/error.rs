use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown target `{0}` (expected one of point, P1, P2)")]
    UnknownTarget(String),

    #[error("invalid target presentation: {0}")]
    InvalidTarget(String),

    #[error("series live on different targets or truncations")]
    TruncationMismatch,

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    /// A term would land outside the retained z-window. Never dropped silently.
    #[error("z-exponent {exp} escapes the window [{z_min}, {z_max}]")]
    WindowOverflow { exp: i32, z_min: i32, z_max: i32 },

    #[error("unstable correlator with {n} insertions in class {beta}")]
    Unstable { beta: String, n: usize },

    #[error("no correlator backend for target `{0}`")]
    Capability(String),

    #[error("contract violation: {0}")]
    Contract(String),
}
