use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at q = 1: {0}")]
    PoleAtOne(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank n = {0} is not supported (need n >= 2)")]
    InvalidRank(usize),

    #[error("parameter k = {0} is not supported (need k >= 1)")]
    InvalidK(i64),

    #[error("{what} = {value} is out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("element is not W-invariant")]
    NotInvariant,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("singular Gram system for lambda = {lambda}: {system}")]
    SingularSystem { lambda: String, system: String },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("vanishing denominator factor at root {root}, i = {i}")]
    VanishingFactor { root: String, i: i64 },

    #[error("invalid cache: {0}")]
    InvalidCache(String),

    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
