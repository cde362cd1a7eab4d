use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid number `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polygon needs at least 3 vertices, got {0}")]
    DegeneratePolygon(usize),
    #[error("polygon is not strictly convex and counterclockwise")]
    NotConvex,
    #[error("shape center is not strictly inside the polygon")]
    CenterOutside,
    #[error("diameter {diameter} outside [1, {sigma}]")]
    DiameterOutOfRange { diameter: String, sigma: String },
    #[error("shape ratio {rho:.6} exceeds declared bound {bound:.6}")]
    RhoTooLarge { rho: f64, bound: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("coloring is not valid for sigma: {0}")]
    InvalidColoring(String),
    #[error("instance too large for exact oracle: n = {n}, limit = {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("bad input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
