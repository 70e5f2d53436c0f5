use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("grid size {0} is not a power of two >= 16")]
    GridSize(usize),

    #[error("grid coverage: {what} needs [{need_lo:.6e}, {need_hi:.6e}] but grid provides [{have_lo:.6e}, {have_hi:.6e}] (deficit {deficit:.6e})")]
    Coverage {
        what: &'static str,
        need_lo: f64,
        need_hi: f64,
        have_lo: f64,
        have_hi: f64,
        deficit: f64,
    },

    #[error("state is not normalized: |norm^2 - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("grids differ: {0}")]
    GridMismatch(String),

    #[error("numerical instability: {0}")]
    Instability(String),

    #[error("energy {energy:.6e} is not below the barrier peak {peak:.6e}; no turning points")]
    NoTurningPoints { energy: f64, peak: f64 },

    #[error("energy {energy:.6e} lies below the barrier base {base:.6e}")]
    DegenerateEnergy { energy: f64, base: f64 },

    #[error("quadrature did not converge: error estimate {achieved:.3e} > target {target:.3e}")]
    Quadrature { achieved: f64, target: f64 },

    #[error("tunneling run not stationary after {steps} steps (T={transmitted:.3e}, R={reflected:.3e})")]
    NotStationary {
        steps: usize,
        transmitted: f64,
        reflected: f64,
    },

    #[error("geometry inconsistency: {0}")]
    Geometry(String),

    #[error("no positive real solution: {0}")]
    Infeasible(String),

    #[error("branch mismatch: {0}")]
    BranchMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
