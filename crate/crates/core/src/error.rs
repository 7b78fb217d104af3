use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bloch vector norm {norm} exceeds 1 (nonphysical state)")]
    NonPhysicalState { norm: f64 },

    #[error("axis norm {norm} is not 1")]
    NotUnitAxis { norm: f64 },

    #[error("axis has zero length and cannot be normalized")]
    ZeroAxis,

    #[error("matrix is not Hermitian (residual {residual})")]
    NotHermitian { residual: f64 },

    #[error("density matrix trace {trace} is not 1")]
    BadTrace { trace: f64 },

    #[error("density matrix has negative eigenvalue {eigenvalue}")]
    NegativeEigenvalue { eigenvalue: f64 },

    #[error("matrix is not unitary (residual {residual})")]
    NotUnitary { residual: f64 },

    #[error("closed form requires a balanced beam splitter (omega = pi/2), got omega = {omega}")]
    UnbalancedSplitter { omega: f64 },

    #[error("({m_x}, {m_z}) lies outside the unit disk; no unit axis has these components")]
    OutsideDisk { m_x: f64, m_z: f64 },

    #[error("spherical angle out of range: {0}")]
    AngleOutOfRange(String),

    #[error("fit needs at least 3 distinct phases with a non-singular design, got {distinct} distinct")]
    RankDeficientFit { distinct: usize },

    #[error("three-point visibility {three_point} disagrees with dense-grid visibility {grid}")]
    ScanMismatch { three_point: f64, grid: f64 },

    #[error("unknown landscape function '{0}'")]
    UnknownFunction(String),

    #[error("malformed range '{0}'; expected name=start:end:count[:incl]")]
    MalformedRange(String),

    #[error("empty range for parameter '{0}'")]
    EmptyRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
