//! Error type shared by every module in the crate.

use crate::liecore::LieSpan;

/// Errors raised by the exact solvers, the monodromy calculus, and the
/// certification pipeline.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse rational literal {0:?}")]
    ParseRational(String),
    #[error("the zero polynomial is not accepted here")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    PolynomialDivisionByZero,
    #[error("coefficients too large for the rational root search")]
    RootSearchOverflow,
    #[error("pairing must have weight {expected}, got weight {got}")]
    WeightMismatch { expected: u8, got: u8 },
    #[error("pairing matrix violates the weight-{weight} symmetry")]
    BadPairingSymmetry { weight: u8 },
    #[error("pairing matrix is {rows}x{cols} but there are {labels} basis labels")]
    BadPairingShape {
        rows: usize,
        cols: usize,
        labels: usize,
    },
    #[error("cycle has {cycle} coordinates, lattice has rank {rank}")]
    CycleDimension { cycle: usize, rank: usize },
    #[error("loop word is empty")]
    EmptyWord,
    #[error("loop word factors must all be square matrices of one size")]
    MixedWordSizes,
    #[error("unknown matrix name {0:?} in loop word")]
    UnknownWordMatrix(String),
    #[error("malformed loop word token {0:?}")]
    BadWordToken(String),
    #[error("not a nodal (index-2 unipotent) matrix")]
    NotNodal,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("not quasi-unipotent within bound k_max = {k_max}")]
    NotQuasiUnipotent { k_max: usize },
    #[error(
        "unipotency profile (k = {torsion_order}, m = {unipotency_index}) does not fit the matrix"
    )]
    InvalidProfile {
        torsion_order: usize,
        unipotency_index: usize,
    },
    #[error("Jordan-Chevalley check failed: {0}")]
    DecompositionCheck(&'static str),
    #[error("closure dimension cap {cap} exceeded")]
    DimCapExceeded { cap: usize, partial: LieSpan },
    #[error("dimension cap {cap} exceeds the ambient space of dimension {ambient}")]
    BadDimCap { cap: usize, ambient: usize },
    #[error("element is not contained in the span")]
    NotInSpan,
    #[error("span is not closed under the bracket")]
    SpanNotClosed,
    #[error("Cartan pair does not commute")]
    NonCommutingCartan,
    #[error("adjoint action is not diagonalizable over the rationals")]
    NonDiagonalizable,
    #[error("Killing restriction to the Cartan is degenerate")]
    DegenerateKilling,
    #[error("root datum requires cartan_dim = 2, got {0}")]
    NotRankTwo(usize),
    #[error("roots do not occur in opposite pairs")]
    UnpairedRoots,
    #[error("invalid family id {0}: expected 1..=4")]
    InvalidFamily(u8),
    #[error("fiber Euler numbers sum to {sum}, which is not a positive multiple of 12")]
    BadEulerSum { sum: usize },
    #[error("degenerate fiber configuration: no singular fibers")]
    DegenerateConfig,
    #[error("component chain needs at least 2 components, got {0}")]
    ChainTooShort(usize),
    #[error("section component {0:?} is not among the chain labels")]
    SectionNotInChain(String),
    #[error("unknown component label {0:?}")]
    UnknownComponent(String),
    #[error("correction system is inconsistent")]
    InconsistentSystem,
    #[error("correction system is underdetermined on the chosen unknowns")]
    UnderdeterminedSystem,
    #[error("matrix has no finite order within bound {bound}")]
    NotFiniteOrder { bound: usize },
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
