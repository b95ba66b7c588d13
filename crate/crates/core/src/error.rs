use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("color modulus must be at least 1, got {0}")]
    InvalidColorModulus(usize),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("color {color} at position {position} is outside 0..{r}")]
    InvalidColor {
        position: usize,
        color: usize,
        r: usize,
    },
    #[error("sigma has length {sigma} but colors has length {colors}")]
    LengthMismatch { sigma: usize, colors: usize },
    #[error("{0} is undefined on the empty permutation")]
    EmptyPermutation(&'static str),
    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),
    #[error("coordinate {index} = {value} is outside [0, {r})")]
    CoordinateOutOfRange {
        index: usize,
        value: String,
        r: usize,
    },
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error("level k = {k} is outside 1..={max}")]
    LevelOutOfRange { k: usize, max: usize },
    #[error("cell permutation has length {got}, expected {expected}")]
    CellDimension { got: usize, expected: usize },
    #[error("count sequence of {region} is not a polynomial of degree <= {degree}")]
    NotPolynomial { region: String, degree: usize },
    #[error("Ehrhart series of {0} has non-integer coefficients")]
    NonIntegralSeries(String),
    #[error("{0}")]
    OutOfRange(String),
    #[error("series truncation orders {0:?} and {1:?} do not match")]
    OrderMismatch((usize, usize, usize), (usize, usize, usize)),
    #[error("cannot combine exponential and ordinary series")]
    NormalizationMismatch,
    #[error("series with constant term {0} is not a unit")]
    NotAUnit(String),
    #[error("insufficient truncation margin: {0}")]
    TruncationMargin(String),
    #[error("invalid Young diagram {0:?}")]
    InvalidDiagram(Vec<usize>),
}

pub type Result<T> = std::result::Result<T, Error>;
