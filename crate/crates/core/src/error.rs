use thiserror::Error;

use crate::group::RationalAngle;

#[derive(Debug, Error)]
pub enum Error {
    #[error("angle denominator must be positive")]
    ZeroDenominator,
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("first generator angle must be 0, got {0}")]
    NonZeroFirstAngle(RationalAngle),
    #[error("generator angles {0} at positions {1} and {2} coincide; the angles of a generator set must be distinct")]
    DuplicateAngle(RationalAngle, usize, usize),
    #[error("angle {0} is not in the generator set")]
    AngleNotInSet(RationalAngle),
    #[error("revolving group order overflows u64")]
    GroupTooLarge,
    #[error("exponent {exponent} out of range for modulus {modulus}")]
    ExponentOutOfRange { exponent: u64, modulus: u64 },
    #[error("digit {digit} out of range for {m} maps")]
    DigitOutOfRange { digit: usize, m: usize },
    #[error("complex value {0} is not an element of the revolving group")]
    NotAGroupElement(num_complex::Complex64),
    #[error("step from exponent {from} to {to} does not use a generator angle")]
    InvalidStep { from: u64, to: u64 },
    #[error("word of length {len} is too short, need at least {min}")]
    WordTooShort { len: usize, min: usize },
    #[error("enumeration would produce {count} items, above the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },
    #[error("contraction ratio |alpha| = {0} is not below 1")]
    NotContracting(f64),
    #[error("expected {expected} constants, got {got}")]
    ConstantCount { expected: usize, got: usize },
    #[error("revolving angle must be nonzero")]
    ZeroRevolvingAngle,
    #[error("{0}")]
    Degenerate(String),
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("invalid word text {text:?}: {reason}")]
    ParseWord { text: String, reason: String },
    #[error("malformed config: {0}")]
    Config(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("preset {name} is not supported: {reason}")]
    RejectedPreset { name: String, reason: String },
    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
