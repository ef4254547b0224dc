use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Problem size outside the range an operation supports.
    InvalidSize {
        n: usize,
        min: usize,
    },
    /// The values do not form a permutation of `1..=n`.
    NotAPermutation,
    SizeMismatch {
        expected: usize,
        found: usize,
    },
    /// A 1-based position pair that is out of range or degenerate.
    InvalidPositions {
        i: usize,
        j: usize,
        n: usize,
    },
    CodeOutOfRange {
        code: u64,
        size: u64,
    },
    InvalidProbability(f64),
    /// Asked for more items than are available.
    CountOutOfRange {
        count: u64,
        max: u64,
    },
    DuplicateMutation(u64),
    InvalidFitness {
        value: usize,
        n: usize,
    },
    InvalidParameter(&'static str),
    /// `Ham` admits no permutation at this fitness (f = n - 1).
    UnreachableFitness {
        f: usize,
        n: usize,
    },
    PreconditionViolated(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSize { n, min } => write!(f, "invalid problem size {n} (must be at least {min})"),
            Error::NotAPermutation => f.write_str("values do not form a permutation of 1..=n"),
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected}, found {found}")
            }
            Error::InvalidPositions { i, j, n } => {
                write!(f, "invalid positions ({i}, {j}) for size {n}")
            }
            Error::CodeOutOfRange { code, size } => {
                write!(f, "mutation code {code} outside [0, {size})")
            }
            Error::InvalidProbability(p) => write!(f, "probability {p} outside (0, 1]"),
            Error::CountOutOfRange { count, max } => write!(f, "count {count} outside [1, {max}]"),
            Error::DuplicateMutation(code) => write!(f, "mutation code {code} appears twice"),
            Error::InvalidFitness { value, n } => write!(f, "fitness {value} outside [0, {n}]"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::UnreachableFitness { f: fit, n } => {
                write!(f, "no permutation of size {n} has fitness {fit}")
            }
            Error::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
