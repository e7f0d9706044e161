use thiserror::Error;

/// Errors raised by the library. Variants map one-to-one onto the failure
/// modes of the individual operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: at least one nonempty facet is required")]
    EmptyInput,
    #[error("vertex {vertex} is outside the universe of size {universe}")]
    VertexOutOfRange { vertex: usize, universe: usize },
    #[error("universe has more than {max} vertices ({requested})")]
    UniverseTooLarge { requested: usize, max: usize },
    #[error("vertex {vertex} belongs to no facet")]
    IsolatedVertex { vertex: usize },
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("{0} is not a facet of the complex")]
    NotAFacet(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("facet cardinality {d} is too small (need at least 2)")]
    DimensionTooSmall { d: usize },
    #[error("permutation is not a bijection on 0..{n}")]
    NotABijection { n: usize },
    #[error("cone needs at least one new vertex")]
    ZeroCone,
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("{0} is not a node of the dual graph")]
    UnknownNode(String),
    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("Serre level {0} has no combinatorial test")]
    UnsupportedLevel(usize),
    #[error("overlap complex is not pure")]
    OverlapNotPure,
    #[error("overlap complex has dimension {dim}, need at least {required}")]
    OverlapTooSmall { dim: isize, required: isize },
    #[error("overlap complex fails (S{level})")]
    OverlapSerreFailure { level: usize },
    #[error("facet cardinalities differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid vertex identification: {0}")]
    InvalidIdentification(String),
    #[error("gluing produced a complex that fails (S{level}) from inputs that satisfy it")]
    LevelNotPreserved { level: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("self-check failed for {family}: {detail}")]
    SelfCheckFailed { family: String, detail: String },
    #[error(
        "diameter {diameter} exceeds the upper bound {bound} for d={d}, n={n}; complex: {dump}"
    )]
    BoundViolation {
        d: usize,
        n: usize,
        diameter: usize,
        bound: u64,
        dump: String,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("io: {0}")]
    Io(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
