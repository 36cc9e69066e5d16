use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("hyperfield of order {0} exceeds the supported maximum of 64 elements")]
    TooLarge(usize),
    #[error("not a subgroup of the nonzero elements: {0}")]
    NotASubgroup(String),
    #[error("zero argument where a nonzero element is required")]
    ZeroArgument,
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("not an isomorphism: {0}")]
    NotIso(String),
    #[error("quotient is not structured as a group extension: {0}")]
    NotExtensionStructured(String),
    #[error("construction violates the hyperfield axioms: {0}")]
    AxiomFailure(String),
    #[error("field of characteristic 2 is not supported here (q = {0})")]
    EvenCharacteristic(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element-level arithmetic for dyadic extensions of degree {0} is not supported")]
    UnsupportedDyadicExtension(u32),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unsupported residue field: {0}")]
    UnsupportedResidue(String),
    #[error("no case matches the valuation descriptor: {0}")]
    NoCaseMatched(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero element")]
    ZeroElement,
    #[error("residue field of even characteristic")]
    EvenResidue,
    #[error("input is a square")]
    InputIsSquare,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("duplicate place: {0}")]
    DuplicatePlace(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
}
