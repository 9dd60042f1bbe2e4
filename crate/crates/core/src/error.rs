use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (p < 2^20 required)")]
    PrimeTooLarge(u64),
    #[error("field of order {p}^{k} does not fit the element encoding (q <= 2^32 required)")]
    FieldTooLarge { p: u64, k: usize },
    #[error("invalid field request: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation needs a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("overflow: {0}; use sampling mode or raise the limit")]
    Overflow(String),
    #[error("residues have different moduli")]
    ModulusMismatch,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("coefficient out of field at byte {pos}: {msg}")]
    CoefficientOutOfField { pos: usize, msg: String },
    #[error("polynomial is constant in x")]
    ConstantInX,
    #[error("polynomial is not separable over F_q(t)")]
    NotSeparable,
    #[error("content is not square-free")]
    ContentNotSquarefree,
    #[error("formal leading coefficient in t is not a constant")]
    NonconstantLeadingCoefficient,
    #[error("multivariate operands have different numbers of variables")]
    ArityMismatch,
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("exponent overflow in monomial arithmetic")]
    ExponentOverflow,
    #[error("term count exceeded the cap of {cap} monomials")]
    TermCap { cap: usize },
    #[error("division is not exact")]
    InexactDivision,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
