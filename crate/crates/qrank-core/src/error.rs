use thiserror::Error;

/// Errors surfaced by the exact-arithmetic layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    BadEmbedding { from: u64, to: u64 },
    #[error("coefficient of q^{wanted} requested beyond truncation O(q^{trunc})")]
    OutOfTruncation { wanted: String, trunc: String },
    #[error("series has no invertible leading term within truncation")]
    NonInvertibleSeries,
    #[error("dissection requires integer exponents, found denominator {0}")]
    FractionalDissect(i64),
    #[error("infinite product does not converge as a formal series")]
    NonConvergentProduct,
    #[error("generalized eta function f_{{N,rho}} requires N to not divide rho (N={n}, rho={rho})")]
    DegenerateEta { n: u64, rho: i64 },
    #[error("degenerate Klein form parameters: (a1*m, a2) is an integer pair")]
    DegenerateKlein,
    #[error("Lambert-series pole at 1 (violated hypothesis: need c∤2a or cd∤b)")]
    PoleAtOne,
    #[error("S(r,c): c odd requires c∤r (r={r}, c={c})")]
    DegenerateS { r: i64, c: u64 },
    #[error("z = -1 is outside the domain of the bilateral rank form")]
    ZMinusOne,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("resource budget refused: {0}")]
    ResourceBudget(String),
    #[error("unsupported block in valence budget: {0}")]
    UnsupportedBlock(String),
    #[error("inadmissible descriptor: {0}")]
    BadDescriptor(String),
    #[error("parse error in series text: {0}")]
    Parse(String),
}
