use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants are grouped by the stage that raises them; [`Error::exit_code`]
/// maps them onto the command-line exit-code contract.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // input / schema
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot mix exact and floating coefficient kinds")]
    KindMismatch,
    #[error("value is not finite: {0}")]
    NonFinite(String),
    #[error("cannot parse `{text}` as a Gaussian rational: {reason}")]
    Parse { text: String, reason: String },

    // domain geometry
    #[error("holes {0} and {1} overlap or touch")]
    OverlappingHoles(usize, usize),
    #[error("hole {0} is not strictly inside the outer disc")]
    HoleOutsideOuter(usize),
    #[error("basepoint lies in hole {0} or outside the outer disc")]
    BasepointInHole(usize),
    #[error("corridor from the basepoint to hole {hole} is blocked by hole {blocker}")]
    SpiderBlocked { hole: usize, blocker: usize },
    #[error("hole index {0} out of range")]
    NoSuchHole(usize),
    #[error("domain is not an annulus centred at the origin")]
    NotAnnulus,

    // tracking
    #[error("roots collide at x = {x} (separation {separation:.3e})")]
    RootCollision { x: Complex64, separation: f64 },
    #[error("root finder did not converge at x = {x}")]
    NoConvergence { x: Complex64 },
    #[error("Weierstrass condition fails near x = {x} (|disc| = {value:.3e})")]
    WeierstrassViolation { x: Complex64, value: f64 },
    #[error("step size underflow at path parameter {at:.6}")]
    StepUnderflow { at: f64 },
    #[error("ambiguous root matching at path parameter {at:.6}")]
    AmbiguousMatch { at: f64 },

    // groups
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("permutations of different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("given elements do not form a subgroup")]
    NotASubgroup,

    // covering / factoring
    #[error("symmetric function of orbit {orbit} is not a polynomial of degree <= {bound} (fit residual {residual:.3e})")]
    InterpolationFailure { orbit: usize, bound: usize, residual: f64 },
    #[error("factor product deviates from f by {0:.3e}")]
    ResidualTooLarge(f64),

    // determinant apparatus
    #[error("roots are not pairwise distinct")]
    DuplicateRoots,
    #[error("degree {0} exceeds the V_n cap (5) without the large flag")]
    DegreeTooLarge(usize),
    #[error("{what}: relative deviation {deviation:.3e} exceeds tolerance {tolerance:.1e}")]
    ToleranceExceeded { what: String, deviation: f64, tolerance: f64 },
    #[error("linear system is singular")]
    SingularSystem,

    // rationalization
    #[error("denominator bound exhausted at {0}")]
    BoundExhausted(u64),
    #[error("coefficient homotopy leaves the Weierstrass locus at t = {t:.4}, x = {x}")]
    HomotopyLeavesB { t: f64, x: Complex64 },
    #[error("monodromy groups differ at the two homotopy ends")]
    GroupMismatch,

    // realization
    #[error("search budget of {0} candidates exhausted")]
    SearchBudgetExhausted(usize),
}

impl Error {
    /// Exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Input(_) | KindMismatch | NonFinite(_) | Parse { .. } | OverlappingHoles(..)
            | HoleOutsideOuter(_) | BasepointInHole(_) | SpiderBlocked { .. } | NoSuchHole(_)
            | NotAnnulus | DegreeMismatch(..) | NotAPermutation(_) | NotASubgroup
            | DegreeTooLarge(_) => 1,
            WeierstrassViolation { .. } | RootCollision { .. } | HomotopyLeavesB { .. } => 2,
            NoConvergence { .. } | StepUnderflow { .. } | AmbiguousMatch { .. }
            | InterpolationFailure { .. } | ResidualTooLarge(_) | DuplicateRoots
            | ToleranceExceeded { .. } | SingularSystem | BoundExhausted(_) | GroupMismatch => 3,
            OrderCapExceeded { .. } => 4,
            SearchBudgetExhausted(_) => 5,
        }
    }
}
