//! Error type shared by the whole crate.
//!
//! Certified computations never fall back to floating point: when a
//! finite continued-fraction expansion runs out of terms before a sign
//! or floor can be decided, the operation fails with
//! [`Error::InsufficientExpansion`] instead of guessing.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The continued-fraction expansion has no more partial quotients
    /// (finite expansion exhausted, or the configured depth cap hit)
    /// before a certified answer was reached.
    #[error("continued fraction expansion exhausted after {terms} terms; a deeper expansion is required")]
    InsufficientExpansion { terms: usize },

    /// Positional parse error for the slope text syntax.
    #[error("invalid slope at byte {position}: {message}")]
    SlopeParse { position: usize, message: String },

    /// Words serialize as ASCII strings of '0' and '1'.
    #[error("invalid binary word at byte {position}: expected '0' or '1'")]
    WordParse { position: usize },

    /// Slopes are normalized so that the first partial quotient is at
    /// least 2; a leading 1 means the caller should complement the
    /// slope instead.
    #[error("first partial quotient is 1; use the complemented slope [0; a2+1, a3, ...] which swaps the letters 0 and 1")]
    UnnormalizedSlope,

    /// The queried word does not occur in the language of the slope.
    #[error("word {word} is not a factor of this slope")]
    NotAFactor { word: String },

    /// An occurrence scan saw too few occurrences to say anything.
    #[error("horizon {horizon} too small: only {occurrences} occurrence(s) found")]
    HorizonTooSmall { horizon: usize, occurrences: usize },

    /// Factor enumeration hit its doubling cap. This signals a bug (or
    /// an absurd cap), never a silent truncation.
    #[error("factor enumeration for length {length} exceeded the prefix cap {cap}")]
    EnumerationCapExceeded { length: usize, cap: usize },

    /// The rotation-coding and standard-word backends disagreed. Pure
    /// bug sentinel; never expected.
    #[error("characteristic word backends disagree at position {position}")]
    BackendMismatch { position: usize },

    /// A scan found a longer abelian power than the exponent formula
    /// allows. Falsification sentinel; never expected.
    #[error("scan found exponent {scanned} for period {period}, exceeding the formula value {formula}")]
    FormulaExceeded { period: usize, formula: u64, scanned: u64 },

    /// An operation's stated precondition does not hold.
    #[error("precondition failed: {what}")]
    PreconditionFailed { what: String },

    /// A verified consequence of the theory failed to hold. Bug
    /// sentinel: either the implementation or the claim is wrong.
    #[error("claim violated: {what}")]
    ClaimViolated { what: String },

    /// A straddling k-abelian completability check would require
    /// enumerating more pad bits than the configured budget.
    #[error("pad enumeration budget exceeded: {bits} bits needed")]
    PadBudgetExceeded { bits: usize },

    /// Unknown scenario name passed to the verification harness.
    #[error("unknown scenario {name:?}")]
    UnknownScenario { name: String },
}

impl Error {
    /// Inconclusive errors mean "could not decide at this precision or
    /// horizon"; they are reported as a third status by the harness,
    /// distinct from an assertion failure.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::InsufficientExpansion { .. }
                | Error::HorizonTooSmall { .. }
                | Error::EnumerationCapExceeded { .. }
                | Error::PadBudgetExceeded { .. }
        )
    }
}
