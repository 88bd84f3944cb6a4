use std::fmt;

use serde::Serialize;

/// Size of a finite set that may be too large to represent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Cardinality {
    Finite(u128),
    Astronomical,
}

impl Cardinality {
    pub fn of_power(base: usize, exponent: usize) -> Self {
        let Ok(exp) = u32::try_from(exponent) else {
            return if base <= 1 { Cardinality::Finite(base as u128) } else { Cardinality::Astronomical };
        };
        match (base as u128).checked_pow(exp) {
            Some(n) => Cardinality::Finite(n),
            None => Cardinality::Astronomical,
        }
    }

    pub fn times(self, factor: usize) -> Self {
        match self {
            Cardinality::Finite(n) => n
                .checked_mul(factor as u128)
                .map_or(Cardinality::Astronomical, Cardinality::Finite),
            Cardinality::Astronomical => Cardinality::Astronomical,
        }
    }

    /// `Some(n)` when the set has at most `cap` elements.
    pub fn within(self, cap: u64) -> Option<usize> {
        match self {
            Cardinality::Finite(n) if n <= cap as u128 => usize::try_from(n).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Astronomical => f.write_str("astronomical"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("{what} has {count} elements, which exceeds the enumeration cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: Cardinality,
        cap: u64,
    },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid decision: {0}")]
    InvalidDecision(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("axiom is not forcing: profile `{profile}` admits {outcomes} outcomes")]
    NotForcing { profile: String, outcomes: usize },
    #[error("implied rule is not a member of the domain's rule universe")]
    RuleOutsideUniverse,
    #[error("classification undetermined for: {}", .classes.join(", "))]
    Undetermined { classes: Vec<String> },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("axiom `{0}` has neither declared information requirements nor an enumerable domain")]
    UnclassifiedAxiom(String),
    #[error("inconsistent statement: {0}")]
    InconsistentStatement(String),
    #[error("witness verification failed: {0}")]
    WitnessVerification(String),
    #[error("axiom `{0}` evaluated the same decision differently on repeated calls")]
    Nondeterministic(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownProfile(_) => "unknown-profile",
            Error::UnknownOutcome(_) => "unknown-outcome",
            Error::UnknownRule(_) => "unknown-rule",
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::DomainMismatch(_) => "domain-mismatch",
            Error::InvalidDecision(_) => "invalid-decision",
            Error::InvalidDomain(_) => "invalid-domain",
            Error::NotForcing { .. } => "not-forcing",
            Error::RuleOutsideUniverse => "rule-outside-universe",
            Error::Undetermined { .. } => "undetermined",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::UnclassifiedAxiom(_) => "unclassified-axiom",
            Error::InconsistentStatement(_) => "inconsistent-statement",
            Error::WitnessVerification(_) => "witness-verification-failure",
            Error::Nondeterministic(_) => "nondeterministic-axiom",
            Error::Parse(_) => "parse-error",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_overflow_is_astronomical() {
        assert_eq!(Cardinality::of_power(2, 2), Cardinality::Finite(4));
        assert_eq!(Cardinality::of_power(3, 216), Cardinality::Astronomical);
        assert_eq!(Cardinality::of_power(1, 10_000_000_000), Cardinality::Finite(1));
    }

    #[test]
    fn within_respects_cap() {
        assert_eq!(Cardinality::Finite(27).within(27), Some(27));
        assert_eq!(Cardinality::Finite(28).within(27), None);
        assert_eq!(Cardinality::Astronomical.within(u64::MAX), None);
    }
}
