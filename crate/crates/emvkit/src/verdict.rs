//! Check outcomes.
//!
//! Every checker in this crate returns a [`Verdict`] rather than a bare bool:
//! a failing check carries a replayable counterexample, and a check that only
//! probed a finite slice of an infinite structure says so instead of claiming
//! a full pass.

use serde::Serialize;

/// How far a check got.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Status {
    /// Exhaustively verified.
    Pass,
    /// Verified on everything enumerable up to `level`; nothing failed.
    PassUpToBound { level: u32 },
    /// A concrete counterexample was found.
    Fail,
    /// The clause's guard never fired up to `level`, so nothing was tested.
    Vacuous { level: u32 },
    /// The candidate does not satisfy the precondition for comparison
    /// (e.g. it does not commute with the cone it is measured against).
    NotACompetitor,
}

/// Which route decided a verdict, when more than one was available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecidedBy {
    /// A caller-supplied witness function produced (and we re-checked) the witness.
    WitnessFn,
    /// Plain enumeration up to the bound.
    BoundedSearch,
    /// Full enumeration of a finite structure.
    Exhaustive,
}

/// Counterexample payload: the violated clause plus named witness values,
/// all pre-rendered so reports stay printable without the algebra at hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub clause: String,
    pub items: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decided_by: Option<DecidedBy>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { status: Status::Pass, witness: None, decided_by: Some(DecidedBy::Exhaustive) }
    }

    pub fn pass_up_to(level: u32) -> Self {
        Verdict {
            status: Status::PassUpToBound { level },
            witness: None,
            decided_by: Some(DecidedBy::BoundedSearch),
        }
    }

    /// Pass that is exhaustive iff `exhaustive`; the usual way to close a
    /// check that ran over `elements(level)` of a possibly-infinite carrier.
    pub fn pass_at(level: u32, exhaustive: bool) -> Self {
        if exhaustive { Verdict::pass() } else { Verdict::pass_up_to(level) }
    }

    pub fn fail(clause: &str, items: Vec<(String, String)>) -> Self {
        Verdict {
            status: Status::Fail,
            witness: Some(Witness { clause: clause.to_string(), items }),
            decided_by: Some(DecidedBy::BoundedSearch),
        }
    }

    pub fn vacuous(level: u32) -> Self {
        Verdict { status: Status::Vacuous { level }, witness: None, decided_by: None }
    }

    pub fn not_a_competitor(clause: &str, items: Vec<(String, String)>) -> Self {
        Verdict {
            status: Status::NotACompetitor,
            witness: Some(Witness { clause: clause.to_string(), items }),
            decided_by: None,
        }
    }

    pub fn decided(mut self, by: DecidedBy) -> Self {
        self.decided_by = Some(by);
        self
    }

    /// True for `Pass` and `PassUpToBound`.
    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::PassUpToBound { .. })
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail)
    }

    pub fn clause(&self) -> Option<&str> {
        self.witness.as_ref().map(|w| w.clause.as_str())
    }

    /// First failing verdict wins; otherwise the weakest pass level survives.
    pub fn and(self, other: Verdict) -> Verdict {
        match (&self.status, &other.status) {
            (Status::Fail, _) => self,
            (_, Status::Fail) => other,
            (Status::NotACompetitor, _) => self,
            (_, Status::NotACompetitor) => other,
            (Status::Pass, _) => other,
            (Status::PassUpToBound { level: a }, Status::PassUpToBound { level: b }) => {
                if a <= b { self } else { other }
            }
            (Status::PassUpToBound { .. }, _) => self,
            (Status::Vacuous { .. }, _) => other,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "pass")?,
            Status::PassUpToBound { level } => write!(f, "pass-up-to-bound({level})")?,
            Status::Fail => write!(f, "fail")?,
            Status::Vacuous { level } => write!(f, "vacuous({level})")?,
            Status::NotACompetitor => write!(f, "not-a-competitor")?,
        }
        if let Some(w) = &self.witness {
            write!(f, " [{}", w.clause)?;
            for (k, v) in &w.items {
                write!(f, "; {k}={v}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// One named check result, as emitted by the CLI and the acceptance battery.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub id: String,
    pub verdict: Verdict,
    pub bound: u32,
}

impl Report {
    pub fn new(id: impl Into<String>, verdict: Verdict, bound: u32) -> Self {
        Report { id: id.into(), verdict, bound }
    }
}
