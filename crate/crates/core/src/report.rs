//! Structured results of identity checks.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::MultiPoly;

/// Which identity a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    T1_11,
    T1_12,
    T1_13,
    T1_14,
    T1_15,
    T1_16,
    T2_17,
    T3_18,
    T3_19,
    T4_20,
    T4_21,
    T5,
    C1,
    E1,
    E2,
    E3,
    Oracle,
}

impl IdentityId {
    pub fn label(self) -> &'static str {
        match self {
            IdentityId::T1_11 => "T1.11",
            IdentityId::T1_12 => "T1.12",
            IdentityId::T1_13 => "T1.13",
            IdentityId::T1_14 => "T1.14",
            IdentityId::T1_15 => "T1.15",
            IdentityId::T1_16 => "T1.16",
            IdentityId::T2_17 => "T2.17",
            IdentityId::T3_18 => "T3.18",
            IdentityId::T3_19 => "T3.19",
            IdentityId::T4_20 => "T4.20",
            IdentityId::T4_21 => "T4.21",
            IdentityId::T5 => "T5",
            IdentityId::C1 => "C1",
            IdentityId::E1 => "E1",
            IdentityId::E2 => "E2",
            IdentityId::E3 => "E3",
            IdentityId::Oracle => "ORACLE",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// First failing grid point and the difference `lhs - rhs` there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: u32,
    pub k: i64,
    pub context: String,
    #[serde(serialize_with = "display_string")]
    pub difference: MultiPoly,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={}", self.n, self.k)?;
        if !self.context.is_empty() {
            write!(f, " ({})", self.context)?;
        }
        write!(f, ": difference {}", self.difference)
    }
}

fn display_string<S: Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Outcome of one identity over a parameter grid. It passed exactly when
/// no witness was recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub n_max: u32,
    pub ks: Vec<i64>,
    pub order: Option<usize>,
    pub checks: usize,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IdentityReport", 8)?;
        st.serialize_field("id", self.id.label())?;
        st.serialize_field("n", &self.n_max)?;
        st.serialize_field("k", &self.ks)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("checks", &self.checks)?;
        st.serialize_field("status", self.status())?;
        st.serialize_field("witness", &self.witness.as_ref().map(|w| w.to_string()))?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<6} {} n<={} k={:?} checks={}",
            self.id.label(),
            self.status(),
            self.n_max,
            self.ks,
            self.checks
        )?;
        if let Some(order) = self.order {
            write!(f, " order={order}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  first failure: {w}")?;
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}

/// Accumulates comparisons for one identity, keeping the first mismatch.
pub(crate) struct Checker {
    report: IdentityReport,
}

impl Checker {
    pub fn new(id: IdentityId, n_max: u32, ks: &[i64]) -> Self {
        Checker {
            report: IdentityReport {
                id,
                n_max,
                ks: ks.to_vec(),
                order: None,
                checks: 0,
                witness: None,
                notes: Vec::new(),
            },
        }
    }

    pub fn order(mut self, order: usize) -> Self {
        self.report.order = Some(order);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }

    /// Records `lhs == rhs` at grid point `(n, k)`.
    pub fn check(
        &mut self,
        n: u32,
        k: i64,
        context: impl FnOnce() -> String,
        lhs: &MultiPoly,
        rhs: &MultiPoly,
    ) {
        self.report.checks += 1;
        if lhs != rhs && self.report.witness.is_none() {
            self.report.witness = Some(Witness {
                n,
                k,
                context: context(),
                difference: lhs - rhs,
            });
        }
    }

    /// Records a failure that has no polynomial difference to show.
    pub fn fail(&mut self, n: u32, k: i64, context: impl Into<String>) {
        self.report.checks += 1;
        if self.report.witness.is_none() {
            self.report.witness = Some(Witness {
                n,
                k,
                context: context.into(),
                difference: MultiPoly::zero(),
            });
        }
    }

    pub fn finish(self) -> IdentityReport {
        self.report
    }
}
