//! Catalog of complementarity, monogamy and tradeoff relations, each
//! evaluatable on a concrete state, plus the ensemble runner.
//!
//! A relation evaluates to one or more [`Check`]s (`lhs <op> rhs`); the
//! record reports the check with the smallest signed margin.

mod catalog;
mod ensemble;

use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::duality::LogBase;
use crate::error::{Error, Result};
use crate::profile::Bipartition;
use crate::serial;
use crate::states::{DensityMatrix, PureState};

pub use catalog::{find_relation, list_relations, primary_relations, resolve_ids, Relation, Requirement};
pub use ensemble::{run_ensemble, EnsembleReport, EnsembleSpec, ReportStatus, RunConfig, Witness};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SAT_TOL: f64 = 1e-9;
pub const WITNESS_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    Leq,
    Geq,
    Eq,
}

impl Direction {
    /// Signed slack; nonnegative when the relation holds exactly.
    pub fn margin(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Direction::Leq => rhs - lhs,
            Direction::Geq => lhs - rhs,
            Direction::Eq => -(lhs - rhs).abs(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Leq => "<=",
            Direction::Geq => ">=",
            Direction::Eq => "==",
        }
    }
}

/// One scalar comparison inside a relation.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub direction: Direction,
}

impl Check {
    pub fn new(label: impl Into<String>, lhs: f64, direction: Direction, rhs: f64) -> Self {
        Self { label: label.into(), lhs, rhs, direction }
    }

    pub fn margin(&self) -> f64 {
        self.direction.margin(self.lhs, self.rhs)
    }
}

/// A state under test. Pure states keep their vector; mixed states that are
/// numerically rank one are recognised as pure.
#[derive(Clone, Debug)]
pub struct Subject {
    density: DensityMatrix,
    pure: Option<PureState>,
}

impl Subject {
    pub fn from_pure(psi: PureState) -> Self {
        Self { density: psi.density(), pure: Some(psi) }
    }

    pub fn from_density(rho: DensityMatrix) -> Self {
        let pure = rho.as_pure();
        Self { density: rho, pure }
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.density
    }

    pub fn pure(&self) -> Option<&PureState> {
        self.pure.as_ref()
    }
}

/// Everything a relation may need besides the state itself.
#[derive(Clone, Copy, Debug)]
pub struct EvalContext<'a> {
    pub subject: &'a Subject,
    /// Second state for the two-state relations.
    pub sigma: Option<&'a DensityMatrix>,
    pub channel: Option<&'a KrausChannel>,
    /// Bipartition for bipartite relations; defaults to first party vs rest.
    pub cut: Option<&'a Bipartition>,
    pub base: LogBase,
    pub tol: f64,
    pub sat_tol: f64,
}

impl<'a> EvalContext<'a> {
    pub fn new(subject: &'a Subject) -> Self {
        Self {
            subject,
            sigma: None,
            channel: None,
            cut: None,
            base: LogBase::Two,
            tol: DEFAULT_TOL,
            sat_tol: DEFAULT_SAT_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub relation_id: String,
    /// Which comparison of the relation is binding.
    pub check: String,
    pub lhs_value: f64,
    pub rhs_value: f64,
    pub direction: Direction,
    pub margin: f64,
    pub satisfied: bool,
    pub saturated: bool,
    pub state_fingerprint: String,
    pub seed: Option<u64>,
}

/// Evaluates one relation. Inapplicable contexts are errors, never skips.
pub fn evaluate_relation(id: &str, ctx: &EvalContext<'_>) -> Result<RelationRecord> {
    let rel = find_relation(id)?;
    let checks = rel.checks(ctx)?;
    let worst = checks
        .into_iter()
        .min_by(|a, b| a.margin().total_cmp(&b.margin()))
        .expect("every relation yields at least one check");
    let margin = worst.margin();
    Ok(RelationRecord {
        relation_id: rel.id.to_string(),
        check: worst.label,
        lhs_value: worst.lhs,
        rhs_value: worst.rhs,
        direction: worst.direction,
        margin,
        satisfied: margin >= -ctx.tol,
        saturated: margin.abs() <= ctx.sat_tol,
        state_fingerprint: serial::fingerprint(ctx.subject.density()),
        seed: None,
    })
}

pub(crate) fn inapplicable(id: &str, reason: impl Into<String>) -> Error {
    Error::Inapplicable { id: id.to_string(), reason: reason.into() }
}
