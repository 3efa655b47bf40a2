//! Extremal scans of complement distance spectra over diameter > 3 graphs.
//!
//! Each objective keeps the best `TOP_CLASSES` isomorphism classes, ranked
//! by value and then by canonical code. A class's value is the best value
//! over its labeled members, so a merge of partial rankings gives the same
//! result in any order and for any split of the input.

use std::cmp::Ordering;

use serde::Serialize;

use crate::graph::{CanonicalForm, Graph};
use crate::real::Real;
use crate::spectra::Spectrum;

use super::enumerate::{check_order, par_map_indices, par_masks};
use super::{complement_spectrum, VerifyError};

/// Classes kept per objective.
pub const TOP_CLASSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MaxLambda1,
    MinLambda1,
    MaxLambdaN,
    MinLambdaN,
}

impl Objective {
    pub const ALL: [Objective; 4] = [
        Objective::MaxLambda1,
        Objective::MinLambda1,
        Objective::MaxLambdaN,
        Objective::MinLambdaN,
    ];

    pub fn value(self, s: &Spectrum) -> f64 {
        match self {
            Objective::MaxLambda1 | Objective::MinLambda1 => s.largest(),
            Objective::MaxLambdaN | Objective::MinLambdaN => s.least(),
        }
    }

    pub fn maximizes(self) -> bool {
        matches!(self, Objective::MaxLambda1 | Objective::MaxLambdaN)
    }

    /// Smaller keys rank first.
    fn key(self, v: f64) -> f64 {
        if self.maximizes() {
            -v
        } else {
            v
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassRecord {
    pub canon: CanonicalForm,
    pub value: f64,
}

impl ClassRecord {
    pub fn graph6(&self) -> String {
        self.canon.to_graph().to_graph6()
    }
}

/// Best classes for one objective, best first.
#[derive(Clone, Debug)]
pub struct Ranking {
    pub objective: Objective,
    pub classes: Vec<ClassRecord>,
}

impl Ranking {
    fn new(objective: Objective) -> Self {
        Ranking {
            objective,
            classes: Vec::with_capacity(TOP_CLASSES + 1),
        }
    }

    fn cmp(&self, a: &ClassRecord, b: &ClassRecord) -> Ordering {
        let o = self.objective;
        o.key(a.value)
            .total_cmp(&o.key(b.value))
            .then(a.canon.cmp(&b.canon))
    }

    /// Whether a value could enter the ranking.
    fn admits(&self, value: f64) -> bool {
        self.classes.len() < TOP_CLASSES
            || self.objective.key(value)
                <= self.objective.key(self.classes.last().expect("full").value)
    }

    fn insert(&mut self, rec: ClassRecord) {
        if let Some(old) = self.classes.iter_mut().find(|c| c.canon == rec.canon) {
            if self.objective.key(rec.value) < self.objective.key(old.value) {
                old.value = rec.value;
            }
        } else {
            self.classes.push(rec);
        }
        let mut classes = std::mem::take(&mut self.classes);
        classes.sort_by(|a, b| self.cmp(a, b));
        classes.truncate(TOP_CLASSES);
        self.classes = classes;
    }

    pub fn best(&self) -> Option<&ClassRecord> {
        self.classes.first()
    }

    /// Classes within `tol` of the best value.
    pub fn ties(&self, tol: f64) -> &[ClassRecord] {
        let Some(best) = self.best() else {
            return &[];
        };
        let k = self
            .classes
            .iter()
            .take_while(|c| (c.value - best.value).abs() <= tol)
            .count();
        &self.classes[..k]
    }

    /// Best value outside the classes tied with the best, if kept.
    pub fn runner_up(&self, tol: f64) -> Option<&ClassRecord> {
        self.classes.get(self.ties(tol).len())
    }

    /// Every kept class is a tie, so more may have been dropped.
    pub fn saturated(&self, tol: f64) -> bool {
        self.classes.len() == TOP_CLASSES && self.ties(tol).len() == TOP_CLASSES
    }

    pub fn position(&self, canon: &CanonicalForm) -> Option<usize> {
        self.classes.iter().position(|c| &c.canon == canon)
    }
}

/// Rankings for all four objectives over one graph source.
#[derive(Clone, Debug)]
pub struct ScanSummary {
    pub n: usize,
    /// Labeled graphs that entered the rankings.
    pub graphs: u64,
    rankings: [Ranking; 4],
}

impl ScanSummary {
    pub fn new(n: usize) -> Self {
        ScanSummary {
            n,
            graphs: 0,
            rankings: Objective::ALL.map(Ranking::new),
        }
    }

    pub fn ranking(&self, o: Objective) -> &Ranking {
        &self.rankings[o.index()]
    }

    pub fn add(&mut self, g: &Graph, s: &Spectrum) -> Result<(), VerifyError> {
        self.graphs += 1;
        let mut canon = None;
        for r in &mut self.rankings {
            let value = r.objective.value(s);
            if !r.admits(value) {
                continue;
            }
            let canon = match canon {
                Some(c) => c,
                None => *canon.insert(CanonicalForm::of(g)?),
            };
            r.insert(ClassRecord { canon, value });
        }
        Ok(())
    }

    pub fn merge(&mut self, other: ScanSummary) {
        self.graphs += other.graphs;
        for (mine, theirs) in self.rankings.iter_mut().zip(other.rankings) {
            for rec in theirs.classes {
                mine.insert(rec);
            }
        }
    }
}

/// Exhaustive scan of all labeled graphs on `n` vertices with diameter
/// greater than 3, keeping those for which `filter` holds.
pub fn scan_extremal_filtered<F>(
    n: usize,
    workers: usize,
    allow_n8: bool,
    filter: F,
) -> Result<ScanSummary, VerifyError>
where
    F: Fn(&Graph, &Spectrum) -> bool + Sync,
{
    check_order(n, allow_n8)?;
    let parts = par_masks(
        n,
        workers,
        |d| d == 4,
        || ScanSummary::new(n),
        |acc, g| {
            let s = complement_spectrum(&g)?;
            if filter(&g, &s) {
                acc.add(&g, &s)?;
            }
            Ok(())
        },
    )?;
    Ok(fold(n, parts))
}

pub fn scan_extremal(n: usize, workers: usize, allow_n8: bool) -> Result<ScanSummary, VerifyError> {
    scan_extremal_filtered(n, workers, allow_n8, |_, _| true)
}

/// Scan over an explicit list of graphs of one order. Graphs of diameter at
/// most 3 are skipped.
pub fn scan_graphs<F>(
    graphs: &[Graph],
    workers: usize,
    filter: F,
) -> Result<ScanSummary, VerifyError>
where
    F: Fn(&Graph, &Spectrum) -> bool + Sync,
{
    let n = stream_order(graphs)?;
    const BLOCK: usize = 1024;
    let blocks = graphs.len().div_ceil(BLOCK);
    let parts = par_map_indices(blocks, workers, |b| -> Result<ScanSummary, VerifyError> {
        let mut acc = ScanSummary::new(n);
        for g in &graphs[b * BLOCK..graphs.len().min((b + 1) * BLOCK)] {
            if g.diameter().is_ok_and(|d| d > 3) {
                let s = complement_spectrum(g)?;
                if filter(g, &s) {
                    acc.add(g, &s)?;
                }
            }
        }
        Ok(acc)
    });
    Ok(fold(n, parts.into_iter().collect::<Result<Vec<_>, _>>()?))
}

pub(crate) fn stream_order(graphs: &[Graph]) -> Result<usize, VerifyError> {
    let n = graphs.first().ok_or(VerifyError::EmptyStream)?.order();
    if let Some(g) = graphs.iter().find(|g| g.order() != n) {
        return Err(VerifyError::MixedOrders(n, g.order()));
    }
    Ok(n)
}

fn fold(n: usize, parts: Vec<ScanSummary>) -> ScanSummary {
    parts.into_iter().fold(ScanSummary::new(n), |mut acc, p| {
        acc.merge(p);
        acc
    })
}

/// A ranked class as it appears in a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub graph6: String,
    pub value: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn of(rec: &ClassRecord) -> Self {
        Witness {
            graph6: rec.graph6(),
            value: Real(rec.value),
            note: None,
        }
    }

    pub fn graph(g: &Graph, value: f64, note: impl Into<String>) -> Self {
        Witness {
            graph6: g.to_graph6(),
            value: Real(value),
            note: Some(note.into()),
        }
    }
}
