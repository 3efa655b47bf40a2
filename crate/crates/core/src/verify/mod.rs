//! Exhaustive and grid verification of the spectral extremal claims.
//!
//! Every check yields a [`VerificationReport`]. Values are measured with the
//! Jacobi solver; strict inequalities pass when the margin exceeds
//! [`tol::COMPARE`], and margins up to [`tol::RECHECK`] are settled by exact
//! comparison of characteristic polynomial roots.

mod claims;
mod enumerate;
mod scan;
mod trees;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::families::FamilyError;
use crate::graph::{Graph, GraphError};
use crate::quotients::{IdentityReport, QuotientError};
use crate::real::Real;
use crate::spectra::{
    char_poly_exact, compare_roots, sym_eigenvalues, tol, ExtremeRoot, IntMatrix, RootOrder,
    SpectraError, Spectrum,
};

pub use claims::{FamilySummary, GridPoint, Outcome, Verdict, Verifier, VerifyConfig};
pub use enumerate::{class_representatives, enumerate_diam_gt3, MAX_SCAN_ORDER};
pub use scan::{
    scan_extremal, scan_extremal_filtered, scan_graphs, ClassRecord, Objective, Ranking,
    ScanSummary, Witness, TOP_CLASSES,
};
pub use trees::{spanning_trees, trees};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("labeled enumeration supports 1 ≤ n ≤ {max}, got {0}", max = MAX_SCAN_ORDER)]
    OrderUnsupported(usize),
    #[error("the labeled scan at n = {0} must be enabled explicitly")]
    NeedsOptIn(usize),
    #[error("claim {claim} needs n ≥ {min}, got {n}")]
    OrderTooSmall {
        claim: ClaimId,
        min: usize,
        n: usize,
    },
    #[error("claim {claim} does not support {n} vertices (at most {max})")]
    OrderTooLarge {
        claim: ClaimId,
        max: usize,
        n: usize,
    },
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("graph stream is empty")]
    EmptyStream,
    #[error("graph stream mixes orders {0} and {1}")]
    MixedOrders(usize, usize),
    #[error("empty parameter grid for claim {0}")]
    EmptyGrid(ClaimId),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// Claims in the verification registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    L2_1,
    L2_3,
    L2_5,
    L2_6,
    L2_7,
    L3_1,
    L3_4,
    L3_5,
    L3_6,
    L3_9,
    L3_11,
    L3_12,
    T2_4,
    T2_8,
    T3_7,
    T3_13,
    QuotientConsistency,
}

impl ClaimId {
    pub const ALL: [ClaimId; 17] = [
        ClaimId::L2_1,
        ClaimId::L2_3,
        ClaimId::L2_5,
        ClaimId::L2_6,
        ClaimId::L2_7,
        ClaimId::L3_1,
        ClaimId::L3_4,
        ClaimId::L3_5,
        ClaimId::L3_6,
        ClaimId::L3_9,
        ClaimId::L3_11,
        ClaimId::L3_12,
        ClaimId::T2_4,
        ClaimId::T2_8,
        ClaimId::T3_7,
        ClaimId::T3_13,
        ClaimId::QuotientConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::L2_1 => "2.1",
            ClaimId::L2_3 => "2.3",
            ClaimId::L2_5 => "2.5",
            ClaimId::L2_6 => "2.6",
            ClaimId::L2_7 => "2.7",
            ClaimId::L3_1 => "3.1",
            ClaimId::L3_4 => "3.4",
            ClaimId::L3_5 => "3.5",
            ClaimId::L3_6 => "3.6",
            ClaimId::L3_9 => "3.9",
            ClaimId::L3_11 => "3.11",
            ClaimId::L3_12 => "3.12",
            ClaimId::T2_4 => "T2.4",
            ClaimId::T2_8 => "T2.8",
            ClaimId::T3_7 => "T3.7",
            ClaimId::T3_13 => "T3.13",
            ClaimId::QuotientConsistency => "quotient-consistency",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            ClaimId::L2_1 => "D(G^c) = J - I + A(G) if diam(G) > 3, and D(G^c) >= J - I + A(G) entrywise if diam(G) = 3 with G^c connected",
            ClaimId::L2_3 => "lambda_1(H^c(s,t)) > lambda_1(H^c(s-1,t+1)) for 2 <= s <= t",
            ClaimId::L2_5 => "lambda_1(G^c) <= lambda_1(G'^c) for G' = G - e connected",
            ClaimId::L2_6 => "lambda_1(G^c) >= lambda_1(T^c) for every spanning tree T of G",
            ClaimId::L2_7 => "lambda_1(T^c) >= lambda_1(P_n^c) for trees T with diam(T) > 3, equality iff T = P_n",
            ClaimId::L3_1 => "lambda_n(T1^c(a,b)) >= lambda_n(T2^c(a,b)) > lambda_n(T^c(a+1,b))",
            ClaimId::L3_4 => "lambda_n(B1^c(p,q)) < lambda_n(B2^c(p,q)) < -3",
            ClaimId::L3_5 => "lambda_n(B1^c(p,q)) < lambda_n(T^c(p+q-3,1)) < -3",
            ClaimId::L3_6 => "lambda_n(B1^c(p-1,q+1)) < lambda_n(B1^c(p,q)) for p >= q+2",
            ClaimId::L3_9 => "lambda_n(G^c) <= lambda_n(L'^c) when the sign partition has q = 1, and lambda_n(L''^c) <= lambda_n(L'^c)",
            ClaimId::L3_11 => "lambda_n(L'^c) < lambda_n(L^c(p,q)) with n = p + q",
            ClaimId::L3_12 => "lambda_n(L^c(p,q)) < lambda_n(L^c(p-1,q+1)) for p >= q+2",
            ClaimId::T2_4 => "lambda_1(G^c) < lambda_1(H^c(floor(n/2-1), ceil(n/2-1))) for diam(G) > 3",
            ClaimId::T2_8 => "lambda_1(G^c) >= lambda_1(P_n^c) for diam(G) > 3, equality iff G = P_n",
            ClaimId::T3_7 => "lambda_n(G^c) > lambda_n(B1^c(ceil(n/2), floor(n/2))) for diam(G) > 3, n >= 7",
            ClaimId::T3_13 => "lambda_n(G^c) <= lambda_n(L^c(ceil(n/2), floor(n/2))) for diam(G) > 3, n >= 7, equality iff G = L",
            ClaimId::QuotientConsistency => "quotient roots lie in the complement distance spectrum and include lambda_1",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(t))
            .or_else(|| match t.to_ascii_lowercase().as_str() {
                "quotients" | "quotient" => Some(ClaimId::QuotientConsistency),
                _ => None,
            })
            .ok_or_else(|| VerifyError::UnknownClaim(s.to_string()))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Confirmed,
    ConfirmedWithReversedDirection,
    Refuted,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Confirmed => "confirmed",
            Status::ConfirmedWithReversedDirection => "confirmed-with-reversed-direction",
            Status::Refuted => "refuted",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one claim on one order or parameter grid.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: ClaimId,
    pub statement: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    pub status: Status,
    /// Smallest slack of the claimed inequality; negative when it fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<Real>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<&'static str, Real>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<&'static str, u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unique: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_recheck: Option<RootOrder>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<GridPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<IdentityReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilySummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
}

impl VerificationReport {
    pub fn new(claim: ClaimId, status: Status) -> Self {
        VerificationReport {
            claim,
            statement: claim.statement(),
            n: None,
            grid: None,
            status,
            margin: None,
            values: BTreeMap::new(),
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            unique: None,
            exact_recheck: None,
            counterexamples: Vec::new(),
            points: Vec::new(),
            identity: None,
            families: Vec::new(),
            verdicts: Vec::new(),
        }
    }
}

/// Eigen-decomposition of `D(G^c)`.
pub fn complement_spectrum(g: &Graph) -> Result<Spectrum, VerifyError> {
    let d = g.complement_distance_matrix()?;
    Ok(sym_eigenvalues(&d.to_sym_matrix(), tol::SOLVER)?)
}

/// Vertex classes by the sign of a unit `λ_n`-eigenvector of `D(G^c)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignPartition {
    pub plus: Vec<usize>,
    pub zero: Vec<usize>,
    pub minus: Vec<usize>,
    /// `|V₊ ∪ V₀|`.
    pub p: usize,
    /// `|V₋|`.
    pub q: usize,
    pub lambda_n: Real,
    /// `λ_{n−1} − λ_n`; the partition depends on the chosen eigenvector
    /// when this is below [`tol::DEGENERACY_GAP`].
    pub gap: Real,
    pub degenerate: bool,
}

pub fn sign_partition(g: &Graph) -> Result<SignPartition, VerifyError> {
    Ok(sign_partition_of(&complement_spectrum(g)?, tol::ZERO))
}

/// Sign partition from a computed spectrum, with `zero` as the threshold
/// for `V₀`. Normalized so that `p ≥ q`.
pub fn sign_partition_of(s: &Spectrum, zero: f64) -> SignPartition {
    let x = s.least_vector();
    let n = x.len();
    let classify = |flip: bool| {
        let (mut plus, mut zs, mut minus) = (Vec::new(), Vec::new(), Vec::new());
        for (i, &v) in x.iter().enumerate() {
            let v = if flip { -v } else { v };
            if v > zero {
                plus.push(i);
            } else if v < -zero {
                minus.push(i);
            } else {
                zs.push(i);
            }
        }
        (plus, zs, minus)
    };
    let (mut plus, mut zs, mut minus) = classify(false);
    if minus.len() > plus.len() + zs.len() {
        (plus, zs, minus) = classify(true);
    }
    let values = s.values();
    let gap = if n >= 2 {
        values[n - 2] - values[n - 1]
    } else {
        f64::INFINITY
    };
    SignPartition {
        p: plus.len() + zs.len(),
        q: minus.len(),
        plus,
        zero: zs,
        minus,
        lambda_n: Real(s.least()),
        gap: Real(gap),
        degenerate: gap < tol::DEGENERACY_GAP,
    }
}

/// Exact comparison of the extreme eigenvalues of two integer symmetric
/// matrices, via their characteristic polynomials.
pub fn exact_compare(a: &IntMatrix, b: &IntMatrix, which: ExtremeRoot) -> RootOrder {
    let bound = a.max_abs_row_sum().max(b.max_abs_row_sum()) as f64 + 1.0;
    compare_roots(
        &char_poly_exact(a),
        &char_poly_exact(b),
        which,
        -bound,
        bound,
    )
}
