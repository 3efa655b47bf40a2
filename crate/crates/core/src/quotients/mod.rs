//! Equitable quotient matrices of family complements, their closed-form
//! characteristic polynomials, and consistency checks against full spectra.
//!
//! Two polynomials are kept for every family: the closed form as published
//! ("printed") and the exact characteristic polynomial of the quotient
//! matrix ("derived"). The derived one is ground truth; mismatches are
//! reported, never patched over.

mod formulas;
mod identities;

use serde::Serialize;
use thiserror::Error;

use crate::families::{Family, FamilyError};
use crate::graph::{DistanceMatrix, GraphError};
use crate::real::Real;
use crate::spectra::{
    self, char_poly_exact, sturm_real_roots, tol, IntMatrix, IntPolynomial, SpectraError,
};

pub use formulas::*;
pub use identities::{
    check_identity, fit_difference, sign_below, IdentityId, IdentityReport, LambdaParamPoly,
    ParamPoly, SignBelow,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuotientError {
    #[error("no quotient model for {0}")]
    Unsupported(Family),
    #[error("partition is not equitable: rows of cell {cell} disagree on cell {other}")]
    NotEquitable { cell: usize, other: usize },
    #[error("cells do not partition the {0} vertices")]
    BadPartition(usize),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Families that carry a quotient model. The double star only qualifies as
/// `T(n−3, 1)`.
pub fn supports_quotient(f: &Family) -> bool {
    matches!(
        f,
        Family::H { .. }
            | Family::B1 { .. }
            | Family::B2 { .. }
            | Family::T { b: 1, .. }
            | Family::L { .. }
            | Family::LPrime { .. }
            | Family::LDoublePrime { .. }
    )
}

/// Vertex classes of the quotient in the constructor's labeling, in the
/// row order of the quotient matrix.
pub fn quotient_cells(f: &Family) -> Result<Vec<Vec<usize>>, QuotientError> {
    let cells = match *f {
        // (u, N(u), N(v), v)
        Family::H { s, t } => vec![
            vec![s + t],
            (0..s).collect(),
            (s..s + t).collect(),
            vec![s + t + 1],
        ],
        // (u, v, U∖{u}, V∖{v})
        Family::B1 { p, q } => vec![vec![0], vec![p], (1..p).collect(), (p + 1..p + q).collect()],
        // (u, v, w, U∖{u,w}, V∖{v})
        Family::B2 { p, q } => vec![
            vec![0],
            vec![p],
            vec![1],
            (2..p).collect(),
            (p + 1..p + q).collect(),
        ],
        // (u, v, pendants of u, pendant w of v)
        Family::T { a, b: 1 } => vec![vec![0], vec![1], (2..a + 2).collect(), vec![a + 2]],
        // (u, v, w, K_p rest, K_q rest)
        Family::L { p, q } => vec![
            vec![1],
            vec![p],
            vec![0],
            (2..p).collect(),
            (p + 1..p + q).collect(),
        ],
        // (u, v, w, w', clique rest)
        Family::LPrime { n } => vec![
            vec![1],
            vec![n - 1],
            vec![0],
            vec![n - 2],
            (2..n - 2).collect(),
        ],
        // (u', w', a, b, clique rest) with the path u'–a–b
        Family::LDoublePrime { n } => {
            vec![
                vec![1],
                vec![0],
                vec![n - 2],
                vec![n - 1],
                (2..n - 2).collect(),
            ]
        }
        _ => return Err(QuotientError::Unsupported(*f)),
    };
    Ok(cells)
}

/// Quotient matrix of a partition: entry `(i, j)` is the row sum of `d`
/// over cell `j`, taken from any vertex of cell `i`. Fails unless every
/// vertex of a cell gives the same sums.
pub fn partition_quotient(
    d: &DistanceMatrix,
    cells: &[Vec<usize>],
) -> Result<IntMatrix, QuotientError> {
    let n = d.order();
    let mut seen = vec![false; n];
    for &v in cells.iter().flatten() {
        if v >= n || seen[v] {
            return Err(QuotientError::BadPartition(n));
        }
        seen[v] = true;
    }
    if seen.iter().any(|s| !s) || cells.iter().any(Vec::is_empty) {
        return Err(QuotientError::BadPartition(n));
    }
    let k = cells.len();
    let mut m = IntMatrix::zeros(k);
    for (i, ci) in cells.iter().enumerate() {
        for (j, cj) in cells.iter().enumerate() {
            let first = d.row_sum_over(ci[0], cj);
            if ci[1..].iter().any(|&v| d.row_sum_over(v, cj) != first) {
                return Err(QuotientError::NotEquitable { cell: i, other: j });
            }
            m.set(i, j, first as i64);
        }
    }
    Ok(m)
}

/// Both closed-form views of one family member's quotient.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientModel {
    pub family: Family,
    /// Quotient matrix from its closed form (published where one exists).
    pub matrix: IntMatrix,
    pub matrix_is_printed: bool,
    pub printed_poly: IntPolynomial,
    pub derived_poly: IntPolynomial,
}

impl QuotientModel {
    pub fn new(f: &Family) -> Result<Self, QuotientError> {
        let (matrix, matrix_is_printed, printed_poly) = match *f {
            Family::H { s, t } => (
                matrix_h(s as i64, t as i64),
                true,
                phi_h(s as i64, t as i64),
            ),
            Family::B1 { p, q } => (
                matrix_b1(p as i64, q as i64),
                false,
                phi_b1(p as i64, q as i64),
            ),
            Family::B2 { p, q } => (
                matrix_b2(p as i64, q as i64),
                true,
                phi_b2(p as i64, q as i64),
            ),
            Family::T { a, b: 1 } => {
                let n = (a + 3) as i64;
                (matrix_t(n), true, psi_t(n))
            }
            Family::L { p, q } => (
                matrix_l(p as i64, q as i64),
                true,
                phi_l(p as i64, q as i64),
            ),
            Family::LPrime { n } => (matrix_lprime(n as i64), true, psi_lprime(n as i64)),
            Family::LDoublePrime { n } => (matrix_ldprime(n as i64), false, psi_ldprime(n as i64)),
            _ => return Err(QuotientError::Unsupported(*f)),
        };
        let derived_poly = char_poly_exact(&matrix);
        Ok(QuotientModel {
            family: *f,
            matrix,
            matrix_is_printed,
            printed_poly,
            derived_poly,
        })
    }

    pub fn printed_matches(&self) -> bool {
        self.printed_poly == self.derived_poly
    }

    /// `printed − derived`, lowest degree first.
    pub fn coefficient_diff(&self) -> IntPolynomial {
        &self.printed_poly - &self.derived_poly
    }

    /// Real roots of the derived polynomial, ascending, repeated by multiplicity.
    pub fn derived_roots(&self) -> Vec<f64> {
        real_roots(&self.derived_poly, &self.matrix)
    }
}

/// Real roots of the characteristic polynomial of `m`, bracketed by the
/// largest absolute row sum of `m`.
pub(crate) fn real_roots(p: &IntPolynomial, m: &IntMatrix) -> Vec<f64> {
    let bound = m.max_abs_row_sum() as f64 + 1.0;
    sturm_real_roots(p, -bound, bound, tol::ROOT)
        .into_iter()
        .flat_map(|r| std::iter::repeat_n(r.value(), r.multiplicity))
        .collect()
}

/// Result of matching a quotient against the full complement spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub family: Family,
    pub order: usize,
    pub matrix_is_printed: bool,
    /// Closed-form matrix equals the quotient computed from the built graph.
    pub matrix_matches_graph: bool,
    pub printed_poly: IntPolynomial,
    pub derived_poly: IntPolynomial,
    pub printed_matches_derived: bool,
    /// `printed − derived`.
    pub coefficient_diff: IntPolynomial,
    pub derived_roots: Vec<Real>,
    pub roots_in_spectrum: bool,
    /// Largest distance from a derived root to the nearest full eigenvalue.
    pub max_root_gap: Real,
    pub lambda1: Real,
    pub lambda_n: Real,
    pub lambda1_is_root: bool,
    pub lambda1_is_largest_root: bool,
    pub lambda_n_is_root: bool,
    pub lambda_n_is_least_root: bool,
    pub tol: Real,
}

impl ConsistencyReport {
    /// Root containment and the largest eigenvalue check, which are the
    /// parts that must hold for any equitable partition.
    pub fn is_consistent(&self) -> bool {
        self.matrix_matches_graph && self.roots_in_spectrum && self.lambda1_is_root
    }
}

pub fn quotient_consistency(f: &Family, tol: f64) -> Result<ConsistencyReport, QuotientError> {
    let model = QuotientModel::new(f)?;
    let g = f.build()?;
    let d = g.complement_distance_matrix()?;
    let from_graph = partition_quotient(&d, &quotient_cells(f)?)?;
    let spectrum = spectra::sym_eigenvalues(&d.to_sym_matrix(), tol::SOLVER)?;
    let values = spectrum.values();
    let roots = model.derived_roots();

    let nearest = |x: f64| {
        values
            .iter()
            .map(|v| (v - x).abs())
            .fold(f64::INFINITY, f64::min)
    };
    let root_gap = |x: f64| {
        roots
            .iter()
            .map(|r| (r - x).abs())
            .fold(f64::INFINITY, f64::min)
    };
    let max_root_gap = roots.iter().map(|&r| nearest(r)).fold(0.0, f64::max);
    let (l1, ln) = (spectrum.largest(), spectrum.least());
    let near = |a: Option<&f64>, b: f64| a.is_some_and(|a| (a - b).abs() <= tol);

    Ok(ConsistencyReport {
        family: *f,
        order: g.order(),
        matrix_is_printed: model.matrix_is_printed,
        matrix_matches_graph: from_graph == model.matrix,
        printed_matches_derived: model.printed_matches(),
        coefficient_diff: model.coefficient_diff(),
        printed_poly: model.printed_poly,
        derived_poly: model.derived_poly,
        derived_roots: roots.iter().copied().map(Real).collect(),
        roots_in_spectrum: !roots.is_empty() && max_root_gap <= tol,
        max_root_gap: Real(max_root_gap),
        lambda1: Real(l1),
        lambda_n: Real(ln),
        lambda1_is_root: root_gap(l1) <= tol,
        lambda1_is_largest_root: near(roots.last(), l1),
        lambda_n_is_root: root_gap(ln) <= tol,
        lambda_n_is_least_root: near(roots.first(), ln),
        tol: Real(tol),
    })
}

/// Every family member with a quotient model and order in `orders`.
pub fn consistency_grid(orders: std::ops::RangeInclusive<usize>) -> Vec<Family> {
    let mut out = Vec::new();
    for n in orders {
        for s in 1..n - 2 {
            let t = n - 2 - s;
            if t >= 1 {
                out.push(Family::H { s, t });
            }
        }
        for p in 2..=n - 2 {
            let q = n - p;
            out.push(Family::B1 { p, q });
            if p >= 3 {
                out.push(Family::B2 { p, q });
            }
            if p >= 4 {
                out.push(Family::L { p, q });
            }
        }
        if n >= 4 {
            out.push(Family::T { a: n - 3, b: 1 });
        }
        if n >= 7 {
            out.push(Family::LPrime { n });
            out.push(Family::LDoublePrime { n });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.rows()
    }

    #[test]
    fn published_examples() {
        assert_eq!(
            rows(
                &QuotientModel::new(&Family::H { s: 2, t: 2 })
                    .unwrap()
                    .matrix
            ),
            vec![
                vec![0, 4, 2, 1],
                vec![2, 2, 6, 1],
                vec![1, 6, 2, 2],
                vec![1, 2, 4, 0]
            ]
        );
        assert_eq!(rows(&matrix_t(7))[0], vec![0, 3, 8, 1]);
        assert_eq!(rows(&matrix_lprime(7))[0], vec![0, 2, 1, 1, 6]);
        assert_eq!(
            phi_h(2, 2),
            IntPolynomial::from_i64(&[-20, -68, -53, -4, 1])
        );
        assert_eq!(
            phi_b1(4, 2),
            IntPolynomial::from_i64(&[-28, -76, -48, -2, 1])
        );
        assert_eq!(psi_t(7), IntPolynomial::from_i64(&[-12, -50, -38, -3, 1]));
        assert_eq!(
            psi_lprime(7),
            IntPolynomial::from_i64(&[0, -20, -70, -42, -4, 1])
        );
        assert_eq!(
            phi_l(4, 4),
            IntPolynomial::from_i64(&[66, 101, -14, -40, -6, 1])
        );
    }

    #[test]
    fn closed_forms_match_built_graphs() {
        for f in consistency_grid(5..=11) {
            let model = QuotientModel::new(&f).unwrap();
            let d = f.build().unwrap().complement_distance_matrix().unwrap();
            let q = partition_quotient(&d, &quotient_cells(&f).unwrap()).unwrap();
            assert_eq!(q, model.matrix, "{f}");
        }
    }

    #[test]
    fn non_equitable_partition_is_rejected() {
        let g = crate::families::build_path(4).unwrap();
        let d = g.distance_matrix().unwrap();
        assert_eq!(
            partition_quotient(&d, &[vec![0, 1], vec![2, 3]]),
            Err(QuotientError::NotEquitable { cell: 0, other: 1 })
        );
        assert!(partition_quotient(&d, &[vec![0, 3], vec![1, 2]]).is_ok());
        assert_eq!(
            partition_quotient(&d, &[vec![0, 3], vec![1]]),
            Err(QuotientError::BadPartition(4))
        );
    }

    #[test]
    fn h22_report() {
        let r = quotient_consistency(&Family::H { s: 2, t: 2 }, tol::COMPARE).unwrap();
        assert!(r.printed_matches_derived && r.is_consistent() && r.lambda1_is_largest_root);
    }

    #[test]
    fn b2_least_eigenvalue_is_least_root() {
        let r = quotient_consistency(&Family::B2 { p: 4, q: 3 }, tol::COMPARE).unwrap();
        assert!(r.is_consistent());
        assert!(r.lambda_n_is_least_root);
    }

    #[test]
    fn unsupported_families() {
        assert!(QuotientModel::new(&Family::T { a: 3, b: 2 }).is_err());
        assert!(QuotientModel::new(&Family::Path { n: 5 }).is_err());
        assert!(!supports_quotient(&Family::T1 { a: 2, b: 2 }));
    }
}
