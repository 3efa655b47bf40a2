//! Exact polynomial identities between family quotient polynomials,
//! checked by integer evaluation over parameter grids.

use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use super::formulas::*;
use crate::spectra::{char_poly_exact, sturm_real_roots, tol, IntPolynomial};

/// Polynomial in two parameters `x, y`, of degree at most 2 in each.
/// `c[i][j]` is the coefficient of `x^i y^j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParamPoly {
    pub c: [[i64; 3]; 3],
}

impl ParamPoly {
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        let mut acc = 0;
        for i in 0..3 {
            for j in 0..3 {
                acc += self.c[i][j] * x.pow(i as u32) * y.pow(j as u32);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(|&v| v == 0)
    }

    fn render(&self, vars: (&str, &str)) -> String {
        let mut terms: Vec<(i64, String)> = Vec::new();
        // highest total degree first, x before y
        let mut keys: Vec<(usize, usize)> =
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        keys.sort_by_key(|&(i, j)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        for (i, j) in keys {
            let c = self.c[i][j];
            if c == 0 {
                continue;
            }
            let mono = format!("{}{}", power(vars.0, i), power(vars.1, j));
            terms.push((c, mono));
        }
        join_terms(&terms)
    }
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

fn join_terms(terms: &[(i64, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, mono)) in terms.iter().enumerate() {
        let mag = c.unsigned_abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag == 1 {
            mono.clone()
        } else {
            format!("{mag}{mono}")
        };
        match (k, *c < 0) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

/// Polynomial in `λ` whose coefficients are [`ParamPoly`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaParamPoly {
    pub vars: (&'static str, &'static str),
    /// Index `k` holds the coefficient of `λ^k`.
    pub coeffs: Vec<ParamPoly>,
}

impl LambdaParamPoly {
    pub fn eval(&self, x: i64, y: i64) -> IntPolynomial {
        IntPolynomial::from_i64(&self.coeffs.iter().map(|c| c.eval(x, y)).collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ParamPoly::is_zero)
    }
}

impl fmt::Display for LambdaParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let inner = c.render(self.vars);
            let nonzero = c.c.iter().flatten().filter(|&&v| v != 0).count();
            let lam = power("λ", k);
            parts.push(if lam.is_empty() {
                inner
            } else if inner == "1" {
                lam
            } else if inner == "-1" {
                format!("-{lam}")
            } else if nonzero == 1 && c.c[0][0] == 0 {
                format!("{inner}{lam}")
            } else {
                format!("({inner}){lam}")
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + ").replace("+ -", "- "))
        }
    }
}

impl Serialize for LambdaParamPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Interpolates `f` as a biquadratic in `(x, y)` from `{0,1,2}²` and
/// confirms the fit at every point of `grid`. `None` when the values are not
/// of that form.
pub fn fit_difference(
    f: impl Fn(i64, i64) -> IntPolynomial,
    vars: (&'static str, &'static str),
    grid: &[(i64, i64)],
) -> Option<LambdaParamPoly> {
    let samples: Vec<Vec<IntPolynomial>> =
        (0..3).map(|x| (0..3).map(|y| f(x, y)).collect()).collect();
    let degree = samples
        .iter()
        .flatten()
        .filter_map(IntPolynomial::degree)
        .max()
        .unwrap_or(0);
    let mut coeffs = Vec::with_capacity(degree + 1);
    for k in 0..=degree {
        let mut vals = [[0i64; 3]; 3];
        for x in 0..3 {
            for y in 0..3 {
                vals[x][y] = samples[x][y].coeff(k).to_i64()?;
            }
        }
        // interpolate in x for each y, then in y for each power of x
        let mut by_x = [[0i64; 3]; 3];
        for y in 0..3 {
            let c = interpolate([vals[0][y], vals[1][y], vals[2][y]])?;
            for i in 0..3 {
                by_x[i][y] = c[i];
            }
        }
        let mut c = [[0i64; 3]; 3];
        for i in 0..3 {
            c[i] = interpolate(by_x[i])?;
        }
        coeffs.push(ParamPoly { c });
    }
    let fit = LambdaParamPoly { vars, coeffs };
    grid.iter()
        .all(|&(x, y)| fit.eval(x, y) == f(x, y))
        .then_some(fit)
}

/// Monomial coefficients of the quadratic through `(0,f0), (1,f1), (2,f2)`.
fn interpolate([f0, f1, f2]: [i64; 3]) -> Option<[i64; 3]> {
    let second = f2 - 2 * f1 + f0;
    if second % 2 != 0 {
        return None;
    }
    let c2 = second / 2;
    Some([f0, f1 - f0 - c2, c2])
}

/// Sign of a polynomial on the open ray `λ < threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignBelow {
    Positive,
    Negative,
    /// Nonnegative with isolated zeros.
    NonNegative,
    NonPositive,
    Mixed,
    Zero,
}

impl SignBelow {
    pub fn is_positive(self) -> bool {
        self == SignBelow::Positive
    }

    pub fn is_negative(self) -> bool {
        self == SignBelow::Negative
    }
}

pub fn sign_below(f: &IntPolynomial, threshold: f64) -> SignBelow {
    let Some(d) = f.degree() else {
        return SignBelow::Zero;
    };
    let lead = f.leading().expect("nonzero");
    let at_minus_infinity_positive = lead.is_positive() == (d % 2 == 0);
    let bound = f
        .coeffs()
        .iter()
        .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
        + 2.0;
    let lo = -bound.max(threshold.abs() + 2.0);
    let roots: Vec<_> = sturm_real_roots(f, lo, threshold, tol::ROOT)
        .into_iter()
        .filter(|r| !(r.hi == threshold && f.sign_at(threshold).is_eq()))
        .collect();
    let crosses = roots.iter().any(|r| r.multiplicity % 2 == 1);
    match (crosses, roots.is_empty(), at_minus_infinity_positive) {
        (true, _, _) => SignBelow::Mixed,
        (false, true, true) => SignBelow::Positive,
        (false, true, false) => SignBelow::Negative,
        (false, false, true) => SignBelow::NonNegative,
        (false, false, false) => SignBelow::NonPositive,
    }
}

/// Published difference identities between quotient polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityId {
    /// φ_{s,t} − φ_{s−1,t+1} for H.
    HShift,
    /// B2 quintic minus (λ+1)·φ for B1.
    B2VsB1,
    /// φ for B1(p,q) minus ψ for T(p+q−3,1).
    B1VsT,
    /// φ_{p,q} − φ_{p−1,q+1} for B1.
    B1Shift,
    /// Ψ − Ψ′ for L′ and L″.
    LPrimeVsLdPrime,
    /// Φ_{p,q} − Ψ with n = p + q.
    LVsLPrime,
    /// Φ_{p,q} − Φ_{p−1,q+1} for L.
    LShift,
}

/// Published claim about the sign of a difference below a threshold.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SignClaim {
    pub threshold: f64,
    pub expected: SignBelow,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::HShift,
        IdentityId::B2VsB1,
        IdentityId::B1VsT,
        IdentityId::B1Shift,
        IdentityId::LPrimeVsLdPrime,
        IdentityId::LVsLPrime,
        IdentityId::LShift,
    ];

    /// Claim label in the verification registry.
    pub fn claim(self) -> &'static str {
        match self {
            IdentityId::HShift => "2.3",
            IdentityId::B2VsB1 => "3.4",
            IdentityId::B1VsT => "3.5",
            IdentityId::B1Shift => "3.6",
            IdentityId::LPrimeVsLdPrime => "3.9",
            IdentityId::LVsLPrime => "3.11",
            IdentityId::LShift => "3.12",
        }
    }

    pub fn vars(self) -> (&'static str, &'static str) {
        match self {
            IdentityId::HShift => ("s", "t"),
            IdentityId::LPrimeVsLdPrime => ("n", "m"),
            _ => ("p", "q"),
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            IdentityId::HShift => "phi_H(s,t) - phi_H(s-1,t+1)",
            IdentityId::B2VsB1 => "phi_B2(p,q) - (λ+1) phi_B1(p,q)",
            IdentityId::B1VsT => "phi_B1(p,q) - psi_T(p+q)",
            IdentityId::B1Shift => "phi_B1(p,q) - phi_B1(p-1,q+1)",
            IdentityId::LPrimeVsLdPrime => "Psi_Lprime(n) - Psi_Ldprime(n)",
            IdentityId::LVsLPrime => "Phi_L(p,q) - Psi_Lprime(p+q)",
            IdentityId::LShift => "Phi_L(p,q) - Phi_L(p-1,q+1)",
        }
    }

    /// Sign the published argument draws from the difference.
    pub fn sign_claim(self) -> Option<SignClaim> {
        let c = |threshold, expected| {
            Some(SignClaim {
                threshold,
                expected,
            })
        };
        match self {
            IdentityId::HShift => None,
            IdentityId::B2VsB1 => None,
            IdentityId::B1VsT => c(-3.0, SignBelow::Negative),
            IdentityId::B1Shift => c(-3.0, SignBelow::NonNegative),
            IdentityId::LPrimeVsLdPrime => c(-5.0, SignBelow::Negative),
            IdentityId::LVsLPrime => c(-5.0, SignBelow::Positive),
            IdentityId::LShift => c(-5.0, SignBelow::Positive),
        }
    }

    /// Difference computed from the published closed forms.
    pub fn printed_lhs(self, x: i64, y: i64) -> IntPolynomial {
        let lp1 = IntPolynomial::linear(1);
        match self {
            IdentityId::HShift => &phi_h(x, y) - &phi_h(x - 1, y + 1),
            IdentityId::B2VsB1 => &phi_b2(x, y) - &(&lp1 * &phi_b1(x, y)),
            IdentityId::B1VsT => &phi_b1(x, y) - &psi_t(x + y),
            IdentityId::B1Shift => &phi_b1(x, y) - &phi_b1(x - 1, y + 1),
            IdentityId::LPrimeVsLdPrime => &psi_lprime(x) - &psi_ldprime(x),
            IdentityId::LVsLPrime => &phi_l(x, y) - &psi_lprime(x + y),
            IdentityId::LShift => &phi_l(x, y) - &phi_l(x - 1, y + 1),
        }
    }

    /// Difference computed from characteristic polynomials of the quotient matrices.
    pub fn derived_lhs(self, x: i64, y: i64) -> IntPolynomial {
        let cp = char_poly_exact;
        let lp1 = IntPolynomial::linear(1);
        match self {
            IdentityId::HShift => &cp(&matrix_h(x, y)) - &cp(&matrix_h(x - 1, y + 1)),
            IdentityId::B2VsB1 => &cp(&matrix_b2(x, y)) - &(&lp1 * &cp(&matrix_b1(x, y))),
            IdentityId::B1VsT => &cp(&matrix_b1(x, y)) - &cp(&matrix_t(x + y)),
            IdentityId::B1Shift => &cp(&matrix_b1(x, y)) - &cp(&matrix_b1(x - 1, y + 1)),
            IdentityId::LPrimeVsLdPrime => &cp(&matrix_lprime(x)) - &cp(&matrix_ldprime(x)),
            IdentityId::LVsLPrime => &cp(&matrix_l(x, y)) - &cp(&matrix_lprime(x + y)),
            IdentityId::LShift => &cp(&matrix_l(x, y)) - &cp(&matrix_l(x - 1, y + 1)),
        }
    }

    /// The published right-hand side.
    pub fn claimed(self, x: i64, y: i64) -> IntPolynomial {
        let (p, q) = (x, y);
        let v = |c: &[i64]| IntPolynomial::from_i64(c);
        match self {
            IdentityId::HShift => v(&[0, 4 * (x - y - 1), 5 * (x - y - 1)]),
            IdentityId::B2VsB1 => v(&[
                8 * p * q - 8 * p - 4 * q + 4,
                18 * p * q - 18 * p - 8 * q + 8,
                14 * p * q - 14 * p - 4 * q + 4,
                5 * p * q - 5 * p - 2 * q + 2,
            ]),
            IdentityId::B1VsT => v(&[
                -5 * p * q + 2 * p + 2 * q + 12,
                -14 * p * q + 12 * p + 12 * q + 8,
                -8 * p * q + 8 * p + 8 * q,
            ]),
            IdentityId::B1Shift => v(&[5 * p - 5 * q - 5, 14 * p - 14 * q - 14, 8 * p - 8 * q - 8]),
            IdentityId::LPrimeVsLdPrime => v(&[-14 * x + 70, -11 * x + 55, -2 * x + 10]),
            IdentityId::LVsLPrime => v(&[14 * p - 42, 11 * p - 33, 2 * p - 6]),
            IdentityId::LShift => v(&[
                12 * p * q - 10 * p - 22 * q + 2,
                30 * p * q - 49 * p - 67 * q + 101,
                18 * p * q - 34 * p - 40 * q + 74,
                3 * p * q - 6 * p - 6 * q + 12,
            ]),
        }
    }

    /// Parameter points covered by the published sign argument: the
    /// families exist, `n = p + q ≥ 7` with `p ≥ 4`, and shifts move away
    /// from balance.
    pub fn valid(self, x: i64, y: i64) -> bool {
        match self {
            IdentityId::HShift => x >= 2 && y >= 1,
            IdentityId::B2VsB1 | IdentityId::B1VsT | IdentityId::LVsLPrime => {
                x >= 4 && y >= 2 && x + y >= 7
            }
            IdentityId::B1Shift | IdentityId::LShift => x > y && y >= 2 && x >= 4 && x + y >= 7,
            IdentityId::LPrimeVsLdPrime => x >= 7,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub claim: &'static str,
    pub statement: &'static str,
    pub grid_points: usize,
    pub claimed: Option<LambdaParamPoly>,
    /// The published difference equals the difference of the published closed forms.
    pub holds_for_printed: bool,
    /// The published difference equals the difference of the derived polynomials.
    pub holds_for_derived: bool,
    pub printed_difference: Option<LambdaParamPoly>,
    pub derived_difference: Option<LambdaParamPoly>,
    /// First grid point where the printed identity fails, if any.
    pub first_failure: Option<(i64, i64)>,
    pub sign_claim: Option<SignClaim>,
    /// Claimed sign held for the derived difference at every valid grid point.
    pub sign_holds_derived: Option<bool>,
    /// Valid grid points where the derived difference has another sign.
    pub sign_failures: Vec<(i64, i64, SignBelow)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.holds_for_printed
    }
}

/// Checks one identity exactly at every grid point, and fits the true
/// differences so a failing identity comes with its correction.
pub fn check_identity(id: IdentityId, grid: &[(i64, i64)]) -> IdentityReport {
    let vars = id.vars();
    let first_failure = grid
        .iter()
        .copied()
        .find(|&(x, y)| id.printed_lhs(x, y) != id.claimed(x, y));
    let holds_for_derived = grid
        .iter()
        .all(|&(x, y)| id.derived_lhs(x, y) == id.claimed(x, y));
    let sign_claim = id.sign_claim();
    let mut sign_failures = Vec::new();
    if let Some(claim) = sign_claim {
        for &(x, y) in grid.iter().filter(|&&(x, y)| id.valid(x, y)) {
            let got = sign_below(&id.derived_lhs(x, y), claim.threshold);
            let ok = got == claim.expected
                || (claim.expected == SignBelow::NonNegative
                    && matches!(got, SignBelow::Positive | SignBelow::Zero))
                || (claim.expected == SignBelow::NonPositive
                    && matches!(got, SignBelow::Negative | SignBelow::Zero));
            if !ok {
                sign_failures.push((x, y, got));
            }
        }
    }
    IdentityReport {
        id,
        claim: id.claim(),
        statement: id.statement(),
        grid_points: grid.len(),
        claimed: fit_difference(|x, y| id.claimed(x, y), vars, grid),
        holds_for_printed: first_failure.is_none() && !grid.is_empty(),
        holds_for_derived,
        printed_difference: fit_difference(|x, y| id.printed_lhs(x, y), vars, grid),
        derived_difference: fit_difference(|x, y| id.derived_lhs(x, y), vars, grid),
        first_failure,
        sign_claim,
        sign_holds_derived: sign_claim.map(|_| sign_failures.is_empty()),
        sign_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<(i64, i64)> {
        (2..=20)
            .flat_map(|x| (2..=20).map(move |y| (x, y)))
            .collect()
    }

    #[test]
    fn fit_recovers_known_forms() {
        let f = |x: i64, y: i64| IntPolynomial::from_i64(&[3 * x * y - 6 * x + 12, -y, 0, x * x]);
        let fit = fit_difference(f, ("p", "q"), &grid()).unwrap();
        assert_eq!(fit.to_string(), "p^2λ^3 - qλ + 3pq - 6p + 12");
        assert_eq!(fit.eval(4, 5), f(4, 5));
        // cubic in x is outside the fitted family
        assert!(fit_difference(
            |x, _| IntPolynomial::from_i64(&[x * x * x]),
            ("p", "q"),
            &grid()
        )
        .is_none());
    }

    #[test]
    fn rendering() {
        let f = |x: i64, y: i64| IntPolynomial::from_i64(&[0, 4 * (x - y - 1), 5 * (x - y - 1)]);
        let fit = fit_difference(f, ("s", "t"), &grid()).unwrap();
        assert_eq!(fit.to_string(), "(5s - 5t - 5)λ^2 + (4s - 4t - 4)λ");
        let z = fit_difference(|_, _| IntPolynomial::zero(), ("s", "t"), &grid()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn signs_below_threshold() {
        let p = |c: &[i64]| IntPolynomial::from_i64(c);
        assert_eq!(sign_below(&p(&[-3, 1]), -3.0), SignBelow::Negative);
        assert_eq!(sign_below(&p(&[5, 0, 1]), 0.0), SignBelow::Positive);
        assert_eq!(sign_below(&p(&[16, 8, 1]), 0.0), SignBelow::NonNegative);
        assert_eq!(sign_below(&p(&[-4, 0, 1]), 0.0), SignBelow::Mixed);
        assert_eq!(sign_below(&p(&[-4, 0, 1]), -2.0), SignBelow::Positive);
        assert_eq!(sign_below(&IntPolynomial::zero(), 1.0), SignBelow::Zero);
        assert_eq!(sign_below(&p(&[1, 0, 0, -1]), -1.0), SignBelow::Positive);
    }

    #[test]
    fn published_differences() {
        let g = grid();
        for id in IdentityId::ALL {
            let r = check_identity(id, &g);
            let expect = !matches!(id, IdentityId::LVsLPrime | IdentityId::LShift);
            assert_eq!(r.holds_for_printed, expect, "{}", r.claim);
            assert_eq!(r.holds_for_derived, expect, "{}", r.claim);
            assert!(r.derived_difference.is_some(), "{}", r.claim);
        }
        // the cubic published for the L shift is the true Φ − Ψ
        let l = check_identity(IdentityId::LVsLPrime, &g);
        assert_eq!(
            l.derived_difference,
            check_identity(IdentityId::LShift, &g).claimed
        );
        let shift = check_identity(IdentityId::LShift, &g)
            .derived_difference
            .unwrap();
        assert_eq!(
            shift.to_string(),
            "(-3p + 3q + 3)λ^3 + (-18p + 18q + 24)λ^2 + (-30p + 30q + 48)λ - 12p + 12q + 24"
        );
    }

    #[test]
    fn h_shift_holds() {
        let r = check_identity(IdentityId::HShift, &grid());
        assert!(r.holds_for_printed && r.holds_for_derived);
        assert_eq!(r.first_failure, None);
    }
}
