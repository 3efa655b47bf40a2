//! Real-root isolation by Sturm sequences with exact sign evaluation.
//!
//! All evaluation points are `f64` values, which are dyadic rationals, so the
//! sign of every chain member is computed exactly in big integers. Only the
//! bracket width is limited by `f64` resolution.

use std::cmp::Ordering;

use num_traits::Signed;
use serde::Serialize;

use super::IntPolynomial;

/// An isolated real root: the only root in `(lo, hi]`, or exactly `lo` when
/// `lo == hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RealRoot {
    pub lo: f64,
    pub hi: f64,
    pub multiplicity: usize,
}

impl RealRoot {
    pub fn value(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) / 2.0
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExtremeRoot {
    Largest,
    Least,
}

/// Outcome of an exact comparison of two algebraic reals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootOrder {
    Less,
    Equal,
    Greater,
    /// The roots differ by less than `f64` resolution and share no common factor test.
    Unresolved,
    /// One of the polynomials has no root in the bracket.
    Missing,
}

struct SturmChain {
    seq: Vec<IntPolynomial>,
}

impl SturmChain {
    /// Chain of a square-free polynomial: `s₀ = p`, `s₁ = p'`, `s_{k+1} = −rem(s_{k−1}, s_k)`
    /// up to positive factors.
    fn new(p: &IntPolynomial) -> Self {
        let mut seq = vec![p.clone()];
        if p.degree().unwrap_or(0) == 0 {
            return SturmChain { seq };
        }
        seq.push(p.derivative());
        loop {
            let k = seq.len();
            let (a, b) = (&seq[k - 2], &seq[k - 1]);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            let prem = a.pseudo_rem(b);
            if prem.is_zero() {
                break;
            }
            // prem = lc(b)^(δ+1)·rem; the Sturm member is −rem up to a positive factor
            let delta = a.degree().expect("nonzero") - b.degree().expect("nonzero");
            let multiplier_negative =
                b.leading().expect("nonzero").is_negative() && (delta + 1) % 2 == 1;
            let next = if multiplier_negative { prem } else { -&prem };
            let c = next.content();
            seq.push(IntPolynomial::new(
                next.coeffs().iter().map(|x| x / &c).collect(),
            ));
        }
        SturmChain { seq }
    }

    fn variations(&self, x: f64) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for s in &self.seq {
            let sign = s.sign_at(x);
            if sign == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && sign != last {
                count += 1;
            }
            last = sign;
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    fn count(&self, a: f64, b: f64) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn midpoint(a: f64, b: f64) -> f64 {
    a + (b - a) / 2.0
}

fn isolate(
    chain: &SturmChain,
    (a, va): (f64, usize),
    (b, vb): (f64, usize),
    tol: f64,
    out: &mut Vec<(f64, f64)>,
) {
    let c = va.saturating_sub(vb);
    if c == 0 {
        return;
    }
    let m = midpoint(a, b);
    if (c == 1 && b - a <= tol) || m <= a || m >= b {
        out.push((a, b));
        return;
    }
    let vm = chain.variations(m);
    isolate(chain, (a, va), (m, vm), tol, out);
    isolate(chain, (m, vm), (b, vb), tol, out);
}

/// Real roots of `p` in `[lo, hi]`, ascending, each bracketed to width at most
/// `tol` (or `f64` resolution). Multiplicities come from the chain of
/// repeated gcds with the derivative.
pub fn sturm_real_roots(p: &IntPolynomial, lo: f64, hi: f64, tol: f64) -> Vec<RealRoot> {
    if p.degree().unwrap_or(0) == 0 || lo.is_nan() || hi.is_nan() || lo > hi {
        return Vec::new();
    }
    let sf = p.square_free();
    let chain = SturmChain::new(&sf);
    let mut brackets = Vec::new();
    if sf.sign_at(lo) == Ordering::Equal {
        brackets.push((lo, lo));
    }
    isolate(
        &chain,
        (lo, chain.variations(lo)),
        (hi, chain.variations(hi)),
        tol,
        &mut brackets,
    );

    // g_k = gcd(g_{k−1}, g_{k−1}') has exactly the roots of multiplicity > k
    let mut repeated = Vec::new();
    let mut g = p.gcd(&p.derivative());
    while g.degree().unwrap_or(0) > 0 {
        let next = g.gcd(&g.derivative());
        let gsf = g.square_free();
        repeated.push((SturmChain::new(&gsf), gsf));
        g = next;
    }

    brackets
        .into_iter()
        .map(|(a, b)| {
            let extra = repeated
                .iter()
                .filter(|(chain, gsf)| {
                    if a == b {
                        gsf.sign_at(a) == Ordering::Equal
                    } else {
                        chain.count(a, b) > 0
                    }
                })
                .count();
            RealRoot {
                lo: a,
                hi: b,
                multiplicity: 1 + extra,
            }
        })
        .collect()
}

struct Bracketed {
    chain: SturmChain,
    sf: IntPolynomial,
    lo: f64,
    hi: f64,
}

impl Bracketed {
    fn extreme(p: &IntPolynomial, which: ExtremeRoot, lo: f64, hi: f64) -> Option<Self> {
        let roots = sturm_real_roots(p, lo, hi, (hi - lo) / 1024.0);
        let r = match which {
            ExtremeRoot::Largest => roots.last()?,
            ExtremeRoot::Least => roots.first()?,
        };
        let sf = p.square_free();
        Some(Bracketed {
            chain: SturmChain::new(&sf),
            sf,
            lo: r.lo,
            hi: r.hi,
        })
    }

    fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Halves the bracket; returns false at `f64` resolution.
    fn refine(&mut self) -> bool {
        if self.is_point() {
            return false;
        }
        let m = midpoint(self.lo, self.hi);
        if m <= self.lo || m >= self.hi {
            return false;
        }
        if self.sf.sign_at(m) == Ordering::Equal {
            self.lo = m;
            self.hi = m;
        } else if self.chain.count(self.lo, m) == 1 {
            self.hi = m;
        } else {
            self.lo = m;
        }
        true
    }
}

/// Exactly compares the largest (or least) real root of `p` in `[lo, hi]`
/// with that of `q`.
pub fn compare_roots(
    p: &IntPolynomial,
    q: &IntPolynomial,
    which: ExtremeRoot,
    lo: f64,
    hi: f64,
) -> RootOrder {
    let (Some(mut a), Some(mut b)) = (
        Bracketed::extreme(p, which, lo, hi),
        Bracketed::extreme(q, which, lo, hi),
    ) else {
        return RootOrder::Missing;
    };

    // a common root inside both brackets is the isolated root of each
    let common = a.sf.gcd(&b.sf);
    if common.degree().unwrap_or(0) > 0 {
        let lo = a.lo.max(b.lo);
        let hi = a.hi.min(b.hi);
        if lo <= hi {
            let hit = if lo == hi {
                common.sign_at(lo) == Ordering::Equal
            } else {
                let cc = SturmChain::new(&common.square_free());
                cc.count(lo, hi) > 0
                    || (a.is_point() || b.is_point()) && common.sign_at(lo) == Ordering::Equal
            };
            if hit {
                return RootOrder::Equal;
            }
        }
    }

    loop {
        if a.hi < b.lo || (a.hi == b.lo && !b.is_point()) {
            return RootOrder::Less;
        }
        if b.hi < a.lo || (b.hi == a.lo && !a.is_point()) {
            return RootOrder::Greater;
        }
        #[allow(clippy::if_same_then_else)]
        let progressed = if a.hi - a.lo >= b.hi - b.lo {
            a.refine() || b.refine()
        } else {
            b.refine() || a.refine()
        };
        if !progressed {
            return RootOrder::Unresolved;
        }
    }
}
