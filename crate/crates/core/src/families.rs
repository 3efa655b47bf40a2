//! Named graph families with fixed labelings.
//!
//! Every constructor checks the declared order and diameter of its output, and
//! that the complement is connected whenever the diameter is at least 3.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: FamilyId, reason: String },
    #[error("missing parameter `{param}` for {family}")]
    MissingParam {
        family: FamilyId,
        param: &'static str,
    },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{family} built with {found} where {expected} was expected")]
    Invariant {
        family: String,
        expected: String,
        found: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    Path,
    Star,
    H,
    T,
    T1,
    T2,
    B1,
    B2,
    L,
    LPrime,
    LDoublePrime,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::Path,
        FamilyId::Star,
        FamilyId::H,
        FamilyId::T,
        FamilyId::T1,
        FamilyId::T2,
        FamilyId::B1,
        FamilyId::B2,
        FamilyId::L,
        FamilyId::LPrime,
        FamilyId::LDoublePrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Path => "path",
            FamilyId::Star => "star",
            FamilyId::H => "H",
            FamilyId::T => "T",
            FamilyId::T1 => "T1",
            FamilyId::T2 => "T2",
            FamilyId::B1 => "B1",
            FamilyId::B2 => "B2",
            FamilyId::L => "L",
            FamilyId::LPrime => "Lprime",
            FamilyId::LDoublePrime => "Ldprime",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let id = match s.to_ascii_lowercase().as_str() {
            "path" | "p" => FamilyId::Path,
            "star" => FamilyId::Star,
            "h" => FamilyId::H,
            "t" => FamilyId::T,
            "t1" => FamilyId::T1,
            "t2" => FamilyId::T2,
            "b1" => FamilyId::B1,
            "b2" => FamilyId::B2,
            "l" => FamilyId::L,
            "lprime" | "l'" => FamilyId::LPrime,
            "ldprime" | "ldoubleprime" | "l''" => FamilyId::LDoublePrime,
            _ => return Err(FamilyError::UnknownFamily(s.to_string())),
        };
        Ok(id)
    }
}

/// Loose parameter bag, as collected from command-line flags.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: Option<usize>,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
}

/// A family member with concrete parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "family")]
pub enum Family {
    Path {
        n: usize,
    },
    Star {
        n: usize,
    },
    /// `K_{s+t}` with `u` joined to `s` clique vertices and `v` to the other `t`.
    H {
        s: usize,
        t: usize,
    },
    /// Double star: adjacent centres with `a` and `b` pendants.
    T {
        a: usize,
        b: usize,
    },
    /// `P_3` with `a` pendants at one end and `b` at the other.
    T1 {
        a: usize,
        b: usize,
    },
    /// `T(a, b)` with one extra pendant edge hanging from an `a`-pendant.
    T2 {
        a: usize,
        b: usize,
    },
    /// `K_{p,q}` minus an edge `uv`.
    B1 {
        p: usize,
        q: usize,
    },
    /// `B1(p, q)` with every edge at `w ∈ U∖{u}` removed except `wv`.
    B2 {
        p: usize,
        q: usize,
    },
    /// `K_p` minus an edge `wu`, with `u` joined to a vertex `v` of a disjoint `K_q`.
    L {
        p: usize,
        q: usize,
    },
    /// `K_{n−2}` minus `wu`, with a pendant at `w` and a pendant at `u`.
    LPrime {
        n: usize,
    },
    /// `K_{n−2}` minus `w'u'`, with a two-vertex path hanging from `u'`.
    LDoublePrime {
        n: usize,
    },
}

impl Family {
    pub fn from_params(id: FamilyId, params: &FamilyParams) -> Result<Self, FamilyError> {
        let need = |v: Option<usize>, param: &'static str| {
            v.ok_or(FamilyError::MissingParam { family: id, param })
        };
        let fam = match id {
            FamilyId::Path => Family::Path {
                n: need(params.n, "n")?,
            },
            FamilyId::Star => Family::Star {
                n: need(params.n, "n")?,
            },
            FamilyId::H => Family::H {
                s: need(params.s, "s")?,
                t: need(params.t, "t")?,
            },
            FamilyId::T => Family::T {
                a: need(params.a, "a")?,
                b: need(params.b, "b")?,
            },
            FamilyId::T1 => Family::T1 {
                a: need(params.a, "a")?,
                b: need(params.b, "b")?,
            },
            FamilyId::T2 => Family::T2 {
                a: need(params.a, "a")?,
                b: need(params.b, "b")?,
            },
            FamilyId::B1 => Family::B1 {
                p: need(params.p, "p")?,
                q: need(params.q, "q")?,
            },
            FamilyId::B2 => Family::B2 {
                p: need(params.p, "p")?,
                q: need(params.q, "q")?,
            },
            FamilyId::L => Family::L {
                p: need(params.p, "p")?,
                q: need(params.q, "q")?,
            },
            FamilyId::LPrime => Family::LPrime {
                n: need(params.n, "n")?,
            },
            FamilyId::LDoublePrime => Family::LDoublePrime {
                n: need(params.n, "n")?,
            },
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn id(&self) -> FamilyId {
        match self {
            Family::Path { .. } => FamilyId::Path,
            Family::Star { .. } => FamilyId::Star,
            Family::H { .. } => FamilyId::H,
            Family::T { .. } => FamilyId::T,
            Family::T1 { .. } => FamilyId::T1,
            Family::T2 { .. } => FamilyId::T2,
            Family::B1 { .. } => FamilyId::B1,
            Family::B2 { .. } => FamilyId::B2,
            Family::L { .. } => FamilyId::L,
            Family::LPrime { .. } => FamilyId::LPrime,
            Family::LDoublePrime { .. } => FamilyId::LDoublePrime,
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            Family::Path { n } | Family::Star { n } => n,
            Family::LPrime { n } | Family::LDoublePrime { n } => n,
            Family::H { s, t } => s + t + 2,
            Family::T { a, b } => a + b + 2,
            Family::T1 { a, b } | Family::T2 { a, b } => a + b + 3,
            Family::B1 { p, q } | Family::B2 { p, q } | Family::L { p, q } => p + q,
        }
    }

    pub fn expected_diameter(&self) -> u32 {
        match *self {
            Family::Path { n } => n as u32 - 1,
            Family::Star { n } => (n as u32 - 1).min(2),
            Family::H { .. } | Family::T { .. } | Family::B1 { .. } => 3,
            Family::T1 { .. }
            | Family::T2 { .. }
            | Family::B2 { .. }
            | Family::L { .. }
            | Family::LPrime { .. }
            | Family::LDoublePrime { .. } => 4,
        }
    }

    fn validate(&self) -> Result<(), FamilyError> {
        let bad = |reason: &str| {
            Err(FamilyError::InvalidParams {
                family: self.id(),
                reason: reason.to_string(),
            })
        };
        let ok = match *self {
            Family::Path { n } | Family::Star { n } => n >= 1,
            Family::H { s, t } => s >= 1 && t >= 1,
            Family::T { a, b } | Family::T1 { a, b } | Family::T2 { a, b } => a >= 1 && b >= 1,
            Family::B1 { p, q } => p >= 2 && q >= 2,
            Family::B2 { p, q } => p >= 3 && q >= 2,
            Family::L { p, q } => p >= 4 && q >= 2,
            Family::LPrime { n } | Family::LDoublePrime { n } => n >= 7,
        };
        if !ok {
            let reason = match self.id() {
                FamilyId::Path | FamilyId::Star => "need n >= 1",
                FamilyId::H => "need s, t >= 1",
                FamilyId::T | FamilyId::T1 | FamilyId::T2 => "need a, b >= 1",
                FamilyId::B1 => "need p, q >= 2",
                FamilyId::B2 => "need p >= 3, q >= 2",
                FamilyId::L => "need p >= 4, q >= 2",
                FamilyId::LPrime | FamilyId::LDoublePrime => "need n >= 7",
            };
            return bad(reason);
        }
        if self.order() > crate::graph::MAX_ORDER {
            return bad("order exceeds 64");
        }
        Ok(())
    }

    /// Builds the labeled graph and checks its order, diameter and
    /// complement connectivity.
    pub fn build(&self) -> Result<Graph, FamilyError> {
        self.validate()?;
        let g = self.construct()?;
        let check = |what: &str, expected: String, found: String| {
            if expected == found {
                Ok(())
            } else {
                Err(FamilyError::Invariant {
                    family: format!("{self} {what}"),
                    expected,
                    found,
                })
            }
        };
        check("order", self.order().to_string(), g.order().to_string())?;
        let d = g.diameter()?;
        check(
            "diameter",
            self.expected_diameter().to_string(),
            d.to_string(),
        )?;
        if d >= 3 {
            check(
                "complement connectivity",
                "connected".into(),
                if g.complement().is_connected() {
                    "connected"
                } else {
                    "disconnected"
                }
                .into(),
            )?;
        }
        Ok(g)
    }

    fn construct(&self) -> Result<Graph, GraphError> {
        let n = self.order();
        let mut g = Graph::empty(n)?;
        match *self {
            Family::Path { n } => {
                for v in 1..n {
                    g.add_edge(v - 1, v)?;
                }
            }
            Family::Star { n } => {
                for v in 1..n {
                    g.add_edge(0, v)?;
                }
            }
            Family::H { s, t } => {
                let k = s + t;
                add_clique(&mut g, 0..k)?;
                for c in 0..s {
                    g.add_edge(k, c)?;
                }
                for c in s..k {
                    g.add_edge(k + 1, c)?;
                }
            }
            Family::T { a, b } => double_star(&mut g, a, b)?,
            Family::T1 { a, b } => {
                g.add_edge(0, 1)?;
                g.add_edge(1, 2)?;
                for x in 3..3 + a {
                    g.add_edge(0, x)?;
                }
                for x in 3 + a..3 + a + b {
                    g.add_edge(2, x)?;
                }
            }
            Family::T2 { a, b } => {
                double_star(&mut g, a, b)?;
                g.add_edge(2, a + b + 2)?;
            }
            Family::B1 { p, q } | Family::B2 { p, q } => {
                for x in 0..p {
                    for y in p..p + q {
                        g.add_edge(x, y)?;
                    }
                }
                g.remove_edge(0, p)?;
                if matches!(self, Family::B2 { .. }) {
                    for y in p + 1..p + q {
                        g.remove_edge(1, y)?;
                    }
                }
            }
            Family::L { p, q } => {
                add_clique(&mut g, 0..p)?;
                g.remove_edge(0, 1)?;
                add_clique(&mut g, p..p + q)?;
                g.add_edge(1, p)?;
            }
            Family::LPrime { n } => {
                add_clique(&mut g, 0..n - 2)?;
                g.remove_edge(0, 1)?;
                g.add_edge(0, n - 2)?;
                g.add_edge(1, n - 1)?;
            }
            Family::LDoublePrime { n } => {
                add_clique(&mut g, 0..n - 2)?;
                g.remove_edge(0, 1)?;
                g.add_edge(1, n - 2)?;
                g.add_edge(n - 2, n - 1)?;
            }
        }
        Ok(g)
    }
}

fn add_clique(g: &mut Graph, range: std::ops::Range<usize>) -> Result<(), GraphError> {
    for x in range.clone() {
        for y in x + 1..range.end {
            g.add_edge(x, y)?;
        }
    }
    Ok(())
}

/// Centres 0 and 1; pendants `2..a+2` on 0 and `a+2..a+b+2` on 1.
fn double_star(g: &mut Graph, a: usize, b: usize) -> Result<(), GraphError> {
    g.add_edge(0, 1)?;
    for x in 2..2 + a {
        g.add_edge(0, x)?;
    }
    for x in 2 + a..2 + a + b {
        g.add_edge(1, x)?;
    }
    Ok(())
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path { n } => write!(f, "P({n})"),
            Family::Star { n } => write!(f, "Star({n})"),
            Family::LPrime { n } => write!(f, "Lprime({n})"),
            Family::LDoublePrime { n } => write!(f, "Ldprime({n})"),
            Family::H { s, t } => write!(f, "H({s},{t})"),
            Family::T { a, b } => write!(f, "T({a},{b})"),
            Family::T1 { a, b } => write!(f, "T1({a},{b})"),
            Family::T2 { a, b } => write!(f, "T2({a},{b})"),
            Family::B1 { p, q } => write!(f, "B1({p},{q})"),
            Family::B2 { p, q } => write!(f, "B2({p},{q})"),
            Family::L { p, q } => write!(f, "L({p},{q})"),
        }
    }
}

pub fn build_path(n: usize) -> Result<Graph, FamilyError> {
    Family::Path { n }.build()
}

pub fn build_star(n: usize) -> Result<Graph, FamilyError> {
    Family::Star { n }.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    fn iso(a: &Graph, b: &Graph) -> bool {
        is_isomorphic(a, b).unwrap()
    }

    #[test]
    fn paths_and_stars() {
        assert_eq!(build_path(2).unwrap().edge_count(), 1);
        assert_eq!(build_path(5).unwrap().diameter().unwrap(), 4);
        assert_eq!(build_path(1).unwrap().order(), 1);
        let star = build_star(4).unwrap();
        assert_eq!(star.degree_sequence(), vec![1, 1, 1, 3]);
    }

    #[test]
    fn h_family() {
        let g = Family::H { s: 2, t: 2 }.build().unwrap();
        assert_eq!(
            (g.order(), g.edge_count(), g.diameter().unwrap()),
            (6, 10, 3)
        );
        assert!(iso(
            &Family::H { s: 1, t: 1 }.build().unwrap(),
            &build_path(4).unwrap()
        ));
        for (s, t) in [(1, 3), (2, 5), (4, 1)] {
            let a = Family::H { s, t }.build().unwrap();
            let b = Family::H { s: t, t: s }.build().unwrap();
            assert!(iso(&a, &b));
        }
        assert!(!g.has_edge(4, 5));
    }

    #[test]
    fn trees() {
        let d = |f: Family| f.build().unwrap().diameter().unwrap();
        assert_eq!(d(Family::T { a: 3, b: 1 }), 3);
        assert_eq!(d(Family::T1 { a: 2, b: 1 }), 4);
        assert_eq!(d(Family::T2 { a: 2, b: 1 }), 4);
        let p5 = build_path(5).unwrap();
        assert!(iso(&Family::T1 { a: 1, b: 1 }.build().unwrap(), &p5));
        assert!(iso(
            &Family::T { a: 1, b: 1 }.build().unwrap(),
            &build_path(4).unwrap()
        ));
        for f in [
            Family::T { a: 4, b: 2 },
            Family::T1 { a: 3, b: 2 },
            Family::T2 { a: 2, b: 3 },
        ] {
            assert!(f.build().unwrap().is_tree(), "{f}");
        }
        // a single a-pendant makes T2 a path-like caterpillar equal to T1
        assert!(iso(
            &Family::T2 { a: 1, b: 2 }.build().unwrap(),
            &Family::T1 { a: 1, b: 2 }.build().unwrap()
        ));
    }

    #[test]
    fn bipartite_families() {
        let b1 = Family::B1 { p: 4, q: 2 }.build().unwrap();
        assert_eq!((b1.edge_count(), b1.diameter().unwrap()), (7, 3));
        let b2 = Family::B2 { p: 4, q: 2 }.build().unwrap();
        assert_eq!((b2.edge_count(), b2.diameter().unwrap()), (6, 4));
        for (p, q) in [(3, 2), (5, 3), (6, 6)] {
            let b2 = Family::B2 { p, q }.build().unwrap();
            assert_eq!(b2.edge_count(), p * q - q);
            let a = Family::B1 { p, q }.build().unwrap();
            let b = Family::B1 { p: q, q: p }.build().unwrap();
            assert_eq!(a.edge_count(), p * q - 1);
            assert!(iso(&a, &b));
        }
    }

    #[test]
    fn clique_families() {
        assert_eq!(
            Family::L { p: 4, q: 4 }
                .build()
                .unwrap()
                .diameter()
                .unwrap(),
            4
        );
        for n in 7..=12 {
            let lp = Family::LPrime { n }.build().unwrap();
            assert_eq!(lp.edge_count(), (n - 2) * (n - 3) / 2 - 1 + 2);
            let ld = Family::LDoublePrime { n }.build().unwrap();
            assert_eq!(ld.edge_count(), lp.edge_count());
            assert!(!iso(&lp, &ld));
        }
        assert_eq!(
            Family::L { p: 5, q: 3 }.build().unwrap().edge_count(),
            10 - 1 + 3 + 1
        );
    }

    #[test]
    fn parameter_checks() {
        let err = |f: Family| f.build().unwrap_err();
        assert!(matches!(
            err(Family::H { s: 0, t: 3 }),
            FamilyError::InvalidParams { .. }
        ));
        assert!(matches!(
            err(Family::B2 { p: 2, q: 2 }),
            FamilyError::InvalidParams { .. }
        ));
        assert!(matches!(
            err(Family::L { p: 3, q: 2 }),
            FamilyError::InvalidParams { .. }
        ));
        assert!(matches!(
            err(Family::LPrime { n: 6 }),
            FamilyError::InvalidParams { .. }
        ));
        assert!(matches!(
            err(Family::Path { n: 65 }),
            FamilyError::InvalidParams { .. }
        ));
        let params = FamilyParams {
            p: Some(4),
            ..Default::default()
        };
        assert_eq!(
            Family::from_params(FamilyId::L, &params),
            Err(FamilyError::MissingParam {
                family: FamilyId::L,
                param: "q"
            })
        );
        assert_eq!("L''".parse::<FamilyId>().unwrap(), FamilyId::LDoublePrime);
        assert!("K".parse::<FamilyId>().is_err());
    }

    #[test]
    fn deterministic_labelings() {
        for id in FamilyId::ALL {
            let params = FamilyParams {
                n: Some(8),
                s: Some(2),
                t: Some(3),
                a: Some(2),
                b: Some(3),
                p: Some(5),
                q: Some(3),
            };
            let f = Family::from_params(id, &params).unwrap();
            assert_eq!(f.build().unwrap(), f.build().unwrap());
            assert_eq!(f.build().unwrap().order(), f.order());
        }
    }
}
