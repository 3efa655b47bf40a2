//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use cdspec_core::families::build_path;
use cdspec_core::graph::is_isomorphic;
use cdspec_core::quotients::{check_identity, IdentityId};
use cdspec_core::spectra::{sym_eigenvalues, SymMatrix};
use cdspec_core::verify::{
    enumerate_diam_gt3, ClaimId, Status, VerificationReport, Verifier, VerifyConfig,
};
use cdspec_core::{Family, FamilyId, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Pinned tolerances.
const MARGIN: f64 = 1e-9;
const EQUAL: f64 = 1e-9;
const ROOT_MATCH: f64 = 1e-9;
const TRACE: f64 = 1e-9;
const INTERLACE: f64 = 1e-9;
const INTERLACING_TRIALS: usize = 1000;
const SEED: u64 = 0x5eed_cd5b;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn one(v: &mut Verifier, claim: ClaimId) -> Result<VerificationReport, String> {
    let mut rs = v.run(claim).map_err(|e| format!("{claim}: {e}"))?;
    ensure(
        rs.len() == 1,
        format!("{claim}: expected one report, got {}", rs.len()),
    )?;
    Ok(rs.remove(0))
}

fn value(r: &VerificationReport, key: &str) -> Result<f64, String> {
    r.values
        .get(key)
        .map(|v| v.0)
        .ok_or_else(|| format!("{}: no value {key}", r.claim))
}

fn margin(r: &VerificationReport) -> Result<f64, String> {
    r.margin
        .map(|m| m.0)
        .ok_or_else(|| format!("{}: no margin", r.claim))
}

fn config(ns: &[usize]) -> VerifyConfig {
    VerifyConfig {
        ns: Some(ns.to_vec()),
        ..VerifyConfig::default()
    }
}

fn criterion_1() -> Check {
    let mut seen = Vec::new();
    for n in [6, 7] {
        let mut bad = 0u64;
        let total = enumerate_diam_gt3(n, |g| {
            let d = g
                .complement_distance_matrix()
                .expect("complement is connected");
            for j in 0..n {
                for i in 0..n {
                    let expected = if i == j {
                        0
                    } else if g.has_edge(i, j) {
                        2
                    } else {
                        1
                    };
                    if d.get(i, j) != expected {
                        bad += 1;
                        return;
                    }
                }
            }
        })
        .map_err(|e| e.to_string())?;
        ensure(
            bad == 0,
            format!("n={n}: {bad} graphs break D(G^c) = J - I + A(G)"),
        )?;
        let r = one(&mut Verifier::new(config(&[n])), ClaimId::L2_1)?;
        ensure(
            r.status == Status::Confirmed,
            format!("n={n}: verifier reports {}", r.status),
        )?;
        ensure(
            r.counts.get("identity_holds") == Some(&total),
            format!("n={n}: verifier counts {:?}, enumeration {total}", r.counts),
        )?;
        seen.push(format!("n={n}: {total} graphs"));
    }
    Ok(seen.join(", "))
}

fn criterion_2(v: &mut Verifier) -> Check {
    let mut seen = Vec::new();
    for r in v.run(ClaimId::T2_8).map_err(|e| e.to_string())? {
        let n = r.n.ok_or("report without order")?;
        ensure(
            r.status == Status::Confirmed,
            format!("n={n}: {}", r.status),
        )?;
        ensure(r.unique == Some(true), format!("n={n}: minimum not unique"))?;
        let best = Graph::from_graph6(&r.witnesses[0].graph6).map_err(|e| e.to_string())?;
        let path = build_path(n).map_err(|e| e.to_string())?;
        ensure(
            is_isomorphic(&best, &path).map_err(|e| e.to_string())?,
            format!("n={n}: minimizer is not P{n}"),
        )?;
        let extremal = value(&r, "extremal")?;
        let bound = value(&r, "bound")?;
        ensure(
            (extremal - bound).abs() <= EQUAL,
            format!("n={n}: min differs from P{n}"),
        )?;
        // n=5 has P5 as its only class
        match r.values.get("runner_up") {
            Some(ru) => {
                let gap = ru.0 - extremal;
                ensure(gap > MARGIN, format!("n={n}: runner-up gap {gap:e}"))?;
                seen.push(format!("n={n} gap {gap:.6}"));
            }
            None => {
                ensure(
                    r.counts.get("classes_tied") == Some(&1),
                    format!("n={n}: no runner-up"),
                )?;
                seen.push(format!("n={n} single class"));
            }
        }
    }
    ensure(seen.len() == 3, "expected orders 5, 6, 7")?;
    Ok(seen.join(", "))
}

fn strict_theorem(v: &mut Verifier, claim: ClaimId, bound_family: Family) -> Check {
    let r = one(v, claim)?;
    let bound_graph = bound_family.build().map_err(|e| e.to_string())?;
    let m = margin(&r)?;
    ensure(
        r.status == Status::Confirmed,
        format!("status {}", r.status),
    )?;
    ensure(m > MARGIN, format!("margin {m:e}"))?;
    Ok(format!(
        "extremal {}, bound {} (diam {}), margin {m:.6}",
        value(&r, "extremal")?,
        value(&r, "bound")?,
        bound_graph.diameter().map_err(|e| e.to_string())?
    ))
}

fn criterion_5(v: &mut Verifier) -> Check {
    let r = one(v, ClaimId::T3_13)?;
    let extremal = value(&r, "extremal")?;
    let bound = value(&r, "bound")?;
    let l43 = Family::L { p: 4, q: 3 }
        .build()
        .map_err(|e| e.to_string())?;
    let best = Graph::from_graph6(&r.witnesses[0].graph6).map_err(|e| e.to_string())?;
    let detail = format!(
        "max lambda_n {extremal} by {}, lambda_n(L^c(4,3)) = {bound}, unique = {:?}, status {}",
        r.witnesses[0].graph6, r.unique, r.status
    );
    ensure((extremal - bound).abs() <= EQUAL, detail.clone())?;
    ensure(
        is_isomorphic(&best, &l43).map_err(|e| e.to_string())?,
        detail.clone(),
    )?;
    Ok(detail)
}

fn criterion_6() -> Check {
    let r = one(
        &mut Verifier::new(VerifyConfig::default()),
        ClaimId::QuotientConsistency,
    )?;
    ensure(
        r.status == Status::Confirmed,
        format!("status {}", r.status),
    )?;
    let gap = ROOT_MATCH - margin(&r)?;
    ensure(gap <= ROOT_MATCH, format!("root gap {gap:e}"))?;
    let wanted = [
        FamilyId::H,
        FamilyId::B1,
        FamilyId::B2,
        FamilyId::T,
        FamilyId::L,
        FamilyId::LPrime,
        FamilyId::LDoublePrime,
    ];
    for id in wanted {
        let s = r
            .families
            .iter()
            .find(|s| s.family == id)
            .ok_or_else(|| format!("{id:?} not checked"))?;
        ensure(
            s.instances > 0 && s.consistent == s.instances,
            format!("{id:?}: {:?}", s.failures),
        )?;
        ensure(
            s.lambda1_is_largest_root == s.instances,
            format!("{id:?}: lambda1 not a root"),
        )?;
        let documented = r
            .verdicts
            .iter()
            .any(|v| v.topic.starts_with(&format!("{id}")));
        ensure(
            s.printed_matches_derived >= 3 || documented,
            format!("{id:?}: published polynomial mismatch undocumented"),
        )?;
    }
    Ok(format!(
        "{} instances, max root gap {gap:.3e}",
        r.counts.get("instances").copied().unwrap_or(0)
    ))
}

fn criterion_7() -> Check {
    let grid: Vec<(i64, i64)> = (2..=20)
        .flat_map(|x| (2..=20).map(move |y| (x, y)))
        .collect();
    let mut flagged = Vec::new();
    for id in IdentityId::ALL {
        let r = check_identity(id, &grid);
        if r.holds_for_printed {
            continue;
        }
        let derived = r
            .derived_difference
            .as_ref()
            .ok_or_else(|| format!("{}: fails as printed with no derived difference", r.claim))?;
        flagged.push(format!("{} -> {}", r.claim, derived));
    }
    Ok(if flagged.is_empty() {
        "all hold as printed".into()
    } else {
        format!("flagged {}", flagged.join("; "))
    })
}

fn criterion_8() -> Check {
    let mut v = Verifier::new(VerifyConfig::default());
    let mut lines = Vec::new();
    let mut failed = false;
    for claim in [
        ClaimId::L3_4,
        ClaimId::L3_5,
        ClaimId::L3_1,
        ClaimId::L3_11,
        ClaimId::L3_12,
    ] {
        let r = one(&mut v, claim)?;
        let m = margin(&r)?;
        let bad = r.points.iter().filter(|p| p.margin.0 <= MARGIN).count();
        if r.status != Status::Confirmed || m <= MARGIN {
            failed = true;
        }
        lines.push(format!(
            "{claim} {} ({bad}/{} points, margin {m:.6})",
            r.status,
            r.points.len()
        ));
    }
    let detail = lines.join("; ");
    if failed {
        Err(detail)
    } else {
        Ok(detail)
    }
}

fn least(m: &SymMatrix) -> f64 {
    sym_eigenvalues(m, cdspec_core::spectra::tol::SOLVER)
        .unwrap()
        .least()
}

fn criterion_9() -> Check {
    let dist = |n: usize| {
        let p = build_path(n).map_err(|e| e.to_string())?;
        p.distance_matrix()
            .map(|d| d.to_sym_matrix())
            .map_err(|e| e.to_string())
    };
    let p2 = sym_eigenvalues(&dist(2)?, 1e-12).map_err(|e| e.to_string())?;
    ensure(
        p2.largest() == 1.0,
        format!("lambda1(D(P2)) = {}", p2.largest()),
    )?;
    let l4 = least(&dist(4)?);
    ensure(l4 < -3.0, format!("lambda4(D(P4)) = {l4}"))?;
    let l5 = least(&dist(5)?);
    ensure(l5 < -5.0, format!("lambda5(D(P5)) = {l5}"))?;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_trace = 0.0f64;
    for trial in 0..INTERLACING_TRIALS {
        let n = rng.gen_range(2..=14);
        let g = loop {
            let mut g = Graph::empty(n).unwrap();
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_bool(0.4) {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            if g.is_connected() {
                break g;
            }
        };
        let d = g.distance_matrix().unwrap().to_sym_matrix();
        let full = sym_eigenvalues(&d, 1e-12).map_err(|e| e.to_string())?;
        worst_trace = worst_trace.max((full.sum() - d.trace()).abs());
        let m = rng.gen_range(1..n);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        idx.truncate(m);
        idx.sort_unstable();
        let sub =
            sym_eigenvalues(&d.principal_submatrix(&idx), 1e-12).map_err(|e| e.to_string())?;
        let sub_trace = sub.sum() - d.principal_submatrix(&idx).trace();
        worst_trace = worst_trace.max(sub_trace.abs());
        let (a, b) = (full.values(), sub.values());
        for i in 0..m {
            ensure(
                a[i] + INTERLACE >= b[i] && b[i] + INTERLACE >= a[i + n - m],
                format!(
                    "trial {trial}: interlacing fails at {i} for {}",
                    g.to_graph6()
                ),
            )?;
        }
    }
    ensure(worst_trace <= TRACE, format!("trace error {worst_trace:e}"))?;
    Ok(format!(
        "lambda4(D(P4)) = {l4:.6}, lambda5(D(P5)) = {l5:.6}, {INTERLACING_TRIALS} trials, trace error {worst_trace:.1e}"
    ))
}

fn criterion_10() -> Check {
    let mut v = Verifier::new(VerifyConfig {
        p: Some(4..=12),
        q: Some(2..=12),
        ..VerifyConfig::default()
    });
    let mut found = Vec::new();
    for (claim, topic) in [
        (ClaimId::L2_5, "direction"),
        (ClaimId::L2_3, "monotone step"),
        (ClaimId::L3_4, "(lambda+1) power in the B2 factorisation"),
    ] {
        let r = one(&mut v, claim)?;
        let verdict = r
            .verdicts
            .iter()
            .find(|x| x.topic == topic)
            .ok_or_else(|| format!("{claim}: no '{topic}' verdict"))?;
        ensure(
            !verdict.finding.is_empty(),
            format!("{claim}: empty verdict"),
        )?;
        found.push(format!("{claim} {}", r.status));
    }
    Ok(found.join(", "))
}

fn criterion_11() -> Check {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_cdspec"))
            .args([
                "verify",
                "--claims",
                "T2.8",
                "--n",
                "7",
                "--workers",
                workers,
            ])
            .output()
            .map_err(|e| e.to_string())
    };
    let outputs = [run("1")?, run("8")?, run("8")?, run("1")?];
    for o in &outputs {
        ensure(o.status.success(), format!("exit {:?}", o.status.code()))?;
    }
    ensure(
        outputs.iter().all(|o| o.stdout == outputs[0].stdout),
        "JSON differs between runs",
    )?;
    Ok(format!(
        "{} identical bytes over 4 runs",
        outputs[0].stdout.len()
    ))
}

struct Tally {
    k: usize,
    failures: usize,
}

impl Tally {
    fn record(&mut self, name: &str, check: impl FnOnce() -> Check) {
        self.k += 1;
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                self.failures += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag} {name} [{secs:.1}s]: {detail}",
            self.k
        );
    }
}

fn main() {
    let mut t = Tally { k: 0, failures: 0 };
    let mut seven = Verifier::new(config(&[7]));
    t.record("D(G^c) = J - I + A(G) at n=6,7", criterion_1);
    t.record("P_n uniquely minimizes lambda1 at n=5,6,7", || {
        criterion_2(&mut Verifier::new(config(&[5, 6, 7])))
    });
    t.record("lambda1 below H^c(2,3) at n=7", || {
        strict_theorem(&mut seven, ClaimId::T2_4, Family::H { s: 2, t: 3 })
    });
    t.record("lambda_n above B1^c(4,3) at n=7", || {
        strict_theorem(&mut seven, ClaimId::T3_7, Family::B1 { p: 4, q: 3 })
    });
    t.record("max lambda_n equals L^c(4,3) at n=7", || {
        criterion_5(&mut seven)
    });
    t.record("quotient consistency over n=7..20", criterion_6);
    t.record("polynomial identities on 2..20", criterion_7);
    t.record("inequality grids 4<=p<=12, 2<=q<=p", criterion_8);
    t.record("spectral sanity and interlacing", criterion_9);
    t.record("measured verdicts for known discrepancies", criterion_10);
    t.record("T2.8 output identical for 1 and 8 workers", criterion_11);
    println!("{} of {} criteria pass", t.k - t.failures, t.k);
    if t.failures > 0 {
        std::process::exit(1);
    }
}
