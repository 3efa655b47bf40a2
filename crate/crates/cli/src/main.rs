//! `cdspec`: distance spectra of graph complements from the command line.
//!
//! Reports go to stdout as JSON lines; a short summary goes to stderr.

use std::io::{self, BufRead, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use cdspec_core::quotients::{quotient_consistency, supports_quotient, QuotientModel};
use cdspec_core::spectra::tol;
use cdspec_core::verify::{
    complement_spectrum, sign_partition_of, ClaimId, Status, VerificationReport, Verifier,
    VerifyConfig,
};
use cdspec_core::{Family, FamilyId, FamilyParams, Graph, Real};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "cdspec",
    version,
    about = "Distance spectra of graph complements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complement distance spectrum of a family member or of graph6 lines on stdin.
    Spectrum(SpectrumArgs),
    /// Build a family member and describe it.
    Family(FamilyArgs),
    /// Printed and derived quotient polynomials of a family member.
    Poly(FamilyArgs),
    /// Check registered claims and report a verdict for each.
    Verify(VerifyArgs),
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
}

#[derive(Args)]
struct FamilyArgs {
    /// path, star, H, T, T1, T2, B1, B2, L, Lprime, Ldprime
    #[arg(long)]
    family: String,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, conflicts_with = "stdin")]
    family: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
    /// Read newline-delimited graph6 from standard input.
    #[arg(long)]
    stdin: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Threshold for the zero class of the sign partition.
    #[arg(long, default_value_t = tol::ZERO)]
    zero_tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated claim ids, or `all`.
    #[arg(long, value_delimiter = ',', required = true)]
    claims: Vec<String>,
    /// Orders: `7`, `6,7` or `5..9`.
    #[arg(long)]
    n: Option<String>,
    /// Inclusive range for the first grid parameter, e.g. `4..8`.
    #[arg(long)]
    p: Option<String>,
    /// Inclusive range for the second grid parameter.
    #[arg(long)]
    q: Option<String>,
    #[arg(long, env = "CDSPEC_WORKERS")]
    workers: Option<usize>,
    /// Use graph6 lines from standard input instead of the labeled scan.
    #[arg(long)]
    stdin: bool,
    /// Also write a CSV summary to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Permit the labeled scan at n = 8.
    #[arg(long)]
    allow_n8: bool,
    #[arg(long, default_value_t = tol::ZERO)]
    zero_tol: f64,
    /// Spanning trees examined per graph.
    #[arg(long, default_value_t = 1000)]
    spanning_tree_cap: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Family(a) => cmd_family(a),
        Command::Poly(a) => cmd_poly(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn family_from(name: &str, p: &ParamArgs) -> Result<Family> {
    let id: FamilyId = name.parse()?;
    let mut params = FamilyParams {
        n: p.n,
        s: p.s,
        t: p.t,
        a: p.a,
        b: p.b,
        p: p.p,
        q: p.q,
    };
    // T on n vertices means T(n−3, 1)
    if id == FamilyId::T && p.a.is_none() && p.b.is_none() {
        if let Some(n) = p.n {
            if n < 4 {
                bail!("T needs n ≥ 4, got {n}");
            }
            params.a = Some(n - 3);
            params.b = Some(1);
        }
    }
    Ok(Family::from_params(id, &params)?)
}

fn emit<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn read_graph6_lines() -> Result<Vec<(usize, Graph)>> {
    let mut graphs = Vec::new();
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line = line.context("reading standard input")?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let g = Graph::from_graph6(text).map_err(|e| anyhow!("line {}: {e}", i + 1))?;
        graphs.push((i + 1, g));
    }
    Ok(graphs)
}

#[derive(Serialize)]
struct SpectrumReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    graph6: String,
    order: usize,
    diameter: u32,
    lambda1: Real,
    lambda_n: Real,
    spectrum: Vec<Real>,
    p: usize,
    q: usize,
    degenerate: bool,
}

fn spectrum_of(g: &Graph, source: Option<String>, zero: f64) -> Result<SpectrumReport> {
    let diameter = g.diameter()?;
    let s = complement_spectrum(g)?;
    let sp = sign_partition_of(&s, zero);
    Ok(SpectrumReport {
        source,
        graph6: g.to_graph6(),
        order: g.order(),
        diameter,
        lambda1: Real(s.largest()),
        lambda_n: Real(s.least()),
        spectrum: s.values().iter().copied().map(Real).collect(),
        p: sp.p,
        q: sp.q,
        degenerate: sp.degenerate,
    })
}

fn cmd_spectrum(a: SpectrumArgs) -> Result<ExitCode> {
    if a.zero_tol <= 0.0 {
        bail!("--zero-tol must be positive");
    }
    let inputs: Vec<(Option<String>, Graph, String)> = match (&a.family, a.stdin) {
        (Some(name), false) => {
            let f = family_from(name, &a.params)?;
            vec![(Some(f.to_string()), f.build()?, f.to_string())]
        }
        (None, true) => read_graph6_lines()?
            .into_iter()
            .map(|(line, g)| (None, g, format!("line {line}")))
            .collect(),
        _ => bail!("give exactly one of --family or --stdin"),
    };
    let mut out = io::stdout().lock();
    for (source, g, label) in inputs {
        let r = spectrum_of(&g, source, a.zero_tol).with_context(|| label.clone())?;
        match a.format {
            Format::Json => emit(&mut out, &r)?,
            Format::Text => {
                writeln!(
                    out,
                    "{label}: {} n={} diam={} lambda1={} lambda_n={} (p,q)=({},{})",
                    r.graph6, r.order, r.diameter, r.lambda1, r.lambda_n, r.p, r.q
                )?;
                let values: Vec<String> = r.spectrum.iter().map(|v| v.to_string()).collect();
                writeln!(out, "  spectrum: {}", values.join(" "))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FamilyReport {
    #[serde(flatten)]
    family: Family,
    name: String,
    graph6: String,
    order: usize,
    edges: usize,
    diameter: u32,
    degrees: Vec<usize>,
    complement_connected: bool,
}

fn cmd_family(a: FamilyArgs) -> Result<ExitCode> {
    let f = family_from(&a.family, &a.params)?;
    let g = f.build()?;
    emit(
        &mut io::stdout().lock(),
        &FamilyReport {
            family: f,
            name: f.to_string(),
            graph6: g.to_graph6(),
            order: g.order(),
            edges: g.edge_count(),
            diameter: g.diameter()?,
            degrees: g.degree_sequence(),
            complement_connected: g.complement().is_connected(),
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PolyReport {
    family: String,
    order: usize,
    matrix: Vec<Vec<i64>>,
    matrix_is_printed: bool,
    printed: cdspec_core::IntPolynomial,
    derived: cdspec_core::IntPolynomial,
    matches: bool,
    roots: Vec<Real>,
    roots_in_spectrum: bool,
}

fn cmd_poly(a: FamilyArgs) -> Result<ExitCode> {
    let f = family_from(&a.family, &a.params)?;
    if !supports_quotient(&f) {
        bail!("no quotient model for {f}");
    }
    let model = QuotientModel::new(&f)?;
    let check = quotient_consistency(&f, tol::COMPARE)?;
    emit(
        &mut io::stdout().lock(),
        &PolyReport {
            family: f.to_string(),
            order: f.order(),
            matrix: model.matrix.rows(),
            matrix_is_printed: model.matrix_is_printed,
            matches: model.printed_matches(),
            roots: model.derived_roots().into_iter().map(Real).collect(),
            printed: model.printed_poly,
            derived: model.derived_poly,
            roots_in_spectrum: check.roots_in_spectrum,
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>> {
    let t = text.trim();
    let num = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .with_context(|| format!("`{s}` is not a non-negative integer"))
    };
    let r = match t.split_once("..") {
        Some((lo, hi)) => num(lo)?..=num(hi.trim_start_matches('='))?,
        None => {
            let v = num(t)?;
            v..=v
        }
    };
    if r.is_empty() {
        bail!("empty range `{text}`");
    }
    Ok(r)
}

fn parse_orders(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        out.extend(parse_range(part)?);
    }
    Ok(out)
}

fn parse_claims(ids: &[String]) -> Result<Vec<ClaimId>> {
    if ids.iter().any(|c| c.eq_ignore_ascii_case("all")) {
        return Ok(ClaimId::ALL.to_vec());
    }
    ids.iter().map(|c| Ok(c.parse::<ClaimId>()?)).collect()
}

#[derive(Serialize)]
struct CsvRow {
    claim: String,
    scope: String,
    status: String,
    margin: Option<f64>,
    witness: String,
    counterexamples: usize,
}

impl CsvRow {
    fn of(r: &VerificationReport) -> Self {
        let scope = match (r.n, &r.grid) {
            (Some(n), _) => format!("n={n}"),
            (None, Some(g)) => g.clone(),
            (None, None) => String::new(),
        };
        CsvRow {
            claim: r.claim.to_string(),
            scope,
            status: r.status.to_string(),
            margin: r.margin.map(|m| m.rounded()),
            witness: r
                .witnesses
                .first()
                .map(|w| w.graph6.clone())
                .unwrap_or_default(),
            counterexamples: r.counterexamples.len(),
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    let claims = parse_claims(&a.claims)?;
    if a.zero_tol <= 0.0 {
        bail!("--zero-tol must be positive");
    }
    let mut cfg = VerifyConfig {
        ns: a.n.as_deref().map(parse_orders).transpose()?,
        p: a.p.as_deref().map(parse_range).transpose()?,
        q: a.q.as_deref().map(parse_range).transpose()?,
        allow_n8: a.allow_n8,
        zero_tol: a.zero_tol,
        spanning_tree_cap: a.spanning_tree_cap,
        ..VerifyConfig::default()
    };
    if let Some(w) = a.workers {
        if w == 0 {
            bail!("--workers must be at least 1");
        }
        cfg.workers = w;
    }
    if a.stdin {
        cfg.graphs = Some(read_graph6_lines()?.into_iter().map(|(_, g)| g).collect());
    }

    let mut verifier = Verifier::new(cfg);
    let mut out = io::stdout().lock();
    let mut reports = Vec::new();
    for claim in claims {
        for r in verifier
            .run(claim)
            .with_context(|| format!("claim {claim}"))?
        {
            emit(&mut out, &r)?;
            out.flush()?;
            reports.push(r);
        }
    }

    for r in &reports {
        let scope = CsvRow::of(r).scope;
        let margin = r.margin.map(|m| format!(" margin {m}")).unwrap_or_default();
        eprintln!(
            "{:<22} {:<12} {}{margin}",
            r.claim.to_string(),
            scope,
            r.status
        );
    }
    if let Some(path) = &a.csv {
        let mut w =
            csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        for r in &reports {
            w.serialize(CsvRow::of(r))?;
        }
        w.flush()?;
    }

    let worst = reports
        .iter()
        .map(|r| r.status)
        .max()
        .unwrap_or(Status::Confirmed);
    Ok(match worst {
        Status::Confirmed => ExitCode::SUCCESS,
        Status::Refuted => ExitCode::from(2),
        Status::ConfirmedWithReversedDirection => ExitCode::from(3),
    })
}
