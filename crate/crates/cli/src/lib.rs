//! Request dispatch and report rendering behind the `abtaut` binary.

use std::fmt::Write as _;
use std::time::Instant;

use abtaut_core::rational::to_canonical_string;
use abtaut_core::satake::{stratum_table, POSITIVE_CHARACTERISTIC_NOTE};
use abtaut_core::{
    bernoulli, borel_serre_check_with_bound, consistency_report, main_constant, p_rank_constant, recursion_check,
    verify_main_theorem, zeta_negative_odd, Error as CoreError, GradedPolynomial, Rational, TautRing,
};
use clap::{Subcommand, ValueEnum};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const DEFAULT_MAX_GENUS: u32 = abtaut_core::taut::DEFAULT_MAX_GENUS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Show {
    Dims,
    Basis,
    Pairing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Grr,
    BorelSerre,
    Ring,
    Recursion,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Bernoulli number B_n (B_1 = -1/2)
    Bernoulli {
        #[arg(long)]
        n: u32,
    },
    /// zeta(1 - 2g)
    Zeta {
        #[arg(long)]
        g: u32,
    },
    /// The constant c_g with c_g * lambda_g = delta_g
    Constant {
        #[arg(long)]
        g: u32,
    },
    /// Dimensions, bases or pairing matrices of the tautological ring
    Ring {
        #[arg(long)]
        g: u32,
        #[arg(long, value_enum)]
        show: Show,
        #[arg(long)]
        #[serde(skip_serializing_if = "Option::is_none")]
        degree: Option<u32>,
    },
    /// Normal form of a polynomial in l1..lg
    Reduce {
        #[arg(long)]
        g: u32,
        #[arg(long, allow_hyphen_values = true)]
        monomial: String,
    },
    /// Run verification checks for g (or every genus in g..=gmax)
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        #[serde(skip_serializing_if = "Option::is_none")]
        gmax: Option<u32>,
    },
    /// Stratum constants on the Satake compactification
    Satake {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        #[serde(skip_serializing_if = "Option::is_none")]
        i: Option<u32>,
        #[arg(long)]
        #[serde(skip_serializing_if = "Option::is_none")]
        p: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandRequest {
    pub command: Command,
    pub format: Format,
    /// Truncation degree for `verify --check borel-serre`; defaults to the socle degree.
    pub bound: Option<u32>,
    /// Cap on ring construction.
    pub max_genus: u32,
    pub timing: bool,
}

impl CommandRequest {
    pub fn new(command: Command) -> Self {
        CommandRequest { command, format: Format::Json, bound: None, max_genus: DEFAULT_MAX_GENUS, timing: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEnvelope {
    pub command: Command,
    pub status: Status,
    pub payload: Value,
    /// Present only when timing was requested; never inside the payload.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl ReportEnvelope {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Fail => 1,
            Status::Pass | Status::Info => 0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn precondition(msg: impl Into<String>) -> CliError {
    CliError::Precondition(msg.into())
}

fn require_genus(g: u32) -> Result<(), CliError> {
    if g == 0 {
        return Err(precondition("--g must be at least 1 (got 0)"));
    }
    Ok(())
}

fn require_ring_genus(g: u32, max: u32) -> Result<(), CliError> {
    require_genus(g)?;
    if g > max {
        return Err(precondition(format!("--g {g} exceeds ABTAUT_MAX_G = {max}")));
    }
    Ok(())
}

/// Checks every precondition of the requested operation without computing anything.
pub fn validate(req: &CommandRequest) -> Result<(), CliError> {
    if req.format == Format::Csv && !matches!(req.command, Command::Satake { .. }) {
        return Err(precondition("--format csv is only available for the satake table"));
    }
    if req.bound.is_some() && !matches!(req.command, Command::Verify { check: Check::BorelSerre | Check::All, .. }) {
        return Err(precondition("--bound only applies to verify --check borel-serre|all"));
    }
    match &req.command {
        Command::Bernoulli { .. } => {}
        Command::Zeta { g } | Command::Constant { g } => require_genus(*g)?,
        Command::Ring { g, show, degree } => {
            require_ring_genus(*g, req.max_genus)?;
            let socle = g * (g + 1) / 2;
            match (show, degree) {
                (Show::Dims, Some(_)) => return Err(precondition("--degree is not used with --show dims")),
                (_, Some(d)) if *d > socle => {
                    return Err(precondition(format!("--degree {d} exceeds the socle degree {socle}")))
                }
                _ => {}
            }
        }
        Command::Reduce { g, .. } => require_ring_genus(*g, req.max_genus)?,
        Command::Verify { check, g, gmax } => {
            require_genus(*g)?;
            let top = gmax.unwrap_or(*g);
            if top < *g {
                return Err(precondition(format!("--gmax {top} is smaller than --g {g}")));
            }
            if matches!(check, Check::Ring | Check::All) && top > req.max_genus {
                return Err(precondition(format!("ring checks up to g = {top} exceed ABTAUT_MAX_G = {}", req.max_genus)));
            }
        }
        Command::Satake { g, i, p } => {
            require_genus(*g)?;
            if let Some(i) = i {
                if i > g {
                    return Err(precondition(format!("--i {i} must satisfy 0 <= i <= g = {g}")));
                }
            }
            if let Some(p) = p {
                if !abtaut_core::satake::is_prime(*p) {
                    return Err(precondition(format!("--p {p} is not prime")));
                }
            }
        }
    }
    Ok(())
}

/// Validates and executes a request.
pub fn run(req: &CommandRequest) -> Result<ReportEnvelope, CliError> {
    validate(req)?;
    let start = Instant::now();
    let (status, payload) = match &req.command {
        Command::Bernoulli { n } => (Status::Info, Value::String(q(&bernoulli(*n)))),
        Command::Zeta { g } => (Status::Info, Value::String(q(&zeta_negative_odd(*g)?))),
        Command::Constant { g } => (Status::Info, Value::String(q(&main_constant(*g)?))),
        Command::Ring { g, show, degree } => (Status::Info, ring_payload(*g, req.max_genus, *show, *degree)?),
        Command::Reduce { g, monomial } => {
            let ring = TautRing::build_with_max(*g, req.max_genus)?;
            let p = ring.polynomial(monomial)?;
            let nf = ring.normal_form(&p)?;
            (Status::Info, Value::String(nf.to_polynomial(&ring).to_string()))
        }
        Command::Verify { check, g, gmax } => {
            let genera: Vec<u32> = (*g..=gmax.unwrap_or(*g)).collect();
            verify_payload(*check, &genera, req.bound, req.max_genus)?
        }
        Command::Satake { g, i, p } => (Status::Info, satake_payload(*g, *i, *p)?),
    };
    let timing_ms = req.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(ReportEnvelope { command: req.command.clone(), status, payload, timing_ms })
}

fn q(x: &Rational) -> String {
    to_canonical_string(x)
}

fn subset_monomial(ring: &TautRing, indices: &[u32]) -> String {
    let mut e = vec![0u32; ring.genus() as usize];
    for &i in indices {
        e[i as usize - 1] = 1;
    }
    GradedPolynomial::monomial(ring.alphabet(), None, e, Rational::one()).to_string()
}

fn ring_payload(g: u32, max: u32, show: Show, degree: Option<u32>) -> Result<Value, CliError> {
    let ring = TautRing::build_with_max(g, max)?;
    let socle = ring.socle_degree();
    let degrees: Vec<u32> = match degree {
        Some(d) => vec![d],
        None => (0..=socle).collect(),
    };
    Ok(match show {
        Show::Dims => json!({
            "g": g,
            "socle_degree": socle,
            "dimensions": ring.dimension_profile(),
            "total": ring.dimension_profile().iter().sum::<usize>(),
        }),
        Show::Basis => {
            let rows: Vec<Value> = degrees
                .iter()
                .map(|&d| {
                    let basis: Vec<String> = ring.basis(d).iter().map(|a| subset_monomial(&ring, &a.indices())).collect();
                    json!({ "degree": d, "basis": basis })
                })
                .collect();
            json!({ "g": g, "socle_degree": socle, "degrees": rows })
        }
        Show::Pairing => {
            let mut rows = Vec::with_capacity(degrees.len());
            for &d in &degrees {
                let m = ring.pairing_matrix(d)?;
                let entries: Vec<Vec<String>> = m.entries().iter().map(|r| r.iter().map(q).collect()).collect();
                let row_basis: Vec<String> = ring.basis(d).iter().map(|a| subset_monomial(&ring, &a.indices())).collect();
                let col_basis: Vec<String> =
                    ring.basis(socle - d).iter().map(|a| subset_monomial(&ring, &a.indices())).collect();
                let det = m.determinant();
                rows.push(json!({
                    "degree": d,
                    "rows": row_basis,
                    "columns": col_basis,
                    "matrix": entries,
                    "determinant": q(&det),
                    "nonsingular": !det.is_zero(),
                }));
            }
            json!({ "g": g, "socle_degree": socle, "pairings": rows })
        }
    })
}

fn grr_entry(g: u32) -> Result<(bool, Value), CliError> {
    let r = verify_main_theorem(g)?;
    let zeta = zeta_negative_odd(g)?;
    let entry = json!({
        "g": g,
        "coefficient": q(&r.q),
        "magnitude_ok": r.magnitude_ok,
        "lower_terms_vanish": r.lower_terms_vanish,
        "mixed_terms_vanish": r.mixed_terms_vanish,
        "pure_pi_count_ok": r.pure_pi_count_ok,
        "sign": {
            "matches_zeta": r.sign_matches_zeta,
            "matches_signed_zeta": r.sign_matches_theorem,
            "zeta": q(&zeta),
            "signed_zeta": q(&main_constant(g)?),
        },
    });
    Ok((r.passed(), entry))
}

fn borel_serre_entry(g: u32, bound: Option<u32>) -> Result<(bool, Value), CliError> {
    let bound = bound.unwrap_or(g * (g + 1) / 2);
    let r = borel_serre_check_with_bound(g as usize, bound)?;
    Ok((r.passed, json!({ "g": g, "bound": bound, "passed": r.passed, "difference": r.difference })))
}

fn ring_entry(g: u32, max: u32) -> Result<(bool, Value), CliError> {
    match TautRing::build_with_max(g, max) {
        Ok(ring) => {
            let r = ring.structure_report()?;
            Ok((r.passed, serde_json::to_value(&r).map_err(|e| CliError::Output(e.to_string()))?))
        }
        Err(CoreError::BasisSelection { degree, reason }) => {
            Ok((false, json!({ "g": g, "passed": false, "basis_failure": { "degree": degree, "reason": reason } })))
        }
        Err(e) => Err(e.into()),
    }
}

fn recursion_entry(g: u32) -> Result<(bool, Value), CliError> {
    let r = recursion_check(g)?;
    let mut v = serde_json::to_value(&r).map_err(|e| CliError::Output(e.to_string()))?;
    // the parity comparison is reported, not asserted
    if g >= 2 {
        let c = consistency_report(g)?;
        v["consistency"] = serde_json::to_value(&c.entries).map_err(|e| CliError::Output(e.to_string()))?;
    }
    Ok((r.passed, v))
}

fn verify_payload(check: Check, genera: &[u32], bound: Option<u32>, max: u32) -> Result<(Status, Value), CliError> {
    let checks: Vec<Check> = match check {
        Check::All => vec![Check::Grr, Check::BorelSerre, Check::Ring, Check::Recursion],
        c => vec![c],
    };
    let mut all_passed = true;
    let mut payload = serde_json::Map::new();
    for c in checks {
        let results: Vec<(bool, Value)> = genera
            .par_iter()
            .map(|&g| match c {
                Check::Grr => grr_entry(g),
                Check::BorelSerre => borel_serre_entry(g, bound),
                Check::Ring => ring_entry(g, max),
                Check::Recursion => recursion_entry(g),
                Check::All => unreachable!("expanded above"),
            })
            .collect::<Result<_, _>>()?;
        let passed = results.iter().all(|(ok, _)| *ok);
        all_passed &= passed;
        let key = serde_json::to_value(c).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        payload.insert(key, json!({ "passed": passed, "results": results.into_iter().map(|(_, v)| v).collect::<Vec<_>>() }));
    }
    Ok((if all_passed { Status::Pass } else { Status::Fail }, Value::Object(payload)))
}

fn satake_payload(g: u32, i: Option<u32>, p: Option<u64>) -> Result<Value, CliError> {
    let rows = stratum_table(g, i)?;
    let mut v = json!({
        "g": g,
        "rows": serde_json::to_value(&rows).map_err(|e| CliError::Output(e.to_string()))?,
        "note": POSITIVE_CHARACTERISTIC_NOTE,
    });
    if g >= 2 {
        v["consistency"] =
            serde_json::to_value(consistency_report(g)?.entries).map_err(|e| CliError::Output(e.to_string()))?;
    }
    if let Some(p) = p {
        v["p_rank"] = json!({ "p": p, "constant": p_rank_constant(g, p)?.to_string(), "label": [g] });
    }
    Ok(v)
}

/// Renders an envelope; the output always ends with a newline.
pub fn render(env: &ReportEnvelope, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(env).map_err(|e| CliError::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => {
            let mut out = String::new();
            let name = serde_json::to_value(&env.command).ok().and_then(|v| v["name"].as_str().map(str::to_owned));
            let status = serde_json::to_value(env.status).ok().and_then(|v| v.as_str().map(str::to_owned));
            let _ = writeln!(out, "{} [{}]", name.unwrap_or_default(), status.unwrap_or_default());
            text_value(&mut out, &env.payload, 1);
            if let Some(t) = env.timing_ms {
                let _ = writeln!(out, "timing_ms: {t:.3}");
            }
            Ok(out)
        }
        Format::Csv => satake_csv(&env.payload),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text_value(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (n, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}- [{n}]");
                        text_value(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn satake_csv(payload: &Value) -> Result<String, CliError> {
    let err = |e: csv::Error| CliError::Output(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["g", "i", "coefficient", "label", "matches_thm34"]).map_err(err)?;
    for row in payload["rows"].as_array().into_iter().flatten() {
        let label: Vec<String> = row["label"].as_array().into_iter().flatten().map(|x| x.to_string()).collect();
        let matches = match &row["matches_thm34"] {
            Value::Bool(b) => b.to_string(),
            _ => String::new(),
        };
        w.write_record([
            row["g"].to_string(),
            row["i"].to_string(),
            row["coefficient"].as_str().unwrap_or_default().to_string(),
            format!("{{{}}}", label.join(",")),
            matches,
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}
