use std::fmt::Write as _;
use std::str::FromStr;

use mwbch::construct::{self, CodewordSupport, SupportSpec};
use mwbch::solvers::{self, route, solver_rng, Method, RetryCaps};
use mwbch::verify::{designed_distance, is_min_weight, Verdict};
use mwbch::{Elem, Field};

use crate::fixtures;
use crate::format::{
    encode_elem, parse_records, uses_logs, write_bits, write_logsupport, OutputFormat, SupportJson,
    SPEC_VERSION,
};
use crate::CliError;

/// Attempts at drawing a non-degenerate `y` for the six-point support.
const GK_DRAWS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    /// The routed solver for `(m, i)`.
    Auto,
    /// Zeros of a Gold function on GF(2^(2i)), up-converted.
    Gold,
    /// The six-point weight-6 support, up-converted (`i = 2` only).
    Gk,
    Solver(Method),
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "gold" => Ok(MethodChoice::Gold),
            "gk" => Ok(MethodChoice::Gk),
            _ => Method::from_name(s)
                .map(MethodChoice::Solver)
                .ok_or_else(|| {
                    let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
                    format!(
                        "unknown method {s:?} (auto, gold, gk, {})",
                        names.join(", ")
                    )
                }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub m: u32,
    pub i: u32,
    pub s: u32,
    pub seed: u64,
    /// Defining polynomial; the built-in default for `m` when `None`.
    pub poly: Option<u64>,
    pub method: MethodChoice,
    pub format: OutputFormat,
    /// Overrides the retry cap of whichever randomized solver runs.
    pub retries: Option<u32>,
    /// Emit `(x + S) \ {0}` for the smallest `x ∈ S`, a word of the
    /// non-extended code.
    pub puncture: bool,
    /// Fixed `y` for the six-point support; drawn from the seed otherwise.
    pub y: Option<Elem>,
}

impl RunConfig {
    pub fn new(m: u32, i: u32, s: u32) -> RunConfig {
        RunConfig {
            m,
            i,
            s,
            seed: 0,
            poly: None,
            method: MethodChoice::Auto,
            format: OutputFormat::Json,
            retries: None,
            puncture: false,
            y: None,
        }
    }
}

/// A verified support and how it was made.
#[derive(Clone, Debug)]
pub struct Generated {
    pub field: Field,
    pub support: CodewordSupport,
    /// The factored form, for solver-based supports.
    pub spec: Option<SupportSpec>,
    pub method: String,
    pub seed: Option<u64>,
    pub punctured_at: Option<Elem>,
    pub verdict: Verdict,
}

fn caps(cfg: &RunConfig) -> RetryCaps {
    match cfg.retries {
        Some(n) => RetryCaps {
            i2_odd: n,
            i3_even: n,
            i3_heuristic: n,
        },
        None => RetryCaps::default(),
    }
}

fn gk_y(field: &Field, cfg: &RunConfig) -> Result<Elem, CliError> {
    if let Some(y) = cfg.y {
        if !field.contains(y) {
            return Err(CliError::Parse(format!(
                "y = {:#x} is not in GF(2^{})",
                y.bits(),
                field.m()
            )));
        }
        return Ok(y);
    }
    let mut rng = solver_rng(cfg.seed);
    for _ in 0..GK_DRAWS {
        let y = field.random(&mut rng);
        if construct::gk_support(field, y).is_ok() {
            return Ok(y);
        }
    }
    Err(mwbch::Error::RetriesExhausted(GK_DRAWS).into())
}

/// Builds, punctures if asked, and verifies. Fails with
/// [`CliError::Verification`] rather than return an unverified support.
pub fn generate(cfg: &RunConfig) -> Result<Generated, CliError> {
    let field = match cfg.poly {
        Some(p) => Field::new(cfg.m, p)?,
        None => Field::with_default(cfg.m)?,
    };
    let d = designed_distance(cfg.m, cfg.s, cfg.i)?;
    let method = match cfg.method {
        MethodChoice::Auto => MethodChoice::Solver(
            route(cfg.m, cfg.i).ok_or(CliError::Uncovered { m: cfg.m, i: cfg.i })?,
        ),
        other => other,
    };
    let (support, spec, name, seed) = match method {
        MethodChoice::Solver(method) => {
            if method.i() != cfg.i {
                return Err(CliError::Uncovered { m: cfg.m, i: cfg.i });
            }
            let report = solvers::solve(&field, method, cfg.seed, caps(cfg))?;
            let mut spec = construct::build_support(&field, &report.solution, cfg.s)?;
            spec.meta.method = Some(method);
            let cw = construct::expand(&spec)?;
            (cw, Some(spec), method.name().to_string(), report.rng_seed)
        }
        MethodChoice::Gold => (
            construct::gold_codeword(&field, cfg.i, cfg.s)?,
            None,
            "gold".to_string(),
            None,
        ),
        MethodChoice::Gk => {
            if cfg.i != 2 {
                return Err(CliError::Uncovered { m: cfg.m, i: cfg.i });
            }
            let y = gk_y(&field, cfg)?;
            let seed = cfg.y.is_none().then_some(cfg.seed);
            (
                construct::gk_codeword(&field, y, cfg.s)?,
                None,
                "gk".to_string(),
                seed,
            )
        }
        MethodChoice::Auto => unreachable!("resolved above"),
    };
    debug_assert_eq!(support.claimed_distance, d);
    let (support, punctured_at) = if cfg.puncture {
        let x = *support.elems.first().ok_or(mwbch::Error::XNotInSupport)?;
        (construct::puncture(&support, x)?, Some(x))
    } else {
        (support, None)
    };
    let verdict = is_min_weight(&field, &support)?;
    if !verdict.is_min_weight {
        return Err(CliError::Verification(describe(&verdict)));
    }
    Ok(Generated {
        field,
        support,
        spec,
        method: name,
        seed,
        punctured_at,
        verdict,
    })
}

fn describe(v: &Verdict) -> String {
    let mut out = format!(
        "weight={} d={} member={} min_weight={}",
        v.weight, v.claimed_distance, v.member, v.is_min_weight
    );
    if let Some((j, p)) = v.failing_syndrome {
        let _ = write!(out, " failing_syndrome=p_{j}:{:#x}", p.bits());
    }
    out
}

pub fn render(g: &Generated, cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.format {
        OutputFormat::LogSupport => write_logsupport(&g.field, &g.support),
        OutputFormat::Bits => Ok(write_bits(&g.field, &g.support)),
        OutputFormat::Json => {
            let f = &g.field;
            let enc = |xs: &[Elem]| xs.iter().map(|&x| encode_elem(f, x)).collect::<Vec<_>>();
            let support: Vec<Elem> = g.support.elems.iter().copied().collect();
            let doc = SupportJson {
                spec_version: SPEC_VERSION.to_string(),
                m: f.m(),
                poly: format!("{:#x}", f.poly()),
                i: Some(cfg.i),
                s: Some(cfg.s),
                d: g.support.claimed_distance,
                extended: g.support.extended,
                method: Some(g.method.clone()),
                seed: g.seed,
                encoding: if uses_logs(f) { "log" } else { "hex" }.to_string(),
                x: g.spec.as_ref().map(|s| enc(&s.x)),
                b: g.spec.as_ref().map(|s| enc(&s.basis)),
                punctured_at: g.punctured_at.map(|x| encode_elem(f, x)),
                support: enc(&support),
                verified: g.verdict.is_min_weight,
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
            text.push('\n');
            Ok(text)
        }
    }
}

pub fn cmd_generate(cfg: &RunConfig) -> Result<String, CliError> {
    render(&generate(cfg)?, cfg)
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub verdicts: Vec<Verdict>,
    pub text: String,
}

impl VerifyReport {
    pub fn all_min_weight(&self) -> bool {
        self.verdicts.iter().all(|v| v.is_min_weight)
    }
}

/// Verifies every record of a support file.
pub fn cmd_verify(text: &str) -> Result<VerifyReport, CliError> {
    let records = parse_records(text)?;
    let mut verdicts = Vec::with_capacity(records.len());
    let mut out = String::new();
    for (k, rec) in records.iter().enumerate() {
        let v = is_min_weight(&rec.field, &rec.support)?;
        let _ = writeln!(
            out,
            "record {}: m={} extended={} {} {}",
            k + 1,
            rec.field.m(),
            u8::from(rec.support.extended),
            describe(&v),
            if v.is_min_weight { "PASS" } else { "FAIL" }
        );
        verdicts.push(v);
    }
    Ok(VerifyReport {
        verdicts,
        text: out,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    /// Weight-27 words for m = 8..16.
    T27,
    /// The weight-23 word at m = 16.
    T23,
}

impl FromStr for Table {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "t27" => Ok(Table::T27),
            "t23" => Ok(Table::T23),
            _ => Err(format!("unknown table {s:?} (t27, t23)")),
        }
    }
}

impl Table {
    pub fn fixture(self) -> &'static str {
        match self {
            Table::T27 => fixtures::T27,
            Table::T23 => fixtures::T23,
        }
    }

    /// `(i, s)` of the extended word that is punctured to match the table.
    fn params(self, m: u32) -> (u32, u32) {
        match self {
            Table::T27 => (3, m - 6),
            Table::T23 => (2, m - 6),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub lines: Vec<String>,
    pub all_ok: bool,
}

/// Verifies each published support, then generates and verifies a fresh
/// one over the same field.
pub fn cmd_table(which: Table, seed: u64) -> Result<TableReport, CliError> {
    let records = parse_records(which.fixture())?;
    let mut lines = Vec::new();
    let mut all_ok = true;
    for rec in &records {
        let m = rec.field.m();
        let v = is_min_weight(&rec.field, &rec.support)?;
        all_ok &= v.is_min_weight;
        lines.push(format!(
            "m={m} fixture {} {}",
            describe(&v),
            if v.is_min_weight { "PASS" } else { "FAIL" }
        ));
        let (i, s) = which.params(m);
        let mut cfg = RunConfig::new(m, i, s);
        cfg.seed = seed;
        cfg.poly = Some(rec.field.poly());
        cfg.puncture = true;
        match generate(&cfg) {
            Ok(g) => {
                let matched = if g.support.elems == rec.support.elems {
                    "set-equal"
                } else {
                    "different-but-valid"
                };
                lines.push(format!(
                    "m={m} fresh method={} {} match={matched} PASS",
                    g.method,
                    describe(&g.verdict)
                ));
            }
            Err(e) => {
                all_ok = false;
                lines.push(format!("m={m} fresh error: {e} FAIL"));
            }
        }
    }
    Ok(TableReport { lines, all_ok })
}
