//! Command-line front end.
//!
//! Input is a parameter-set JSON document (file argument or stdin) carrying
//! the point as `"N": [..]`; suites are a JSON array of such documents or one
//! document per line. Output is one JSON document per line, or plain text.
//!
//! Exit codes: 0 success, 1 oracle disagreement in `oracle-check`,
//! 2 validation error, 3 numeric non-convergence, 4 variant disagreement in
//! `adjudicate-variant`.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Rational;
use serde_json::{json, Value as Json};

use crate::closed::{
    fully_twisted_neg, zeta_nn1_neg, zeta_nn1_power_neg, zeta_nn2_theta, EvalRequest, EvalResult, Value, Variant,
};
use crate::error::{Error, Result};
use crate::number::{format_rational, parse_rational};
use crate::oracle::check::{adjudicate, check_one, neg_label, summary, OracleReport};
use crate::oracle::mb::ContourSpec;
use crate::poly::{c_from_tilde, expand_linear_tilde, expand_power_tilde, Mode, MultiIndex, ParameterSet};

pub const DEFAULT_PREC: u32 = 166;

#[derive(Parser, Debug)]
#[command(name = "twzeta", version, about = "Special values of twisted multiple zeta-functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// override the mode given in the input
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// precision in bits for numeric work
    #[arg(long, global = true, default_value_t = DEFAULT_PREC, value_parser = clap::value_parser!(u32).range(32..=4096))]
    pub prec: u32,
    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Both)]
    pub variant: VariantArg,
    #[arg(long, global = true, value_enum, default_value_t = OutArg::Json)]
    pub out: OutArg,
    /// cap the contour height |Im z|
    #[arg(long = "contour-T", global = true)]
    pub contour_t: Option<f64>,
    /// fixed number of quadrature nodes
    #[arg(long = "contour-nodes", global = true)]
    pub contour_nodes: Option<usize>,
    /// number of residues taken before the contour (M)
    #[arg(long = "shift-M", global = true)]
    pub shift_m: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// first n-1 variables twisted, value at -N
    EvalNn1(EvalArgs),
    /// first n-2 variables twisted, directional limit at -N
    EvalNn2Theta {
        #[command(flatten)]
        eval: EvalArgs,
        /// direction, overrides "theta" in the input
        #[arg(long)]
        theta: Option<String>,
    },
    /// power-sum denominators, value at -N
    EvalPower(EvalArgs),
    /// all n variables twisted, value at -N
    EvalFullyTwisted(EvalArgs),
    /// coefficients of the nested product expansion
    ExpandCoeffs {
        input: Option<String>,
        /// exponents alpha, comma separated; overrides "alpha" in the input
        #[arg(long)]
        alpha: Option<String>,
    },
    /// closed forms against the contour-integral oracle
    OracleCheck { input: Option<String> },
    /// decide the prefactor convention from the oracle
    AdjudicateVariant { input: Option<String> },
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// input file, stdin when absent or "-"
    pub input: Option<String>,
    /// N, comma separated; overrides "N" in the input
    #[arg(long)]
    pub point: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Exact,
    Numeric,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    AsPrinted,
    Derived,
    Both,
}

impl VariantArg {
    fn variants(self) -> Vec<Variant> {
        match self {
            VariantArg::AsPrinted => vec![Variant::AsPrinted],
            VariantArg::Derived => vec![Variant::DerivedPrefactor],
            VariantArg::Both => Variant::ALL.to_vec(),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutArg {
    Json,
    Text,
}

/// Parses `args` (program name first) and runs. Returns the exit code.
pub fn main_with<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdin, out),
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    let obj = json!({"error": "usage", "message": e.kind().to_string()});
                    let _ = writeln!(out, "{obj}");
                    2
                }
            }
        }
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> i32 {
    match dispatch(cli, stdin, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = match cli.opts.out {
                OutArg::Json => writeln!(out, "{}", e.to_json()),
                OutArg::Text => writeln!(out, "error: {e}"),
            };
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let o = &cli.opts;
    match &cli.command {
        Command::EvalNn1(a) => eval(o, a, None, zeta_nn1_neg, stdin, out),
        Command::EvalNn2Theta { eval: a, theta } => eval(o, a, theta.as_deref(), zeta_nn2_theta, stdin, out),
        Command::EvalPower(a) => eval(o, a, None, zeta_nn1_power_neg, stdin, out),
        Command::EvalFullyTwisted(a) => eval(o, a, None, fully_twisted_neg, stdin, out),
        Command::ExpandCoeffs { input, alpha } => expand(o, input.as_deref(), alpha.as_deref(), stdin, out),
        Command::OracleCheck { input } => oracle_check(o, input.as_deref(), stdin, out),
        Command::AdjudicateVariant { input } => adjudicate_variant(o, input.as_deref(), stdin, out),
    }
}

fn read_input(path: Option<&str>, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match path {
        None | Some("-") => {
            stdin.read_to_string(&mut text).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        }
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{p}: {e}")))?;
        }
    }
    Ok(text)
}

fn parse_list(text: &str, what: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("{what}: {t:?} is not a non-negative integer"))))
        .collect()
}

fn index_field(doc: &Json, key: &str) -> Result<Option<Vec<u32>>> {
    match doc.get(key) {
        None => Ok(None),
        Some(v) => serde_json::from_value(v.clone())
            .map(Some)
            .map_err(|_| Error::Parse(format!("\"{key}\" must be an array of non-negative integers"))),
    }
}

/// One request from a JSON document; `point` and `theta` override the document.
fn request(doc: &Json, opts: &Options, point: Option<&str>, theta: Option<&str>) -> Result<EvalRequest> {
    // the flag wins over the document, and must be in place before validation
    let mut params = match (opts.mode, doc.as_object()) {
        (Some(m), Some(obj)) => {
            let mut obj = obj.clone();
            obj.insert("mode".into(), Json::from(if m == ModeArg::Exact { "exact" } else { "numeric" }));
            ParameterSet::from_json(&Json::Object(obj))?
        }
        _ => ParameterSet::from_json(doc)?,
    };
    if let Some(m) = opts.mode {
        params = params.with_mode(match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        })?;
    }
    if let Some(t) = theta {
        params = params.with_theta(parse_rational(t)?);
    }
    let n = match point {
        Some(p) => parse_list(p, "point")?,
        None => index_field(doc, "N")?.ok_or_else(|| Error::validation("point", "the point N is required"))?,
    };
    Ok(EvalRequest::new(params, n).prec(opts.prec))
}

fn contour(opts: &Options) -> ContourSpec {
    ContourSpec { shift_depth: opts.shift_m, height: opts.contour_t, nodes: opts.contour_nodes }
}

fn emit(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(|e| Error::Parse(format!("output: {e}")))
}

fn value_text(v: &Value) -> String {
    match v {
        Value::Exact(x) => x.to_text_with_field(),
        Value::Numeric(z) => z.to_string(),
    }
}

fn eval(
    opts: &Options,
    args: &EvalArgs,
    theta: Option<&str>,
    f: fn(&EvalRequest) -> Result<EvalResult>,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<i32> {
    let doc: Json = serde_json::from_str(&read_input(args.input.as_deref(), stdin)?)
        .map_err(|e| Error::Parse(e.to_string()))?;
    let req = request(&doc, opts, args.point.as_deref(), theta)?;
    let mut results = Vec::new();
    for v in opts.variant.variants() {
        let r = f(&req.clone().variant(v))?;
        // the convention does not enter: report once
        let once = r.variant.is_none();
        results.push(r);
        if once {
            break;
        }
    }
    for r in &results {
        match opts.out {
            OutArg::Json => emit(out, &r.to_json().to_string())?,
            OutArg::Text => {
                let label = r.variant.map_or(r.family.to_string(), |v| format!("{} ({})", r.family, v));
                emit(out, &format!("{label}: {}", value_text(&r.value)))?
            }
        }
    }
    Ok(0)
}

fn expand(opts: &Options, input: Option<&str>, alpha: Option<&str>, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let doc: Json = serde_json::from_str(&read_input(input, stdin)?).map_err(|e| Error::Parse(e.to_string()))?;
    let p = ParameterSet::from_json(&doc)?;
    let alpha = match alpha {
        Some(a) => parse_list(a, "alpha")?,
        None => index_field(&doc, "alpha")?.ok_or_else(|| Error::validation("alpha", "the exponents alpha are required"))?,
    };
    let alpha = MultiIndex(alpha);
    let tilde = match &p.h {
        Some(h) => expand_power_tilde(&p.gamma, &p.b, h, &alpha)?,
        None => expand_linear_tilde(&p.gamma, &p.b, &alpha)?,
    };
    let plain = c_from_tilde(&tilde, &p.gamma)?;
    let rows = |poly: &crate::poly::SparsePoly<Rational>| -> Vec<Json> {
        poly.terms().map(|(k, c)| json!({"k": k.0, "c": format_rational(c)})).collect()
    };
    match opts.out {
        OutArg::Json => {
            let obj = json!({
                "alpha": alpha.0,
                "h": p.h,
                "tilde": rows(&tilde),
                "plain": rows(&plain),
            });
            emit(out, &obj.to_string())?;
        }
        OutArg::Text => {
            for (k, c) in tilde.terms() {
                let idx: Vec<String> = k.0.iter().map(u32::to_string).collect();
                emit(out, &format!("({}): {}", idx.join(","), format_rational(c)))?;
            }
        }
    }
    Ok(0)
}

/// Suite documents: a JSON array, or a stream of JSON values.
fn read_suite(opts: &Options, input: Option<&str>, stdin: &mut dyn Read) -> Result<Vec<EvalRequest>> {
    let text = read_input(input, stdin)?;
    let docs: Vec<Json> = if text.trim_start().starts_with('[') {
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        serde_json::Deserializer::from_str(&text)
            .into_iter::<Json>()
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(e.to_string()))?
    };
    docs.iter().map(|d| request(d, opts, None, None)).collect()
}

fn report_text(r: &OracleReport) -> String {
    let pt: Vec<String> = r.point.iter().map(|&n| neg_label(n)).collect();
    let mut s = format!("{} at ({})", r.level.name(), pt.join(","));
    if let Some(e) = &r.error {
        s.push_str(&format!(": error: {e}"));
        return s;
    }
    if let Some(o) = &r.oracle {
        s.push_str(&format!(": oracle {} (err 2^{:.1})", o.value.to_string_digits(30), o.log2_err));
    }
    for c in &r.checks {
        let name = c.variant.map_or("closed", |v| v.name());
        let verdict = if c.matches { "match" } else { "mismatch" };
        s.push_str(&format!("; {name} {} {verdict} (2^{:.1})", c.closed_text, c.log2_discrepancy));
    }
    s
}

fn run_suite(opts: &Options, suite: &[EvalRequest], out: &mut dyn Write) -> Result<Vec<OracleReport>> {
    let spec = contour(opts);
    let variants = opts.variant.variants();
    let mut reports = Vec::with_capacity(suite.len());
    for req in suite {
        let r = check_one(req, &variants, &spec, opts.prec);
        match opts.out {
            OutArg::Json => emit(out, &r.to_json().to_string())?,
            OutArg::Text => emit(out, &report_text(&r))?,
        }
        reports.push(r);
    }
    Ok(reports)
}

fn failure_code(reports: &[OracleReport]) -> Option<i32> {
    reports.iter().filter_map(|r| r.error.as_ref()).map(Error::exit_code).max()
}

fn oracle_check(opts: &Options, input: Option<&str>, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let suite = read_suite(opts, input, stdin)?;
    let reports = run_suite(opts, &suite, out)?;
    let s = summary(&reports);
    match opts.out {
        OutArg::Json => emit(out, &s.to_string())?,
        OutArg::Text => {
            let v = &s["summary"];
            emit(out, &format!("{} cases, {} passed, {} failed", v["cases"], v["passed"], v["failed"]))?
        }
    }
    if let Some(code) = failure_code(&reports) {
        return Ok(code);
    }
    Ok(if reports.iter().all(|r| r.all_match()) { 0 } else { 1 })
}

fn adjudicate_variant(opts: &Options, input: Option<&str>, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let mut o = opts.clone();
    o.variant = VariantArg::Both;
    let suite = read_suite(&o, input, stdin)?;
    let reports = run_suite(&o, &suite, out)?;
    let a = adjudicate(&reports);
    match o.out {
        OutArg::Json => emit(out, &json!({"adjudication": a.to_json()}).to_string())?,
        OutArg::Text => emit(
            out,
            &format!(
                "{} separating cases; verdict: {}",
                a.separating,
                a.variant.map_or("none (inconsistent)", |v| v.name())
            ),
        )?,
    }
    if let Some(code) = failure_code(&reports) {
        return Ok(code);
    }
    Ok(if a.consistent { 0 } else { 4 })
}
