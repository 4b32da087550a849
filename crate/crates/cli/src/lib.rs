//! Command-line front end for `loghodge`.
//!
//! Exit codes: 0 certified / true, 1 refuted / false, 2 inconclusive,
//! 3 input error.

mod bundled;
mod render;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use loghodge::cone::{constancy_analysis, rank_profile_of, Constancy, DEFAULT_SEED};
use loghodge::exactalg::{parse_rational, Scalar};
use loghodge::filtration::weight_filtration;
use loghodge::io::{load_datum, parse_monoid};
use loghodge::orbit::{certify_cone_orbit, standard_point_pullbacks, ConeOptions, PrePLHDatum, PullbackSample, Status};
use loghodge::Error;
use num_rational::BigRational;
use serde_json::{json, Value};

pub use bundled::FIXTURES;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "loghodge", version, about = "Exact checks for polarized log Hodge data at a log point")]
struct Cli {
    /// Machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the sampled constancy check (three or more generators).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a datum and certify or refute its nilpotent orbit over the cone.
    Check {
        file: String,
        /// Interior point used for the ray certificate, e.g. `1,2`.
        #[arg(long)]
        interior: Option<String>,
    },
    /// Weight filtration of `Σ a_i N_i`, centered at the datum weight.
    Wf {
        file: String,
        #[arg(long)]
        at: String,
    },
    /// Constancy of the weight filtration on the open cone.
    Cone { file: String },
    /// Certify pullbacks to the standard log point.
    ///
    /// A sample is `a1,..,ar,c` (N = Σ a_i N_i, F twisted by exp(i c N_1))
    /// or `a1,..,ar:t1,..,tr` (F twisted by exp(i Σ t_i N_i)).
    Pullbacks {
        file: String,
        #[arg(long, num_args = 1.., required = true)]
        samples: Vec<String>,
    },
    /// Monoid matrix criteria; the argument is inline JSON or a file.
    Monoid {
        matrix: String,
        #[arg(long, value_enum)]
        check: Option<MonoidCheck>,
    },
    /// List the bundled fixtures, or print one.
    Fixtures { name: Option<String> },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MonoidCheck {
    Integral,
    Vertical,
    Semistable,
    Factor,
}

/// Exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    json: Value,
    text: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
            let msg = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), msg) } else { (msg, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    if let Command::Fixtures { name } = &cli.command {
        return fixtures(name.as_deref(), cli.json);
    }
    match dispatch(&cli) {
        Ok(r) if cli.json => {
            let mut out = json!({ "convention": loghodge::SIGN_CONVENTION, "seed": cli.seed });
            out.as_object_mut().expect("object").insert("result".into(), r.json);
            Outcome { code: r.code, stdout: pretty(&out), stderr: String::new() }
        }
        Ok(r) => Outcome { code: r.code, stdout: format!("{}{}", render::banner(), r.text), stderr: String::new() },
        Err(e) => error_outcome(&e, cli.json),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::ProbeFailed(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_INPUT,
    }
}

fn error_outcome(e: &Error, as_json: bool) -> Outcome {
    let code = error_code(e);
    if as_json {
        let mut err = json!({ "message": e.to_string() });
        if let Error::InvalidDatum { invariant, .. } = e {
            err["invariant"] = json!(invariant);
        }
        let out = json!({ "convention": loghodge::SIGN_CONVENTION, "error": err });
        return Outcome { code, stdout: pretty(&out), stderr: String::new() };
    }
    Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn dispatch(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Check { file, interior } => check(file, interior.as_deref(), cli.seed),
        Command::Wf { file, at } => wf(file, at),
        Command::Cone { file } => cone(file, cli.seed),
        Command::Pullbacks { file, samples } => pullbacks(file, samples),
        Command::Monoid { matrix, check } => monoid(matrix, *check),
        Command::Fixtures { .. } => unreachable!("handled in run"),
    }
}

fn read_input(arg: &str) -> Result<String, Error> {
    match std::fs::read_to_string(arg) {
        Ok(s) => Ok(s),
        Err(e) => bundled::lookup(arg).map(str::to_string).ok_or_else(|| Error::Io(format!("{arg}: {e}"))),
    }
}

fn load(arg: &str) -> Result<PrePLHDatum, Error> {
    load_datum(&read_input(arg)?)
}

fn rationals(list: &str) -> Result<Vec<BigRational>, Error> {
    list.split(',').map(parse_rational).collect()
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Certified => EXIT_TRUE,
        Status::Refuted => EXIT_FALSE,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn check(file: &str, interior: Option<&str>, seed: u64) -> Result<Report, Error> {
    let d = load(file)?;
    let opts = ConeOptions { interior: interior.map(rationals).transpose()?, seed };
    let v = certify_cone_orbit(&d, &opts)?;
    Ok(Report { code: status_code(v.status), json: json!(v), text: render::check(file, &d, &v) })
}

fn wf(file: &str, at: &str) -> Result<Report, Error> {
    let d = load(file)?;
    let point = rationals(at)?;
    let n = d.cone()?.point(&point)?;
    let w = weight_filtration(&n)?.shift(d.weight);
    let ranks = rank_profile_of(n.matrix());
    let pt: Vec<String> = point.iter().map(ToString::to_string).collect();
    let json = json!({
        "point": pt,
        "weight_filtration": w,
        "graded_dims": w.graded_dims(),
        "rank_profile": ranks,
    });
    Ok(Report { code: EXIT_TRUE, json, text: render::wf(&d, &pt, &w, &ranks) })
}

fn cone(file: &str, seed: u64) -> Result<Report, Error> {
    let d = load(file)?;
    let c = constancy_analysis(&d.cone()?, seed)?;
    let code = match c {
        Constancy::Constant { .. } => EXIT_TRUE,
        Constancy::Jump(_) | Constancy::SampleJump(_) => EXIT_FALSE,
        Constancy::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    };
    Ok(Report { code, json: json!(c), text: render::constancy(&d.names, &c) })
}

fn parse_sample(s: &str, r: usize) -> Result<PullbackSample, Error> {
    let ints = |part: &str| -> Result<Vec<i64>, Error> {
        part.split(',')
            .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("sample {s:?}: {x:?} is not an integer"))))
            .collect()
    };
    if let Some((a, t)) = s.split_once(':') {
        let twist = rationals(t)?.into_iter().map(Scalar::real).collect();
        return Ok(PullbackSample { a: ints(a)?, c: Scalar::from_int(0), twist: Some(twist) });
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != r + 1 {
        return Err(Error::Parse(format!("sample {s:?}: expected {} comma-separated values a1,..,a{r},c", r + 1)));
    }
    let c = parse_rational(parts[r])?;
    Ok(PullbackSample::new(ints(&parts[..r].join(","))?, c))
}

fn pullbacks(file: &str, samples: &[String]) -> Result<Report, Error> {
    let d = load(file)?;
    let parsed = samples.iter().map(|s| parse_sample(s, d.nilpotents.len())).collect::<Result<Vec<_>, _>>()?;
    let results = standard_point_pullbacks(&d, &parsed)?;
    let code = results.iter().map(|r| status_code(r.verdict.status)).max().unwrap_or(EXIT_TRUE);
    Ok(Report { code, json: json!(results), text: render::pullbacks(&results) })
}

fn monoid(arg: &str, check: Option<MonoidCheck>) -> Result<Report, Error> {
    let text = if arg.trim_start().starts_with('[') { arg.to_string() } else { read_input(arg)? };
    let h = parse_monoid(&text)?;
    let mut out = render::MonoidReport::new(&h);
    let code = match check {
        None => {
            out.integral(&h);
            out.semistable(&h);
            out.vertical(&h);
            out.factor(&h);
            EXIT_TRUE
        }
        Some(MonoidCheck::Integral) => bool_code(out.integral(&h)),
        Some(MonoidCheck::Semistable) => bool_code(out.semistable(&h)),
        Some(MonoidCheck::Factor) => bool_code(out.factor(&h)),
        Some(MonoidCheck::Vertical) => match out.vertical(&h) {
            Some(v) => bool_code(v),
            None => EXIT_INCONCLUSIVE,
        },
    };
    Ok(Report { code, json: out.json, text: out.text })
}

fn bool_code(b: bool) -> i32 {
    if b {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

fn fixtures(name: Option<&str>, as_json: bool) -> Outcome {
    match name {
        Some(n) => match bundled::lookup(n) {
            Some(text) => Outcome { code: EXIT_TRUE, stdout: text.to_string(), stderr: String::new() },
            None => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: no bundled fixture {n:?}\n") },
        },
        None if as_json => {
            let list: Vec<Value> =
                FIXTURES.iter().map(|f| json!({ "name": f.name, "kind": f.kind, "about": f.about })).collect();
            Outcome { code: EXIT_TRUE, stdout: pretty(&json!(list)), stderr: String::new() }
        }
        None => {
            let mut s = String::new();
            for f in FIXTURES {
                s += &format!("fixtures/{:<20} {:<7} {}\n", format!("{}.json", f.name), f.kind, f.about);
            }
            Outcome { code: EXIT_TRUE, stdout: s, stderr: String::new() }
        }
    }
}
