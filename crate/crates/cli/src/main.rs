mod input;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use midpoint::affine::{affine_equivalence, hexagon, hexagon_report, iso_decide};
use midpoint::formula::{check_satisfaction, synth_phi, verify_phi, ChainFormula};
use midpoint::hull::{
    caratheodory, decide_q_membership, decide_t_membership, q_convexity_probe, segment_closure_bounded,
    QMembership, TMembership, VPolytope,
};
use midpoint::mode::{eval_term, random_law_instance, term_coefficients, LawReport};
use midpoint::{Point, Rational, RingSpec, Term};
use rand::SeedableRng;
use serde::Serialize;

use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] midpoint::Error),
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(serde_json::Error),
    #[error("{0}")]
    Config(String),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io(..) => "E_IO",
            CliError::Json(_) => "E_JSON",
            CliError::Config(_) => "E_CONFIG",
        }
    }
}

#[derive(Parser)]
#[command(name = "midpoint", version, about = "Exact barycentric algebra toolkit")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// inverted primes, e.g. `2` or `2,5`
    #[arg(long, global = true, default_value = "2")]
    ring: String,
    /// required by sampling commands
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 2)]
    depth: u32,
    #[arg(long, global = true, default_value_t = 2)]
    rounds: u32,
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `point ∈ Cnv_T(set)`
    HullMember {
        #[arg(long)]
        point: String,
        /// `0,0; 1,0` or a JSON file
        #[arg(long)]
        set: String,
    },
    Caratheodory {
        #[arg(long)]
        point: String,
        #[arg(long)]
        set: String,
    },
    SynthFormula {
        /// comma-separated coefficients summing to 1
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    VerifyFormula {
        /// formula JSON, bare or as written by synth-formula
        #[arg(long)]
        formula: PathBuf,
        /// defaults to the coefficients stored in the formula
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// input points for a concrete satisfaction check
        #[arg(long, allow_hyphen_values = true)]
        inputs: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        output: Option<String>,
    },
    EvalTerm {
        /// e.g. `(op x0 (op x1 x2 1/2) 1/4)`
        #[arg(long)]
        term: String,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    LawsCheck {
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    Closure {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    ProbeConvexity {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    AffineEquiv {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    IsoCheck {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    HexagonDemo,
}

fn require_seed(c: &Common, command: &str) -> Result<u64, CliError> {
    c.seed
        .ok_or_else(|| CliError::Config(format!("{command} samples randomly and needs --seed")))
}

fn positive(name: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        return Err(CliError::Config(format!("--{name} must be positive")));
    }
    Ok(())
}

fn render<T: Serialize>(r: Report<T>) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(&r).map_err(CliError::Json)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct HullMemberResult {
    point: Point,
    set: Vec<Point>,
    member: bool,
    rational_member: bool,
    coefficients: Option<Vec<Rational>>,
    decision: TMembership,
}

#[derive(Serialize)]
struct CaratheodoryResult {
    point: Point,
    indices: Vec<usize>,
    support: Vec<Point>,
    coefficients: Vec<Rational>,
}

#[derive(Serialize)]
struct SynthResult {
    coefficients: Vec<Rational>,
    verified: bool,
    text: String,
    formula: ChainFormula,
}

#[derive(Serialize)]
struct VerifyResult {
    coefficients: Vec<Rational>,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    satisfied: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Point>>,
}

#[derive(Serialize)]
struct EvalResult {
    term: String,
    value: Point,
    coefficients: Vec<Rational>,
}

#[derive(Serialize)]
struct ClosureResult {
    depth: u32,
    rounds: u32,
    count: usize,
    points: Vec<Point>,
}

#[derive(Serialize)]
struct IsoResult {
    witness_formula: Option<String>,
    #[serde(flatten)]
    verdict: midpoint::affine::IsoVerdict,
}

fn polytope(arg: &str) -> Result<VPolytope, CliError> {
    Ok(VPolytope::new(input::point_set(arg)?)?)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let c = &cli.common;
    let ring: RingSpec = c.ring.parse()?;
    match &cli.command {
        Command::HullMember { point, set } => {
            let d = input::point(point)?;
            let xs = input::point_set(set)?;
            let decision = decide_t_membership(&d, &xs, &ring)?;
            let rational_member = matches!(decide_q_membership(&d, &xs)?, QMembership::Member { .. });
            let coefficients = match &decision {
                TMembership::Member { combination } => Some(combination.dense(xs.len())),
                TMembership::NotMember { .. } => None,
            };
            render(
                Report::new(
                    "hull-member",
                    HullMemberResult {
                        point: d,
                        set: xs,
                        member: coefficients.is_some(),
                        rational_member,
                        coefficients,
                        decision,
                    },
                )
                .ring(&ring),
            )
        }
        Command::Caratheodory { point, set } => {
            let d = input::point(point)?;
            let xs = input::point_set(set)?;
            let r = caratheodory(&d, &xs)?;
            let support = r.indices.iter().map(|&i| xs[i].clone()).collect();
            render(Report::new(
                "caratheodory",
                CaratheodoryResult {
                    point: d,
                    indices: r.indices,
                    support,
                    coefficients: r.coefficients,
                },
            ))
        }
        Command::SynthFormula { coeffs } => {
            let xi = input::rationals(coeffs)?;
            let phi = synth_phi(&xi, &ring)?;
            let verified = verify_phi(&phi, &xi)?;
            render(
                Report::new(
                    "synth-formula",
                    SynthResult {
                        coefficients: xi,
                        verified,
                        text: phi.to_text(),
                        formula: phi,
                    },
                )
                .ring(&ring),
            )
        }
        Command::VerifyFormula {
            formula,
            coeffs,
            inputs,
            output,
        } => {
            let value = input::read_json(formula)?;
            let body = value
                .get("result")
                .and_then(|r| r.get("formula"))
                .cloned()
                .unwrap_or(value);
            let phi: ChainFormula = serde_json::from_value(body).map_err(CliError::Json)?;
            let xi = match coeffs {
                Some(s) => input::rationals(s)?,
                None => phi.coefficients.clone(),
            };
            let verified = verify_phi(&phi, &xi)?;
            let (satisfied, witness) = match (inputs, output) {
                (Some(a), Some(b)) => {
                    let w = check_satisfaction(&phi, &input::point_set(a)?, &input::point(b)?)?;
                    (Some(w.is_some()), w)
                }
                (None, None) => (None, None),
                _ => return Err(CliError::Config("--inputs and --output go together".into())),
            };
            let ring = phi.ring.clone();
            render(
                Report::new(
                    "verify-formula",
                    VerifyResult {
                        coefficients: xi,
                        verified,
                        satisfied,
                        witness,
                    },
                )
                .ring(&ring),
            )
        }
        Command::EvalTerm { term, points } => {
            let t: Term = term.parse()?;
            let pts = input::point_set(points)?;
            let value = eval_term(&t, &pts)?;
            let coefficients = term_coefficients(&t, pts.len().saturating_sub(1).max(t.max_var()))?;
            render(Report::new(
                "eval-term",
                EvalResult {
                    term: t.to_string(),
                    value,
                    coefficients,
                },
            ))
        }
        Command::LawsCheck { dim } => {
            let seed = require_seed(c, "laws-check")?;
            positive("samples", c.samples)?;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let mut report = LawReport::default();
            for _ in 0..c.samples {
                report.check_instance(&random_law_instance(&mut rng, *dim))?;
            }
            render(Report::new("laws-check", report).seed(seed))
        }
        Command::Closure { set } => {
            let xs = input::point_set(set)?;
            let points: Vec<Point> = segment_closure_bounded(&xs, &ring, c.depth, c.rounds)?.into_iter().collect();
            render(
                Report::new(
                    "closure",
                    ClosureResult {
                        depth: c.depth,
                        rounds: c.rounds,
                        count: points.len(),
                        points,
                    },
                )
                .ring(&ring),
            )
        }
        Command::ProbeConvexity { set } => {
            let seed = require_seed(c, "probe-convexity")?;
            positive("samples", c.samples)?;
            let xs = input::point_set(set)?;
            let report = q_convexity_probe(&xs, &ring, c.samples, seed)?;
            render(Report::new("probe-convexity", report).ring(&ring).seed(seed))
        }
        Command::AffineEquiv { left, right } => {
            let verdict = affine_equivalence(&polytope(left)?, &polytope(right)?)?;
            render(Report::new("affine-equiv", verdict))
        }
        Command::IsoCheck { left, right } => {
            let seed = require_seed(c, "iso-check")?;
            positive("samples", c.samples)?;
            let verdict = iso_decide(&polytope(left)?, &polytope(right)?, &ring, c.samples, seed)?;
            let result = IsoResult {
                witness_formula: verdict.witness.as_ref().map(ToString::to_string),
                verdict,
            };
            render(Report::new("iso-check", result).ring(&ring).seed(seed))
        }
        Command::HexagonDemo => render(Report::new("hexagon-demo", hexagon_report(&hexagon())?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|text| match &cli.common.out {
        Some(path) => fs::write(path, &text).map_err(|e| CliError::Io(path.display().to_string(), e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io("stdout".into(), e)),
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let diag = serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } });
            eprintln!("{diag}");
            ExitCode::FAILURE
        }
    }
}
