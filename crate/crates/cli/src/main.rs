//! Command-line front end: JSON problem descriptions in, JSON or plain-text
//! reports out. Exit codes: 0 success, 2 parse error, 3 semantic error,
//! 4 internal invariant failure.

mod input;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use parapic::covers::{
    building_data, congruence_hodge, congruence_hodge_qp, cover_hodge, generate_subgroup,
    riemann_hurwitz_genus,
};
use parapic::ehrhart::ehrhart_qp;
use parapic::geometry::GeometryInput;
use parapic::lattice::Lattice;
use parapic::parabolic::{decompose_boundaries, refine_by_resolution};
use parapic::polytope::count_lattice_points;
use parapic::rat::Int;
use parapic::strata::compute_strata;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Semantic(String),
    Internal(String),
}

impl From<parapic::Error> for CliError {
    fn from(e: parapic::Error) -> Self {
        match e {
            parapic::Error::Internal(m) => CliError::Internal(m),
            other => CliError::Semantic(other.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Semantic(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Semantic(m) | CliError::Internal(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "parapic",
    about = "Exact computations with realizations of boundaries: polytope decompositions, multiplier-ideal strata, abelian covers, and Hodge quasi-polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// input file; stdin when omitted or "-"
    input: Option<PathBuf>,
    /// emit the report as JSON (default)
    #[arg(long)]
    json: bool,
    /// render the report as a plain-text table
    #[arg(long, conflicts_with = "json")]
    table: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decomposition of the realizable boundaries into half-open polytopes
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The multiplier-ideal strata V^q_i as unions of polytopes
    Strata {
        #[command(flatten)]
        common: CommonArgs,
        /// highest cohomological degree (defaults to the dimension)
        #[arg(long)]
        qmax: Option<usize>,
    },
    /// Hodge numbers h^q(N) of congruence covers, direct or as a quasi-polynomial
    Hodge {
        #[command(flatten)]
        common: CommonArgs,
        /// cohomological degree q
        #[arg(long)]
        q: usize,
        /// evaluate at torsion level N
        #[arg(long = "N", conflicts_with = "qp")]
        n: Option<u64>,
        /// produce the quasi-polynomial in N
        #[arg(long)]
        qp: bool,
        /// cross-check the quasi-polynomial against direct summation for N <= 10
        #[arg(long)]
        verify: bool,
    },
    /// Building data, eigensheaf decomposition and Hodge numbers of the
    /// abelian cover given by the subgroup generators in the input
    Cover {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ehrhart quasi-polynomial or a single dilation count of a polytope
    Ehrhart {
        #[command(flatten)]
        common: CommonArgs,
        /// evaluate the fitted quasi-polynomial at this dilation
        #[arg(long = "N", conflicts_with = "qp")]
        n: Option<u64>,
        /// emit the quasi-polynomial
        #[arg(long)]
        qp: bool,
    },
    /// Exact lattice-point count of a dilated polytope
    Count {
        #[command(flatten)]
        common: CommonArgs,
        /// dilation factor
        #[arg(long = "N")]
        n: u64,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn variety_name(g: &parapic::geometry::ResolvedGeometry) -> &'static str {
    match g.input {
        GeometryInput::Lines(_) => "P2",
        GeometryInput::Curve(_) => "P1",
    }
}

fn run(cli: Cli) -> Result<(Value, bool), CliError> {
    match cli.command {
        Command::Decompose { common } => {
            let spec = input::parse_problem(&read_input(&common.input)?)?;
            let g = &spec.geometry;
            let canonical = decompose_boundaries(&g.divisors)?;
            let refined = refine_by_resolution(&g.divisors, &canonical, &g.resolution)?;
            Ok((report::decompose_report(variety_name(g), &refined), common.table))
        }
        Command::Strata { common, qmax } => {
            let spec = input::parse_problem(&read_input(&common.input)?)?;
            let g = &spec.geometry;
            let table = compute_strata(g, qmax)?;
            Ok((report::strata_report(variety_name(g), &table), common.table))
        }
        Command::Hodge { common, q, n, qp, verify } => {
            let spec = input::parse_problem(&read_input(&common.input)?)?;
            let g = &spec.geometry;
            let report = if qp || n.is_none() {
                let f = congruence_hodge_qp(g, q)?;
                let mut m = json!({
                    "command": "hodge",
                    "variety": variety_name(g),
                    "q": q,
                    "mode": "qp",
                    "qp": report::quasipoly_value(&f),
                });
                if verify {
                    parapic::covers::verify_congruence_hodge(g, q, 10)?;
                    m.as_object_mut().unwrap().insert("verified".into(), json!(true));
                }
                m
            } else {
                let n = n.unwrap();
                let value = congruence_hodge(g, q, n)?;
                let mut m = json!({
                    "command": "hodge",
                    "variety": variety_name(g),
                    "q": q,
                    "mode": "direct",
                    "N": n,
                    "value": report::json_int(&value),
                });
                if verify {
                    let f = congruence_hodge_qp(g, q)?;
                    if f.eval_count(n)? != value {
                        return Err(CliError::Internal(
                            "quasi-polynomial mode disagrees with direct summation".into(),
                        ));
                    }
                    m.as_object_mut().unwrap().insert("verified".into(), json!(true));
                }
                m
            };
            Ok((report, common.table))
        }
        Command::Cover { common } => {
            let spec = input::parse_problem(&read_input(&common.input)?)?;
            let g = &spec.geometry;
            let subgroup = generate_subgroup(&g.divisors, spec.subgroup_generators)?;
            let bd = building_data(&subgroup)?;
            let base = parapic::covers::pushforward_decomposition(&subgroup, None);
            let resolved =
                parapic::covers::pushforward_decomposition(&subgroup, Some(&g.resolution));
            let mut hodge = Vec::with_capacity(g.dim + 1);
            for q in 0..=g.dim {
                hodge.push(cover_hodge(g, &subgroup, q)?);
            }
            let rh = match &g.input {
                GeometryInput::Curve(c) => {
                    let genus = riemann_hurwitz_genus(c, &subgroup)?;
                    let ok = genus == Int::from(hodge[1]);
                    Some((genus, ok))
                }
                _ => None,
            };
            if let Some((_, ok)) = &rh {
                if !ok {
                    return Err(CliError::Internal(
                        "Riemann-Hurwitz genus disagrees with the eigensheaf computation".into(),
                    ));
                }
            }
            Ok((
                report::cover_report(variety_name(g), &subgroup, &bd, &base, &resolved, &hodge, rh),
                common.table,
            ))
        }
        Command::Ehrhart { common, n, qp } => {
            let p = input::parse_polytope(&read_input(&common.input)?)?;
            let f = ehrhart_qp(&p, &Lattice::full(p.dim()))?;
            let report = if qp || n.is_none() {
                json!({
                    "command": "ehrhart",
                    "mode": "qp",
                    "dim": p.dim(),
                    "qp": report::quasipoly_value(&f),
                })
            } else {
                let n = n.unwrap();
                let v = f.eval_count(n)?;
                json!({
                    "command": "ehrhart",
                    "mode": "eval",
                    "dim": p.dim(),
                    "N": n,
                    "count": report::json_int(&v),
                })
            };
            Ok((report, common.table))
        }
        Command::Count { common, n } => {
            let p = input::parse_polytope(&read_input(&common.input)?)?;
            let c = count_lattice_points(&p, &Lattice::full(p.dim()), n)?;
            Ok((
                json!({
                    "command": "count",
                    "dim": p.dim(),
                    "N": n,
                    "count": report::json_int(&c),
                }),
                common.table,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((value, table)) => {
            if table {
                print!("{}", report::render_table(&value));
            } else {
                println!("{}", serde_json::to_string_pretty(&value).expect("serializable report"));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
