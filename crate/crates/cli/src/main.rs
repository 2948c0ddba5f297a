mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use epv_core::acceptance::{self, CheckStatus};
use epv_core::bounds;
use epv_core::geometry::{
    affine_plane, incidence_graph, projective_plane, remove_parallel_class, remove_pencil,
    truncate_semiplane, Direction,
};
use epv_core::graphcore::{girth, read_graph, write_graph};
use epv_core::optimizer::{
    closed_form_optimum, feasibility_check, kkt_residual, numeric_optimum, OptError,
};
use epv_core::spectral::{
    cluster, eigenvalues, read_spectrum_json, srg_spectrum, Origin, Spectrum,
    DEFAULT_CLUSTER_TOL, DEFAULT_TOL,
};

use report::{fmt_sig, Report};

// exit codes: 0 ok, 1 verification failure, 2 bad arguments, 3 construction
// failure, 4 parse error, 5 oracle infeasible, 6 srg infeasible
const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_BAD_ARGS: u8 = 2;
const EXIT_CONSTRUCT: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_ORACLE: u8 = 5;
const EXIT_SRG: u8 = 6;

#[derive(Parser)]
#[command(
    name = "epv",
    about = "Workbench for the energy per vertex of regular graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an incidence-geometry graph and write it as an edge list
    Construct(ConstructArgs),
    /// Energy and energy per vertex of a graph file or spectrum file
    Energy(EnergyArgs),
    /// Evaluate every bound for a given degree k
    Bound(BoundArgs),
    /// Compare the numeric optimization oracle with the closed-form optimum
    Optimize(OptimizeArgs),
    /// Spectrum and energy of a strongly regular graph from its parameters
    Srg(SrgArgs),
    /// Run the verification checklist
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Projective plane incidence graph
    Pg,
    /// Affine plane incidence graph
    Ag,
    /// Affine plane minus a parallel class
    SemiplanePc,
    /// Affine plane minus a pencil
    SemiplanePencil,
    /// Pencil semiplane truncated to a (q-ell)-regular design
    Truncated,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    q: u64,
    /// Number of classes to delete (truncated family only)
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnergyArgs {
    /// Edge-list file; eigenvalues are computed
    #[arg(long, conflicts_with = "spectrum")]
    graph: Option<PathBuf>,
    /// Spectrum JSON file; eigenvalues are taken as given
    #[arg(long)]
    spectrum: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    k: u64,
    /// Half the vertex count, for the Cauchy-Schwarz bound
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 64)]
    seeds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SrgArgs {
    #[arg(long)]
    v: u64,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    lambda: u64,
    #[arg(long)]
    mu: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Also run the slow property sweeps
    #[arg(long)]
    full: bool,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Energy(args) => cmd_energy(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Srg(args) => cmd_srg(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<ExitCode, (u8, String)>;

fn cmd_construct(args: ConstructArgs) -> CmdResult {
    let q = args.q;
    let build = || -> Result<_, epv_core::geometry::GeometryError> {
        Ok(match args.family {
            FamilyArg::Pg => projective_plane(q)?,
            FamilyArg::Ag => affine_plane(q)?,
            FamilyArg::SemiplanePc => {
                remove_parallel_class(&affine_plane(q)?, Direction::Vertical)?
            }
            FamilyArg::SemiplanePencil => remove_pencil(&affine_plane(q)?, 0)?,
            FamilyArg::Truncated => {
                let ell = args.ell.ok_or({
                    epv_core::geometry::GeometryError::BadEll { ell: u64::MAX, max: 0, q }
                })?;
                truncate_semiplane(&remove_pencil(&affine_plane(q)?, 0)?, ell)?
            }
        })
    };
    if matches!(args.family, FamilyArg::Truncated) && args.ell.is_none() {
        return Err((EXIT_BAD_ARGS, "--ell is required for --family truncated".into()));
    }
    let structure = build().map_err(|e| (EXIT_CONSTRUCT, e.to_string()))?;
    let graph = incidence_graph(&structure);
    write_graph(&graph, &args.out)
        .map_err(|e| (EXIT_CONSTRUCT, format!("writing {}: {e}", args.out.display())))?;

    let mut report = Report::new("construct");
    report.int("vertices", graph.vertex_count() as i64, "computed");
    report.int("edges", graph.edge_count() as i64, "computed");
    match graph.regularity() {
        Some(k) => report.int("regular_k", k as i64, "computed"),
        None => report.text("regular_k", "irregular", "computed"),
    }
    match girth(&graph) {
        Some(g) => report.int("girth", g as i64, "computed"),
        None => report.text("girth", "infinity", "computed"),
    }
    report.text("out", &args.out.display().to_string(), "computed");
    report.emit(args.json);
    Ok(ExitCode::SUCCESS)
}

fn spectrum_report(report: &mut Report, s: &Spectrum, provenance: &'static str) {
    report.number("energy", s.energy(), provenance);
    report.number("energy_per_vertex", s.energy_per_vertex(), provenance);
    let clustered = cluster(s, DEFAULT_CLUSTER_TOL);
    let view: Vec<String> = clustered
        .pairs()
        .iter()
        .map(|&(v, m)| format!("{}^{}", fmt_sig(v), m))
        .collect();
    report.text("clustered_spectrum", &view.join(" "), provenance);
}

fn cmd_energy(args: EnergyArgs) -> CmdResult {
    let mut report = Report::new("energy");
    match (args.graph, args.spectrum) {
        (Some(path), None) => {
            let graph = read_graph(&path).map_err(|e| (EXIT_PARSE, e.to_string()))?;
            let s = eigenvalues(&graph, DEFAULT_TOL)
                .map_err(|e| (EXIT_PARSE, e.to_string()))?;
            report.int("vertices", graph.vertex_count() as i64, "computed");
            spectrum_report(&mut report, &s, "computed");
        }
        (None, Some(path)) => {
            let s = read_spectrum_json(&path).map_err(|e| (EXIT_PARSE, e.to_string()))?;
            report.int("vertices", s.len() as i64, "paper_reference");
            spectrum_report(&mut report, &s, "paper_reference");
        }
        _ => {
            return Err((
                EXIT_BAD_ARGS,
                "exactly one of --graph or --spectrum is required".into(),
            ))
        }
    }
    report.emit(args.json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_bound(args: BoundArgs) -> CmdResult {
    let r = bounds::bound_report(args.k, args.m).map_err(|e| (EXIT_BAD_ARGS, e.to_string()))?;
    let mut report = Report::new("bound");
    report.int("k", r.k as i64, "closed_form");
    report.number("thm1_upper", r.thm1_upper, "closed_form");
    report.int("q", r.q as i64, "closed_form");
    report.int("ell", r.ell as i64, "closed_form");
    report.number("thm2_lower", r.thm2_lower, "closed_form");
    report.number("corollary_floor", r.corollary_floor, "closed_form");
    if let Some(cs) = r.cs_upper {
        report.number("cs_upper", cs, "closed_form");
    }
    report.number("km_nikiforov", r.constants.km_nikiforov, "closed_form");
    report.number("tree_limit", r.constants.tree_limit, "closed_form");
    report.number("trivial_floor", r.constants.trivial_floor, "closed_form");
    if r.corollary_floor < 1.0 {
        report.text(
            "note",
            "the sqrt(k) - k^(1/40) floor is asymptotic and vacuous at this k",
            "closed_form",
        );
    }
    report.emit(args.json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_optimize(args: OptimizeArgs) -> CmdResult {
    if args.k < 2 || args.t < 1 {
        return Err((EXIT_BAD_ARGS, "need k >= 2 and t >= 1".into()));
    }
    let cf = closed_form_optimum(args.k, args.t).map_err(|e| (EXIT_BAD_ARGS, e.to_string()))?;
    let m = cf.multiplicity_sum();
    let numeric = match numeric_optimum(args.k, m, args.seeds, args.tol, args.seed) {
        Ok(p) => p,
        Err(OptError::BadArgs(msg)) => return Err((EXIT_BAD_ARGS, msg)),
        Err(e @ OptError::NoFeasiblePoint { .. }) => return Err((EXIT_ORACLE, e.to_string())),
    };
    let feas = feasibility_check(&numeric, args.k, m, args.tol);
    let cert = kkt_residual(&cf, args.k, 1e-6);

    let mut report = Report::new("optimize");
    report.int("k", args.k as i64, "closed_form");
    report.int("t", args.t as i64, "closed_form");
    report.int("m", m as i64, "closed_form");
    report.number("closed_form_objective", cf.objective(), "closed_form");
    report.number("numeric_objective", numeric.objective(), "computed");
    report.number("gap", cf.objective() - numeric.objective(), "computed");
    report.number("numeric_g_residual", feas.g_residual, "computed");
    report.number("numeric_h0", feas.h0_value, "computed");
    report.number("kkt_residual", cert.stationarity_residual, "computed");
    let values: Vec<String> = numeric
        .entries()
        .iter()
        .map(|&(v, mult)| format!("{}^{}", fmt_sig(v), mult))
        .collect();
    report.text("numeric_values", &values.join(" "), "computed");
    report.emit(args.json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_srg(args: SrgArgs) -> CmdResult {
    let clustered = srg_spectrum(args.v, args.k, args.lambda, args.mu)
        .map_err(|e| (EXIT_SRG, e.to_string()))?;
    let s = clustered.to_spectrum(Origin::ClosedForm);
    let mut report = Report::new("srg");
    let view: Vec<String> = clustered
        .pairs()
        .iter()
        .map(|&(v, m)| format!("{}^{}", fmt_sig(v), m))
        .collect();
    report.text("spectrum", &view.join(" "), "closed_form");
    report.number("energy_per_vertex", s.energy_per_vertex(), "closed_form");
    report.emit(args.json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let results = acceptance::run_all(args.full);
    let all_pass = results.iter().all(|r| r.status != CheckStatus::Fail);
    if args.json {
        let rows: Vec<serde_json::Value> = results
            .iter()
            .map(|r| {
                serde_json::json!({
                    "id": r.id,
                    "label": r.label,
                    "status": match r.status {
                        CheckStatus::Pass => "pass",
                        CheckStatus::Fail => "fail",
                        CheckStatus::Skipped => "skipped",
                    },
                    "details": r.details,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "command": "verify",
                "full": args.full,
                "all_pass": all_pass,
                "checks": rows,
            }))
            .unwrap()
        );
    } else {
        for r in &results {
            let mark = match r.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            println!("{mark} {} {}: {}", r.id, r.label, r.details);
        }
    }
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_VERIFY_FAIL))
    }
}
