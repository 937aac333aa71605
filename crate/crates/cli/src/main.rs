mod report;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kcert::instances::{self, DisjointnessInstance};
use kcert::{
    build_certificate_offline, certify_insertions, decide_k_connected, oracle, seed, CertParams, Certificate,
    EdgeSet, Error, MultiGraph, StreamCertifier, StreamFile,
};

use report::{CheckReport, OracleReport, RunReport, SweepPoint};

#[derive(Parser)]
#[command(name = "kcert", version, about = "k-vertex-connectivity certificates for dynamic graph streams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a stream file for a generated instance.
    Gen {
        #[command(subcommand)]
        instance: GenSpec,
        /// Output path; standard output when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Decide k-connectivity of a stream through a certificate.
    Certify(CertifyArgs),
    /// Exact vertex connectivity, or a k-connectivity test when --k is given.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Repeated seeded certifications compared against the exact oracle.
    Check(CheckArgs),
}

#[derive(Subcommand)]
enum GenSpec {
    /// Set-disjointness reduction: Alice's edges, then Bob's.
    Disjointness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Relation::Disjoint)]
        relation: Relation,
    },
    /// A named graph such as complete(5), petersen or complete_bipartite(3,4).
    Named {
        name: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Random legal dynamic stream.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0.2)]
        delete_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Planted minimum vertex cut of size k − 1.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Disjoint,
    Intersecting,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// One pass of sketches over the dynamic stream.
    Dynamic,
    /// Deterministic certifier; rejects deletions.
    Insertion,
    /// Exact forests on the replayed graph.
    Offline,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Dynamic => "dynamic",
            Mode::Insertion => "insertion",
            Mode::Offline => "offline",
        }
    }
}

#[derive(Args)]
struct SketchArgs {
    /// Target connectivity; defaults to the file header.
    #[arg(long)]
    k: Option<usize>,
    /// Multiplier C in r = ceil(C·k²·ln n).
    #[arg(long)]
    scale_c: Option<f64>,
    /// Use C = 200 unless --scale-c is given.
    #[arg(long)]
    paper_mode: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-sketch failure probability; defaults to n^-4.
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args)]
struct CertifyArgs {
    input: PathBuf,
    #[command(flatten)]
    sketch: SketchArgs,
    #[arg(long, value_enum, default_value_t = Mode::Dynamic)]
    mode: Mode,
    /// Abort when measured sketch space passes this many bytes.
    #[arg(long)]
    space_cap_bytes: Option<u64>,
    /// Leave subset bitsets out of the space measurement.
    #[arg(long)]
    exclude_subset_bytes: bool,
    /// Recompute subset membership from seeds instead of storing bitsets.
    #[arg(long)]
    hashed_membership: bool,
    /// Also run the exact oracle on the replayed graph.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct CheckArgs {
    input: PathBuf,
    #[command(flatten)]
    sketch: SketchArgs,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Comma-separated list of C values to sweep, e.g. 1,5,20.
    #[arg(long, value_delimiter = ',')]
    sweep_c: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Offline)]
    mode: Mode,
}

fn read_stream(path: &Path) -> Result<StreamFile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    StreamFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cert_params(file: &StreamFile, args: &SketchArgs) -> Result<CertParams, Error> {
    let k = args.k.unwrap_or(file.k);
    let mut p = CertParams::new(file.n, k)?.with_seed(args.seed);
    if args.paper_mode {
        p = p.paper_mode();
    }
    if let Some(c) = args.scale_c {
        p = p.with_scale(c);
    }
    if let Some(d) = args.delta {
        p = p.with_delta(d);
    }
    p.validate()?;
    Ok(p)
}

fn replay(file: &StreamFile) -> Result<EdgeSet, Error> {
    Ok(MultiGraph::replay_stream(file.n, &file.events)?.support())
}

fn oracle_verdict(g: &EdgeSet, k: usize) -> bool {
    oracle::is_k_connected(g, k).unwrap_or(false)
}

fn print_json<T: serde::Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn cmd_gen(spec: GenSpec, out: Option<PathBuf>) -> Result<(), String> {
    let err = |e: Error| e.to_string();
    let file = match spec {
        GenSpec::Disjointness { n, k, seed, relation } => {
            let inst = match relation {
                Relation::Disjoint => DisjointnessInstance::random_disjoint(n, k, seed),
                Relation::Intersecting => DisjointnessInstance::random_intersecting(n, k, seed),
            }
            .map_err(err)?;
            let (alice, bob) = instances::gen_disjointness(&inst);
            StreamFile { n, k, events: alice.into_iter().chain(bob).collect() }
        }
        GenSpec::Named { name, k } => {
            let g = instances::named(&name).map_err(err)?;
            StreamFile { n: g.n(), k, events: g.to_stream() }
        }
        GenSpec::Random { n, density, delete_fraction, seed, k } => StreamFile {
            n,
            k,
            events: instances::gen_random_stream(n, density, delete_fraction, seed).map_err(err)?,
        },
        GenSpec::Planted { n, k, seed } => {
            let pc = instances::gen_planted_cut(n, k, seed).map_err(err)?;
            StreamFile { n, k, events: pc.graph.to_stream() }
        }
    };
    MultiGraph::replay_stream(file.n, &file.events).map_err(|e| format!("generated stream is illegal: {e}"))?;
    let text = file.render();
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn cmd_certify(args: CertifyArgs) -> Result<bool, String> {
    let started = Instant::now();
    let file = read_stream(&args.input)?;
    let err = |e: Error| e.to_string();
    let mut report = RunReport {
        command: "certify".into(),
        mode: args.mode.name().into(),
        n: file.n,
        k: args.sketch.k.unwrap_or(file.k),
        scale_c: None,
        r: None,
        seed: args.sketch.seed,
        delta: None,
        verdict: false,
        oracle_verdict: None,
        h_edges: 0,
        sum_vi: 0,
        forest_failures: 0,
        measured_sketch_bytes: 0,
        wall_time_ms: 0,
    };

    let cert: Option<Certificate> = match args.mode {
        Mode::Insertion => {
            let f = certify_insertions(file.n, report.k, &file.events).map_err(err)?;
            report.verdict = file.n >= 2 && oracle_verdict(&f, report.k);
            report.h_edges = f.len();
            None
        }
        Mode::Offline => {
            let p = cert_params(&file, &args.sketch).map_err(err)?;
            Some(build_certificate_offline(&replay(&file).map_err(err)?, &p).map_err(err)?)
        }
        Mode::Dynamic => {
            let mut p = cert_params(&file, &args.sketch).map_err(err)?;
            p.space_cap_bytes = args.space_cap_bytes;
            p.count_subset_bytes = !args.exclude_subset_bytes;
            p.hashed_membership = args.hashed_membership;
            let mut c = StreamCertifier::new(p).map_err(err)?;
            c.update_batch(&file.events).map_err(err)?;
            Some(c.finalize())
        }
    };
    if let Some(cert) = &cert {
        report.scale_c = Some(cert.params.scale_c);
        report.r = Some(cert.r());
        report.delta = (args.mode == Mode::Dynamic).then_some(cert.params.delta);
        report.verdict = decide_k_connected(cert);
        report.h_edges = cert.h.len();
        report.sum_vi = cert.sum_vi();
        report.forest_failures = cert.forest_failures();
        report.measured_sketch_bytes = cert.measured_sketch_bytes;
    }
    if args.oracle {
        report.oracle_verdict = Some(oracle_verdict(&replay(&file).map_err(err)?, report.k));
    }
    report.wall_time_ms = started.elapsed().as_millis();
    print_json(&report);
    Ok(report.verdict)
}

fn cmd_oracle(input: &Path, k: Option<usize>) -> Result<bool, String> {
    let file = read_stream(input)?;
    let g = replay(&file).map_err(|e| e.to_string())?;
    let report = match k {
        None => OracleReport {
            n: file.n,
            kappa: Some(oracle::vertex_connectivity(&g).map_err(|e| e.to_string())?),
            k: None,
            k_connected: None,
        },
        Some(k) => OracleReport {
            n: file.n,
            kappa: None,
            k: Some(k),
            k_connected: Some(oracle::is_k_connected(&g, k).map_err(|e| e.to_string())?),
        },
    };
    print_json(&report);
    Ok(report.k_connected.unwrap_or(true))
}

fn cmd_check(args: CheckArgs) -> Result<(), String> {
    let file = read_stream(&args.input)?;
    let err = |e: Error| e.to_string();
    let base = cert_params(&file, &args.sketch).map_err(err)?;
    let g = replay(&file).map_err(err)?;
    let truth = oracle_verdict(&g, base.k);
    let scales = if args.sweep_c.is_empty() { vec![base.scale_c] } else { args.sweep_c.clone() };

    let mut results = Vec::new();
    for scale in scales {
        let p = base.clone().with_scale(scale);
        p.validate().map_err(err)?;
        let (mut matches, mut sizes, mut failures) = (0, Vec::new(), 0);
        for t in 0..args.trials {
            let trial = p.clone().with_seed(seed::derive(args.sketch.seed, "trial", t as u64));
            let cert = match args.mode {
                Mode::Offline => build_certificate_offline(&g, &trial).map_err(err)?,
                Mode::Dynamic => kcert::certify_stream(&file.events, &trial).map_err(err)?,
                Mode::Insertion => return Err("check supports offline and dynamic modes".into()),
            };
            matches += usize::from(decide_k_connected(&cert) == truth);
            failures += cert.forest_failures();
            sizes.push(cert.h.len());
        }
        let trials = args.trials.max(1) as f64;
        results.push(SweepPoint {
            scale_c: scale,
            r: p.forest_count(),
            match_rate: matches as f64 / trials,
            matches,
            h_mean: sizes.iter().sum::<usize>() as f64 / trials,
            h_min: sizes.iter().copied().min().unwrap_or(0),
            h_max: sizes.iter().copied().max().unwrap_or(0),
            forest_failures: failures,
        });
    }
    print_json(&CheckReport {
        n: file.n,
        k: base.k,
        mode: args.mode.name().into(),
        trials: args.trials,
        seed: args.sketch.seed,
        oracle_verdict: truth,
        results,
    });
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen { instance, out } => cmd_gen(instance, out).map(|()| true),
        Command::Certify(args) => cmd_certify(args),
        Command::Oracle { input, k } => cmd_oracle(&input, k),
        Command::Check(args) => cmd_check(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
