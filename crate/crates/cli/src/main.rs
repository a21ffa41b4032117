use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

use percoplanar_core::analysis::{
    clique_survival_probability, expected_short_cycles, giant_fixed_point, predicted_giant,
    series_identity_check,
};
use percoplanar_core::generators::generate;
use percoplanar_core::graph::io::{read_edge_list, write_edge_list};
use percoplanar_core::graph::DEFAULT_CYCLE_BUDGET;
use percoplanar_core::harness::{
    emit_csv, emit_summary_csv, format_summary, load_config, run_sweep, summarize,
    ExperimentConfig, FamilyTemplate, GridPoint,
};
use percoplanar_core::percolation::{percolate, SampleParams};
use percoplanar_core::planarity::{
    is_planar, parse_certificate, search_certificate, verify_certificate, Verification,
};
use percoplanar_core::rng::derive_seed;
use percoplanar_core::witness::find_witness;
use percoplanar_core::{Error, Graph, WitnessParams};

const SEED_ENV: &str = "PERCOPLANAR_SEED";

/// Percolation, planarity and non-planarity certificates on finite graphs.
///
/// Seeds: `--seed` wins, then a `seed` key from `--config`, then the
/// PERCOPLANAR_SEED environment variable, then 0.
#[derive(Parser, Debug)]
#[command(name = "percoplanar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a base graph from a family to an edge-list file.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Keep each edge of a graph independently with probability p.
    Percolate {
        graph: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print `planar` or `non-planar`.
    Planar { graph: PathBuf },
    /// Search for a density-girth certificate, or check one with --check.
    Certify {
        graph: PathBuf,
        /// Largest short-cycle horizon tried.
        #[arg(long, default_value_t = 12)]
        ell: usize,
        /// Verify this certificate file instead of searching.
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the witness search on a graph file or a generated family.
    Witness {
        /// Edge-list file; omit to generate from --family.
        graph: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        /// Target probability instead of (1 + epsilon)/r.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Sprinkling horizon.
        #[arg(long)]
        ell: Option<usize>,
        /// Write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Monte Carlo sweep and print its summary.
    Sweep(SweepArgs),
    /// Closed-form predictions for G(n, c/n) and related quantities.
    Analyze(AnalyzeArgs),
}

#[derive(Args, Debug, Default)]
struct FamilyArgs {
    /// complete | complete_bipartite | hypercube | grid | random_regular |
    /// disjoint_cliques | from_file
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    copies: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    path: Option<PathBuf>,
}

impl FamilyArgs {
    fn template(&self) -> FamilyTemplate {
        FamilyTemplate {
            tag: self.family.clone().unwrap_or_default(),
            n: self.n,
            r: self.r,
            d: self.d,
            rows: self.rows,
            cols: self.cols,
            copies: self.copies,
            a: self.a,
            b: self.b,
            path: self.path.clone(),
        }
    }

    /// Flags as `(config key, value)` pairs, in config-key spelling.
    fn settings(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if let Some(f) = &self.family {
            out.push(("family", f.clone()));
        }
        for (key, v) in [
            ("n", self.n),
            ("r", self.r),
            ("d", self.d),
            ("rows", self.rows),
            ("cols", self.cols),
            ("copies", self.copies),
            ("a", self.a),
            ("b", self.b),
        ] {
            if let Some(v) = v {
                out.push((key, v.to_string()));
            }
        }
        if let Some(p) = &self.path {
            out.push(("path", p.display().to_string()));
        }
        out
    }
}

/// Flags override keys from `--config`. Giving `--p` or `--c` replaces the
/// config grid with that single point; with neither and no config grid,
/// `--epsilon` becomes the only grid point.
#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// oracle | witness | both
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    coupled: Option<bool>,
    #[arg(long)]
    timing: Option<bool>,
    /// Also write per-grid-point aggregates as CSV.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Print the giant-component fraction for mean degree C.
    #[arg(long, value_name = "C")]
    fixed_point: Option<f64>,
    /// Print the residual of the series identity at X.
    #[arg(long, value_name = "X")]
    series: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    /// Count cycles shorter than this.
    #[arg(long)]
    g0: Option<usize>,
    #[arg(long)]
    copies: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => Ok(Some(v.trim().parse().map_err(|_| {
            Error::InvalidParameter(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))
        })?)),
        Err(_) => Ok(None),
    }
}

fn seed_or_env(flag: Option<u64>) -> Result<u64> {
    Ok(match flag {
        Some(s) => s,
        None => env_seed()?.unwrap_or(0),
    })
}

fn require_file(path: &Path) -> Result<()> {
    if !path.is_file() {
        let source = if path.exists() {
            std::io::Error::new(std::io::ErrorKind::InvalidInput, "not a regular file")
        } else {
            std::io::Error::new(std::io::ErrorKind::NotFound, "no such file")
        };
        return Err(Error::Io {
            path: path.to_path_buf(),
            source,
        }
        .into());
    }
    Ok(())
}

fn require_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => Err(Error::Io {
            path: dir.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "output directory missing"),
        }
        .into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { family, seed, out } => {
            require_parent(&out)?;
            let spec = family.template().spec()?;
            let g = generate(&spec, seed_or_env(seed)?)?;
            write_edge_list(&g, &out)?;
            println!("{} n={} m={}", spec.tag(), g.n(), g.m());
        }
        Command::Percolate {
            graph,
            p,
            seed,
            stream,
            out,
        } => {
            require_file(&graph)?;
            require_parent(&out)?;
            let params = SampleParams::new(p, seed_or_env(seed)?, stream)?;
            let g = read_edge_list(&graph)?;
            let sample = percolate(&g, &params);
            write_edge_list(&sample, &out)?;
            println!("kept {} of {} edges", sample.m(), g.m());
        }
        Command::Planar { graph } => {
            require_file(&graph)?;
            let g = read_edge_list(&graph)?;
            println!(
                "{}",
                if is_planar(&g) {
                    "planar"
                } else {
                    "non-planar"
                }
            );
        }
        Command::Certify {
            graph,
            ell,
            check,
            out,
        } => {
            require_file(&graph)?;
            if let Some(c) = &check {
                require_file(c)?;
            }
            if let Some(o) = &out {
                require_parent(o)?;
            }
            if ell < 3 {
                bail!(Error::InvalidParameter("--ell must be >= 3".into()));
            }
            let g = read_edge_list(&graph)?;
            if let Some(c) = check {
                let text = std::fs::read_to_string(&c).map_err(|e| Error::Io {
                    path: c.clone(),
                    source: e,
                })?;
                let cert = parse_certificate(&text)?;
                match verify_certificate(&g, &cert) {
                    Verification::Valid => println!("valid"),
                    Verification::Rejected(reason) => println!("rejected: {reason}"),
                }
                return Ok(());
            }
            match search_certificate(&g, ell, DEFAULT_CYCLE_BUDGET) {
                Some(cert) => {
                    print!("{}", cert.to_text());
                    if let Some(o) = out {
                        write_text(&o, &cert.to_text())?;
                    }
                }
                None => println!("no-certificate"),
            }
        }
        Command::Witness {
            graph,
            family,
            epsilon,
            p,
            seed,
            ell,
            out,
        } => {
            if let Some(g) = &graph {
                require_file(g)?;
            }
            if let Some(o) = &out {
                require_parent(o)?;
            }
            let seed = seed_or_env(seed)?;
            let g: Graph = match &graph {
                Some(path) => read_edge_list(path)?,
                None => generate(&family.template().spec()?, derive_seed(&[seed, 1]))?,
            };
            let mut params = WitnessParams::for_graph(g.n(), g.min_degree(), epsilon)?;
            params.p_override = p;
            if let Some(ell) = ell {
                params.horizon = ell;
            }
            params.validate()?;
            let report = find_witness(&g, &params, seed)?;
            println!("{report}");
            if let Some(cert) = report.outcome.certificate() {
                print!("{}", cert.to_text());
                if let Some(o) = out {
                    write_text(&o, &cert.to_text())?;
                }
            }
        }
        Command::Sweep(args) => sweep(args)?,
        Command::Analyze(args) => analyze(args)?,
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(())
}

fn sweep_config(args: &SweepArgs) -> Result<ExperimentConfig> {
    let mut config = match &args.config {
        Some(path) => {
            require_file(path)?;
            load_config(path)?
        }
        None => ExperimentConfig::default(),
    };
    if config.master_seed.is_none() {
        config.master_seed = env_seed()?;
    }

    let mut settings = args.family.settings();
    let mut push = |key: &'static str, v: Option<String>| {
        if let Some(v) = v {
            settings.push((key, v));
        }
    };
    push("trials", args.trials.map(|v| v.to_string()));
    push("seed", args.seed.map(|v| v.to_string()));
    push("mode", args.mode.clone());
    push("out", args.out.as_ref().map(|v| v.display().to_string()));
    push("threads", args.threads.map(|v| v.to_string()));
    push("epsilon", args.epsilon.map(|v| v.to_string()));
    push("ell", args.ell.map(|v| v.to_string()));
    push("coupled", args.coupled.map(|v| v.to_string()));
    push("timing", args.timing.map(|v| v.to_string()));
    for (key, value) in settings {
        config.set(key, &value)?;
    }

    if args.p.is_some() || args.c.is_some() {
        config.grid = vec![GridPoint {
            p: args.p,
            c: args.c,
            ..GridPoint::default()
        }];
    } else if config.grid.is_empty() {
        if let Some(e) = args.epsilon {
            config.grid.push(GridPoint {
                epsilon: Some(e),
                ..GridPoint::default()
            });
        }
    }
    Ok(config)
}

fn sweep(args: SweepArgs) -> Result<()> {
    let config = sweep_config(&args)?;
    if let Some(out) = &config.out {
        require_parent(out)?;
    }
    if let Some(s) = &args.summary {
        require_parent(s)?;
    }
    let records = run_sweep(&config)?;
    let stats = summarize(&records);
    if let Some(out) = &config.out {
        emit_csv(&records, out)?;
    }
    if let Some(s) = &args.summary {
        emit_summary_csv(&stats, s)?;
    }
    print!("{}", format_summary(&stats));
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Result<()> {
    let mut printed = false;
    if let Some(c) = args.fixed_point {
        println!("x = {:.10}", giant_fixed_point(c, args.tol)?);
        printed = true;
    }
    if let Some(x) = args.series {
        println!("series residual = {:.3e}", series_identity_check(x)?);
        printed = true;
    }
    if let Some(c) = args.c {
        if args.fixed_point.is_none() {
            println!("x = {:.10}", giant_fixed_point(c, args.tol)?);
        }
        if let Some(n) = args.n {
            let pred = predicted_giant(n, c)?;
            println!("giant vertices = {:.4}", pred.vertices);
            println!("giant edges = {:.4}", pred.edges);
        }
        if let Some(g0) = args.g0 {
            let cycles = expected_short_cycles(args.n.unwrap_or(0), c, g0)?;
            println!("expected cycles shorter than {g0} = {:.10}", cycles.refined);
            println!("loose upper bound = {:.10}", cycles.loose_upper);
        }
        printed = true;
    }
    if let (Some(copies), Some(r), Some(p)) = (args.copies, args.r, args.p) {
        if !(0.0..=1.0).contains(&p) {
            bail!(Error::Probability(format!("p = {p} outside [0, 1]")));
        }
        println!(
            "clique survival = {:.10}",
            clique_survival_probability(copies, r, p)
        );
        printed = true;
    }
    if !printed {
        bail!(Error::InvalidParameter(
            "analyze needs --fixed-point, --series, --c, or --copies with --r and --p".into()
        ));
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return if e.is_io() { 2 } else { 1 };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
