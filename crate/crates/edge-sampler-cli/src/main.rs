//! Command-line driver: single draws, uniformity suites, complexity
//! sweeps, hard-instance experiments, and ground-truth factor values.
//!
//! Exit codes: 0 on success / pass verdicts, 1 on fail verdicts, 2 on
//! usage errors.

use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use edge_sampler::advice::AdviceProvider;
use edge_sampler::experiments::{run_complexity_sweep, run_uniformity};
use edge_sampler::factors::{brute_force_factor, FactorKind};
use edge_sampler::graph::{generate, GraphFamily, GraphInstance};
use edge_sampler::hybrid::sample_edge_hyb;
use edge_sampler::is_model::sample_edge_is;
use edge_sampler::lowerbound::{
    distinguishability_experiment, verify_construction, LowerBoundParams,
};
use edge_sampler::oracle::OracleSession;
use edge_sampler::report::Verdict;
use edge_sampler::Model;

#[derive(Parser)]
#[command(name = "edge-sampler", about = "Near-uniform edge sampling experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list file: first line "n m", then one "u v" pair per line.
    #[arg(long, conflicts_with = "gen")]
    graph: Option<String>,
    /// Generated graph, e.g. gnm:64,200 or clique:8 or star:1,9.
    #[arg(long)]
    gen: Option<String>,
    /// Seed for graph generation (independent of the sampling seed).
    #[arg(long, default_value_t = 0)]
    graph_seed: u64,
}

impl GraphArgs {
    fn load(&self) -> Result<(GraphInstance, String)> {
        match (&self.graph, &self.gen) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading graph file {path}"))?;
                Ok((GraphInstance::load_edge_list(&text)?, path.clone()))
            }
            (None, Some(spec)) => {
                let (name, rest) = spec.split_once(':').unwrap_or((spec.as_str(), ""));
                let family = GraphFamily::parse(name)
                    .ok_or_else(|| anyhow!("unknown graph family '{name}'"))?;
                let params: Vec<usize> = rest
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().with_context(|| format!("bad parameter '{s}'")))
                    .collect::<Result<_>>()?;
                Ok((generate(family, &params, self.graph_seed)?, spec.clone()))
            }
            _ => bail!("exactly one of --graph or --gen is required"),
        }
    }
}

fn parse_advice(s: &str) -> Result<AdviceProvider> {
    if let Some(v) = s.strip_prefix("fixed:") {
        return Ok(AdviceProvider::fixed(v.parse().context("bad fixed advice value")?));
    }
    match s {
        "exact" => Ok(AdviceProvider::exact()),
        "noisy" => Ok(AdviceProvider::noisy()),
        _ => bail!("advice must be exact, noisy, or fixed:V"),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Draw a single edge and print it with the query counts.
    Sample {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_parser = Model::parse_cli)]
        model: Model,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "exact")]
        advice: String,
    },
    /// Repeated draws; reports per-edge frequencies and a uniformity verdict.
    Uniformity {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_parser = Model::parse_cli)]
        model: Model,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "exact")]
        advice: String,
        #[arg(long)]
        trials: u64,
        /// Write the full JSON report here.
        #[arg(long)]
        json: Option<String>,
    },
    /// Mean query counts across graph sizes, normalized by the expected scaling.
    Sweep {
        #[arg(long, value_parser = Model::parse_cli)]
        model: Model,
        /// sparse (m ≈ n) or dense (m ≈ n^{3/2}).
        #[arg(long)]
        regime: String,
        /// Comma-separated vertex counts, ascending.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<String>,
    },
    /// Hard instance pair: size checks or the distinguishing experiment.
    Lowerbound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Verify the construction's size guarantees.
        #[arg(long, conflicts_with = "experiment")]
        verify: bool,
        /// Run the sampler on relabeled copies of both instances.
        #[arg(long)]
        experiment: bool,
        #[arg(long, value_parser = Model::parse_cli, default_value = "is")]
        model: Model,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<String>,
    },
    /// Ground-truth factor value by enumeration or Monte Carlo.
    Factors {
        #[command(flatten)]
        graph: GraphArgs,
        /// loneliness, starness, or neighborhood.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        u: u32,
        #[arg(long)]
        v: Option<u32>,
        #[arg(long)]
        mtilde: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

trait ModelCliExt: Sized {
    fn parse_cli(s: &str) -> Result<Self, String>;
}

impl ModelCliExt for Model {
    fn parse_cli(s: &str) -> Result<Self, String> {
        Model::parse(s).ok_or_else(|| format!("model must be 'hybrid' or 'is', got '{s}'"))
    }
}

fn write_json<T: serde::Serialize>(value: &T, path: Option<&str>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {p}"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sample { graph, model, eps, seed, advice } => {
            let (g, _) = graph.load()?;
            let advice = parse_advice(&advice)?;
            let mut s = OracleSession::new(&g, seed);
            let out = match model {
                Model::Hybrid => sample_edge_hyb(&mut s, eps, &advice),
                Model::Is => sample_edge_is(&mut s, eps, &advice),
            };
            let c = s.counters();
            match out.edge() {
                Some(e) => println!("edge {} {}", e.u, e.v),
                None => println!("reject"),
            }
            println!(
                "queries is={} degree={} neighbor={} total={}",
                c.is,
                c.degree,
                c.neighbor,
                c.total()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Uniformity { graph, model, eps, seed, advice, trials, json } => {
            let (g, name) = graph.load()?;
            let advice = parse_advice(&advice)?;
            let report = run_uniformity(&g, &name, model, eps, trials, seed, &advice);
            println!(
                "graph={} n={} m={} trials={} accepted={} lambda={:.4} ratio={:.4} \
                 limit={:.4} tv={:.5} verdict={:?}",
                report.graph,
                report.n,
                report.m,
                report.trials,
                report.accepted,
                report.lambda,
                report.freq_ratio,
                report.ratio_limit,
                report.tv_to_uniform,
                report.verdict
            );
            write_json(&report, json.as_deref())?;
            Ok(exit_for(report.verdict))
        }
        Command::Sweep { model, regime, sizes, eps, trials, seed, json } => {
            let sizes: Vec<usize> = sizes
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().with_context(|| format!("bad size '{s}'")))
                .collect::<Result<_>>()?;
            if !sizes.windows(2).all(|w| w[0] < w[1]) {
                bail!("--sizes must be strictly ascending");
            }
            if regime != "sparse" && regime != "dense" {
                bail!("--regime must be sparse or dense");
            }
            let report = run_complexity_sweep(model, &regime, &sizes, eps, trials, seed);
            println!("n,m,trials,mean_queries,max_queries,r_ref,ratio");
            for r in &report.rows {
                println!(
                    "{},{},{},{:.2},{},{:.3},{:.4}",
                    r.n, r.m, r.trials, r.mean_queries, r.max_queries, r.r_ref, r.ratio
                );
            }
            println!("ratio_spread={:.3} verdict={:?}", report.ratio_spread, report.verdict);
            write_json(&report, json.as_deref())?;
            Ok(exit_for(report.verdict))
        }
        Command::Lowerbound { n, m, verify, experiment, model, eps, trials, seed, json } => {
            let params = LowerBoundParams::new(n, m)?;
            if experiment {
                let rep = distinguishability_experiment(model, &params, eps, trials, seed);
                println!(
                    "g_side_rate={:.5} h_side_rate={:.5} g_accept={:.4} h_accept={:.4}",
                    rep.g_side_rate, rep.h_side_rate, rep.g_accept_rate, rep.h_accept_rate
                );
                write_json(&rep, json.as_deref())?;
                Ok(ExitCode::SUCCESS)
            } else if verify {
                let rep = verify_construction(&params);
                for c in &rep.checks {
                    println!(
                        "{}: {} <= {} [{}]",
                        c.name,
                        c.lhs,
                        c.rhs,
                        if c.pass { "pass" } else { "fail" }
                    );
                }
                write_json(&rep, json.as_deref())?;
                Ok(if rep.all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
            } else {
                bail!("pass --verify or --experiment");
            }
        }
        Command::Factors { graph, kind, u, v, mtilde, seed } => {
            let (g, _) = graph.load()?;
            let kind = FactorKind::parse(&kind)
                .ok_or_else(|| anyhow!("kind must be loneliness, starness, or neighborhood"))?;
            let fv = brute_force_factor(&g, kind, mtilde, u, v, seed)?;
            println!(
                "value={:.8} exact={} std_err={:.2e}",
                fv.value, fv.exact, fv.std_err
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_for(v: Verdict) -> ExitCode {
    match v {
        Verdict::Pass => ExitCode::SUCCESS,
        _ => ExitCode::FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
