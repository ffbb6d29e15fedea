//! `tropicover`: enumeration, weights, balancing checks and Catalan counts for
//! discrete admissible covers. All output is JSON with exact rationals as
//! `"p/q"` strings.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
//! 3 enumeration budget exceeded.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tropicover::catalan::{self, CatalanMode};
use tropicover::cover::{AcParams, GraphCover, Partition};
use tropicover::cycles::{self, LocalProblem};
use tropicover::dictionary;
use tropicover::enumerate::{self, Budget, Stratum};
use tropicover::fans::forget_legs;
use tropicover::graph::{enumerate_stable_graphs, Label};
use tropicover::hurwitz::hurwitz_number;
use tropicover::rational::format_q;
use tropicover::{Error, Q};

#[derive(Parser)]
#[command(name = "tropicover", version, about = "Discrete admissible covers of tropical curves")]
struct Cli {
    /// Enumeration budget; accepts forms like `1e7`.
    #[arg(long, global = true, env = "TROPICOVER_BUDGET", value_parser = parse_budget)]
    budget: Option<u64>,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true, env = "TROPICOVER_THREADS")]
    threads: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Pretty-print JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StratumArg {
    Top,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sweep,
    Fixed,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Isomorphism classes of admissible covers of genus-h targets.
    Enumerate {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        h: u32,
        /// Ramification profiles as JSON, e.g. `[[2],[2],[1,1],[1,1]]`.
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value = "top")]
        stratum: StratumArg,
    },
    /// Local balancing around the 4-pointed line.
    BalanceLocal {
        #[arg(long)]
        d: u32,
        /// Four profiles as JSON; omit to sweep every valid quadruple.
        #[arg(long)]
        profiles: Option<String>,
    },
    /// Balancing around codim-1 covers of target trees.
    BalanceCodim1 {
        /// A cover as JSON; otherwise every codim-1 class of `--d`/`--mu` is checked.
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        mu: Option<String>,
        /// Source labels kept before forgetting, as JSON; default all.
        #[arg(long = "J")]
        keep: Option<String>,
    },
    /// Catalan count of covers contributing over `O_{g,J}`.
    Catalan {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        /// Also compute the pushforward degree by summing over labelled covers.
        #[arg(long)]
        direct: bool,
    },
    /// Connected genus-0 Hurwitz number.
    Hurwitz {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        profiles: String,
    },
    /// Standard weight of a cover; with `--J`, the forgetful data as well.
    Weight {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long = "J")]
        keep: Option<String>,
    },
    /// Turns a DT-morphism into an admissible cover by grafting legs.
    DtConvert {
        /// The morphism as JSON; omit with `--example`.
        #[arg(long)]
        cover: Option<PathBuf>,
        /// Use the built-in genus-4 degree-3 example.
        #[arg(long)]
        example: bool,
    },
    /// Stable graphs of genus g with n labelled legs.
    Graphs {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// Only graphs with this many edges.
        #[arg(long)]
        edges: Option<usize>,
    },
    /// Plain-text table of a cover.
    Render {
        #[arg(long)]
        cover: PathBuf,
    },
}

fn parse_budget(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if !(f.is_finite() && f >= 0.0 && f.fract() == 0.0 && f <= u64::MAX as f64) {
        return Err(format!("not a non-negative integer: {s}"));
    }
    Ok(f as u64)
}

fn parse_profiles(s: &str) -> anyhow::Result<Vec<Partition>> {
    let raw: Vec<Vec<u32>> = serde_json::from_str(s).context("profiles must be a JSON array of arrays")?;
    Ok(raw.into_iter().map(Partition::new).collect::<tropicover::Result<_>>()?)
}

fn parse_labels(s: &str) -> anyhow::Result<Vec<Label>> {
    serde_json::from_str(s).context("labels must be a JSON array of integers")
}

fn read_cover(path: &PathBuf) -> anyhow::Result<GraphCover> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).context("cover JSON")
}

/// Report plus whether every check in it passed.
struct Outcome {
    report: Value,
    ok: bool,
}

fn outcome<T: Serialize>(report: &T, ok: bool) -> anyhow::Result<Outcome> {
    Ok(Outcome { report: serde_json::to_value(report)?, ok })
}

fn run(cli: &Cli, budget: &Budget) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Enumerate { d, h, mu, stratum } => {
            let params = AcParams::new(*d, *h, parse_profiles(mu)?)?;
            let stratum = match stratum {
                StratumArg::Top => Stratum::Top,
                StratumArg::All => Stratum::All,
            };
            let classes = enumerate::enumerate_covers(&params, stratum, budget)?;
            let report = json!({
                "params": params,
                "sourceGenus": params.source_genus()?,
                "stratum": stratum,
                "count": classes.len(),
                "classes": classes,
                "budgetUsed": budget.used(),
            });
            outcome(&report, true)
        }
        Command::BalanceLocal { d, profiles } => {
            let problems = match profiles {
                Some(p) => vec![LocalProblem::new(*d, parse_profiles(p)?)?],
                None => cycles::all_local_problems(*d),
            };
            let mut reports = Vec::new();
            let mut ok = true;
            for p in &problems {
                let r = cycles::verify_local_balancing(p, budget)?;
                let coefficient_ok = r.splits.iter().all(|s| s.coefficient == r.expected_coefficient);
                ok &= r.balanced && coefficient_ok && r.four_point_agrees;
                reports.push(json!({ "report": r, "coefficientsMatchHurwitz": coefficient_ok }));
            }
            let report = json!({ "d": d, "problems": problems.len(), "allBalanced": ok, "reports": reports });
            outcome(&report, ok)
        }
        Command::BalanceCodim1 { cover, d, mu, keep } => {
            let keep = keep.as_deref().map(parse_labels).transpose()?;
            let covers: Vec<GraphCover> = match (cover, d, mu) {
                (Some(path), _, _) => vec![read_cover(path)?],
                (None, Some(d), Some(mu)) => {
                    let params = AcParams::new(*d, 0, parse_profiles(mu)?)?;
                    enumerate::enumerate_covers(&params, Stratum::All, budget)?
                        .into_iter()
                        .map(|c| c.cover.cover)
                        .filter(|c| cycles::four_valent_vertex(&c.target).is_some())
                        .collect()
                }
                _ => return Err(anyhow!("give --cover, or both --d and --mu")),
            };
            let mut reports = Vec::new();
            let mut ok = true;
            for c in &covers {
                let kept = keep.clone().unwrap_or_else(|| c.source.labels());
                let r = cycles::verify_codim1_balancing(c, &kept, budget)?;
                ok &= r.balanced;
                reports.push(r);
            }
            let report = json!({ "classes": covers.len(), "allBalanced": ok, "reports": reports });
            outcome(&report, ok)
        }
        Command::Catalan { g, r, mode, direct } => {
            let mode = match mode {
                ModeArg::Sweep => CatalanMode::Sweep,
                ModeArg::Fixed => CatalanMode::Fixed,
                ModeArg::Auto => CatalanMode::Auto,
            };
            let rep = catalan::catalan_fiber_count(*g, *r, mode, budget)?;
            let dyck = catalan::dyck_weight_sequences(*g, *r)?;
            let degree = catalan::pushforward_degree(*g, *r)?;
            let mut ok = rep.matches && rep.all_targets_tgj.unwrap_or(true) && Q::from_integer(dyck.into()) == rep.count;
            let mut report = json!({
                "report": rep,
                "dyck": dyck,
                "pushforwardDegree": degree.to_string(),
            });
            if *direct {
                let sum = catalan::pushforward_direct_sum(*g, *r, budget)?;
                ok &= sum == Q::from_integer(degree);
                report["directSum"] = json!(format_q(&sum));
            }
            report["ok"] = json!(ok);
            outcome(&report, ok)
        }
        Command::Hurwitz { d, profiles } => {
            let profiles = parse_profiles(profiles)?;
            let h = hurwitz_number(*d, &profiles)?;
            outcome(&json!({ "d": d, "profiles": profiles, "value": format_q(&h) }), true)
        }
        Command::Weight { cover, keep } => {
            let c = read_cover(cover)?;
            let weight = cycles::standard_weight(&c)?;
            let mut report = json!({ "weight": format_q(&weight), "degree": c.degree()? });
            if let Some(k) = keep {
                let kept = parse_labels(k)?;
                let forget: Vec<Label> = c.source.labels().into_iter().filter(|l| !kept.contains(l)).collect();
                let ft = forget_legs(&c.source, &forget)?;
                let m = ft.matrix.mul(&c.cover_matrix())?;
                report["forgottenSource"] = serde_json::to_value(&ft.target)?;
                report["composedMatrix"] = serde_json::to_value(&m)?;
                report["det"] = match m.det() {
                    Ok(d) => json!(d.to_string()),
                    Err(Error::NonSquare { .. }) => Value::Null,
                    Err(e) => return Err(e.into()),
                };
                report["expunged"] = serde_json::to_value(catalan::expunged_set(&c, &kept)?)?;
            }
            outcome(&report, true)
        }
        Command::DtConvert { cover, example } => {
            let phi = match (cover, example) {
                (Some(path), false) => read_cover(path)?,
                (None, true) => dictionary::genus_four_example(),
                _ => return Err(anyhow!("give exactly one of --cover and --example")),
            };
            let ac = dictionary::dt_to_admissible(&phi)?;
            let round_trip = dictionary::forget_markings(&ac.cover)? == phi;
            let report = json!({ "cover": ac, "sourceGenus": ac.source_genus(), "roundTrip": round_trip });
            outcome(&report, round_trip)
        }
        Command::Graphs { g, n, edges } => {
            let labels: Vec<Label> = (1..=*n as Label).collect();
            let graphs = enumerate_stable_graphs(*g, &labels, *edges)?;
            outcome(&json!({ "g": g, "n": n, "edges": edges, "count": graphs.len(), "graphs": graphs }), true)
        }
        Command::Render { cover } => {
            let c = read_cover(cover)?;
            outcome(&json!({ "table": render(&c)? }), true)
        }
    }
}

fn render(c: &GraphCover) -> anyhow::Result<Vec<String>> {
    let s = &c.source.graph;
    let labels = c.source.label_of();
    let tlabels = c.target.label_of();
    let mut lines = vec![format!("{:>6} {:>6} {:>4} {:>4}  flags", "vertex", "image", "d", "rh")];
    for v in s.vertices() {
        let flags: Vec<String> = s
            .flags_at(v)
            .into_iter()
            .map(|x| {
                let what = if s.is_leg(x) { format!("leg {}", labels[x].unwrap_or(0)) } else { format!("to {}", s.root(s.involution(x))) };
                let over = match tlabels[c.flag_map[x]] {
                    Some(l) => format!("leg {l}"),
                    None => format!("flag {}", c.flag_map[x]),
                };
                format!("{what} (w{} over {over})", c.degrees[x])
            })
            .collect();
        lines.push(format!("{v:>6} {:>6} {:>4} {:>4}  {}", c.flag_map[v], c.degrees[v], c.rh_number(v)?, flags.join(", ")));
    }
    Ok(lines)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let budget = cli.budget.map(Budget::new).unwrap_or_default();
    let start = Instant::now();
    match run(&cli, &budget) {
        Ok(mut out) => {
            if cli.timing {
                out.report["seconds"] = json!(start.elapsed().as_secs_f64());
            }
            let text = if cli.pretty { serde_json::to_string_pretty(&out.report) } else { serde_json::to_string(&out.report) };
            let _ = writeln!(std::io::stdout().lock(), "{}", text.expect("report serializes"));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Budget(_)) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
