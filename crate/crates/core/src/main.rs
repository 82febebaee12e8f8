use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rainbow_forge::badge::{badge_paths, make_badge, sharpness_instance, sharpness_strip, Badge, Multigraph, Origamistrip};
use rainbow_forge::engine::{rainbow_aap_oracle, rainbow_aap_or_badge_with, Decision, EngineOptions, DEFAULT_BUDGET};
use rainbow_forge::explore::{self, ExplorerJob, Mode, Statement};
use rainbow_forge::gen::{random_bipartite_family, random_matching_family, rng};
use rainbow_forge::graph::{ColorFamily, Vertex};
use rainbow_forge::io::Instance;
use rainbow_forge::latin::LatinSquare;
use rainbow_forge::solver::{
    rainbow_matching_oracle, solve_cooperative_with, solve_main_with, verify_witness, SolveOptions, Variant,
};
use rainbow_forge::Error;

const EXIT_NONE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "rainbow-forge", version, about = "Rainbow matchings, badges and rainbow augmenting paths")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Search node budget (default from RAINBOW_FORGE_BUDGET, else 10^7).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[command(flatten)]
        common: Common,
    },
    /// Solve an instance.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "main")]
        mode: SolveMode,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        t: usize,
        /// Cooperative statement: 3n-2+t or 3n-3+t colors.
        #[arg(long, value_enum, default_value = "three-n-minus3")]
        variant: VariantArg,
        /// Re-check the answer with the exhaustive oracle.
        #[arg(long)]
        verify: bool,
        /// Include the solver trace in the report.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check a witness file against an instance.
    Verify {
        instance: PathBuf,
        witness: PathBuf,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Exhaustive search for a rainbow matching of size n.
    Oracle {
        instance: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Search for families violating a statement; writes JSON lines.
    Explore {
        #[arg(long)]
        statement: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long)]
        bipartite: bool,
        /// Enumerate all families on this many vertices up to isomorphism.
        #[arg(long)]
        exhaustive_vertices: Option<u32>,
        /// Otherwise sample this many random families.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Vertex count for random families.
        #[arg(long)]
        vertices: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The two paths of one strip of weight n, each repeated n times.
    Origamistrip {
        #[arg(long)]
        n: usize,
    },
    /// Badge over a host given as "xy:3,yz:2" (edge name, weight).
    Badge {
        #[arg(long)]
        host: String,
    },
    /// 2n-1 size-n matchings with no rainbow matching (even n).
    Sharpness {
        #[arg(long)]
        n: usize,
    },
    /// Random size-n matchings.
    Random {
        #[arg(long)]
        n: usize,
        /// Number of colors (default 3n-3).
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long)]
        vertices: Option<u32>,
        #[arg(long)]
        bipartite: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Latin square rows separated by '/', e.g. "123/231/312".
    Latin {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        square: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Main,
    Cooperative,
    AapEngine,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "three-n-minus2", alias = "3n-2")]
    ThreeNMinus2,
    #[value(name = "three-n-minus3", alias = "3n-3")]
    ThreeNMinus3,
}

fn budget(common: &Common) -> u64 {
    common
        .budget
        .or_else(|| std::env::var("RAINBOW_FORGE_BUDGET").ok().and_then(|s| s.trim().parse().ok()))
        .unwrap_or(DEFAULT_BUDGET)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

fn read_instance(p: &PathBuf) -> Result<Instance, Error> {
    Instance::parse(&std::fs::read_to_string(p)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Error::BudgetExceeded(b)) => {
            eprintln!("inconclusive: search budget of {b} nodes exhausted");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Gen { kind, common } => {
            let inst = generate(kind)?;
            emit(&common.out, &inst.to_json()?)?;
            Ok(0)
        }
        Cmd::Solve { instance, mode, n, t, variant, verify, trace, common } => {
            let inst = read_instance(&instance)?;
            let budget = budget(&common);
            match mode {
                SolveMode::AapEngine => solve_engine(&inst, verify, &common, budget),
                SolveMode::Main | SolveMode::Cooperative => {
                    let opts = SolveOptions { budget, ..SolveOptions::default() };
                    let (w, report, n) = match mode {
                        SolveMode::Main => {
                            let n = n.unwrap_or((inst.family.len() + 3) / 3);
                            let (w, r) = solve_main_with(&inst.family, n, opts)?;
                            (w, r, n)
                        }
                        _ => {
                            let n = n.ok_or_else(|| Error::InvalidParameter("cooperative mode needs --n".into()))?;
                            let v = match variant {
                                VariantArg::ThreeNMinus2 => Variant::ThreeNMinus2,
                                VariantArg::ThreeNMinus3 => Variant::ThreeNMinus3,
                            };
                            let (w, r) = solve_cooperative_with(&inst.family, t, n, v, opts)?;
                            (w, r, n)
                        }
                    };
                    let mut v = inst.report_json(Some(&w), &report, trace);
                    if verify {
                        let ok = verify_witness(&inst.family, &w) && w.len() == n;
                        let oracle = rainbow_matching_oracle(&inst.family, n, budget)?.is_some();
                        v["verified"] = json!(ok && oracle);
                        if !(ok && oracle) {
                            emit(&common.out, &pretty(&v))?;
                            return Err(Error::Stalled("witness failed verification".into()));
                        }
                    }
                    emit(&common.out, &pretty(&v))?;
                    Ok(0)
                }
            }
        }
        Cmd::Verify { instance, witness, n } => {
            let inst = read_instance(&instance)?;
            let raw: Value = serde_json::from_str(&std::fs::read_to_string(witness)?)?;
            let raw = raw.get("witness").cloned().unwrap_or(raw);
            let w = inst.parse_witness(&raw)?;
            let ok = verify_witness(&inst.family, &w) && n.is_none_or(|n| w.len() == n);
            println!("{}", json!({"valid": ok, "size": w.len()}));
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Oracle { instance, n, common } => {
            let inst = read_instance(&instance)?;
            match rainbow_matching_oracle(&inst.family, n, budget(&common))? {
                Some(w) => {
                    emit(&common.out, &pretty(&json!({"exists": true, "witness": inst.witness_json(&w)})))?;
                    Ok(0)
                }
                None => {
                    emit(&common.out, &pretty(&json!({"exists": false})))?;
                    Ok(EXIT_NONE)
                }
            }
        }
        Cmd::Explore { statement, n, t, bipartite, exhaustive_vertices, count, vertices, seed, common } => {
            let statement = Statement::parse(&statement)?;
            let mode = match exhaustive_vertices {
                Some(v) => Mode::Exhaustive { vertices: v },
                None => Mode::Random { vertices: vertices.unwrap_or(2 * n as u32 + 2), count, seed },
            };
            let job = ExplorerJob { statement, n, t, bipartite, mode, budget: budget(&common) };
            let report = explore::run(&job)?;
            emit(&common.out, &report.to_json_lines())?;
            Ok(0)
        }
    }
}

fn solve_engine(inst: &Instance, verify: bool, common: &Common, budget: u64) -> Result<u8, Error> {
    let f = inst
        .matching
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("aap-engine mode needs a \"matching\" field".into()))?;
    let (d, stats) = rainbow_aap_or_badge_with(f, &inst.family, EngineOptions { budget })?;
    let mut v = json!({"vertices": inst.labels, "decision": d, "stats": stats});
    if verify {
        let oracle = rainbow_aap_oracle(f, &inst.family, budget)?.is_some();
        let ok = oracle == d.is_witness();
        v["verified"] = json!(ok);
        if !ok {
            emit(&common.out, &pretty(&v))?;
            return Err(Error::Stalled("oracle disagrees with the engine".into()));
        }
    }
    emit(&common.out, &pretty(&v))?;
    Ok(match d {
        Decision::Witness(_) => 0,
        Decision::Certificate(_) => EXIT_NONE,
    })
}

fn strip_labels(os: &Origamistrip, prefix: &str, labels: &mut BTreeMap<Vertex, String>) {
    for i in 1..=os.weight() {
        labels.insert(os.u(i), format!("{prefix}u{i}"));
        labels.insert(os.v(i), format!("{prefix}v{i}"));
    }
}

fn badge_instance(b: &Badge, mut labels: BTreeMap<Vertex, String>) -> Result<Instance, Error> {
    let top = b.vertices().iter().map(|v| v.0 + 1).max().unwrap_or(0);
    let labels = (0..top).map(|i| labels.remove(&Vertex(i)).unwrap_or_else(|| i.to_string())).collect();
    Instance::with_labels(labels, badge_paths(b), Some(b.skeleton()))
}

fn generate(kind: GenKind) -> Result<Instance, Error> {
    match kind {
        GenKind::Origamistrip { n } => {
            if n == 0 {
                return Err(Error::InvalidParameter("strip weight must be ≥ 1".into()));
            }
            let os = sharpness_strip(n + 1);
            let mut labels = BTreeMap::from([(os.x(), "x".to_string()), (os.y(), "y".to_string())]);
            strip_labels(&os, "", &mut labels);
            badge_instance(&Badge::from_strips(vec![os])?, labels)
        }
        GenKind::Badge { host } => {
            let mut names: Vec<String> = Vec::new();
            let mut edges = Vec::new();
            let mut weights = Vec::new();
            let id = |name: String, names: &mut Vec<String>| match names.iter().position(|x| *x == name) {
                Some(i) => Vertex(i as u32),
                None => {
                    names.push(name);
                    Vertex(names.len() as u32 - 1)
                }
            };
            for part in host.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (e, w) = part.split_once(':').ok_or_else(|| Error::Parse(format!("host edge {part:?} needs a weight")))?;
                let chars: Vec<char> = e.chars().collect();
                if chars.len() != 2 {
                    return Err(Error::Parse(format!("host edge {e:?} must name two vertices")));
                }
                let a = id(chars[0].to_string(), &mut names);
                let b = id(chars[1].to_string(), &mut names);
                edges.push((a, b));
                weights.push(w.parse::<usize>().map_err(|_| Error::Parse(format!("bad weight {w:?}")))?);
            }
            let host_graph = Multigraph { vertices: (0..names.len() as u32).map(Vertex).collect(), edges: edges.clone() };
            let b = make_badge(&host_graph, &weights, None)?;
            let mut labels: BTreeMap<Vertex, String> = names.iter().enumerate().map(|(i, s)| (Vertex(i as u32), s.clone())).collect();
            let mut seen: BTreeMap<String, usize> = BTreeMap::new();
            for (os, (a, b)) in b.strips().iter().zip(&edges) {
                let key = format!("{}{}", names[a.0 as usize], names[b.0 as usize]);
                let k = seen.entry(key.clone()).or_default();
                *k += 1;
                let prefix = if *k == 1 { format!("{key}.") } else { format!("{key}{k}.") };
                strip_labels(os, &prefix, &mut labels);
            }
            badge_instance(&b, labels)
        }
        GenKind::Sharpness { n } => {
            let fam = sharpness_instance(n)?;
            let os = sharpness_strip(n);
            let mut labels = BTreeMap::from([(os.x(), "x".to_string()), (os.y(), "y".to_string())]);
            strip_labels(&os, "", &mut labels);
            let labels = (0..2 * n as u32).map(|i| labels[&Vertex(i)].clone()).collect();
            Instance::with_labels(labels, fam, None)
        }
        GenKind::Random { n, colors, vertices, bipartite, seed } => {
            let m = colors.unwrap_or((3 * n).saturating_sub(3).max(1));
            let mut r = rng(seed);
            let fam: ColorFamily = if bipartite {
                random_bipartite_family(&mut r, m, vertices.map_or(n as u32 + 1, |v| v / 2), n)?
            } else {
                random_matching_family(&mut r, m, vertices.unwrap_or(2 * n as u32 + 2), n)?
            };
            Ok(Instance::from_family(fam, None))
        }
        GenKind::Latin { order, square } => {
            let sq = LatinSquare::parse(&square)?;
            if sq.order() != order {
                return Err(Error::InvalidParameter(format!("square has order {}, not {order}", sq.order())));
            }
            Ok(sq.to_instance())
        }
    }
}
