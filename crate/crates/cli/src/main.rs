use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dynmono::format::{parse_instance, InstanceFile};
use dynmono::generate::{generate_cubic, generate_interval_instance};
use dynmono::oracle::{brute_force_dyn, DEFAULT_BUDGET};
use dynmono::reduction::vc_reduction;
use dynmono::{
    activation_order, compute_cut_structure, compute_decomposition, hull, is_dynamic_monopoly,
    normalize, solve, EndKind, Error, Graph, ThresholdedInstance, VertexSet,
};

#[derive(Parser)]
#[command(
    name = "dynmono",
    version,
    about = "Minimum dynamic monopolies of thresholded graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum dynamic monopoly (interval files: exact DP; graph files: brute force)
    Solve {
        file: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Minimum dynamic monopoly by exhaustive search
    Oracle {
        file: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Hull of a seed set and the order in which it activates
    Hull {
        file: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        seed: Vec<String>,
    },
    /// Whether a set is a dynamic monopoly
    Verify {
        file: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
    },
    /// Cut sequence and layer decomposition of an interval file
    Decompose {
        file: String,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Random instance file
    Generate {
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Chordal instance whose minimum monopoly equals the vertex cover number of a cubic graph
    Reduce { file: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Interval,
    Cubic,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Input(_) => 2,
            Error::BoundViolation { .. } | Error::Constraint(_) => 3,
            Error::Budget { .. } | Error::TooLarge { .. } => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn read_source(path: &str) -> Result<String, Failure> {
    let result = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    result.map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {path}: {e}"),
    })
}

fn load(path: &str) -> Result<(InstanceFile, ThresholdedInstance), Failure> {
    let file = parse_instance(&read_source(path)?)?;
    let (instance, _) = file.to_instance()?;
    Ok((file, instance))
}

fn non_empty(list: Vec<String>) -> Vec<String> {
    list.into_iter().filter(|s| !s.is_empty()).collect()
}

fn names(graph: &Graph, set: &VertexSet) -> String {
    graph.names_of(set).join(" ")
}

fn report(graph: &Graph, value: usize, set: &VertexSet) -> String {
    if set.is_empty() {
        format!("dyn {value}\nmonopoly\n")
    } else {
        format!("dyn {value}\nmonopoly {}\n", names(graph, set))
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Solve { file, budget } => {
            let (parsed, instance) = load(&file)?;
            let (value, set) = match parsed.to_instance()?.1 {
                Some(rep) => {
                    let sol = solve(&instance, &rep)?;
                    (sol.dyn_value, sol.monopoly)
                }
                None => brute_force_dyn(&instance, budget)?,
            };
            Ok((report(instance.graph(), value, &set), 0))
        }
        Command::Oracle { file, budget } => {
            let (_, instance) = load(&file)?;
            let (value, set) = brute_force_dyn(&instance, budget)?;
            Ok((report(instance.graph(), value, &set), 0))
        }
        Command::Hull { file, seed } => {
            let (_, instance) = load(&file)?;
            let g = instance.graph();
            let seed = g.resolve(&non_empty(seed))?;
            let members = hull(&instance, &seed)?;
            let mut out = format!("hull {}\n", members.len());
            for v in members.iter() {
                let _ = writeln!(out, "{}", g.name(v));
            }
            out.push_str("order\n");
            for v in activation_order(&instance, &seed)? {
                let _ = writeln!(out, "{}", g.name(v));
            }
            Ok((out, 0))
        }
        Command::Verify { file, set } => {
            let (_, instance) = load(&file)?;
            let set = instance.graph().resolve(&non_empty(set))?;
            if is_dynamic_monopoly(&instance, &set)? {
                Ok(("yes\n".into(), 0))
            } else {
                Ok(("no\n".into(), 1))
            }
        }
        Command::Decompose { file, t } => decompose(&file, t),
        Command::Generate { kind, n, seed, t } => {
            let text = match kind {
                Kind::Interval => {
                    let (instance, rep) = generate_interval_instance(n, t.unwrap_or(2), seed)?;
                    InstanceFile::from_interval(&instance, &rep)?.emit()
                }
                Kind::Cubic => {
                    let g = generate_cubic(n, seed)?;
                    let tau = t.unwrap_or(2) as i64;
                    let instance = ThresholdedInstance::new(g, vec![tau; n], t)?;
                    InstanceFile::from_graph(&instance, t).emit()
                }
            };
            Ok((text, 0))
        }
        Command::Reduce { file } => {
            let (_, instance) = load(&file)?;
            let out = vc_reduction(instance.graph())?;
            let g = out.instance.graph();
            let text = InstanceFile::from_graph(&out.instance, None).emit();
            let (header, body) = text.split_once('\n').expect("header line");
            let mut result = format!("{header}\n");
            for ((u, v), gadget) in &out.gadget_map {
                let _ = writeln!(
                    result,
                    "# gadget {} {}: {}",
                    g.name(*u),
                    g.name(*v),
                    names(g, gadget)
                );
            }
            result.push_str(body);
            Ok((result, 0))
        }
    }
}

fn decompose(path: &str, t: Option<usize>) -> Outcome {
    let (parsed, instance) = load(path)?;
    let Some(rep) = parsed.to_instance()?.1 else {
        return Err(Failure {
            code: 3,
            message: "decompose needs an interval instance".into(),
        });
    };
    let g = instance.graph();
    let t = t.unwrap_or(instance.bound());
    let nrep = normalize(&rep);
    let cuts = compute_cut_structure(&nrep);
    let mut out = String::from("endpoints");
    for &(v, kind) in nrep.endpoints() {
        let side = match kind {
            EndKind::Left => 'L',
            EndKind::Right => 'R',
        };
        let _ = write!(out, " {}:{side}", g.name(v));
    }
    out.push('\n');
    let counts: Vec<String> = cuts.counts.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "counts {}", counts.join(" "));
    let _ = writeln!(out, "t {t}");
    let parts = g.components();
    for (c, part) in parts.iter().enumerate() {
        let indent = if parts.len() > 1 {
            let _ = writeln!(out, "component {}", c + 1);
            "  "
        } else {
            ""
        };
        let sub = normalize(&rep.restrict(part));
        let dec = compute_decomposition(&compute_cut_structure(&sub), t);
        let global =
            |set: &VertexSet| -> VertexSet { set.iter().map(|v| part.as_slice()[v]).collect() };
        let ends: Vec<String> = dec.layer_ends().iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{indent}ends {}", ends.join(" "));
        for (i, layer) in dec.layers.iter().enumerate() {
            let _ = writeln!(out, "{indent}layer {}", i + 1);
            let _ = writeln!(out, "{indent}  prefix {}", names(g, &global(&layer.prefix)));
            let _ = writeln!(
                out,
                "{indent}  boundary {}",
                names(g, &global(&layer.boundary))
            );
            let _ = writeln!(out, "{indent}  slice {}", names(g, &global(&layer.slice)));
        }
    }
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
