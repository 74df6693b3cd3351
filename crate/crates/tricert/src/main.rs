use std::fs;
use std::io::Write as _;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tricert::batch::{bench_graph, par_map, time_certify, Algo};
use tricert::cactus::{blob_certificates, blob_graphs, build_cactus, verify_cactus, CactusError};
use tricert::cert::parse_certificates;
use tricert::chains::analyze;
use tricert::graph::min_degree_screen;
use tricert::greedy::run_greedy_counted;
use tricert::linear::{run_all, run_with_root};
use tricert::oracle::{random_2ec, random_3ec};
use tricert::verify::verify_certificates;
use tricert::{load_graph, Certificate, MultiGraph};

#[global_allocator]
static ALLOC: tricert::hugealloc::HugePages = tricert::hugealloc::HugePages;

const EXIT_NOT_3EC: u8 = 2;
const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "tricert", version, about = "Certifying 3-edge-connectivity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Linear,
    Greedy,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Linear => Algo::Linear,
            AlgoArg::Greedy => Algo::Greedy,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// 3-edge-connected, grown by Mader operations
    ThreeEc,
    /// 2-edge-connected with 2-edge-cuts
    TwoEc,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide 3-edge-connectivity and write a certificate
    Certify {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "linear")]
        algo: AlgoArg,
        /// Certificate file (default: stdout)
        #[arg(short)]
        o: Option<PathBuf>,
        /// DFS root
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Keep going after the first cut and list one per cut group
        #[arg(long)]
        all_cuts: bool,
    },
    /// Check a certificate against a graph
    Verify { graph: PathBuf, cert: PathBuf },
    /// Print the chain decomposition
    Chains {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Build and check the cactus of all 2-edge-cuts
    Cactus {
        graph: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
        /// Write every blob's contracted graph and certificate here
        #[arg(long)]
        certs: Option<PathBuf>,
    },
    /// Print the 3-edge-connected components, one per line
    Components { graph: PathBuf },
    /// Emit a random graph
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "three-ec")]
        kind: Kind,
    },
    /// CSV of edge count against certification time
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [10_000usize, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, value_enum)]
        algo: Option<AlgoArg>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Fail {
    Data(String),
    Io(String),
}

fn read_graph(p: &Path) -> Result<MultiGraph, Fail> {
    let text = fs::read_to_string(p).map_err(|e| Fail::Io(format!("{}: {e}", p.display())))?;
    load_graph(&text).map_err(|e| Fail::Data(format!("{}: {e}", p.display())))
}

fn emit(o: Option<&Path>, text: &str) -> Result<(), Fail> {
    match o {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Fail::Io(e.to_string()))
        }
    }
}

fn certify(g: &MultiGraph, algo: Algo, root: usize, all_cuts: bool) -> Vec<Certificate> {
    if all_cuts {
        if let Some(c) = min_degree_screen(g) {
            return vec![c];
        }
        return match run_all(g, root) {
            Err(c) => vec![c],
            Ok(ap) => match ap.certificate() {
                Some(c) => vec![c],
                None => ap.cuts(),
            },
        };
    }
    let c = match algo {
        Algo::Linear => run_with_root(g, root),
        Algo::Greedy => run_greedy_counted(g, root).certificate,
    };
    vec![c]
}

fn run(cmd: Cmd) -> Result<u8, Fail> {
    match cmd {
        Cmd::Certify { graph, algo, o, root, all_cuts } => {
            let g = read_graph(&graph)?;
            if root >= g.n().max(1) {
                return Err(Fail::Data(format!("root {root} out of range")));
            }
            let certs = certify(&g, algo.into(), root, all_cuts);
            let text: String = certs.iter().map(|c| c.to_text()).collect();
            emit(o.as_deref(), &text)?;
            if certs[0].is_mader() {
                eprintln!("3-edge-connected");
                Ok(0)
            } else {
                eprintln!("not 3-edge-connected");
                Ok(EXIT_NOT_3EC)
            }
        }
        Cmd::Verify { graph, cert } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&cert).map_err(|e| Fail::Io(format!("{}: {e}", cert.display())))?;
            let certs = parse_certificates(&text).map_err(|e| Fail::Data(format!("{}: {e}", cert.display())))?;
            match verify_certificates(&g, &certs) {
                Ok(()) => {
                    println!("VALID");
                    Ok(0)
                }
                Err(r) => {
                    println!("INVALID {}", r.check.label());
                    eprintln!("{r}");
                    Ok(EXIT_INVALID)
                }
            }
        }
        Cmd::Chains { graph, root } => {
            let g = read_graph(&graph)?;
            if root >= g.n().max(1) {
                return Err(Fail::Data(format!("root {root} out of range")));
            }
            if g.n() == 0 {
                emit(None, &Certificate::Disconnected(0).to_text())?;
                return Ok(EXIT_NOT_3EC);
            }
            match analyze(&g, root) {
                Ok(cd) => {
                    emit(None, &cd.to_text())?;
                    Ok(0)
                }
                Err(c) => {
                    eprintln!("not 2-edge-connected");
                    emit(None, &c.to_text())?;
                    Ok(EXIT_NOT_3EC)
                }
            }
        }
        Cmd::Cactus { graph, o, certs } => {
            let g = read_graph(&graph)?;
            let cx = match build_cactus(&g) {
                Ok(cx) => cx,
                Err(CactusError::NotTwoEdgeConnected(c)) => {
                    eprintln!("not 2-edge-connected");
                    emit(None, &c.to_text())?;
                    return Ok(EXIT_NOT_3EC);
                }
            };
            let bc = blob_certificates(&g, &cx);
            if let Err(r) = verify_cactus(&g, &cx, &bc) {
                eprintln!("cactus failed its own check: {r}");
                return Ok(EXIT_INTERNAL);
            }
            emit(o.as_deref(), &cx.to_text())?;
            if let Some(dir) = certs {
                fs::create_dir_all(&dir).map_err(|e| Fail::Io(format!("{}: {e}", dir.display())))?;
                for (b, ((h, _), c)) in blob_graphs(&g, &cx).iter().zip(&bc).enumerate() {
                    if let Some(c) = c {
                        emit(Some(&dir.join(format!("blob_{b}.graph"))), &h.to_text())?;
                        emit(Some(&dir.join(format!("blob_{b}.cert"))), &c.to_text())?;
                    }
                }
            }
            eprintln!("{} blobs, {} cycles", cx.blobs.len(), cx.cycles);
            Ok(if cx.cycles == 0 { 0 } else { EXIT_NOT_3EC })
        }
        Cmd::Components { graph } => {
            let g = read_graph(&graph)?;
            match build_cactus(&g) {
                Ok(cx) => {
                    let mut text = String::new();
                    for vs in &cx.blobs {
                        let line: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                        text.push_str(&line.join(" "));
                        text.push('\n');
                    }
                    emit(None, &text)?;
                    Ok(if cx.blobs.len() == 1 { 0 } else { EXIT_NOT_3EC })
                }
                Err(CactusError::NotTwoEdgeConnected(c)) => {
                    eprintln!("not 2-edge-connected");
                    emit(None, &c.to_text())?;
                    Ok(EXIT_NOT_3EC)
                }
            }
        }
        Cmd::Gen { n, seed, kind } => {
            let g = match kind {
                Kind::ThreeEc if n >= 2 => random_3ec(n, seed),
                Kind::TwoEc if n >= 3 => random_2ec(n, seed),
                _ => return Err(Fail::Data(format!("n = {n} is too small for this kind"))),
            };
            emit(None, &g.to_text())?;
            Ok(0)
        }
        Cmd::Bench { sizes, algo, reps, seed } => {
            let algos: Vec<Algo> = match algo {
                Some(a) => vec![a.into()],
                None => vec![Algo::Linear, Algo::Greedy],
            };
            // graphs are built across cores, timings taken one at a time
            let graphs = par_map(&sizes, |&m| bench_graph(m, seed));
            let mut text = String::from("algo,n,m,seconds\n");
            for g in &graphs {
                for &a in &algos {
                    let t = time_certify(g, a, reps);
                    let name = if a == Algo::Linear { "linear" } else { "greedy" };
                    text.push_str(&format!("{name},{},{},{:.6}\n", g.n(), g.m(), t.as_secs_f64()));
                }
            }
            emit(None, &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match panic::catch_unwind(|| run(cli.cmd)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(Fail::Data(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DATA)
        }
        Ok(Err(Fail::Io(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}
