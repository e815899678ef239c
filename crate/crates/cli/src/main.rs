//! `gauss`: decide whether double occurrence words are Gauss codes and draw
//! their plane embeddings.

mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand};
use gauss_core::orient::{Diagnostics, Flips};
use gauss_core::{
    embed_paragraph, enumerate_embeddings, oracle_min_genus, parse_paragraph, premap_from_paragraph, random_gauss,
    EmbedResult, MapDoc, Paragraph, RecognizeError,
};
use serde::Serialize;

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "gauss", version, about = "Recognize Gauss codes and construct their plane embeddings")]
struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a paragraph is a Gauss paragraph (exit 0 yes, 1 no, 2 bad input).
    Check {
        /// Words separated by `/`, characters by spaces or commas; `-` or
        /// nothing reads standard input.
        input: Option<String>,
        /// Print a JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Construct a plane embedding.
    #[command(group(ArgGroup::new("format").args(["json", "dot", "svg"])))]
    Embed {
        input: Option<String>,
        /// Rotation system of the curve map (default).
        #[arg(long)]
        json: bool,
        /// Seifert map with edge directions, in Graphviz format.
        #[arg(long)]
        dot: bool,
        /// Drawing of the curves.
        #[arg(long)]
        svg: bool,
        /// Free components to flip, as `vertex:component,...`.
        #[arg(long)]
        flips: Option<String>,
        /// Reverse every vertex rotation.
        #[arg(long)]
        mirror: bool,
        /// Write to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every plane embedding.
    Enumerate {
        input: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search over all vertex rotations (at most 20 characters).
    Oracle {
        input: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random Gauss code with `n` characters.
    Gen {
        n: usize,
        /// Random seed; defaults to $GAUSS_SEED or 1.
        seed: Option<u64>,
    },
    /// Time the embedding of generated codes of growing size.
    Bench {
        /// Sizes as `1k..16k` (doubling) or a comma separated list.
        #[arg(default_value = "1k..16k")]
        sizes: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Runs per size; the fastest is reported.
        #[arg(long, default_value_t = 5)]
        repeat: usize,
    },
}

/// Input that could not be read or parsed; exits with status 2.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

#[derive(Serialize)]
struct Report {
    input: String,
    verdict: &'static str,
    genus: usize,
    diagnostics: Diagnostics,
    embedding: Option<MapDoc>,
    timing_ms: f64,
}

fn read_paragraph(input: Option<String>) -> Result<Paragraph> {
    let text = match input.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            s
        }
        Some(s) => s.to_string(),
    };
    parse_paragraph(&text).map_err(|e| InputError(e.to_string()).into())
}

fn seed_or_env(seed: Option<u64>) -> Result<u64> {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var("GAUSS_SEED") {
            Ok(v) => v.trim().parse().map_err(|_| InputError(format!("GAUSS_SEED is not an integer: '{v}'")))?,
            Err(_) => DEFAULT_SEED,
        },
    };
    log::info!("seed {seed}");
    Ok(seed)
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn reversed_crossings(r: &EmbedResult) -> Vec<String> {
    let labels = r.premap.labels().unwrap_or_default();
    r.flips.iter().enumerate().filter(|(_, &f)| f).map(|(v, _)| labels[v].to_string()).collect()
}

fn cmd_check(input: Option<String>, json: bool) -> Result<ExitCode> {
    let p = read_paragraph(input)?;
    let start = Instant::now();
    let r = embed_paragraph(&p, &Flips::none());
    let elapsed = start.elapsed();
    log::info!("embedded {} characters in {elapsed:?}", p.alphabet().len());
    if json {
        let report = Report {
            input: p.to_string(),
            verdict: if r.is_plane { "gauss" } else { "not-gauss" },
            genus: r.genus,
            embedding: r.is_plane.then(|| r.medial.to_doc(Some(r.premap.sign()))),
            diagnostics: r.diagnostics,
            timing_ms: elapsed.as_secs_f64() * 1e3,
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else if r.is_plane {
        println!("Gauss paragraph");
    } else {
        println!(
            "not a Gauss paragraph (genus {}, Seifert map bipartite: {}, all S_v planar: {})",
            r.genus, r.diagnostics.bipartite, r.diagnostics.sv_planar
        );
    }
    Ok(if r.is_plane { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_embed(
    input: Option<String>,
    dot: bool,
    svg: bool,
    flips: Option<String>,
    mirror: bool,
    output: Option<PathBuf>,
) -> Result<ExitCode> {
    let p = read_paragraph(input)?;
    let flips = match flips {
        Some(f) => Flips::parse(&f).map_err(InputError)?,
        None => Flips::none(),
    };
    let mut r = embed_paragraph(&p, &flips);
    if !r.is_plane {
        eprintln!(
            "not a Gauss paragraph: the constructed embedding has genus {} (Seifert map bipartite: {}, all S_v planar: {})",
            r.genus, r.diagnostics.bipartite, r.diagnostics.sv_planar
        );
        return Ok(ExitCode::from(1));
    }
    if mirror {
        r = r.mirrored();
    }
    let text = if dot {
        let names: Vec<String> = r
            .premap
            .seifert_cycles()
            .iter()
            .map(|c| {
                let t = c.trace(&r.premap).unwrap_or_default();
                format!("{{{}}}", t.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            })
            .collect();
        r.seifert.map.to_dot(Some(&r.orientation), Some(&names))
    } else if svg {
        let labels: Vec<String> = p.alphabet().iter().map(|c| c.to_string()).collect();
        render::svg(&r.medial, r.premap.sign(), &labels)
    } else {
        r.medial.to_json(Some(r.premap.sign())) + "\n"
    };
    emit(&text, output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct EnumeratedEmbedding {
    reversed_crossings: Vec<String>,
    embedding: MapDoc,
}

fn cmd_enumerate(input: Option<String>, json: bool) -> Result<ExitCode> {
    let p = read_paragraph(input)?;
    let all = match enumerate_embeddings(&p) {
        Ok(all) => all,
        Err(RecognizeError::NotRealizable { genus, .. }) => {
            eprintln!("not a Gauss paragraph (genus {genus})");
            return Ok(ExitCode::from(1));
        }
        Err(e) => bail!(e),
    };
    if json {
        let list: Vec<EnumeratedEmbedding> = all
            .iter()
            .map(|r| EnumeratedEmbedding {
                reversed_crossings: reversed_crossings(r),
                embedding: r.medial.to_doc(Some(r.premap.sign())),
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&list)?);
    } else {
        println!("{} plane embeddings (mirror images excluded)", all.len());
        for (i, r) in all.iter().enumerate() {
            println!("{}: reversed crossings [{}]", i + 1, reversed_crossings(r).join(" "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(input: Option<String>, json: bool) -> Result<ExitCode> {
    let p = read_paragraph(input)?;
    let o = oracle_min_genus(&premap_from_paragraph(&p)).map_err(|e| InputError(e.to_string()))?;
    if json {
        println!("{}", serde_json::to_string_pretty(&o)?);
    } else {
        println!("min_genus {}", o.min_genus);
        println!("plane_count {}", o.plane_count);
        println!("representatives {}", 1u64 << o.vertices);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(n: usize, seed: Option<u64>) -> Result<ExitCode> {
    if n == 0 {
        return Err(InputError("n must be at least 1".into()).into());
    }
    println!("{}", random_gauss(n, seed_or_env(seed)?));
    Ok(ExitCode::SUCCESS)
}

fn parse_size(s: &str) -> Result<usize> {
    let s = s.trim();
    let (digits, factor) = match s.strip_suffix(['k', 'K']) {
        Some(d) => (d, 1000),
        None => (s, 1),
    };
    let n: usize = digits.parse().map_err(|_| InputError(format!("bad size '{s}'")))?;
    Ok(n * factor)
}

fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let sizes = if let Some((a, b)) = text.split_once("..") {
        let (mut n, end) = (parse_size(a)?, parse_size(b)?);
        if n == 0 {
            return Err(InputError("sizes must be positive".into()).into());
        }
        let mut v = Vec::new();
        while n <= end {
            v.push(n);
            n *= 2;
        }
        v
    } else {
        text.split(',').map(parse_size).collect::<Result<Vec<_>>>()?
    };
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(InputError(format!("no usable sizes in '{text}'")).into());
    }
    Ok(sizes)
}

fn cmd_bench(sizes: &str, seed: Option<u64>, repeat: usize) -> Result<ExitCode> {
    let sizes = parse_sizes(sizes)?;
    let seed = seed_or_env(seed)?;
    println!("{:>10} {:>12} {:>8}", "characters", "time_ms", "ratio");
    let mut last: Option<Duration> = None;
    for n in sizes {
        let p = random_gauss(n, seed);
        let mut best = Duration::MAX;
        for _ in 0..repeat.max(1) {
            let t = Instant::now();
            let r = embed_paragraph(&p, &Flips::none());
            best = best.min(t.elapsed());
            if !r.is_plane {
                bail!("generated code of size {n} was rejected");
            }
        }
        let ratio = last.map_or("-".to_string(), |l| format!("{:.2}", best.as_secs_f64() / l.as_secs_f64()));
        println!("{n:>10} {:>12.3} {ratio:>8}", best.as_secs_f64() * 1e3);
        last = Some(best);
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { input, json } => cmd_check(input, json),
        Command::Embed { input, json: _, dot, svg, flips, mirror, output } => {
            cmd_embed(input, dot, svg, flips, mirror, output)
        }
        Command::Enumerate { input, json } => cmd_enumerate(input, json),
        Command::Oracle { input, json } => cmd_oracle(input, json),
        Command::Gen { n, seed } => cmd_gen(n, seed),
        Command::Bench { sizes, seed, repeat } => cmd_bench(&sizes, seed, repeat),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            if e.downcast_ref::<InputError>().is_some() {
                eprintln!("error: {e}");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
