//! `aztec-comb`: command-line front end to the combing library.
//!
//! Files are read from `--input` (stdin when absent) and written to
//! `--output` (stdout when absent). Exit status is 0 on success, 1 when a
//! check fails or an input is rejected, 2 on usage errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use aztec_comb::comb::{comb, uncomb};
use aztec_comb::enumerate::{enumerate_disjoint, joint_distribution, verify_bijection, Statistic, DEFAULT_CAP};
use aztec_comb::lgv::{delannoy_matrix, det_exact, power_of_two_binomial, verify_reduction};
use aztec_comb::pathfam::{validate_family, BitTriangle, PathFamily};
use aztec_comb::render::{render_family, render_stages, render_tiling_style, Style};
use aztec_comb::sample::sample_family;
use aztec_comb::tiling::{family_to_tiling_with, tiling_to_family_with, Convention, DominoTiling};

#[derive(Parser)]
#[command(name = "aztec-comb", version, about = "Combing bijection for Schröder path families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a random bit triangle (SplitMix64) and print its combed family.
    Sample {
        #[command(flatten)]
        order: Order,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the sampled bit triangle here.
        #[arg(long, value_name = "FILE")]
        bits_output: Option<PathBuf>,
        #[command(flatten)]
        io: OutputOnly,
    },
    /// Bit triangle -> disjoint family.
    Comb(Io),
    /// Disjoint family -> bit triangle.
    Uncomb(Io),
    /// Exhaustively check the bijection for one order.
    Verify {
        #[command(flatten)]
        order: Order,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Determinant of the Delannoy matrix, checked against 2^(n choose 2).
    Det {
        #[command(flatten)]
        order: Order,
    },
    /// Count disjoint families, or tabulate a statistic over them.
    Enumerate {
        #[command(flatten)]
        order: Order,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// One of diagonal, horizontal, column, intercolumn, row, column+intercolumn.
        #[arg(long)]
        stat: Option<String>,
        /// Print every family.
        #[arg(long)]
        list: bool,
    },
    /// Convert between disjoint families and Aztec diamond tilings.
    Tile {
        #[arg(long, value_enum)]
        direction: Direction,
        /// Edge convention, 0 to 3 (white left, right, above, below).
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..4))]
        convention: u8,
        #[command(flatten)]
        io: Io,
    },
    /// SVG of a family or tiling.
    Render {
        #[arg(long, value_enum, default_value_t = StyleArg::Paths)]
        style: StyleArg,
        /// Read a bit triangle and write one picture per combing stage into DIR.
        #[arg(long, value_name = "DIR", conflicts_with = "output")]
        stages: Option<PathBuf>,
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Args)]
struct Order {
    #[arg(value_name = "N", required_unless_present = "n")]
    positional: Option<usize>,
    #[arg(long = "n", value_name = "N", conflicts_with = "positional")]
    n: Option<usize>,
}

impl Order {
    fn get(&self) -> usize {
        self.n.or(self.positional).expect("clap enforces one of the two")
    }
}

#[derive(Args)]
struct Io {
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OutputOnly {
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    ToTiling,
    ToFamily,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Paths,
    Tiling,
    Overlay,
    Dual,
}

impl From<StyleArg> for Style {
    fn from(s: StyleArg) -> Style {
        match s {
            StyleArg::Paths => Style::Paths,
            StyleArg::Tiling => Style::Tiling,
            StyleArg::Overlay => Style::Overlay,
            StyleArg::Dual => Style::Dual,
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn parse<T>(text: &str, what: &str, path: Option<&Path>) -> Result<T>
where
    T: std::str::FromStr,
    T::Err: std::error::Error + Send + Sync + 'static,
{
    let source = path.map_or_else(|| "stdin".to_string(), |p| p.display().to_string());
    text.parse().with_context(|| format!("parsing {what} from {source}"))
}

fn read_family(io: &Io) -> Result<PathFamily> {
    read_family_text(&read_input(io.input.as_deref())?, io)
}

/// Families start with their order line followed by `B:` rows; anything
/// else is read as a tiling.
fn looks_like_family(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.split_whitespace().count() == 1)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sample {
            order,
            seed,
            bits_output,
            io,
        } => {
            let (t, f) = sample_family(order.get(), seed);
            if let Some(p) = bits_output {
                write_output(Some(&p), &t.to_string())?;
            }
            write_output(io.output.as_deref(), &f.to_string())?;
        }
        Command::Comb(io) => {
            let t: BitTriangle = parse(&read_input(io.input.as_deref())?, "bit triangle", io.input.as_deref())?;
            write_output(io.output.as_deref(), &comb(&t).to_string())?;
        }
        Command::Uncomb(io) => {
            let f = read_family(&io)?;
            let t = uncomb(&f).map_err(|e| anyhow::anyhow!("{e:?}: {e}"))?;
            write_output(io.output.as_deref(), &t.to_string())?;
        }
        Command::Verify { order, cap } => {
            let n = order.get();
            let r = verify_bijection(n, cap)?;
            println!(
                "n={n}: {} triangles, {} distinct images, {}/{} disjoint families matched",
                r.triangles, r.distinct_images, r.matched, r.disjoint_families
            );
            for failure in r.failures.iter().take(5) {
                eprintln!("{failure}");
            }
            println!("{}", if r.passed() { "PASS" } else { "FAIL" });
            return Ok(r.passed());
        }
        Command::Det { order } => {
            let n = order.get();
            let det = det_exact(&delannoy_matrix(n));
            let expected = power_of_two_binomial(n);
            let reduction = n == 0 || verify_reduction(n);
            println!("{det}");
            let ok = det == expected && reduction;
            if !ok {
                eprintln!(
                    "expected 2^{} = {expected}; reduction holds: {reduction}",
                    n * n.saturating_sub(1) / 2
                );
            }
            return Ok(ok);
        }
        Command::Enumerate { order, cap, stat, list } => {
            let n = order.get();
            if let Some(name) = stat {
                let Some(s) = Statistic::from_name(&name) else {
                    let names: Vec<_> = Statistic::ALL.iter().map(|s| s.name()).collect();
                    bail!("unknown statistic `{name}`; expected one of {}", names.join(", "));
                };
                print!("{}", joint_distribution(n, s, cap)?);
            } else {
                let fams = enumerate_disjoint(n, cap)?;
                if list {
                    for f in &fams {
                        println!("{f}");
                    }
                }
                println!("{}", fams.len());
            }
        }
        Command::Tile {
            direction,
            convention,
            io,
        } => {
            let conv = Convention::from_index(convention).expect("range checked by clap");
            let text = read_input(io.input.as_deref())?;
            let out = match direction {
                Direction::ToTiling => {
                    let f = read_family_text(&text, &io)?;
                    family_to_tiling_with(&f, conv)?.to_string()
                }
                Direction::ToFamily => {
                    let t: DominoTiling = parse(&text, "tiling", io.input.as_deref())?;
                    tiling_to_family_with(&t, conv)?.to_string()
                }
            };
            write_output(io.output.as_deref(), &out)?;
        }
        Command::Render { style, stages, io } => {
            let text = read_input(io.input.as_deref())?;
            if let Some(dir) = stages {
                let t: BitTriangle = parse(&text, "bit triangle", io.input.as_deref())?;
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (k, svg) in render_stages(&t).iter().enumerate() {
                    write_output(Some(&dir.join(format!("stage-{k:03}.svg"))), svg)?;
                }
                return Ok(true);
            }
            let svg = if looks_like_family(&text) {
                render_family(&read_family_text(&text, &io)?, style.into())?
            } else {
                let t: DominoTiling = parse(&text, "tiling", io.input.as_deref())?;
                render_tiling_style(&t, style.into())?
            };
            write_output(io.output.as_deref(), &svg)?;
        }
    }
    Ok(true)
}

fn read_family_text(text: &str, io: &Io) -> Result<PathFamily> {
    let f: PathFamily = parse(text, "path family", io.input.as_deref())?;
    if let Some(first) = validate_family(&f).first() {
        bail!("invalid family: {first:?}");
    }
    Ok(f)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
