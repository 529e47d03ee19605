use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use fanforge::fan_search::enumerate_sf;
use fanforge::plot::section_svg;
use fanforge::report::{analyze, conjecture, validate_json, Input, Options};
use fanforge::secondary::family_matrices;

/// Complete simplicial fans over a fixed set of rays, exactly.
#[derive(Parser, Debug)]
#[command(name = "fanforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON file with "V" or "Q" (row-major integer matrix); `-` reads stdin
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Inline JSON instead of --input
    #[arg(long, global = true, conflicts_with = "input")]
    matrix: Option<String>,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Skip the pairwise overlap check of the combinatorial search
    #[arg(long, global = true)]
    no_overlap_check: bool,

    /// Degree bound of the fiber-minimum oracle (0 disables it)
    #[arg(long, global = true, default_value_t = 6)]
    fiber_bound: usize,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fan-matrix axioms; print the Gale dual and CF cover
    Validate,
    /// Enumerate all complete simplicial fans combinatorially
    Sf,
    /// Enumerate the projective fans through the Gröbner fan
    Psf,
    /// Run both enumerations and compare them
    Compare,
    /// SVG of the simplex section of the secondary fan (rank 3)
    Plot,
    /// Compare on a member of the deformation family
    Family {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Search for pseudofans that are not fans
    Conjecture,
}

fn read_input(cli: &Cli) -> Result<String> {
    if let Some(m) = &cli.matrix {
        return Ok(m.clone());
    }
    match &cli.input {
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        Some(p) => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())),
        None => bail!("no input: pass --input FILE or --matrix JSON"),
    }
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    match &cli.output {
        Some(p) => fs::write(p, body).with_context(|| format!("cannot write {}", p.display())),
        None => {
            io::stdout().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn options(cli: &Cli, sf: bool, psf: bool) -> Options {
    Options {
        sf,
        psf,
        verify_overlap: !cli.no_overlap_check,
        fiber_bound: cli.fiber_bound,
    }
}

/// Runs the command; `Ok(false)` means some internal cross-check failed.
fn run(cli: &Cli) -> Result<bool> {
    let name = match &cli.command {
        Command::Validate => "validate",
        Command::Sf => "sf",
        Command::Psf => "psf",
        Command::Compare => "compare",
        Command::Plot => "plot",
        Command::Family { .. } => "family",
        Command::Conjecture => "conjecture",
    };
    match &cli.command {
        Command::Validate => {
            let rep = validate_json(&read_input(cli)?)?;
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&rep)? + "\n",
                Format::Text => rep.to_text(),
            };
            emit(cli, &body)?;
            Ok(rep.valid)
        }
        Command::Sf | Command::Psf | Command::Compare | Command::Family { .. } => {
            let (input, family) = match &cli.command {
                Command::Family { p, q } => {
                    let (q_mat, v) = family_matrices(*p, *q)?;
                    (Input { v, q: q_mat }, Some((*p, *q)))
                }
                _ => (Input::parse(&read_input(cli)?)?, None),
            };
            let (sf, psf) = match &cli.command {
                Command::Sf => (true, false),
                Command::Psf => (false, true),
                _ => (true, true),
            };
            let mut rep = analyze(name, &input, options(cli, sf, psf))?;
            rep.family = family;
            let body = match cli.format {
                Format::Json => rep.to_json(),
                Format::Text => rep.to_text(),
            };
            emit(cli, &body)?;
            Ok(rep.all_checks_pass())
        }
        Command::Plot => {
            let input = Input::parse(&read_input(cli)?)?;
            let fans = enumerate_sf(&input.v, !cli.no_overlap_check)?;
            emit(cli, &section_svg(&input.q, &fans)?)?;
            Ok(true)
        }
        Command::Conjecture => {
            let input = Input::parse(&read_input(cli)?)?;
            let rep = conjecture(&input)?;
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&rep)? + "\n",
                Format::Text => {
                    let mut s = format!(
                        "pseudofans: {}\nfans: {}\ncounterexamples: {}\n",
                        rep.pseudofans,
                        rep.fans,
                        rep.counterexamples.len()
                    );
                    for c in &rep.counterexamples {
                        s += &serde_json::to_string(c)?;
                        s.push('\n');
                    }
                    s
                }
            };
            emit(cli, &body)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = run(&cli);
    eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("some checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
