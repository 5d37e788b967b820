use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

/// Dickson invariants, Steenrod powers, polarised systems of parameters and
/// truncated depth diagnostics for mod-p cohomology of p-groups.
///
/// Exit status: 0 when every verdict is consistent, 2 on a red alert or a
/// failed axiom, 1 on usage or I/O errors.
#[derive(Parser, Debug)]
#[command(name = "depthkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncation degree D for bounded computations.
    #[arg(long, global = true, value_name = "D")]
    pub bound: Option<u32>,
    /// Size cap: group order for group commands, p^m for Dickson expansions.
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, value_name = "S")]
    pub seed: Option<u64>,
    /// Include wall-clock timing (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group-level data.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Presented rings.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Dickson invariants D_0..D_m of F_p^m, with optional checks.
    Dickson {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: usize,
        /// Also verify the restriction law onto the first m - L duals.
        #[arg(long, value_name = "L")]
        restrict: Option<usize>,
        /// Check invariance under this many random elements of GL_m(F_p).
        #[arg(long, value_name = "N")]
        gl_trials: Option<usize>,
    },
    /// Apply P^i to a polynomial in x1..xm (degree-2 generators).
    Steenrod {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        op: u64,
        #[arg(long)]
        input: String,
        /// Number of variables; inferred from the input when omitted.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Depth diagnostics.
    #[command(subcommand)]
    Depth(DepthCmd),
    /// Polarised systems of parameters.
    #[command(subcommand)]
    Polarise(PolariseCmd),
    /// Worked examples.
    #[command(subcommand)]
    Example(ExampleCmd),
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// z, r, |A^C_d| per d, orbit representatives and centralizer orders.
    Analyze { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum RingCmd {
    /// Dimensions of a presented ring through the bound.
    Hilbert { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum DepthCmd {
    /// τ numbers, regularity certificate, tightness statements and axioms.
    Report {
        manifest: PathBuf,
        #[arg(long)]
        system: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum PolariseCmd {
    /// Canonical system as restrictions to every V in A^C(G).
    Build {
        manifest: PathBuf,
        /// Write the system file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check PS1-PS5 for a system file.
    Verify { manifest: PathBuf, system: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ExampleCmd {
    /// Chern-induced and canonical systems for p^{1+2n}_+.
    Extraspecial {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
    },
}

fn run(cli: Cli, argv: Vec<String>) -> anyhow::Result<report::Report> {
    let g = &cli.global;
    let mut rep = report::Report::new(argv);
    let start = Instant::now();
    match cli.command {
        Command::Group(GroupCmd::Analyze { file }) => commands::group_analyze(&mut rep, g, &file)?,
        Command::Ring(RingCmd::Hilbert { file }) => commands::ring_hilbert(&mut rep, g, &file)?,
        Command::Dickson {
            p,
            m,
            restrict,
            gl_trials,
        } => commands::dickson(&mut rep, g, p, m, restrict, gl_trials)?,
        Command::Steenrod { p, op, input, m } => commands::steenrod(&mut rep, p, op, &input, m)?,
        Command::Depth(DepthCmd::Report { manifest, system }) => {
            commands::depth_report(&mut rep, g, &manifest, &system)?
        }
        Command::Polarise(PolariseCmd::Build { manifest, out }) => {
            commands::polarise_build(&mut rep, g, &manifest, out.as_deref())?
        }
        Command::Polarise(PolariseCmd::Verify { manifest, system }) => {
            commands::polarise_verify(&mut rep, g, &manifest, &system)?
        }
        Command::Example(ExampleCmd::Extraspecial { p, n }) => commands::example_extraspecial(&mut rep, g, p, n)?,
    }
    if g.timing {
        rep.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(rep)
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
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let json = cli.global.json;
    match run(cli, argv).and_then(|rep| Ok((rep.render(json)?, rep.exit_code()))) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", chain(&e));
            ExitCode::from(1)
        }
    }
}

/// The error and its causes, skipping causes already quoted by their parent.
fn chain(e: &anyhow::Error) -> String {
    let mut out = e.to_string();
    let mut last = out.clone();
    for cause in e.chain().skip(1) {
        let text = cause.to_string();
        if !last.contains(&text) {
            out.push_str(": ");
            out.push_str(&text);
        }
        last = text;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_causes_are_dropped() {
        let e = anyhow::anyhow!("inner").context("outer: inner");
        assert_eq!(chain(&e), "outer: inner");
        let e = anyhow::anyhow!("inner").context("outer");
        assert_eq!(chain(&e), "outer: inner");
    }
}
