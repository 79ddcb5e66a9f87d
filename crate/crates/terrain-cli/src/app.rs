//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use terrain_core::apex::{prepare, solve, Interaction, InteriorSearch};
use terrain_core::gen::{generate_random, Profile};
use terrain_core::hst::Hst;
use terrain_core::oracle::oracle_solve;
use terrain_core::smawk::is_totally_monotone;
use terrain_core::terrain::Terrain;

use crate::bench;
use crate::dump;
use crate::format::{parse_terrain, parse_unvalidated, write_terrain, ParseError};
use crate::render::{render_svg, Layers};
use crate::report::Outcome;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "terrain", version, about = "Largest-area triangle inscribed in a terrain polygon")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a largest-area grounded triangle.
    Solve {
        #[command(flatten)]
        out: OutputArgs,
        /// Check total monotonicity of every node matrix (slow; small inputs only).
        #[arg(long)]
        debug_monotonicity: bool,
    },
    /// Brute-force reference answer for small terrains.
    Oracle {
        #[command(flatten)]
        out: OutputArgs,
        /// Evenly spaced boundary apices per upper edge.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Check a terrain file and list every violation.
    Validate {
        /// Terrain file, or '-' for standard input.
        input: String,
        /// Also check all vertex triples for collinearity (cubic time).
        #[arg(long)]
        full_gp: bool,
    },
    /// Write a random terrain in the file format.
    Gen {
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "uniform", value_parser = parse_profile)]
        profile: Profile,
    },
    /// Time the solver on generated terrains and print CSV.
    Bench {
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 2048, 4096, 8192, 16384])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "spiky", value_parser = parse_profile)]
        profile: Profile,
    },
    /// Draw the terrain, trees, prolongations and solution as SVG.
    Render {
        /// Terrain file, or '-' for standard input.
        input: String,
        /// Output path; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        hide: HideArgs,
    },
    /// Print intermediate structures as JSON.
    Dump {
        /// Terrain file, or '-' for standard input.
        input: String,
        /// Shortest-path trees and prolongations.
        #[arg(long, conflicts_with = "hst", required_unless_present = "hst")]
        spt: bool,
        /// Per-node list sizes of the segment tree.
        #[arg(long)]
        hst: bool,
    },
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Terrain file, or '-' for standard input.
    pub input: String,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Include wall-clock phase times (makes output non-deterministic).
    #[arg(long)]
    pub timings: bool,
    /// Worker threads. Accepted for interface compatibility; the result
    /// never depends on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
}

#[derive(Debug, Args)]
pub struct HideArgs {
    #[arg(long)]
    pub no_terrain: bool,
    #[arg(long)]
    pub no_base: bool,
    #[arg(long)]
    pub no_trees: bool,
    #[arg(long)]
    pub no_l: bool,
    #[arg(long)]
    pub no_r: bool,
    #[arg(long)]
    pub no_backward: bool,
    #[arg(long)]
    pub no_triangle: bool,
}

impl HideArgs {
    fn layers(&self) -> Layers {
        Layers {
            terrain: !self.no_terrain,
            base: !self.no_base,
            trees: !self.no_trees,
            l: !self.no_l,
            r: !self.no_r,
            backward: !self.no_backward,
            triangle: !self.no_triangle,
        }
    }
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// A failure that ends the command with a message and an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure { code: EXIT_INVALID, message: message.to_string() }
    }

    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::invalid(e)
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_input(&mut self, input: &str) -> Result<String, Failure> {
        if input == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(input).map_err(|e| Failure::usage(format!("cannot read {input}: {e}")))
        }
    }

    fn terrain(&mut self, input: &str) -> Result<Terrain, Failure> {
        Ok(parse_terrain(&self.read_input(input)?)?)
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.stdout.write_all(text.as_bytes()).map_err(|e| Failure::usage(format!("cannot write output: {e}")))
    }
}

fn print_outcome(io: &mut Io, o: &Outcome, json: bool) -> Result<(), Failure> {
    let text = if json { o.to_json_string() } else { o.to_text() };
    io.emit(&text)
}

fn ms(start: Instant) -> u128 {
    start.elapsed().as_millis()
}

/// Total-monotonicity violations over every context of every node.
fn monotonicity_violations(t: &Terrain) -> Result<usize, Failure> {
    let prep = prepare(t).map_err(Failure::invalid)?;
    if prep.l.items.is_empty() || prep.r.items.is_empty() {
        return Ok(0);
    }
    let hst = Hst::new(&prep.l, &prep.r).map_err(Failure::invalid)?;
    let search = InteriorSearch::new(t, &hst);
    let mut bad = 0;
    for v in 0..hst.nodes.len() {
        for kind in Interaction::ALL {
            let ctx = search.make_context(v, kind);
            if !is_totally_monotone(&search.matrix_for(&ctx)) {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

fn cmd_solve(io: &mut Io, err: &mut dyn Write, out: &OutputArgs, debug_monotonicity: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let t = io.terrain(&out.input)?;
    let parsed = ms(start);
    let phase = Instant::now();
    let sol = solve(&t).map_err(Failure::invalid)?;
    let solved = ms(phase);
    if debug_monotonicity {
        let bad = monotonicity_violations(&t)?;
        let _ = writeln!(err, "monotonicity: {bad} violating matrices");
        if bad > 0 {
            return Err(Failure::invalid("total monotonicity violated"));
        }
    }
    let timings_ms =
        if out.timings { vec![("parse", parsed), ("solve", solved), ("total", ms(start))] } else { Vec::new() };
    let o = Outcome { triangle: sol.triangle, case: sol.provenance.case(), n: t.n(), timings_ms };
    print_outcome(io, &o, out.json)
}

fn cmd_oracle(io: &mut Io, out: &OutputArgs, samples: usize) -> Result<(), Failure> {
    let start = Instant::now();
    let t = io.terrain(&out.input)?;
    let parsed = ms(start);
    let phase = Instant::now();
    let report = oracle_solve(&t, samples.max(1));
    let solved = ms(phase);
    let best = report.best.ok_or_else(|| Failure::invalid("oracle found no triangle"))?;
    let case = if t.n() == 3 {
        "whole_terrain"
    } else if t.chain_y_at(&best.apex.x).as_ref() == Some(&best.apex.y) {
        "boundary_apex"
    } else {
        "interior_apex"
    };
    let shear = t.shear();
    let triangle = best.map(|p| shear.invert(p));
    let timings_ms =
        if out.timings { vec![("parse", parsed), ("oracle", solved), ("total", ms(start))] } else { Vec::new() };
    let o = Outcome { triangle, case, n: t.n(), timings_ms };
    print_outcome(io, &o, out.json)
}

fn cmd_validate(io: &mut Io, input: &str, full_gp: bool) -> Result<(), Failure> {
    let t = parse_unvalidated(&io.read_input(input)?)?;
    let violations = t.validate(full_gp);
    if violations.is_empty() {
        return io.emit(&format!("valid: {} vertices\n", t.n()));
    }
    let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
    Err(Failure::invalid(format!("ValidationError: {}", list.join("; "))))
}

fn run_command(cmd: Command, io: &mut Io, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Solve { out, debug_monotonicity } => cmd_solve(io, err, &out, debug_monotonicity),
        Command::Oracle { out, samples } => cmd_oracle(io, &out, samples),
        Command::Validate { input, full_gp } => cmd_validate(io, &input, full_gp),
        Command::Gen { n, seed, profile } => {
            let t = generate_random(n, seed, profile).map_err(Failure::usage)?;
            io.emit(&write_terrain(&t, Some(&format!("generated: n={n} seed={seed} profile={profile}"))))
        }
        Command::Bench { sizes, reps, seed, profile } => {
            let rows = bench::run(&sizes, reps, seed, profile).map_err(Failure::invalid)?;
            io.emit(&bench::to_csv(&rows))?;
            let top: Vec<(f64, f64)> = rows.iter().rev().take(3).map(|r| (r.n as f64, r.time_ms)).collect();
            if let Some(slope) = bench::loglog_slope(&top) {
                let _ = writeln!(err, "log-log slope over the top {} sizes: {slope:.3}", top.len());
            }
            Ok(())
        }
        Command::Render { input, output, hide } => {
            let t = io.terrain(&input)?;
            let prep = prepare(&t).ok();
            let sol = solve(&t).ok();
            let svg = render_svg(&t, prep.as_ref(), sol.as_ref().map(|s| &s.triangle), hide.layers());
            match output {
                Some(path) => std::fs::write(&path, svg)
                    .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
                None => io.emit(&svg),
            }
        }
        Command::Dump { input, spt, hst: _ } => {
            let t = io.terrain(&input)?;
            let prep = prepare(&t).map_err(Failure::invalid)?;
            let v =
                if spt { dump::spt_json(&t, &prep) } else { dump::hst_json(&t, &prep).map_err(Failure::invalid)? };
            let mut s = serde_json::to_string_pretty(&v).expect("values are serializable");
            s.push('\n');
            io.emit(&s)
        }
    }
}

/// Runs one command line and returns the process exit code: 0 on success,
/// 1 when the input is not a valid terrain (or violates general position),
/// 2 on usage errors. Identical arguments and input give identical output
/// unless `--timings` is set.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    match run_command(cli.command, &mut io, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
