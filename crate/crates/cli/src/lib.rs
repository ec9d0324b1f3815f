//! The `nestkit` command line: argument parsing, input files, batches and
//! run reports. The work itself is in [`commands`].

pub mod args;
pub mod commands;
pub mod render;
pub mod report;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use nestkit::gens::GenSpec;
use nestkit::oracle::DEFAULT_MAX_VERTICES;
use rayon::prelude::*;
use serde_json::Value;

use args::{Cli, Command, Format, Global};
use commands::{Body, BridgesArgs, Outcome};
use report::{digest, RunReport};

/// Environment variable overriding the default oracle vertex cap.
pub const ORACLE_ENV: &str = "NESTKIT_MAX_ORACLE";

/// A parsed input with any side files (nest, decomposition) it is paired with.
struct Job {
    value: Value,
    aux: Option<Value>,
}

impl Job {
    fn digest(&self) -> String {
        match &self.aux {
            None => digest(&self.value),
            Some(a) => digest(&Value::Array(vec![self.value.clone(), a.clone()])),
        }
    }
}

fn read_json(path: &Path, stdin: &mut dyn Read) -> Result<Value, String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        stdin.read_to_string(&mut text).map_err(|e| format!("standard input: {e}"))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    serde_json::from_str(&text).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))
}

fn oracle_cap(flag: Option<usize>) -> Result<usize, String> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(ORACLE_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{ORACLE_ENV}={s:?} is not a vertex count")),
        Err(_) => Ok(DEFAULT_MAX_VERTICES),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::FindNest { .. } => "find-nest",
        Command::Decompose { .. } => "decompose",
        Command::Verify { .. } => "verify",
        Command::Planarize { .. } => "planarize",
        Command::Clean { .. } => "clean",
        Command::Bridges { .. } => "bridges",
        Command::Oracle { .. } => "oracle",
        Command::Render { .. } => "render",
        Command::Budget { .. } => "budget",
    }
}

/// Main inputs of a command, `-` when none are given; empty for commands
/// that take none.
fn input_paths(c: &Command) -> Vec<PathBuf> {
    let or_stdin = |v: &Vec<PathBuf>| if v.is_empty() { vec![PathBuf::from("-")] } else { v.clone() };
    match c {
        Command::Gen { .. } | Command::Budget { .. } => Vec::new(),
        Command::Verify { graph, .. } | Command::Bridges { graph, .. } => vec![graph.clone()],
        Command::FindNest { inputs, .. }
        | Command::Decompose { inputs, .. }
        | Command::Planarize { inputs, .. }
        | Command::Clean { inputs, .. }
        | Command::Oracle { inputs, .. }
        | Command::Render { inputs, .. } => or_stdin(&inputs.inputs),
    }
}

fn aux_path(c: &Command) -> Option<&Path> {
    match c {
        Command::Verify { nest, decomposition, .. } | Command::Render { nest, decomposition, .. } => {
            nest.as_deref().or(decomposition.as_deref())
        }
        Command::Bridges { nest, .. } => Some(nest),
        _ => None,
    }
}

fn format_of(c: &Command, g: &Global) -> Format {
    g.format.unwrap_or(if matches!(c, Command::Render { .. }) { Format::Svg } else { Format::Json })
}

fn execute(c: &Command, g: &Global, job: Option<&Job>, cap: usize) -> Outcome {
    let f = format_of(c, g);
    let value = || &job.expect("command takes an input").value;
    let aux = || job.and_then(|j| j.aux.as_ref());
    match c {
        Command::Gen { family, size, crossings, deletions } => {
            let spec = GenSpec {
                family: *family,
                size: size.clone(),
                seed: g.seed,
            };
            commands::gen(&spec, *crossings, *deletions, f)
        }
        Command::FindNest { k, s, .. } => commands::find_nest(value(), *k, *s, f),
        Command::Decompose { k, .. } => commands::decompose(value(), *k, f),
        Command::Verify { nest, k, .. } => {
            let side = aux().expect("verify has a side file");
            if nest.is_some() {
                commands::verify_nest_file(value(), side)
            } else {
                commands::verify_decomposition_file(value(), side, *k)
            }
        }
        Command::Planarize { r, fill, .. } => commands::planarize_drawing(value(), *r, *fill, f),
        Command::Clean { t, k, r, .. } => commands::clean(value(), *t, *k, *r, f),
        Command::Bridges { c2, c4, omega, minimality, .. } => {
            let a = BridgesArgs {
                c2: *c2,
                c4: *c4,
                omega,
                minimality: *minimality,
                oracle_cap: cap,
            };
            commands::bridges(value(), aux().expect("bridges has a nest"), &a, f)
        }
        Command::Oracle { s, .. } => commands::oracle(value(), *s, cap, f),
        Command::Render { .. } => commands::render(value(), aux(), f),
        Command::Budget { k, r } => commands::budget(*k, *r),
    }
}

fn usage(err: &mut dyn Write, msg: &str) -> i32 {
    let _ = writeln!(err, "nestkit: {msg}");
    2
}

/// Runs one command line and returns its exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let g = &cli.global;
    let cmd = &cli.command;
    let cap = match oracle_cap(match cmd {
        Command::Oracle { max_oracle_vertices, .. } | Command::Bridges { max_oracle_vertices, .. } => {
            *max_oracle_vertices
        }
        _ => None,
    }) {
        Ok(c) => c,
        Err(m) => return usage(err, &m),
    };
    let paths = input_paths(cmd);
    if paths.len() > 1 && format_of(cmd, g) == Format::Svg {
        return usage(err, "--format svg takes a single input");
    }
    if g.jobs == 0 {
        return usage(err, "--jobs must be at least 1");
    }
    let aux = match aux_path(cmd).map(|p| read_json(p, stdin)).transpose() {
        Ok(a) => a,
        Err(m) => return usage(err, &m),
    };
    let mut jobs = Vec::with_capacity(paths.len());
    for p in &paths {
        match read_json(p, stdin) {
            Ok(value) => jobs.push(Job {
                value,
                aux: aux.clone(),
            }),
            Err(m) => return usage(err, &m),
        }
    }

    let timed = |job: Option<&Job>| {
        let start = Instant::now();
        let o = execute(cmd, g, job, cap);
        (o, start.elapsed().as_secs_f64() * 1e3)
    };
    let results: Vec<(Outcome, f64)> = if jobs.is_empty() {
        vec![timed(None)]
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(g.jobs).build() {
            Ok(pool) => pool.install(|| jobs.par_iter().map(|j| timed(Some(j))).collect()),
            Err(e) => return usage(err, &e.to_string()),
        }
    };

    let mut code = 0;
    let mut values = Vec::new();
    for (i, (o, _)) in results.iter().enumerate() {
        code = code.max(o.code);
        match &o.body {
            Body::Svg(svg) => {
                let _ = write!(out, "{svg}");
            }
            Body::Json(v) => {
                if o.code == 2 {
                    let name = paths.get(i).map_or("-".into(), |p| p.display().to_string());
                    let msg = v.get("message").and_then(Value::as_str).unwrap_or("error");
                    let _ = writeln!(err, "nestkit: {name}: {msg}");
                }
                values.push(v.clone());
            }
        }
    }
    if !values.is_empty() {
        let shown = if values.len() == 1 { values.pop().unwrap() } else { Value::Array(values) };
        let _ = writeln!(out, "{}", serde_json::to_string(&shown).expect("json"));
    }

    if let Some(path) = &g.report {
        let reports: Vec<RunReport> = results
            .iter()
            .enumerate()
            .map(|(i, (o, ms))| RunReport {
                command: command_name(cmd).to_string(),
                input_digest: jobs.get(i).map(Job::digest),
                outcome: report::Outcome::from_code(o.code),
                exit_code: o.code,
                sizes: o.sizes.clone(),
                guaranteed: o.guaranteed,
                elapsed_ms: *ms,
                version: env!("CARGO_PKG_VERSION").to_string(),
            })
            .collect();
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        }
        .expect("report json");
        if let Err(e) = std::fs::write(path, text + "\n") {
            return usage(err, &format!("{}: {e}", path.display()));
        }
    }
    code
}
