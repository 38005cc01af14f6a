//! Command-line pipeline: parse, transform, infer, emit and solve, plus the
//! finite-frame oracle and the type checker.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::inference;
use crate::problem::Problem;
use crate::reduce;
use crate::semantics::fixpoint::{self, Valuation};
use crate::semantics::{FiniteTheory, Frames, Kind};
use crate::solver::{self, SmtOracle, SolverConfig, Status};
use crate::sort::Sort;
use crate::sorting::Signature;
use crate::syntax;
use crate::transform;
use crate::types::{self, EntailmentOracle, RefType, TypeError};

#[derive(Parser, Debug)]
#[command(name = "hohorn", version, about = "Higher-order constrained Horn clause toolchain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    /// Print one JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Reduce to first-order Horn clauses and optionally run a solver.
    Solve {
        problem: PathBuf,
        /// Solver command line, `{file}` is replaced by the input path.
        #[arg(long)]
        solver: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Solver timeout in seconds.
        #[arg(long, default_value_t = 30)]
        timeout: u64,
        #[arg(long)]
        dump_program: bool,
    },
    /// Write the SMT-LIB Horn system without solving.
    Emit {
        problem: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        dump_program: bool,
    },
    /// Decide solvability by enumeration over a finite theory.
    Oracle {
        problem: PathBuf,
        /// `.fth` file; defaults to `<theory>.fth` next to the problem.
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long)]
        minimal_models: bool,
        /// Largest frame or search space to enumerate.
        #[arg(long)]
        oracle_cap: Option<usize>,
    },
    /// Check a program and goal against a type environment.
    CheckTypes {
        problem: PathBuf,
        types: PathBuf,
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long)]
        solver: Option<String>,
        #[arg(long, default_value_t = 10)]
        timeout: u64,
    },
    /// Eliminate type guards and relational existentials.
    Elim {
        problem: PathBuf,
        #[arg(long)]
        theory: Option<PathBuf>,
    },
    /// Reduce the goal, or a given term, against the logic program.
    Reduce {
        problem: PathBuf,
        #[arg(long)]
        term: Option<String>,
        #[arg(long, default_value_t = 1000)]
        fuel: usize,
        #[arg(long)]
        theory: Option<PathBuf>,
    },
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

/// One machine-readable record per run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input: String,
    pub verdict: String,
    pub stages: Vec<Stage>,
    pub emitted: Vec<String>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub output: Vec<String>,
    #[serde(skip)]
    pub exit: i32,
    /// Text mode leaves out the verdict line, so the output stays valid
    /// SMT-LIB when it is the emitted system.
    #[serde(skip)]
    pub bare_output: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub name: String,
    pub millis: f64,
}

impl RunReport {
    fn new(command: &str, input: &Path) -> RunReport {
        RunReport {
            command: command.into(),
            input: input.display().to_string(),
            ..RunReport::default()
        }
    }

    fn timed<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let r = f();
        self.stages.push(Stage {
            name: name.into(),
            millis: start.elapsed().as_secs_f64() * 1000.0,
        });
        r
    }

    fn fail(mut self, code: i32, verdict: &str, msg: impl std::fmt::Display) -> RunReport {
        self.verdict = verdict.into();
        self.diagnostics.push(msg.to_string());
        self.exit = code;
        self
    }

    fn done(mut self, code: i32, verdict: &str) -> RunReport {
        self.verdict = verdict.into();
        self.exit = code;
        self
    }

    pub fn stage_millis(&self, name: &str) -> Option<f64> {
        self.stages.iter().find(|s| s.name == name).map(|s| s.millis)
    }

    /// Terse human rendering: output lines, diagnostics, then the verdict.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for l in &self.output {
            s.push_str(l);
            s.push('\n');
        }
        for d in &self.diagnostics {
            s.push_str("error: ");
            s.push_str(d);
            s.push('\n');
        }
        for e in &self.emitted {
            s.push_str(&format!("wrote {e}\n"));
        }
        if !self.bare_output {
            s.push_str(&self.verdict);
            s.push('\n');
        }
        s
    }
}

/// A parsed problem with its signature and, for finite theories, the model.
pub struct Loaded {
    pub problem: Problem,
    pub sig: Signature,
    pub theory: Option<Arc<FiniteTheory>>,
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Reads a problem; a theory other than `zla` is loaded from `theory` or
/// from `<id>.fth` beside the problem.
pub fn load_problem(path: &Path, theory: Option<&Path>) -> Result<Loaded, String> {
    let src = read(path)?;
    let id = syntax::problem_theory(&src).map_err(|e| format!("{}: {e}", path.display()))?;
    let th = if id == "zla" && theory.is_none() {
        None
    } else {
        let tpath = match theory {
            Some(t) => t.to_path_buf(),
            None => path.with_file_name(format!("{id}.fth")),
        };
        let tsrc = read(&tpath)?;
        let th = syntax::parse_theory(&tsrc).map_err(|e| format!("{}: {e}", tpath.display()))?;
        Some(Arc::new(th))
    };
    let sig = match &th {
        Some(t) => t.signature(),
        None => Signature::zla(),
    };
    let problem = syntax::parse_problem_with(&src, &sig).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Loaded { problem, sig, theory: th })
}

fn write_emitted(report: &mut RunReport, path: Option<&PathBuf>, text: &str) -> Result<(), String> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?;
        report.emitted.push(p.display().to_string());
    }
    Ok(())
}

fn dump_program(report: &mut RunReport, p: &Problem) {
    let prog = transform::program_of_definite(&p.env, &p.definite);
    for (x, body) in prog.defs() {
        report.output.push(format!("{x} = {body};"));
    }
}

/// Full pipeline up to emission, and solving when a solver is configured.
pub fn cmd_solve(
    path: &Path,
    solver_flag: Option<&str>,
    emit: Option<&PathBuf>,
    timeout: Duration,
    dump: bool,
) -> RunReport {
    let cfg = SolverConfig::resolve(solver_flag).map(|c| c.with_timeout(timeout));
    pipeline("solve", path, cfg, emit, dump)
}

/// Emission only.
pub fn cmd_emit(path: &Path, emit: Option<&PathBuf>, dump: bool) -> RunReport {
    pipeline("emit", path, None, emit, dump)
}

fn pipeline(
    command: &str,
    path: &Path,
    cfg: Option<SolverConfig>,
    emit: Option<&PathBuf>,
    dump: bool,
) -> RunReport {
    let mut r = RunReport::new(command, path);
    let loaded = match r.timed("parse", || load_problem(path, None)) {
        Ok(l) => l,
        Err(e) => return r.fail(EXIT_INPUT, "error", e),
    };
    if loaded.theory.is_some() {
        return r.fail(EXIT_INPUT, "error", "solve needs the built-in `zla` theory; use `oracle` for finite theories");
    }
    if dump {
        dump_program(&mut r, &loaded.problem);
    }
    let inf = match r.timed("infer", || inference::infer_problem(&loaded.sig, &loaded.problem)) {
        Ok(i) => i,
        Err(e) => return r.fail(EXIT_INPUT, "error", e),
    };
    let text = match r.timed("emit", || solver::emit_smtlib(&inf.system)) {
        Ok(t) => t,
        Err(e) => return r.fail(EXIT_INPUT, "error", e),
    };
    if let Err(e) = write_emitted(&mut r, emit, &text) {
        return r.fail(EXIT_INPUT, "error", e);
    }
    let Some(cfg) = cfg else {
        if emit.is_none() {
            r.output.push(text.trim_end().to_string());
            r.bare_output = !dump;
        }
        return r.done(EXIT_OK, "emitted");
    };
    match r.timed("solve", || solver::run_solver(&text, &cfg)) {
        Ok(v) => {
            if v.timed_out {
                r.diagnostics.push("solver timed out".into());
            }
            let code = match v.status {
                Status::Sat => EXIT_OK,
                Status::Unsat => EXIT_NO,
                Status::Unknown => EXIT_UNKNOWN,
            };
            r.done(code, &v.status.to_string())
        }
        Err(e) => r.fail(EXIT_INPUT, "error", e),
    }
}

/// Renders a frame element: carrier names, `0`/`1`, and tables for functions.
pub fn render_element(frames: &Frames, sort: &Sort, kind: Kind, idx: usize) -> String {
    match sort {
        Sort::Prop => idx.to_string(),
        Sort::Base(b) => frames
            .theory
            .carrier(b)
            .and_then(|c| c.get(idx).cloned())
            .unwrap_or_else(|| idx.to_string()),
        Sort::Arrow(d, c) => {
            let Ok(f) = frames.get(sort, kind) else {
                return format!("#{idx}");
            };
            let n = f.dom().map(|d| d.size).unwrap_or(0);
            let parts: Vec<String> = (0..n)
                .map(|x| {
                    format!(
                        "{} -> {}",
                        render_element(frames, d, kind, x),
                        render_element(frames, c, kind, f.apply(idx, x))
                    )
                })
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}

fn render_valuation(frames: &Frames, p: &Problem, kind: Kind, v: &Valuation) -> String {
    let parts: Vec<String> = p
        .env
        .iter()
        .zip(v)
        .map(|((x, s), i)| format!("{x} = {}", render_element(frames, s, kind, *i)))
        .collect();
    parts.join("; ")
}

pub fn cmd_oracle(path: &Path, theory: Option<&Path>, minimal: bool, cap: Option<usize>) -> RunReport {
    let mut r = RunReport::new("oracle", path);
    let loaded = match r.timed("parse", || load_problem(path, theory)) {
        Ok(l) => l,
        Err(e) => return r.fail(EXIT_INPUT, "error", e),
    };
    let Some(th) = loaded.theory.clone() else {
        return r.fail(EXIT_INPUT, "error", "the oracle needs a finite theory (`zla` is infinite)");
    };
    let frames = match cap {
        Some(c) => Frames::with_cap(th, c),
        None => Frames::new(th),
    };
    let p = &loaded.problem;
    let res = r.timed("enumerate", || -> Result<(bool, bool, bool), crate::semantics::SemError> {
        Ok((
            fixpoint::solvable_standard(&frames, p)?,
            fixpoint::solvable_monotone(&frames, p)?,
            fixpoint::solvable_monotone_prefix(&frames, p)?,
        ))
    });
    let (std, mono, prefix) = match res {
        Ok(v) => v,
        Err(e) => return r.fail(EXIT_INPUT, "error", e),
    };
    r.output.push(format!("standard: {}", if std { "solvable" } else { "unsolvable" }));
    r.output.push(format!("monotone: {}", if mono { "solvable" } else { "unsolvable" }));
    if mono != prefix {
        r.diagnostics.push("least-fixpoint and prefix-point searches disagree".into());
    }
    if minimal {
        let models = r.timed("models", || fixpoint::minimal_models(&frames, &p.env, &p.definite));
        match models {
            Ok(ms) => {
                for (i, m) in ms.iter().enumerate() {
                    r.output.push(format!("minimal model {}: {}", i + 1, render_valuation(&frames, p, Kind::Standard, m)));
                }
                let least = ms.len() == 1;
                r.output.push(if least {
                    "least model exists".into()
                } else {
                    format!("{} pairwise incomparable minimal models; no least model", ms.len())
                });
            }
            Err(e) => return r.fail(EXIT_INPUT, "error", e),
        }
    }
    if std == mono {
        r.done(if std { EXIT_OK } else { EXIT_NO }, if std { "solvable" } else { "unsolvable" })
    } else {
        r.fail(EXIT_UNKNOWN, "disagreement", "standard and monotone solvability differ")
    }
}

pub fn cmd_check_types(
    path: &Path,
    types_path: &Path,
    theory: Option<&Path>,
    solver_flag: Option<&str>,
    timeout: Duration,
) -> RunReport {
    let mut r = RunReport::new("check-types", path);
    let loaded = match r.timed("parse", || load_problem(path, theory)) {
        Ok(l) => l,
        Err(e) => return r.fail(EXIT_INPUT, "error", e),
    };
    let gamma = match read(types_path)
        .and_then(|s| syntax::parse_type_env(&s, &loaded.sig).map_err(|e| format!("{}: {e}", types_path.display())))
    {
        Ok(g) => g,
        Err(e) => return r.fail(EXIT_INPUT, "error", e),
    };
    let frames = loaded.theory.clone().map(Frames::new);
    let oracle: Box<dyn EntailmentOracle + '_> = match &frames {
        Some(f) => Box::new(solver::EnumerationOracle::new(f)),
        None => {
            let cfg = SolverConfig::resolve(solver_flag).unwrap_or_else(|| SolverConfig::new("z3 {file}"));
            Box::new(SmtOracle::new(cfg.with_timeout(timeout)))
        }
    };
    let p = &loaded.problem;
    let prog = transform::program_of_definite(&p.env, &p.definite);
    let res = r.timed("check", || -> Result<(Vec<(String, bool)>, bool), TypeError> {
        let defs = types::check_program_detailed(&loaded.sig, &prog, &gamma, oracle.as_ref())?;
        let goal = types::check_term(&loaded.sig, &gamma, &p.goal, &RefType::bool(crate::Term::ff()), oracle.as_ref())?;
        Ok((defs, goal))
    });
    match res {
        Ok((defs, goal)) => {
            for (x, ok) in &defs {
                r.output.push(format!("{x}: {}", if *ok { "ok" } else { "rejected" }));
            }
            r.output.push(format!("goal: {}", if goal { "ok" } else { "rejected" }));
            if goal && defs.iter().all(|(_, ok)| *ok) {
                r.done(EXIT_OK, "accepted")
            } else {
                r.done(EXIT_NO, "rejected")
            }
        }
        Err(TypeError::Oracle(e @ types::OracleError::Indeterminate(_))) => r.fail(EXIT_UNKNOWN, "indeterminate", e),
        Err(e) => r.fail(EXIT_INPUT, "error", e),
    }
}

pub fn cmd_elim(path: &Path, theory: Option<&Path>) -> RunReport {
    let mut r = RunReport::new("elim", path);
    let loaded = match r.timed("parse", || load_problem(path, theory)) {
        Ok(l) => l,
        Err(e) => return r.fail(EXIT_INPUT, "error", e),
    };
    let p = &loaded.problem;
    let elim = |t: &crate::Term| {
        transform::simplify(&transform::eliminate_rel_existentials(&transform::elim_guards(t)))
    };
    let prog = transform::program_of_definite(&p.env, &p.definite);
    let lines = r.timed("elim", || {
        let mut lines: Vec<String> = prog.defs().map(|(x, body)| format!("{x} = {};", elim(body))).collect();
        lines.push(format!("goal {};", elim(&p.goal)));
        lines
    });
    r.output.extend(lines);
    r.done(EXIT_OK, "ok")
}

pub fn cmd_reduce(path: &Path, term: Option<&str>, fuel: usize, theory: Option<&Path>) -> RunReport {
    let mut r = RunReport::new("reduce", path);
    let loaded = match r.timed("parse", || load_problem(path, theory)) {
        Ok(l) => l,
        Err(e) => return r.fail(EXIT_INPUT, "error", e),
    };
    let p = &loaded.problem;
    let t = match term {
        Some(src) => {
            let scope: Vec<&str> = p.env.names().collect();
            match syntax::parse_term_with(src, &loaded.sig, &scope) {
                Ok(t) => t,
                Err(e) => return r.fail(EXIT_INPUT, "error", e),
            }
        }
        None => p.goal.clone(),
    };
    let prog = transform::program_of_definite(&p.env, &p.definite);
    let red = r.timed("reduce", || reduce::normalize(&prog, &t, fuel));
    r.output.push(format!("{}", red.term));
    r.output.push(format!("{} steps", red.steps.len()));
    if red.normal {
        r.done(EXIT_OK, "normal form")
    } else {
        r.done(EXIT_NO, "out of fuel")
    }
}

/// Runs a parsed command line and returns the report.
pub fn execute(cli: &Cli) -> RunReport {
    match &cli.command {
        Cmd::Solve {
            problem,
            solver,
            emit,
            timeout,
            dump_program,
        } => cmd_solve(problem, solver.as_deref(), emit.as_ref(), Duration::from_secs(*timeout), *dump_program),
        Cmd::Emit {
            problem,
            emit,
            dump_program,
        } => cmd_emit(problem, emit.as_ref(), *dump_program),
        Cmd::Oracle {
            problem,
            theory,
            minimal_models,
            oracle_cap,
        } => cmd_oracle(problem, theory.as_deref(), *minimal_models, *oracle_cap),
        Cmd::CheckTypes {
            problem,
            types,
            theory,
            solver,
            timeout,
        } => cmd_check_types(problem, types, theory.as_deref(), solver.as_deref(), Duration::from_secs(*timeout)),
        Cmd::Elim { problem, theory } => cmd_elim(problem, theory.as_deref()),
        Cmd::Reduce {
            problem,
            term,
            fuel,
            theory,
        } => cmd_reduce(problem, term.as_deref(), *fuel, theory.as_deref()),
    }
}

/// Executes and prints the report; returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> i32 {
    let report = execute(cli);
    let text = if cli.json {
        let mut s = serde_json::to_string(&report).expect("report serialises");
        s.push('\n');
        s
    } else {
        report.render_text()
    };
    let _ = out.write_all(text.as_bytes());
    report.exit
}
