//! SMT-LIB2 emission of Horn systems, the external solver client, and
//! entailment oracles for subtyping.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use wait_timeout::ChildExt;

use crate::inference::{ChcSystem, HornClause};
use crate::semantics::{Evaluator, Frames, Kind};
use crate::sort::{Sort, SortEnv};
use crate::term::{Const, Term};
use crate::types::{EntailmentOracle, OracleError};

#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error("cannot emit `{0}` as SMT-LIB")]
    Emit(String),
    #[error("empty solver command")]
    EmptyCommand,
    #[error("failed to start `{cmd}`: {source}")]
    Spawn { cmd: String, source: std::io::Error },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("unrecognised solver output: {0:?}")]
    Malformed(String),
}

fn is_simple_symbol(s: &str) -> bool {
    const RESERVED: [&str; 12] = [
        "and", "or", "not", "forall", "exists", "let", "true", "false", "ite", "assert", "par", "_",
    ];
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
        && !RESERVED.contains(&s)
}

/// A symbol, quoted with `|..|` unless it is already a plain identifier.
pub fn smt_symbol(s: &str) -> String {
    if is_simple_symbol(s) {
        s.to_string()
    } else {
        format!("|{s}|")
    }
}

pub fn smt_sort(s: &Sort) -> String {
    match s {
        Sort::Prop => "Bool".into(),
        Sort::Base(b) if b == "int" => "Int".into(),
        Sort::Base(b) => smt_symbol(b),
        Sort::Arrow(..) => format!("|{s}|"),
    }
}

/// SMT-LIB rendering of a first-order term.
pub fn smt_term(t: &Term) -> Result<String, SolverError> {
    let (head, args) = t.spine();
    let args: Vec<&Term> = args;
    let sub = |ts: &[&Term]| -> Result<Vec<String>, SolverError> { ts.iter().map(|a| smt_term(a)).collect() };
    let bad = || SolverError::Emit(crate::syntax::print_term(t));
    match head {
        Term::Var(x) if args.is_empty() => Ok(smt_symbol(x)),
        Term::Var(_) | Term::Abs(..) => Err(bad()),
        Term::App(..) => unreachable!("spine head is never an application"),
        Term::Const(c) => {
            let op = match c {
                Const::True if args.is_empty() => return Ok("true".into()),
                Const::False if args.is_empty() => return Ok("false".into()),
                Const::Int(n) if args.is_empty() => {
                    return Ok(if *n < 0 { format!("(- {})", n.unsigned_abs()) } else { n.to_string() })
                }
                Const::And if args.len() == 2 => "and",
                Const::Or if args.len() == 2 => "or",
                Const::Implies if args.len() == 2 => "=>",
                Const::Not if args.len() == 1 => "not",
                Const::Eq if args.len() == 2 => "=",
                Const::Neq if args.len() == 2 => {
                    let a = sub(&args)?;
                    return Ok(format!("(not (= {} {}))", a[0], a[1]));
                }
                Const::Forall(s) | Const::Exists(s) if args.len() == 1 && s.is_base() => {
                    let q = if matches!(c, Const::Forall(_)) { "forall" } else { "exists" };
                    let Term::Abs(x, _, body) = args[0] else { return Err(bad()) };
                    return Ok(format!("({q} (({} {})) {})", smt_symbol(x), smt_sort(s), smt_term(body)?));
                }
                Const::Sym(name) => {
                    if args.is_empty() {
                        return Ok(smt_symbol(name));
                    }
                    match name.as_str() {
                        "+" | "-" | "*" | "mod" | "<" | "<=" | ">" | ">=" => name.as_str(),
                        _ => {
                            let a = sub(&args)?;
                            return Ok(format!("({} {})", smt_symbol(name), a.join(" ")));
                        }
                    }
                }
                _ => return Err(bad()),
            };
            let a = sub(&args)?;
            Ok(format!("({op} {})", a.join(" ")))
        }
    }
}

fn emit_clause(out: &mut String, c: &HornClause) -> Result<(), SolverError> {
    let body = smt_term(&c.body)?;
    let head = smt_term(&c.head_term())?;
    let imp = format!("(=> {body} {head})");
    if c.vars.is_empty() {
        writeln!(out, "(assert {imp})").unwrap();
    } else {
        let vs: Vec<String> = c
            .vars
            .iter()
            .map(|(x, s)| format!("({} {})", smt_symbol(x), smt_sort(s)))
            .collect();
        writeln!(out, "(assert (forall ({}) {imp}))", vs.join(" ")).unwrap();
    }
    Ok(())
}

fn declare_base_sorts(out: &mut String, sorts: impl IntoIterator<Item = Sort>) {
    let mut names = BTreeSet::new();
    for s in sorts {
        let mut v = Vec::new();
        s.base_sorts(&mut v);
        names.extend(v);
    }
    for b in names {
        if b != "int" {
            writeln!(out, "(declare-sort {} 0)", smt_symbol(&b)).unwrap();
        }
    }
}

/// Deterministic SMT-LIB2 text for a Horn system.
pub fn emit_smtlib(sys: &ChcSystem) -> Result<String, SolverError> {
    let mut out = String::from("(set-logic HORN)\n");
    declare_base_sorts(&mut out, sys.decls.iter().flat_map(|d| d.args.iter().cloned()));
    for d in &sys.decls {
        let args: Vec<String> = d.args.iter().map(smt_sort).collect();
        writeln!(out, "(declare-fun {} ({}) Bool)", smt_symbol(&d.name), args.join(" ")).unwrap();
    }
    for c in sys.all_clauses() {
        emit_clause(&mut out, c)?;
    }
    out.push_str("(check-sat)\n");
    Ok(out)
}

/// How to invoke an external solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Command line with `{file}` standing for the input path.
    pub template: String,
    pub timeout: Duration,
    pub workdir: Option<PathBuf>,
}

pub const SOLVER_ENV: &str = "HOHORN_SOLVER";

impl SolverConfig {
    pub fn new(template: impl Into<String>) -> SolverConfig {
        SolverConfig {
            template: template.into(),
            timeout: Duration::from_secs(30),
            workdir: None,
        }
    }

    pub fn with_timeout(mut self, t: Duration) -> SolverConfig {
        self.timeout = t.max(Duration::from_millis(1));
        self
    }

    /// The explicit template if given, else `$HOHORN_SOLVER`.
    pub fn resolve(flag: Option<&str>) -> Option<SolverConfig> {
        flag.map(str::to_string)
            .or_else(|| std::env::var(SOLVER_ENV).ok().filter(|s| !s.trim().is_empty()))
            .map(SolverConfig::new)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Sat => "sat",
            Status::Unsat => "unsat",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverVerdict {
    pub status: Status,
    pub timed_out: bool,
    pub transcript: String,
    pub duration: Duration,
}

/// The status named by the first non-empty line of solver output.
pub fn parse_status(output: &str) -> Result<Status, SolverError> {
    let first = output
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| SolverError::Malformed(output.to_string()))?;
    match first.split_whitespace().next() {
        Some("sat") => Ok(Status::Sat),
        Some("unsat") => Ok(Status::Unsat),
        Some("unknown") => Ok(Status::Unknown),
        _ => Err(SolverError::Malformed(output.to_string())),
    }
}

/// Writes `text` to a temporary `.smt2` file and runs the configured solver
/// on it, killing the process on timeout.
pub fn run_solver(text: &str, cfg: &SolverConfig) -> Result<SolverVerdict, SolverError> {
    let mut builder = tempfile::Builder::new();
    builder.prefix("hohorn-").suffix(".smt2");
    let mut file = match &cfg.workdir {
        Some(d) => builder.tempfile_in(d)?,
        None => builder.tempfile()?,
    };
    file.write_all(text.as_bytes())?;
    file.flush()?;
    let path = file.path().to_string_lossy().into_owned();
    let words = shlex::split(&cfg.template).ok_or(SolverError::EmptyCommand)?;
    let mut words: Vec<String> = words.into_iter().map(|w| w.replace("{file}", &path)).collect();
    if !cfg.template.contains("{file}") {
        words.push(path.clone());
    }
    let (prog, args) = words.split_first().ok_or(SolverError::EmptyCommand)?;
    let start = Instant::now();
    let mut child = Command::new(prog)
        .args(args)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|source| SolverError::Spawn {
            cmd: cfg.template.clone(),
            source,
        })?;
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = std::thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let timed_out = match child.wait_timeout(cfg.timeout)? {
        Some(_) => false,
        None => {
            let _ = child.kill();
            let _ = child.wait();
            true
        }
    };
    let duration = start.elapsed();
    let transcript = reader.join().unwrap_or_default();
    let status = if timed_out {
        Status::Unknown
    } else {
        parse_status(&transcript)?
    };
    Ok(SolverVerdict {
        status,
        timed_out,
        transcript,
        duration,
    })
}

fn declare_consts(out: &mut String, ctx: &SortEnv, terms: &[&Term]) {
    let mut free = BTreeSet::new();
    for t in terms {
        free.extend(t.free_vars());
    }
    let mut sorts: BTreeMap<String, Sort> = BTreeMap::new();
    for x in free {
        let s = ctx.get(&x).cloned().unwrap_or_else(Sort::int);
        sorts.insert(x, s);
    }
    declare_base_sorts(out, sorts.values().cloned());
    for (x, s) in sorts {
        writeln!(out, "(declare-const {} {})", smt_symbol(&x), smt_sort(&s)).unwrap();
    }
}

/// The validity query `hyp ⇒ concl` as an unsatisfiability check.
pub fn entailment_query(ctx: &SortEnv, hyp: &Term, concl: &Term) -> Result<String, SolverError> {
    let mut out = String::new();
    declare_consts(&mut out, ctx, &[hyp, concl]);
    writeln!(out, "(assert {})", smt_term(hyp)?).unwrap();
    writeln!(out, "(assert (not {}))", smt_term(concl)?).unwrap();
    out.push_str("(check-sat)\n");
    Ok(out)
}

/// Entailment through an external SMT solver, memoised by query text.
pub struct SmtOracle {
    pub config: SolverConfig,
    cache: Mutex<HashMap<String, bool>>,
}

impl SmtOracle {
    pub fn new(config: SolverConfig) -> SmtOracle {
        SmtOracle {
            config,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// `z3 {file}` with a short timeout.
    pub fn z3() -> SmtOracle {
        SmtOracle::new(SolverConfig::new("z3 {file}").with_timeout(Duration::from_secs(10)))
    }
}

impl EntailmentOracle for SmtOracle {
    fn entails(&self, ctx: &SortEnv, hyp: &Term, concl: &Term) -> Result<bool, OracleError> {
        let q = entailment_query(ctx, hyp, concl).map_err(|e| OracleError::Backend(e.to_string()))?;
        if let Some(v) = self.cache.lock().unwrap().get(&q) {
            return Ok(*v);
        }
        let verdict = run_solver(&q, &self.config).map_err(|e| OracleError::Backend(e.to_string()))?;
        let v = match verdict.status {
            Status::Unsat => true,
            Status::Sat => false,
            Status::Unknown => return Err(OracleError::Indeterminate(verdict.transcript)),
        };
        self.cache.lock().unwrap().insert(q, v);
        Ok(v)
    }
}

/// Entailment over a finite theory, by evaluating the universal closure.
pub struct EnumerationOracle<'a> {
    ev: Evaluator<'a>,
}

impl<'a> EnumerationOracle<'a> {
    pub fn new(frames: &'a Frames) -> EnumerationOracle<'a> {
        EnumerationOracle {
            ev: Evaluator::new(frames, Kind::Standard),
        }
    }
}

impl EntailmentOracle for EnumerationOracle<'_> {
    fn entails(&self, ctx: &SortEnv, hyp: &Term, concl: &Term) -> Result<bool, OracleError> {
        let f = Term::implies(hyp.clone(), concl.clone());
        let mut binders = Vec::new();
        for x in f.free_vars_ordered() {
            let s = ctx
                .get(&x)
                .cloned()
                .ok_or_else(|| OracleError::Backend(format!("unbound variable `{x}`")))?;
            binders.push((x, s));
        }
        let closed = Term::forall_many(&binders, f);
        self.ev
            .eval(&SortEnv::new(), &closed, &[])
            .map(|v| v == 1)
            .map_err(|e| OracleError::Backend(e.to_string()))
    }
}

/// Entailment over integers with every variable ranging over `lo..=hi`.
/// Exact only when the formulas themselves confine their variables to that
/// range.
pub struct BoundedIntOracle {
    pub lo: i64,
    pub hi: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Val {
    Int(i64),
    Bool(bool),
}

impl BoundedIntOracle {
    fn eval(&self, t: &Term, env: &mut Vec<(String, i64)>) -> Result<Val, OracleError> {
        let bad = || OracleError::Backend(format!("cannot evaluate `{}`", crate::syntax::print_term(t)));
        let (head, args) = t.spine();
        let int = |v: Val| match v {
            Val::Int(n) => Ok(n),
            Val::Bool(_) => Err(bad()),
        };
        let boolean = |v: Val| match v {
            Val::Bool(b) => Ok(b),
            Val::Int(_) => Err(bad()),
        };
        match head {
            Term::Var(x) if args.is_empty() => env
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, v)| Val::Int(*v))
                .ok_or_else(bad),
            Term::Const(c) => match (c, args.as_slice()) {
                (Const::True, []) => Ok(Val::Bool(true)),
                (Const::False, []) => Ok(Val::Bool(false)),
                (Const::Int(n), []) => Ok(Val::Int(*n)),
                (Const::Not, [a]) => Ok(Val::Bool(!boolean(self.eval(a, env)?)?)),
                (Const::And, [a, b]) => Ok(Val::Bool(boolean(self.eval(a, env)?)? && boolean(self.eval(b, env)?)?)),
                (Const::Or, [a, b]) => Ok(Val::Bool(boolean(self.eval(a, env)?)? || boolean(self.eval(b, env)?)?)),
                (Const::Implies, [a, b]) => {
                    Ok(Val::Bool(!boolean(self.eval(a, env)?)? || boolean(self.eval(b, env)?)?))
                }
                (Const::Eq | Const::Neq, [a, b]) => {
                    let eq = self.eval(a, env)? == self.eval(b, env)?;
                    Ok(Val::Bool(if matches!(c, Const::Eq) { eq } else { !eq }))
                }
                (Const::Forall(_) | Const::Exists(_), [Term::Abs(x, _, body)]) => {
                    let all = matches!(c, Const::Forall(_));
                    for v in self.lo..=self.hi {
                        env.push((x.clone(), v));
                        let r = boolean(self.eval(body, env)?);
                        env.pop();
                        if r? != all {
                            return Ok(Val::Bool(!all));
                        }
                    }
                    Ok(Val::Bool(all))
                }
                (Const::Sym(op), [a, b]) => {
                    let x = int(self.eval(a, env)?)?;
                    let y = int(self.eval(b, env)?)?;
                    Ok(match op.as_str() {
                        "+" => Val::Int(x.wrapping_add(y)),
                        "-" => Val::Int(x.wrapping_sub(y)),
                        "*" => Val::Int(x.wrapping_mul(y)),
                        "mod" if y != 0 => Val::Int(x.rem_euclid(y)),
                        "<" => Val::Bool(x < y),
                        "<=" => Val::Bool(x <= y),
                        ">" => Val::Bool(x > y),
                        ">=" => Val::Bool(x >= y),
                        _ => return Err(bad()),
                    })
                }
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

impl EntailmentOracle for BoundedIntOracle {
    fn entails(&self, _ctx: &SortEnv, hyp: &Term, concl: &Term) -> Result<bool, OracleError> {
        let f = Term::implies(hyp.clone(), concl.clone());
        let binders: Vec<(String, Sort)> = f.free_vars_ordered().into_iter().map(|x| (x, Sort::int())).collect();
        match self.eval(&Term::forall_many(&binders, f), &mut Vec::new())? {
            Val::Bool(b) => Ok(b),
            Val::Int(_) => Err(OracleError::Backend("formula is not propositional".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    #[test]
    fn symbols_are_quoted_when_needed() {
        assert_eq!(smt_symbol("x"), "x");
        assert_eq!(smt_symbol("$R0"), "|$R0|");
        assert_eq!(smt_symbol("x'"), "|x'|");
        assert_eq!(smt_symbol("and"), "|and|");
    }

    #[test]
    fn arithmetic_rendering() {
        let t = parse_term("x + -1 <> y mod 2 && ~(x < 3)").unwrap();
        assert_eq!(
            smt_term(&t).unwrap(),
            "(and (not (= (+ x (- 1)) (mod y 2))) (not (< x 3)))"
        );
    }

    #[test]
    fn empty_system_is_header_only() {
        let sys = ChcSystem {
            decls: vec![],
            clauses: vec![],
            goal: HornClause {
                vars: vec![],
                body: Term::ff(),
                head: crate::inference::Head::False,
            },
        };
        assert_eq!(
            emit_smtlib(&sys).unwrap(),
            "(set-logic HORN)\n(assert (=> false false))\n(check-sat)\n"
        );
    }

    #[test]
    fn status_lines() {
        assert_eq!(parse_status("sat\n").unwrap(), Status::Sat);
        assert_eq!(parse_status("\nunsat\n(model)").unwrap(), Status::Unsat);
        assert_eq!(parse_status("unknown").unwrap(), Status::Unknown);
        assert!(parse_status("(error \"x\")").is_err());
    }

    #[test]
    fn timeout_reports_unknown() {
        let cfg = SolverConfig::new("sh -c 'sleep 5' {file}").with_timeout(Duration::from_millis(100));
        let v = run_solver("", &cfg).unwrap();
        assert!(v.timed_out);
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn missing_solver_is_a_spawn_error() {
        let cfg = SolverConfig::new("/nonexistent/solver {file}");
        assert!(matches!(run_solver("", &cfg), Err(SolverError::Spawn { .. })));
    }

    #[test]
    fn bounded_oracle() {
        let o = BoundedIntOracle { lo: -4, hi: 4 };
        let ctx = SortEnv::new();
        let h = parse_term("n <= 0 && m = s").unwrap();
        let c = parse_term("0 <= s => n <= m").unwrap();
        assert!(o.entails(&ctx, &h, &c).unwrap());
        assert!(!o.entails(&ctx, &c, &h).unwrap());
    }
}
