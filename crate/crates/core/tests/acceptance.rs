//! Acceptance suite. Prints one pass/fail line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use hohorn::cli::{self, EXIT_OK};
use hohorn::gen::{relational_sorts, Gen, GenConfig};
use hohorn::semantics::fixpoint::{self, all_valuations};
use hohorn::semantics::typesem::{self, IndEnv};
use hohorn::semantics::{Evaluator, FiniteTheory, Frame, Frames, Galois, Kind};
use hohorn::sorting::check_goal_term;
use hohorn::syntax::{self, parse_term_with, print_problem, print_term};
use hohorn::transform;
use hohorn::{Clause, DefiniteFormula, Problem, RefType, Sort, SortEnv, Term};

const SOLVE_TOTAL: Duration = Duration::from_secs(30);
const FRONTEND_BUDGET_MS: f64 = 1000.0;
const ORACLE_BUDGET: Duration = Duration::from_secs(1);
const GALOIS_BUDGET: Duration = Duration::from_secs(60);
const EMBED_TERMS: usize = 500;
const REDUCTION_PROBLEMS: usize = 200;
const GUARDED_TERMS: usize = 100;
const GUARDED_PROBLEMS: usize = 50;
const SOUNDNESS_PAIRS: usize = 100;
const SOUNDNESS_ATTEMPTS: usize = 40_000;
const ROUNDTRIP_TERMS: usize = 1000;

type Outcome = Result<String, String>;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn int() -> Sort {
    Sort::int()
}

fn theories() -> Vec<Arc<FiniteTheory>> {
    vec![Arc::new(FiniteTheory::modular(1)), Arc::new(FiniteTheory::modular(2))]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn iter_add_end_to_end() -> Outcome {
    let start = Instant::now();
    let r = cli::cmd_solve(&corpus("iter.hochc"), Some("z3 {file}"), None, SOLVE_TOTAL, false);
    let total = start.elapsed();
    let front: f64 = ["parse", "infer", "emit"]
        .iter()
        .filter_map(|s| r.stage_millis(s))
        .sum();
    ensure(r.verdict == "sat", || format!("verdict {} ({:?})", r.verdict, r.diagnostics))?;
    ensure(front < FRONTEND_BUDGET_MS, || format!("transform+inference took {front:.1} ms"))?;
    ensure(total < SOLVE_TOTAL, || format!("total {total:?}"))?;
    Ok(format!("sat; transform+inference {front:.1} ms; total {} ms", total.as_millis()))
}

fn incompleteness_witness() -> Outcome {
    let r = cli::cmd_solve(&corpus("leq_holds.hochc"), Some("z3 {file}"), None, SOLVE_TOTAL, false);
    ensure(r.verdict != "sat" && r.verdict != "error", || format!("verdict {}", r.verdict))?;
    Ok(format!("solver verdict {}", r.verdict))
}

/// Renders `P` as a table over the four elements of the standard frame of
/// `(one -> o) -> o`, named as in the counterexample.
fn no_least_model() -> Outcome {
    let empty = "{u -> 0}";
    let full = "{u -> 1}";
    let elem = |v0: u8, v1: u8| format!("{{{empty} -> {v0}, {full} -> {v1}}}");
    let (a, b, c, d) = (elem(0, 1), elem(0, 0), elem(1, 1), elem(1, 0));
    let render = |q: &str, pa: u8, pb: u8, pc: u8, pd: u8| -> String {
        // Elements of the standard frame are listed in mixed-radix order: b, d, a, c.
        let p = [(&b, pb), (&d, pd), (&a, pa), (&c, pc)]
            .iter()
            .map(|(e, v)| format!("{e} -> {v}"))
            .collect::<Vec<_>>()
            .join(", ");
        format!("Q = {q}; P = {{{p}}}")
    };
    let alpha1 = render(empty, 0, 0, 1, 1);
    let alpha2 = render(full, 1, 0, 1, 0);
    let start = Instant::now();
    let r = cli::cmd_oracle(&corpus("d_one.hochc"), None, true, None);
    let took = start.elapsed();
    let models: Vec<&str> = r
        .output
        .iter()
        .filter_map(|l| l.split_once(": ").filter(|(k, _)| k.starts_with("minimal model")).map(|(_, v)| v))
        .collect();
    let want: BTreeSet<&str> = [alpha1.as_str(), alpha2.as_str()].into();
    let got: BTreeSet<&str> = models.iter().copied().collect();
    ensure(models.len() == 2 && got == want, || format!("models {models:?}"))?;
    ensure(
        r.output.iter().any(|l| l.contains("incomparable") && l.contains("no least model")),
        || "incomparability not reported".into(),
    )?;
    // Independent check of incomparability on the valuations themselves.
    let th = Arc::new(syntax::parse_theory(&std::fs::read_to_string(corpus("one.fth")).unwrap()).unwrap());
    let frames = Frames::new(th);
    let loaded = cli::load_problem(&corpus("d_one.hochc"), None).unwrap();
    let ms = fixpoint::minimal_models(&frames, &loaded.problem.env, &loaded.problem.definite).unwrap();
    let cmp = fixpoint::comparable(&frames, &loaded.problem.env, Kind::Standard, &ms[0], &ms[1]).unwrap();
    ensure(!cmp, || "minimal models are comparable".into())?;
    ensure(took < ORACLE_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("two incomparable minimal models match the table; {} ms", took.as_millis()))
}

/// Pairs `(lower, upper)` covering every cover relation of a standard frame
/// that is a full function space.
fn standard_covers(f: &Frame) -> Vec<(usize, usize)> {
    if !f.is_function() {
        return if f.size == 2 { vec![(0, 1)] } else { Vec::new() };
    }
    let cod = f.cod().unwrap();
    let cod_covers = standard_covers(cod);
    let mut out = Vec::new();
    for x in 0..f.size {
        let t = f.table(x);
        for (k, &v) in t.iter().enumerate() {
            for &(lo, hi) in &cod_covers {
                if hi == v {
                    let mut t2 = t.clone();
                    t2[k] = lo;
                    out.push((f.from_table(&t2).unwrap(), x));
                }
            }
        }
    }
    out
}

fn galois_laws() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for th in theories() {
        let frames = Frames::new(th.clone());
        let g = Galois::new(&frames);
        for rho in relational_sorts(&int(), 3, 3) {
            let s = frames.get(&rho, Kind::Standard).map_err(|e| e.to_string())?;
            let m = frames.get(&rho, Kind::Monotone).map_err(|e| e.to_string())?;
            let maps = g.maps(&rho).map_err(|e| e.to_string())?;
            let at = |law: &str| format!("{law} fails at {rho} over {}", th.name);
            for x in 0..s.size {
                ensure(s.leq(maps.j[maps.u[x]], x), || at("J∘U ⊆ id"))?;
                ensure(s.leq(x, maps.i[maps.l[x]]), || at("id ⊆ I∘L"))?;
            }
            for r in 0..m.size {
                ensure(maps.u[maps.j[r]] == r, || at("U∘J = id"))?;
                ensure(maps.l[maps.i[r]] == r, || at("L∘I = id"))?;
                for r2 in 0..m.size {
                    if m.leq(r, r2) {
                        ensure(s.leq(maps.i[r], maps.i[r2]), || at("I monotone"))?;
                        ensure(s.leq(maps.j[r], maps.j[r2]), || at("J monotone"))?;
                    }
                }
            }
            for (lo, hi) in standard_covers(&s) {
                ensure(m.leq(maps.l[lo], maps.l[hi]), || at("L monotone"))?;
                ensure(m.leq(maps.u[lo], maps.u[hi]), || at("U monotone"))?;
            }
            checked += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < GALOIS_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("{checked} sorts, zero violations, {} ms", took.as_millis()))
}

/// A context of up to two relational variables and possibly one individual.
fn random_context(g: &mut Gen) -> SortEnv {
    use rand::Rng;
    let sorts = relational_sorts(&int(), 2, 3);
    let mut env = SortEnv::new();
    let n = g.rng().gen_range(0..=2);
    for i in 0..n {
        let k = g.rng().gen_range(0..sorts.len());
        env.push(format!("X{i}"), sorts[k].clone()).unwrap();
    }
    if g.rng().gen_bool(0.5) {
        env.push("n", int()).unwrap();
    }
    env
}

fn embedding() -> Outcome {
    let mut valuations = 0usize;
    for (k, th) in theories().into_iter().enumerate() {
        let frames = Frames::new(th.clone());
        let galois = Galois::new(&frames);
        let ev_s = Evaluator::new(&frames, Kind::Standard);
        let ev_m = Evaluator::new(&frames, Kind::Monotone);
        let mut g = Gen::new(&th, "int", 500 + k as u64);
        for case in 0..EMBED_TERMS / 2 {
            let delta = random_context(&mut g);
            let rho = g.relational_sort(2);
            let depth = 1 + case % 4;
            let t = g.goal(&delta, &rho, depth);
            check_goal_term(&g.sig, &delta, &t, &rho).map_err(|e| format!("{t}: {e}"))?;
            let cs = ev_s.compile(&delta, &t).map_err(|e| format!("{t}: {e}"))?;
            let cm = ev_m.compile(&delta, &t).map_err(|e| format!("{t}: {e}"))?;
            let srho = frames.get(&rho, Kind::Standard).unwrap();
            let maps = galois.maps(&rho).unwrap();
            let dmaps: Vec<_> = delta.iter().map(|(_, s)| galois.maps(s).unwrap()).collect();
            for alpha in all_valuations(&frames, &delta, Kind::Standard).unwrap() {
                let u: Vec<usize> = alpha.iter().zip(&dmaps).map(|(v, m)| m.u[*v]).collect();
                let l: Vec<usize> = alpha.iter().zip(&dmaps).map(|(v, m)| m.l[*v]).collect();
                let sv = cs.run(&alpha).unwrap();
                let lo = maps.j[cm.run(&u).unwrap()];
                let hi = maps.i[cm.run(&l).unwrap()];
                ensure(srho.leq(lo, sv) && srho.leq(sv, hi), || {
                    format!("`{t}` at {alpha:?} over {}", th.name)
                })?;
                valuations += 1;
            }
        }
    }
    Ok(format!("{EMBED_TERMS} terms, {valuations} valuations, zero violations"))
}

fn reduction_equivalence() -> Outcome {
    let mut solvable = 0;
    for (k, th) in theories().into_iter().enumerate() {
        let frames = Frames::new(th.clone());
        let mut g = Gen::new(&th, "int", 600 + k as u64);
        for _ in 0..REDUCTION_PROBLEMS / 2 {
            let p = g.problem();
            p.validate(&g.sig).map_err(|e| format!("{p}: {e}"))?;
            let e = |e: hohorn::semantics::SemError| format!("{p}: {e}");
            let std = fixpoint::solvable_standard(&frames, &p).map_err(e)?;
            let prefix = fixpoint::solvable_monotone_prefix(&frames, &p).map_err(e)?;
            let lfp = fixpoint::solvable_monotone(&frames, &p).map_err(e)?;
            ensure(std == prefix && prefix == lfp, || {
                format!("standard {std}, monotone {prefix}, least fixpoint {lfp} for\n{p}")
            })?;
            solvable += usize::from(std);
        }
    }
    Ok(format!(
        "{REDUCTION_PROBLEMS} problems agree ({solvable} solvable, {} not)",
        REDUCTION_PROBLEMS - solvable
    ))
}

/// All closed types refining `rho`, with refinements drawn from `true`,
/// `false` and `x = 0` for the innermost bound individual `x`.
fn all_types(rho: &Sort, scope: &[String]) -> Vec<RefType> {
    match rho {
        Sort::Prop => {
            let mut pool = vec![Term::tt(), Term::ff()];
            if let Some(x) = scope.last() {
                pool.push(Term::eq(Term::var(x.clone()), Term::sym("0")));
            }
            pool.into_iter().map(RefType::bool).collect()
        }
        Sort::Arrow(d, c) if d.is_base() => {
            let x = format!("x{}", scope.len());
            let mut inner = scope.to_vec();
            inner.push(x.clone());
            all_types(c, &inner)
                .into_iter()
                .map(|t| RefType::dep(x.clone(), (**d).clone(), t))
                .collect()
        }
        Sort::Arrow(d, c) => {
            let ds = all_types(d, scope);
            let cs = all_types(c, scope);
            let mut out = Vec::new();
            for t1 in &ds {
                for t2 in &cs {
                    out.push(RefType::arrow(t1.clone(), t2.clone()));
                }
            }
            out
        }
        Sort::Base(_) => Vec::new(),
    }
}

fn type_semantics() -> Outcome {
    let mut count = 0usize;
    let empty = IndEnv::new();
    for th in theories() {
        let frames = Frames::new(th.clone());
        let ev_s = Evaluator::new(&frames, Kind::Standard);
        let ev_m = Evaluator::new(&frames, Kind::Monotone);
        let galois = Galois::new(&frames);
        for rho in relational_sorts(&int(), 3, 3) {
            let maps = galois.maps(&rho).unwrap();
            let m = frames.get(&rho, Kind::Monotone).unwrap();
            for t in all_types(&rho, &[]) {
                let at = |what: &str| format!("{what} fails for {t} over {}", th.name);
                let rel_m = typesem::rel(&ev_m, &t, &empty).map_err(|e| e.to_string())?;
                let rel_s = typesem::rel(&ev_s, &t, &empty).map_err(|e| e.to_string())?;
                let ideal = typesem::ideal(&ev_m, &t, &empty).map_err(|e| e.to_string())?;
                let down = typesem::down_closure(&ev_m, &rho, rel_m).map_err(|e| e.to_string())?;
                ensure(ideal == down, || at("ideal = down-closure"))?;
                ensure(maps.u[rel_s] == rel_m, || at("U converts the relational semantics"))?;
                ensure(maps.i[rel_m] == rel_s, || at("I converts the relational semantics"))?;

                let z = "z_";
                let env = SortEnv::from_pairs([(z.to_string(), rho.clone())]).unwrap();
                let com = transform::com(&t).map_err(|e| e.to_string())?;
                let applied = transform::beta_normal(&Term::app(com, Term::var(z)));
                let cc = ev_m.compile(&env, &applied).map_err(|e| format!("{t}: {e}"))?;
                for r in 0..m.size {
                    let outside = !ideal.contains(&r);
                    ensure(cc.run(&[r]).unwrap() == usize::from(outside), || at("Com defines the complement"))?;
                }
                let lar = transform::lar(&Term::ff(), &t).map_err(|e| e.to_string())?;
                let lv = ev_m.eval(&SortEnv::new(), &lar, &[]).map_err(|e| format!("{t}: {e}"))?;
                ensure(lv == rel_m, || at("Lar(false) defines the largest inhabitant"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} closed types, zero violations"))
}

fn contains_guard(t: &Term) -> bool {
    match t {
        Term::Const(hohorn::Const::Guarded(_)) => true,
        Term::Const(_) | Term::Var(_) => false,
        Term::App(f, a) => contains_guard(f) || contains_guard(a),
        Term::Abs(_, _, b) => contains_guard(b),
    }
}

fn guarded_config() -> GenConfig {
    GenConfig {
        guards: true,
        ..GenConfig::default()
    }
}

fn elim_problem(p: &Problem) -> Problem {
    Problem {
        definite: DefiniteFormula {
            clauses: p
                .definite
                .clauses
                .iter()
                .map(|c| Clause {
                    body: transform::elim_guards(&c.body),
                    ..c.clone()
                })
                .collect(),
        },
        goal: transform::elim_guards(&p.goal),
        ..p.clone()
    }
}

fn guard_elimination() -> Outcome {
    let mut terms = 0;
    let mut problems = 0;
    let mut solvable = 0;
    for (k, th) in theories().into_iter().enumerate() {
        let frames = Frames::new(th.clone());
        let ev_m = Evaluator::new(&frames, Kind::Monotone);
        let mut g = Gen::new(&th, "int", 800 + k as u64).with_config(guarded_config());
        while terms < GUARDED_TERMS * (k + 1) / 2 {
            let delta = random_context(&mut g);
            let t = g.goal(&delta, &Sort::Prop, 3);
            if !contains_guard(&t) {
                continue;
            }
            let e = transform::elim_guards(&t);
            let ct = ev_m.compile(&delta, &t).map_err(|err| format!("{t}: {err}"))?;
            let ce = ev_m.compile(&delta, &e).map_err(|err| format!("{e}: {err}"))?;
            for beta in all_valuations(&frames, &delta, Kind::Monotone).unwrap() {
                ensure(ct.run(&beta).unwrap() == ce.run(&beta).unwrap(), || {
                    format!("`{t}` and `{e}` differ at {beta:?} over {}", th.name)
                })?;
            }
            terms += 1;
        }
        while problems < GUARDED_PROBLEMS * (k + 1) / 2 {
            let p = g.problem();
            let guarded = contains_guard(&p.goal) || p.definite.clauses.iter().any(|c| contains_guard(&c.body));
            if !guarded {
                continue;
            }
            p.validate(&g.sig).map_err(|e| format!("{p}: {e}"))?;
            let std = fixpoint::solvable_standard(&frames, &p).map_err(|e| format!("{p}: {e}"))?;
            let elim = elim_problem(&p);
            let mono = fixpoint::solvable_monotone(&frames, &elim).map_err(|e| format!("{elim}: {e}"))?;
            ensure(std == mono, || format!("guarded {std}, eliminated {mono} for\n{p}"))?;
            solvable += usize::from(std);
            problems += 1;
        }
    }
    Ok(format!(
        "{terms} guarded terms equal after elimination; {problems} problems preserve solvability ({solvable} solvable)"
    ))
}

fn soundness() -> Outcome {
    let fth = std::fs::read_to_string(corpus("mod2.fth")).unwrap();
    let th = Arc::new(syntax::parse_theory(&fth).unwrap());
    let frames = Frames::new(th.clone());
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("mod2.fth"), &fth).unwrap();
    let config = GenConfig {
        max_depth: 2,
        ..GenConfig::default()
    };
    let mut g = Gen::new(&th, "int", 900).with_config(config);
    let sorts = relational_sorts(&int(), 2, 3);
    let (mut accepted, mut rejected, mut solvable_rejected) = (0, 0, 0);
    for attempt in 0..SOUNDNESS_ATTEMPTS {
        if accepted == SOUNDNESS_PAIRS {
            break;
        }
        let env = g.env(&sorts, 2);
        let p = g.problem_over(env, 2, 1);
        let mut gamma = hohorn::TypeEnv::new();
        for (x, s) in p.env.iter() {
            let t = g.closed_type(s);
            gamma.push_type(x, t).unwrap();
        }
        let problem_path = dir.path().join(format!("p{attempt}.hochc"));
        let types_path = dir.path().join(format!("p{attempt}.rty"));
        std::fs::write(&problem_path, print_problem(&p)).unwrap();
        std::fs::write(&types_path, syntax::print_type_env(&gamma)).unwrap();
        let r = cli::cmd_check_types(&problem_path, &types_path, None, None, Duration::from_secs(10));
        let solvable = fixpoint::solvable_standard(&frames, &p).map_err(|e| format!("{p}: {e}"))?;
        if r.exit == EXIT_OK {
            ensure(solvable, || format!("accepted but unsolvable:\n{p}\n{}", syntax::print_type_env(&gamma)))?;
            accepted += 1;
        } else {
            rejected += 1;
            solvable_rejected += usize::from(solvable);
        }
    }
    ensure(accepted == SOUNDNESS_PAIRS, || format!("only {accepted} accepted pairs generated"))?;
    Ok(format!(
        "{accepted} accepted pairs all solvable; {rejected} rejected ({solvable_rejected} of them solvable)"
    ))
}

fn roundtrip() -> Outcome {
    let mut files = 0;
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for path in &entries {
        if path.extension().and_then(|e| e.to_str()) != Some("hochc") {
            continue;
        }
        let loaded = cli::load_problem(path, None)?;
        let printed = print_problem(&loaded.problem);
        let again = syntax::parse_problem_with(&printed, &loaded.sig).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(problems_alpha_eq(&loaded.problem, &again), || format!("{} does not round-trip", path.display()))?;
        for rty in ["gamma_i.rty", "gamma_weak.rty"] {
            let src = std::fs::read_to_string(dir.join(rty)).unwrap();
            if let Ok(gamma) = syntax::parse_type_env(&src, &loaded.sig) {
                let back = syntax::parse_type_env(&syntax::print_type_env(&gamma), &loaded.sig).map_err(|e| e.to_string())?;
                ensure(
                    gamma.iter().zip(back.iter()).all(|((x, a), (y, b))| x == y && entry_eq(a, b)),
                    || format!("{rty} does not round-trip"),
                )?;
            }
        }
        files += 1;
    }
    let mut terms = 0;
    for (k, th) in theories().into_iter().enumerate() {
        let mut g = Gen::new(&th, "int", 1000 + k as u64).with_config(guarded_config());
        for _ in 0..ROUNDTRIP_TERMS / 2 {
            let delta = random_context(&mut g);
            let rho = g.relational_sort(2);
            let t = g.goal(&delta, &rho, 4);
            let scope: Vec<&str> = delta.names().collect();
            let back = parse_term_with(&print_term(&t), &g.sig, &scope).map_err(|e| format!("{t}: {e}"))?;
            ensure(back.alpha_eq(&t), || format!("`{t}` reparses as `{back}`"))?;
            terms += 1;
        }
    }
    Ok(format!("{files} corpus problems and {terms} generated terms round-trip"))
}

fn entry_eq(a: &hohorn::types::TypeEntry, b: &hohorn::types::TypeEntry) -> bool {
    use hohorn::types::TypeEntry;
    match (a, b) {
        (TypeEntry::Ty(x), TypeEntry::Ty(y)) => x.alpha_eq(y),
        _ => a == b,
    }
}

fn problems_alpha_eq(a: &Problem, b: &Problem) -> bool {
    a.theory == b.theory
        && a.env == b.env
        && a.goal.alpha_eq(&b.goal)
        && a.definite.clauses.len() == b.definite.clauses.len()
        && a
            .definite
            .clauses
            .iter()
            .zip(&b.definite.clauses)
            .all(|(c, d)| c.to_term().alpha_eq(&d.to_term()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("iter-add end to end", iter_add_end_to_end),
        ("incompleteness witness is not sat", incompleteness_witness),
        ("no least model over the one-point theory", no_least_model),
        ("galois connection laws", galois_laws),
        ("embedding of the two semantics", embedding),
        ("reduction to monotone semantics", reduction_equivalence),
        ("type semantics", type_semantics),
        ("guard elimination", guard_elimination),
        ("soundness of type assignment", soundness),
        ("parse/print round trip", roundtrip),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {n:>2} PASS {name}: {detail} [{secs:.2} s]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL {name}: {why} [{secs:.2} s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
