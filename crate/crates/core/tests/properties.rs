//! Property tests over randomly generated terms, problems and constraints.

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use hohorn::gen::{relational_sorts, Gen, GenConfig};
use hohorn::inference::{self, Inferencer};
use hohorn::semantics::fixpoint::{self, all_valuations, CompiledProgram};
use hohorn::semantics::{Evaluator, FiniteTheory, Frames, Kind, Valuation};
use hohorn::solver::{self, BoundedIntOracle, SmtOracle};
use hohorn::syntax::{self, parse_term_with, print_problem, print_term};
use hohorn::transform;
use hohorn::types::{self, EntailmentOracle};
use hohorn::{Const, Problem, Sort, SortEnv, Term};

fn theory(k: usize) -> Arc<FiniteTheory> {
    Arc::new(FiniteTheory::modular(k))
}

fn guarded() -> GenConfig {
    GenConfig {
        guards: true,
        ..GenConfig::default()
    }
}

fn context(g: &mut Gen) -> SortEnv {
    let sorts = relational_sorts(&Sort::int(), 2, 3);
    let mut env = g.env(&sorts, 2);
    env.push("n", Sort::int()).unwrap();
    env
}

fn leq(frames: &Frames, env: &SortEnv, a: &[usize], b: &[usize]) -> bool {
    env.iter()
        .zip(a.iter().zip(b))
        .all(|((_, s), (x, y))| frames.get(s, Kind::Monotone).unwrap().leq(*x, *y))
}

/// Replaces the relation constants of a CHC formula by variables of the same
/// name so the evaluator can range over their interpretations.
fn open_relations(t: &Term, rels: &BTreeMap<String, Sort>) -> Term {
    match t {
        Term::Const(Const::Sym(s)) if rels.contains_key(s) => Term::var(s.clone()),
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::App(f, a) => Term::app(open_relations(f, rels), open_relations(a, rels)),
        Term::Abs(x, s, b) => Term::Abs(x.clone(), s.clone(), Box::new(open_relations(b, rels))),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_terms_reparse(seed in any::<u64>(), k in 1usize..=3) {
        let th = theory(k);
        let mut g = Gen::new(&th, "int", seed).with_config(guarded());
        let delta = context(&mut g);
        let rho = g.relational_sort(2);
        let t = g.goal(&delta, &rho, 4);
        let scope: Vec<&str> = delta.names().collect();
        let back = parse_term_with(&print_term(&t), &g.sig, &scope).unwrap();
        prop_assert!(back.alpha_eq(&t), "{} reparsed as {}", t, back);
    }

    #[test]
    fn printed_problems_reparse(seed in any::<u64>()) {
        let th = theory(2);
        let mut g = Gen::new(&th, "int", seed).with_config(guarded());
        let p = g.problem();
        let back = syntax::parse_problem_with(&print_problem(&p), &g.sig).unwrap();
        prop_assert_eq!(&back.env, &p.env);
        prop_assert!(back.goal.alpha_eq(&p.goal));
        for (c, d) in p.definite.clauses.iter().zip(&back.definite.clauses) {
            prop_assert!(c.to_term().alpha_eq(&d.to_term()));
        }
    }

    #[test]
    fn emission_is_deterministic(seed in any::<u64>()) {
        let th = theory(3);
        let mut g = Gen::new(&th, "int", seed);
        let p = g.problem();
        let a = inference::chc_of_problem(&g.sig, &p).map(|s| solver::emit_smtlib(&s));
        let b = inference::chc_of_problem(&g.sig, &p).map(|s| solver::emit_smtlib(&s));
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    #[test]
    fn templates_refine_their_sort(seed in any::<u64>()) {
        let th = theory(2);
        let mut g = Gen::new(&th, "int", seed);
        let delta = context(&mut g);
        let sigma = g.relational_sort(3);
        let mut inf = Inferencer::new(&g.sig);
        let t = inf.fresh_ty(&delta, &sigma).unwrap();
        let inds = SortEnv::from_pairs(delta.individuals().map(|(x, s)| (x.to_string(), s.clone()))).unwrap();
        prop_assert_eq!(types::refines(&inf.sig, &inds, &t).unwrap(), sigma);
    }

    #[test]
    fn monotone_step_is_monotone(seed in any::<u64>(), k in 1usize..=2) {
        let th = theory(k);
        let frames = Frames::new(th.clone());
        let mut g = Gen::new(&th, "int", seed);
        let p = g.problem();
        let ev = Evaluator::new(&frames, Kind::Monotone);
        let prog = CompiledProgram::new(&ev, &transform::program_of_definite(&p.env, &p.definite)).unwrap();
        let vals = all_valuations(&frames, &p.env, Kind::Monotone).unwrap();
        let pick = |i: usize| vals[(seed as usize).wrapping_mul(31).wrapping_add(i * 7919) % vals.len()].clone();
        for i in 0..16 {
            let (a, b) = (pick(2 * i), pick(2 * i + 1));
            if leq(&frames, &p.env, &a, &b) {
                let (ta, tb) = (prog.step(&a).unwrap(), prog.step(&b).unwrap());
                prop_assert!(leq(&frames, &p.env, &ta, &tb));
            }
        }
    }

    #[test]
    fn least_fixpoint_is_least_prefixed_point(seed in any::<u64>()) {
        let th = theory(2);
        let frames = Frames::new(th.clone());
        let mut g = Gen::new(&th, "int", seed);
        let p = g.problem();
        let ev = Evaluator::new(&frames, Kind::Monotone);
        let prog = CompiledProgram::new(&ev, &transform::program_of_definite(&p.env, &p.definite)).unwrap();
        let mu = prog.least_fixpoint().unwrap();
        prop_assert_eq!(prog.step(&mu).unwrap(), mu.clone());
        for a in all_valuations(&frames, &p.env, Kind::Monotone).unwrap() {
            if prog.is_prefix_point(&a).unwrap() {
                prop_assert!(leq(&frames, &p.env, &mu, &a));
            }
        }
    }

    #[test]
    fn normalisation_preserves_meaning(seed in any::<u64>(), k in 1usize..=2) {
        let th = theory(k);
        let frames = Frames::new(th.clone());
        let ev = Evaluator::new(&frames, Kind::Monotone);
        let mut g = Gen::new(&th, "int", seed).with_config(guarded());
        let delta = context(&mut g);
        let t = g.goal(&delta, &Sort::Prop, 4);
        let b = transform::beta_normal(&t);
        prop_assert_eq!(&transform::beta_normal(&b), &b);
        let s = transform::simplify(&t);
        let (ct, cb, cs) = (
            ev.compile(&delta, &t).unwrap(),
            ev.compile(&delta, &b).unwrap(),
            ev.compile(&delta, &s).unwrap(),
        );
        for a in all_valuations(&frames, &delta, Kind::Monotone).unwrap() {
            let v = ct.run(&a).unwrap();
            prop_assert_eq!(cb.run(&a).unwrap(), v);
            prop_assert_eq!(cs.run(&a).unwrap(), v);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// A solution of the inferred Horn system, found by enumeration, makes the
    /// original problem solvable.
    #[test]
    fn horn_solutions_give_models(seed in any::<u64>(), k in 1usize..=2) {
        let th = theory(k);
        let frames = Frames::with_cap(th.clone(), 1 << 16);
        let mut g = Gen::new(&th, "int", seed);
        let p: Problem = g.problem();
        let Ok(sys) = inference::chc_of_problem(&g.sig, &p) else {
            return Ok(());
        };
        let rels: BTreeMap<String, Sort> = sys
            .decls
            .iter()
            .map(|d| (d.name.clone(), Sort::curried(d.args.iter().cloned(), Sort::Prop)))
            .collect();
        let env = SortEnv::from_pairs(rels.iter().map(|(x, s)| (x.clone(), s.clone()))).unwrap();
        let Ok(vals) = all_valuations(&frames, &env, Kind::Standard) else {
            return Ok(());
        };
        let formula = Term::conj(sys.all_clauses().map(|c| open_relations(&c.to_term(), &rels)));
        let ev = Evaluator::new(&frames, Kind::Standard);
        let f = ev.compile(&env, &formula).unwrap();
        let solution: Option<Valuation> = vals.into_iter().find(|a| f.run(a).unwrap() == 1);
        if solution.is_some() {
            prop_assert!(fixpoint::solvable_standard(&frames, &p).unwrap(), "{}", p);
        }
    }
}

fn linear_atom() -> impl Strategy<Value = Term> {
    let var = prop_oneof![Just("x"), Just("y")];
    (var.clone(), -2i64..=2, var, -3i64..=3, 0usize..3).prop_map(|(a, c, b, d, op)| {
        let lhs = Term::op("+", Term::op("*", Term::int(c), Term::var(a)), Term::var(b));
        let rhs = Term::int(d);
        match op {
            0 => Term::op("<=", lhs, rhs),
            1 => Term::eq(lhs, rhs),
            _ => Term::neq(lhs, rhs),
        }
    })
}

fn linear_formula() -> impl Strategy<Value = Term> {
    linear_atom().prop_recursive(2, 6, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, conj)| if conj { Term::and(a, b) } else { Term::or(a, b) })
    })
}

fn in_range(x: &str, lo: i64, hi: i64) -> Term {
    Term::and(
        Term::op("<=", Term::int(lo), Term::var(x)),
        Term::op("<=", Term::var(x), Term::int(hi)),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// With both variables confined to the enumerated range, the bounded
    /// evaluator and the SMT solver decide the same entailments.
    #[test]
    fn bounded_and_smt_entailment_agree(hyp in linear_formula(), concl in linear_formula()) {
        let (lo, hi) = (-3, 3);
        let ctx = SortEnv::from_pairs([("x".to_string(), Sort::int()), ("y".to_string(), Sort::int())]).unwrap();
        let hyp = Term::conj([in_range("x", lo, hi), in_range("y", lo, hi), hyp]);
        let bounded = BoundedIntOracle { lo, hi }.entails(&ctx, &hyp, &concl).unwrap();
        let smt = SmtOracle::z3().entails(&ctx, &hyp, &concl).unwrap();
        prop_assert_eq!(bounded, smt, "{} => {}", hyp, concl);
    }
}
