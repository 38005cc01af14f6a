//! Random generators of sorts, terms, types and problems for testing.
//!
//! Everything is generated over a single base sort of a finite theory, so the
//! results can be evaluated by the finite-frame oracle. Depth counts nested
//! goal-term constructors (connectives, quantifiers, abstractions and
//! applications); constraint atoms are leaves.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::problem::{Clause, DefiniteFormula, Problem};
use crate::semantics::FiniteTheory;
use crate::sort::{Sort, SortEnv};
use crate::sorting::Signature;
use crate::term::Term;
use crate::types::RefType;

/// Relational sorts over `base` with at most `max_arrows` arrows and order at
/// most `max_order`, smallest first.
pub fn relational_sorts(base: &Sort, max_arrows: usize, max_order: usize) -> Vec<Sort> {
    let mut by_arrows: Vec<Vec<Sort>> = vec![vec![Sort::Prop]];
    for n in 1..=max_arrows {
        let mut out = Vec::new();
        for k in 0..n {
            let doms: Vec<Sort> = if k == 0 {
                vec![base.clone(), Sort::Prop]
            } else {
                by_arrows[k].clone()
            };
            for d in &doms {
                for c in &by_arrows[n - 1 - k] {
                    out.push(Sort::arrow(d.clone(), c.clone()));
                }
            }
        }
        by_arrows.push(out);
    }
    by_arrows
        .into_iter()
        .flatten()
        .filter(|s| s.order() <= max_order)
        .collect()
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub max_depth: usize,
    pub max_order: usize,
    /// Arrow bound for the sorts of bound variables.
    pub binder_arrows: usize,
    /// Emit type-guarded existentials.
    pub guards: bool,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig {
            max_depth: 4,
            max_order: 3,
            binder_arrows: 2,
            guards: false,
        }
    }
}

pub struct Gen {
    rng: StdRng,
    pub config: GenConfig,
    pub theory_name: String,
    pub sig: Signature,
    pub base: Sort,
    literals: Vec<Term>,
    funs: Vec<(Term, usize)>,
    rels: Vec<(Term, usize)>,
    next: usize,
}

impl Gen {
    /// A generator over the carrier of `base` in `theory`, using the
    /// theory's functions and relations on that sort.
    pub fn new(theory: &FiniteTheory, base: &str, seed: u64) -> Gen {
        let sig = theory.signature();
        let b = Sort::base(base);
        let literals = theory
            .carrier(base)
            .expect("base sort declared by the theory")
            .iter()
            .map(Term::sym)
            .collect();
        let mut funs = Vec::new();
        let mut rels = Vec::new();
        for (name, s) in sig.symbols() {
            let (args, res) = s.uncurry();
            if args.is_empty() || args.iter().any(|a| **a != b) {
                continue;
            }
            if *res == b {
                funs.push((Term::sym(name), args.len()));
            } else if *res == Sort::Prop {
                rels.push((Term::sym(name), args.len()));
            }
        }
        Gen {
            rng: StdRng::seed_from_u64(seed),
            config: GenConfig::default(),
            theory_name: theory.name.clone(),
            sig,
            base: b,
            literals,
            funs,
            rels,
            next: 0,
        }
    }

    pub fn with_config(mut self, config: GenConfig) -> Gen {
        self.config = config;
        self
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    fn fresh(&mut self, prefix: &str) -> String {
        self.next += 1;
        format!("{prefix}{}", self.next)
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Sorts available for bound variables of terms whose own sort may reach
    /// `max_order`.
    pub fn binder_sorts(&self, for_abstraction: bool) -> Vec<Sort> {
        let limit = if for_abstraction {
            self.config.max_order - 1
        } else {
            self.config.max_order
        };
        let mut v = vec![self.base.clone()];
        v.extend(relational_sorts(&self.base, self.config.binder_arrows, limit));
        v
    }

    /// A random relational sort with at most `max_arrows` arrows.
    pub fn relational_sort(&mut self, max_arrows: usize) -> Sort {
        let all = relational_sorts(&self.base, max_arrows, self.config.max_order);
        all.choose(&mut self.rng).unwrap().clone()
    }

    /// A constraint term of the base sort.
    pub fn individual(&mut self, ctx: &SortEnv, depth: usize) -> Term {
        let vars: Vec<String> = ctx
            .iter()
            .filter(|(_, s)| **s == self.base)
            .map(|(x, _)| x.to_string())
            .collect();
        if depth > 0 && !self.funs.is_empty() && self.chance(0.25) {
            let (f, n) = self.funs.choose(&mut self.rng).unwrap().clone();
            let args: Vec<Term> = (0..n).map(|_| self.individual(ctx, depth - 1)).collect();
            return Term::apps(f, args);
        }
        if !vars.is_empty() && self.chance(0.7) {
            return Term::var(vars.choose(&mut self.rng).unwrap().clone());
        }
        self.literals.choose(&mut self.rng).unwrap().clone()
    }

    /// An atomic constraint formula.
    pub fn atom(&mut self, ctx: &SortEnv) -> Term {
        let pick = self.rng.gen_range(0..4);
        if pick == 0 && !self.rels.is_empty() {
            let (r, n) = self.rels.choose(&mut self.rng).unwrap().clone();
            let args: Vec<Term> = (0..n).map(|_| self.individual(ctx, 1)).collect();
            return Term::apps(r, args);
        }
        let a = self.individual(ctx, 1);
        let b = self.individual(ctx, 1);
        if pick == 1 {
            Term::neq(a, b)
        } else {
            Term::eq(a, b)
        }
    }

    /// A constraint formula: atoms under `&&` and `||`, or a truth constant.
    pub fn constraint(&mut self, ctx: &SortEnv, depth: usize) -> Term {
        match self.rng.gen_range(0..8) {
            0 => Term::tt(),
            1 => Term::ff(),
            2 | 3 if depth > 0 => {
                let a = self.constraint(ctx, depth - 1);
                let b = self.constraint(ctx, depth - 1);
                if self.chance(0.5) {
                    Term::and(a, b)
                } else {
                    Term::or(a, b)
                }
            }
            _ => self.atom(ctx),
        }
    }

    /// Heads usable at depth zero: all their arguments are individuals.
    fn first_order_heads(&self, ctx: &SortEnv, target: &Sort) -> Vec<(String, Vec<Sort>)> {
        self.heads_for(ctx, target)
            .into_iter()
            .filter(|(_, args)| args.iter().all(Sort::is_base))
            .collect()
    }

    /// Variables of `ctx` whose sort ends in `target` after some arguments.
    fn heads_for(&self, ctx: &SortEnv, target: &Sort) -> Vec<(String, Vec<Sort>)> {
        let mut out = Vec::new();
        for (x, s) in ctx.iter() {
            if !s.is_relational() {
                continue;
            }
            let mut args = Vec::new();
            let mut cur = s;
            loop {
                if cur == target {
                    out.push((x.to_string(), args.clone()));
                    break;
                }
                match cur {
                    Sort::Arrow(d, c) => {
                        args.push((**d).clone());
                        cur = c;
                    }
                    _ => break,
                }
            }
        }
        out
    }

    /// A goal term of sort `target` whose free variables are bound in `ctx`.
    pub fn goal(&mut self, ctx: &SortEnv, target: &Sort, depth: usize) -> Term {
        match target {
            Sort::Base(_) => self.individual(ctx, depth.min(1)),
            Sort::Prop => self.prop(ctx, depth),
            Sort::Arrow(d, c) => {
                let heads = if depth == 0 {
                    self.first_order_heads(ctx, target)
                } else {
                    self.heads_for(ctx, target)
                };
                if !heads.is_empty() && (depth == 0 || self.chance(0.4)) {
                    let (h, args) = heads.choose(&mut self.rng).unwrap().clone();
                    return self.apply_head(ctx, h, &args, depth);
                }
                let x = self.fresh("v");
                let inner = ctx.extended(&x, (**d).clone());
                let body = self.goal(&inner, c, depth.saturating_sub(1));
                Term::abs(x, (**d).clone(), body)
            }
        }
    }

    fn apply_head(&mut self, ctx: &SortEnv, h: String, args: &[Sort], depth: usize) -> Term {
        let sub = depth.saturating_sub(1);
        let args: Vec<Term> = args.iter().map(|s| self.goal(ctx, s, sub)).collect();
        Term::apps(Term::var(h), args)
    }

    fn prop(&mut self, ctx: &SortEnv, depth: usize) -> Term {
        let heads = self.heads_for(ctx, &Sort::Prop);
        if depth == 0 {
            let heads = self.first_order_heads(ctx, &Sort::Prop);
            if !heads.is_empty() && self.chance(0.5) {
                let (h, args) = heads.choose(&mut self.rng).unwrap().clone();
                return self.apply_head(ctx, h, &args, 0);
            }
            return self.constraint(ctx, 0);
        }
        let sub = depth - 1;
        loop {
            match self.rng.gen_range(0..9) {
                0 => return self.constraint(ctx, 1),
                1 => {
                    let a = self.prop(ctx, sub);
                    let b = self.prop(ctx, sub);
                    return Term::and(a, b);
                }
                2 => {
                    let a = self.prop(ctx, sub);
                    let b = self.prop(ctx, sub);
                    return Term::or(a, b);
                }
                3 => {
                    let sorts = self.binder_sorts(false);
                    let s = sorts.choose(&mut self.rng).unwrap().clone();
                    let x = self.fresh("v");
                    let body = self.prop(&ctx.extended(&x, s.clone()), sub);
                    return Term::exists(x, s, body);
                }
                4 | 5 | 6 if !heads.is_empty() => {
                    let (h, args) = heads.choose(&mut self.rng).unwrap().clone();
                    return self.apply_head(ctx, h, &args, depth);
                }
                7 => {
                    let sorts = self.binder_sorts(true);
                    let s = sorts.choose(&mut self.rng).unwrap().clone();
                    let x = self.fresh("v");
                    let body = self.prop(&ctx.extended(&x, s.clone()), sub);
                    let arg = self.goal(ctx, &s, sub);
                    return Term::app(Term::abs(x, s, body), arg);
                }
                8 if self.config.guards => {
                    let rho = self.relational_sort(2);
                    let ty = self.closed_type(&rho);
                    let x = self.fresh("v");
                    let body = self.prop(&ctx.extended(&x, rho), sub);
                    return Term::guarded(x, ty, body);
                }
                _ => {}
            }
        }
    }

    /// A closed refinement type refining `rho`.
    pub fn closed_type(&mut self, rho: &Sort) -> RefType {
        self.ref_type(&SortEnv::new(), rho)
    }

    /// A refinement type of sort `rho` whose refinements mention the
    /// individual variables of `ctx`.
    pub fn ref_type(&mut self, ctx: &SortEnv, rho: &Sort) -> RefType {
        match rho {
            Sort::Prop => RefType::bool(self.constraint(ctx, 1)),
            Sort::Arrow(d, c) if d.is_base() => {
                let x = self.fresh("x");
                let body = self.ref_type(&ctx.extended(&x, (**d).clone()), c);
                RefType::dep(x, (**d).clone(), body)
            }
            Sort::Arrow(d, c) => {
                let t1 = self.ref_type(ctx, d);
                let t2 = self.ref_type(ctx, c);
                RefType::arrow(t1, t2)
            }
            Sort::Base(_) => panic!("no refinement type refines a base sort"),
        }
    }

    /// A relational environment of `1..=max_vars` variables with sorts drawn
    /// from `sorts`.
    pub fn env(&mut self, sorts: &[Sort], max_vars: usize) -> SortEnv {
        let n = self.rng.gen_range(1..=max_vars);
        let mut env = SortEnv::new();
        for i in 0..n {
            let s = sorts.choose(&mut self.rng).unwrap().clone();
            env.push(format!("X{i}"), s).unwrap();
        }
        env
    }

    /// A definite clause for the head `x : sort` whose body has depth at most
    /// `depth`.
    pub fn clause(&mut self, env: &SortEnv, x: &str, depth: usize) -> Clause {
        let sort = env.get(x).expect("head variable in the environment").clone();
        let (args, _) = sort.uncurry();
        let binders: Vec<(String, Sort)> = args
            .into_iter()
            .map(|s| (self.fresh("y"), s.clone()))
            .collect();
        let mut ctx = env.clone();
        for (y, s) in &binders {
            ctx = ctx.extended(y, s.clone());
        }
        let body = self.prop(&ctx, depth);
        Clause {
            head_args: binders.iter().map(|(y, _)| y.clone()).collect(),
            binders,
            body,
            head_var: x.to_string(),
        }
    }

    /// A problem over `env` with up to `max_clauses` clauses.
    pub fn problem_over(&mut self, env: SortEnv, max_clauses: usize, depth: usize) -> Problem {
        let names: Vec<String> = env.names().map(str::to_string).collect();
        let n = self.rng.gen_range(0..=max_clauses);
        let clauses = (0..n)
            .map(|_| {
                let x = names.choose(&mut self.rng).unwrap().clone();
                self.clause(&env, &x, depth)
            })
            .collect();
        let goal = self.prop(&env, depth);
        Problem {
            theory: self.theory_name.clone(),
            env,
            definite: DefiniteFormula { clauses },
            goal,
        }
    }

    /// A small problem: at most two variables of sorts with at most two
    /// arrows, at most three clauses.
    pub fn problem(&mut self) -> Problem {
        let sorts = relational_sorts(&self.base, 2, self.config.max_order);
        let env = self.env(&sorts, 2);
        let depth = self.config.max_depth.min(2);
        self.problem_over(env, 3, depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sorting::check_goal_term;

    #[test]
    fn sort_enumeration_respects_bounds() {
        let sorts = relational_sorts(&Sort::int(), 3, 3);
        assert!(sorts.contains(&Sort::Prop));
        assert!(sorts.iter().all(|s| s.is_relational() && s.order() <= 3));
        let ho = Sort::arrow(Sort::curried([Sort::int(), Sort::int()], Sort::Prop), Sort::Prop);
        assert!(sorts.contains(&ho));
        let mut dedup = sorts.clone();
        dedup.sort_by_key(|s| s.to_string());
        dedup.dedup();
        assert_eq!(dedup.len(), sorts.len());
    }

    #[test]
    fn generated_goals_are_well_sorted() {
        let th = FiniteTheory::modular(2);
        let mut g = Gen::new(&th, "int", 7);
        let env = SortEnv::from_pairs([
            ("X".to_string(), Sort::arrow(Sort::int(), Sort::Prop)),
            ("n".to_string(), Sort::int()),
        ])
        .unwrap();
        for _ in 0..200 {
            let rho = g.relational_sort(2);
            let t = g.goal(&env, &rho, 4);
            check_goal_term(&g.sig, &env, &t, &rho).unwrap();
        }
    }

    #[test]
    fn generated_problems_validate() {
        let th = FiniteTheory::modular(2);
        let mut g = Gen::new(&th, "int", 11);
        for _ in 0..100 {
            let p = g.problem();
            p.validate(&g.sig).unwrap();
        }
    }
}
