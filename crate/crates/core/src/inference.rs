//! Refinement type inference: fresh relation constants, type templates and
//! syntax-directed generation of first-order Horn constraints.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::problem::Problem;
use crate::sort::{Sort, SortEnv};
use crate::sorting::{self, Signature};
use crate::syntax::print_term;
use crate::term::{fresh_name, fresh_or, Const, Term};
use crate::transform::{self, program_of_definite, LogicProgram};
use crate::types::{prepare_goal, RefType, TypeEntry, TypeEnv};

/// Prefix of generated relation constants; user identifiers cannot start
/// with `$`.
pub const FRESH_PREFIX: &str = "$R";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InferError {
    #[error("no template for non-relational sort `{0}`")]
    NotRelational(Sort),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("argument `{0}` is not a constraint term")]
    NotConstraintArg(String),
    #[error("`{0}` has no propositional type")]
    NotBool(String),
    #[error("cannot infer a type for `{0}`")]
    Unsupported(String),
    #[error("constraint `{0}` is not Horn")]
    NotHorn(String),
}

/// A declared relation constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelDecl {
    pub name: String,
    pub args: Vec<Sort>,
}

/// Deterministic source of relation constants `$R0`, `$R1`, ...
#[derive(Clone, Debug, Default)]
pub struct FreshSupply {
    decls: Vec<RelDecl>,
}

impl FreshSupply {
    pub fn new() -> FreshSupply {
        FreshSupply::default()
    }

    pub fn decls(&self) -> &[RelDecl] {
        &self.decls
    }

    /// `freshRel(Δ; ρ)`: a new constant applied to the individual variables
    /// of `delta`, in order.
    pub fn fresh_rel(&mut self, delta: &SortEnv, rho: &Sort) -> Term {
        let name = format!("{FRESH_PREFIX}{}", self.decls.len());
        let inds: Vec<(&str, &Sort)> = delta.individuals().collect();
        let mut args: Vec<Sort> = inds.iter().map(|(_, s)| (*s).clone()).collect();
        args.extend(rho.uncurry().0.into_iter().cloned());
        self.decls.push(RelDecl {
            name: name.clone(),
            args,
        });
        Term::apps(Term::sym(name), inds.iter().map(|(x, _)| Term::var(*x)))
    }

    /// `freshTy(Δ; σ)` for relational `σ`.
    pub fn fresh_ty(&mut self, delta: &SortEnv, sigma: &Sort) -> Result<RefType, InferError> {
        match sigma {
            Sort::Prop => Ok(RefType::bool(self.fresh_rel(delta, &Sort::Prop))),
            Sort::Arrow(a, b) if a.is_base() && b.is_relational() => {
                let avoid: BTreeSet<String> = delta.names().map(str::to_string).collect();
                let z = fresh_or("z", &avoid);
                let body = self.fresh_ty(&delta.extended(&z, (**a).clone()), b)?;
                Ok(RefType::dep(z, (**a).clone(), body))
            }
            Sort::Arrow(a, b) if a.is_relational() && b.is_relational() => Ok(RefType::arrow(
                self.fresh_ty(delta, a)?,
                self.fresh_ty(delta, b)?,
            )),
            _ => Err(InferError::NotRelational(sigma.clone())),
        }
    }

    /// `freshEnv(Δ)`: individuals are kept, relational variables get templates.
    pub fn fresh_env(&mut self, delta: &SortEnv) -> Result<TypeEnv, InferError> {
        let mut g = TypeEnv::new();
        for (x, s) in delta.iter() {
            let e = if s.is_base() {
                TypeEntry::Ind(s.clone())
            } else {
                TypeEntry::Ty(self.fresh_ty(delta, s)?)
            };
            g = g.extended(x, e);
        }
        Ok(g)
    }
}

fn conj2(a: Term, b: Term) -> Term {
    if a.is_const(&Const::True) {
        b
    } else if b.is_const(&Const::True) {
        a
    } else {
        Term::and(a, b)
    }
}

/// `C ⊩ T1 ⊑ T2`.
pub fn infer_sub(t1: &RefType, t2: &RefType) -> Result<Term, InferError> {
    match (t1, t2) {
        (RefType::Bool(phi), RefType::Bool(psi)) => Ok(Term::implies(phi.clone(), psi.clone())),
        (RefType::Arrow(a1, b1), RefType::Arrow(a2, b2)) => {
            Ok(conj2(infer_sub(a2, a1)?, infer_sub(b1, b2)?))
        }
        (RefType::Dep(x, a, p), RefType::Dep(y, _, q)) => {
            let mut avoid = p.free_vars();
            avoid.remove(x);
            let mut fq = q.free_vars();
            fq.remove(y);
            avoid.extend(fq);
            let z = if x == y { x.clone() } else { fresh_or(x, &avoid) };
            let c = infer_sub(&p.subst(x, &Term::var(z.clone())), &q.subst(y, &Term::var(z.clone())))?;
            Ok(Term::forall(z, a.clone(), c))
        }
        _ => Err(InferError::Unsupported(format!(
            "{} <= {}",
            crate::syntax::print_type(t1),
            crate::syntax::print_type(t2)
        ))),
    }
}

/// Inference state: the signature grows with every fresh constant.
pub struct Inferencer {
    pub sig: Signature,
    pub supply: FreshSupply,
}

impl Inferencer {
    pub fn new(sig: &Signature) -> Inferencer {
        Inferencer {
            sig: sig.clone(),
            supply: FreshSupply::new(),
        }
    }

    fn declare_new(&mut self, before: usize) {
        for d in &self.supply.decls()[before..] {
            self.sig
                .declare(d.name.clone(), Sort::curried(d.args.iter().cloned(), Sort::Prop));
        }
    }

    pub fn fresh_ty(&mut self, delta: &SortEnv, sigma: &Sort) -> Result<RefType, InferError> {
        let before = self.supply.decls().len();
        let t = self.supply.fresh_ty(delta, sigma)?;
        self.declare_new(before);
        Ok(t)
    }

    pub fn fresh_env(&mut self, delta: &SortEnv) -> Result<TypeEnv, InferError> {
        let before = self.supply.decls().len();
        let g = self.supply.fresh_env(delta)?;
        self.declare_new(before);
        Ok(g)
    }

    /// `Γ ‖ C ⊩ G : T`.
    pub fn infer_term(&mut self, gamma: &TypeEnv, g: &Term) -> Result<(Term, RefType), InferError> {
        let flat = gamma.flat();
        if sorting::is_constraint_formula(&self.sig, &flat, g) {
            return Ok((Term::tt(), RefType::bool(g.clone())));
        }
        for (c, mk) in [(Const::And, Term::and as fn(Term, Term) -> Term), (Const::Or, Term::or)] {
            if let Some((a, b)) = g.as_binary(&c) {
                let (c1, t1) = self.infer_term(gamma, a)?;
                let (c2, t2) = self.infer_term(gamma, b)?;
                return match (t1, t2) {
                    (RefType::Bool(p1), RefType::Bool(p2)) => Ok((conj2(c1, c2), RefType::bool(mk(p1, p2)))),
                    _ => Err(InferError::NotBool(print_term(g))),
                };
            }
        }
        if let Some((Const::Exists(s), x, _, body)) = g.as_binder() {
            if s.is_base() {
                let (x2, body2) = self.unclash(gamma, x, body);
                let (c, t) = self.infer_term(&gamma.extended(&x2, TypeEntry::Ind(s.clone())), &body2)?;
                let RefType::Bool(phi) = t else {
                    return Err(InferError::NotBool(print_term(body)));
                };
                return Ok((
                    forall_if_used(&x2, s, c),
                    RefType::bool(Term::exists(x2, s.clone(), phi)),
                ));
            }
        }
        match g {
            Term::Var(x) => match gamma.get(x) {
                Some(TypeEntry::Ty(t)) => Ok((Term::tt(), t.clone())),
                _ => Err(InferError::Unbound(x.clone())),
            },
            Term::Abs(x, s, body) => {
                let (x2, body2) = self.unclash(gamma, x, body);
                if s.is_base() {
                    let (c, t) = self.infer_term(&gamma.extended(&x2, TypeEntry::Ind(s.clone())), &body2)?;
                    Ok((forall_if_used(&x2, s, c), RefType::dep(x2, s.clone(), t)))
                } else {
                    let t1 = self.fresh_ty(&flat, s)?;
                    let (c, t2) = self.infer_term(&gamma.extended(&x2, TypeEntry::Ty(t1.clone())), &body2)?;
                    Ok((c, RefType::arrow(t1, t2)))
                }
            }
            Term::App(f, a) => {
                let (c1, tf) = self.infer_term(gamma, f)?;
                match tf {
                    RefType::Dep(x, b, t) => {
                        if !sorting::is_constraint_term_of(&self.sig, &flat, a, &b) {
                            return Err(InferError::NotConstraintArg(print_term(a)));
                        }
                        Ok((c1, t.subst(&x, a)))
                    }
                    RefType::Arrow(t1, t2) => {
                        let (c2, t3) = self.infer_term(gamma, a)?;
                        let c3 = infer_sub(&t3, &t1)?;
                        Ok((conj2(conj2(c1, c2), c3), *t2))
                    }
                    RefType::Bool(_) => Err(InferError::Unsupported(print_term(g))),
                }
            }
            Term::Const(_) => Err(InferError::Unsupported(print_term(g))),
        }
    }

    fn unclash(&self, gamma: &TypeEnv, x: &str, body: &Term) -> (String, Term) {
        if !gamma.contains(x) {
            return (x.to_string(), body.clone());
        }
        let mut avoid: BTreeSet<String> = gamma.iter().map(|(y, _)| y.to_string()).collect();
        body.all_names(&mut avoid);
        let x2 = fresh_name(x, &avoid);
        let b2 = body.rename(x, &x2);
        (x2, b2)
    }

    /// `C ⊩ P : Γ`.
    pub fn infer_program(&mut self, p: &LogicProgram) -> Result<(Term, TypeEnv), InferError> {
        let gamma = self.fresh_env(&p.env)?;
        let mut c = Term::tt();
        for (x, body) in p.defs() {
            let (cx, tx) = self.infer_term(&gamma, &prepare_goal(body))?;
            let target = gamma.get_type(x).ok_or_else(|| InferError::Unbound(x.to_string()))?;
            c = conj2(c, conj2(cx, infer_sub(&tx, target)?));
        }
        Ok((c, gamma))
    }
}

fn forall_if_used(x: &str, s: &Sort, c: Term) -> Term {
    if c.occurs_free(x) {
        Term::forall(x, s.clone(), c)
    } else {
        c
    }
}

pub fn fresh_rel(delta: &SortEnv, rho: &Sort, supply: &mut FreshSupply) -> Term {
    supply.fresh_rel(delta, rho)
}

pub fn fresh_ty(delta: &SortEnv, sigma: &Sort, supply: &mut FreshSupply) -> Result<RefType, InferError> {
    supply.fresh_ty(delta, sigma)
}

pub fn fresh_env(delta: &SortEnv, supply: &mut FreshSupply) -> Result<TypeEnv, InferError> {
    supply.fresh_env(delta)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Head {
    Rel(String, Vec<Term>),
    False,
}

/// `∀ vars. body ⇒ head`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornClause {
    pub vars: Vec<(String, Sort)>,
    pub body: Term,
    pub head: Head,
}

impl HornClause {
    pub fn head_term(&self) -> Term {
        match &self.head {
            Head::Rel(r, args) => Term::apps(Term::sym(r.clone()), args.iter().cloned()),
            Head::False => Term::ff(),
        }
    }

    pub fn to_term(&self) -> Term {
        Term::forall_many(&self.vars, Term::implies(self.body.clone(), self.head_term()))
    }
}

impl fmt::Display for HornClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_term(&self.to_term()))
    }
}

/// A first-order constrained Horn clause system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChcSystem {
    pub decls: Vec<RelDecl>,
    pub clauses: Vec<HornClause>,
    pub goal: HornClause,
}

impl ChcSystem {
    pub fn all_clauses(&self) -> impl Iterator<Item = &HornClause> {
        self.clauses.iter().chain(std::iter::once(&self.goal))
    }
}

impl fmt::Display for ChcSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            let args: Vec<String> = d.args.iter().map(|s| s.to_string()).collect();
            writeln!(f, "rel {}({})", d.name, args.join(", "))?;
        }
        for c in self.all_clauses() {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

fn is_fresh(name: &str) -> bool {
    name.starts_with(FRESH_PREFIX)
}

fn mentions_fresh(t: &Term) -> bool {
    let mut syms = BTreeSet::new();
    t.symbols(&mut syms);
    syms.iter().any(|s| is_fresh(s))
}

struct HornBuilder<'a> {
    decls: &'a [RelDecl],
    out: Vec<HornClause>,
}

impl HornBuilder<'_> {
    fn add(&mut self, c: &Term, vars: &[(String, Sort)]) -> Result<(), InferError> {
        if c.is_const(&Const::True) {
            return Ok(());
        }
        if let Some((a, b)) = c.as_binary(&Const::And) {
            self.add(a, vars)?;
            return self.add(b, vars);
        }
        if let Some((Const::Forall(s), x, _, body)) = c.as_binder() {
            let mut vs: Vec<(String, Sort)> = vars.iter().filter(|(y, _)| y != x).cloned().collect();
            vs.push((x.to_string(), s.clone()));
            return self.add(body, &vs);
        }
        if let Some((body, head)) = c.as_binary(&Const::Implies) {
            return self.implication(body, head, vars);
        }
        Err(InferError::NotHorn(print_term(c)))
    }

    fn implication(&mut self, body: &Term, head: &Term, vars: &[(String, Sort)]) -> Result<(), InferError> {
        if head.is_const(&Const::True) {
            return Ok(());
        }
        if let Some((a, b)) = head.as_binary(&Const::And) {
            self.implication(body, a, vars)?;
            return self.implication(body, b, vars);
        }
        let (h, args) = head.spine();
        if let Term::Const(Const::Sym(r)) = h {
            if is_fresh(r) {
                let decl = self.decls.iter().find(|d| &d.name == r);
                let sorts: Vec<Sort> = match decl {
                    Some(d) => d.args.clone(),
                    None => return Err(InferError::NotHorn(print_term(head))),
                };
                self.out.push(make_clause(body, Some((r.clone(), args, sorts)), vars));
                return Ok(());
            }
        }
        if mentions_fresh(head) {
            return Err(InferError::NotHorn(print_term(head)));
        }
        let body = conj2(body.clone(), transform::negate_constraint(head));
        self.out.push(make_clause(&body, None, vars));
        Ok(())
    }
}

/// Builds a clause with variable arguments in the head and existentials
/// lifted out of the body.
fn make_clause(body: &Term, head: Option<(String, Vec<&Term>, Vec<Sort>)>, vars: &[(String, Sort)]) -> HornClause {
    let mut avoid: BTreeSet<String> = vars.iter().map(|(x, _)| x.clone()).collect();
    body.all_names(&mut avoid);
    if let Some((_, args, _)) = &head {
        for a in args {
            a.all_names(&mut avoid);
        }
    }
    let mut vs: Vec<(String, Sort)> = vars.to_vec();
    let mut body = lift_exists(body, &mut avoid, &mut vs);
    let head = match head {
        None => Head::False,
        Some((r, args, sorts)) => {
            let mut seen = BTreeSet::new();
            let mut hargs = Vec::new();
            for (a, s) in args.into_iter().zip(sorts) {
                match a {
                    Term::Var(x) if !seen.contains(x) => {
                        seen.insert(x.clone());
                        hargs.push(a.clone());
                    }
                    _ => {
                        let v = fresh_or("v", &avoid);
                        avoid.insert(v.clone());
                        seen.insert(v.clone());
                        body = conj2(body, Term::eq(Term::var(v.clone()), a.clone()));
                        vs.push((v.clone(), s));
                        hargs.push(Term::var(v));
                    }
                }
            }
            Head::Rel(r, hargs)
        }
    };
    let mut free = body.free_vars();
    if let Head::Rel(_, args) = &head {
        for a in args {
            free.extend(a.free_vars());
        }
    }
    let mut vars: Vec<(String, Sort)> = vs.into_iter().filter(|(x, _)| free.contains(x)).collect();
    for x in free {
        if !vars.iter().any(|(y, _)| *y == x) {
            vars.push((x, Sort::int()));
        }
    }
    HornClause { vars, body, head }
}

fn lift_exists(t: &Term, avoid: &mut BTreeSet<String>, vars: &mut Vec<(String, Sort)>) -> Term {
    for c in [Const::And, Const::Or] {
        if let Some((a, b)) = t.as_binary(&c) {
            let a2 = lift_exists(a, avoid, vars);
            let b2 = lift_exists(b, avoid, vars);
            return Term::apps(Term::Const(c), [a2, b2]);
        }
    }
    if let Some((Const::Exists(s), x, _, body)) = t.as_binder() {
        if s.is_base() {
            let taken = avoid.contains(x) || vars.iter().any(|(y, _)| y == x);
            let (x2, body2) = if taken {
                let x2 = fresh_name(x, avoid);
                (x2.clone(), body.rename(x, &x2))
            } else {
                (x.to_string(), body.clone())
            };
            avoid.insert(x2.clone());
            vars.push((x2, s.clone()));
            return lift_exists(&body2, avoid, vars);
        }
    }
    t.clone()
}

/// Splits a constraint `C` built from `∧`, `∀` and `⇒` into Horn clauses.
pub fn horn_clauses(c: &Term, decls: &[RelDecl]) -> Result<Vec<HornClause>, InferError> {
    let mut b = HornBuilder { decls, out: Vec::new() };
    b.add(c, &[])?;
    Ok(b.out)
}

/// The program of a problem with guards and relational existentials removed.
pub fn program_of_problem(p: &Problem) -> LogicProgram {
    let prog = program_of_definite(&p.env, &p.definite);
    prog.map_defs(prepare_goal)
}

/// Inference result for a whole problem.
#[derive(Clone, Debug)]
pub struct Inference {
    pub gamma: TypeEnv,
    pub goal_type: RefType,
    pub program_constraint: Term,
    pub goal_constraint: Term,
    pub system: ChcSystem,
}

/// Runs inference on a problem and assembles `C1 ∧ C2`, `φ ⇒ false`.
pub fn infer_problem(sig: &Signature, p: &Problem) -> Result<Inference, InferError> {
    let prog = program_of_problem(p);
    let mut inf = Inferencer::new(sig);
    let (c1, gamma) = inf.infer_program(&prog)?;
    let (c2, t) = inf.infer_term(&gamma, &prepare_goal(&p.goal))?;
    let RefType::Bool(phi) = &t else {
        return Err(InferError::NotBool(print_term(&p.goal)));
    };
    let decls = inf.supply.decls().to_vec();
    let clauses = horn_clauses(&conj2(c1.clone(), c2.clone()), &decls)?;
    let goal = make_clause(phi, None, &[]);
    Ok(Inference {
        gamma,
        goal_type: t.clone(),
        program_constraint: c1,
        goal_constraint: c2,
        system: ChcSystem { decls, clauses, goal },
    })
}

pub fn chc_of_problem(sig: &Signature, p: &Problem) -> Result<ChcSystem, InferError> {
    Ok(infer_problem(sig, p)?.system)
}

/// Replaces relation constants by closed abstractions and beta-normalises.
pub fn instantiate_term(t: &Term, model: &BTreeMap<String, Term>) -> Term {
    fn go(t: &Term, m: &BTreeMap<String, Term>) -> Term {
        match t {
            Term::Const(Const::Sym(s)) => m.get(s).cloned().unwrap_or_else(|| t.clone()),
            Term::Var(_) | Term::Const(_) => t.clone(),
            Term::Abs(x, s, b) => Term::Abs(x.clone(), s.clone(), Box::new(go(b, m))),
            Term::App(f, a) => Term::app(go(f, m), go(a, m)),
        }
    }
    transform::beta_normal(&go(t, model))
}

/// Instantiates every refinement of `gamma` with an interpretation of the
/// relation constants.
pub fn instantiate_env(gamma: &TypeEnv, model: &BTreeMap<String, Term>) -> TypeEnv {
    gamma.map_types(|t| instantiate_type(t, model))
}

pub fn instantiate_type(t: &RefType, model: &BTreeMap<String, Term>) -> RefType {
    match t {
        RefType::Bool(phi) => RefType::bool(instantiate_term(phi, model)),
        RefType::Dep(x, s, b) => RefType::dep(x.clone(), s.clone(), instantiate_type(b, model)),
        RefType::Arrow(a, b) => RefType::arrow(instantiate_type(a, model), instantiate_type(b, model)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type, print_type};

    #[test]
    fn fresh_rel_uses_individuals_in_order() {
        let delta = SortEnv::from_pairs([
            ("s".to_string(), Sort::int()),
            ("f".to_string(), Sort::arrow(Sort::int(), Sort::Prop)),
            ("n".to_string(), Sort::int()),
        ])
        .unwrap();
        let mut supply = FreshSupply::new();
        assert_eq!(print_term(&supply.fresh_rel(&delta, &Sort::Prop)), "$R0 s n");
        assert_eq!(print_term(&supply.fresh_rel(&SortEnv::new(), &Sort::Prop)), "$R1");
    }

    #[test]
    fn fresh_dependent_template() {
        let delta = SortEnv::from_pairs([("x".to_string(), Sort::int())]).unwrap();
        let mut supply = FreshSupply::new();
        let t = supply.fresh_ty(&delta, &Sort::arrow(Sort::int(), Sort::Prop)).unwrap();
        assert_eq!(print_type(&t), "(z:int) -> bool[$R0 x z]");
        assert_eq!(supply.decls()[0].args.len(), 2);
    }

    #[test]
    fn templates_refine_their_sort() {
        let mut inf = Inferencer::new(&Signature::zla());
        let s = Sort::arrow(
            Sort::arrow(Sort::int(), Sort::arrow(Sort::int(), Sort::Prop)),
            Sort::arrow(Sort::int(), Sort::Prop),
        );
        let t = inf.fresh_ty(&SortEnv::new(), &s).unwrap();
        assert_eq!(crate::types::refines(&inf.sig, &SortEnv::new(), &t).unwrap(), s);
    }

    #[test]
    fn subtyping_constraints() {
        let a = parse_type("bool[x > 0]").unwrap();
        let b = parse_type("bool[x >= 0]").unwrap();
        assert_eq!(print_term(&infer_sub(&a, &b).unwrap()), "x > 0 => x >= 0");
        let f = RefType::arrow(a.clone(), b.clone());
        let g = RefType::arrow(b.clone(), a.clone());
        assert_eq!(
            print_term(&infer_sub(&f, &g).unwrap()),
            "(x >= 0 => x > 0) && (x >= 0 => x > 0)"
        );
    }

    #[test]
    fn constant_and_conjunction() {
        let mut inf = Inferencer::new(&Signature::zla());
        let gamma = TypeEnv::new().extended("n", TypeEntry::Ind(Sort::int()));
        let (c, t) = inf.infer_term(&gamma, &parse_term("n <= 0").unwrap()).unwrap();
        assert!(c.is_const(&Const::True));
        assert_eq!(print_type(&t), "bool[n <= 0]");
    }

    #[test]
    fn empty_program_and_trivial_goal() {
        let p = crate::syntax::parse_problem("theory zla; clauses true; goal false;").unwrap();
        let sys = chc_of_problem(&Signature::zla(), &p).unwrap();
        assert!(sys.decls.is_empty() && sys.clauses.is_empty());
        assert_eq!(sys.goal.to_string(), "false => false");
    }

    #[test]
    fn propositional_variable_without_clauses() {
        let p = crate::syntax::parse_problem("theory zla; env X:o; clauses true; goal X;").unwrap();
        let inf = infer_problem(&Signature::zla(), &p).unwrap();
        let sys = inf.system;
        assert_eq!(sys.decls.len(), 1);
        assert_eq!(sys.clauses.len(), 1);
        assert_eq!(sys.clauses[0].to_string(), "false => $R0");
        assert_eq!(sys.goal.to_string(), "$R0 => false");
    }

    #[test]
    fn heads_get_variable_arguments() {
        let decls = vec![RelDecl {
            name: "$R0".into(),
            args: vec![Sort::int()],
        }];
        let mut sig = Signature::zla();
        sig.declare("$R0", Sort::arrow(Sort::int(), Sort::Prop));
        let c = Term::forall(
            "n",
            Sort::int(),
            Term::implies(
                Term::app(Term::sym("$R0"), Term::var("n")),
                Term::app(Term::sym("$R0"), Term::op("-", Term::var("n"), Term::int(1))),
            ),
        );
        let cs = horn_clauses(&c, &decls).unwrap();
        assert_eq!(cs[0].to_string(), "forall n v:int. $R0 n && v = n - 1 => $R0 v");
    }
}
