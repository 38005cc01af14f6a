//! One-step consequence operators, least fixpoints and brute-force
//! solvability over finite frames.

use super::eval::{Compiled, Evaluator};
use super::frame::{Frames, Kind};
use super::SemError;
use crate::problem::{DefiniteFormula, Problem};
use crate::sort::SortEnv;
use crate::term::Term;
use crate::transform::{program_of_definite, LogicProgram};

/// A valuation of an environment: one frame index per variable, in the
/// environment's order.
pub type Valuation = Vec<usize>;

/// A logic program compiled for one frame kind.
pub struct CompiledProgram<'e, 'f> {
    pub ev: &'e Evaluator<'f>,
    pub env: SortEnv,
    defs: Vec<Compiled>,
}

impl<'e, 'f> CompiledProgram<'e, 'f> {
    pub fn new(ev: &'e Evaluator<'f>, p: &LogicProgram) -> Result<Self, SemError> {
        let defs = p
            .env
            .names()
            .map(|x| ev.compile(&p.env, p.def(x).expect("every variable has a definition")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CompiledProgram {
            ev,
            env: p.env.clone(),
            defs,
        })
    }

    /// `T(α)`.
    pub fn step(&self, alpha: &[usize]) -> Result<Valuation, SemError> {
        self.defs.iter().map(|d| d.run(alpha)).collect()
    }

    pub fn is_prefix_point(&self, alpha: &[usize]) -> Result<bool, SemError> {
        let next = self.step(alpha)?;
        Ok(self
            .defs
            .iter()
            .zip(next.iter().zip(alpha))
            .all(|(d, (a, b))| d.frame.leq(*a, *b)))
    }

    pub fn bottom(&self) -> Valuation {
        self.defs.iter().map(|d| d.frame.bottom()).collect()
    }

    /// Kleene iteration from the bottom valuation.
    pub fn least_fixpoint(&self) -> Result<Valuation, SemError> {
        let mut cur = self.bottom();
        loop {
            let next = self.step(&cur)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }
}

pub fn one_step(frames: &Frames, kind: Kind, p: &LogicProgram, alpha: &[usize]) -> Result<Valuation, SemError> {
    let ev = Evaluator::new(frames, kind);
    CompiledProgram::new(&ev, p)?.step(alpha)
}

pub fn one_step_standard(frames: &Frames, p: &LogicProgram, alpha: &[usize]) -> Result<Valuation, SemError> {
    one_step(frames, Kind::Standard, p, alpha)
}

pub fn one_step_monotone(frames: &Frames, p: &LogicProgram, alpha: &[usize]) -> Result<Valuation, SemError> {
    one_step(frames, Kind::Monotone, p, alpha)
}

/// `μT^M`.
pub fn least_model(frames: &Frames, p: &LogicProgram) -> Result<Valuation, SemError> {
    let ev = Evaluator::new(frames, Kind::Monotone);
    CompiledProgram::new(&ev, p)?.least_fixpoint()
}

/// Every valuation of `env` in the frames of `kind`, in lexicographic order.
pub fn all_valuations(frames: &Frames, env: &SortEnv, kind: Kind) -> Result<Vec<Valuation>, SemError> {
    let sizes = env
        .iter()
        .map(|(_, s)| frames.get(s, kind).map(|f| f.size))
        .collect::<Result<Vec<_>, _>>()?;
    let total = sizes
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n).filter(|&t| t <= frames.cap))
        .ok_or(SemError::SearchTooLarge(frames.cap))?;
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0usize; sizes.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for k in (0..sizes.len()).rev() {
            cur[k] += 1;
            if cur[k] < sizes[k] {
                break;
            }
            cur[k] = 0;
        }
    }
    Ok(out)
}

/// Standard models of `d`, found by evaluating the formula itself.
pub fn standard_models(frames: &Frames, env: &SortEnv, d: &DefiniteFormula) -> Result<Vec<Valuation>, SemError> {
    let ev = Evaluator::new(frames, Kind::Standard);
    let f = ev.compile(env, &d.to_term())?;
    let mut out = Vec::new();
    for a in all_valuations(frames, env, Kind::Standard)? {
        if f.run(&a)? == 1 {
            out.push(a);
        }
    }
    Ok(out)
}

fn valuation_leq(frames: &Frames, env: &SortEnv, kind: Kind, a: &[usize], b: &[usize]) -> Result<bool, SemError> {
    for ((_, s), (x, y)) in env.iter().zip(a.iter().zip(b)) {
        if !frames.get(s, kind)?.leq(*x, *y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The pointwise-minimal standard models of `d`.
pub fn minimal_models(frames: &Frames, env: &SortEnv, d: &DefiniteFormula) -> Result<Vec<Valuation>, SemError> {
    let models = standard_models(frames, env, d)?;
    let mut out = Vec::new();
    'outer: for (i, m) in models.iter().enumerate() {
        for (j, n) in models.iter().enumerate() {
            if i != j && n != m && valuation_leq(frames, env, Kind::Standard, n, m)? {
                continue 'outer;
            }
        }
        out.push(m.clone());
    }
    Ok(out)
}

/// Whether two valuations are comparable in the pointwise order.
pub fn comparable(frames: &Frames, env: &SortEnv, kind: Kind, a: &[usize], b: &[usize]) -> Result<bool, SemError> {
    Ok(valuation_leq(frames, env, kind, a, b)? || valuation_leq(frames, env, kind, b, a)?)
}

/// Some standard model of the clauses refutes the goal.
pub fn solvable_standard(frames: &Frames, p: &Problem) -> Result<bool, SemError> {
    let ev = Evaluator::new(frames, Kind::Standard);
    let d = ev.compile(&p.env, &p.definite.to_term())?;
    let g = ev.compile(&p.env, &p.goal)?;
    for a in all_valuations(frames, &p.env, Kind::Standard)? {
        if d.run(&a)? == 1 && g.run(&a)? == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The goal is false in the least monotone model of the logic program.
pub fn solvable_monotone(frames: &Frames, p: &Problem) -> Result<bool, SemError> {
    let ev = Evaluator::new(frames, Kind::Monotone);
    let prog = CompiledProgram::new(&ev, &program_of_definite(&p.env, &p.definite))?;
    let mu = prog.least_fixpoint()?;
    Ok(ev.compile(&p.env, &p.goal)?.run(&mu)? == 0)
}

/// Some monotone prefixed point refutes the goal, by exhaustive search.
pub fn solvable_monotone_prefix(frames: &Frames, p: &Problem) -> Result<bool, SemError> {
    let ev = Evaluator::new(frames, Kind::Monotone);
    let prog = CompiledProgram::new(&ev, &program_of_definite(&p.env, &p.definite))?;
    let g = ev.compile(&p.env, &p.goal)?;
    for a in all_valuations(frames, &p.env, Kind::Monotone)? {
        if prog.is_prefix_point(&a)? && g.run(&a)? == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Evaluates a closed-over goal under a valuation of `env`.
pub fn eval_goal(ev: &Evaluator<'_>, env: &SortEnv, g: &Term, alpha: &[usize]) -> Result<usize, SemError> {
    ev.eval(env, g, alpha)
}
