//! Ideal and relational semantics of refinement types over finite frames.

use super::eval::Evaluator;
use super::SemError;
use crate::sort::{Sort, SortEnv};
use crate::types::RefType;

/// A valuation of individual variables: name, base sort, carrier index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndEnv {
    vars: Vec<(String, Sort, usize)>,
}

impl IndEnv {
    pub fn new() -> IndEnv {
        IndEnv::default()
    }

    pub fn extended(&self, x: &str, s: &Sort, v: usize) -> IndEnv {
        let mut e = self.clone();
        e.vars.retain(|(y, _, _)| y != x);
        e.vars.push((x.to_string(), s.clone(), v));
        e
    }

    pub fn sort_env(&self) -> SortEnv {
        let mut env = SortEnv::new();
        for (x, s, _) in &self.vars {
            env = env.extended(x, s.clone());
        }
        env
    }

    pub fn values(&self) -> Vec<usize> {
        self.vars.iter().map(|(_, _, v)| *v).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Sort, usize)> {
        self.vars.iter().map(|(x, s, v)| (x.as_str(), s, *v))
    }
}

fn refinement(ev: &Evaluator<'_>, phi: &crate::term::Term, env: &IndEnv) -> Result<usize, SemError> {
    ev.eval(&env.sort_env(), phi, &env.values())
}

/// Membership mask of the ideal semantics over the frame of `T`'s sort.
pub fn ideal_mask(ev: &Evaluator<'_>, t: &RefType, env: &IndEnv) -> Result<Vec<bool>, SemError> {
    let frame = ev.frame(&t.sort())?;
    match t {
        RefType::Bool(phi) => {
            let v = refinement(ev, phi, env)?;
            Ok(vec![true, v == 1])
        }
        RefType::Dep(x, b, body) => {
            let n = ev.frame(b)?.size;
            let masks = (0..n)
                .map(|i| ideal_mask(ev, body, &env.extended(x, b, i)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((0..frame.size)
                .map(|f| (0..n).all(|i| masks[i][frame.apply(f, i)]))
                .collect())
        }
        RefType::Arrow(t1, t2) => {
            let m1 = ideal_mask(ev, t1, env)?;
            let dom: Vec<usize> = (0..m1.len()).filter(|&r| m1[r]).collect();
            let m2 = ideal_mask(ev, t2, env)?;
            Ok((0..frame.size)
                .map(|f| dom.iter().all(|&r| m2[frame.apply(f, r)]))
                .collect())
        }
    }
}

/// The ideal semantics: the inhabitants of `T`, as frame indices.
pub fn ideal(ev: &Evaluator<'_>, t: &RefType, env: &IndEnv) -> Result<Vec<usize>, SemError> {
    let m = ideal_mask(ev, t, env)?;
    Ok((0..m.len()).filter(|&i| m[i]).collect())
}

/// The relational semantics: the largest inhabitant, computed structurally.
pub fn rel(ev: &Evaluator<'_>, t: &RefType, env: &IndEnv) -> Result<usize, SemError> {
    match t {
        RefType::Bool(phi) => refinement(ev, phi, env),
        RefType::Dep(x, b, body) => {
            let frame = ev.frame(&t.sort())?;
            let n = ev.frame(b)?.size;
            let table = (0..n)
                .map(|i| rel(ev, body, &env.extended(x, b, i)))
                .collect::<Result<Vec<_>, _>>()?;
            frame
                .from_table(&table)
                .ok_or_else(|| SemError::NotMonotone(frame.sort.clone()))
        }
        RefType::Arrow(t1, t2) => {
            let frame = ev.frame(&t.sort())?;
            let dom = frame.dom().unwrap().clone();
            let cod = frame.cod().unwrap().clone();
            let r1 = rel(ev, t1, env)?;
            let r2 = rel(ev, t2, env)?;
            let top = cod.top();
            let table: Vec<usize> = (0..dom.size)
                .map(|r| if dom.leq(r, r1) { r2 } else { top })
                .collect();
            frame
                .from_table(&table)
                .ok_or_else(|| SemError::NotMonotone(frame.sort.clone()))
        }
    }
}

/// Elements of the frame below `top`.
pub fn down_closure(ev: &Evaluator<'_>, sort: &Sort, top: usize) -> Result<Vec<usize>, SemError> {
    let frame = ev.frame(sort)?;
    Ok((0..frame.size).filter(|&f| frame.leq(f, top)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::frame::{Frames, Kind};
    use crate::semantics::theory::FiniteTheory;
    use crate::syntax::parse_type_with;
    use std::sync::Arc;

    #[test]
    fn ideal_is_down_closure_of_relation() {
        let th = Arc::new(FiniteTheory::modular(2));
        let sig = th.signature();
        let frames = Frames::new(th);
        for src in [
            "(x:int) -> bool[x = 0]",
            "((x:int) -> bool[x = 1]) -> bool[false]",
            "((x:int) -> bool[true]) -> (y:int) -> bool[y = 0]",
        ] {
            let t = parse_type_with(src, &sig).unwrap();
            for kind in [Kind::Standard, Kind::Monotone] {
                let ev = Evaluator::new(&frames, kind);
                let top = rel(&ev, &t, &IndEnv::new()).unwrap();
                assert_eq!(
                    ideal(&ev, &t, &IndEnv::new()).unwrap(),
                    down_closure(&ev, &t.sort(), top).unwrap(),
                    "{src} ({kind})"
                );
            }
        }
    }
}
