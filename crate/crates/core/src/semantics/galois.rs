//! Galois connections between the standard and monotone frames of a
//! relational sort: `L ⊣ I` and `J ⊣ U`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::frame::{Frames, Kind};
use super::SemError;
use crate::sort::Sort;

/// The four maps at one sort, as lookup tables. `i` and `j` are indexed by
/// monotone elements, `l` and `u` by standard elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisMaps {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub l: Vec<usize>,
    pub u: Vec<usize>,
}

pub struct Galois<'a> {
    pub frames: &'a Frames,
    cache: Mutex<HashMap<Sort, Arc<GaloisMaps>>>,
}

impl<'a> Galois<'a> {
    pub fn new(frames: &'a Frames) -> Galois<'a> {
        Galois {
            frames,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn maps(&self, rho: &Sort) -> Result<Arc<GaloisMaps>, SemError> {
        if let Some(m) = self.cache.lock().unwrap().get(rho) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.build(rho)?);
        self.cache.lock().unwrap().insert(rho.clone(), m.clone());
        Ok(m)
    }

    fn build(&self, rho: &Sort) -> Result<GaloisMaps, SemError> {
        match rho {
            Sort::Prop => Ok(GaloisMaps {
                i: vec![0, 1],
                j: vec![0, 1],
                l: vec![0, 1],
                u: vec![0, 1],
            }),
            Sort::Base(_) => {
                // Individuals are shared by both frames.
                let n = self.frames.get(rho, Kind::Standard)?.size;
                let id: Vec<usize> = (0..n).collect();
                Ok(GaloisMaps {
                    i: id.clone(),
                    j: id.clone(),
                    l: id.clone(),
                    u: id,
                })
            }
            Sort::Arrow(d, c) => {
                if !rho.is_relational() {
                    return Err(SemError::NotRelational(rho.clone()));
                }
                let s = self.frames.get(rho, Kind::Standard)?;
                let m = self.frames.get(rho, Kind::Monotone)?;
                let cm = self.maps(c)?;
                let dm = self.maps(d)?;
                let sdom = s.dom().unwrap().size;
                // I(r)(x) = I_c(r(L_d(x))), J(r)(x) = J_c(r(U_d(x))); on a base
                // domain L_d and U_d are the identity.
                let lift = |r: usize, down: &[usize], up: &[usize]| {
                    let t: Vec<usize> = (0..sdom).map(|x| up[m.apply(r, down[x])]).collect();
                    s.from_table(&t).unwrap()
                };
                let i: Vec<usize> = (0..m.size).map(|r| lift(r, &dm.l, &cm.i)).collect();
                let j: Vec<usize> = (0..m.size).map(|r| lift(r, &dm.u, &cm.j)).collect();
                let mut l = Vec::with_capacity(s.size);
                let mut u = Vec::with_capacity(s.size);
                for x in 0..s.size {
                    let mut lo = m.top();
                    let mut hi = m.bottom();
                    for r in 0..m.size {
                        if s.leq(x, i[r]) {
                            lo = m.meet(lo, r);
                        }
                        if s.leq(j[r], x) {
                            hi = m.join(hi, r);
                        }
                    }
                    l.push(lo);
                    u.push(hi);
                }
                Ok(GaloisMaps { i, j, l, u })
            }
        }
    }
}
