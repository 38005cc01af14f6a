//! Enumerated standard and monotone sort frames over a finite theory.
//!
//! Elements of a frame are dense indices. Function spaces over a discrete
//! domain (and all standard function spaces) are represented implicitly as
//! mixed-radix numbers; monotone function spaces over an ordered domain are
//! enumerated and listed.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::theory::FiniteTheory;
use super::SemError;
use crate::sort::Sort;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Standard,
    Monotone,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Standard => "standard",
            Kind::Monotone => "monotone",
        })
    }
}

#[derive(Debug)]
enum Repr {
    Carrier,
    Bool,
    /// All functions `dom -> cod`; `f` encodes the table `Σ f(x)·|cod|^x`.
    Full {
        dom: Arc<Frame>,
        cod: Arc<Frame>,
        pows: Vec<usize>,
    },
    /// The monotone functions `dom -> cod`, listed.
    Listed {
        dom: Arc<Frame>,
        cod: Arc<Frame>,
        tables: Vec<Vec<u32>>,
        index: HashMap<Vec<u32>, usize>,
    },
}

/// The carrier of a sort for a frame kind, with its pointwise order.
#[derive(Debug)]
pub struct Frame {
    pub sort: Sort,
    pub kind: Kind,
    pub size: usize,
    repr: Repr,
}

impl Frame {
    pub fn is_function(&self) -> bool {
        matches!(self.repr, Repr::Full { .. } | Repr::Listed { .. })
    }

    pub fn dom(&self) -> Option<&Arc<Frame>> {
        match &self.repr {
            Repr::Full { dom, .. } | Repr::Listed { dom, .. } => Some(dom),
            _ => None,
        }
    }

    pub fn cod(&self) -> Option<&Arc<Frame>> {
        match &self.repr {
            Repr::Full { cod, .. } | Repr::Listed { cod, .. } => Some(cod),
            _ => None,
        }
    }

    /// `f(x)` for a function element `f`.
    pub fn apply(&self, f: usize, x: usize) -> usize {
        match &self.repr {
            Repr::Full { cod, pows, .. } => (f / pows[x]) % cod.size,
            Repr::Listed { tables, .. } => tables[f][x] as usize,
            _ => panic!("apply on a non-function frame for sort {}", self.sort),
        }
    }

    pub fn table(&self, f: usize) -> Vec<usize> {
        let n = self.dom().map(|d| d.size).unwrap_or(0);
        (0..n).map(|x| self.apply(f, x)).collect()
    }

    /// The element with the given table, if it belongs to the frame.
    pub fn from_table(&self, table: &[usize]) -> Option<usize> {
        match &self.repr {
            Repr::Full { pows, .. } => Some(table.iter().zip(pows).map(|(v, p)| v * p).sum()),
            Repr::Listed { index, .. } => {
                let key: Vec<u32> = table.iter().map(|&v| v as u32).collect();
                index.get(&key).copied()
            }
            _ => panic!("from_table on a non-function frame"),
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        match &self.repr {
            Repr::Carrier => a == b,
            Repr::Bool => a <= b,
            Repr::Full { dom, cod, .. } | Repr::Listed { dom, cod, .. } => {
                (0..dom.size).all(|x| cod.leq(self.apply(a, x), self.apply(b, x)))
            }
        }
    }

    fn pointwise(&self, a: usize, b: usize, op: impl Fn(&Frame, usize, usize) -> usize) -> usize {
        let (dom, cod) = (self.dom().unwrap(), self.cod().unwrap());
        let t: Vec<usize> = (0..dom.size)
            .map(|x| op(cod, self.apply(a, x), self.apply(b, x)))
            .collect();
        self.from_table(&t)
            .expect("pointwise combination of frame elements stays in the frame")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Bool => a.max(b),
            Repr::Carrier => panic!("join on a carrier"),
            _ => self.pointwise(a, b, Frame::join),
        }
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Bool => a.min(b),
            Repr::Carrier => panic!("meet on a carrier"),
            _ => self.pointwise(a, b, Frame::meet),
        }
    }

    fn constant(&self, top: bool) -> usize {
        match &self.repr {
            Repr::Bool => usize::from(top),
            Repr::Carrier => panic!("no extremal element in a carrier"),
            Repr::Full { dom, cod, .. } | Repr::Listed { dom, cod, .. } => {
                let v = cod.constant(top);
                self.from_table(&vec![v; dom.size]).unwrap()
            }
        }
    }

    pub fn bottom(&self) -> usize {
        self.constant(false)
    }

    pub fn top(&self) -> usize {
        self.constant(true)
    }

    /// Whether the table of a standard element is order preserving with
    /// respect to the domain's order.
    pub fn is_monotone_table(dom: &Frame, cod: &Frame, table: &[usize]) -> bool {
        for x in 0..dom.size {
            for y in 0..dom.size {
                if x != y && dom.leq(x, y) && !cod.leq(table[x], table[y]) {
                    return false;
                }
            }
        }
        true
    }

    /// Indices sorted so that every element comes after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut below: Vec<(usize, usize)> = (0..self.size)
            .map(|x| ((0..self.size).filter(|&y| self.leq(y, x)).count(), x))
            .collect();
        below.sort();
        below.into_iter().map(|(_, x)| x).collect()
    }

    /// Strictly smaller elements that are covered directly.
    pub fn lower_covers(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| lt(y, x) && !(0..n).any(|z| lt(y, z) && lt(z, x)))
                    .collect()
            })
            .collect()
    }
}

/// Memoised frames for one theory.
pub struct Frames {
    pub theory: Arc<FiniteTheory>,
    pub cap: usize,
    cache: Mutex<HashMap<(Sort, Kind), Arc<Frame>>>,
}

pub const DEFAULT_CAP: usize = 1 << 20;

impl Frames {
    pub fn new(theory: Arc<FiniteTheory>) -> Frames {
        Frames::with_cap(theory, DEFAULT_CAP)
    }

    pub fn with_cap(theory: Arc<FiniteTheory>, cap: usize) -> Frames {
        Frames {
            theory,
            cap,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn get(&self, sort: &Sort, kind: Kind) -> Result<Arc<Frame>, SemError> {
        let key = (sort.clone(), kind);
        if let Some(f) = self.cache.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let f = Arc::new(self.build(sort, kind)?);
        self.cache.lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    fn too_large(&self, sort: &Sort, kind: Kind) -> SemError {
        SemError::FrameTooLarge {
            sort: sort.clone(),
            kind,
            cap: self.cap,
        }
    }

    fn build(&self, sort: &Sort, kind: Kind) -> Result<Frame, SemError> {
        match sort {
            Sort::Base(b) => {
                let c = self
                    .theory
                    .carrier(b)
                    .ok_or_else(|| SemError::UnknownSort(b.clone()))?;
                Ok(Frame {
                    sort: sort.clone(),
                    kind,
                    size: c.len(),
                    repr: Repr::Carrier,
                })
            }
            Sort::Prop => Ok(Frame {
                sort: Sort::Prop,
                kind,
                size: 2,
                repr: Repr::Bool,
            }),
            Sort::Arrow(d, c) => {
                let dom = self.get(d, kind)?;
                let cod = self.get(c, kind)?;
                if kind == Kind::Standard || d.is_base() {
                    let mut pows = Vec::with_capacity(dom.size);
                    let mut acc: usize = 1;
                    for _ in 0..dom.size {
                        pows.push(acc);
                        acc = acc
                            .checked_mul(cod.size)
                            .filter(|&n| n <= self.cap)
                            .ok_or_else(|| self.too_large(sort, kind))?;
                    }
                    return Ok(Frame {
                        sort: sort.clone(),
                        kind,
                        size: acc,
                        repr: Repr::Full { dom, cod, pows },
                    });
                }
                let tables = self.enumerate_monotone(&dom, &cod, sort, kind)?;
                let index = tables
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (t.clone(), i))
                    .collect();
                Ok(Frame {
                    sort: sort.clone(),
                    kind,
                    size: tables.len(),
                    repr: Repr::Listed {
                        dom,
                        cod,
                        tables,
                        index,
                    },
                })
            }
        }
    }

    /// All order-preserving tables, by backtracking along a linear extension
    /// of the domain.
    fn enumerate_monotone(
        &self,
        dom: &Frame,
        cod: &Frame,
        sort: &Sort,
        kind: Kind,
    ) -> Result<Vec<Vec<u32>>, SemError> {
        let order = dom.linear_extension();
        let covers = dom.lower_covers();
        let mut out = Vec::new();
        let mut cur = vec![0u32; dom.size];
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        // Iterative depth-first search: (position in `order`, next value).
        while let Some((pos, v)) = stack.pop() {
            if pos == order.len() {
                out.push(cur.clone());
                if out.len() > self.cap {
                    return Err(self.too_large(sort, kind));
                }
                continue;
            }
            if v >= cod.size {
                continue;
            }
            stack.push((pos, v + 1));
            let x = order[pos];
            if covers[x].iter().all(|&p| cod.leq(cur[p] as usize, v)) {
                cur[x] = v as u32;
                stack.push((pos + 1, 0));
            }
        }
        Ok(out)
    }

    /// Elements of the frame, in index order.
    pub fn elements(&self, sort: &Sort, kind: Kind) -> Result<Vec<usize>, SemError> {
        Ok((0..self.get(sort, kind)?.size).collect())
    }
}
