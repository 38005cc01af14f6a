//! Finite first-order structures used as background theories by the oracle.

use std::collections::BTreeMap;

use crate::sort::Sort;
use crate::sorting::Signature;
use crate::syntax::TheoryDecls;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("theory {theory}: {message}")]
pub struct TheoryError {
    pub theory: String,
    pub message: String,
}

/// A total function table over carrier indices, in row-major order of the
/// argument tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunTable {
    pub args: Vec<String>,
    pub result: String,
    radix: Vec<usize>,
    table: Vec<usize>,
}

impl FunTable {
    fn offset(&self, args: &[usize]) -> usize {
        args.iter()
            .zip(&self.radix)
            .fold(0, |acc, (a, r)| acc * r + a)
    }

    pub fn apply(&self, args: &[usize]) -> usize {
        self.table[self.offset(args)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelTable {
    pub args: Vec<String>,
    radix: Vec<usize>,
    table: Vec<bool>,
}

impl RelTable {
    pub fn holds(&self, args: &[usize]) -> bool {
        let off = args
            .iter()
            .zip(&self.radix)
            .fold(0, |acc, (a, r)| acc * r + a);
        self.table[off]
    }
}

/// Interpretation of a constant symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolRef<'a> {
    /// An element of a carrier, usable as a nullary constant.
    Element { sort: &'a str, index: usize },
    Fun(&'a FunTable),
    Rel(&'a RelTable),
}

/// A finite structure: enumerated carriers and total symbol tables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiniteTheory {
    pub name: String,
    sorts: Vec<(String, Vec<String>)>,
    funs: BTreeMap<String, FunTable>,
    rels: BTreeMap<String, RelTable>,
    elements: BTreeMap<String, (String, usize)>,
}

impl FiniteTheory {
    pub fn new(name: impl Into<String>) -> FiniteTheory {
        FiniteTheory {
            name: name.into(),
            ..Default::default()
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TheoryError> {
        Err(TheoryError {
            theory: self.name.clone(),
            message: message.into(),
        })
    }

    fn symbol_taken(&self, name: &str) -> bool {
        self.funs.contains_key(name) || self.rels.contains_key(name) || self.elements.contains_key(name)
    }

    pub fn add_sort(&mut self, name: &str, elements: &[String]) -> Result<(), TheoryError> {
        if name == "o" || self.carrier(name).is_some() {
            return self.err(format!("sort `{name}` declared twice"));
        }
        if elements.is_empty() {
            return self.err(format!("sort `{name}` has an empty carrier"));
        }
        for (i, e) in elements.iter().enumerate() {
            if self.symbol_taken(e) {
                return self.err(format!("element name `{e}` is already used"));
            }
            self.elements.insert(e.clone(), (name.to_string(), i));
        }
        self.sorts.push((name.to_string(), elements.to_vec()));
        Ok(())
    }

    fn radix(&self, args: &[String]) -> Result<Vec<usize>, TheoryError> {
        args.iter()
            .map(|a| match self.carrier(a) {
                Some(c) => Ok(c.len()),
                None => self.err(format!("unknown sort `{a}`")),
            })
            .collect()
    }

    fn tuple_index(&self, args: &[String], tuple: &[String]) -> Result<usize, TheoryError> {
        let mut off = 0;
        for (sort, e) in args.iter().zip(tuple) {
            let c = self.carrier(sort).unwrap();
            let Some(i) = c.iter().position(|x| x == e) else {
                return self.err(format!("`{e}` is not an element of sort `{sort}`"));
            };
            off = off * c.len() + i;
        }
        Ok(off)
    }

    pub fn add_fun(
        &mut self,
        name: &str,
        args: &[String],
        result: &str,
        entries: &[(Vec<String>, String)],
    ) -> Result<(), TheoryError> {
        if self.symbol_taken(name) {
            return self.err(format!("symbol `{name}` declared twice"));
        }
        let radix = self.radix(args)?;
        let Some(res) = self.carrier(result) else {
            return self.err(format!("unknown sort `{result}`"));
        };
        let res = res.to_vec();
        let n: usize = radix.iter().product();
        let mut table: Vec<Option<usize>> = vec![None; n];
        for (key, val) in entries {
            let off = self.tuple_index(args, key)?;
            let Some(v) = res.iter().position(|x| x == val) else {
                return self.err(format!("`{val}` is not an element of sort `{result}`"));
            };
            if table[off].replace(v).is_some() {
                return self.err(format!("`{name}` is defined twice on ({})", key.join(", ")));
            }
        }
        if table.iter().any(Option::is_none) {
            return self.err(format!("function `{name}` is not total"));
        }
        self.funs.insert(
            name.to_string(),
            FunTable {
                args: args.to_vec(),
                result: result.to_string(),
                radix,
                table: table.into_iter().map(Option::unwrap).collect(),
            },
        );
        Ok(())
    }

    pub fn add_rel(&mut self, name: &str, args: &[String], tuples: &[Vec<String>]) -> Result<(), TheoryError> {
        if self.symbol_taken(name) {
            return self.err(format!("symbol `{name}` declared twice"));
        }
        let radix = self.radix(args)?;
        let n: usize = radix.iter().product();
        let mut table = vec![false; n];
        for t in tuples {
            table[self.tuple_index(args, t)?] = true;
        }
        self.rels.insert(
            name.to_string(),
            RelTable {
                args: args.to_vec(),
                radix,
                table,
            },
        );
        Ok(())
    }

    pub fn from_decls(d: &TheoryDecls) -> Result<FiniteTheory, TheoryError> {
        let mut th = FiniteTheory::new(d.name.clone());
        for (s, elems) in &d.sorts {
            th.add_sort(s, elems)?;
        }
        for f in &d.funs {
            th.add_fun(&f.name, &f.args, &f.result, &f.entries)?;
        }
        for r in &d.rels {
            th.add_rel(&r.name, &r.args, &r.tuples)?;
        }
        Ok(th)
    }

    /// The one-point theory with base sort `name` and single element `elem`.
    pub fn one_point(sort: &str, elem: &str) -> FiniteTheory {
        let mut th = FiniteTheory::new("one");
        th.add_sort(sort, &[elem.to_string()]).unwrap();
        th
    }

    pub fn carrier(&self, sort: &str) -> Option<&[String]> {
        self.sorts
            .iter()
            .find(|(s, _)| s == sort)
            .map(|(_, e)| e.as_slice())
    }

    pub fn sorts(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.sorts.iter().map(|(s, e)| (s.as_str(), e.as_slice()))
    }

    pub fn symbol(&self, name: &str) -> Option<SymbolRef<'_>> {
        if let Some((sort, index)) = self.elements.get(name) {
            return Some(SymbolRef::Element { sort, index: *index });
        }
        if let Some(f) = self.funs.get(name) {
            return Some(SymbolRef::Fun(f));
        }
        self.rels.get(name).map(SymbolRef::Rel)
    }

    /// The constraint signature: element names as constants, plus the
    /// declared functions and relations.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::empty(self.name.clone());
        for (e, (s, _)) in &self.elements {
            sig.declare(e.clone(), Sort::base(s.clone()));
        }
        for (f, t) in &self.funs {
            let args = t.args.iter().map(|a| Sort::base(a.clone()));
            sig.declare(f.clone(), Sort::curried(args, Sort::base(t.result.clone())));
        }
        for (r, t) in &self.rels {
            let args = t.args.iter().map(|a| Sort::base(a.clone()));
            sig.declare(r.clone(), Sort::curried(args, Sort::Prop));
        }
        sig
    }

    /// Index of the element named by an integer literal, in sort `int`.
    pub fn literal(&self, n: i64) -> Option<usize> {
        match self.elements.get(&n.to_string()) {
            Some((s, i)) if s == "int" => Some(*i),
            _ => None,
        }
    }

    /// Arithmetic modulo `n` on the carrier `{0, ..., n-1}` of sort `int`,
    /// with `+ - *` and the comparisons of the representatives.
    pub fn modular(n: usize) -> FiniteTheory {
        let mut th = FiniteTheory::new(format!("mod{n}"));
        let elems: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        th.add_sort("int", &elems).unwrap();
        let int = || "int".to_string();
        let mut binop = |name: &str, f: &dyn Fn(usize, usize) -> usize| {
            let mut entries = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    entries.push((vec![a.to_string(), b.to_string()], f(a, b).to_string()));
                }
            }
            th.add_fun(name, &[int(), int()], "int", &entries).unwrap();
        };
        binop("+", &|a, b| (a + b) % n);
        binop("-", &|a, b| (a + n - b) % n);
        binop("*", &|a, b| (a * b) % n);
        binop("mod", &|a, b| if b == 0 { a } else { a % b });
        for (name, f) in [
            ("<", (|a, b| a < b) as fn(usize, usize) -> bool),
            ("<=", |a, b| a <= b),
            (">", |a, b| a > b),
            (">=", |a, b| a >= b),
        ] {
            let mut tuples = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if f(a, b) {
                        tuples.push(vec![a.to_string(), b.to_string()]);
                    }
                }
            }
            th.add_rel(name, &[int(), int()], &tuples).unwrap();
        }
        th
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_theory;

    #[test]
    fn parses_tables() {
        let th = parse_theory(
            "theory t; sort u = {a, b}; fun f : u -> u = {a -> b, b -> a}; fun c : u = b; rel r : u -> u -> o = {(a, b)};",
        )
        .unwrap();
        let Some(SymbolRef::Fun(f)) = th.symbol("f") else { panic!() };
        assert_eq!(f.apply(&[0]), 1);
        let Some(SymbolRef::Rel(r)) = th.symbol("r") else { panic!() };
        assert!(r.holds(&[0, 1]));
        assert!(!r.holds(&[1, 0]));
        assert_eq!(th.signature().get("c"), Some(&Sort::base("u")));
    }

    #[test]
    fn partial_function_is_rejected() {
        let e = parse_theory("theory t; sort u = {a, b}; fun f : u -> u = {a -> b};").unwrap_err();
        assert!(e.to_string().contains("not total"));
    }

    #[test]
    fn empty_carrier_is_rejected() {
        assert!(parse_theory("theory t; sort u = {};").is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let th = FiniteTheory::modular(5);
        let Some(SymbolRef::Fun(p)) = th.symbol("+") else { panic!() };
        assert_eq!(p.apply(&[3, 4]), 2);
        let Some(SymbolRef::Rel(lt)) = th.symbol("<") else { panic!() };
        assert!(!lt.holds(&[3, 2]));
        assert_eq!(th.literal(4), Some(4));
    }
}
