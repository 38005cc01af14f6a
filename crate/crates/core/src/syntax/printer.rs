//! Canonical ASCII printing with minimal parentheses.

use std::fmt::Write;

use crate::problem::Problem;
use crate::sort::Sort;
use crate::term::{Const, Term};
use crate::types::RefType;

const BINDER: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;
const CMP: u8 = 5;
const ADD: u8 = 6;
const MUL: u8 = 7;
const UNARY: u8 = 8;
const APP: u8 = 9;
const ATOM: u8 = 10;

fn infix(name: &str) -> Option<(u8, u8, u8)> {
    // (own precedence, left operand, right operand)
    Some(match name {
        "+" | "-" => (ADD, ADD, MUL),
        "*" | "mod" => (MUL, MUL, UNARY),
        "<" | "<=" | ">" | ">=" => (CMP, ADD, ADD),
        _ => return None,
    })
}

fn section(c: &Const) -> String {
    match c {
        Const::True => "true".into(),
        Const::False => "false".into(),
        Const::And => "(&&)".into(),
        Const::Or => "(||)".into(),
        Const::Implies => "(=>)".into(),
        Const::Not => "(~)".into(),
        Const::Eq => "(=)".into(),
        Const::Neq => "(<>)".into(),
        Const::Forall(s) => format!("(forall : {s})"),
        Const::Exists(s) => format!("(exists : {s})"),
        Const::Guarded(t) => format!("(exists : [{}])", print_type(t)),
        Const::Int(n) => n.to_string(),
        Const::Sym(s) => {
            if infix(s).is_some() {
                format!("({s})")
            } else {
                s.clone()
            }
        }
    }
}

struct Printer {
    out: String,
}

impl Printer {
    fn paren(&mut self, needed: bool, f: impl FnOnce(&mut Printer)) {
        if needed {
            self.out.push('(');
        }
        f(self);
        if needed {
            self.out.push(')');
        }
    }

    fn binders(&mut self, groups: &[(String, Sort)]) {
        let mut i = 0;
        while i < groups.len() {
            let mut j = i;
            while j + 1 < groups.len() && groups[j + 1].1 == groups[i].1 {
                j += 1;
            }
            if i > 0 {
                self.out.push(' ');
            }
            let names: Vec<&str> = groups[i..=j].iter().map(|(x, _)| x.as_str()).collect();
            let _ = write!(self.out, "{}:{}", names.join(" "), groups[i].1);
            i = j + 1;
        }
    }

    fn term(&mut self, t: &Term, ctx: u8) {
        match t {
            Term::Var(x) => self.out.push_str(x),
            Term::Const(Const::Int(n)) if *n < 0 => {
                self.paren(ctx > UNARY, |p| {
                    let _ = write!(p.out, "{n}");
                })
            }
            Term::Const(c) => self.out.push_str(&section(c)),
            Term::Abs(..) => self.paren(ctx > BINDER, |p| {
                let mut groups = Vec::new();
                let mut cur = t;
                while let Term::Abs(x, s, b) = cur {
                    groups.push((x.clone(), s.clone()));
                    cur = b;
                }
                p.out.push('\\');
                p.binders(&groups);
                p.out.push_str(". ");
                p.term(cur, BINDER);
            }),
            Term::App(..) => self.app(t, ctx),
        }
    }

    fn app(&mut self, t: &Term, ctx: u8) {
        if let Some((q, _, _, _)) = t.as_binder() {
            let q = q.clone();
            return self.paren(ctx > BINDER, |p| {
                if let Const::Guarded(ty) = &q {
                    let (_, x, _, body) = t.as_binder().unwrap();
                    let _ = write!(p.out, "exists {x} : [{}]. ", print_type(ty));
                    p.term(body, BINDER);
                    return;
                }
                let kw = if matches!(q, Const::Forall(_)) { "forall" } else { "exists" };
                let mut groups = Vec::new();
                let mut cur = t;
                while let Some((c, x, s, body)) = cur.as_binder() {
                    if std::mem::discriminant(c) != std::mem::discriminant(&q)
                        || matches!(c, Const::Guarded(_))
                    {
                        break;
                    }
                    groups.push((x.to_string(), s.clone()));
                    cur = body;
                }
                let _ = write!(p.out, "{kw} ");
                p.binders(&groups);
                p.out.push_str(". ");
                p.term(cur, BINDER);
            });
        }
        let (head, args) = t.spine();
        if let Term::Const(c) = head {
            match (c, args.as_slice()) {
                (Const::And, [a, b]) => return self.binary(" && ", AND, a, AND, b, NOT, ctx),
                (Const::Or, [a, b]) => return self.binary(" || ", OR, a, OR, b, AND, ctx),
                (Const::Implies, [a, b]) => return self.binary(" => ", IMP, a, OR, b, IMP, ctx),
                (Const::Eq, [a, b]) => return self.binary(" = ", CMP, a, ADD, b, ADD, ctx),
                (Const::Neq, [a, b]) => return self.binary(" <> ", CMP, a, ADD, b, ADD, ctx),
                (Const::Not, [a]) => {
                    return self.paren(ctx > NOT, |p| {
                        p.out.push('~');
                        p.term(a, ATOM);
                    })
                }
                (Const::Sym(s), [a, b]) => {
                    if let Some((own, l, r)) = infix(s) {
                        let op = format!(" {s} ");
                        return self.binary(&op, own, a, l, b, r, ctx);
                    }
                }
                _ => {}
            }
        }
        self.paren(ctx > APP, |p| {
            p.term(head, ATOM);
            for a in &args {
                p.out.push(' ');
                p.term(a, ATOM);
            }
        });
    }

    #[allow(clippy::too_many_arguments)]
    fn binary(&mut self, op: &str, own: u8, a: &Term, l: u8, b: &Term, r: u8, ctx: u8) {
        self.paren(ctx > own, |p| {
            p.term(a, l);
            p.out.push_str(op);
            p.term(b, r);
        });
    }
}

pub fn print_term(t: &Term) -> String {
    let mut p = Printer { out: String::new() };
    p.term(t, BINDER);
    p.out
}

pub fn print_type(t: &RefType) -> String {
    fn go(t: &RefType, out: &mut String) {
        match t {
            RefType::Bool(phi) => {
                let _ = write!(out, "bool[{}]", print_term(phi));
            }
            RefType::Dep(x, s, body) => {
                let _ = write!(out, "({x}:{s}) -> ");
                go(body, out);
            }
            RefType::Arrow(a, b) => {
                if matches!(**a, RefType::Bool(_)) {
                    go(a, out);
                } else {
                    out.push('(');
                    go(a, out);
                    out.push(')');
                }
                out.push_str(" -> ");
                go(b, out);
            }
        }
    }
    let mut s = String::new();
    go(t, &mut s);
    s
}

pub fn print_problem(p: &Problem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theory {};", p.theory);
    if !p.env.is_empty() {
        out.push_str("env\n");
        for (x, s) in p.env.iter() {
            let _ = writeln!(out, "  {x} : {s};");
        }
    }
    if !p.definite.clauses.is_empty() {
        out.push_str("clauses\n");
        for c in &p.definite.clauses {
            let _ = writeln!(out, "  {};", print_term(&c.to_term()));
        }
    }
    let _ = writeln!(out, "goal {};", print_term(&p.goal));
    out
}
