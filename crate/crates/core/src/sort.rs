//! Simple sorts and sort environments.

use std::fmt;

/// A simple sort: a base sort of individuals, the propositional sort `o`,
/// or an arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Base(String),
    Prop,
    Arrow(Box<Sort>, Box<Sort>),
}

impl Sort {
    pub fn base(name: impl Into<String>) -> Sort {
        Sort::Base(name.into())
    }

    pub fn int() -> Sort {
        Sort::Base("int".to_string())
    }

    pub fn arrow(dom: Sort, cod: Sort) -> Sort {
        Sort::Arrow(Box::new(dom), Box::new(cod))
    }

    /// Builds `a1 -> a2 -> ... -> result`.
    pub fn curried(args: impl IntoIterator<Item = Sort>, result: Sort) -> Sort {
        let args: Vec<Sort> = args.into_iter().collect();
        args.into_iter()
            .rev()
            .fold(result, |acc, a| Sort::arrow(a, acc))
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Sort::Base(_))
    }

    /// `ρ ::= o | ι → ρ | ρ → ρ`
    pub fn is_relational(&self) -> bool {
        match self {
            Sort::Prop => true,
            Sort::Base(_) => false,
            Sort::Arrow(d, c) => (d.is_base() || d.is_relational()) && c.is_relational(),
        }
    }

    /// Order of a sort; base sorts and `o` have order 1.
    pub fn order(&self) -> usize {
        match self {
            Sort::Base(_) | Sort::Prop => 1,
            Sort::Arrow(d, c) => (d.order() + 1).max(c.order()),
        }
    }

    /// Splits `a1 -> ... -> an -> r` (with `r` not an arrow) into its
    /// argument sorts and result.
    pub fn uncurry(&self) -> (Vec<&Sort>, &Sort) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Sort::Arrow(d, c) = cur {
            args.push(d.as_ref());
            cur = c;
        }
        (args, cur)
    }

    pub fn arity(&self) -> usize {
        self.uncurry().0.len()
    }

    /// Names of all base sorts mentioned.
    pub fn base_sorts(&self, out: &mut Vec<String>) {
        match self {
            Sort::Base(b) => {
                if !out.contains(b) {
                    out.push(b.clone())
                }
            }
            Sort::Prop => {}
            Sort::Arrow(d, c) => {
                d.base_sorts(out);
                c.base_sorts(out);
            }
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Base(b) => write!(f, "{b}"),
            Sort::Prop => write!(f, "o"),
            Sort::Arrow(d, c) => {
                if matches!(**d, Sort::Arrow(..)) {
                    write!(f, "({d}) -> {c}")
                } else {
                    write!(f, "{d} -> {c}")
                }
            }
        }
    }
}

/// An ordered sort environment with pairwise distinct names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SortEnv {
    entries: Vec<(String, Sort)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("variable `{0}` is already bound in the sort environment")]
pub struct DuplicateBinding(pub String);

impl SortEnv {
    pub fn new() -> SortEnv {
        SortEnv::default()
    }

    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (String, Sort)>,
    ) -> Result<SortEnv, DuplicateBinding> {
        let mut env = SortEnv::new();
        for (x, s) in pairs {
            env.push(x, s)?;
        }
        Ok(env)
    }

    pub fn push(&mut self, name: impl Into<String>, sort: Sort) -> Result<(), DuplicateBinding> {
        let name = name.into();
        if self.contains(&name) {
            return Err(DuplicateBinding(name));
        }
        self.entries.push((name, sort));
        Ok(())
    }

    /// Extension that shadows an existing binding instead of failing. Used for
    /// lexically scoped traversal of terms whose binders were already checked.
    pub fn extended(&self, name: &str, sort: Sort) -> SortEnv {
        let mut env = self.clone();
        env.entries.retain(|(x, _)| x != name);
        env.entries.push((name.to_string(), sort));
        env
    }

    pub fn get(&self, name: &str) -> Option<&Sort> {
        self.entries
            .iter()
            .rev()
            .find(|(x, _)| x == name)
            .map(|(_, s)| s)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Sort)> {
        self.entries.iter().map(|(x, s)| (x.as_str(), s))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(x, _)| x.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The variables of base sort, in declaration order.
    pub fn individuals(&self) -> impl Iterator<Item = (&str, &Sort)> {
        self.iter().filter(|(_, s)| s.is_base())
    }
}
