//! Tokenizer shared by the term, type, problem and theory parsers.

use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Forall,
    Exists,
    True,
    False,
    Mod,
    Bool,
    Theory,
    Env,
    Clauses,
    Goal,
    Lambda,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Dot,
    Arrow,
    Implies,
    And,
    Or,
    Not,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    /// Source spelling of punctuation and keywords.
    pub fn text(&self) -> &'static str {
        match self {
            Tok::Forall => "forall",
            Tok::Exists => "exists",
            Tok::True => "true",
            Tok::False => "false",
            Tok::Mod => "mod",
            Tok::Bool => "bool",
            Tok::Theory => "theory",
            Tok::Env => "env",
            Tok::Clauses => "clauses",
            Tok::Goal => "goal",
            Tok::Lambda => "\\",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Arrow => "->",
            Tok::Implies => "=>",
            Tok::And => "&&",
            Tok::Or => "||",
            Tok::Not => "~",
            Tok::Eq => "=",
            Tok::Neq => "<>",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Ident(_) | Tok::Int(_) | Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub const KEYWORDS: &[&str] = &[
    "forall", "exists", "true", "false", "mod", "bool", "theory", "env", "clauses", "goal",
];

fn keyword(s: &str) -> Option<Tok> {
    Some(match s {
        "forall" => Tok::Forall,
        "exists" => Tok::Exists,
        "true" => Tok::True,
        "false" => Tok::False,
        "mod" => Tok::Mod,
        "bool" => Tok::Bool,
        "theory" => Tok::Theory,
        "env" => Tok::Env,
        "clauses" => Tok::Clauses,
        "goal" => Tok::Goal,
        _ => return None,
    })
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok: Tok| out.push(Token { tok, line: tl, col: tc });
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let next = chars.get(i + 1).copied();
        if c == '#' || (c == '/' && next == Some('/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            push(&mut out, keyword(&word).unwrap_or(Tok::Ident(word)));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse::<i64>().map_err(|_| SyntaxError {
                line: tl,
                col: tc,
                message: format!("integer literal {digits} is out of range"),
            })?;
            col += i - start;
            push(&mut out, Tok::Int(n));
            continue;
        }
        let two: Option<Tok> = match (c, next) {
            ('-', Some('>')) => Some(Tok::Arrow),
            ('=', Some('>')) => Some(Tok::Implies),
            ('&', Some('&')) => Some(Tok::And),
            ('|', Some('|')) => Some(Tok::Or),
            ('<', Some('>')) => Some(Tok::Neq),
            ('<', Some('=')) => Some(Tok::Le),
            ('>', Some('=')) => Some(Tok::Ge),
            _ => None,
        };
        if let Some(t) = two {
            push(&mut out, t);
            i += 2;
            col += 2;
            continue;
        }
        let one = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            '.' => Tok::Dot,
            '\\' | 'λ' => Tok::Lambda,
            '~' | '¬' => Tok::Not,
            '=' => Tok::Eq,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '∀' => Tok::Forall,
            '∃' => Tok::Exists,
            '∧' => Tok::And,
            '∨' => Tok::Or,
            '⇒' => Tok::Implies,
            '→' => Tok::Arrow,
            '≤' => Tok::Le,
            '≥' => Tok::Ge,
            '≠' => Tok::Neq,
            _ => {
                return Err(SyntaxError {
                    line: tl,
                    col: tc,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        push(&mut out, one);
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(toks("∀x. x ≤ 1 ⇒ ¬b"), toks("forall x. x <= 1 => ~b"));
    }

    #[test]
    fn primes_in_identifiers() {
        assert_eq!(toks("x'"), vec![Tok::Ident("x'".into()), Tok::Eof]);
    }

    #[test]
    fn positions_are_tracked() {
        let t = tokenize("a\n  b").unwrap();
        assert_eq!((t[1].line, t[1].col), (2, 3));
    }

    #[test]
    fn dollar_is_rejected() {
        let e = tokenize("x $R0").unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(toks("a // b\nc # d"), toks("a c"));
    }
}
