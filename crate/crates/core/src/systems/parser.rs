//! Laurent polynomial text.
//!
//! ```text
//! # optional header fixing the variable order
//! vars x y z;
//! 3*x^2*y^-1 - y + 7;
//! x*y*z - 1;
//! ```
//!
//! Coefficients are integers and only matter through whether a monomial's
//! total coefficient is zero. Without a header every statement must use the
//! same set of variables, which are then ordered by name (numeric suffixes
//! compare as numbers).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use super::SystemSpec;
use crate::error::ParseError;
use crate::linalg::IntVector;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Semi,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (ln, col) = (li + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let tok = if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                Tok::Int(digits.parse().expect("ascii digits"))
            } else {
                i += 1;
                match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    ';' => Tok::Semi,
                    other => return Err(err(ln, col, format!("unexpected character `{other}`"))),
                }
            };
            out.push(Token {
                tok,
                line: ln,
                column: col,
            });
        }
    }
    Ok(out)
}

type Monomial = BTreeMap<String, i64>;

struct Statement {
    terms: BTreeMap<Monomial, BigInt>,
    line: usize,
    column: usize,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn is_header(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "vars")
            && matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Ident(_)))
    }

    fn header(&mut self) -> Result<Vec<String>, ParseError> {
        self.next();
        let mut names = Vec::new();
        loop {
            let (l, c) = self.here();
            match self.next() {
                Some(Tok::Ident(n)) => {
                    if names.contains(&n) {
                        return Err(err(l, c, format!("variable `{n}` declared twice")));
                    }
                    names.push(n);
                }
                Some(Tok::Semi) => return Ok(names),
                _ => return Err(err(l, c, "expected a variable name or `;` in header")),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                true
            }
            Some(Tok::Plus) => {
                self.next();
                false
            }
            _ => false,
        };
        let (l, c) = self.here();
        match self.next() {
            Some(Tok::Int(k)) => {
                let k = if negative { -k } else { k };
                i64::try_from(k).map_err(|_| err(l, c, "exponent out of range"))
            }
            _ => Err(err(l, c, "expected an integer exponent")),
        }
    }

    fn term(&mut self, declared: Option<&[String]>) -> Result<(Monomial, BigInt), ParseError> {
        let mut coeff = BigInt::from(1);
        let mut mono = Monomial::new();
        loop {
            let (l, c) = self.here();
            match self.next() {
                Some(Tok::Int(k)) => coeff *= k,
                Some(Tok::Ident(name)) => {
                    if let Some(vars) = declared {
                        if !vars.contains(&name) {
                            return Err(err(l, c, format!("undeclared variable `{name}`")));
                        }
                    }
                    let e = if self.peek() == Some(&Tok::Caret) {
                        self.next();
                        self.exponent()?
                    } else {
                        1
                    };
                    let slot = mono.entry(name).or_insert(0);
                    *slot = slot
                        .checked_add(e)
                        .ok_or_else(|| err(l, c, "exponent out of range"))?;
                }
                _ => return Err(err(l, c, "expected a coefficient or a variable")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.next();
            } else {
                break;
            }
        }
        mono.retain(|_, e| *e != 0);
        Ok((mono, coeff))
    }

    fn statement(&mut self, declared: Option<&[String]>) -> Result<Statement, ParseError> {
        let (line, column) = self.here();
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let mut first = true;
        loop {
            match self.peek() {
                Some(Tok::Semi) if !first => {
                    self.next();
                    break;
                }
                None => return self.fail("expected `;` at end of polynomial"),
                _ => {}
            }
            let sign = match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    1
                }
                Some(Tok::Minus) => {
                    self.next();
                    -1
                }
                _ if first => 1,
                _ => return self.fail("expected `+`, `-` or `;`"),
            };
            let (mono, coeff) = self.term(declared)?;
            *terms.entry(mono).or_insert_with(BigInt::zero) += coeff * sign;
            first = false;
        }
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return Err(err(line, column, "polynomial is zero"));
        }
        Ok(Statement {
            terms,
            line,
            column,
        })
    }
}

/// Orders `x2` before `x10`.
fn natural_key(name: &str) -> (String, u128, String) {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (prefix, suffix) = name.split_at(name.len() - digits);
    let num = suffix.parse::<u128>().unwrap_or(0);
    (prefix.to_string(), num, name.to_string())
}

/// Parses polynomial text into its supports.
pub fn parse_polynomials(text: &str) -> Result<SystemSpec, ParseError> {
    let toks = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    let mut p = Parser {
        toks,
        pos: 0,
        end: (lines, last_col),
    };
    let declared = if p.is_header() {
        Some(p.header()?)
    } else {
        None
    };
    let mut statements = Vec::new();
    while p.peek().is_some() {
        statements.push(p.statement(declared.as_deref())?);
    }
    if statements.is_empty() {
        return Err(err(p.end.0, p.end.1, "no polynomials"));
    }

    let vars: Vec<String> = match declared {
        Some(v) => v,
        None => {
            let used = |s: &Statement| -> BTreeSet<String> {
                s.terms.keys().flat_map(|m| m.keys().cloned()).collect()
            };
            let reference = used(&statements[0]);
            for s in &statements[1..] {
                if used(s) != reference {
                    return Err(err(
                        s.line,
                        s.column,
                        "variables differ from the first polynomial; add a `vars` header",
                    ));
                }
            }
            let mut v: Vec<String> = reference.into_iter().collect();
            v.sort_by_key(|n| natural_key(n));
            v
        }
    };
    if vars.is_empty() {
        return Err(err(1, 1, "system has no variables"));
    }
    let index: BTreeMap<&str, usize> = vars.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let supports = statements
        .iter()
        .map(|s| {
            s.terms
                .keys()
                .map(|m| {
                    let mut e = vec![0i64; vars.len()];
                    for (name, &k) in m {
                        e[index[name.as_str()]] = k;
                    }
                    IntVector::from_i64s(&e)
                })
                .collect()
        })
        .collect();
    let spec = SystemSpec::new(vars.len(), supports, "polynomial text")
        .expect("parsed supports are nonempty and consistent");
    Ok(spec.with_variables(vars))
}

/// Writes a system as polynomial text with unit coefficients.
pub fn to_polynomial_text(spec: &SystemSpec) -> String {
    let vars: Vec<String> = spec
        .variables
        .clone()
        .unwrap_or_else(|| (0..spec.ambient_dim).map(|i| format!("x{i}")).collect());
    let mut out = format!("vars {};\n", vars.join(" "));
    for support in &spec.supports {
        let terms: Vec<String> = support
            .iter()
            .map(|p| {
                let factors: Vec<String> = p
                    .iter()
                    .zip(&vars)
                    .filter(|(e, _)| !e.is_zero())
                    .map(|(e, n)| {
                        if *e == BigInt::from(1) {
                            n.clone()
                        } else {
                            format!("{n}^{e}")
                        }
                    })
                    .collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        out.push_str(&terms.join(" + "));
        out.push_str(";\n");
    }
    out
}
