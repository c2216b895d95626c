//! Integer expressions over named parameters, and the weight formulas built on them.
//!
//! ```text
//! iexpr   := sum of products; `/` is floor division; `2p` means `2*p`
//! call    := min(a, b, ..) | max(a, b, ..) | delta(a, b)
//! cond    := iexpr (>= | <= | == | != | < | >) iexpr [and cond]
//! weight  := 0 | term ((+|-) term)*
//! term    := [INT | (iexpr)] atom
//! atom    := pi PRIMES index | chi index        (pi', pi'' name later slots)
//! index   := INT | [iexpr]
//! formula := [for VAR in iexpr..=iexpr:] (weight; weight) [if cond]
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type Env = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(&'static str),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    const SYMS: [&str; 20] = [
        "..=", ">=", "<=", "==", "!=", "<", ">", "=", "+", "-", "*", "/", "(", ")", "[", "]", ",", ";", ":", "'",
    ];
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            let v = s[start..i].parse().map_err(|_| Error::parse(s, "integer too large"))?;
            out.push(Tok::Int(v));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(s[start..i].to_string()));
            continue;
        }
        for sym in SYMS {
            if s[i..].starts_with(sym) {
                out.push(Tok::Sym(sym));
                i += sym.len();
                continue 'outer;
            }
        }
        return Err(Error::parse(s, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<i64> {
        Ok(match self {
            Expr::Int(v) => *v,
            Expr::Var(name) => *env.get(name).ok_or_else(|| Error::MissingParam(name.clone()))?,
            Expr::Neg(e) => -e.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                if d == 0 {
                    return Err(Error::parse("/", "division by zero"));
                }
                a.eval(env)?.div_euclid(d)
            }
            Expr::Call(f, args) => {
                let v: Vec<i64> = args.iter().map(|a| a.eval(env)).collect::<Result<_>>()?;
                match (f.as_str(), v.as_slice()) {
                    ("min", [_, ..]) => *v.iter().min().unwrap(),
                    ("max", [_, ..]) => *v.iter().max().unwrap(),
                    ("delta", [a, b]) => i64::from(a == b),
                    _ => return Err(Error::parse(f.clone(), "unknown function or arity")),
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cond {
    Cmp(Expr, &'static str, Expr),
    And(Box<Cond>, Box<Cond>),
}

impl Cond {
    pub fn eval(&self, env: &Env) -> Result<bool> {
        Ok(match self {
            Cond::Cmp(a, op, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                match *op {
                    ">=" => x >= y,
                    "<=" => x <= y,
                    "==" => x == y,
                    "!=" => x != y,
                    "<" => x < y,
                    ">" => x > y,
                    _ => unreachable!(),
                }
            }
            Cond::And(a, b) => a.eval(env)? && b.eval(env)?,
        })
    }
}

/// `pi` atoms carry the slot (number of primes), `chi` atoms a torus index.
#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    Pi { slot: usize, index: Expr },
    Chi(Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Expr,
    pub atom: Atom,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct WeightExpr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Formula {
    pub range: Option<(String, Expr, Expr)>,
    pub lambda: WeightExpr,
    pub mu: WeightExpr,
    pub cond: Option<Cond>,
}

impl Formula {
    /// Parameter environments (one per loop value) in which the formula is present.
    pub fn expand(&self, env: &Env) -> Result<Vec<Env>> {
        let envs = match &self.range {
            None => vec![env.clone()],
            Some((var, lo, hi)) => {
                let (lo, hi) = (lo.eval(env)?, hi.eval(env)?);
                (lo..=hi)
                    .map(|k| {
                        let mut e = env.clone();
                        e.insert(var.clone(), k);
                        e
                    })
                    .collect()
            }
        };
        let mut out = Vec::new();
        for e in envs {
            if match &self.cond {
                Some(c) => c.eval(&e)?,
                None => true,
            } {
                out.push(e);
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.src, format!("{msg} at token {}", self.pos))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_sym(&self, sym: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym)
    }

    fn eat_sym(&mut self, sym: &str) -> bool {
        if self.peek_sym(sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, sym: &str) -> Result<()> {
        if self.eat_sym(sym) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{sym}`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected identifier")),
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat_sym("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat_sym("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let p = self.primary()?;
        // `2p`, `2(q-1)`
        let juxtaposed = match self.peek() {
            Some(Tok::Ident(s)) => !["and", "if", "for", "in"].contains(&s.as_str()),
            Some(Tok::Sym("(")) => true,
            _ => false,
        };
        if matches!(p, Expr::Int(_)) && juxtaposed {
            let rhs = self.primary()?;
            return Ok(Expr::Mul(Box::new(p), Box::new(rhs)));
        }
        Ok(p)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat_sym("(") {
                    let mut args = vec![self.expr()?];
                    while self.eat_sym(",") {
                        args.push(self.expr()?);
                    }
                    self.expect_sym(")")?;
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => Err(self.err("expected expression")),
        }
    }

    fn cond(&mut self) -> Result<Cond> {
        let a = self.expr()?;
        let op = match self.peek() {
            Some(Tok::Sym(s)) if [">=", "<=", "==", "!=", "<", ">"].contains(s) => *s,
            _ => return Err(self.err("expected comparison")),
        };
        self.pos += 1;
        let b = self.expr()?;
        let c = Cond::Cmp(a, op, b);
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "and") {
            self.pos += 1;
            return Ok(Cond::And(Box::new(c), Box::new(self.cond()?)));
        }
        Ok(c)
    }

    fn atom(&mut self) -> Result<Option<Atom>> {
        let name = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return Ok(None),
        };
        let (head, digits) = if let Some(rest) = name.strip_prefix("chi") {
            ("chi", rest)
        } else if let Some(rest) = name.strip_prefix("pi") {
            ("pi", rest)
        } else {
            return Err(self.err("expected pi or chi"));
        };
        self.pos += 1;
        let mut slot = 0;
        if digits.is_empty() {
            while head == "pi" && self.eat_sym("'") {
                slot += 1;
            }
        }
        let index = if !digits.is_empty() {
            Expr::Int(digits.parse().map_err(|_| self.err("bad index"))?)
        } else if self.eat_sym("[") {
            let e = self.expr()?;
            self.expect_sym("]")?;
            e
        } else if let Some(Tok::Int(v)) = self.peek().cloned() {
            self.pos += 1;
            Expr::Int(v)
        } else {
            return Err(self.err("expected index"));
        };
        Ok(Some(if head == "chi" {
            Atom::Chi(index)
        } else {
            Atom::Pi { slot, index }
        }))
    }

    fn weight(&mut self) -> Result<WeightExpr> {
        let mut terms = Vec::new();
        let mut negative = self.eat_sym("-");
        loop {
            let coeff = match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.pos += 1;
                    Some(Expr::Int(v))
                }
                Some(Tok::Sym("(")) => {
                    self.pos += 1;
                    let e = self.expr()?;
                    self.expect_sym(")")?;
                    Some(e)
                }
                _ => None,
            };
            match self.atom()? {
                Some(atom) => {
                    let mut c = coeff.unwrap_or(Expr::Int(1));
                    if negative {
                        c = Expr::Neg(Box::new(c));
                    }
                    terms.push(Term { coeff: c, atom });
                }
                None if coeff == Some(Expr::Int(0)) => {}
                None => return Err(self.err("expected pi or chi")),
            }
            if self.eat_sym("+") {
                negative = false;
            } else if self.eat_sym("-") {
                negative = true;
            } else {
                return Ok(WeightExpr { terms });
            }
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut range = None;
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "for") {
            self.pos += 1;
            let var = self.ident()?;
            if self.ident()? != "in" {
                return Err(self.err("expected `in`"));
            }
            let lo = self.expr()?;
            self.expect_sym("..=")?;
            let hi = self.expr()?;
            self.expect_sym(":")?;
            range = Some((var, lo, hi));
        }
        self.expect_sym("(")?;
        let lambda = self.weight()?;
        self.expect_sym(";")?;
        let mu = self.weight()?;
        self.expect_sym(")")?;
        let cond = if matches!(self.peek(), Some(Tok::Ident(s)) if s == "if") {
            self.pos += 1;
            Some(self.cond()?)
        } else {
            None
        };
        Ok(Formula {
            range,
            lambda,
            mu,
            cond,
        })
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser::new(s)?;
    let e = p.expr()?;
    p.done()?;
    Ok(e)
}

pub fn parse_cond(s: &str) -> Result<Cond> {
    let mut p = Parser::new(s)?;
    let c = p.cond()?;
    p.done()?;
    Ok(c)
}

pub fn parse_weight(s: &str) -> Result<WeightExpr> {
    let mut p = Parser::new(s)?;
    let w = p.weight()?;
    p.done()?;
    Ok(w)
}

pub fn parse_formula(s: &str) -> Result<Formula> {
    let mut p = Parser::new(s)?;
    let f = p.formula()?;
    p.done()?;
    Ok(f)
}

/// `name = iexpr`
pub fn parse_binding(s: &str) -> Result<(String, Expr)> {
    let mut p = Parser::new(s)?;
    let name = p.ident()?;
    p.expect_sym("=")?;
    let e = p.expr()?;
    p.done()?;
    Ok((name, e))
}

/// Constructor arguments, each with an optional `kind:` tag.
pub type CallArgs = Vec<(Option<String>, Expr)>;

/// A constructor call `name(arg, ..)`.
pub fn parse_call(s: &str) -> Result<(String, CallArgs)> {
    let mut p = Parser::new(s)?;
    let name = p.ident()?;
    p.expect_sym("(")?;
    let mut args = Vec::new();
    if !p.eat_sym(")") {
        loop {
            let tagged = matches!(p.toks.get(p.pos + 1), Some(Tok::Sym(":")));
            let tag = if tagged {
                let t = p.ident()?;
                p.expect_sym(":")?;
                Some(t)
            } else {
                None
            };
            args.push((tag, p.expr()?));
            if p.eat_sym(")") {
                break;
            }
            p.expect_sym(",")?;
        }
    }
    p.done()?;
    Ok((name, args))
}

/// Parses `k=v,k=v`.
pub fn parse_params(s: &str) -> Result<Env> {
    let mut env = Env::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::parse(s, "expected k=v"))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Error::parse(s, "expected an integer value"))?;
        env.insert(k.trim().to_string(), v);
    }
    Ok(env)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i64)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn arithmetic() {
        let e = env(&[("p", 3), ("q", 2), ("i", 5)]);
        assert_eq!(parse_expr("2p + q").unwrap().eval(&e).unwrap(), 8);
        assert_eq!(parse_expr("2 + min(2i-1, 2q)").unwrap().eval(&e).unwrap(), 6);
        assert_eq!(parse_expr("6 - delta(q, 1)").unwrap().eval(&e).unwrap(), 6);
        assert_eq!(parse_expr("(i-1)/2").unwrap().eval(&e).unwrap(), 2);
        assert_eq!(parse_expr("-3/2").unwrap().eval(&e).unwrap(), -2);
        assert!(parse_expr("x").unwrap().eval(&e).is_err());
    }

    #[test]
    fn conditions() {
        let e = env(&[("p", 3), ("q", 2)]);
        assert!(parse_cond("q >= 2 and p > q").unwrap().eval(&e).unwrap());
        assert!(!parse_cond("q >= 3").unwrap().eval(&e).unwrap());
    }

    #[test]
    fn weights() {
        let w = parse_weight("pi[i-k] + pi'[k] + (i-k)chi1 + 2chi2").unwrap();
        assert_eq!(w.terms.len(), 4);
        assert!(matches!(w.terms[1].atom, Atom::Pi { slot: 1, .. }));
        assert!(parse_weight("0").unwrap().terms.is_empty());
        let w = parse_weight("2pi3 + pi''2").unwrap();
        assert!(matches!(w.terms[1].atom, Atom::Pi { slot: 2, .. }));
    }

    #[test]
    fn formulas() {
        let f = parse_formula("for k in 0..=min(i,q): (pi[i]; pi[i-k] + pi'[k]) if i >= 2").unwrap();
        let e = env(&[("i", 2), ("q", 1)]);
        assert_eq!(f.expand(&e).unwrap().len(), 2);
        let f = parse_formula("(pi2; pi'2 + 2chi2) if q >= 2").unwrap();
        assert!(f.expand(&e).unwrap().is_empty());
    }

    #[test]
    fn calls_and_params() {
        let (name, args) = parse_call("blocks(sp:2p, sl:q)").unwrap();
        assert_eq!(name, "blocks");
        assert_eq!(args[0].0.as_deref(), Some("sp"));
        let (_, args) = parse_call("spin7_in_sl8()").unwrap();
        assert!(args.is_empty());
        assert_eq!(parse_params("p=2, q=1").unwrap(), env(&[("p", 2), ("q", 1)]));
    }
}
