//! Problem files:
//!
//! ```text
//! # comment
//! vars x, y;
//! 4*x^2 + y^2 - 4 < 0 or (x^2 + y^2 - 1 <= 0 and y > 0);
//! options method = lpcad, check = 1000;
//! ```
//!
//! Multiplication and powers are explicit. Relations may be chained
//! (`-1 < x < 1`), `not` is pushed into the atoms, and constants may be
//! rationals such as `3/4`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::BigRat;
use crate::formula::{Rel, SystemFormula};
use crate::poly::{Exps, MultiPoly, VarOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: undeclared variable `{name}`")]
    UndeclaredVariable { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {feature} is not supported; only quantifier-free systems are accepted")]
    Unsupported { line: usize, col: usize, feature: String },
    #[error("invalid variable list: {0}")]
    BadVars(String),
}

/// A parsed problem file.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub vars: VarOrder,
    pub formula: SystemFormula,
    pub options: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(&'static str),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 17] = ["<=", ">=", "!=", "==", "&&", "||", "<", ">", "=", "+", "-", "*", "/", "^", "(", ")", ","];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == ';' {
                out.push(Token { tok: Tok::Sym(";"), line: li + 1, col });
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Num(s.parse().expect("digits")), line: li + 1, col });
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: li + 1, col });
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(*s)) {
                Some(s) => {
                    out.push(Token { tok: Tok::Sym(s), line: li + 1, col });
                    i += s.len();
                }
                None => return Err(ParseError::Syntax { line: li + 1, col, msg: format!("unexpected character `{}`", c) }),
            }
        }
    }
    let (line, col) = out.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1));
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

// Polynomial with rational coefficients, used only while parsing.
type RatPoly = BTreeMap<Exps, BigRat>;

fn rp_const(n: usize, c: BigRat) -> RatPoly {
    let mut m = RatPoly::new();
    if !c.is_zero() {
        m.insert(Exps::from_elem(0, n), c);
    }
    m
}

fn rp_add(a: &RatPoly, b: &RatPoly, sign: i32) -> RatPoly {
    let mut m = a.clone();
    for (e, c) in b {
        let v = m.entry(e.clone()).or_insert_with(BigRat::zero);
        if sign < 0 {
            *v -= c;
        } else {
            *v += c;
        }
        if v.is_zero() {
            m.remove(e);
        }
    }
    m
}

fn rp_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut m = RatPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
            let v = m.entry(e.clone()).or_insert_with(BigRat::zero);
            *v += ca * cb;
            if v.is_zero() {
                m.remove(&e);
            }
        }
    }
    m
}

fn rp_constant_value(a: &RatPoly) -> Option<BigRat> {
    if a.is_empty() {
        return Some(BigRat::zero());
    }
    if a.len() == 1 {
        let (e, c) = a.iter().next().expect("one term");
        if e.iter().all(|&d| d == 0) {
            return Some(c.clone());
        }
    }
    None
}

// Multiplies by the positive lcm of the denominators, which keeps every sign.
fn rp_to_multi(a: &RatPoly, n: usize) -> MultiPoly {
    let mut den = BigInt::one();
    for c in a.values() {
        den = den.lcm(c.denom());
    }
    MultiPoly::from_terms(n, a.iter().map(|(e, c)| (e.clone(), (c * BigRat::from_integer(den.clone())).to_integer())))
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a VarOrder,
}

const QUANTIFIERS: [&str; 4] = ["exists", "forall", "ex", "all"];

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError::Syntax { line, col, msg: msg.into() })
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(t) if *t == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(t) if t == w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", s))
        }
    }

    fn formula(&mut self) -> Result<SystemFormula, ParseError> {
        let mut parts = vec![self.conjunction()?];
        while self.eat_word("or") || self.eat_sym("||") {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one") } else { SystemFormula::Or(parts) })
    }

    fn conjunction(&mut self) -> Result<SystemFormula, ParseError> {
        let mut parts = vec![self.unary()?];
        while self.eat_word("and") || self.eat_sym("&&") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one") } else { SystemFormula::And(parts) })
    }

    fn unary(&mut self) -> Result<SystemFormula, ParseError> {
        if let Tok::Ident(w) = self.peek() {
            if QUANTIFIERS.contains(&w.as_str()) {
                let (line, col) = self.here();
                return Err(ParseError::Unsupported { line, col, feature: format!("quantifier `{}`", w) });
            }
        }
        if self.eat_word("not") {
            return Ok(self.unary()?.negate());
        }
        if self.eat_word("true") {
            return Ok(SystemFormula::True);
        }
        if self.eat_word("false") {
            return Ok(SystemFormula::False);
        }
        if matches!(self.peek(), Tok::Sym("(")) {
            // either a parenthesized formula or the start of an expression
            let save = self.pos;
            self.pos += 1;
            if let Ok(f) = self.formula() {
                if self.eat_sym(")") && !self.at_expression_continuation() {
                    return Ok(f);
                }
            }
            self.pos = save;
        }
        self.comparison()
    }

    fn at_expression_continuation(&self) -> bool {
        matches!(self.peek(), Tok::Sym("+" | "-" | "*" | "/" | "^" | "<" | "<=" | ">" | ">=" | "=" | "==" | "!="))
    }

    fn relation(&mut self) -> Option<Rel> {
        let r = match self.peek() {
            Tok::Sym("<") => Rel::Lt,
            Tok::Sym("<=") => Rel::Le,
            Tok::Sym(">") => Rel::Gt,
            Tok::Sym(">=") => Rel::Ge,
            Tok::Sym("=") | Tok::Sym("==") => Rel::Eq,
            Tok::Sym("!=") => Rel::Ne,
            _ => return None,
        };
        self.pos += 1;
        Some(r)
    }

    fn comparison(&mut self) -> Result<SystemFormula, ParseError> {
        let mut lhs = self.expr()?;
        let mut atoms = Vec::new();
        while let Some(rel) = self.relation() {
            let rhs = self.expr()?;
            let diff = rp_add(&lhs, &rhs, -1);
            atoms.push(SystemFormula::atom(rp_to_multi(&diff, self.vars.len()), rel));
            lhs = rhs;
        }
        match atoms.len() {
            0 => self.err("expected a relation"),
            1 => Ok(atoms.pop().expect("one")),
            _ => Ok(SystemFormula::And(atoms)),
        }
    }

    fn expr(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym("+") {
                acc = rp_add(&acc, &self.term()?, 1);
            } else if self.eat_sym("-") {
                acc = rp_add(&acc, &self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = self.signed()?;
        loop {
            if self.eat_sym("*") {
                acc = rp_mul(&acc, &self.signed()?);
            } else if self.eat_sym("/") {
                let d = self.signed()?;
                match rp_constant_value(&d) {
                    Some(c) if !c.is_zero() => acc = rp_mul(&acc, &rp_const(self.vars.len(), c.recip())),
                    _ => return self.err("division is only allowed by a nonzero constant"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed(&mut self) -> Result<RatPoly, ParseError> {
        if self.eat_sym("-") {
            let p = self.signed()?;
            return Ok(rp_add(&RatPoly::new(), &p, -1));
        }
        if self.eat_sym("+") {
            return self.signed();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatPoly, ParseError> {
        let base = self.primary()?;
        if self.eat_sym("^") {
            let k = match self.peek().clone() {
                Tok::Num(k) => {
                    self.pos += 1;
                    k
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            };
            let k: u32 = match u32::try_from(&k) {
                Ok(k) if k <= 1000 => k,
                _ => return self.err("exponent too large"),
            };
            let mut acc = rp_const(self.vars.len(), BigRat::one());
            for _ in 0..k {
                acc = rp_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RatPoly, ParseError> {
        let n = self.vars.len();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(rp_const(n, BigRat::from_integer(v)))
            }
            Tok::Ident(name) => {
                let (line, col) = self.here();
                if QUANTIFIERS.contains(&name.as_str()) {
                    return Err(ParseError::Unsupported { line, col, feature: format!("quantifier `{}`", name) });
                }
                match self.vars.index_of(&name) {
                    Some(i) => {
                        self.pos += 1;
                        let mut e = Exps::from_elem(0, n);
                        e[i] = 1;
                        Ok(RatPoly::from([(e, BigRat::one())]))
                    }
                    None => Err(ParseError::UndeclaredVariable { line, col, name }),
                }
            }
            Tok::Sym("(") => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

/// Parses a formula over already declared variables.
pub fn parse_formula(text: &str, vars: &VarOrder) -> Result<SystemFormula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars };
    let f = p.formula()?;
    p.eat_sym(";");
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

/// Parses `vars …; formula [; options k = v, …]`.
pub fn parse_system(text: &str) -> Result<ProblemFile, ParseError> {
    let toks = lex(text)?;
    let mut names = Vec::new();
    let mut pos = 0;
    let at = |toks: &[Token], pos: usize| (toks[pos].line, toks[pos].col);
    if !matches!(&toks[pos].tok, Tok::Ident(w) if w == "vars") {
        let (line, col) = at(&toks, pos);
        return Err(ParseError::Syntax { line, col, msg: "expected `vars` declaration".into() });
    }
    pos += 1;
    loop {
        match &toks[pos].tok {
            Tok::Ident(w) => names.push(w.clone()),
            _ => {
                let (line, col) = at(&toks, pos);
                return Err(ParseError::Syntax { line, col, msg: "expected a variable name".into() });
            }
        }
        pos += 1;
        match &toks[pos].tok {
            Tok::Sym(",") => pos += 1,
            Tok::Sym(";") => {
                pos += 1;
                break;
            }
            _ => {
                let (line, col) = at(&toks, pos);
                return Err(ParseError::Syntax { line, col, msg: "expected `,` or `;`".into() });
            }
        }
    }
    for w in &names {
        if ["and", "or", "not", "true", "false", "vars", "options"].contains(&w.as_str()) || QUANTIFIERS.contains(&w.as_str()) {
            return Err(ParseError::BadVars(format!("`{}` is a reserved word", w)));
        }
    }
    let vars = VarOrder::new(&names).map_err(|e| ParseError::BadVars(e.to_string()))?;
    let mut p = Parser { toks, pos, vars: &vars };
    let formula = p.formula()?;
    p.eat_sym(";");
    let mut options = BTreeMap::new();
    if p.eat_word("options") {
        loop {
            let key = match p.peek().clone() {
                Tok::Ident(k) => k,
                _ => return p.err("expected an option name"),
            };
            p.pos += 1;
            p.expect_sym("=")?;
            let mut value = String::new();
            while !matches!(p.peek(), Tok::Sym(",") | Tok::Sym(";") | Tok::End) {
                match p.peek() {
                    Tok::Num(v) => value.push_str(&v.to_string()),
                    Tok::Ident(s) => value.push_str(s),
                    Tok::Sym(s) => value.push_str(s),
                    Tok::End => {}
                }
                p.pos += 1;
            }
            options.insert(key, value);
            if !p.eat_sym(",") {
                break;
            }
        }
        p.eat_sym(";");
    }
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(ProblemFile { vars, formula, options })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_system() {
        let p = parse_system(
            "vars x,y; 4*x^2 + y^2 - 4 < 0 or (x^2+y^2-1 <= 0 and 16*x^6-24*x^4+9*x^2+4*y^4-4*y^2 <= 0)",
        )
        .unwrap();
        assert_eq!(p.vars.names(), &["x".to_string(), "y".to_string()]);
        match &p.formula {
            SystemFormula::Or(c) => {
                assert_eq!(c.len(), 2);
                assert!(matches!(&c[1], SystemFormula::And(d) if d.len() == 2));
            }
            other => panic!("unexpected {:?}", other),
        }
        assert_eq!(p.formula.render(&p.vars), "4*x^2 + y^2 - 4 < 0 or (x^2 + y^2 - 1 <= 0 and 16*x^6 - 24*x^4 + 4*y^4 + 9*x^2 - 4*y^2 <= 0)");
    }

    #[test]
    fn constants_negation_and_chains() {
        assert_eq!(parse_system("vars x; 0 < 1").unwrap().formula, SystemFormula::True);
        let p = parse_system("vars x; not (x^2 = 1)").unwrap();
        let x = MultiPoly::var(1, 0);
        assert_eq!(p.formula, SystemFormula::atom(&x.pow(2) - &MultiPoly::one(1), Rel::Ne));
        let p = parse_system("vars x; -1 < x < 1/2").unwrap();
        assert!(matches!(&p.formula, SystemFormula::And(c) if c.len() == 2));
        // rational coefficients are cleared with a positive factor
        let p = parse_system("vars x; x/2 - 1/3 > 0").unwrap();
        assert_eq!(p.formula, SystemFormula::atom(&x.scale(&BigInt::from(3)) - &MultiPoly::from_int(1, 2), Rel::Gt));
        let p = parse_system("vars x, y; (x + 1)*(y - 1) >= 0 and (x) < 2").unwrap();
        assert!(matches!(&p.formula, SystemFormula::And(_)));
    }

    #[test]
    fn errors_are_located() {
        match parse_system("vars x;\nx + z < 0") {
            Err(ParseError::UndeclaredVariable { line: 2, col: 5, name }) => assert_eq!(name, "z"),
            other => panic!("{:?}", other),
        }
        assert!(matches!(parse_system("vars x; exists y (x < y)"), Err(ParseError::Unsupported { .. })));
        assert!(matches!(parse_system("vars x; x < "), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_system("vars x, x; x < 0"), Err(ParseError::BadVars(_))));
    }

    #[test]
    fn options_block() {
        let p = parse_system("vars x; x > 0; options method = cad-mc, check = 100").unwrap();
        assert_eq!(p.options.get("method").map(String::as_str), Some("cad-mc"));
        assert_eq!(p.options.get("check").map(String::as_str), Some("100"));
    }
}
