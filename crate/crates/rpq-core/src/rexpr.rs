//! The deformation-function expression language: a two-variable rational
//! expression R(u, v) with parameters p, q, μ, ν, g, parsed by recursive
//! descent, plus a registry of builtin closed forms.
//!
//! Grammar (LL(1), precedence `^` > unary `−` > `*`,`/` > `+`,`−`,
//! left-associative within a level; exponents are literal half-integers,
//! written `^k` or `^(k/2)`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' exponent)?
//! atom   := 'u' | 'v' | 'p' | 'q' | 'mu' | 'nu' | 'g' | integer | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer '/' '2' ')'
//! ```

use crate::error::{CoreError, Result};
use crate::scalar::{int, pow_i, sqrt_exact, BaseParams, Family, Half, Scalar};
use num::{One, Zero};
use std::fmt;

/// Binary operators.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Expression AST for R(u, v).
#[derive(Clone, PartialEq, Debug)]
pub enum Ast {
    U,
    V,
    P,
    Q,
    Mu,
    Nu,
    G,
    Lit(Scalar),
    Neg(Box<Ast>),
    Bin(BinOp, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Half),
}

/// Builtin deformation choices.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BuiltinR {
    Js,
    Cj,
    Quesne,
    Hn,
    Hb,
    /// R(u,v) = (1/u − 1/v)/(p − q), the alternative CJ reading.
    CjAlt,
}

impl BuiltinR {
    pub const ALL: [BuiltinR; 6] = [
        BuiltinR::Js,
        BuiltinR::Cj,
        BuiltinR::Quesne,
        BuiltinR::Hn,
        BuiltinR::Hb,
        BuiltinR::CjAlt,
    ];

    /// The closed-form number family this builtin evaluates to, if any.
    pub fn family(self) -> Option<Family> {
        match self {
            BuiltinR::Js => Some(Family::Js),
            BuiltinR::Cj => Some(Family::Cj),
            BuiltinR::Quesne => Some(Family::Quesne),
            BuiltinR::Hn => Some(Family::Hn),
            BuiltinR::Hb => Some(Family::Hb),
            BuiltinR::CjAlt => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BuiltinR::Js => "JS",
            BuiltinR::Cj => "CJ",
            BuiltinR::Quesne => "Quesne",
            BuiltinR::Hn => "HN",
            BuiltinR::Hb => "HB",
            BuiltinR::CjAlt => "CJ-alt",
        }
    }

    pub fn from_name(name: &str) -> Option<BuiltinR> {
        match name {
            "JS" | "js" => Some(BuiltinR::Js),
            "CJ" | "cj" => Some(BuiltinR::Cj),
            "Quesne" | "quesne" | "Q" => Some(BuiltinR::Quesne),
            "HN" | "hn" => Some(BuiltinR::Hn),
            "HB" | "hb" => Some(BuiltinR::Hb),
            "CJ-alt" | "cj-alt" => Some(BuiltinR::CjAlt),
            _ => None,
        }
    }

    /// Concrete-syntax source text for this builtin. The HN/HB weight
    /// exponents μ, ν must be supplied as integers because the grammar only
    /// admits literal exponents.
    pub fn source(self, mu: i64, nu: i64) -> String {
        match self {
            BuiltinR::Js => "(u - v)/(p - q)".into(),
            BuiltinR::Cj => "(1 - u*v)/((p^(-1) - q)*u)".into(),
            BuiltinR::Quesne => "(u*v - 1)/((q - p^(-1))*v)".into(),
            BuiltinR::Hn | BuiltinR::Hb => {
                format!("g*(v^{nu}/u^{mu})*(u*v - 1)/((q - p^(-1))*v)")
            }
            BuiltinR::CjAlt => "(1/u - 1/v)/(p - q)".into(),
        }
    }
}

/// An evaluable deformation function.
#[derive(Clone, PartialEq, Debug)]
pub enum RFunction {
    Builtin(BuiltinR),
    Custom(Ast),
}

impl RFunction {
    pub fn describe(&self) -> String {
        match self {
            RFunction::Builtin(b) => b.name().to_string(),
            RFunction::Custom(ast) => print_ast(ast),
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Ident(&'static str),
    Int(i64),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((pos, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let mut val: i64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    val = val
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] as u8 - b'0') as i64))
                        .ok_or(CoreError::Lexical { pos, ch: bytes[i] })?;
                    i += 1;
                }
                out.push((pos, Tok::Int(val)));
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_lowercase() {
                    i += 1;
                }
                let word: String = bytes[start..i].iter().collect();
                let ident = match word.as_str() {
                    "u" => "u",
                    "v" => "v",
                    "p" => "p",
                    "q" => "q",
                    "mu" => "mu",
                    "nu" => "nu",
                    "g" => "g",
                    _ => return Err(CoreError::Lexical { pos, ch: c }),
                };
                out.push((pos, Tok::Ident(ident)));
            }
            _ => return Err(CoreError::Lexical { pos, ch: c }),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }
    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }
    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }
    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(CoreError::Syntax { pos: self.here(), expected: what.into() })
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Bin(BinOp::Add, Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Bin(BinOp::Sub, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Ast::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Ast::Bin(BinOp::Div, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(Ast::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Half> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(k)) => Ok(Half::int(k)),
            Some(Tok::Minus) => match self.bump() {
                Some(Tok::Int(k)) => Ok(Half::int(-k)),
                _ => Err(CoreError::NonLiteralExponent { pos }),
            },
            Some(Tok::LParen) => {
                let neg = if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let k = match self.bump() {
                    Some(Tok::Int(k)) => k,
                    _ => return Err(CoreError::NonLiteralExponent { pos }),
                };
                let half = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Int(2)) => true,
                        _ => return Err(CoreError::NonLiteralExponent { pos }),
                    }
                } else {
                    false
                };
                self.expect(Tok::RParen, "`)` closing exponent")?;
                let signed = if neg { -k } else { k };
                Ok(if half { Half::halves(signed) } else { Half::int(signed) })
            }
            _ => Err(CoreError::NonLiteralExponent { pos }),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Ident("u")) => Ok(Ast::U),
            Some(Tok::Ident("v")) => Ok(Ast::V),
            Some(Tok::Ident("p")) => Ok(Ast::P),
            Some(Tok::Ident("q")) => Ok(Ast::Q),
            Some(Tok::Ident("mu")) => Ok(Ast::Mu),
            Some(Tok::Ident("nu")) => Ok(Ast::Nu),
            Some(Tok::Ident("g")) => Ok(Ast::G),
            Some(Tok::Int(n)) => Ok(Ast::Lit(int(n))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(CoreError::Syntax {
                pos,
                expected: "variable, parameter, integer, or `(`".into(),
            }),
        }
    }
}

/// Parse expression source text into an AST.
pub fn parse_r(source: &str) -> Result<Ast> {
    let toks = lex(source)?;
    let end = source.len();
    let mut parser = Parser { toks, pos: 0, end };
    let ast = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(CoreError::Syntax { pos: parser.here(), expected: "end of input".into() });
    }
    Ok(ast)
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

fn prec(ast: &Ast) -> u8 {
    match ast {
        Ast::Bin(BinOp::Add | BinOp::Sub, _, _) => 1,
        Ast::Bin(BinOp::Mul | BinOp::Div, _, _) => 2,
        Ast::Neg(_) => 3,
        Ast::Pow(_, _) => 4,
        _ => 5,
    }
}

fn print_prec(ast: &Ast, min: u8, out: &mut String) {
    let own = prec(ast);
    let need_paren = own < min;
    if need_paren {
        out.push('(');
    }
    match ast {
        Ast::U => out.push('u'),
        Ast::V => out.push('v'),
        Ast::P => out.push('p'),
        Ast::Q => out.push('q'),
        Ast::Mu => out.push_str("mu"),
        Ast::Nu => out.push_str("nu"),
        Ast::G => out.push('g'),
        Ast::Lit(x) => {
            if x.is_integer() {
                out.push_str(&x.numer().to_string());
            } else {
                out.push('(');
                out.push_str(&x.numer().to_string());
                out.push('/');
                out.push_str(&x.denom().to_string());
                out.push(')');
            }
        }
        Ast::Neg(inner) => {
            out.push('-');
            print_prec(inner, 3, out);
        }
        Ast::Bin(op, l, r) => {
            let (sym, lp, rp) = match op {
                BinOp::Add => (" + ", 1, 1),
                BinOp::Sub => (" - ", 1, 2),
                BinOp::Mul => ("*", 2, 3),
                BinOp::Div => ("/", 2, 3),
            };
            print_prec(l, lp, out);
            out.push_str(sym);
            print_prec(r, rp, out);
        }
        Ast::Pow(base, e) => {
            print_prec(base, 5, out);
            out.push('^');
            if let Some(k) = e.as_int() {
                if k < 0 {
                    out.push('(');
                    out.push_str(&k.to_string());
                    out.push(')');
                } else {
                    out.push_str(&k.to_string());
                }
            } else {
                out.push('(');
                out.push_str(&e.twice().to_string());
                out.push_str("/2)");
            }
        }
    }
    if need_paren {
        out.push(')');
    }
}

/// Print an AST back to concrete syntax; `parse_r(print_ast(a))` yields an
/// AST that evaluates identically to `a`.
pub fn print_ast(ast: &Ast) -> String {
    let mut out = String::new();
    print_prec(ast, 0, &mut out);
    out
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ast(self))
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

fn eval_ast(ast: &Ast, params: &BaseParams, u: &Scalar, v: &Scalar) -> Result<Scalar> {
    match ast {
        Ast::U => Ok(u.clone()),
        Ast::V => Ok(v.clone()),
        Ast::P => Ok(params.p().clone()),
        Ast::Q => Ok(params.q().clone()),
        Ast::Mu => Ok(params.mu.clone()),
        Ast::Nu => Ok(params.nu.clone()),
        Ast::G => Ok(params.g.clone()),
        Ast::Lit(x) => Ok(x.clone()),
        Ast::Neg(inner) => Ok(-eval_ast(inner, params, u, v)?),
        Ast::Bin(op, l, r) => {
            let lv = eval_ast(l, params, u, v)?;
            let rv = eval_ast(r, params, u, v)?;
            match op {
                BinOp::Add => Ok(lv + rv),
                BinOp::Sub => Ok(lv - rv),
                BinOp::Mul => Ok(lv * rv),
                BinOp::Div => {
                    if rv.is_zero() {
                        Err(CoreError::Pole(print_ast(r)))
                    } else {
                        Ok(lv / rv)
                    }
                }
            }
        }
        Ast::Pow(base, e) => {
            let bv = eval_ast(base, params, u, v)?;
            if let Some(k) = e.as_int() {
                if bv.is_zero() && k < 0 {
                    return Err(CoreError::Pole(print_ast(base)));
                }
                pow_i(&bv, k)
            } else {
                let root = sqrt_exact(&bv).ok_or_else(|| {
                    CoreError::Domain(format!(
                        "half-integer power of `{}`: value {} has no rational square root",
                        print_ast(base),
                        bv
                    ))
                })?;
                if root.is_zero() && e.twice() < 0 {
                    return Err(CoreError::Pole(print_ast(base)));
                }
                pow_i(&root, e.twice())
            }
        }
    }
}

/// Evaluate R at (u, v) with coefficients bound from `params`.
pub fn eval_r(r: &RFunction, params: &BaseParams, u: &Scalar, v: &Scalar) -> Result<Scalar> {
    match r {
        RFunction::Custom(ast) => eval_ast(ast, params, u, v),
        RFunction::Builtin(b) => eval_builtin(*b, params, u, v),
    }
}

fn eval_builtin(b: BuiltinR, params: &BaseParams, u: &Scalar, v: &Scalar) -> Result<Scalar> {
    let p = params.p();
    let q = params.q();
    match b {
        BuiltinR::Js => Ok((u - v) / (p - q)),
        BuiltinR::Cj => {
            let denom = (p.recip() - q) * u;
            if denom.is_zero() {
                return Err(CoreError::Pole("(p^(-1) - q)*u".into()));
            }
            Ok((Scalar::one() - u * v) / denom)
        }
        BuiltinR::Quesne => {
            let denom = (q - p.recip()) * v;
            if denom.is_zero() {
                return Err(CoreError::Pole("(q - p^(-1))*v".into()));
            }
            Ok((u * v - Scalar::one()) / denom)
        }
        BuiltinR::Hn | BuiltinR::Hb => {
            if u.is_zero() {
                return Err(CoreError::Pole("u^mu".into()));
            }
            let mu = integral_param(&params.mu, "mu")?;
            let nu = integral_param(&params.nu, "nu")?;
            let weight = &params.g * pow_i(v, nu)? / pow_i(u, mu)?;
            Ok(weight * eval_builtin(BuiltinR::Quesne, params, u, v)?)
        }
        BuiltinR::CjAlt => {
            if u.is_zero() {
                return Err(CoreError::Pole("1/u".into()));
            }
            if v.is_zero() {
                return Err(CoreError::Pole("1/v".into()));
            }
            Ok((u.recip() - v.recip()) / (p - q))
        }
    }
}

fn integral_param(x: &Scalar, name: &str) -> Result<i64> {
    use num::ToPrimitive;
    if !x.is_integer() {
        return Err(CoreError::Domain(format!(
            "parameter {name} = {x} must be an integer for pointwise evaluation"
        )));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| CoreError::Domain(format!("parameter {name} too large")))
}

/// [n]_R := R(p^n, q^n) for a half-integer n.
///
/// Builtins route through their closed-form family (which keeps half-integer
/// exponents exact); custom ASTs are evaluated at (p^n, q^n).
pub fn deformed_number(r: &RFunction, params: &BaseParams, n: Half) -> Result<Scalar> {
    match r {
        RFunction::Builtin(b) => match b.family() {
            Some(fam) => params.family_number(fam, n),
            None => {
                // CJ-alt closed form: −(pq)^{−n}·[n]_{p,q}.
                Ok(-params.pq_pow(-n)? * params.pq_number(n)?)
            }
        },
        RFunction::Custom(_) => {
            let u = params.p_pow(n)?;
            let v = params.q_pow(n)?;
            eval_r(r, params, &u, &v)
        }
    }
}

/// Convenience: R(p^a, q^a) via the same routing as [a]_R.
pub fn r_at(r: &RFunction, params: &BaseParams, a: Half) -> Result<Scalar> {
    deformed_number(r, params, a)
}
