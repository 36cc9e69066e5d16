use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::gf::{Fe, Gf};

/// A reduced fraction `num/den` over `F_q` with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Reduces `num/den`; fails on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::ZeroElement);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if num.is_zero() {
            (num, Poly::one(den.field()))
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let c = d.leading();
        if c != 1 {
            let inv = d.field().inv(c);
            n = n.scale(inv);
            d = d.scale(inv);
        }
        Ok(RatFn { num: n, den: d })
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let den = Poly::one(p.field());
        RatFn { num: p, den }
    }

    pub fn constant(field: &Gf, c: Fe) -> RatFn {
        RatFn::from_poly(Poly::constant(field, c))
    }

    pub fn t(field: &Gf) -> RatFn {
        RatFn::from_poly(Poly::t(field))
    }

    pub fn field(&self) -> &Gf {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFn::new(n, self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn square(&self) -> RatFn {
        self.mul(self)
    }

    pub fn inv(&self) -> Result<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFn> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFn { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn scale(&self, c: Fe) -> RatFn {
        RatFn::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// Parses an expression in `t` over `F_q`; see [`parse_expr`].
    pub fn parse(field: &Gf, text: &str) -> Result<RatFn> {
        parse_expr(field, text)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &Poly| {
                let s = p.to_string();
                if s.contains(' ') || s.contains('*') { format!("({s})") } else { s }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `+ - * / ^`, parentheses, integers (reduced mod p), `t`, and the
/// field generator `a` (for non-prime `q`). Juxtaposition multiplies, so
/// `2t^2+1` and `(t+1)^3/t` both work.
pub fn parse_expr(field: &Gf, text: &str) -> Result<RatFn> {
    let tokens = tokenize(text)?;
    let mut p = Parser { field, tokens, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("unexpected {:?} in {text:?}", p.tokens[p.pos])));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Var,
    Gen,
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' => {
                chars.next();
            }
            '0'..='9' => {
                let mut n: i64 = 0;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    n = n.checked_mul(10).and_then(|n| n.checked_add(i64::from(d))).ok_or_else(|| Error::Parse("number too large".into()))?;
                    chars.next();
                }
                out.push(Tok::Num(n));
            }
            't' | 'x' => {
                chars.next();
                out.push(Tok::Var);
            }
            'a' => {
                chars.next();
                out.push(Tok::Gen);
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                chars.next();
                out.push(Tok::Op(c));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Gf,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut acc = if self.eat('-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                acc = acc.div(&d).map_err(|_| Error::Parse("division by zero".into()))?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Var | Tok::Gen | Tok::Op('('))) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(Error::Parse("exponent must be an integer".into()));
            };
            self.pos += 1;
            return base.pow(if neg { -e } else { e }).map_err(|_| Error::Parse("zero to a negative power".into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFn> {
        let f = self.field;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFn::constant(f, f.from_int(n)))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(RatFn::t(f))
            }
            Some(Tok::Gen) => {
                self.pos += 1;
                if f.degree() == 1 {
                    return Err(Error::Parse("generator a is only defined for non-prime q".into()));
                }
                Ok(RatFn::constant(f, f.p()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing )".into()));
                }
                Ok(v)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}
