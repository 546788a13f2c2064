//! A tiny formal language with a bijective numbering, the shift `g -> #g`
//! and the self-referential fixed point `F(#g)`.
//!
//! Terms are the variable `u`, numerals, and `#(t)`. Formulas are
//! `IsEven(t)`, `IsPrime(t)`, `IsZero(t)`, `Not(F)` and `And(F, G)`. Every
//! natural number decodes to exactly one formula:
//!
//! * term code `0` is `u`; an odd code `2n + 1` is the numeral `n`; an even
//!   code `2m + 2` is `#(t)` for the term `t` with code `m`;
//! * formula code `g` splits as `3q + r`: `r = 0` is a predicate (kind
//!   `q mod 3`, term code `q / 3`), `r = 1` is `Not` of formula `q`, and
//!   `r = 2` is `And` of the Cantor-unpaired formulas of `q`.
//!
//! Shifted codes grow quickly, so codes are arbitrary precision integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    U,
    Num(BigUint),
    Hash(Box<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    IsEven,
    IsPrime,
    IsZero,
}

impl Predicate {
    const ALL: [Predicate; 3] = [Predicate::IsEven, Predicate::IsPrime, Predicate::IsZero];

    fn name(self) -> &'static str {
        match self {
            Predicate::IsEven => "IsEven",
            Predicate::IsPrime => "IsPrime",
            Predicate::IsZero => "IsZero",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Pred(Predicate, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
}

fn big(n: u32) -> BigUint {
    BigUint::from(n)
}

pub fn encode_term(t: &Term) -> BigUint {
    match t {
        Term::U => BigUint::zero(),
        Term::Num(n) => n * big(2) + big(1),
        Term::Hash(inner) => encode_term(inner) * big(2) + big(2),
    }
}

pub fn decode_term(code: &BigUint) -> Term {
    if code.is_zero() {
        return Term::U;
    }
    let m = code - big(1);
    let (half, rem) = m.div_rem(&big(2));
    if rem.is_zero() {
        Term::Num(half)
    } else {
        Term::Hash(Box::new(decode_term(&((code - big(2)) / big(2)))))
    }
}

fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + big(1))) / big(2) + y
}

fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * big(8) + big(1)).sqrt() - big(1)) / big(2);
    let t = (&w * (&w + big(1))) / big(2);
    let y = z - t;
    let x = w - &y;
    (x, y)
}

pub fn encode(f: &Formula) -> BigUint {
    match f {
        Formula::Pred(p, t) => {
            let kind = Predicate::ALL.iter().position(|q| q == p).unwrap() as u32;
            (encode_term(t) * big(3) + big(kind)) * big(3)
        }
        Formula::Not(a) => encode(a) * big(3) + big(1),
        Formula::And(a, b) => pair(&encode(a), &encode(b)) * big(3) + big(2),
    }
}

pub fn decode(g: &BigUint) -> Formula {
    let (q, r) = g.div_rem(&big(3));
    match r.to_u32().unwrap() {
        0 => {
            let (tc, kind) = q.div_rem(&big(3));
            Formula::Pred(Predicate::ALL[kind.to_usize().unwrap()], decode_term(&tc))
        }
        1 => Formula::Not(Box::new(decode(&q))),
        _ => {
            let (x, y) = unpair(&q);
            Formula::And(Box::new(decode(&x)), Box::new(decode(&y)))
        }
    }
}

impl Term {
    fn has_u(&self) -> bool {
        match self {
            Term::U => true,
            Term::Num(_) => false,
            Term::Hash(t) => t.has_u(),
        }
    }

    fn has_hash_u(&self) -> bool {
        match self {
            Term::U | Term::Num(_) => false,
            Term::Hash(t) => **t == Term::U || t.has_hash_u(),
        }
    }

    fn subst(&self, n: &BigUint) -> Term {
        match self {
            Term::U => Term::Num(n.clone()),
            Term::Num(_) => self.clone(),
            Term::Hash(t) => Term::Hash(Box::new(t.subst(n))),
        }
    }

    /// Value of a closed term, reading `#` as the shift.
    pub fn value(&self) -> Result<BigUint> {
        match self {
            Term::U => Err(Error::Parse("the variable u has no value".into())),
            Term::Num(n) => Ok(n.clone()),
            Term::Hash(t) => shift(&t.value()?),
        }
    }
}

impl Formula {
    fn terms(&self) -> Vec<&Term> {
        match self {
            Formula::Pred(_, t) => vec![t],
            Formula::Not(a) => a.terms(),
            Formula::And(a, b) => {
                let mut v = a.terms();
                v.extend(b.terms());
                v
            }
        }
    }

    pub fn has_free_u(&self) -> bool {
        self.terms().iter().any(|t| t.has_u())
    }

    pub fn has_shift_of_u(&self) -> bool {
        self.terms().iter().any(|t| t.has_hash_u())
    }

    /// Replaces every `u` by the numeral `n`.
    pub fn substitute(&self, n: &BigUint) -> Formula {
        match self {
            Formula::Pred(p, t) => Formula::Pred(*p, t.subst(n)),
            Formula::Not(a) => Formula::Not(Box::new(a.substitute(n))),
            Formula::And(a, b) => {
                Formula::And(Box::new(a.substitute(n)), Box::new(b.substitute(n)))
            }
        }
    }
}

/// `#g`: the code of formula `g` with its own code substituted for `u`.
pub fn shift(g: &BigUint) -> Result<BigUint> {
    let f = decode(g);
    if !f.has_free_u() {
        return Err(Error::ClosedFormula);
    }
    Ok(encode(&f.substitute(g)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    /// Code of the template `F(#u)`.
    pub g: BigUint,
    /// `#g`, the code of `result`.
    pub shifted: BigUint,
    /// `F(#g)`.
    pub result: Formula,
    /// Every `#(g)` inside `result` evaluates to the code of `result`.
    pub verified: bool,
}

/// Builds `F(#g)` from a template `F(#u)`; the formula then names its own
/// code.
pub fn fixed_point(template: &Formula) -> Result<FixedPoint> {
    if !template.has_shift_of_u() {
        return Err(Error::MissingShift);
    }
    let g = encode(template);
    let shifted = shift(&g)?;
    let result = decode(&shifted);
    let self_ref = Term::Hash(Box::new(Term::Num(g.clone())));
    let mut verified = result == template.substitute(&g);
    for t in result.terms() {
        let mut at = t;
        loop {
            if *at == self_ref {
                verified &= at.value()? == shifted;
            }
            match at {
                Term::Hash(inner) => at = inner,
                _ => break,
            }
        }
    }
    Ok(FixedPoint {
        g,
        shifted,
        result,
        verified,
    })
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::U => f.write_str("u"),
            Term::Num(n) => write!(f, "{n}"),
            Term::Hash(t) => write!(f, "#({t})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Pred(p, t) => write!(f, "{}({t})", p.name()),
            Formula::Not(a) => write!(f, "Not({a})"),
            Formula::And(a, b) => write!(f, "And({a}, {b})"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap()
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&b'#') {
            self.pos += 1;
            self.expect(b'(')?;
            let t = self.term()?;
            self.expect(b')')?;
            return Ok(Term::Hash(Box::new(t)));
        }
        let word = self.ident().to_string();
        if word == "u" {
            Ok(Term::U)
        } else if !word.is_empty() && word.bytes().all(|b| b.is_ascii_digit()) {
            Ok(Term::Num(word.parse().unwrap()))
        } else {
            Err(self.err(&format!("expected a term, found {word:?}")))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let name = self.ident().to_string();
        self.expect(b'(')?;
        let f = match name.as_str() {
            "Not" => Formula::Not(Box::new(self.formula()?)),
            "And" => {
                let a = self.formula()?;
                self.expect(b',')?;
                let b = self.formula()?;
                Formula::And(Box::new(a), Box::new(b))
            }
            _ => {
                let p = Predicate::ALL
                    .into_iter()
                    .find(|p| p.name() == name)
                    .ok_or_else(|| self.err(&format!("unknown symbol {name:?}")))?;
                Formula::Pred(p, self.term()?)
            }
        };
        self.expect(b')')?;
        Ok(f)
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let f = p.formula()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

/// The formula with code `g`, for `g = 0, 1, 2, ...`.
pub fn enumerate(count: usize) -> impl Iterator<Item = Formula> {
    (0..count).map(|g| decode(&BigUint::from(g)))
}

pub fn code(n: u64) -> BigUint {
    BigUint::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_codes() {
        assert_eq!(decode(&code(0)).to_string(), "IsEven(u)");
        assert_eq!(decode(&code(1)).to_string(), "Not(IsEven(u))");
        assert_eq!(decode(&code(2)).to_string(), "And(IsEven(u), IsEven(u))");
        assert_eq!(decode_term(&code(2)), Term::Hash(Box::new(Term::U)));
    }

    #[test]
    fn roundtrip_and_parse() {
        for f in enumerate(2000) {
            assert_eq!(decode(&encode(&f)), f);
            assert_eq!(f.to_string().parse::<Formula>().unwrap(), f);
        }
        for g in 0..2000u64 {
            assert_eq!(encode(&decode(&code(g))), code(g));
        }
    }

    #[test]
    fn shift_substitutes_own_code() {
        let f: Formula = "And(IsPrime(u), Not(IsZero(#(u))))".parse().unwrap();
        let g = encode(&f);
        assert_eq!(decode(&shift(&g).unwrap()), f.substitute(&g));
        let closed: Formula = "IsZero(3)".parse().unwrap();
        assert_eq!(shift(&encode(&closed)), Err(Error::ClosedFormula));
    }

    #[test]
    fn fixed_point_names_itself() {
        let t: Formula = "IsEven(#(u))".parse().unwrap();
        let fp = fixed_point(&t).unwrap();
        assert!(fp.verified);
        assert_eq!(encode(&fp.result), fp.shifted);
        assert_eq!(fp.result.to_string(), format!("IsEven(#({}))", fp.g));
        assert_eq!(
            fixed_point(&"IsEven(u)".parse().unwrap()),
            Err(Error::MissingShift)
        );
    }

    #[test]
    fn parse_errors() {
        assert!("IsOdd(u)".parse::<Formula>().is_err());
        assert!("IsEven(u".parse::<Formula>().is_err());
        assert!("IsEven(v)".parse::<Formula>().is_err());
    }
}
