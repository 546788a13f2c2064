//! Quaternions, half-turn twist words and the two-to-one map onto rotations.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `a + bi + cj + dk`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quaternion<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Quaternion<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Quaternion { a, b, c, d }
    }

    fn basis(k: usize) -> Self {
        let v: [T; 4] = std::array::from_fn(|i| if i == k { T::one() } else { T::zero() });
        let [a, b, c, d] = v;
        Quaternion { a, b, c, d }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn i() -> Self {
        Self::basis(1)
    }

    pub fn j() -> Self {
        Self::basis(2)
    }

    pub fn k() -> Self {
        Self::basis(3)
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(
            self.a.clone(),
            -self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }

    pub fn norm_sq(&self) -> T {
        let sq = |x: &T| x.clone() * x.clone();
        sq(&self.a) + sq(&self.b) + sq(&self.c) + sq(&self.d)
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sq() == T::one()
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            let n = self.norm_sq();
            if n.is_zero() {
                return Err(Error::NonUnit);
            }
            let c = self.conj();
            Quaternion::new(c.a / n.clone(), c.b / n.clone(), c.c / n.clone(), c.d / n)
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Ok(acc)
    }
}

impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Quaternion<T>;

    fn mul(self, q: Quaternion<T>) -> Quaternion<T> {
        let p = self;
        let m = |x: &T, y: &T| x.clone() * y.clone();
        Quaternion {
            a: m(&p.a, &q.a) - m(&p.b, &q.b) - m(&p.c, &q.c) - m(&p.d, &q.d),
            b: m(&p.a, &q.b) + m(&p.b, &q.a) + m(&p.c, &q.d) - m(&p.d, &q.c),
            c: m(&p.a, &q.c) - m(&p.b, &q.d) + m(&p.c, &q.a) + m(&p.d, &q.b),
            d: m(&p.a, &q.d) + m(&p.b, &q.c) - m(&p.c, &q.b) + m(&p.d, &q.a),
        }
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Quaternion<T>;

    fn neg(self) -> Quaternion<T> {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<T: Scalar> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (v, unit) in [
            (&self.a, ""),
            (&self.b, "i"),
            (&self.c, "j"),
            (&self.d, "k"),
        ] {
            if v.is_zero() {
                continue;
            }
            let text = if !unit.is_empty() && *v == T::one() {
                unit.to_string()
            } else if !unit.is_empty() && *v == -T::one() {
                format!("-{unit}")
            } else {
                format!("{v}{unit}")
            };
            terms.push(text);
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        f.write_str(&out)
    }
}

/// A 3x3 matrix, rows first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix3<T> {
    pub rows: [[T; 3]; 3],
}

impl<T: Scalar> Matrix3<T> {
    pub fn identity() -> Self {
        Matrix3 {
            rows: std::array::from_fn(|r| {
                std::array::from_fn(|c| if r == c { T::one() } else { T::zero() })
            }),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

impl<T: Scalar> Mul for &Matrix3<T> {
    type Output = Matrix3<T>;

    fn mul(self, o: &Matrix3<T>) -> Matrix3<T> {
        Matrix3 {
            rows: std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    (0..3).fold(T::zero(), |acc, k| {
                        acc + self.rows[r][k].clone() * o.rows[k][c].clone()
                    })
                })
            }),
        }
    }
}

impl<T: Scalar> fmt::Display for Matrix3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The rotation `x -> q x q^-1` of pure quaternions, for a unit `q`.
pub fn quaternion_to_rotation<T: Scalar>(q: &Quaternion<T>) -> Result<Matrix3<T>> {
    if !q.is_unit() {
        return Err(Error::NonUnit);
    }
    let (a, b, c, d) = (&q.a, &q.b, &q.c, &q.d);
    let m = |x: &T, y: &T| x.clone() * y.clone();
    let two = T::from_i64(2);
    let t = |x: T| two.clone() * x;
    Ok(Matrix3 {
        rows: [
            [
                m(a, a) + m(b, b) - m(c, c) - m(d, d),
                t(m(b, c) - m(a, d)),
                t(m(b, d) + m(a, c)),
            ],
            [
                t(m(b, c) + m(a, d)),
                m(a, a) - m(b, b) + m(c, c) - m(d, d),
                t(m(c, d) - m(a, b)),
            ],
            [
                t(m(b, d) - m(a, c)),
                t(m(c, d) + m(a, b)),
                m(a, a) - m(b, b) - m(c, c) + m(d, d),
            ],
        ],
    })
}

/// Half turns about the coordinate axes, e.g. `iijk^2` or `j^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistWord {
    pub letters: Vec<(char, i64)>,
}

impl TwistWord {
    /// Concatenation.
    pub fn then(&self, other: &TwistWord) -> TwistWord {
        TwistWord {
            letters: self.letters.iter().chain(&other.letters).copied().collect(),
        }
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<TwistWord> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut pos = 0;
        if chars == ['1'] {
            return Ok(TwistWord { letters });
        }
        while pos < chars.len() {
            let ch = chars[pos];
            if !matches!(ch, 'i' | 'j' | 'k') {
                return Err(Error::Parse(format!(
                    "unexpected {ch:?} in twist word {s:?}"
                )));
            }
            pos += 1;
            let mut exp = 1;
            if chars.get(pos) == Some(&'^') {
                pos += 1;
                let start = pos;
                if chars.get(pos) == Some(&'-') {
                    pos += 1;
                }
                while chars.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                    pos += 1;
                }
                let digits: String = chars[start..pos].iter().collect();
                exp = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            }
            letters.push((ch, exp));
        }
        Ok(TwistWord { letters })
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for &(ch, e) in &self.letters {
            if e == 1 {
                write!(f, "{ch}")?;
            } else {
                write!(f, "{ch}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Product of the letters' unit quaternions, left to right.
pub fn word_to_quaternion<T: Scalar>(w: &TwistWord) -> Quaternion<T> {
    w.letters.iter().fold(Quaternion::one(), |acc, &(ch, e)| {
        let unit = match ch {
            'i' => Quaternion::i(),
            'j' => Quaternion::j(),
            _ => Quaternion::k(),
        };
        acc * unit.pow(e).expect("units are invertible")
    })
}

/// Class of a closed loop of rotations in the fundamental group of the
/// rotation group: 0 if the word multiplies to `+1`, 1 if to `-1`.
pub fn belt_class<T: Scalar>(w: &TwistWord) -> Result<u8> {
    let q: Quaternion<T> = word_to_quaternion(w);
    if !quaternion_to_rotation(&q)?.is_identity() {
        return Err(Error::NotALoop);
    }
    Ok(if q == Quaternion::one() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Quat;

    fn word(s: &str) -> TwistWord {
        s.parse().unwrap()
    }

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quat::i(), Quat::j(), Quat::k());
        assert_eq!(i.clone() * i.clone(), -Quat::one());
        assert_eq!(i.clone() * j.clone() * k, -Quat::one());
        assert_eq!(Quat::one() * j.clone(), j);
    }

    #[test]
    fn words() {
        assert_eq!(
            word_to_quaternion::<num_rational::Rational64>(&word("i^4")),
            Quat::one()
        );
        assert_eq!(
            word_to_quaternion::<num_rational::Rational64>(&word("ii")),
            -Quat::one()
        );
        assert_eq!(
            word_to_quaternion::<num_rational::Rational64>(&word("")),
            Quat::one()
        );
        assert_eq!(
            word_to_quaternion::<num_rational::Rational64>(&word("ij^-1")),
            -Quat::k()
        );
        assert_eq!(word("iijk^2").to_string(), "iijk^2");
        assert!("ix".parse::<TwistWord>().is_err());
    }

    #[test]
    fn rotations() {
        let r = quaternion_to_rotation(&Quat::i()).unwrap();
        let one = num_rational::Rational64::from_integer(1);
        let zero = num_rational::Rational64::from_integer(0);
        assert_eq!(
            r.rows,
            [[one, zero, zero], [zero, -one, zero], [zero, zero, -one]]
        );
        assert!(quaternion_to_rotation(&-Quat::one()).unwrap().is_identity());
        assert_eq!(
            quaternion_to_rotation(&Quat::new(one, one, zero, zero)),
            Err(Error::NonUnit)
        );
    }

    #[test]
    fn belt() {
        type R = num_rational::Rational64;
        assert_eq!(belt_class::<R>(&word("i^4")), Ok(0));
        assert_eq!(belt_class::<R>(&word("i^2")), Ok(1));
        assert_eq!(belt_class::<R>(&word("j^2i^2")), Ok(0));
        assert_eq!(belt_class::<R>(&word("i")), Err(Error::NotALoop));
    }
}
