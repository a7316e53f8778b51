//! Exact arithmetic in the cyclotomic field ℚ(ζ₈) = ℚ(i, √2).
//!
//! An element is stored as `c0 + c1·ζ + c2·ζ² + c3·ζ³` with `ζ = e^{iπ/4}` and
//! rational coefficients; products are reduced with `ζ⁴ = −1`. In this basis
//! `ζ²` is `i` and `ζ − ζ³` is `√2`.
//!
//! The textual form is `a + b*z + c*z^2 + d*z^3` with exact fractions, zero
//! terms omitted (`0` for the zero element). [`Cyclotomic8::from_str`] parses
//! that form and additionally accepts the atoms `i` and `sqrt2`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_q::Rational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero in Q(zeta_8)")]
    DivisionByZero,
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is not an 8th root of unity")]
    NotRootOfUnity(String),
}

/// An element of ℚ(ζ₈).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Cyclotomic8 {
    c: [Rational; 4],
}

fn zero_q() -> Rational {
    Rational::from(0)
}

impl Cyclotomic8 {
    pub fn zero() -> Self {
        Self { c: [zero_q(), zero_q(), zero_q(), zero_q()] }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::from_signeds(num, den))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self { c: [r, zero_q(), zero_q(), zero_q()] }
    }

    pub fn from_coefficients(c: [Rational; 4]) -> Self {
        Self { c }
    }

    /// `ζ = e^{iπ/4}`.
    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut out = Self::zero();
        if k < 4 {
            out.c[k] = Rational::from(1);
        } else {
            out.c[k - 4] = Rational::from(-1);
        }
        out
    }

    pub fn i() -> Self {
        Self::zeta_pow(2)
    }

    pub fn sqrt2() -> Self {
        Self { c: [zero_q(), Rational::from(1), zero_q(), Rational::from(-1)] }
    }

    /// `1/√2 = (ζ − ζ³)/2`.
    pub fn inv_sqrt2() -> Self {
        Self { c: [zero_q(), Rational::from_signeds(1, 2), zero_q(), Rational::from_signeds(-1, 2)] }
    }

    pub fn coefficients(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| *x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|x| *x == 0)
    }

    /// Returns the rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.c[1..].iter().all(|x| *x == 0).then_some(&self.c[0])
    }

    /// Fixed by complex conjugation, i.e. lies in the real subfield ℚ(√2).
    pub fn is_real(&self) -> bool {
        // conj(c0 + c1ζ + c2ζ² + c3ζ³) = c0 − c3ζ − c2ζ² − c1ζ³
        self.c[2] == 0 && self.c[1] == -&self.c[3]
    }

    /// The Galois automorphism `ζ ↦ ζ^m` for odd `m`.
    fn galois(&self, m: usize) -> Self {
        debug_assert!(m % 2 == 1);
        let mut out = Self::zero();
        for (k, coeff) in self.c.iter().enumerate() {
            if *coeff == 0 {
                continue;
            }
            let e = (k * m) % 8;
            if e < 4 {
                out.c[e] += coeff;
            } else {
                out.c[e - 4] -= coeff;
            }
        }
        out
    }

    /// Complex conjugation, the automorphism `ζ ↦ ζ⁻¹ = −ζ³`.
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    /// `a · conj(a)`; an element of the real subfield, zero iff `a` is.
    pub fn norm_squared(&self) -> Self {
        self * &self.conj()
    }

    /// Field norm down to ℚ: the product of all four Galois conjugates.
    pub fn field_norm(&self) -> Rational {
        let n = &(self * &self.galois(3)) * &(&self.galois(5) * &self.galois(7));
        debug_assert!(n.as_rational().is_some());
        n.c[0].clone()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let others = &self.galois(3) * &(&self.galois(5) * &self.galois(7));
        let norm = (self * &others).c[0].clone();
        let scale = Rational::from(1) / norm;
        Ok(others.scale(&scale))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r] }
    }

    /// Negate iff `flag`; the common Koszul-sign idiom.
    pub fn signed(self, flag: bool) -> Self {
        if flag {
            -self
        } else {
            self
        }
    }

    /// The exponent `e` with `self = ζ^e`, if there is one.
    pub fn mu8_exponent(&self) -> Option<u8> {
        let nonzero: Vec<usize> = (0..4).filter(|&k| self.c[k] != 0).collect();
        if nonzero.len() != 1 {
            return None;
        }
        let k = nonzero[0];
        if self.c[k] == 1 {
            Some(k as u8)
        } else if self.c[k] == -1 {
            Some(k as u8 + 4)
        } else {
            None
        }
    }
}

impl Default for Cyclotomic8 {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic8 {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Mu8> for Cyclotomic8 {
    fn from(m: Mu8) -> Self {
        Self::zeta_pow(m.0 as i64)
    }
}

impl<'a> Add<&'a Cyclotomic8> for &'a Cyclotomic8 {
    type Output = Cyclotomic8;
    fn add(self, rhs: &'a Cyclotomic8) -> Cyclotomic8 {
        Cyclotomic8 {
            c: [&self.c[0] + &rhs.c[0], &self.c[1] + &rhs.c[1], &self.c[2] + &rhs.c[2], &self.c[3] + &rhs.c[3]],
        }
    }
}

impl<'a> Sub<&'a Cyclotomic8> for &'a Cyclotomic8 {
    type Output = Cyclotomic8;
    fn sub(self, rhs: &'a Cyclotomic8) -> Cyclotomic8 {
        Cyclotomic8 {
            c: [&self.c[0] - &rhs.c[0], &self.c[1] - &rhs.c[1], &self.c[2] - &rhs.c[2], &self.c[3] - &rhs.c[3]],
        }
    }
}

impl<'a> Mul<&'a Cyclotomic8> for &'a Cyclotomic8 {
    type Output = Cyclotomic8;
    fn mul(self, rhs: &'a Cyclotomic8) -> Cyclotomic8 {
        let mut out = Cyclotomic8::zero();
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if *b == 0 {
                    continue;
                }
                let prod = a * b;
                let e = i + j;
                if e < 4 {
                    out.c[e] += prod;
                } else {
                    out.c[e - 4] -= prod;
                }
            }
        }
        out
    }
}

impl Neg for &Cyclotomic8 {
    type Output = Cyclotomic8;
    fn neg(self) -> Cyclotomic8 {
        Cyclotomic8 { c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]] }
    }
}

impl Neg for Cyclotomic8 {
    type Output = Cyclotomic8;
    fn neg(self) -> Cyclotomic8 {
        let [a, b, c, d] = self.c;
        Cyclotomic8 { c: [-a, -b, -c, -d] }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic8> for Cyclotomic8 {
            type Output = Cyclotomic8;
            fn $m(self, rhs: Cyclotomic8) -> Cyclotomic8 {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic8> for Cyclotomic8 {
            type Output = Cyclotomic8;
            fn $m(self, rhs: &'a Cyclotomic8) -> Cyclotomic8 {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyclotomic8> for Cyclotomic8 {
    fn add_assign(&mut self, rhs: &Cyclotomic8) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclotomic8> for Cyclotomic8 {
    fn sub_assign(&mut self, rhs: &Cyclotomic8) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
    }
}

impl MulAssign<&Cyclotomic8> for Cyclotomic8 {
    fn mul_assign(&mut self, rhs: &Cyclotomic8) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Cyclotomic8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, coeff) in self.c.iter().enumerate() {
            if *coeff == 0 {
                continue;
            }
            let negative = *coeff < 0;
            let magnitude = if negative { -coeff } else { coeff.clone() };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            match (k, magnitude == 1) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{magnitude}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{magnitude}*z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic8({self})")
    }
}

impl From<Cyclotomic8> for String {
    fn from(c: Cyclotomic8) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Cyclotomic8 {
    type Error = ScalarError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl FromStr for Cyclotomic8 {
    type Err = ScalarError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| ScalarError::Parse { input: input.to_string(), reason: reason.to_string() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(fail("empty input"));
        }
        // Split into signed terms at top-level '+'/'-' (not after '^' or '/').
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            let is_sep = (ch == '+' || ch == '-') && !matches!(prev, Some('^') | Some('/') | Some('*'));
            if is_sep {
                if !current.is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                    negative = false;
                } else if prev.is_some() && !matches!(prev, Some('+') | Some('-')) {
                    return Err(fail("misplaced sign"));
                }
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(fail("dangling sign"));
        }
        terms.push((negative, current));

        let mut total = Cyclotomic8::zero();
        for (neg, term) in terms {
            let value = parse_term(&term).map_err(|r| fail(&r))?;
            total = if neg { total - value } else { total + value };
        }
        Ok(total)
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let ok =
        !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-') && s.matches('/').count() <= 1;
    if !ok {
        return Err(format!("bad rational {s:?}"));
    }
    if let Some((n, d)) = s.split_once('/') {
        if d.trim_start_matches('-').chars().all(|c| c == '0') {
            return Err("zero denominator".into());
        }
        let n = Rational::from_str(n).map_err(|_| format!("bad numerator {n:?}"))?;
        let d = Rational::from_str(d).map_err(|_| format!("bad denominator {d:?}"))?;
        Ok(n / d)
    } else {
        Rational::from_str(s).map_err(|_| format!("bad integer {s:?}"))
    }
}

fn parse_atom(s: &str) -> Result<Cyclotomic8, String> {
    match s {
        "i" => Ok(Cyclotomic8::i()),
        "sqrt2" => Ok(Cyclotomic8::sqrt2()),
        "z" => Ok(Cyclotomic8::zeta()),
        _ => {
            let exp = s.strip_prefix("z^").ok_or_else(|| format!("unknown atom {s:?}"))?;
            let e: i64 = exp.parse().map_err(|_| format!("bad exponent {exp:?}"))?;
            Ok(Cyclotomic8::zeta_pow(e))
        }
    }
}

fn parse_term(term: &str) -> Result<Cyclotomic8, String> {
    let mut value = Cyclotomic8::one();
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err("empty factor".into());
        }
        let f = if factor.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
            Cyclotomic8::from_rational(parse_rational(factor)?)
        } else {
            parse_atom(factor)?
        };
        value = value * f;
    }
    Ok(value)
}

/// An 8th root of unity `ζ^e`, stored by its exponent modulo 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mu8(u8);

impl Mu8 {
    pub const ONE: Mu8 = Mu8(0);
    pub const MINUS_ONE: Mu8 = Mu8(4);

    pub fn new(exponent: i64) -> Self {
        Mu8(exponent.rem_euclid(8) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn sign(negative: bool) -> Self {
        if negative {
            Self::MINUS_ONE
        } else {
            Self::ONE
        }
    }

    pub fn conj(self) -> Self {
        Mu8((8 - self.0) % 8)
    }

    pub fn inv(self) -> Self {
        self.conj()
    }

    pub fn to_cyclotomic(self) -> Cyclotomic8 {
        self.into()
    }
}

impl Mul for Mu8 {
    type Output = Mu8;
    fn mul(self, rhs: Mu8) -> Mu8 {
        Mu8((self.0 + rhs.0) % 8)
    }
}

impl TryFrom<&Cyclotomic8> for Mu8 {
    type Error = ScalarError;
    fn try_from(c: &Cyclotomic8) -> Result<Self, ScalarError> {
        c.mu8_exponent().map(Mu8).ok_or_else(|| ScalarError::NotRootOfUnity(c.to_string()))
    }
}

impl fmt::Display for Mu8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> Cyclotomic8 {
        Cyclotomic8::zeta_pow(k)
    }

    #[test]
    fn zeta_relations() {
        assert_eq!(&z(1) * &z(3), Cyclotomic8::from_integer(-1));
        let r2 = &z(1) - &z(3);
        assert_eq!(&r2 * &r2, Cyclotomic8::from_integer(2));
        assert_eq!(Cyclotomic8::sqrt2(), r2);
        assert_eq!(z(2).inv().unwrap(), -z(2));
        assert_eq!(&Cyclotomic8::inv_sqrt2() * &Cyclotomic8::sqrt2(), Cyclotomic8::one());
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(2).conj(), -z(2));
        assert_eq!(Cyclotomic8::sqrt2().conj(), Cyclotomic8::sqrt2());
        assert!(Cyclotomic8::sqrt2().is_real());
        assert!(!z(1).is_real());
        let a: Cyclotomic8 = "3/4 - 2*z + 5*z^3".parse().unwrap();
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn norms() {
        assert_eq!(z(1).norm_squared(), Cyclotomic8::one());
        // (1 + i)(1 - i) = 1 - i^2 = 2
        let one_plus_i = &Cyclotomic8::one() + &z(2);
        assert_eq!(one_plus_i.norm_squared(), Cyclotomic8::from_integer(2));
        assert_eq!(Cyclotomic8::zero().norm_squared(), Cyclotomic8::zero());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(Cyclotomic8::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn rendering() {
        assert_eq!(Cyclotomic8::zero().to_string(), "0");
        assert_eq!(z(2).to_string(), "z^2");
        assert_eq!((-z(1)).to_string(), "-z");
        assert_eq!(Cyclotomic8::inv_sqrt2().to_string(), "1/2*z - 1/2*z^3");
        assert_eq!(Cyclotomic8::from_ratio(-3, 6).to_string(), "-1/2");
    }

    #[test]
    fn parsing() {
        let cases = [
            ("1", Cyclotomic8::one()),
            ("-z^3", -z(3)),
            ("i", z(2)),
            ("z^5", -z(1)),
            ("sqrt2", z(1) - z(3)),
            ("1/2*z - 1/2*z^3", Cyclotomic8::inv_sqrt2()),
            (" 2 + -3*z ", Cyclotomic8::from_integer(2) - z(1).scale(&Rational::from(3))),
            ("-2/4*i", -z(2).scale(&Rational::from_signeds(1, 2))),
        ];
        for (text, expected) in cases {
            assert_eq!(text.parse::<Cyclotomic8>().unwrap(), expected, "{text}");
        }
        for bad in ["", "+", "1/0", "2*", "w", "1 +", "z^x"] {
            assert!(bad.parse::<Cyclotomic8>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn mu8_roundtrip() {
        for e in 0..8 {
            let c = z(e);
            let m = Mu8::try_from(&c).unwrap();
            assert_eq!(m.exponent() as i64, e);
            assert_eq!(m.to_cyclotomic(), c);
            assert_eq!(m.conj().to_cyclotomic(), c.conj());
        }
        assert!(Mu8::try_from(&Cyclotomic8::sqrt2()).is_err());
    }
}
