//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use crate::error::{CoreError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses an exact rational string such as `-3`, `5/7`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| CoreError::Input(format!("malformed rational string `{s}`")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(CoreError::Input(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Element of Q(i), kept as an exact pair re + im*i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gaussian {
    pub re: Rat,
    pub im: Rat,
}

impl Gaussian {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gaussian { re, im }
    }

    pub fn one() -> Self {
        Gaussian::new(Rat::one(), Rat::zero())
    }

    pub fn zero() -> Self {
        Gaussian::new(Rat::zero(), Rat::zero())
    }

    pub fn i() -> Self {
        Gaussian::new(Rat::zero(), Rat::one())
    }

    pub fn minus_i() -> Self {
        Gaussian::new(Rat::zero(), -Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Gaussian::new(rat_int(n), Rat::zero())
    }

    pub fn sign(s: i64) -> Self {
        Gaussian::from_int(if s >= 0 { 1 } else { -1 })
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().pow(-n);
        }
        let mut acc = Gaussian::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn inv(&self) -> Self {
        let n = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        assert!(!n.is_zero(), "division by zero in Q(i)");
        Gaussian::new(self.re.clone() / n.clone(), -self.im.clone() / n)
    }

    /// (-i)^n for any integer n.
    pub fn minus_i_pow(n: i64) -> Self {
        Gaussian::minus_i().pow(n.rem_euclid(4))
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian::new(
            self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", fmt_rat(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}{}*i", fmt_rat(&self.re), fmt_rat(&self.im))
        } else {
            write!(f, "{}+{}*i", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

/// Parses `p/q` or `p/q+r/s*i` (also `-i`, `i`, `2*i`).
pub fn parse_gaussian(s: &str) -> Result<Gaussian> {
    let s = s.trim().replace(' ', "");
    if !s.contains('i') {
        return Ok(Gaussian::new(parse_rat(&s)?, Rat::zero()));
    }
    // split additive re/im parts: find a '+' or '-' separating them (not leading).
    let im_of = |t: &str| -> Result<Rat> {
        let t = t.strip_suffix("*i").or_else(|| t.strip_suffix('i')).unwrap_or(t);
        match t {
            "" | "+" => Ok(Rat::one()),
            "-" => Ok(-Rat::one()),
            _ => parse_rat(t),
        }
    };
    for (idx, c) in s.char_indices().skip(1) {
        if (c == '+' || c == '-') && !s[..idx].ends_with('/') {
            let (a, b) = s.split_at(idx);
            if b.contains('i') {
                return Ok(Gaussian::new(parse_rat(a)?, im_of(b)?));
            } else {
                return Ok(Gaussian::new(parse_rat(b)?, im_of(a)?));
            }
        }
    }
    Ok(Gaussian::new(Rat::zero(), im_of(&s)?))
}

/// Exact binomial coefficient C(n, k) for n >= 0.
pub fn binomial(n: i64, k: i64) -> Rat {
    if k < 0 || k > n {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for j in 0..k {
        acc *= Rat::new(BigInt::from(n - j), BigInt::from(j + 1));
    }
    acc
}

pub fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    Rat::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-4/7", "0", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s.trim_start_matches('+'));
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = Gaussian::i();
        assert_eq!(i.clone() * i.clone(), Gaussian::from_int(-1));
        assert_eq!(Gaussian::minus_i_pow(2), Gaussian::from_int(-1));
        assert_eq!(Gaussian::minus_i_pow(4), Gaussian::one());
        let g = parse_gaussian("1/2-3*i").unwrap();
        assert_eq!(g, Gaussian::new(rat(1, 2), rat_int(-3)));
        assert!(g.clone().mul(g.inv()).is_one());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), rat_int(6));
        assert_eq!(binomial(2, 1), rat_int(2));
        assert!(binomial(3, 5).is_zero());
    }
}
