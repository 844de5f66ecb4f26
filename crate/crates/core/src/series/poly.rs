//! Exact multivariate polynomials over Q and rational functions whose
//! denominators are kept as factored multisets. The factors arising in this
//! crate are linear forms in the torus characters, so trial division keeps
//! every rational function in canonical reduced form.

use crate::error::{CoreError, Result};
use crate::num::{fmt_rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in a fixed number of variables, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MPoly {
    pub arity: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(arity: usize) -> Self {
        MPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    pub fn one(arity: usize) -> Self {
        MPoly::constant(arity, Rat::one())
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut p = MPoly::zero(arity);
        p.add_term(e, Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.arity);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c.clone();
        }
        out
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one(self.arity);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The leading term in lex order.
    fn leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &MPoly) -> Option<MPoly> {
        if other.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quo = MPoly::zero(self.arity);
        let (le, lc) = {
            let (e, c) = other.leading().unwrap();
            (e.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (re, rc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            if re.iter().zip(&le).any(|(a, b)| a < b) {
                return None;
            }
            let de: Vec<u32> = re.iter().zip(&le).map(|(a, b)| a - b).collect();
            let dc = rc / lc.clone();
            let mut mono = MPoly::zero(self.arity);
            mono.add_term(de, dc);
            quo = quo.add(&mono);
            rem = rem.sub(&mono.mul(other));
        }
        Some(quo)
    }

    /// Primitive normalization: returns (content, primitive part) where the
    /// primitive part has integer coprime coefficients and positive leading
    /// lex coefficient.
    pub fn primitive(&self) -> (Rat, MPoly) {
        if self.is_zero() {
            return (Rat::zero(), self.clone());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.clone().recip();
        (content, self.scale(&inv))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut factors = Vec::new();
            let coeff = fmt_rat(c);
            if coeff != "1" || e.iter().all(|&x| x == 0) {
                factors.push(coeff);
            }
            for (i, &x) in e.iter().enumerate() {
                if x == 1 {
                    factors.push(names[i].clone());
                } else if x > 1 {
                    factors.push(format!("{}^{}", names[i], x));
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

/// Rational function with factored denominator, reduced by trial division.
/// Equality is semantic (by cross-multiplication), since denominators may be
/// assembled from different factorizations.
#[derive(Debug, Clone)]
pub struct RatFunc {
    pub num: MPoly,
    pub den: BTreeMap<MPoly, u32>,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.num.clone();
        for (f, m) in &other.den {
            for _ in 0..*m {
                a = a.mul(f);
            }
        }
        let mut b = other.num.clone();
        for (f, m) in &self.den {
            for _ in 0..*m {
                b = b.mul(f);
            }
        }
        a == b
    }
}

impl Eq for RatFunc {}

impl RatFunc {
    pub fn zero(arity: usize) -> Self {
        RatFunc { num: MPoly::zero(arity), den: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        RatFunc { num: MPoly::one(arity), den: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        RatFunc { num: MPoly::constant(arity, c), den: BTreeMap::new() }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc { num: p, den: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn arity(&self) -> usize {
        self.num.arity
    }

    fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let factors: Vec<MPoly> = self.den.keys().cloned().collect();
        for f in factors {
            while *self.den.get(&f).unwrap_or(&0) > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&f).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// Division by a polynomial factor, normalized to primitive form.
    pub fn div_poly(&self, p: &MPoly) -> Result<RatFunc> {
        let (content, prim) = p.primitive();
        if content.is_zero() {
            return Err(CoreError::Singular("division by the zero polynomial".into()));
        }
        let mut out = self.clone();
        out.num = out.num.scale(&content.recip());
        if !prim.is_constant() {
            *out.den.entry(prim).or_insert(0) += 1;
        }
        Ok(out.reduce())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        RatFunc { num: self.num.mul(&other.num), den }.reduce()
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: if c.is_zero() { BTreeMap::new() } else { self.den.clone() } }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        // common denominator: max multiplicity per factor
        let mut den: BTreeMap<MPoly, u32> = self.den.clone();
        for (f, m) in &other.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let lift = |r: &RatFunc| -> MPoly {
            let mut n = r.num.clone();
            for (f, m) in &den {
                let have = r.den.get(f).copied().unwrap_or(0);
                for _ in have..*m {
                    n = n.mul(f);
                }
            }
            n
        };
        let num = lift(self).add(&lift(other));
        RatFunc { num, den }.reduce()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(CoreError::Singular("inverting the zero rational function".into()));
        }
        // numerator moves into the denominator, splitting off variable powers
        let (content, mut prim) = self.num.primitive();
        let mut num = MPoly::constant(self.arity(), content.recip());
        for (f, m) in &self.den {
            for _ in 0..*m {
                num = num.mul(f);
            }
        }
        let mut den: BTreeMap<MPoly, u32> = BTreeMap::new();
        for i in 0..self.arity() {
            let min_exp = prim.terms.keys().map(|e| e[i]).min().unwrap_or(0);
            if min_exp > 0 {
                let v = MPoly::var(self.arity(), i);
                for _ in 0..min_exp {
                    prim = prim.div_exact(&v).unwrap();
                }
                *den.entry(v).or_insert(0) += min_exp;
            }
        }
        if !prim.is_constant() {
            *den.entry(prim).or_insert(0) += 1;
        } else if let Some(c) = prim.constant_value() {
            if !c.is_one() {
                num = num.scale(&c.recip());
            }
        }
        Ok(RatFunc { num, den }.reduce())
    }

    pub fn render(&self, names: &[String]) -> String {
        let n = self.num.render(names);
        if self.den.is_empty() {
            return n;
        }
        let d: Vec<String> = self
            .den
            .iter()
            .map(|(f, m)| {
                let base = format!("({})", f.render(names));
                if *m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect();
        format!("({n}) / {}", d.join("*"))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.arity).map(|i| format!("t{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}
