//! Free Lie algebra over Q on named generators, stored in Lyndon-basis
//! normal form. Brackets are computed in the tensor algebra, and Lyndon
//! coordinates are extracted greedily from the lexicographically least word.

use crate::error::{CoreError, Result};
use crate::num::{fmt_rat, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

pub type Word = Vec<String>;

/// Polynomial in the tensor algebra: words of generators with coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AssocPoly {
    pub terms: BTreeMap<Word, Rat>,
}

impl AssocPoly {
    pub fn zero() -> Self {
        AssocPoly::default()
    }

    pub fn gen(name: &str) -> Self {
        let mut p = AssocPoly::zero();
        p.add_term(vec![name.to_string()], Rat::from_integer(1.into()));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &AssocPoly) -> AssocPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> AssocPoly {
        if c.is_zero() {
            return AssocPoly::zero();
        }
        AssocPoly {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &AssocPoly) -> AssocPoly {
        let mut out = AssocPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().cloned());
                out.add_term(w, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn commutator(&self, o: &AssocPoly) -> AssocPoly {
        self.mul(o).add(&o.mul(self).scale(&-Rat::from_integer(1.into())))
    }
}

fn is_lyndon(w: &[String]) -> bool {
    if w.is_empty() {
        return false;
    }
    let n = w.len();
    for k in 1..n {
        let rotation: Vec<&String> = w[k..].iter().chain(&w[..k]).collect();
        let orig: Vec<&String> = w.iter().collect();
        if rotation <= orig {
            return false;
        }
    }
    true
}

/// Standard factorization w = uv with v the longest proper Lyndon suffix.
fn standard_split(w: &[String]) -> usize {
    debug_assert!(w.len() >= 2);
    for k in 1..w.len() {
        if is_lyndon(&w[k..]) {
            return k;
        }
    }
    w.len() - 1
}

/// Tensor-algebra expansion of the standard bracketing of a Lyndon word.
pub fn lyndon_expansion(w: &[String]) -> AssocPoly {
    if w.len() == 1 {
        return AssocPoly::gen(&w[0]);
    }
    let k = standard_split(w);
    lyndon_expansion(&w[..k]).commutator(&lyndon_expansion(&w[k..]))
}

/// An element of the free Lie algebra in Lyndon coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieExpr {
    pub terms: BTreeMap<Word, Rat>,
}

impl LieExpr {
    pub fn zero() -> Self {
        LieExpr::default()
    }

    pub fn gen(name: &str) -> Self {
        let mut t = BTreeMap::new();
        t.insert(vec![name.to_string()], Rat::from_integer(1.into()));
        LieExpr { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &LieExpr) -> LieExpr {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            let e = out.terms.entry(w.clone()).or_insert_with(Rat::zero);
            *e += c.clone();
            if e.is_zero() {
                out.terms.remove(w);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> LieExpr {
        if c.is_zero() {
            return LieExpr::zero();
        }
        LieExpr {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v.clone() * c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> LieExpr {
        self.scale(&-Rat::from_integer(1.into()))
    }

    pub fn to_assoc(&self) -> AssocPoly {
        let mut out = AssocPoly::zero();
        for (w, c) in &self.terms {
            out = out.add(&lyndon_expansion(w).scale(c));
        }
        out
    }

    /// Lyndon coordinates of a Lie element given in the tensor algebra.
    pub fn from_assoc(p: &AssocPoly) -> Result<LieExpr> {
        let mut rest = p.clone();
        let mut out = LieExpr::zero();
        while let Some((w, c)) = rest.terms.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            if !is_lyndon(&w) {
                return Err(CoreError::Structural(format!(
                    "element is not in the free Lie algebra: stray word {w:?}"
                )));
            }
            rest = rest.add(&lyndon_expansion(&w).scale(&-c.clone()));
            let e = out.terms.entry(w).or_insert_with(Rat::zero);
            *e += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn bracket(&self, o: &LieExpr) -> LieExpr {
        LieExpr::from_assoc(&self.to_assoc().commutator(&o.to_assoc()))
            .expect("bracket of Lie elements is a Lie element")
    }

    /// Words rendered as their standard bracketings with exact coefficients.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let body = render_bracketing(w);
            let mag = if c.clone().abs().is_one() {
                body
            } else {
                format!("{} {}", fmt_rat(&c.clone().abs()), body)
            };
            if i == 0 {
                if c < &Rat::zero() {
                    out.push('-');
                }
            } else if c < &Rat::zero() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&mag);
        }
        out
    }
}

fn render_bracketing(w: &[String]) -> String {
    if w.len() == 1 {
        return w[0].clone();
    }
    let k = standard_split(w);
    format!("[{},{}]", render_bracketing(&w[..k]), render_bracketing(&w[k..]))
}

use num_traits::One;
