//! Laurent polynomials in z over nilpotent symbols and opaque tokens, plus
//! the p-series vectors realizing the cap calculus p^i ∩ τ^n = p^{i-n}.

use crate::error::{CoreError, Result};
use crate::num::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Variable table with per-variable power caps (tokens use cap 1 and appear
/// linearly; nilpotent roots carry their truncation order).
#[derive(Debug, Clone)]
pub struct ToyCtx {
    pub vars: Vec<(String, u32)>,
}

impl ToyCtx {
    pub fn new(vars: Vec<(String, u32)>) -> Self {
        ToyCtx { vars }
    }

    pub fn index(&self, name: &str) -> usize {
        self.vars
            .iter()
            .position(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("unknown toy variable `{name}`"))
    }
}

/// Finite z-Laurent polynomial with coefficients in the truncated symbol
/// algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPoly {
    pub terms: BTreeMap<(i64, Vec<u32>), Rat>,
}

impl TPoly {
    pub fn zero(_ctx: &ToyCtx) -> Self {
        TPoly { terms: BTreeMap::new() }
    }

    pub fn one(ctx: &ToyCtx) -> Self {
        TPoly::monomial(ctx, 0, &[], Rat::one())
    }

    pub fn monomial(ctx: &ToyCtx, z: i64, vars: &[(&str, u32)], c: Rat) -> Self {
        let mut exps = vec![0u32; ctx.vars.len()];
        for (name, p) in vars {
            exps[ctx.index(name)] += p;
        }
        let mut t = TPoly { terms: BTreeMap::new() };
        if !c.is_zero() {
            t.terms.insert((z, exps), c);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(Rat::zero);
            *e += c.clone();
            if e.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> TPoly {
        if c.is_zero() {
            return TPoly { terms: BTreeMap::new() };
        }
        TPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn neg(&self) -> TPoly {
        self.scale(&-Rat::one())
    }

    pub fn shift_z(&self, by: i64) -> TPoly {
        TPoly {
            terms: self
                .terms
                .iter()
                .map(|((z, e), c)| ((z + by, e.clone()), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, ctx: &ToyCtx, o: &TPoly) -> TPoly {
        let mut out = TPoly { terms: BTreeMap::new() };
        'outer: for ((za, ea), ca) in &self.terms {
            for ((zb, eb), cb) in &o.terms {
                let mut e = vec![0u32; ea.len()];
                for i in 0..e.len() {
                    e[i] = ea[i] + eb[i];
                    if e[i] > ctx.vars[i].1 {
                        continue 'outer;
                    }
                }
                let m = (za + zb, e);
                let entry = out.terms.entry(m.clone()).or_insert_with(Rat::zero);
                *entry += ca.clone() * cb.clone();
                if entry.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    /// Inverse of a polynomial whose top z-degree term is a nonzero constant;
    /// the geometric tail terminates by nilpotency of the symbols.
    pub fn inv(&self, ctx: &ToyCtx) -> Result<TPoly> {
        let Some(((zmax, lead_exp), lead)) = self.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))
        else {
            return Err(CoreError::Singular("inverting the zero class".into()));
        };
        if lead_exp.iter().any(|&p| p != 0) {
            return Err(CoreError::Singular(
                "leading z-term must be a scalar to invert".into(),
            ));
        }
        let lead_inv = lead.recip();
        // S = c z^k (1 + T) with T of strictly lower z-degree
        let mut t = TPoly { terms: BTreeMap::new() };
        for ((z, e), c) in &self.terms {
            if (*z, e.clone()) == (zmax, lead_exp.clone()) {
                continue;
            }
            t.terms.insert((z - zmax, e.clone()), c.clone() * lead_inv.clone());
        }
        let minus_t = t.neg();
        let mut geo = TPoly::monomial(ctx, 0, &[], Rat::one());
        let mut power = minus_t.clone();
        for _ in 0..200 {
            if power.is_zero() {
                break;
            }
            geo = geo.add(&power);
            power = power.mul(ctx, &minus_t);
        }
        if !power.is_zero() {
            return Err(CoreError::Resource("geometric inverse did not terminate".into()));
        }
        Ok(geo.shift_z(-zmax).scale(&lead_inv))
    }

    /// The full coefficient of z^k, kept at that z-degree.
    pub fn z_coefficient(&self, k: i64) -> TPoly {
        TPoly {
            terms: self
                .terms
                .iter()
                .filter(|((z, _), _)| *z == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn render(&self, ctx: &ToyCtx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((z, e), c) in &self.terms {
            let mut factors = Vec::new();
            let coeff = crate::num::fmt_rat(c);
            if coeff != "1" || (*z == 0 && e.iter().all(|&p| p == 0)) {
                factors.push(coeff);
            }
            if *z != 0 {
                factors.push(format!("z^{z}"));
            }
            for (i, &p) in e.iter().enumerate() {
                if p == 1 {
                    factors.push(ctx.vars[i].0.clone());
                } else if p > 1 {
                    factors.push(format!("{}^{}", ctx.vars[i].0, p));
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

/// A finite combination of the classes p^j = [P^j] with polynomial
/// coefficients.
pub type PSeriesVector = BTreeMap<u32, TPoly>;

/// Cap product with a polynomial in τ: p^i ∩ τ^n = p^{i-n}, vanishing on
/// exponent underflow, so (Σ_j p^j x_j) ∩ Σ_n f_n τ^n has j-th entry
/// Σ_n f_n · x_{j+n}.
pub fn cap_tau(ctx: &ToyCtx, ps: &PSeriesVector, f: &[(u32, TPoly)]) -> PSeriesVector {
    let mut out: PSeriesVector = BTreeMap::new();
    for (j, x) in ps {
        for (n, fc) in f {
            if let Some(src) = j.checked_sub(*n) {
                let add = fc.mul(ctx, x);
                let entry = out.entry(src).or_insert_with(|| TPoly::zero(ctx));
                *entry = entry.add(&add);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// e^{zT} realized as ρ_*(Σ_j z^j p^j ⊠ -): tensors the class with the
/// p-series up to the stated truncation.
pub fn ezt_convolve(ctx: &ToyCtx, x: &TPoly, p_trunc: u32) -> PSeriesVector {
    let mut out: PSeriesVector = BTreeMap::new();
    for j in 0..=p_trunc {
        let v = x.shift_z(j as i64);
        if !v.is_zero() {
            out.insert(j, v);
        }
    }
    let _ = ctx;
    out
}
