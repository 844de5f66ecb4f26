//! Truncated multivariate Laurent series for equivariant Chern classes, the
//! two expansion regimes, localization denominators, and residues.
//!
//! A series is a map from z-exponents to coefficients; a coefficient is an
//! exact rational function in the torus characters tensored with a polynomial
//! in nilpotent Chern-root symbols. The regime flag records which tail was
//! truncated: `Local` expands negative powers of (λ+z) in |z| < |λ| and grows
//! upward in z, `Global` mirrors this in |z| > |λ|.

mod poly;

pub use poly::{MPoly, RatFunc};

use crate::error::{CoreError, Result};
use crate::num::{binomial, Rat};
use num_traits::One;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Local,
    Global,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Local => write!(f, "local"),
            Regime::Global => write!(f, "global"),
        }
    }
}

/// Shared naming and truncation data for a series computation.
#[derive(Debug, Clone)]
pub struct SeriesCtx {
    pub lambdas: Vec<String>,
    pub cherns: Vec<String>,
    pub nil_order: u32,
    pub order: i64,
}

impl SeriesCtx {
    pub fn new(lambdas: &[&str], cherns: &[&str], order: i64) -> Self {
        SeriesCtx {
            lambdas: lambdas.iter().map(|s| s.to_string()).collect(),
            cherns: cherns.iter().map(|s| s.to_string()).collect(),
            nil_order: 8,
            order,
        }
    }

    pub fn lambda_index(&self, name: &str) -> Result<usize> {
        self.lambdas
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| CoreError::Input(format!("unknown character `{name}`")))
    }

    pub fn chern_index(&self, name: &str) -> Result<usize> {
        self.cherns
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| CoreError::Input(format!("unknown Chern-root symbol `{name}`")))
    }
}

/// Character exponents (n_z; n_1..n_k) of e^{n_z z + Σ n_i λ_i}.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightVector {
    pub z: i64,
    pub lambdas: Vec<i64>,
}

impl WeightVector {
    pub fn is_zero(&self) -> bool {
        self.z == 0 && self.lambdas.iter().all(|&x| x == 0)
    }
}

/// A formal integer combination of weighted bundle terms with optional
/// Chern-root symbols (one per line when present).
#[derive(Debug, Clone, Default)]
pub struct EqKClass {
    pub terms: Vec<KTerm>,
}

#[derive(Debug, Clone)]
pub struct KTerm {
    pub mult: i64,
    pub weight: WeightVector,
    pub rank: u32,
    pub roots: Vec<String>,
}

impl KTerm {
    pub fn line(mult: i64, weight: WeightVector, root: Option<&str>) -> Self {
        KTerm { mult, weight, rank: 1, roots: root.map(|r| vec![r.to_string()]).unwrap_or_default() }
    }
}

/// Coefficient of one z-power: nilpotent Chern monomials with rational
/// function coefficients.
pub type Coeff = BTreeMap<Vec<u32>, RatFunc>;

fn coeff_zero() -> Coeff {
    BTreeMap::new()
}

fn coeff_is_zero(c: &Coeff) -> bool {
    c.values().all(|v| v.is_zero())
}

fn coeff_add(ctx: &SeriesCtx, a: &Coeff, b: &Coeff) -> Coeff {
    let _ = ctx;
    let mut out = a.clone();
    for (m, v) in b {
        let e = out.entry(m.clone()).or_insert_with(|| RatFunc::zero(v.num.arity));
        *e = e.add(v);
        if e.is_zero() {
            out.remove(m);
        }
    }
    out
}

fn coeff_mul(ctx: &SeriesCtx, a: &Coeff, b: &Coeff) -> Coeff {
    let mut out = coeff_zero();
    for (ma, va) in a {
        for (mb, vb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            if m.iter().sum::<u32>() > ctx.nil_order {
                continue;
            }
            let v = va.mul(vb);
            if v.is_zero() {
                continue;
            }
            let e = out.entry(m).or_insert_with(|| RatFunc::zero(v.num.arity));
            *e = e.add(&v);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn coeff_neg(c: &Coeff) -> Coeff {
    c.iter().map(|(m, v)| (m.clone(), v.neg())).collect()
}

/// Inverts a coefficient of the form unit + nilpotent.
fn coeff_inv(ctx: &SeriesCtx, c: &Coeff) -> Result<Coeff> {
    let zero_mono = vec![0u32; ctx.cherns.len()];
    let unit = c
        .get(&zero_mono)
        .filter(|u| !u.is_zero())
        .ok_or_else(|| CoreError::Singular("coefficient has no invertible unit part".into()))?
        .clone();
    let unit_inv = unit.inv()?;
    // nil = c - unit; 1/c = u^{-1} Σ (-nil/u)^j
    let mut nil = c.clone();
    nil.remove(&zero_mono);
    let mut out: Coeff = BTreeMap::new();
    out.insert(zero_mono.clone(), unit_inv.clone());
    if coeff_is_zero(&nil) {
        return Ok(out);
    }
    let mut minus_nil_over_u = coeff_neg(&nil);
    for v in minus_nil_over_u.values_mut() {
        *v = v.mul(&unit_inv);
    }
    let mut power = minus_nil_over_u.clone();
    for _ in 0..ctx.nil_order {
        if coeff_is_zero(&power) {
            break;
        }
        let mut term = power.clone();
        for v in term.values_mut() {
            *v = v.mul(&unit_inv);
        }
        out = coeff_add(ctx, &out, &term);
        power = coeff_mul(ctx, &power, &minus_nil_over_u);
    }
    Ok(out)
}

/// A truncated Laurent series in z. `bound` is the reliability horizon of an
/// infinite expansion: in the global regime coefficients below it were
/// truncated away, in the local regime coefficients above it. `None` marks an
/// exact series (a Laurent polynomial). Operations propagate the horizon and
/// purge coefficients beyond it, so every stored coefficient is exact.
#[derive(Debug, Clone)]
pub struct LaurentSeries {
    pub regime: Regime,
    pub order: i64,
    pub bound: Option<i64>,
    pub coeffs: BTreeMap<i64, Coeff>,
}

impl PartialEq for LaurentSeries {
    /// Agreement of all coefficients on the common reliable range.
    fn eq(&self, other: &Self) -> bool {
        if self.regime != other.regime {
            return false;
        }
        let within = |exp: i64| -> bool {
            match (self.regime, self.bound, other.bound) {
                (Regime::Local, a, b) => {
                    exp <= a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX))
                }
                (Regime::Global, a, b) => {
                    exp >= a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))
                }
            }
        };
        let exps: std::collections::BTreeSet<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|e| within(*e))
            .collect();
        exps.iter().all(|e| self.coefficient(*e) == other.coefficient(*e))
    }
}

impl LaurentSeries {
    pub fn zero(ctx: &SeriesCtx, regime: Regime) -> Self {
        LaurentSeries { regime, order: ctx.order, bound: None, coeffs: BTreeMap::new() }
    }

    pub fn one(ctx: &SeriesCtx, regime: Regime) -> Self {
        let mut s = LaurentSeries::zero(ctx, regime);
        s.set(ctx, 0, &[], RatFunc::one(ctx.lambdas.len()));
        s
    }

    pub fn set(&mut self, ctx: &SeriesCtx, exp: i64, nil: &[(usize, u32)], v: RatFunc) {
        let mut mono = vec![0u32; ctx.cherns.len()];
        for (i, p) in nil {
            mono[*i] += p;
        }
        if v.is_zero() || !self.reliable(exp) {
            return;
        }
        let c = self.coeffs.entry(exp).or_insert_with(coeff_zero);
        let e = c.entry(mono.clone()).or_insert_with(|| RatFunc::zero(v.num.arity));
        *e = e.add(&v);
        if e.is_zero() {
            c.remove(&mono);
        }
        if coeff_is_zero(c) {
            self.coeffs.remove(&exp);
        }
    }

    fn reliable(&self, exp: i64) -> bool {
        match (self.regime, self.bound) {
            (_, None) => true,
            (Regime::Local, Some(b)) => exp <= b,
            (Regime::Global, Some(b)) => exp >= b,
        }
    }

    fn purge(&mut self) {
        let (regime, bound) = (self.regime, self.bound);
        self.coeffs.retain(|e, c| {
            !coeff_is_zero(c)
                && match (regime, bound) {
                    (_, None) => true,
                    (Regime::Local, Some(b)) => *e <= b,
                    (Regime::Global, Some(b)) => *e >= b,
                }
        });
    }

    /// The less reliable of two horizons.
    fn join_bounds(&self, a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(match self.regime {
                Regime::Local => x.min(y),
                Regime::Global => x.max(y),
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(coeff_is_zero)
    }

    pub fn coefficient(&self, exp: i64) -> Coeff {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn add(&self, ctx: &SeriesCtx, other: &LaurentSeries) -> Result<LaurentSeries> {
        if self.regime != other.regime {
            return Err(CoreError::Input("cannot add series from different regimes".into()));
        }
        let mut out = self.clone();
        out.bound = self.join_bounds(self.bound, other.bound);
        for (e, c) in &other.coeffs {
            let entry = out.coeffs.entry(*e).or_insert_with(coeff_zero);
            *entry = coeff_add(ctx, entry, c);
        }
        out.purge();
        Ok(out)
    }

    pub fn neg(&self) -> LaurentSeries {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = coeff_neg(c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> LaurentSeries {
        let mut out = self.clone();
        for coeff in out.coeffs.values_mut() {
            for v in coeff.values_mut() {
                *v = v.scale(c);
            }
            coeff.retain(|_, v| !v.is_zero());
        }
        out.coeffs.retain(|_, c| !coeff_is_zero(c));
        out
    }

    fn extreme_exp(&self, toward_tail: bool) -> Option<i64> {
        // the tail direction is up in the local regime, down in the global
        match (self.regime, toward_tail) {
            (Regime::Local, true) | (Regime::Global, false) => {
                self.coeffs.keys().next_back().copied()
            }
            _ => self.coeffs.keys().next().copied(),
        }
    }

    pub fn mul(&self, ctx: &SeriesCtx, other: &LaurentSeries) -> Result<LaurentSeries> {
        if self.regime != other.regime {
            return Err(CoreError::Input("cannot multiply series from different regimes".into()));
        }
        let mut out = LaurentSeries::zero(ctx, self.regime);
        // a truncated tail in one factor pollutes products starting from the
        // other factor's lead coefficient
        let head = |s: &LaurentSeries| s.extreme_exp(false);
        let combine = |b: Option<i64>, h: Option<i64>| -> Option<i64> {
            match (b, h) {
                (Some(b), Some(h)) => Some(b + h),
                _ => None,
            }
        };
        out.bound = self.join_bounds(
            combine(self.bound, head(other)),
            combine(other.bound, head(self)),
        );
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea + eb;
                if !out.reliable(e) {
                    continue;
                }
                let c = coeff_mul(ctx, ca, cb);
                if coeff_is_zero(&c) {
                    continue;
                }
                let entry = out.coeffs.entry(e).or_insert_with(coeff_zero);
                *entry = coeff_add(ctx, entry, &c);
            }
        }
        out.purge();
        Ok(out)
    }

    /// Series inverse. The extreme coefficient against the regime direction
    /// must have an invertible unit part.
    pub fn inv(&self, ctx: &SeriesCtx) -> Result<LaurentSeries> {
        let lead_exp = self
            .extreme_exp(false)
            .ok_or_else(|| CoreError::Singular("inverting the zero series".into()))?;
        let lead = self.coefficient(lead_exp);
        let lead_inv = coeff_inv(ctx, &lead)?;
        let out_bound = Some(match (self.regime, self.bound) {
            (Regime::Local, None) => ctx.order,
            (Regime::Global, None) => -ctx.order,
            (Regime::Local, Some(b)) => (b - 2 * lead_exp).min(ctx.order),
            (Regime::Global, Some(b)) => (b - 2 * lead_exp).max(-ctx.order),
        });
        // S = c z^e (1 + T); 1/S = z^{-e} c^{-1} Σ (-T)^j
        let mut t = LaurentSeries::zero(ctx, self.regime);
        t.bound = self.bound.map(|b| b - lead_exp);
        for (e, c) in &self.coeffs {
            if *e == lead_exp {
                let mut rest = coeff_mul(ctx, c, &lead_inv);
                rest.remove(&vec![0u32; ctx.cherns.len()]);
                if !coeff_is_zero(&rest) {
                    // nilpotent same-exponent part folds into T at offset 0
                    let entry = t.coeffs.entry(0).or_insert_with(coeff_zero);
                    *entry = coeff_add(ctx, entry, &rest);
                }
                continue;
            }
            t.coeffs.insert(e - lead_exp, coeff_mul(ctx, c, &lead_inv));
        }
        // T has offsets strictly in the tail direction, except a nilpotent
        // offset-0 part; its geometric series terminates inside the window
        let window = LaurentSeries {
            regime: self.regime,
            order: ctx.order,
            bound: out_bound.map(|b| b + lead_exp),
            coeffs: BTreeMap::new(),
        };
        let mut geo = LaurentSeries::one(ctx, self.regime);
        geo.bound = window.bound;
        let minus_t = t.neg();
        let mut power = minus_t.clone();
        let span = 2 * ctx.order + 2 * lead_exp.abs() + 2;
        let max_iter = span.max(2) as usize + ctx.nil_order as usize + 2;
        for _ in 0..max_iter {
            if power.is_zero() {
                break;
            }
            geo = geo.add(ctx, &power)?;
            power = power.mul(ctx, &minus_t)?;
            power.bound = window.bound;
            power.purge();
        }
        let mut out = LaurentSeries::zero(ctx, self.regime);
        out.bound = out_bound;
        for (e, c) in &geo.coeffs {
            out.coeffs.insert(e - lead_exp, coeff_mul(ctx, c, &lead_inv));
        }
        out.purge();
        Ok(out)
    }

    /// The coefficient of z^{-1}.
    pub fn residue(&self) -> Coeff {
        self.coefficient(-1)
    }

    pub fn render(&self, ctx: &SeriesCtx) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut lines = Vec::new();
        for (e, c) in &self.coeffs {
            let mut parts = Vec::new();
            for (mono, v) in c {
                let mut factors = vec![format!("({})", v.render(&ctx.lambdas))];
                for (i, &p) in mono.iter().enumerate() {
                    if p == 1 {
                        factors.push(ctx.cherns[i].clone());
                    } else if p > 1 {
                        factors.push(format!("{}^{}", ctx.cherns[i], p));
                    }
                }
                parts.push(factors.join("*"));
            }
            lines.push(format!("z^{e}: {}", parts.join(" + ")));
        }
        lines.join("\n")
    }
}

/// The expansion of (w + z)^{-k} in the requested regime, where `w` is a
/// nonzero integer combination of the characters:
/// locally w^{-k} Σ_i C(k+i-1, k-1) (-z/w)^i, globally the z ↔ w mirror.
pub fn expand_power(
    ctx: &SeriesCtx,
    weight: &[i64],
    k: u32,
    regime: Regime,
) -> Result<LaurentSeries> {
    if k == 0 {
        return Ok(LaurentSeries::one(ctx, regime));
    }
    let arity = ctx.lambdas.len();
    if weight.len() != arity || weight.iter().all(|&x| x == 0) {
        return Err(CoreError::Input("expansion weight must be a nonzero character".into()));
    }
    let mut w = MPoly::zero(arity);
    for (i, &n) in weight.iter().enumerate() {
        if n != 0 {
            w = w.add(&MPoly::var(arity, i).scale(&Rat::from_integer(n.into())));
        }
    }
    let mut out = LaurentSeries::zero(ctx, regime);
    out.bound = Some(match regime {
        Regime::Local => ctx.order,
        Regime::Global => -ctx.order,
    });
    match regime {
        Regime::Local => {
            for i in 0..=ctx.order.max(0) {
                let c = binomial(k as i64 + i - 1, k as i64 - 1)
                    * if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                let mut v = RatFunc::constant(arity, c);
                for _ in 0..(k as i64 + i) {
                    v = v.div_poly(&w)?;
                }
                out.set(ctx, i, &[], v);
            }
        }
        Regime::Global => {
            let mut i = 0i64;
            while -(k as i64) - i >= -ctx.order {
                let c = binomial(k as i64 + i - 1, k as i64 - 1)
                    * if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                let v = RatFunc::from_poly(w.pow(i as u32)).scale(&c);
                out.set(ctx, -(k as i64) - i, &[], v);
                i += 1;
            }
        }
    }
    Ok(out)
}

/// The linear series z + ρ for one line of an equivariant class, where ρ is
/// the full equivariant root n_z·z + Σ n_i λ_i + x.
fn line_plus_z(
    ctx: &SeriesCtx,
    weight: &WeightVector,
    root: Option<&str>,
    z_shift: i64,
    regime: Regime,
) -> Result<LaurentSeries> {
    let arity = ctx.lambdas.len();
    let mut s = LaurentSeries::zero(ctx, regime);
    s.set(ctx, 1, &[], RatFunc::constant(arity, Rat::from_integer((z_shift + weight.z).into())));
    let mut w = MPoly::zero(arity);
    for (i, &n) in weight.lambdas.iter().enumerate() {
        if n != 0 {
            w = w.add(&MPoly::var(arity, i).scale(&Rat::from_integer(n.into())));
        }
    }
    if !w.is_zero() {
        s.set(ctx, 0, &[], RatFunc::from_poly(w));
    }
    if let Some(r) = root {
        let i = ctx.chern_index(r)?;
        s.set(ctx, 0, &[(i, 1)], RatFunc::one(arity));
    }
    Ok(s)
}

/// z^{Rk} c_{z^{-1}}(K) = Π (z + ρ_i): the total equivariant Chern series of
/// a class, with negative multiplicities inverted in the regime.
pub fn total_chern(ctx: &SeriesCtx, class: &EqKClass, regime: Regime) -> Result<LaurentSeries> {
    let mut numer = LaurentSeries::one(ctx, regime);
    let mut denom = LaurentSeries::one(ctx, regime);
    for term in &class.terms {
        if term.mult == 0 || term.rank == 0 {
            continue;
        }
        if !term.roots.is_empty() && term.roots.len() != term.rank as usize {
            return Err(CoreError::Input(format!(
                "term lists {} roots for rank {}",
                term.roots.len(),
                term.rank
            )));
        }
        let mut factor = LaurentSeries::one(ctx, regime);
        if term.roots.is_empty() {
            let line = line_plus_z(ctx, &term.weight, None, 1, regime)?;
            for _ in 0..term.rank {
                factor = factor.mul(ctx, &line)?;
            }
        } else {
            for r in &term.roots {
                factor = factor.mul(ctx, &line_plus_z(ctx, &term.weight, Some(r), 1, regime)?)?;
            }
        }
        for _ in 0..term.mult.unsigned_abs() {
            if term.mult > 0 {
                numer = numer.mul(ctx, &factor)?;
            } else {
                denom = denom.mul(ctx, &factor)?;
            }
        }
    }
    numer.mul(ctx, &denom.inv(ctx)?)
}

/// The equivariant Euler class e_T(K) = Π ρ_i of a class whose lines all
/// carry nonzero weights (the z of the localization variable comes from the
/// weight itself).
pub fn euler_class(ctx: &SeriesCtx, class: &EqKClass, regime: Regime) -> Result<LaurentSeries> {
    let mut out = LaurentSeries::one(ctx, regime);
    for term in &class.terms {
        if term.mult == 0 || term.rank == 0 {
            continue;
        }
        if term.weight.is_zero() {
            return Err(CoreError::Input(
                "invalid normal bundle: a line carries weight zero".into(),
            ));
        }
        if term.mult < 0 {
            return Err(CoreError::Input("Euler class needs effective terms".into()));
        }
        if !term.roots.is_empty() && term.roots.len() != term.rank as usize {
            return Err(CoreError::Input("root count does not match the rank".into()));
        }
        if term.roots.is_empty() {
            let line = line_plus_z(ctx, &term.weight, None, 0, regime)?;
            for _ in 0..(term.rank as i64 * term.mult) {
                out = out.mul(ctx, &line)?;
            }
        } else {
            for r in &term.roots {
                let line = line_plus_z(ctx, &term.weight, Some(r), 0, regime)?;
                for _ in 0..term.mult {
                    out = out.mul(ctx, &line)?;
                }
            }
        }
    }
    Ok(out)
}

/// The localization multiplier 1/e_T(N) of a virtual normal summand: the
/// fixed class is carried by the caller as a formal prefactor.
pub fn localize(ctx: &SeriesCtx, normal: &EqKClass, regime: Regime) -> Result<LaurentSeries> {
    euler_class(ctx, normal, regime)?.inv(ctx)
}

/// Localization against a higher-dimensional torus: the same inverse Euler
/// class, with positivity of the splitting left to the caller's choice of
/// weights (alphabetical order on the characters by default).
pub fn localize_general(
    ctx: &SeriesCtx,
    moving: &EqKClass,
    regime: Regime,
) -> Result<LaurentSeries> {
    localize(ctx, moving, regime)
}

/// Checks the square-root Euler class identity
/// (-1)^{Rk T≤} √e(N^vir) = z^{Rk N≥} c_{z^{-1}}(T≥) c_{z^{-1}}((T≤)*) / c_{z^{-1}}(E≥)
/// with √e(N^vir) = e(T^m)/√e(E^m) and the orientation convention o_{E≥}.
pub fn sqrt_euler_check(
    ctx: &SeriesCtx,
    t_ge: &EqKClass,
    t_le: &EqKClass,
    e_ge: &EqKClass,
    regime: Regime,
) -> Result<bool> {
    let rank_of = |c: &EqKClass| -> i64 {
        c.terms.iter().map(|t| t.mult * t.rank as i64).sum()
    };
    let prod_lines = |class: &EqKClass, z_shift: i64| -> Result<LaurentSeries> {
        let mut out = LaurentSeries::one(ctx, regime);
        for term in &class.terms {
            if term.mult < 0 {
                return Err(CoreError::Input("resolution data must be effective".into()));
            }
            let roots: Vec<Option<&str>> = if term.roots.is_empty() {
                vec![None; term.rank as usize]
            } else {
                term.roots.iter().map(|r| Some(r.as_str())).collect()
            };
            for r in roots {
                let line = line_plus_z(ctx, &term.weight, r, z_shift, regime)?;
                for _ in 0..term.mult {
                    out = out.mul(ctx, &line)?;
                }
            }
        }
        Ok(out)
    };
    // √e(N^vir) = e(t·T≥) e(t^{-1}·T≤) / e(t·E≥)
    let lhs = prod_lines(t_ge, 1)?
        .mul(ctx, &prod_lines(t_le, -1)?)?
        .mul(ctx, &prod_lines(e_ge, 1)?.inv(ctx)?)?;
    let q = rank_of(t_le);
    let lhs = if q % 2 == 0 { lhs } else { lhs.neg() };
    // z^{Rk N≥} c_{z^{-1}}(T≥) c_{z^{-1}}((T≤)*) / c_{z^{-1}}(E≥): the dual
    // flips the sign of every root of T≤
    let dualize = |c: &EqKClass| -> EqKClass {
        EqKClass {
            terms: c
                .terms
                .iter()
                .map(|t| KTerm {
                    mult: t.mult,
                    weight: WeightVector {
                        z: -t.weight.z,
                        lambdas: t.weight.lambdas.iter().map(|x| -x).collect(),
                    },
                    rank: t.rank,
                    roots: t.roots.clone(),
                })
                .collect(),
        }
    };
    let t_le_dual = dualize(t_le);
    let mut rhs = total_chern(ctx, t_ge, regime)?;
    // roots of the dual are negated wholesale, including Chern symbols
    {
        let mut dual_part = LaurentSeries::one(ctx, regime);
        for term in &t_le_dual.terms {
            let roots: Vec<Option<&str>> = if term.roots.is_empty() {
                vec![None; term.rank as usize]
            } else {
                term.roots.iter().map(|r| Some(r.as_str())).collect()
            };
            for r in roots {
                // z - ρ: build z + (dual weight) then subtract the root symbol
                let arity = ctx.lambdas.len();
                let mut line = line_plus_z(ctx, &term.weight, None, 1, regime)?;
                if let Some(rn) = r {
                    let i = ctx.chern_index(rn)?;
                    line.set(ctx, 0, &[(i, 1)], RatFunc::constant(arity, -Rat::one()));
                }
                for _ in 0..term.mult {
                    dual_part = dual_part.mul(ctx, &line)?;
                }
            }
        }
        rhs = rhs.mul(ctx, &dual_part)?;
    }
    rhs = rhs.mul(ctx, &total_chern(ctx, e_ge, regime)?.inv(ctx)?)?;
    Ok(lhs == rhs)
}

/// Assumption on the global regime: the total residue of
/// 1/(z^{Rk} c_{z^{-1}}(Θ^m)) must vanish after expanding in |z| > |λ|.
pub fn global_residue_check(ctx: &SeriesCtx, theta: &EqKClass) -> Result<bool> {
    for term in &theta.terms {
        if term.weight.lambdas.iter().all(|&x| x == 0) {
            return Err(CoreError::Input("Θ^m must carry only nonzero weights".into()));
        }
    }
    let inv = total_chern(ctx, theta, Regime::Global)?.inv(ctx)?;
    Ok(coeff_is_zero(&inv.residue()))
}

#[cfg(test)]
mod tests;
