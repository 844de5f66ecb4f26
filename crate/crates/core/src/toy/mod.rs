//! A miniature intersection-theory model: projective-bundle Chow rings with
//! pushforward, Segre classes, a splitting-principle oracle, the p-series cap
//! calculus, and the residue computations for the three fixed loci.

mod pseries;

pub use pseries::{cap_tau, ezt_convolve, PSeriesVector, TPoly, ToyCtx};

use crate::error::{CoreError, Result};
use crate::num::{binomial, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Monomial exponents: a power of the relative hyperplane class and powers
/// of the base Chern classes c_1..c_r.
type HMono = (u32, Vec<u32>);

/// Polynomial in h and c_1..c_r over Q, graded by deg h = 1, deg c_i = i,
/// truncated above `top_degree`; kept in normal form with h-degree < r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyClass {
    pub terms: BTreeMap<HMono, Rat>,
}

impl PolyClass {
    pub fn zero() -> Self {
        PolyClass { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The Chow model of P(V) for a rank-r bundle with Chern generators c_i and
/// the relation h^r = -Σ_i h^{r-i} c_i.
#[derive(Debug, Clone)]
pub struct ProjBundleModel {
    pub rank: usize,
    pub top_degree: u32,
}

impl ProjBundleModel {
    pub fn new(rank: usize, top_degree: u32) -> Result<Self> {
        if rank == 0 {
            return Err(CoreError::Input("projective bundle needs positive rank".into()));
        }
        Ok(ProjBundleModel { rank, top_degree })
    }

    fn degree(&self, m: &HMono) -> u32 {
        m.0 + m.1.iter().enumerate().map(|(i, &p)| (i as u32 + 1) * p).sum::<u32>()
    }

    pub fn constant(&self, c: Rat) -> PolyClass {
        let mut p = PolyClass::zero();
        if !c.is_zero() {
            p.terms.insert((0, vec![0; self.rank]), c);
        }
        p
    }

    pub fn one(&self) -> PolyClass {
        self.constant(Rat::one())
    }

    pub fn h_power(&self, k: u32) -> PolyClass {
        let mut p = PolyClass::zero();
        p.terms.insert((k, vec![0; self.rank]), Rat::one());
        self.normalize(p)
    }

    pub fn chern(&self, i: usize) -> PolyClass {
        assert!((1..=self.rank).contains(&i));
        let mut e = vec![0u32; self.rank];
        e[i - 1] = 1;
        let mut p = PolyClass::zero();
        p.terms.insert((0, e), Rat::one());
        p
    }

    fn add_term(&self, p: &mut PolyClass, m: HMono, c: Rat) {
        if c.is_zero() || self.degree(&m) > self.top_degree {
            return;
        }
        let e = p.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            p.terms.remove(&m);
        }
    }

    pub fn add(&self, a: &PolyClass, b: &PolyClass) -> PolyClass {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut out, m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, a: &PolyClass, c: &Rat) -> PolyClass {
        if c.is_zero() {
            return PolyClass::zero();
        }
        PolyClass { terms: a.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect() }
    }

    /// Rewrites every h-power at or above the rank via the bundle relation.
    fn normalize(&self, p: PolyClass) -> PolyClass {
        let r = self.rank as u32;
        let mut out = PolyClass::zero();
        let mut work: Vec<(HMono, Rat)> = p.terms.into_iter().collect();
        while let Some(((hp, ce), c)) = work.pop() {
            if self.degree(&(hp, ce.clone())) > self.top_degree {
                continue;
            }
            if hp < r {
                self.add_term(&mut out, (hp, ce), c);
                continue;
            }
            // h^{hp} = h^{hp-r} · (-Σ_i h^{r-i} c_i)
            for i in 1..=self.rank {
                let mut e = ce.clone();
                e[i - 1] += 1;
                work.push(((hp - r + (r - i as u32), e), -c.clone()));
            }
        }
        out
    }

    pub fn mul(&self, a: &PolyClass, b: &PolyClass) -> PolyClass {
        let mut raw = PolyClass::zero();
        for ((ha, ea), ca) in &a.terms {
            for ((hb, eb), cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let m = (ha + hb, e);
                if self.degree(&m) > self.top_degree {
                    continue;
                }
                let entry = raw.terms.entry(m.clone()).or_insert_with(Rat::zero);
                *entry += ca.clone() * cb.clone();
                if entry.is_zero() {
                    raw.terms.remove(&m);
                }
            }
        }
        self.normalize(raw)
    }

    /// Segre classes by the recursion s(V)·c(V) = 1: s_0 = 1 and
    /// s_j = -Σ_{i≤min(j,r)} c_i s_{j-i}.
    pub fn segre(&self, j: u32) -> PolyClass {
        let mut table: Vec<PolyClass> = vec![self.one()];
        for d in 1..=j {
            let mut s = PolyClass::zero();
            for i in 1..=(d.min(self.rank as u32)) {
                let term = self.mul(&self.chern(i as usize), &table[(d - i) as usize]);
                s = self.add(&s, &self.scale(&term, &-Rat::one()));
            }
            table.push(s);
        }
        table.swap_remove(j as usize)
    }

    /// Pushforward along P(V) -> base: in normal form only the h^{r-1}
    /// component survives, which encodes p_*(h^{r-1+j}) = s_j(V).
    pub fn pushforward(&self, x: &PolyClass) -> PolyClass {
        let r = self.rank as u32;
        let mut out = PolyClass::zero();
        for ((hp, ce), c) in &x.terms {
            if *hp == r - 1 {
                self.add_term(&mut out, (0, ce.clone()), c.clone());
            }
        }
        out
    }

    /// Total Chern class of V ⊗ O(1):
    /// c_j = Σ_k C(r-k, j-k) c_k(V) h^{j-k}.
    pub fn chern_v_twist(&self, j: u32) -> PolyClass {
        let r = self.rank as u32;
        let mut out = PolyClass::zero();
        for k in 0..=j.min(r) {
            let b = binomial((r - k) as i64, (j - k) as i64);
            if b.is_zero() {
                continue;
            }
            let base = if k == 0 { self.one() } else { self.chern(k as usize) };
            let term = self.mul(&base, &self.h_power(j - k));
            out = self.add(&out, &self.scale(&term, &b));
        }
        out
    }

    /// Euler class of the relative tangent bundle T_π = V⊗O(1)/O.
    pub fn euler_relative_tangent(&self) -> PolyClass {
        self.chern_v_twist(self.rank as u32 - 1)
    }
}

/// Splitting-principle oracle: with distinct integer Chern roots t_i the
/// relation factors as Π(h + t_i) = 0 and
/// p_*(h^m) = Σ_k ρ_k^m / Π_{j≠k}(ρ_k - ρ_j) at ρ_k = -t_k.
#[allow(clippy::needless_range_loop)]
pub fn pushforward_numeric_oracle(roots: &[i64], m: u32) -> Result<Rat> {
    let r = roots.len();
    if r == 0 {
        return Err(CoreError::Input("empty root list".into()));
    }
    for i in 0..r {
        for j in i + 1..r {
            if roots[i] == roots[j] {
                return Err(CoreError::Input("oracle needs distinct roots".into()));
            }
        }
    }
    let mut acc = Rat::zero();
    for k in 0..r {
        let rho = Rat::from_integer((-roots[k]).into());
        let mut num = Rat::one();
        for _ in 0..m {
            num *= rho.clone();
        }
        let mut den = Rat::one();
        for j in 0..r {
            if j != k {
                den *= rho.clone() - Rat::from_integer((-roots[j]).into());
            }
        }
        acc += num / den;
    }
    Ok(acc)
}

/// Substitutes integer Chern-class values c_i = e_i(roots) into a class with
/// no h-dependence left after pushforward.
pub fn evaluate_at_roots(model: &ProjBundleModel, x: &PolyClass, roots: &[i64]) -> Rat {
    let r = model.rank;
    // elementary symmetric values
    let mut e = vec![Rat::zero(); r + 1];
    e[0] = Rat::one();
    for &t in roots {
        for i in (1..=r).rev() {
            let v = e[i].clone() + e[i - 1].clone() * Rat::from_integer(t.into());
            e[i] = v;
        }
    }
    let mut acc = Rat::zero();
    for ((hp, ce), c) in &x.terms {
        if *hp != 0 {
            continue;
        }
        let mut v = c.clone();
        for (i, &p) in ce.iter().enumerate() {
            for _ in 0..p {
                v *= e[i + 1].clone();
            }
        }
        acc += v;
    }
    acc
}

/// The three-step pushdown manipulation evaluated in the toy model. Route A
/// pushes the Euler class of the relative tangent bundle through the
/// projective-bundle model; route B runs the series form
/// [z^{-1}]{e^{zT}(v · d/dz(z^r c_{z^{-1}}(V)) / (z^r c_{z^{-1}}(V)))} in the
/// p-series calculus with nilpotent Chern classes. Both must give
/// (-1)^{a·r} r·v with a even.
pub fn bracket_pushdown_check(r: usize, a: i64) -> Result<bool> {
    if a % 2 != 0 {
        return Err(CoreError::Input("virtual degrees are even".into()));
    }
    // route A: p_*(e(T_π)) = r in the Chow model
    let model = ProjBundleModel::new(r, (r + 2) as u32)?;
    let pushed = model.pushforward(&model.euler_relative_tangent());
    if pushed != model.constant(Rat::from_integer((r as i64).into())) {
        return Ok(false);
    }

    // route B: the Chern classes are nilpotent symbols c1..cr and v a token
    let mut vars: Vec<(String, u32)> = (1..=r).map(|i| (format!("c{i}"), r as u32 + 2)).collect();
    vars.push(("v".to_string(), 1));
    let ctx = ToyCtx::new(vars);
    let z_pow = |k: i64| TPoly::monomial(&ctx, k, &[], Rat::one());
    // D(z) = z^r + c1 z^{r-1} + ... + cr, N(z) = D'(z)
    let mut dpoly = z_pow(r as i64);
    let mut npoly = dpoly.scale(&Rat::from_integer((r as i64).into())).shift_z(-1);
    for i in 1..=r {
        let ci = TPoly::monomial(&ctx, (r - i) as i64, &[(&format!("c{i}"), 1)], Rat::one());
        dpoly = dpoly.add(&ci);
        if r > i {
            npoly = npoly.add(
                &ci.shift_z(-1).scale(&Rat::from_integer(((r - i) as i64).into())),
            );
        }
    }
    let s = npoly.mul(&ctx, &dpoly.inv(&ctx)?);
    let v = TPoly::monomial(&ctx, 0, &[("v", 1)], Rat::one());
    let x = v.mul(&ctx, &s);
    let ps = ezt_convolve(&ctx, &x, 4);
    // the quotient by translations keeps only the p^0 slot; its residue must
    // be r·v, and the sign (-1)^{a·r} is trivial for even a
    let Some(p0) = ps.get(&0) else { return Ok(false) };
    let residue = p0.z_coefficient(-1);
    let expect = TPoly::monomial(&ctx, -1, &[("v", 1)], Rat::from_integer((r as i64).into()));
    Ok(residue == expect.z_coefficient(-1))
}

/// Input data for one fixed locus of the master-space localization.
#[derive(Debug, Clone)]
pub struct LocusData {
    /// coefficient of the opaque class token carried by the locus
    pub coeff: Rat,
    /// nilpotent roots of the rank-one (or higher) normal contributions
    pub roots: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct FlagResidueReport {
    pub locus1: TPoly,
    pub locus2: TPoly,
    pub locus3: TPoly,
    pub total: TPoly,
    pub cancels: bool,
}

/// Evaluates the three residue contributions of the master-space fixed loci:
/// the e_{-1} = 0 locus with sign +, the e_0 = 0 locus with sign -, and the
/// direct-sum locus through the e^{zT} convolution, then sums them. Tokens:
/// `A` for locus 1, `B` for locus 2, `v` for the product class of locus 3.
pub fn fixed_locus_residues(
    locus1: &LocusData,
    locus2: &LocusData,
    locus3: &LocusData,
    epsilon: i64,
) -> Result<FlagResidueReport> {
    let mut vars: Vec<(String, u32)> = Vec::new();
    for (i, l) in [locus1, locus2, locus3].iter().enumerate() {
        for r in &l.roots {
            vars.push((r.clone(), 6));
        }
        let _ = i;
    }
    vars.push(("A".into(), 1));
    vars.push(("B".into(), 1));
    vars.push(("v".into(), 1));
    vars.sort();
    vars.dedup();
    let ctx = ToyCtx::new(vars);

    let denominator = |roots: &[String]| -> Result<TPoly> {
        let mut d = TPoly::one(&ctx);
        for root in roots {
            let line = TPoly::monomial(&ctx, 1, &[], Rat::one())
                .add(&TPoly::monomial(&ctx, 0, &[(root.as_str(), 1)], Rat::one()));
            d = d.mul(&ctx, &line);
        }
        Ok(d)
    };

    // locus 1: +[z^{-1}]{A / (z (1 + z^{-1} Θ_1))}
    let t1 = TPoly::monomial(&ctx, 0, &[("A", 1)], locus1.coeff.clone())
        .mul(&ctx, &denominator(&locus1.roots)?.inv(&ctx)?);
    let res1 = t1.z_coefficient(-1).shift_z(1);

    // locus 2: the orientation mismatch contributes the overall minus
    let t2 = TPoly::monomial(&ctx, 0, &[("B", 1)], -locus2.coeff.clone())
        .mul(&ctx, &denominator(&locus2.roots)?.inv(&ctx)?);
    let res2 = t2.z_coefficient(-1).shift_z(1);

    // locus 3: ε · [z^{-1}]{(e^{zT} ⊗ id)(v / (z^{Rk} c_{z^{-1}}(Θ)))},
    // keeping the p^0 slot of the convolution
    let t3 = TPoly::monomial(&ctx, 0, &[("v", 1)], locus3.coeff.clone())
        .mul(&ctx, &denominator(&locus3.roots)?.inv(&ctx)?)
        .scale(&Rat::from_integer(epsilon.into()));
    let ps = ezt_convolve(&ctx, &t3, 4);
    let res3 = ps
        .get(&0)
        .map(|p| p.z_coefficient(-1).shift_z(1))
        .unwrap_or_else(|| TPoly::zero(&ctx));

    let total = res1.add(&res2).add(&res3);
    Ok(FlagResidueReport { cancels: total.is_zero(), locus1: res1, locus2: res2, locus3: res3, total })
}

#[cfg(test)]
mod tests;
