//! The formal wall-crossing calculus: ε-sign systems, Joyce–Song pair
//! formulas and their inversion, the projective-bundle collapse transform,
//! exp-of-adjoint series, and the flag wall-crossing combinatorics.

mod lie;

pub use lie::{AssocPoly, LieExpr, Word};

use crate::error::{CoreError, Result};
use crate::num::{binomial, factorial, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

/// One effective class: an integer vector with its framed Euler number
/// χ(α(k)) > 0 and a phase. The Lie generator attached to the class is named
/// `gen`.
#[derive(Debug, Clone)]
pub struct ClassInfo {
    pub name: String,
    pub vector: Vec<i64>,
    pub chi_k: i64,
    pub phase: Rat,
}

impl ClassInfo {
    pub fn gen_name(&self) -> String {
        format!("X_{}", self.name)
    }
}

/// The class lattice data consumed by the wall-crossing formulas. The rank
/// functional must be strictly positive on every listed class so that the
/// decomposition sums are finite and the inversion recursion is well-founded.
#[derive(Debug, Clone)]
pub struct ClassTable {
    pub dim: usize,
    pub rk_weights: Vec<i64>,
    pub classes: Vec<ClassInfo>,
}

pub const POINT_CLASS: &str = "P";

impl ClassTable {
    pub fn validate(&self) -> Result<()> {
        if self.rk_weights.len() != self.dim {
            return Err(CoreError::Input("rank functional has the wrong arity".into()));
        }
        for c in &self.classes {
            if c.vector.len() != self.dim {
                return Err(CoreError::Input(format!("class `{}` has the wrong arity", c.name)));
            }
            if self.rk(&c.vector) <= 0 {
                return Err(CoreError::Resource(format!(
                    "class `{}` has non-positive rank; decompositions would not terminate",
                    c.name
                )));
            }
            if c.chi_k <= 0 {
                return Err(CoreError::Input(format!(
                    "class `{}` must have positive framed Euler number",
                    c.name
                )));
            }
        }
        Ok(())
    }

    pub fn rk(&self, v: &[i64]) -> i64 {
        v.iter().zip(&self.rk_weights).map(|(a, w)| a * w).sum()
    }

    pub fn by_vector(&self, v: &[i64]) -> Option<&ClassInfo> {
        self.classes.iter().find(|c| c.vector == v)
    }

    pub fn by_name(&self, name: &str) -> Option<&ClassInfo> {
        self.classes.iter().find(|c| c.name == name)
    }

    pub fn by_gen(&self, gen: &str) -> Option<&ClassInfo> {
        self.classes.iter().find(|c| c.gen_name() == gen)
    }

    fn phase_of(&self, alpha: &[i64]) -> Result<Rat> {
        self.by_vector(alpha)
            .map(|c| c.phase.clone())
            .ok_or_else(|| CoreError::Input("target class is not listed in the table".into()))
    }

    /// Ordered tuples of same-phase classes summing to `alpha`.
    fn tuples(&self, alpha: &[i64], phase: &Rat, min_len: usize) -> Result<Vec<Vec<usize>>> {
        let candidates: Vec<usize> = (0..self.classes.len())
            .filter(|&i| self.classes[i].phase == *phase)
            .collect();
        let budget = self.rk(alpha);
        if alpha.iter().all(|&x| x == 0) {
            return Ok(if min_len == 0 { vec![vec![]] } else { vec![] });
        }
        if budget <= 0 {
            return Err(CoreError::Input("target class has non-positive rank".into()));
        }
        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        fn rec(
            table: &ClassTable,
            cands: &[usize],
            rem: Vec<i64>,
            rem_rk: i64,
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            min_len: usize,
        ) {
            if rem.iter().all(|&x| x == 0) && rem_rk == 0 {
                if stack.len() >= min_len {
                    out.push(stack.clone());
                }
                return;
            }
            for &i in cands {
                let c = &table.classes[i];
                let rk = table.rk(&c.vector);
                if rk > rem_rk {
                    continue;
                }
                let next: Vec<i64> = rem.iter().zip(&c.vector).map(|(a, b)| a - b).collect();
                stack.push(i);
                rec(table, cands, next, rem_rk - rk, stack, out, min_len);
                stack.pop();
            }
        }
        rec(self, &candidates, alpha.to_vec(), budget, &mut stack, &mut out, min_len);
        Ok(out)
    }
}

/// A ±1 system from a mod-2 bilinear form on the class lattice.
#[derive(Debug, Clone)]
pub struct EpsilonSystem {
    pub b: Vec<Vec<u8>>,
}

impl EpsilonSystem {
    /// The upper-triangular form b with b(α,β) + b(β,α) ≡ χ(α,β) mod 2,
    /// built from a symmetric Euler matrix with even diagonal.
    pub fn from_symmetric_euler(chi: &[Vec<i64>]) -> Result<Self> {
        let n = chi.len();
        let mut b = vec![vec![0u8; n]; n];
        for i in 0..n {
            if chi[i].len() != n {
                return Err(CoreError::Input("Euler matrix is not square".into()));
            }
            if chi[i][i] % 2 != 0 {
                return Err(CoreError::Input("Euler matrix must have even diagonal".into()));
            }
            b[i][i] = ((chi[i][i] / 2) % 2).unsigned_abs() as u8;
            for j in i + 1..n {
                if chi[i][j] != chi[j][i] {
                    return Err(CoreError::Input("Euler matrix must be symmetric".into()));
                }
                b[i][j] = (chi[i][j] % 2).unsigned_abs() as u8;
            }
        }
        Ok(EpsilonSystem { b })
    }

    fn bilinear(&self, a: &[i64], c: &[i64]) -> i64 {
        let mut acc = 0i64;
        for (i, row) in self.b.iter().enumerate() {
            for (j, &bij) in row.iter().enumerate() {
                acc += a[i] * c[j] * bij as i64;
            }
        }
        acc.rem_euclid(2)
    }

    pub fn epsilon(&self, a: &[i64], c: &[i64]) -> i64 {
        if self.bilinear(a, c) == 0 {
            1
        } else {
            -1
        }
    }

    /// ε_{α,0} = ε_{0,α} = 1 and ε_{α,β}ε_{α+β,γ} = ε_{β,γ}ε_{α,β+γ}.
    pub fn cocycle_holds(&self, a: &[i64], c: &[i64], g: &[i64]) -> bool {
        let zero = vec![0i64; a.len()];
        if self.epsilon(a, &zero) != 1 || self.epsilon(&zero, a) != 1 {
            return false;
        }
        let ab: Vec<i64> = a.iter().zip(c).map(|(x, y)| x + y).collect();
        let bg: Vec<i64> = c.iter().zip(g).map(|(x, y)| x + y).collect();
        self.epsilon(a, c) * self.epsilon(&ab, g) == self.epsilon(c, g) * self.epsilon(a, &bg)
    }

    /// ε_{α,β} = (-1)^{χ(α,β)} ε_{β,α} for the Euler matrix it was built from.
    pub fn symsign_holds(&self, chi: &[Vec<i64>], a: &[i64], c: &[i64]) -> bool {
        let mut pairing = 0i64;
        for i in 0..chi.len() {
            for j in 0..chi.len() {
                pairing += a[i] * c[j] * chi[i][j];
            }
        }
        let sign = if pairing.rem_euclid(2) == 0 { 1 } else { -1 };
        self.epsilon(a, c) == sign * self.epsilon(c, a)
    }
}

fn nested_on(values: &[LieExpr], base: &LieExpr) -> LieExpr {
    let mut acc = base.clone();
    for v in values {
        acc = v.bracket(&acc);
    }
    acc
}

/// The Joyce–Song right-hand side: Σ over ordered same-phase tuples
/// (α_1..α_n) summing to α of (1/n!)[v(α_n), …, [v(α_1), P]…]. The empty
/// class returns the point generator itself.
pub fn js_rhs(
    table: &ClassTable,
    alpha: &[i64],
    values: &BTreeMap<String, LieExpr>,
) -> Result<LieExpr> {
    table.validate()?;
    if alpha.iter().all(|&x| x == 0) {
        return Ok(LieExpr::gen(POINT_CLASS));
    }
    let phase = table.phase_of(alpha)?;
    let mut out = LieExpr::zero();
    for tuple in table.tuples(alpha, &phase, 1)? {
        let vs: Vec<LieExpr> = tuple
            .iter()
            .map(|&i| {
                let c = &table.classes[i];
                values
                    .get(&c.name)
                    .cloned()
                    .ok_or_else(|| CoreError::Input(format!("no value supplied for `{}`", c.name)))
            })
            .collect::<Result<_>>()?;
        let term = nested_on(&vs, &LieExpr::gen(POINT_CLASS));
        out = out.add(&term.scale(&factorial(tuple.len() as u64).recip()));
    }
    Ok(out)
}

/// Pushforward along the Joyce–Song projective bundle: on right-nested words
/// the innermost [X_{α_1}, P] collapses to χ(α_1(k))·X_{α_1}, and the bare
/// point class maps to zero. Input monomials must carry exactly one P.
pub fn omega_transform(table: &ClassTable, e: &LieExpr) -> Result<LieExpr> {
    // group the Lyndon terms by letter multiset
    let mut groups: BTreeMap<Vec<String>, LieExpr> = BTreeMap::new();
    for (w, c) in &e.terms {
        let mut key = w.clone();
        key.sort();
        let entry = groups.entry(key).or_default();
        let g = entry.terms.entry(w.clone()).or_insert_with(Rat::zero);
        *g += c.clone();
    }
    let mut out = LieExpr::zero();
    for (key, component) in groups {
        let p_count = key.iter().filter(|l| *l == POINT_CLASS).count();
        if p_count != 1 {
            return Err(CoreError::Structural(
                "transform input must be linear in the point class".into(),
            ));
        }
        let letters: Vec<String> = key.into_iter().filter(|l| l != POINT_CLASS).collect();
        if letters.is_empty() {
            // bare P pushes to the vacuum
            continue;
        }
        for l in &letters {
            if table.by_gen(l).is_none() {
                return Err(CoreError::Input(format!("letter `{l}` is not a class generator")));
            }
        }
        // solve for a right-nested presentation of the component
        let perms = distinct_permutations(&letters);
        let nested_exprs: Vec<LieExpr> = perms
            .iter()
            .map(|p| {
                // p lists the letters innermost first
                let vs: Vec<LieExpr> = p.iter().map(|l| LieExpr::gen(l)).collect();
                nested_on(&vs, &LieExpr::gen(POINT_CLASS))
            })
            .collect();
        let coeffs = solve_combination(&nested_exprs, &component).ok_or_else(|| {
            CoreError::Structural("component is not a combination of nested words".into())
        })?;
        for (perm, c) in perms.iter().zip(&coeffs) {
            if c.is_zero() {
                continue;
            }
            let inner = &perm[0];
            let chi = table.by_gen(inner).unwrap().chi_k;
            let collapsed = if perm.len() == 1 {
                LieExpr::gen(inner)
            } else {
                let vs: Vec<LieExpr> = perm[1..].iter().map(|l| LieExpr::gen(l)).collect();
                nested_on(&vs, &LieExpr::gen(inner))
            };
            out = out.add(&collapsed.scale(&(c.clone() * Rat::from_integer(chi.into()))));
        }
    }
    Ok(out)
}

fn distinct_permutations(letters: &[String]) -> Vec<Vec<String>> {
    let mut sorted = letters.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    permute(&mut sorted, 0, &mut out);
    out.sort();
    out.dedup();
    out
}

fn permute(arr: &mut Vec<String>, k: usize, out: &mut Vec<Vec<String>>) {
    if k == arr.len() {
        out.push(arr.clone());
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, out);
        arr.swap(k, i);
    }
}

/// Solves Σ c_i basis_i = target exactly over the Lyndon coordinates.
#[allow(clippy::needless_range_loop)]
fn solve_combination(basis: &[LieExpr], target: &LieExpr) -> Option<Vec<Rat>> {
    let mut words: Vec<Word> = Vec::new();
    for b in basis.iter().chain(std::iter::once(target)) {
        for w in b.terms.keys() {
            if !words.contains(w) {
                words.push(w.clone());
            }
        }
    }
    words.sort();
    let rows = words.len();
    let cols = basis.len();
    // augmented matrix
    let mut m: Vec<Vec<Rat>> = vec![vec![Rat::zero(); cols + 1]; rows];
    for (r, w) in words.iter().enumerate() {
        for (c, b) in basis.iter().enumerate() {
            if let Some(v) = b.terms.get(w) {
                m[r][c] = v.clone();
            }
        }
        if let Some(v) = target.terms.get(w) {
            m[r][cols] = v.clone();
        }
    }
    // Gaussian elimination
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].clone().recip();
        for x in m[row].iter_mut() {
            *x *= inv.clone();
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c2 in 0..=cols {
                    let v = m[r][c2].clone() - f.clone() * m[row][c2].clone();
                    m[r][c2] = v;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    // inconsistent?
    for r in row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); cols];
    for (r, &c) in pivot_cols.iter().enumerate() {
        sol[c] = m[r][cols].clone();
    }
    Some(sol)
}

/// Inverts the Joyce–Song relation: expresses ⟨M_α⟩ in the Ω-generators by
/// induction on the rank,
/// ⟨M_α⟩ = Ω_α - (1/χ(α(k))) Σ_{n≥2} (χ(α_1(k))/n!) [⟨M_{α_n}⟩,…,[⟨M_{α_2}⟩,⟨M_{α_1}⟩]…].
pub fn invert_js(
    table: &ClassTable,
    alpha: &[i64],
    omegas: &BTreeMap<String, LieExpr>,
) -> Result<LieExpr> {
    table.validate()?;
    let mut memo: BTreeMap<Vec<i64>, LieExpr> = BTreeMap::new();
    invert_js_memo(table, alpha, omegas, &mut memo)
}

fn invert_js_memo(
    table: &ClassTable,
    alpha: &[i64],
    omegas: &BTreeMap<String, LieExpr>,
    memo: &mut BTreeMap<Vec<i64>, LieExpr>,
) -> Result<LieExpr> {
    if let Some(v) = memo.get(alpha) {
        return Ok(v.clone());
    }
    let info = table
        .by_vector(alpha)
        .ok_or_else(|| CoreError::Input("inversion target is not a listed class".into()))?;
    let omega = omegas
        .get(&info.name)
        .cloned()
        .ok_or_else(|| CoreError::Input(format!("no Ω value supplied for `{}`", info.name)))?;
    let mut out = omega;
    for tuple in table.tuples(alpha, &info.phase.clone(), 2)? {
        let parts: Vec<LieExpr> = tuple
            .iter()
            .map(|&i| {
                let v = table.classes[i].vector.clone();
                invert_js_memo(table, &v, omegas, memo)
            })
            .collect::<Result<_>>()?;
        let inner_chi = table.classes[tuple[0]].chi_k;
        let term = nested_on(&parts[1..], &parts[0]);
        let coeff = Rat::from_integer(inner_chi.into())
            / (factorial(tuple.len() as u64) * Rat::from_integer(info.chi_k.into()));
        out = out.add(&term.scale(&-coeff));
    }
    memo.insert(alpha.to_vec(), out.clone());
    Ok(out)
}

/// q-series with Lie-element coefficients, truncated at `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub order: u32,
    pub coeffs: BTreeMap<u32, LieExpr>,
}

impl QSeries {
    pub fn new(order: u32) -> Self {
        QSeries { order, coeffs: BTreeMap::new() }
    }

    pub fn set(&mut self, n: u32, e: LieExpr) {
        if n <= self.order && !e.is_zero() {
            self.coeffs.insert(n, e);
        }
    }

    pub fn coefficient(&self, n: u32) -> LieExpr {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|e| e.is_zero())
    }

    fn add(&self, o: &QSeries) -> QSeries {
        let mut out = self.clone();
        for (n, e) in &o.coeffs {
            let v = out.coefficient(*n).add(e);
            if v.is_zero() {
                out.coeffs.remove(n);
            } else {
                out.coeffs.insert(*n, v);
            }
        }
        out
    }

    fn scale(&self, c: &Rat) -> QSeries {
        let mut out = QSeries::new(self.order);
        for (n, e) in &self.coeffs {
            out.set(*n, e.scale(c));
        }
        out
    }

    /// Coefficientwise adjoint action [g, -] with q-degree bookkeeping.
    fn adjoint(&self, g: &QSeries) -> QSeries {
        let mut out = QSeries::new(self.order);
        for (n, ge) in &g.coeffs {
            if *n == 0 {
                continue;
            }
            for (m, te) in &self.coeffs {
                let k = n + m;
                if k > self.order {
                    continue;
                }
                let v = out.coefficient(k).add(&ge.bracket(te));
                if v.is_zero() {
                    out.coeffs.remove(&k);
                } else {
                    out.coeffs.insert(k, v);
                }
            }
        }
        out
    }
}

/// exp{Σ_n [G_n, -] q^n} applied to a q-series, exactly through the
/// truncation order.
pub fn exp_adjoint(gens: &QSeries, t: &QSeries) -> Result<QSeries> {
    if gens.coeffs.contains_key(&0) {
        return Err(CoreError::Input("generator series must start at q^1".into()));
    }
    let order = t.order;
    let mut out = t.clone();
    let mut power = t.clone();
    for k in 1..=order as u64 {
        power = power.adjoint(gens);
        if power.is_zero() {
            break;
        }
        out = out.add(&power.scale(&factorial(k).recip()));
    }
    let _ = order;
    Ok(out)
}

/// The inverse wall-crossing: conjugating by the negated generator series.
pub fn wc_invert(gens: &QSeries, t: &QSeries) -> Result<QSeries> {
    let neg = QSeries {
        order: gens.order,
        coeffs: gens.coeffs.iter().map(|(n, e)| (*n, e.neg())).collect(),
    };
    exp_adjoint(&neg, t)
}

/// The flag wall-crossing difference: Σ_j C(χ(α(k)), χ(α_1^j(k)))^{-1}
/// [Ω_1^j, Ω_2^j], requiring χ additivity in every term.
pub fn flag_wc_rhs(
    chi_total: i64,
    items: &[(i64, LieExpr, i64, LieExpr)],
) -> Result<LieExpr> {
    let mut out = LieExpr::zero();
    for (chi1, o1, chi2, o2) in items {
        if chi1 + chi2 != chi_total {
            return Err(CoreError::Input(format!(
                "framed Euler numbers {chi1} + {chi2} do not sum to {chi_total}"
            )));
        }
        let weight = binomial(chi_total, *chi1);
        if weight.is_zero() {
            return Err(CoreError::Input("degenerate binomial weight".into()));
        }
        out = out.add(&o1.bracket(o2).scale(&weight.recip()));
    }
    Ok(out)
}
