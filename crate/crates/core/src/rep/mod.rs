//! Representations of completed quivers: Euler forms, deformation complexes,
//! stability phases, cyclicity, and torus-fixed monomial ideals.

mod fixed_points;
mod matrix;

pub use fixed_points::{monomial_fixed_points, order_ideal_counts_oracle, Staircase};
pub use matrix::QMat;

use crate::error::{CoreError, Result};
use crate::num::Rat;
use crate::quiver::{CY4Quiver, Path};
use num_traits::Zero;
use std::collections::BTreeMap;

pub type DimVector = BTreeMap<String, usize>;

/// A degree-0 representation: one matrix per degree-0 edge, of shape
/// d_{head} x d_{tail}.
#[derive(Debug, Clone)]
pub struct Representation {
    pub dims: DimVector,
    pub mats: BTreeMap<String, QMat>,
}

impl Representation {
    pub fn dim(&self, v: &str) -> usize {
        self.dims.get(v).copied().unwrap_or(0)
    }

    pub fn zero(cy: &CY4Quiver, dims: DimVector) -> Self {
        let mut mats = BTreeMap::new();
        for e in cy.quiver().edges().iter().filter(|e| e.degree == 0) {
            let r = dims.get(&e.head).copied().unwrap_or(0);
            let c = dims.get(&e.tail).copied().unwrap_or(0);
            mats.insert(e.name.clone(), QMat::zero(r, c));
        }
        Representation { dims, mats }
    }

    pub fn validate(&self, cy: &CY4Quiver) -> Result<()> {
        for v in self.dims.keys() {
            if !cy.quiver().has_vertex(v) {
                return Err(CoreError::Input(format!("dimension vector names unknown vertex `{v}`")));
            }
        }
        for e in cy.quiver().edges().iter().filter(|e| e.degree == 0) {
            let m = self
                .mats
                .get(&e.name)
                .ok_or_else(|| CoreError::Input(format!("missing matrix for edge `{}`", e.name)))?;
            let (r, c) = (self.dim(&e.head), self.dim(&e.tail));
            if (m.rows, m.cols) != (r, c) {
                return Err(CoreError::Input(format!(
                    "matrix for `{}` has shape {}x{}, expected {r}x{c}",
                    e.name, m.rows, m.cols
                )));
            }
        }
        Ok(())
    }

    fn matrix(&self, edge: &str) -> Result<&QMat> {
        self.mats
            .get(edge)
            .ok_or_else(|| CoreError::Input(format!("missing matrix for edge `{edge}`")))
    }

    /// Product of edge matrices along a degree-0 path.
    #[allow(clippy::needless_range_loop)]
    fn path_matrix(&self, cy: &CY4Quiver, path_tail: &str, word: &[String]) -> Result<QMat> {
        let mut m = QMat::identity(self.dim(path_tail));
        for e in word {
            m = self.matrix(e)?.mul(&m);
        }
        let _ = cy;
        Ok(m)
    }
}

/// Euler form of a CY4-completed quiver:
/// χ(d, e) = Σ_v d_v e_v + Σ_f (-1)^{1+|f|} d_{t(f)} e_{h(f)} over all
/// generators f of the completed quiver.
pub fn euler_form(cy: &CY4Quiver, d: &DimVector, e: &DimVector) -> i64 {
    let dv = |m: &DimVector, v: &str| m.get(v).copied().unwrap_or(0) as i64;
    let mut chi: i64 = cy.quiver().vertices().map(|v| dv(d, v) * dv(e, v)).sum();
    for f in cy.generators() {
        let sign = if (1 + f.degree) % 2 == 0 { 1 } else { -1 };
        chi += sign * dv(d, &f.tail) * dv(e, &f.head);
    }
    chi
}

/// The framed pairing χ_k((d,α),(e,β)) = χ(α,β) - dχ(β(k)) - eχ(α(k)) + 2de.
pub fn chi_k(d: i64, e: i64, chi_alpha_beta: i64, chi_alpha_k: i64, chi_beta_k: i64) -> i64 {
    chi_alpha_beta - d * chi_beta_k - e * chi_alpha_k + 2 * d * e
}

/// The five-term deformation complex of a representation, with exact
/// differentials. Degrees: C^0 holds endomorphisms at the vertices and an
/// edge of degree |f| contributes to C^{1-|f|}.
#[derive(Debug, Clone)]
pub struct ExtComplex {
    pub dims: [usize; 5],
    pub deltas: [QMat; 4],
}

struct Blocks {
    // per graded piece: list of (source vertex, target vertex, edge name)
    layout: [Vec<(String, String, String)>; 5],
}

fn block_layout(cy: &CY4Quiver) -> Blocks {
    let mut layout: [Vec<(String, String, String)>; 5] = Default::default();
    for v in cy.quiver().vertices() {
        layout[0].push((v.clone(), v.clone(), String::new()));
    }
    for e in cy.generators() {
        let i = (1 - e.degree) as usize;
        layout[i].push((e.tail.clone(), e.head.clone(), e.name.clone()));
    }
    Blocks { layout }
}

impl ExtComplex {
    pub fn ext_dims(&self) -> [usize; 5] {
        let ranks: Vec<usize> = self.deltas.iter().map(|d| d.rank()).collect();
        let mut out = [0usize; 5];
        for i in 0..5 {
            let r_in = if i == 0 { 0 } else { ranks[i - 1] };
            let r_out = if i == 4 { 0 } else { ranks[i] };
            out[i] = self.dims[i] - r_in - r_out;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn is_complex(&self) -> bool {
        self.deltas.windows(2).all(|w| {
            if w[0].rows == 0 || w[1].rows == 0 {
                return true;
            }
            w[1].mul(&w[0]).is_zero()
        })
    }
}

/// Assembles the deformation complex of `rep` at a CY4 quiver, reading the
/// component maps off the differential: for d(f) = Σ_a q_a ∘ g ∘ r_a + R_g
/// with q_a, r_a of degree 0, the block from g to f sends
/// M ↦ Σ_a [m^{q_a}]·M·[m^{r_a}], summing over all appearances of g.
pub fn ext_complex(cy: &CY4Quiver, rep: &Representation) -> Result<ExtComplex> {
    rep.validate(cy)?;
    let blocks = block_layout(cy);
    let hom_dim = |src: &str, tgt: &str| rep.dim(tgt) * rep.dim(src);
    let mut dims = [0usize; 5];
    let mut offsets: [Vec<usize>; 5] = Default::default();
    for i in 0..5 {
        let mut off = 0;
        for (s, t, _) in &blocks.layout[i] {
            offsets[i].push(off);
            off += hom_dim(s, t);
        }
        dims[i] = off;
    }

    let mut deltas: Vec<QMat> = (0..4).map(|i| QMat::zero(dims[i + 1], dims[i])).collect();

    // δ0: (A_v) ↦ (A_{h(e)} m^e - m^e A_{t(e)})
    for (bi, (sv, _, _)) in blocks.layout[0].iter().enumerate() {
        let n = rep.dim(sv);
        for a in 0..n {
            for b in 0..n {
                // basis endomorphism E_{ab} at vertex sv
                let col = offsets[0][bi] + a * n + b;
                for (bj, (tail, head, edge)) in blocks.layout[1].iter().enumerate() {
                    let m = rep.matrix(edge)?;
                    let (rh, ct) = (rep.dim(head), rep.dim(tail));
                    let mut img = QMat::zero(rh, ct);
                    if head == sv {
                        // (E_{ab} m)_{uv} = δ_{ua} m_{bv}
                        for v in 0..ct {
                            let val = img[(a, v)].clone() + m[(b, v)].clone();
                            img[(a, v)] = val;
                        }
                    }
                    if tail == sv {
                        // (m E_{ab})_{uv} = m_{ua} δ_{bv}
                        for u in 0..rh {
                            let val = img[(u, b)].clone() - m[(u, a)].clone();
                            img[(u, b)] = val;
                        }
                    }
                    if img.is_zero() {
                        continue;
                    }
                    for u in 0..rh {
                        for v in 0..ct {
                            if !img[(u, v)].is_zero() {
                                let row = offsets[1][bj] + u * ct + v;
                                deltas[0][(row, col)] = img[(u, v)].clone();
                            }
                        }
                    }
                }
            }
        }
    }

    // δi for i >= 1, from the tabulated differential
    for i in 1..4 {
        for (bj, (ftail, fhead, fname)) in blocks.layout[i + 1].iter().enumerate() {
            let d = cy.differential(fname)?;
            for (path, coeff) in d.terms() {
                let Path::Word(word) = path else { continue };
                for (pos, gname) in word.iter().enumerate() {
                    let ge = cy.quiver().edge(gname).unwrap();
                    if ge.degree != -(i as i64 - 1) {
                        continue;
                    }
                    // remaining letters must all be degree 0
                    let clean = word
                        .iter()
                        .enumerate()
                        .all(|(k, e)| k == pos || cy.quiver().edge(e).unwrap().degree == 0);
                    if !clean {
                        continue;
                    }
                    let bi = blocks.layout[i]
                        .iter()
                        .position(|(_, _, n)| n == gname)
                        .expect("edge missing from layout");
                    // r = word[..pos] runs t(f) -> t(g); q = word[pos+1..]
                    // runs h(g) -> h(f)
                    let rmat = rep.path_matrix(cy, ftail, &word[..pos])?;
                    let qmat = rep.path_matrix(cy, &ge.head, &word[pos + 1..])?;
                    let (gs, gt) = (rep.dim(&ge.tail), rep.dim(&ge.head));
                    let (fs, ft) = (rep.dim(ftail), rep.dim(fhead));
                    // M ↦ q·M·r entry-wise: image of basis E_{uv} of Hom(g)
                    for u in 0..gt {
                        for v in 0..gs {
                            let col = offsets[i][bi] + u * gs + v;
                            for a in 0..ft {
                                if qmat[(a, u)].is_zero() {
                                    continue;
                                }
                                for b in 0..fs {
                                    if rmat[(v, b)].is_zero() {
                                        continue;
                                    }
                                    let row = offsets[i + 1][bj] + a * fs + b;
                                    let val = deltas[i][(row, col)].clone()
                                        + coeff.clone() * qmat[(a, u)].clone() * rmat[(v, b)].clone();
                                    deltas[i][(row, col)] = val;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let deltas: [QMat; 4] = deltas.try_into().unwrap();
    Ok(ExtComplex { dims, deltas })
}

/// Totally ordered extended rationals used as stability phases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRat {
    Finite(Rat),
    Infinity,
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use ExtRat::*;
        match (self, other) {
            (Infinity, Infinity) => std::cmp::Ordering::Equal,
            (Infinity, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinity) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

/// Data of a weak stability condition on framed classes (d̲, α):
/// φ = (λ(α) + d̲·μ̄)/rk(α), with φ = ∞ on α = 0.
#[derive(Debug, Clone)]
pub struct StabilityData {
    pub lambda: Vec<Rat>,
    pub mu: Vec<Rat>,
    pub rk: Vec<i64>,
}

impl StabilityData {
    /// Checks the master-space ordering 1 ≫ μ_1 ≫ … ≫ μ_{r-1} > 0 > μ_0 ≫ -1,
    /// with μ listed as (μ_1, ..., μ_{r-1}, μ_0).
    pub fn validate_ms_ordering(&self) -> Result<()> {
        if self.mu.len() < 2 {
            return Err(CoreError::Input("master-space μ needs at least two entries".into()));
        }
        let one = Rat::from_integer(1.into());
        let chain = &self.mu[..self.mu.len() - 1];
        let mu0 = &self.mu[self.mu.len() - 1];
        let mut prev = one.clone();
        for m in chain {
            if !(*m < prev) {
                return Err(CoreError::Input("μ chain must strictly decrease below 1".into()));
            }
            prev = m.clone();
        }
        if !(prev > Rat::zero()) {
            return Err(CoreError::Input("μ_{r-1} must be positive".into()));
        }
        if !(*mu0 < Rat::zero() && *mu0 > -one) {
            return Err(CoreError::Input("μ_0 must lie in (-1, 0)".into()));
        }
        Ok(())
    }

    pub fn phase(&self, d: &[i64], alpha: &[i64]) -> Result<ExtRat> {
        if alpha.iter().all(|&a| a == 0) {
            return Ok(ExtRat::Infinity);
        }
        if alpha.len() != self.lambda.len() || alpha.len() != self.rk.len() {
            return Err(CoreError::Input("class length mismatch".into()));
        }
        if d.len() != self.mu.len() {
            return Err(CoreError::Input("framing dimension length mismatch".into()));
        }
        let rk: i64 = alpha.iter().zip(&self.rk).map(|(a, r)| a * r).sum();
        if rk <= 0 {
            return Err(CoreError::Input(format!("rank {rk} is not positive on a nonzero class")));
        }
        let mut num = Rat::zero();
        for (a, l) in alpha.iter().zip(&self.lambda) {
            num += Rat::from_integer((*a).into()) * l.clone();
        }
        for (x, m) in d.iter().zip(&self.mu) {
            num += Rat::from_integer((*x).into()) * m.clone();
        }
        Ok(ExtRat::Finite(num / Rat::from_integer(rk.into())))
    }
}

/// A representation framed by a single vector: V_∞ = Q with image vector v.
#[derive(Debug, Clone)]
pub struct FramedRep {
    pub n: usize,
    pub xs: [QMat; 4],
    pub v: Vec<Rat>,
}

/// For d_∞ = 1 and t > 0, semistability is the cyclicity of the framing
/// vector: the Krylov closure of v under X_1..X_4 must span V_0.
pub fn is_cyclic(rep: &FramedRep) -> bool {
    let n = rep.n;
    if n == 0 {
        return true;
    }
    // column-echelon basis of the Krylov span
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut queue: Vec<Vec<Rat>> = vec![rep.v.clone()];
    let reduce = |basis: &Vec<Vec<Rat>>, pivots: &Vec<usize>, mut w: Vec<Rat>| -> Option<(usize, Vec<Rat>)> {
        for (b, &p) in basis.iter().zip(pivots.iter()) {
            if !w[p].is_zero() {
                let c = w[p].clone() / b[p].clone();
                for k in 0..w.len() {
                    let v = w[k].clone() - c.clone() * b[k].clone();
                    w[k] = v;
                }
            }
        }
        w.iter().position(|x| !x.is_zero()).map(|p| (p, w))
    };
    while let Some(w) = queue.pop() {
        if let Some((p, w)) = reduce(&basis, &pivots, w) {
            for i in 0..4 {
                let m = &rep.xs[i];
                let img: Vec<Rat> = (0..n)
                    .map(|r| {
                        let mut acc = Rat::zero();
                        for c in 0..n {
                            if !m[(r, c)].is_zero() && !w[c].is_zero() {
                                acc += m[(r, c)].clone() * w[c].clone();
                            }
                        }
                        acc
                    })
                    .collect();
                queue.push(img);
            }
            basis.push(w);
            pivots.push(p);
            if basis.len() == n {
                return true;
            }
        }
    }
    basis.len() == n
}
