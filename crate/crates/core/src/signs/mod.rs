//! The Z-graded determinant-line calculus: formal line words, the generating
//! isomorphisms, and exact scalar evaluation of composites in Q(i).
//!
//! Every line is the determinant of a formal bundle symbol. Canonical bases:
//! det(V) carries e_1∧…∧e_r, its dual line carries the dual functional, and
//! det(V*) carries e*_1∧…∧e*_r. Dualizing preserves the Z-degree, so the
//! pairing of a degree-r line with its dual lands in the degree-2r trivial
//! line. All generator scalars below are relative to these bases; in
//! particular d_V : det(V*) -> det(V)* carries (-1)^{r(r-1)/2}.

mod orient;

pub use orient::{
    double_dual_discrepancy, einduced_orientation_check, induced_orientation,
    orientation_dual_ratio, orientation_product, ot_comparison, verify_pentagon, OrientationObj,
};

use crate::error::{CoreError, Result};
use crate::num::Gaussian;

/// A formal bundle symbol with a definite rank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sym {
    Atom(String, u32),
    Dual(Box<Sym>),
    Sum(Vec<Sym>),
    Trivial(u32),
}

impl Sym {
    pub fn atom(name: &str, rank: u32) -> Sym {
        Sym::Atom(name.to_string(), rank)
    }

    pub fn dual(self) -> Sym {
        Sym::Dual(Box::new(self))
    }

    pub fn rank(&self) -> u32 {
        match self {
            Sym::Atom(_, r) | Sym::Trivial(r) => *r,
            Sym::Dual(s) => s.rank(),
            Sym::Sum(list) => list.iter().map(|s| s.rank()).sum(),
        }
    }
}

/// One tensor factor of a line word: det(sym) with `line_dual` dual functors
/// applied to the line itself (0, 1, or 2).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Prim {
    pub sym: Sym,
    pub line_dual: u8,
}

impl Prim {
    pub fn plain(sym: Sym) -> Prim {
        Prim { sym, line_dual: 0 }
    }

    pub fn dual_line(sym: Sym) -> Prim {
        Prim { sym, line_dual: 1 }
    }

    /// Degree of the graded line (dualizing preserves it).
    pub fn degree(&self) -> i64 {
        self.sym.rank() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LineWord {
    pub prims: Vec<Prim>,
}

impl LineWord {
    pub fn new(prims: Vec<Prim>) -> Self {
        LineWord { prims }
    }

    pub fn degree(&self) -> i64 {
        self.prims.iter().map(|p| p.degree()).sum()
    }

    /// The word of dual lines in reversed order, as produced by δ.
    pub fn dual_reversed(&self) -> Result<LineWord> {
        let mut prims = Vec::new();
        for p in self.prims.iter().rev() {
            if p.line_dual >= 2 {
                return Err(CoreError::Structural("cannot dualize a double-dual line".into()));
            }
            prims.push(Prim { sym: p.sym.clone(), line_dual: p.line_dual + 1 });
        }
        Ok(LineWord::new(prims))
    }
}

/// Generating isomorphisms of the determinant-line category, each applied at
/// a position of the current word.
#[derive(Debug, Clone)]
pub enum Gen {
    /// σ: swap the lines at positions i, i+1 with the Koszul sign.
    Swap(usize),
    /// p_L: collapse (L, L*) at i into the trivial line of degree 2|L|.
    Pair(usize),
    /// p_L^{-1}: expand a trivial line at i into the word W ++ dual(W).
    Unpair(usize, LineWord),
    /// ◊: drop a double line-dual at i.
    DoubleDual(usize),
    /// ◊^{-1}: introduce a double line-dual at i.
    DoubleDualInv(usize),
    /// d_V at i: det(V*) -> det(V)*, scalar (-1)^{r(r-1)/2}.
    DetDual(usize),
    /// d_V^{-1} at i: det(V)* -> det(V*).
    DetDualInv(usize),
    /// Dual(Dual(X)) -> X at the symbol level (canonical, scalar 1).
    SymDoubleDual(usize),
    /// X -> Dual(Dual(X)) at the symbol level.
    SymDoubleDualInv(usize),
    /// Dual(Sum(..)) -> Sum(Dual(..)) keeping the order (scalar 1).
    DualSumNorm(usize),
    DualSumNormInv(usize),
    /// ε: split det(Sum(list)) at i into the list in order (scalar 1).
    SplitSum(usize),
    /// ε^{-1}: merge `len` plain primitives at i into their Sum.
    MergeSum(usize, usize),
    /// δ∘ε*: split det(Sum(list))* at i into the reversed dual lines.
    DeltaSplit(usize),
    /// Its inverse: merge `len` dual lines at i into det(Sum(reversed))*.
    DeltaMerge(usize, usize),
    /// Canonical identification of a trivial line with its dual,
    /// scalar (-1)^{r(r-1)/2}: direction (C_r)* -> C_r.
    CanonTrivial(usize),
    CanonTrivialInv(usize),
    /// Merge two adjacent trivial lines (multiplication, scalar 1).
    MulTrivial(usize),
    /// Split a trivial line at i into degrees (a, rest).
    SplitTrivial(usize, u32),
    /// det(i_q) of the hyperbolic form on Sum([X, Dual X]):
    /// det(E) -> det(Dual E), scalar (-1)^{rk X}.
    DetIqHyperbolic(usize),
}

fn half_shuffle_sign(r: u32) -> Gaussian {
    // (-1)^{r(r-1)/2}
    let r = r as i64;
    Gaussian::sign(if (r * (r - 1) / 2) % 2 == 0 { 1 } else { -1 })
}

fn koszul(a: i64, b: i64) -> Gaussian {
    Gaussian::sign(if (a * b) % 2 == 0 { 1 } else { -1 })
}

/// Applies one generator, returning the scalar relating canonical bases.
pub fn apply(word: &LineWord, gen: &Gen) -> Result<(LineWord, Gaussian)> {
    let mut w = word.clone();
    let at = |i: usize| -> Result<&Prim> {
        word.prims
            .get(i)
            .ok_or_else(|| CoreError::Structural(format!("no line at position {i}")))
    };
    match gen {
        Gen::Swap(i) => {
            let (a, b) = (at(*i)?.clone(), at(*i + 1)?.clone());
            w.prims[*i] = b.clone();
            w.prims[*i + 1] = a.clone();
            Ok((w, koszul(a.degree(), b.degree())))
        }
        Gen::Pair(i) => {
            let (a, b) = (at(*i)?.clone(), at(*i + 1)?.clone());
            if a.sym != b.sym || b.line_dual != a.line_dual + 1 {
                return Err(CoreError::Structural(format!(
                    "cannot pair positions {i}, {}: not a line and its dual",
                    i + 1
                )));
            }
            let deg = 2 * a.sym.rank();
            w.prims.splice(*i..*i + 2, [Prim::plain(Sym::Trivial(deg))]);
            Ok((w, Gaussian::one()))
        }
        Gen::Unpair(i, sub) => {
            let t = at(*i)?;
            let expect = 2 * sub.degree();
            if t.sym != Sym::Trivial(expect as u32) || t.line_dual != 0 {
                return Err(CoreError::Structural(format!(
                    "position {i} is not the degree-{expect} trivial line"
                )));
            }
            let mut ins = sub.prims.clone();
            ins.extend(sub.dual_reversed()?.prims);
            w.prims.splice(*i..*i + 1, ins);
            Ok((w, Gaussian::one()))
        }
        Gen::DoubleDual(i) => {
            let p = at(*i)?.clone();
            if p.line_dual != 2 {
                return Err(CoreError::Structural("◊ needs a double-dual line".into()));
            }
            w.prims[*i].line_dual = 0;
            Ok((w, Gaussian::one()))
        }
        Gen::DoubleDualInv(i) => {
            let p = at(*i)?.clone();
            if p.line_dual != 0 {
                return Err(CoreError::Structural("◊^{-1} needs an undualized line".into()));
            }
            w.prims[*i].line_dual = 2;
            Ok((w, Gaussian::one()))
        }
        Gen::DetDual(i) => {
            let p = at(*i)?.clone();
            let Sym::Dual(inner) = &p.sym else {
                return Err(CoreError::Structural("d_V needs det of a dual bundle".into()));
            };
            if p.line_dual != 0 {
                return Err(CoreError::Structural("d_V acts on an undualized line".into()));
            }
            let r = inner.rank();
            w.prims[*i] = Prim { sym: (**inner).clone(), line_dual: 1 };
            Ok((w, half_shuffle_sign(r)))
        }
        Gen::DetDualInv(i) => {
            let p = at(*i)?.clone();
            if p.line_dual != 1 {
                return Err(CoreError::Structural("d_V^{-1} acts on a dual line".into()));
            }
            let r = p.sym.rank();
            w.prims[*i] = Prim::plain(p.sym.clone().dual());
            Ok((w, half_shuffle_sign(r)))
        }
        Gen::SymDoubleDual(i) => {
            let p = at(*i)?.clone();
            let Sym::Dual(inner) = &p.sym else {
                return Err(CoreError::Structural("not a double-dual symbol".into()));
            };
            let Sym::Dual(core) = &**inner else {
                return Err(CoreError::Structural("not a double-dual symbol".into()));
            };
            w.prims[*i].sym = (**core).clone();
            Ok((w, Gaussian::one()))
        }
        Gen::SymDoubleDualInv(i) => {
            let p = at(*i)?.clone();
            w.prims[*i].sym = p.sym.clone().dual().dual();
            Ok((w, Gaussian::one()))
        }
        Gen::DualSumNorm(i) => {
            let p = at(*i)?.clone();
            let Sym::Dual(inner) = &p.sym else {
                return Err(CoreError::Structural("not a dual symbol".into()));
            };
            let Sym::Sum(list) = &**inner else {
                return Err(CoreError::Structural("not a dual of a sum".into()));
            };
            w.prims[*i].sym = Sym::Sum(list.iter().map(|s| s.clone().dual()).collect());
            Ok((w, Gaussian::one()))
        }
        Gen::DualSumNormInv(i) => {
            let p = at(*i)?.clone();
            let Sym::Sum(list) = &p.sym else {
                return Err(CoreError::Structural("not a sum symbol".into()));
            };
            let mut inner = Vec::new();
            for s in list {
                let Sym::Dual(d) = s else {
                    return Err(CoreError::Structural("summand is not a dual".into()));
                };
                inner.push((**d).clone());
            }
            w.prims[*i].sym = Sym::Sum(inner).dual();
            Ok((w, Gaussian::one()))
        }
        Gen::SplitSum(i) => {
            let p = at(*i)?.clone();
            if p.line_dual != 0 {
                return Err(CoreError::Structural("ε splits an undualized det".into()));
            }
            let Sym::Sum(list) = &p.sym else {
                return Err(CoreError::Structural("ε needs det of a sum".into()));
            };
            let ins: Vec<Prim> = list.iter().map(|s| Prim::plain(s.clone())).collect();
            w.prims.splice(*i..*i + 1, ins);
            Ok((w, Gaussian::one()))
        }
        Gen::MergeSum(i, len) => {
            if *i + *len > word.prims.len() {
                return Err(CoreError::Structural("merge range out of bounds".into()));
            }
            let mut list = Vec::new();
            for k in 0..*len {
                let p = at(*i + k)?;
                if p.line_dual != 0 {
                    return Err(CoreError::Structural("ε^{-1} merges undualized dets".into()));
                }
                list.push(p.sym.clone());
            }
            w.prims.splice(*i..*i + *len, [Prim::plain(Sym::Sum(list))]);
            Ok((w, Gaussian::one()))
        }
        Gen::DeltaSplit(i) => {
            let p = at(*i)?.clone();
            if p.line_dual != 1 {
                return Err(CoreError::Structural("δ splits a dualized det".into()));
            }
            let Sym::Sum(list) = &p.sym else {
                return Err(CoreError::Structural("δ needs det of a sum".into()));
            };
            let ins: Vec<Prim> =
                list.iter().rev().map(|s| Prim::dual_line(s.clone())).collect();
            w.prims.splice(*i..*i + 1, ins);
            Ok((w, Gaussian::one()))
        }
        Gen::DeltaMerge(i, len) => {
            if *i + *len > word.prims.len() {
                return Err(CoreError::Structural("merge range out of bounds".into()));
            }
            let mut list = Vec::new();
            for k in 0..*len {
                let p = at(*i + k)?;
                if p.line_dual != 1 {
                    return Err(CoreError::Structural("δ^{-1} merges dual lines".into()));
                }
                list.push(p.sym.clone());
            }
            list.reverse();
            w.prims.splice(*i..*i + *len, [Prim::dual_line(Sym::Sum(list))]);
            Ok((w, Gaussian::one()))
        }
        Gen::CanonTrivial(i) => {
            let p = at(*i)?.clone();
            let Sym::Trivial(r) = p.sym else {
                return Err(CoreError::Structural("canonical map needs a trivial line".into()));
            };
            if p.line_dual != 1 {
                return Err(CoreError::Structural("canonical map acts on the dual".into()));
            }
            w.prims[*i].line_dual = 0;
            Ok((w, half_shuffle_sign(r)))
        }
        Gen::CanonTrivialInv(i) => {
            let p = at(*i)?.clone();
            let Sym::Trivial(r) = p.sym else {
                return Err(CoreError::Structural("canonical map needs a trivial line".into()));
            };
            if p.line_dual != 0 {
                return Err(CoreError::Structural("inverse canonical map dualizes".into()));
            }
            w.prims[*i].line_dual = 1;
            Ok((w, half_shuffle_sign(r)))
        }
        Gen::MulTrivial(i) => {
            let (a, b) = (at(*i)?.clone(), at(*i + 1)?.clone());
            let (Sym::Trivial(ra), Sym::Trivial(rb)) = (&a.sym, &b.sym) else {
                return Err(CoreError::Structural("multiplication needs trivial lines".into()));
            };
            if a.line_dual != 0 || b.line_dual != 0 {
                return Err(CoreError::Structural("multiplication needs undualized lines".into()));
            }
            w.prims.splice(*i..*i + 2, [Prim::plain(Sym::Trivial(ra + rb))]);
            Ok((w, Gaussian::one()))
        }
        Gen::SplitTrivial(i, a) => {
            let p = at(*i)?.clone();
            let Sym::Trivial(r) = p.sym else {
                return Err(CoreError::Structural("split needs a trivial line".into()));
            };
            if p.line_dual != 0 || *a > r {
                return Err(CoreError::Structural("invalid trivial split".into()));
            }
            w.prims.splice(
                *i..*i + 1,
                [Prim::plain(Sym::Trivial(*a)), Prim::plain(Sym::Trivial(r - *a))],
            );
            Ok((w, Gaussian::one()))
        }
        Gen::DetIqHyperbolic(i) => {
            let p = at(*i)?.clone();
            if p.line_dual != 0 {
                return Err(CoreError::Structural("det(i_q) acts on det(E)".into()));
            }
            let Sym::Sum(list) = &p.sym else {
                return Err(CoreError::Structural("hyperbolic det(i_q) needs X ⊕ X*".into()));
            };
            if list.len() != 2 || list[1] != list[0].clone().dual() {
                return Err(CoreError::Structural("hyperbolic det(i_q) needs X ⊕ X*".into()));
            }
            let n = list[0].rank();
            w.prims[*i].sym = p.sym.clone().dual();
            Ok((w, Gaussian::sign(if n % 2 == 0 { 1 } else { -1 })))
        }
    }
}

/// Evaluates a chain of generators from `start`, returning the final word and
/// the exact composite scalar.
pub fn eval(start: &LineWord, chain: &[Gen]) -> Result<(LineWord, Gaussian)> {
    let mut word = start.clone();
    let mut scalar = Gaussian::one();
    for g in chain {
        let (w, s) = apply(&word, g)?;
        word = w;
        scalar = scalar * s;
    }
    Ok((word, scalar))
}

/// Reorders `word` into `target` (a permutation of it) by adjacent swaps,
/// returning the accumulated Koszul sign. Equal primitives are matched in
/// order, which makes the result deterministic.
pub fn reorder_scalar(word: &LineWord, target: &LineWord) -> Result<Gaussian> {
    let n = word.prims.len();
    if target.prims.len() != n {
        return Err(CoreError::Structural("reorder targets a different length".into()));
    }
    // match each target slot to a distinct source index
    let mut used = vec![false; n];
    let mut perm = Vec::with_capacity(n);
    for t in &target.prims {
        let Some(j) = (0..n).find(|&j| !used[j] && word.prims[j] == *t) else {
            return Err(CoreError::Structural("reorder target is not a permutation".into()));
        };
        used[j] = true;
        perm.push(j);
    }
    // bubble the permutation into place, accumulating Koszul signs
    let mut arr = perm;
    let degs: Vec<i64> = word.prims.iter().map(|p| p.degree()).collect();
    let mut sign = Gaussian::one();
    // selection: repeatedly bring the needed source to the front segment
    let mut current: Vec<usize> = (0..n).collect();
    for (slot, want) in arr.drain(..).enumerate() {
        let pos = current.iter().position(|&x| x == want).unwrap();
        for k in (slot..pos).rev() {
            sign = sign * koszul(degs[current[k]], degs[current[k + 1]]);
            current.swap(k, k + 1);
            let _ = &degs;
        }
    }
    Ok(sign)
}

#[cfg(test)]
mod tests;
