//! Orientation constructions on the determinant-line calculus and the sign
//! lemmas certified from them.

use super::*;
use crate::num::Gaussian;

/// A trivialization of a determinant line compatible with its self-pairing.
/// `scalar` is the coefficient of the canonical basis of `word` in the image
/// of the canonical section of the source trivial line.
#[derive(Debug, Clone)]
pub struct OrientationObj {
    pub word: LineWord,
    pub scalar: Gaussian,
}

fn prim_sum(list: &[Sym]) -> Prim {
    Prim::plain(Sym::Sum(list.to_vec()))
}

/// det(i_q) scalar of the split quadratic structure on a symbol, defined for
/// sums of hyperbolic blocks X ⊕ X*.
fn iq_scalar(sym: &Sym) -> Result<Gaussian> {
    let Sym::Sum(list) = sym else {
        return Err(CoreError::Structural("quadratic symbol must be a sum".into()));
    };
    if list.len() == 2 && list[1] == list[0].clone().dual() {
        let n = list[0].rank();
        return Ok(Gaussian::sign(if n % 2 == 0 { 1 } else { -1 }));
    }
    let mut s = Gaussian::one();
    for part in list {
        s = s * iq_scalar(part)?;
    }
    Ok(s)
}

impl OrientationObj {
    /// The orientation condition: d ∘ det(i_q) = (o*)^{-1} ∘ o^{-1}, which in
    /// scalar form is o² · det(i_q) = 1.
    pub fn satisfies_eor(&self) -> Result<bool> {
        if self.word.prims.len() != 1 {
            return Err(CoreError::Structural("orientation target must be a single line".into()));
        }
        let iq = iq_scalar(&self.word.prims[0].sym)?;
        let o2 = self.scalar.clone() * self.scalar.clone();
        Ok((o2 * iq).is_one())
    }
}

/// The induced orientation o_V of E = V ⊕ V* with respect to the maximal
/// isotropic V: (-i)^n · ε^{-1}_{V,V*} ∘ (id ⊗ d_V^{-1}) ∘ p^{-1}_{det V}.
pub fn induced_orientation(name: &str, n: u32) -> Result<OrientationObj> {
    let v = Sym::atom(name, n);
    let start = LineWord::new(vec![Prim::plain(Sym::Trivial(2 * n))]);
    let chain = [
        Gen::Unpair(0, LineWord::new(vec![Prim::plain(v.clone())])),
        Gen::DetDualInv(1),
        Gen::MergeSum(0, 2),
    ];
    let (word, s) = eval(&start, &chain)?;
    Ok(OrientationObj { word, scalar: Gaussian::minus_i_pow(n as i64) * s })
}

/// o_{V*}/o_V, after identifying det(V* ⊕ V**) with det(V ⊕ V*).
pub fn orientation_dual_ratio(n: u32) -> Result<Gaussian> {
    let ov = induced_orientation("V", n)?;
    // build o_{V*} directly on the dual bundle
    let v = Sym::atom("V", n);
    let start = LineWord::new(vec![Prim::plain(Sym::Trivial(2 * n))]);
    let chain = [
        Gen::Unpair(0, LineWord::new(vec![Prim::plain(v.clone().dual())])),
        Gen::DetDualInv(1),
        // identify det((V*)*) with det(V), then reorder into V ⊕ V*
        Gen::SymDoubleDual(1),
        Gen::Swap(0),
        Gen::MergeSum(0, 2),
    ];
    let (word, s) = eval(&start, &chain)?;
    if word != ov.word {
        return Err(CoreError::Structural("dual-orientation words disagree".into()));
    }
    let odual = Gaussian::minus_i_pow(n as i64) * s;
    Ok(odual * ov.scalar.inv())
}

/// Tensor product of two orientations, an orientation of the direct sum.
pub fn orientation_product(a: &OrientationObj, b: &OrientationObj) -> Result<OrientationObj> {
    if a.word.prims.len() != 1 || b.word.prims.len() != 1 {
        return Err(CoreError::Structural("orientation targets must be single lines".into()));
    }
    let word = LineWord::new(vec![prim_sum(&[
        a.word.prims[0].sym.clone(),
        b.word.prims[0].sym.clone(),
    ])]);
    Ok(OrientationObj { word, scalar: a.scalar.clone() * b.scalar.clone() })
}

/// Scalar discrepancy between p_L ∘ (◊ ⊗ id) and p_{L*} ∘ σ on (L*)* ⊗ L*.
pub fn double_dual_discrepancy(rank: u32) -> Result<Gaussian> {
    let l = Sym::atom("L", rank);
    let start = LineWord::new(vec![
        Prim { sym: l.clone(), line_dual: 2 },
        Prim { sym: l.clone(), line_dual: 1 },
    ]);
    let (wa, sa) = eval(&start, &[Gen::DoubleDual(0), Gen::Pair(0)])?;
    let (wb, sb) = eval(&start, &[Gen::Swap(0), Gen::Pair(0)])?;
    if wa != wb {
        return Err(CoreError::Structural("double-dual paths end at different words".into()));
    }
    Ok(sb * sa.inv())
}

/// Evaluates both composites around the duality pentagon and reports whether
/// they agree.
pub fn verify_pentagon(rk_u: u32, rk_v: u32) -> Result<bool> {
    let u = Sym::atom("U", rk_u);
    let v = Sym::atom("V", rk_v);
    let start = LineWord::new(vec![
        Prim::plain(v.clone().dual()),
        Prim::plain(u.clone().dual()),
    ]);
    // (d_V ⊗ d_U) then δ^{-1}_{U,V} then ε*_{U,V}
    let path1 = [Gen::DetDual(0), Gen::DetDual(1), Gen::DeltaMerge(0, 2)];
    // ε^{-1}_{V*,U*} then d_{U⊕V}
    let path2 = [
        Gen::Swap(0),
        Gen::MergeSum(0, 2),
        Gen::DualSumNormInv(0),
        Gen::DetDual(0),
    ];
    let (w1, s1) = eval(&start, &path1)?;
    let (w2, s2) = eval(&start, &path2)?;
    Ok(w1 == w2 && s1 == s2)
}

/// Builds the split hyperbolic pair [det X, det X*] from the trivial line,
/// normalizing X** to X, and returns the appended word and scalar.
fn hyperbolic_pair(word: &mut LineWord, scalar: &mut Gaussian, x: &Sym) -> Result<()> {
    let i = word.prims.len();
    let r = x.rank();
    word.prims.push(Prim::plain(Sym::Trivial(2 * r)));
    let chain: Vec<Gen> = match x {
        Sym::Dual(_) => vec![
            Gen::Unpair(i, LineWord::new(vec![Prim::plain(x.clone())])),
            Gen::DetDualInv(i + 1),
            Gen::SymDoubleDual(i + 1),
        ],
        _ => vec![
            Gen::Unpair(i, LineWord::new(vec![Prim::plain(x.clone())])),
            Gen::DetDualInv(i + 1),
        ],
    };
    let (w, s) = eval(word, &chain)?;
    *word = w;
    *scalar = scalar.clone() * s * Gaussian::minus_i_pow(r as i64);
    Ok(())
}

/// Assembles the product of hyperbolic pair orientations over `parts` and
/// reorders the result into `target`, returning the total scalar.
fn product_orientation_scalar(parts: &[Sym], target: &LineWord) -> Result<Gaussian> {
    let mut word = LineWord::default();
    let mut scalar = Gaussian::one();
    for x in parts {
        hyperbolic_pair(&mut word, &mut scalar, x)?;
    }
    let rho = reorder_scalar(&word, target)?;
    Ok(scalar * rho)
}

/// Compares the two orientation conventions of the virtual normal bundle for
/// the resolution N≥ = {T≥ → E≥ → (T≤)*}: o_{N≥} built from the factors
/// (T≥, (E≥)*, (T≤)*) against the Oh–Thomas positive isotropic
/// N≥_OT = T≥ ⊕ T≤ ⊕ E≥, both assembled into the same determinant word.
pub fn ot_comparison(rk_t_ge: u32, rk_t_le: u32, rk_e_ge: u32) -> Result<Gaussian> {
    let t = Sym::atom("Tge", rk_t_ge);
    let l = Sym::atom("Tle", rk_t_le);
    let e = Sym::atom("Ege", rk_e_ge);
    // common normal form: [T, L, E, E*, T*, L*]
    let target = LineWord::new(vec![
        Prim::plain(t.clone()),
        Prim::plain(l.clone()),
        Prim::plain(e.clone()),
        Prim::plain(e.clone().dual()),
        Prim::plain(t.clone().dual()),
        Prim::plain(l.clone().dual()),
    ]);
    let o_ot = product_orientation_scalar(&[t.clone(), l.clone(), e.clone()], &target)?;
    let o_n = product_orientation_scalar(&[t, e.dual(), l.dual()], &target)?;
    Ok(o_n * o_ot.inv())
}

/// Builds an orientation of the three-term complex {T -> E -> T*} with
/// hyperbolic middle E = W ⊕ W*, then applies the induced-orientation recipe
/// (collapse the det(T)det(T)* pair, then det(i_q)^{-1}) and checks that the
/// result satisfies the orientation condition for E.
pub fn einduced_orientation_check(rk_t: u32, n: u32) -> Result<bool> {
    let t = Sym::atom("T", rk_t);
    let w = Sym::atom("W", n);
    let e = Sym::Sum(vec![w.clone(), w.clone().dual()]);

    // o• : trivial -> det(T) ⊗ det(E)* ⊗ det(T*), as the product of the
    // T-hyperbolic pair and the dualized orientation of E
    let mut word = LineWord::new(vec![Prim::plain(Sym::Trivial(2 * rk_t + 2 * n))]);
    let mut scalar = Gaussian::one();
    let oe = OrientationObj {
        word: LineWord::new(vec![Prim::plain(e.clone())]),
        scalar: Gaussian::minus_i_pow(n as i64) * super::half_shuffle_sign(n),
    };
    if !oe.satisfies_eor()? {
        return Ok(false);
    }
    let chain = [
        Gen::SplitTrivial(0, 2 * rk_t),
        Gen::Unpair(0, LineWord::new(vec![Prim::plain(t.clone())])),
        Gen::DetDualInv(1),
        // (o_E*)^{-1} = det(i_q) ∘ o_E on the remaining trivial factor
        Gen::CanonTrivialInv(2),
    ];
    let (wd, s) = eval(&word, &chain)?;
    word = wd;
    scalar = scalar * s;
    // replace the dualized trivial line by det(E)* via (o_E^*)^{-1}
    let expected = Prim { sym: Sym::Trivial(2 * n), line_dual: 1 };
    if word.prims[2] != expected {
        return Err(CoreError::Structural("unexpected word shape".into()));
    }
    word.prims[2] = Prim::dual_line(e.clone());
    scalar = scalar * oe.scalar.clone().inv();
    // word is now [T, T*, det(E)*]; this presents det of the complex

    // induced orientation: collapse the T-pair, then invert det(i_q)
    let back = [
        Gen::DetDual(1),
        Gen::Pair(0),
        Gen::DetDualInv(1),
    ];
    let (wd, s) = eval(&word, &back)?;
    word = wd;
    scalar = scalar * s;
    // undo det(i_q): det(E*) -> det(E) carries the inverse scalar
    let Sym::Dual(inner) = &word.prims[1].sym else {
        return Err(CoreError::Structural("expected det of the dual bundle".into()));
    };
    if **inner != e {
        return Err(CoreError::Structural("unexpected bundle under det".into()));
    }
    word.prims[1] = Prim::plain(e.clone());
    scalar = scalar * iq_scalar(&e)?.inv();

    let induced = OrientationObj {
        word: LineWord::new(vec![word.prims[1].clone()]),
        scalar,
    };
    induced.satisfies_eor()
}
