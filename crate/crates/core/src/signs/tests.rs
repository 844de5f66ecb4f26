use super::*;
use crate::num::{rat_int, Gaussian};

fn sign(n: i64) -> Gaussian {
    Gaussian::sign(n)
}

#[test]
fn swap_signs() {
    let a = Prim::plain(Sym::atom("A", 2));
    let b = Prim::plain(Sym::atom("B", 3));
    let w = LineWord::new(vec![a.clone(), b.clone()]);
    let (_, s) = eval(&w, &[Gen::Swap(0)]).unwrap();
    assert_eq!(s, Gaussian::one(), "even degree swaps freely");

    let a1 = Prim::plain(Sym::atom("A", 1));
    let b1 = Prim::plain(Sym::atom("B", 1));
    let w = LineWord::new(vec![a1, b1]);
    let (_, s) = eval(&w, &[Gen::Swap(0)]).unwrap();
    assert_eq!(s, sign(-1));
    // involution
    let (w2, s2) = eval(&w, &[Gen::Swap(0), Gen::Swap(0)]).unwrap();
    assert_eq!(w2, w);
    assert_eq!(s2, Gaussian::one());
}

#[test]
fn generators_invert_to_one() {
    let v = Sym::atom("V", 3);
    let w = LineWord::new(vec![Prim::plain(v.clone().dual())]);
    let (_, s) = eval(&w, &[Gen::DetDual(0), Gen::DetDualInv(0)]).unwrap();
    assert_eq!(s, Gaussian::one());

    let w = LineWord::new(vec![Prim::plain(Sym::Trivial(6))]);
    let sub = LineWord::new(vec![Prim::plain(v.clone())]);
    let (back, s) = eval(&w, &[Gen::Unpair(0, sub), Gen::Pair(0)]).unwrap();
    assert_eq!(back, w);
    assert_eq!(s, Gaussian::one());

    let w = LineWord::new(vec![Prim::plain(Sym::Trivial(4))]);
    let (_, s) = eval(&w, &[Gen::CanonTrivialInv(0), Gen::CanonTrivial(0)]).unwrap();
    assert_eq!(s, Gaussian::one());
}

#[test]
fn unpair_compound_word() {
    // p^{-1} for a product line inserts the word followed by its reversed dual
    let a = Prim::plain(Sym::atom("A", 1));
    let b = Prim::dual_line(Sym::atom("B", 2));
    let sub = LineWord::new(vec![a.clone(), b.clone()]);
    let start = LineWord::new(vec![Prim::plain(Sym::Trivial(6))]);
    let (w, s) = eval(&start, &[Gen::Unpair(0, sub)]).unwrap();
    assert_eq!(s, Gaussian::one());
    assert_eq!(
        w.prims,
        vec![
            a.clone(),
            b.clone(),
            Prim { sym: Sym::atom("B", 2), line_dual: 2 },
            Prim { sym: Sym::atom("A", 1), line_dual: 1 },
        ]
    );
}

#[test]
fn pentagon_commutes() {
    for rk_u in 0..=4 {
        for rk_v in 0..=4 {
            assert!(
                verify_pentagon(rk_u, rk_v).unwrap(),
                "pentagon fails at ranks ({rk_u}, {rk_v})"
            );
        }
    }
}

#[test]
fn double_dual_sign() {
    assert_eq!(double_dual_discrepancy(0).unwrap(), Gaussian::one());
    assert_eq!(double_dual_discrepancy(1).unwrap(), sign(-1));
    assert_eq!(double_dual_discrepancy(2).unwrap(), Gaussian::one());
    assert_eq!(double_dual_discrepancy(3).unwrap(), sign(-1));
    assert_eq!(double_dual_discrepancy(4).unwrap(), Gaussian::one());
}

#[test]
fn epsilon_swap_compatibility() {
    // ε_{V,U} = σ_{U,V} ∘ ε_{U,V}: splitting and then swapping carries
    // exactly the Koszul sign
    for (ru, rv) in [(1u32, 1u32), (1, 2), (2, 3), (3, 3), (4, 1)] {
        let u = Sym::atom("U", ru);
        let v = Sym::atom("V", rv);
        let w = LineWord::new(vec![Prim::plain(Sym::Sum(vec![u, v]))]);
        let (_, s) = eval(&w, &[Gen::SplitSum(0), Gen::Swap(0)]).unwrap();
        let expect = if (ru * rv) % 2 == 0 { 1 } else { -1 };
        assert_eq!(s, sign(expect));
    }
}

#[test]
fn induced_orientation_satisfies_eor() {
    for n in 0..=4 {
        let o = induced_orientation("V", n).unwrap();
        assert!(o.satisfies_eor().unwrap(), "o_V fails the orientation condition at n = {n}");
        // the opposite orientation also satisfies it (the sign squares away)
        let neg = OrientationObj { word: o.word.clone(), scalar: -o.scalar.clone() };
        assert!(neg.satisfies_eor().unwrap());
        // a wrong scalar does not
        if n > 0 {
            let bad = OrientationObj {
                word: o.word.clone(),
                scalar: o.scalar.clone() * Gaussian::from_int(2),
            };
            assert!(!bad.satisfies_eor().unwrap());
        }
    }
}

#[test]
fn induced_orientation_scalar_value() {
    // (-i)^n times the wedge reversal from d_V^{-1}
    let o = induced_orientation("V", 1).unwrap();
    assert_eq!(o.scalar, Gaussian::minus_i());
    let o = induced_orientation("V", 2).unwrap();
    assert_eq!(o.scalar, Gaussian::from_int(-1) * sign(-1));
}

#[test]
fn orientation_dual_comparison() {
    for (n, expect) in [(0u32, 1i64), (1, -1), (2, 1), (3, -1)] {
        assert_eq!(orientation_dual_ratio(n).unwrap(), sign(expect));
    }
}

#[test]
fn orientation_products() {
    let o1 = induced_orientation("V", 2).unwrap();
    let o2 = induced_orientation("W", 2).unwrap();
    let prod = orientation_product(&o1, &o2).unwrap();
    assert!(prod.satisfies_eor().unwrap());
    // trivial ⊗ trivial stays trivial
    let t1 = induced_orientation("V", 0).unwrap();
    let t2 = induced_orientation("W", 0).unwrap();
    let t = orientation_product(&t1, &t2).unwrap();
    assert!(t.satisfies_eor().unwrap());
    assert_eq!(t.scalar, Gaussian::one());
    // o ⊗ (-o)
    let neg = OrientationObj { word: o2.word.clone(), scalar: -o2.scalar.clone() };
    assert!(orientation_product(&o1, &neg).unwrap().satisfies_eor().unwrap());
}

#[test]
fn ot_comparison_matches_rank_sign() {
    assert_eq!(ot_comparison(0, 0, 0).unwrap(), Gaussian::one());
    assert_eq!(ot_comparison(0, 0, 1).unwrap(), sign(-1));
    assert_eq!(ot_comparison(0, 1, 0).unwrap(), sign(-1));
    assert_eq!(ot_comparison(1, 0, 0).unwrap(), Gaussian::one());
    for p in 0..=3u32 {
        for q in 0..=3u32 {
            for m in 0..=3u32 {
                let expect = if (q + m) % 2 == 0 { 1 } else { -1 };
                assert_eq!(
                    ot_comparison(p, q, m).unwrap(),
                    sign(expect),
                    "OT comparison off at ranks ({p}, {q}, {m})"
                );
            }
        }
    }
}

#[test]
fn einduced_orientation_is_orientation() {
    for rk_t in 0..=3 {
        for n in 0..=3 {
            assert!(
                einduced_orientation_check(rk_t, n).unwrap(),
                "induced bundle orientation fails at (rk T, n) = ({rk_t}, {n})"
            );
        }
    }
}

#[test]
fn reorder_scalar_is_koszul() {
    let a = Prim::plain(Sym::atom("A", 1));
    let b = Prim::plain(Sym::atom("B", 1));
    let c = Prim::plain(Sym::atom("C", 2));
    let w = LineWord::new(vec![a.clone(), b.clone(), c.clone()]);
    let t = LineWord::new(vec![b.clone(), a.clone(), c.clone()]);
    assert_eq!(reorder_scalar(&w, &t).unwrap(), sign(-1));
    let t2 = LineWord::new(vec![c, a, b]);
    // moving C (even) to the front is free
    assert_eq!(reorder_scalar(&w, &t2).unwrap(), Gaussian::one());
    let _ = rat_int(0);
}

#[test]
fn dual_orientation_agrees_with_iq_composite() {
    // (o*)^{-1} = det(i_q) ∘ o as maps into det(E*), for every constructed
    // orientation: both composites evaluate to the same scalar
    for n in 0..=4u32 {
        let o = induced_orientation("V", n).unwrap();
        let e_sym = o.word.prims[0].sym.clone();
        let rank = e_sym.rank();
        // det(i_q) ∘ o
        let (_, iq) = eval(
            &o.word,
            &[Gen::DetIqHyperbolic(0)],
        )
        .unwrap();
        let route_a = o.scalar.clone() * iq;
        // (o*)^{-1} carried to det(E*) through the canonical identification
        // of the trivial line with its dual and d_E^{-1}
        let hs = |r: u32| {
            let r = r as i64;
            Gaussian::sign(if (r * (r - 1) / 2) % 2 == 0 { 1 } else { -1 })
        };
        let route_b = hs(rank) * o.scalar.clone().inv() * hs(rank);
        assert_eq!(route_a, route_b, "composites disagree at n = {n}");
    }
}
