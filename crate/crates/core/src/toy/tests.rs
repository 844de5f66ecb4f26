use super::*;
use crate::num::{rat, rat_int};

#[test]
fn segre_classes() {
    // line: s_j = (-c1)^j
    let m = ProjBundleModel::new(1, 5).unwrap();
    let c1 = m.chern(1);
    let mut sign = Rat::one();
    let mut power = m.one();
    for j in 0..=4u32 {
        assert_eq!(m.segre(j), m.scale(&power, &sign));
        power = m.mul(&power, &c1);
        sign = -sign;
    }
    // rank 2: s0 = 1, s1 = -c1, s2 = c1² - c2
    let m = ProjBundleModel::new(2, 6).unwrap();
    assert_eq!(m.segre(0), m.one());
    assert_eq!(m.segre(1), m.scale(&m.chern(1), &rat_int(-1)));
    let expect = m.add(&m.mul(&m.chern(1), &m.chern(1)), &m.scale(&m.chern(2), &rat_int(-1)));
    assert_eq!(m.segre(2), expect);
    // s(V)·c(V) = 1 through degree 4
    let mut total = PolyClass::zero();
    for d in 0..=4u32 {
        for i in 0..=d.min(2) {
            let c = if i == 0 { m.one() } else { m.chern(i as usize) };
            total = m.add(&total, &m.mul(&c, &m.segre(d - i)));
        }
    }
    assert_eq!(total, m.one());
}

#[test]
fn pushforward_base_cases() {
    for r in 2..=4usize {
        let m = ProjBundleModel::new(r, (r + 3) as u32).unwrap();
        assert_eq!(m.pushforward(&m.h_power(r as u32 - 1)), m.one());
        assert!(m.pushforward(&m.one()).is_zero());
        // p_*(h^{r-1+j}) = s_j(V)
        for j in 0..=3u32 {
            assert_eq!(m.pushforward(&m.h_power(r as u32 - 1 + j)), m.segre(j));
        }
    }
}

#[test]
fn pushforward_matches_numeric_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(41);
    for r in 1..=4usize {
        let m = ProjBundleModel::new(r, (r + 2) as u32).unwrap();
        // distinct integer Chern roots
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() < r {
            let t = rng.gen_range(-6..=6);
            if !roots.contains(&t) {
                roots.push(t);
            }
        }
        for deg in 0..=(r as u32 + 2) {
            let formal = m.pushforward(&m.h_power(deg));
            let value = evaluate_at_roots(&m, &formal, &roots);
            let oracle = pushforward_numeric_oracle(&roots, deg).unwrap();
            assert_eq!(value, oracle, "rank {r}, degree {deg}, roots {roots:?}");
        }
    }
}

#[test]
fn euler_of_relative_tangent_pushes_to_rank() {
    for r in 2..=5usize {
        let m = ProjBundleModel::new(r, (r + 2) as u32).unwrap();
        let pushed = m.pushforward(&m.euler_relative_tangent());
        assert_eq!(pushed, m.constant(rat_int(r as i64)), "χ(P^{}) = {r}", r - 1);
    }
}

#[test]
fn cap_calculus() {
    let ctx = ToyCtx::new(vec![("th".into(), 5)]);
    // Σ_{j≤4} p^j z^j
    let mut ps: PSeriesVector = Default::default();
    for j in 0..=4u32 {
        ps.insert(j, TPoly::monomial(&ctx, j as i64, &[], Rat::one()));
    }
    // capping with 1 changes nothing
    let f1 = vec![(0u32, TPoly::one(&ctx))];
    assert_eq!(cap_tau(&ctx, &ps, &f1), ps);
    // capping with τ multiplies by z at the available exponents
    let ftau = vec![(1u32, TPoly::one(&ctx))];
    let capped = cap_tau(&ctx, &ps, &ftau);
    for j in 0..=3u32 {
        assert_eq!(capped[&j], TPoly::monomial(&ctx, j as i64 + 1, &[], Rat::one()));
    }
    assert!(!capped.contains_key(&4));
    // p^0 ∩ τ = 0
    let mut p0: PSeriesVector = Default::default();
    p0.insert(0, TPoly::one(&ctx));
    assert!(cap_tau(&ctx, &p0, &ftau).is_empty());
    // the convolution identity against f(z) on the reliable window
    let f = vec![
        (0u32, TPoly::one(&ctx)),
        (2u32, TPoly::monomial(&ctx, 0, &[("th", 1)], rat(1, 2))),
    ];
    let capped = cap_tau(&ctx, &ps, &f);
    for j in 0..=2u32 {
        // entry j of Σ p^j z^j f(z)
        let expect = TPoly::monomial(&ctx, j as i64, &[], Rat::one()).add(&TPoly::monomial(
            &ctx,
            j as i64 + 2,
            &[("th", 1)],
            rat(1, 2),
        ));
        assert_eq!(capped[&j], expect, "entry {j}");
    }
}

#[test]
fn pushdown_collapse() {
    for r in 1..=4usize {
        for a in [0i64, 2] {
            assert!(
                bracket_pushdown_check(r, a).unwrap(),
                "pushdown fails at rank {r}, degree {a}"
            );
        }
    }
    assert!(bracket_pushdown_check(2, 1).is_err());
}

#[test]
fn three_locus_residues() {
    let l1 = LocusData { coeff: rat_int(2), roots: vec!["b1".into()] };
    let l2 = LocusData { coeff: rat_int(3), roots: vec!["b2".into()] };
    let l3 = LocusData { coeff: rat_int(1), roots: vec!["th".into()] };
    let report = fixed_locus_residues(&l1, &l2, &l3, 1).unwrap();
    // locus 1 collapses to +A with its coefficient, locus 2 to -B
    let ctx = ToyCtx::new(vec![
        ("A".into(), 1),
        ("B".into(), 1),
        ("b1".into(), 6),
        ("b2".into(), 6),
        ("th".into(), 6),
        ("v".into(), 1),
    ]);
    assert_eq!(report.locus1, TPoly::monomial(&ctx, 0, &[("A", 1)], rat_int(2)));
    assert_eq!(report.locus2, TPoly::monomial(&ctx, 0, &[("B", 1)], rat_int(-3)));
    // locus 3 keeps the bracket-shaped class with the ε sign
    assert_eq!(report.locus3, TPoly::monomial(&ctx, 0, &[("v", 1)], rat_int(1)));
    assert!(!report.cancels);
}

#[test]
fn matched_self_dual_data_cancels() {
    // wall-crossing bookkeeping: [N^-] + ε[v1,v2]-term balances [N^+]
    let l1 = LocusData { coeff: rat_int(1), roots: vec!["th".into()] };
    let l2 = LocusData { coeff: rat_int(1), roots: vec!["th".into()] };
    let l3 = LocusData { coeff: rat_int(1), roots: vec!["th".into()] };
    let report = fixed_locus_residues(&l1, &l2, &l3, 1).unwrap();
    // A - B + v: substituting the matched classes A = M, B = M + v gives zero
    let ctx = ToyCtx::new(vec![
        ("A".into(), 1),
        ("B".into(), 1),
        ("M".into(), 2),
        ("th".into(), 6),
        ("v".into(), 1),
    ]);
    let subst = |t: &TPoly, a_val: &TPoly, b_val: &TPoly| -> TPoly {
        let mut out = TPoly::zero(&ctx);
        for ((z, e), c) in &t.terms {
            debug_assert_eq!(*z, 0);
            let ia = 0usize; // A is the first variable in both contexts
            let ib = 1usize;
            let mut term = TPoly::monomial(&ctx, *z, &[], c.clone());
            if e[ia] > 0 {
                term = term.mul(&ctx, a_val);
            } else if e[ib] > 0 {
                term = term.mul(&ctx, b_val);
            } else {
                term = TPoly::monomial(&ctx, *z, &[("v", 1)], c.clone());
            }
            out = out.add(&term);
        }
        out
    };
    let m_class = TPoly::monomial(&ctx, 0, &[("M", 1)], rat_int(1));
    let m_plus_v = m_class.add(&TPoly::monomial(&ctx, 0, &[("v", 1)], rat_int(1)));
    let total = subst(&report.locus1, &m_class, &m_plus_v)
        .add(&subst(&report.locus2, &m_class, &m_plus_v))
        .add(&subst(&report.locus3, &m_class, &m_plus_v));
    assert!(total.is_zero(), "the self-dual toy sum must cancel: {}", total.render(&ctx));
}

#[test]
fn locus_three_series_shape() {
    // the pre-residue convolution for a rank-1 class with nilpotent root θ:
    // entry p^j carries z^j · (z^{-1} - θ z^{-2} + θ² z^{-3} - ...), so slot
    // p^j has residue (-θ)^j — the translation corrections the quotient kills
    let ctx = ToyCtx::new(vec![("th".into(), 4), ("v".into(), 1)]);
    let line = TPoly::monomial(&ctx, 1, &[], Rat::one())
        .add(&TPoly::monomial(&ctx, 0, &[("th", 1)], Rat::one()));
    let x = TPoly::monomial(&ctx, 0, &[("v", 1)], Rat::one()).mul(&ctx, &line.inv(&ctx).unwrap());
    let ps = ezt_convolve(&ctx, &x, 3);
    for j in 0..=3u32 {
        let res = ps[&j].z_coefficient(-1);
        let sign = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        let expect = TPoly::monomial(&ctx, -1, &[("th", j), ("v", 1)], sign);
        assert_eq!(res, expect.z_coefficient(-1), "slot p^{j}");
    }
}
