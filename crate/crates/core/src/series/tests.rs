use super::*;
use crate::num::{rat, rat_int};

fn ctx1(order: i64) -> SeriesCtx {
    SeriesCtx::new(&["l"], &["x1", "x2", "x3"], order)
}

fn wv(ctx: &SeriesCtx, z: i64, lambdas: &[i64]) -> WeightVector {
    assert_eq!(lambdas.len(), ctx.lambdas.len());
    WeightVector { z, lambdas: lambdas.to_vec() }
}

fn rf_const(ctx: &SeriesCtx, c: Rat) -> RatFunc {
    RatFunc::constant(ctx.lambdas.len(), c)
}

#[test]
fn expand_power_local_coefficients() {
    let ctx = ctx1(10);
    let s = expand_power(&ctx, &[1], 1, Regime::Local).unwrap();
    // λ^{-1}(1 - z/λ + z²/λ² - ...)
    let lam = MPoly::var(1, 0);
    for i in 0..=10i64 {
        let mut expect = rf_const(&ctx, if i % 2 == 0 { rat_int(1) } else { rat_int(-1) });
        for _ in 0..=(i as usize) {
            expect = expect.div_poly(&lam).unwrap();
        }
        let c = s.coefficient(i);
        assert_eq!(c.get(&vec![0u32, 0, 0]).cloned().unwrap(), expect, "z^{i} coefficient");
    }
    // k = 2: coefficient of z^1 is -2/λ³
    let s2 = expand_power(&ctx, &[1], 2, Regime::Local).unwrap();
    let mut want = rf_const(&ctx, rat_int(-2));
    for _ in 0..3 {
        want = want.div_poly(&lam).unwrap();
    }
    assert_eq!(s2.coefficient(1).get(&vec![0u32, 0, 0]).cloned().unwrap(), want);
}

#[test]
fn expand_power_global_mirror() {
    let ctx = ctx1(10);
    let s = expand_power(&ctx, &[1], 1, Regime::Global).unwrap();
    // z^{-1}(1 - λ/z + λ²/z² - ...)
    let lam = MPoly::var(1, 0);
    for i in 1..=10u32 {
        let want = RatFunc::from_poly(lam.pow(i - 1))
            .scale(&if (i - 1) % 2 == 0 { rat_int(1) } else { rat_int(-1) });
        assert_eq!(
            s.coefficient(-(i as i64)).get(&vec![0u32, 0, 0]).cloned().unwrap(),
            want
        );
    }
}

#[test]
fn expansions_match_series_inversion() {
    // brute-force oracle: invert (λ+z)^k directly with the generic series
    // inverse and compare against the closed-form expansion, both regimes
    let ctx = ctx1(10);
    for k in 1..=3u32 {
        for regime in [Regime::Local, Regime::Global] {
            let line = {
                let mut s = LaurentSeries::zero(&ctx, regime);
                s.set(&ctx, 1, &[], rf_const(&ctx, rat_int(1)));
                s.set(&ctx, 0, &[], RatFunc::from_poly(MPoly::var(1, 0)));
                s
            };
            let mut pow = LaurentSeries::one(&ctx, regime);
            for _ in 0..k {
                pow = pow.mul(&ctx, &line).unwrap();
            }
            let oracle = pow.inv(&ctx).unwrap();
            let closed = expand_power(&ctx, &[1], k, regime).unwrap();
            assert_eq!(oracle, closed, "k = {k}, {regime}");
        }
    }
}

#[test]
fn regime_consistency_multiply_back() {
    let ctx = ctx1(12);
    for k in 1..=3u32 {
        for regime in [Regime::Local, Regime::Global] {
            let s = expand_power(&ctx, &[1], k, regime).unwrap();
            let mut back = s;
            let line = {
                let mut l = LaurentSeries::zero(&ctx, regime);
                l.set(&ctx, 1, &[], rf_const(&ctx, rat_int(1)));
                l.set(&ctx, 0, &[], RatFunc::from_poly(MPoly::var(1, 0)));
                l
            };
            for _ in 0..k {
                back = back.mul(&ctx, &line).unwrap();
            }
            assert_eq!(back, LaurentSeries::one(&ctx, regime), "k = {k}, {regime}");
        }
    }
}

#[test]
fn total_chern_of_roots() {
    let ctx = ctx1(8);
    // rank-2 bundle with roots x1, x2: (z + x1)(z + x2)
    let class = EqKClass {
        terms: vec![KTerm {
            mult: 1,
            weight: wv(&ctx, 0, &[0]),
            rank: 2,
            roots: vec!["x1".into(), "x2".into()],
        }],
    };
    let s = total_chern(&ctx, &class, Regime::Local).unwrap();
    let mut expect = LaurentSeries::zero(&ctx, Regime::Local);
    expect.set(&ctx, 2, &[], rf_const(&ctx, rat_int(1)));
    expect.set(&ctx, 1, &[(0, 1)], rf_const(&ctx, rat_int(1)));
    expect.set(&ctx, 1, &[(1, 1)], rf_const(&ctx, rat_int(1)));
    expect.set(&ctx, 0, &[(0, 1), (1, 1)], rf_const(&ctx, rat_int(1)));
    assert_eq!(s, expect);
    // trivial rank-0 class
    let s0 = total_chern(&ctx, &EqKClass::default(), Regime::Local).unwrap();
    assert_eq!(s0, LaurentSeries::one(&ctx, Regime::Local));
}

#[test]
fn total_chern_whitney() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(23);
    let ctx = ctx1(8);
    for _ in 0..10 {
        let mk = |rng: &mut rand::rngs::StdRng| -> EqKClass {
            EqKClass {
                terms: vec![KTerm {
                    mult: 1,
                    weight: WeightVector { z: 0, lambdas: vec![rng.gen_range(-2..=2)] },
                    rank: rng.gen_range(1..=2),
                    roots: vec![],
                }],
            }
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let sum = EqKClass { terms: a.terms.iter().chain(&b.terms).cloned().collect() };
        let ca = total_chern(&ctx, &a, Regime::Local).unwrap();
        let cb = total_chern(&ctx, &b, Regime::Local).unwrap();
        let cs = total_chern(&ctx, &sum, Regime::Local).unwrap();
        assert_eq!(cs, ca.mul(&ctx, &cb).unwrap());
    }
}

#[test]
fn negative_line_inverts() {
    let ctx = ctx1(9);
    // -L for a line with root weight λ: expansion of 1/(z+λ)
    let class = EqKClass {
        terms: vec![KTerm { mult: -1, weight: wv(&ctx, 0, &[1]), rank: 1, roots: vec![] }],
    };
    for regime in [Regime::Local, Regime::Global] {
        let s = total_chern(&ctx, &class, regime).unwrap();
        let line = {
            let mut l = LaurentSeries::zero(&ctx, regime);
            l.set(&ctx, 1, &[], rf_const(&ctx, rat_int(1)));
            l.set(&ctx, 0, &[], RatFunc::from_poly(MPoly::var(1, 0)));
            l
        };
        assert_eq!(s.mul(&ctx, &line).unwrap(), LaurentSeries::one(&ctx, regime));
    }
    // a weight-zero line cannot be inverted in the local regime
    let nil = EqKClass {
        terms: vec![KTerm {
            mult: -1,
            weight: wv(&ctx, 0, &[0]),
            rank: 1,
            roots: vec!["x1".into()],
        }],
    };
    assert!(total_chern(&ctx, &nil, Regime::Local).is_err());
}

#[test]
fn residues() {
    let ctx = ctx1(9);
    // residue of z^{-1} is 1
    let mut s = LaurentSeries::zero(&ctx, Regime::Global);
    s.set(&ctx, -1, &[], rf_const(&ctx, rat_int(1)));
    assert_eq!(s.residue().get(&vec![0u32, 0, 0]).cloned().unwrap(), rf_const(&ctx, rat_int(1)));
    // 1/(z+λ): residue 1 globally, 0 locally
    let class = EqKClass {
        terms: vec![KTerm { mult: -1, weight: wv(&ctx, 0, &[1]), rank: 1, roots: vec![] }],
    };
    let g = total_chern(&ctx, &class, Regime::Global).unwrap();
    assert_eq!(g.residue().get(&vec![0u32, 0, 0]).cloned().unwrap(), rf_const(&ctx, rat_int(1)));
    let l = total_chern(&ctx, &class, Regime::Local).unwrap();
    assert!(l.residue().is_empty());
}

#[test]
fn local_residues_of_lambda_poles_vanish() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(31);
    let ctx = SeriesCtx::new(&["l1", "l2"], &[], 10);
    for _ in 0..8 {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let mut lam = vec![0i64; 2];
            while lam.iter().all(|&x| x == 0) {
                lam = vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
            }
            terms.push(KTerm {
                mult: -(rng.gen_range(1..=2)),
                weight: WeightVector { z: 0, lambdas: lam },
                rank: 1,
                roots: vec![],
            });
        }
        let s = total_chern(&ctx, &EqKClass { terms }, Regime::Local).unwrap();
        assert!(s.residue().is_empty(), "local expansions have no z^{{-1}} term");
    }
}

#[test]
fn sqrt_euler_identity() {
    let ctx = SeriesCtx::new(&["l1", "l2"], &[], 8);
    let empty = EqKClass::default();
    assert!(sqrt_euler_check(&ctx, &empty, &empty, &empty, Regime::Local).unwrap());

    // single line in T≥ with weight a: both sides z + a
    let single = EqKClass {
        terms: vec![KTerm { mult: 1, weight: WeightVector { z: 0, lambdas: vec![1, 0] }, rank: 1, roots: vec![] }],
    };
    assert!(sqrt_euler_check(&ctx, &single, &empty, &empty, Regime::Local).unwrap());

    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(47);
    for _ in 0..6 {
        let mut mk = |max_rank: u32| -> EqKClass {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(0..=max_rank) {
                let mut lam = vec![0i64; 2];
                while lam.iter().all(|&x| x == 0) {
                    lam = vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
                }
                terms.push(KTerm {
                    mult: 1,
                    weight: WeightVector { z: 0, lambdas: lam },
                    rank: 1,
                    roots: vec![],
                });
            }
            EqKClass { terms }
        };
        let t_ge = mk(3);
        let t_le = mk(3);
        let e_ge = mk(3);
        for regime in [Regime::Local, Regime::Global] {
            assert!(
                sqrt_euler_check(&ctx, &t_ge, &t_le, &e_ge, regime).unwrap(),
                "square-root Euler identity fails in {regime}"
            );
        }
    }
}

#[test]
fn localization_multipliers() {
    let ctx = ctx1(8);
    // empty normal bundle leaves the class unchanged
    let id = localize(&ctx, &EqKClass::default(), Regime::Global).unwrap();
    assert_eq!(id, LaurentSeries::one(&ctx, Regime::Global));

    // single line of z-weight 1 with nilpotent root: 1/(z + x1)
    let n = EqKClass {
        terms: vec![KTerm {
            mult: 1,
            weight: wv(&ctx, 1, &[0]),
            rank: 1,
            roots: vec!["x1".into()],
        }],
    };
    let s = localize(&ctx, &n, Regime::Global).unwrap();
    let mut line = LaurentSeries::zero(&ctx, Regime::Global);
    line.set(&ctx, 1, &[], rf_const(&ctx, rat_int(1)));
    line.set(&ctx, 0, &[(0, 1)], rf_const(&ctx, rat_int(1)));
    assert_eq!(s.mul(&ctx, &line).unwrap(), LaurentSeries::one(&ctx, Regime::Global));
    // the nilpotent collapse: [z^{-1}]{1/(z(1+z^{-1}B))} = 1
    assert_eq!(
        s.residue().get(&vec![0u32, 0, 0]).cloned().unwrap(),
        rf_const(&ctx, rat_int(1))
    );

    // weight-zero summand is rejected
    let bad = EqKClass {
        terms: vec![KTerm { mult: 1, weight: wv(&ctx, 0, &[0]), rank: 1, roots: vec!["x1".into()] }],
    };
    assert!(localize(&ctx, &bad, Regime::Global).is_err());

    // two-torus: λ1-line ⊕ λ2-line gives 1/(λ1 λ2)
    let ctx2 = SeriesCtx::new(&["l1", "l2"], &[], 8);
    let n2 = EqKClass {
        terms: vec![
            KTerm { mult: 1, weight: WeightVector { z: 0, lambdas: vec![1, 0] }, rank: 1, roots: vec![] },
            KTerm { mult: 1, weight: WeightVector { z: 0, lambdas: vec![0, 1] }, rank: 1, roots: vec![] },
        ],
    };
    let s2 = localize(&ctx2, &n2, Regime::Global).unwrap();
    let want = RatFunc::one(2)
        .div_poly(&MPoly::var(2, 0))
        .unwrap()
        .div_poly(&MPoly::var(2, 1))
        .unwrap();
    assert_eq!(s2.coefficient(0).get(&Vec::<u32>::new()).cloned().unwrap(), want);
}

#[test]
fn global_residue_assumption() {
    let ctx = ctx1(10);
    // single weight: residue of 1/(z+λ) is 1, so the check fails
    let single = EqKClass {
        terms: vec![KTerm { mult: 1, weight: wv(&ctx, 0, &[1]), rank: 1, roots: vec![] }],
    };
    assert!(!global_residue_check(&ctx, &single).unwrap());
    // self-dual pair ±λ: 1/(z²-λ²) is even in z, residue 0
    let pair = EqKClass {
        terms: vec![
            KTerm { mult: 1, weight: wv(&ctx, 0, &[1]), rank: 1, roots: vec![] },
            KTerm { mult: 1, weight: wv(&ctx, 0, &[-1]), rank: 1, roots: vec![] },
        ],
    };
    assert!(global_residue_check(&ctx, &pair).unwrap());
    // empty class: residue of 1 is 0
    assert!(global_residue_check(&ctx, &EqKClass::default()).unwrap());
    // weight-zero input is invalid
    let bad = EqKClass {
        terms: vec![KTerm { mult: 1, weight: wv(&ctx, 0, &[0]), rank: 1, roots: vec![] }],
    };
    assert!(global_residue_check(&ctx, &bad).is_err());
}

#[test]
fn series_rendering_is_sorted() {
    let ctx = ctx1(5);
    let class = EqKClass {
        terms: vec![KTerm { mult: -1, weight: wv(&ctx, 0, &[1]), rank: 1, roots: vec![] }],
    };
    let s = total_chern(&ctx, &class, Regime::Local).unwrap();
    let text = s.render(&ctx);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("z^0:"));
    assert!(lines[1].starts_with("z^1:"));
    let again = total_chern(&ctx, &class, Regime::Local).unwrap().render(&ctx);
    assert_eq!(text, again, "rendering is deterministic");
    let _ = rat(1, 2);
}

#[test]
fn localize_general_matches_localize() {
    let ctx = SeriesCtx::new(&["l1", "l2"], &[], 8);
    let n = EqKClass {
        terms: vec![
            KTerm { mult: 1, weight: WeightVector { z: 0, lambdas: vec![1, 0] }, rank: 1, roots: vec![] },
            KTerm { mult: 1, weight: WeightVector { z: 0, lambdas: vec![-1, 2] }, rank: 1, roots: vec![] },
        ],
    };
    let a = localize(&ctx, &n, Regime::Global).unwrap();
    let b = localize_general(&ctx, &n, Regime::Global).unwrap();
    assert_eq!(a, b);
}

#[test]
fn sqrt_euler_with_nilpotent_roots() {
    // the identity also holds when the resolution pieces carry formal
    // Chern-root symbols on top of their weights
    let ctx = SeriesCtx::new(&["l1", "l2"], &["x1", "x2", "x3"], 8);
    let line = |l: &[i64; 2], root: Option<&str>| KTerm {
        mult: 1,
        weight: WeightVector { z: 0, lambdas: l.to_vec() },
        rank: 1,
        roots: root.map(|r| vec![r.to_string()]).unwrap_or_default(),
    };
    let t_ge = EqKClass { terms: vec![line(&[1, 0], Some("x1")), line(&[0, 2], None)] };
    let t_le = EqKClass { terms: vec![line(&[-1, 1], Some("x2"))] };
    let e_ge = EqKClass { terms: vec![line(&[2, -1], Some("x3"))] };
    for regime in [Regime::Local, Regime::Global] {
        assert!(
            sqrt_euler_check(&ctx, &t_ge, &t_le, &e_ge, regime).unwrap(),
            "nilpotent-root identity fails in {regime}"
        );
    }
}
