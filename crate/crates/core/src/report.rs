//! The verification suites behind `cy4 verify` and the acceptance tests: one
//! deterministic pass/fail row per check, with witnesses on failure.

use crate::error::{CoreError, Result};
use crate::num::{rat_int, Gaussian, Rat};
use crate::presets::*;
use crate::quiver::{cy4_complete, double, graft, master_bracket, CyclicElement, Frame, Path};
use crate::rep::*;
use crate::series::*;
use crate::signs;
use crate::toy;
use crate::wc;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "[{status}] {}::{}", self.suite, c.id);
            if !c.passed && !c.witness.is_empty() {
                for line in c.witness.lines() {
                    let _ = writeln!(out, "       {line}");
                }
            }
        }
        out
    }
}

/// Deterministic pseudo-random stream (SplitMix64) so that reports are
/// byte-stable for a fixed seed.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }
}

struct SuiteBuilder {
    report: RunReport,
}

impl SuiteBuilder {
    fn new(suite: &str) -> Self {
        SuiteBuilder { report: RunReport { suite: suite.to_string(), checks: Vec::new() } }
    }

    fn check(&mut self, id: &str, run: impl FnOnce() -> std::result::Result<(), String>) {
        let (passed, witness) = match run() {
            Ok(()) => (true, String::new()),
            Err(w) => (false, w),
        };
        self.report.checks.push(CheckResult { id: id.to_string(), passed, witness });
    }

    fn finish(self) -> RunReport {
        self.report
    }
}

fn expect(cond: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn err_str<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn suite_quiver() -> RunReport {
    let mut b = SuiteBuilder::new("quiver");
    let elem = |terms: &[(i64, &[&str])]| {
        let mut a = crate::quiver::AlgebraElement::zero();
        for (c, w) in terms {
            a.add_term(Path::word(w.iter().map(|s| s.to_string()).collect()), rat_int(*c));
        }
        a
    };
    b.check("worked-differentials-cycle", || {
        let cy = err_str(four_cycle_cy4())?;
        let cases = [
            ("rho1", elem(&[(-1, &["e4", "e1"] as &[&str])])),
            ("rho1*", elem(&[(1, &["e2", "e3"])])),
            ("e1*", elem(&[(1, &["rho1*", "e4"]), (-1, &["e2", "rho2*"])])),
        ];
        for (g, want) in cases {
            let got = err_str(cy.differential(g))?.clone();
            expect(got == want, || format!("d({g}) = {}", got.render()))?;
        }
        Ok(())
    });
    b.check("worked-differentials-commutators", || {
        let cy = err_str(c4_cy4())?;
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            let g = format!("c{i}{j}");
            let (xi, xj) = (format!("x{i}"), format!("x{j}"));
            let want = elem(&[(1, &[xj.as_str(), xi.as_str()]), (-1, &[xi.as_str(), xj.as_str()])]);
            let got = err_str(cy.differential(&g))?.clone();
            expect(got == want, || format!("d({g}) = {}", got.render()))?;
        }
        Ok(())
    });
    b.check("master-equation-and-dga", || {
        for (name, cy) in [
            ("cycle", err_str(four_cycle_cy4())?),
            ("affine-4-space", err_str(c4_cy4())?),
            ("point", err_str(point_cy4())?),
        ] {
            let res = err_str(cy.master_residue())?;
            expect(res.is_zero(), || format!("{name}: master residue {}", res.render()))?;
            let w = err_str(cy.verify_dga())?;
            expect(w.is_none(), || {
                let w = w.unwrap();
                format!("{name}: d² ≠ 0 at {}: {}", w.generator, w.value.render())
            })?;
        }
        Ok(())
    });
    b.check("grafted-quivers", || {
        for cy in [err_str(four_cycle_cy4())?, err_str(c4_cy4())?] {
            let mut frames = vec![Frame::Js, Frame::Ms { r: 4, l: 2 }];
            for r in 3..=5 {
                frames.push(Frame::Flag { r });
            }
            for frame in frames {
                let g = err_str(graft(&cy, frame))?;
                let res = err_str(g.master_residue())?;
                expect(res.is_zero(), || format!("{frame:?}: master residue nonzero"))?;
                let w = err_str(g.verify_dga())?;
                expect(w.is_none(), || format!("{frame:?}: d² ≠ 0"))?;
            }
        }
        Ok(())
    });
    b.check("deleting-any-term-breaks", || {
        for builder in [four_cycle_quiver, c4_quiver] {
            let (q, h) = err_str(builder())?;
            let doubled = err_str(double(&q))?;
            let words: Vec<(Vec<String>, Rat)> =
                h.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
            for skip in 0..words.len() {
                let mut broken = CyclicElement::zero();
                for (i, (word, c)) in words.iter().enumerate() {
                    if i != skip {
                        err_str(broken.add_word(&doubled, word, c))?;
                    }
                }
                let master_ok = err_str(master_bracket(&doubled, &broken))?.is_zero();
                let dga_ok = match cy4_complete(&q, &broken) {
                    Ok(cy) => err_str(cy.verify_dga())?.is_none(),
                    Err(_) => false,
                };
                expect(!(master_ok && dga_ok), || {
                    format!("deleting `{}` left all checks green", words[skip].0.join(";"))
                })?;
            }
        }
        Ok(())
    });
    b.finish()
}

pub fn suite_rep(seed: u64) -> RunReport {
    let mut b = SuiteBuilder::new("rep");
    b.check("euler-symmetry-evenness", || {
        let mut rng = Rng::new(seed);
        for cy in [
            err_str(four_cycle_cy4())?,
            err_str(c4_cy4())?,
            err_str(point_cy4())?,
        ] {
            let verts: Vec<String> = cy.quiver().vertices().cloned().collect();
            for _ in 0..30 {
                let d: DimVector =
                    verts.iter().map(|v| (v.clone(), rng.range(0, 5) as usize)).collect();
                let e: DimVector =
                    verts.iter().map(|v| (v.clone(), rng.range(0, 5) as usize)).collect();
                let de = euler_form(&cy, &d, &e);
                expect(de == euler_form(&cy, &e, &d), || "χ not symmetric".to_string())?;
                expect(euler_form(&cy, &d, &d) % 2 == 0, || "χ(d,d) odd".to_string())?;
            }
        }
        Ok(())
    });
    b.check("euler-c4-vanishes", || {
        let cy = err_str(c4_cy4())?;
        for n in 0..=5 {
            for m in 0..=5 {
                let d: DimVector = [("v".to_string(), n)].into_iter().collect();
                let e: DimVector = [("v".to_string(), m)].into_iter().collect();
                expect(euler_form(&cy, &d, &e) == 0, || format!("χ({n},{m}) ≠ 0"))?;
            }
        }
        Ok(())
    });
    b.check("euler-point-quiver", || {
        let cy = err_str(point_cy4())?;
        for n in 0..=5i64 {
            for m in 0..=5i64 {
                let d: DimVector = [("v".to_string(), n as usize)].into_iter().collect();
                let e: DimVector = [("v".to_string(), m as usize)].into_iter().collect();
                expect(euler_form(&cy, &d, &e) == 2 * n * m, || {
                    format!("χ({n},{m}) ≠ 2·{n}·{m}")
                })?;
            }
        }
        Ok(())
    });
    b.check("ext-delta-squared-euler", || {
        let mut rng = Rng::new(seed ^ 0x51);
        let cy = err_str(four_cycle_cy4())?;
        let verts: Vec<String> = cy.quiver().vertices().cloned().collect();
        for _ in 0..5 {
            let d: DimVector =
                verts.iter().map(|v| (v.clone(), rng.range(0, 3) as usize)).collect();
            let mut rep = Representation::zero(&cy, d.clone());
            for name in ["e2", "e4"] {
                let e = cy.quiver().edge(name).unwrap();
                let (r, c) = (rep.dim(&e.head), rep.dim(&e.tail));
                let mut m = QMat::zero(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m[(i, j)] = rat_int(rng.range(-3, 3));
                    }
                }
                rep.mats.insert(name.to_string(), m);
            }
            let ext = err_str(ext_complex(&cy, &rep))?;
            expect(ext.is_complex(), || "δ² ≠ 0".to_string())?;
            expect(ext.euler_characteristic() == euler_form(&cy, &d, &d), || {
                "Σ(-1)^i dim C^i ≠ χ(d,d)".to_string()
            })?;
        }
        Ok(())
    });
    b.check("ext-hilb1-tangent", || {
        let g = err_str(graft(&err_str(c4_cy4())?, Frame::Js))?;
        let fixed = err_str(monomial_fixed_points(1, 8))?;
        let rep = c4_framed_representation(&fixed[0].to_framed_rep());
        let ext = err_str(ext_complex(&g, &rep))?;
        let dims = ext.ext_dims();
        expect(dims == [1, 4, 6, 4, 1], || format!("Ext dims {dims:?}"))
    });
    b.check("ext-serre-duality", || {
        let g = err_str(graft(&err_str(c4_cy4())?, Frame::Js))?;
        for n in 1..=4usize {
            for s in err_str(monomial_fixed_points(n, 8))? {
                let rep = c4_framed_representation(&s.to_framed_rep());
                let ext = err_str(ext_complex(&g, &rep))?;
                expect(ext.is_complex(), || format!("δ² ≠ 0 at n = {n}"))?;
                let d = ext.ext_dims();
                for i in 0..5 {
                    expect(d[i] == d[4 - i], || format!("n = {n}: Ext dims {d:?}"))?;
                }
            }
        }
        Ok(())
    });
    b.check("fixed-point-counts", || {
        let expected = [1usize, 4, 10, 26, 59, 140];
        let oracle = order_ideal_counts_oracle(6);
        expect(oracle == expected, || format!("oracle counts {oracle:?}"))?;
        for (n, want) in expected.iter().enumerate() {
            let list = err_str(monomial_fixed_points(n + 1, 8))?;
            expect(list.len() == *want, || {
                format!("n = {}: enumerator found {}", n + 1, list.len())
            })?;
            for s in &list {
                let rep = s.to_framed_rep();
                expect(is_cyclic(&rep), || format!("non-cyclic fixed point at n = {}", n + 1))?;
                for i in 0..4 {
                    for j in i + 1..4 {
                        expect(rep.xs[i].mul(&rep.xs[j]) == rep.xs[j].mul(&rep.xs[i]), || {
                            "operators do not commute".to_string()
                        })?;
                    }
                }
            }
        }
        Ok(())
    });
    b.finish()
}

pub fn suite_signs() -> RunReport {
    let mut b = SuiteBuilder::new("signs");
    b.check("pentagon", || {
        for u in 0..=4 {
            for v in 0..=4 {
                expect(err_str(signs::verify_pentagon(u, v))?, || {
                    format!("pentagon fails at ranks ({u}, {v})")
                })?;
            }
        }
        Ok(())
    });
    b.check("double-dual-discrepancy", || {
        for r in 0..=4u32 {
            let want = Gaussian::sign(if r % 2 == 0 { 1 } else { -1 });
            let got = err_str(signs::double_dual_discrepancy(r))?;
            expect(got == want, || format!("|L| = {r}: got {got}"))?;
        }
        Ok(())
    });
    b.check("dual-orientation-ratio", || {
        for n in 0..=4u32 {
            let want = Gaussian::sign(if n % 2 == 0 { 1 } else { -1 });
            let got = err_str(signs::orientation_dual_ratio(n))?;
            expect(got == want, || format!("Rk V = {n}: got {got}"))?;
        }
        Ok(())
    });
    b.check("orientation-condition", || {
        for n in 0..=4u32 {
            let o = err_str(signs::induced_orientation("V", n))?;
            expect(err_str(o.satisfies_eor())?, || format!("o_V fails at n = {n}"))?;
        }
        let o1 = err_str(signs::induced_orientation("V", 2))?;
        let o2 = err_str(signs::induced_orientation("W", 2))?;
        let p = err_str(signs::orientation_product(&o1, &o2))?;
        expect(err_str(p.satisfies_eor())?, || "product orientation fails".to_string())
    });
    b.check("ot-comparison", || {
        for p in 0..=3u32 {
            for q in 0..=3u32 {
                for m in 0..=3u32 {
                    let want = Gaussian::sign(if (q + m) % 2 == 0 { 1 } else { -1 });
                    let got = err_str(signs::ot_comparison(p, q, m))?;
                    expect(got == want, || format!("ranks ({p},{q},{m}): got {got}"))?;
                }
            }
        }
        Ok(())
    });
    b.finish()
}

pub fn suite_series(seed: u64) -> RunReport {
    let mut b = SuiteBuilder::new("series");
    b.check("explicit-expansion-vs-inversion", || {
        let ctx = SeriesCtx::new(&["l"], &[], 10);
        for k in 1..=3u32 {
            for regime in [Regime::Local, Regime::Global] {
                let mut line = LaurentSeries::zero(&ctx, regime);
                line.set(&ctx, 1, &[], RatFunc::constant(1, Rat::one()));
                line.set(&ctx, 0, &[], RatFunc::from_poly(MPoly::var(1, 0)));
                let mut pow = LaurentSeries::one(&ctx, regime);
                for _ in 0..k {
                    pow = err_str(pow.mul(&ctx, &line))?;
                }
                let oracle = err_str(pow.inv(&ctx))?;
                let closed = err_str(expand_power(&ctx, &[1], k, regime))?;
                expect(oracle == closed, || format!("k = {k}, {regime}"))?;
            }
        }
        Ok(())
    });
    b.check("sqrt-euler-identity", || {
        let ctx = SeriesCtx::new(&["l1", "l2"], &[], 8);
        let mut rng = Rng::new(seed ^ 0xA1);
        for _ in 0..6 {
            let mut mk = |max: i64| -> EqKClass {
                let mut terms = Vec::new();
                for _ in 0..rng.range(0, max) {
                    let mut lam = vec![0i64; 2];
                    while lam.iter().all(|&x| x == 0) {
                        lam = vec![rng.range(-3, 3), rng.range(-3, 3)];
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
            let (t_ge, t_le, e_ge) = (mk(3), mk(3), mk(3));
            for regime in [Regime::Local, Regime::Global] {
                expect(err_str(sqrt_euler_check(&ctx, &t_ge, &t_le, &e_ge, regime))?, || {
                    format!("√e identity fails in {regime}")
                })?;
            }
        }
        Ok(())
    });
    b.check("local-residues-vanish", || {
        let ctx = SeriesCtx::new(&["l1", "l2"], &[], 10);
        let mut rng = Rng::new(seed ^ 0xB2);
        for _ in 0..8 {
            let mut terms = Vec::new();
            for _ in 0..rng.range(1, 3) {
                let mut lam = vec![0i64; 2];
                while lam.iter().all(|&x| x == 0) {
                    lam = vec![rng.range(-2, 2), rng.range(-2, 2)];
                }
                terms.push(KTerm {
                    mult: -rng.range(1, 2),
                    weight: WeightVector { z: 0, lambdas: lam },
                    rank: 1,
                    roots: vec![],
                });
            }
            let s = err_str(total_chern(&ctx, &EqKClass { terms }, Regime::Local))?;
            expect(s.residue().is_empty(), || "local λ-pole has a z^{-1} term".to_string())?;
        }
        Ok(())
    });
    b.check("global-residue-predicate", || {
        let ctx = SeriesCtx::new(&["l"], &[], 10);
        let line = |n: i64| KTerm {
            mult: 1,
            weight: WeightVector { z: 0, lambdas: vec![n] },
            rank: 1,
            roots: vec![],
        };
        let single = EqKClass { terms: vec![line(1)] };
        expect(!err_str(global_residue_check(&ctx, &single))?, || {
            "single-weight residue should not vanish".to_string()
        })?;
        let pair = EqKClass { terms: vec![line(1), line(-1)] };
        expect(err_str(global_residue_check(&ctx, &pair))?, || {
            "self-dual ±λ residue should vanish".to_string()
        })?;
        expect(err_str(global_residue_check(&ctx, &EqKClass::default()))?, || {
            "trivial class residue should vanish".to_string()
        })
    });
    b.finish()
}

pub fn suite_wc(seed: u64) -> RunReport {
    let mut b = SuiteBuilder::new("wc");
    b.check("epsilon-cocycle-symsign", || {
        let chi = vec![vec![2, 3, 0], vec![3, -4, 1], vec![0, 1, 0]];
        let eps = err_str(wc::EpsilonSystem::from_symmetric_euler(&chi))?;
        let mut rng = Rng::new(seed ^ 0xC3);
        for _ in 0..1000 {
            let mut v = || -> Vec<i64> { (0..3).map(|_| rng.range(-4, 4)).collect() };
            let (a, bb, c) = (v(), v(), v());
            expect(eps.cocycle_holds(&a, &bb, &c), || "cocycle identity fails".to_string())?;
            expect(eps.symsign_holds(&chi, &a, &bb), || "symmetry sign fails".to_string())?;
        }
        Ok(())
    });
    b.check("js-round-trip", || {
        for chis in [vec![2i64], vec![2, 3], vec![1, 2, 3]] {
            let max_rk = if chis.len() == 3 { 3 } else { 4 };
            let table = saturated_class_table(&chis, max_rk);
            let omegas: BTreeMap<String, wc::LieExpr> = table
                .classes
                .iter()
                .map(|c| (c.name.clone(), wc::LieExpr::gen(&c.gen_name())))
                .collect();
            let mut values = BTreeMap::new();
            for class in &table.classes {
                values
                    .insert(class.name.clone(), err_str(wc::invert_js(&table, &class.vector, &omegas))?);
            }
            for class in &table.classes {
                let js = err_str(wc::js_rhs(&table, &class.vector, &values))?;
                let pushed = err_str(wc::omega_transform(&table, &js))?;
                let expected =
                    wc::LieExpr::gen(&class.gen_name()).scale(&rat_int(class.chi_k));
                expect(pushed == expected, || {
                    format!("round trip at class {}: {}", class.name, pushed.render())
                })?;
            }
        }
        Ok(())
    });
    b.check("exp-adjoint-order-4", || {
        let mut gens = wc::QSeries::new(4);
        for n in 1..=4u32 {
            gens.set(n, wc::LieExpr::gen(&format!("M{n}")));
        }
        let mut pt = wc::QSeries::new(4);
        for n in 0..=4u32 {
            pt.set(n, wc::LieExpr::gen(&format!("PT{n}")));
        }
        let dt = err_str(wc::exp_adjoint(&gens, &pt))?;
        let back = err_str(wc::wc_invert(&gens, &dt))?;
        expect(back == pt, || "DT/PT inversion fails to order 4".to_string())?;
        // the Hilbert-scheme series to order 4 round trips off the vacuum
        let mut vac = wc::QSeries::new(4);
        vac.set(0, wc::LieExpr::gen(wc::POINT_CLASS));
        let hilb = err_str(wc::exp_adjoint(&gens, &vac))?;
        expect(
            hilb.coefficient(1)
                == wc::LieExpr::gen("M1").bracket(&wc::LieExpr::gen(wc::POINT_CLASS)),
            || "Hilbert series coefficient q^1".to_string(),
        )?;
        let back = err_str(wc::wc_invert(&gens, &hilb))?;
        expect(back == vac, || "Hilbert series inversion fails".to_string())
    });
    b.check("flag-binomial-weights", || {
        let o1 = wc::LieExpr::gen("O1");
        let o2 = wc::LieExpr::gen("O2");
        let half = err_str(wc::flag_wc_rhs(2, &[(1, o1.clone(), 1, o2.clone())]))?;
        expect(half == o1.bracket(&o2).scale(&crate::num::rat(1, 2)), || {
            "C(2,1)^{-1} weight".to_string()
        })?;
        let third = err_str(wc::flag_wc_rhs(3, &[(1, o1.clone(), 2, o2.clone())]))?;
        expect(third == o1.bracket(&o2).scale(&crate::num::rat(1, 3)), || {
            "C(3,1)^{-1} weight".to_string()
        })?;
        expect(wc::flag_wc_rhs(3, &[(1, o1, 1, o2)]).is_err(), || {
            "χ additivity violation must be rejected".to_string()
        })
    });
    b.finish()
}

/// One-phase table over base classes with the given framed Euler numbers,
/// listing every effective class of rank at most `max_rk`.
pub fn saturated_class_table(chis: &[i64], max_rk: i64) -> wc::ClassTable {
    let dim = chis.len();
    let mut classes = Vec::new();
    let mut stack = vec![vec![0i64; dim]];
    let mut seen = std::collections::BTreeSet::new();
    while let Some(v) = stack.pop() {
        let total: i64 = v.iter().sum();
        if total > 0 && seen.insert(v.clone()) {
            let chi_k: i64 = v.iter().zip(chis).map(|(a, c)| a * c).sum();
            let name = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("");
            classes.push(wc::ClassInfo {
                name,
                vector: v.clone(),
                chi_k,
                phase: crate::num::rat(1, 2),
            });
        }
        if total < max_rk {
            for i in 0..dim {
                let mut next = v.clone();
                next[i] += 1;
                stack.push(next);
            }
        }
    }
    classes.sort_by(|a, b| a.vector.cmp(&b.vector));
    wc::ClassTable { dim, rk_weights: vec![1; dim], classes }
}

pub fn suite_toy(seed: u64) -> RunReport {
    let mut b = SuiteBuilder::new("toy");
    b.check("pushforward-vs-splitting-oracle", || {
        let mut rng = Rng::new(seed ^ 0xD4);
        for r in 1..=4usize {
            let m = err_str(toy::ProjBundleModel::new(r, (r + 2) as u32))?;
            let mut roots: Vec<i64> = Vec::new();
            while roots.len() < r {
                let t = rng.range(-6, 6);
                if !roots.contains(&t) {
                    roots.push(t);
                }
            }
            for deg in 0..=(r as u32 + 2) {
                let formal = m.pushforward(&m.h_power(deg));
                let value = toy::evaluate_at_roots(&m, &formal, &roots);
                let oracle = err_str(toy::pushforward_numeric_oracle(&roots, deg))?;
                expect(value == oracle, || format!("rank {r}, h^{deg}, roots {roots:?}"))?;
            }
        }
        Ok(())
    });
    b.check("euler-tangent-pushforward", || {
        for r in 2..=5usize {
            let m = err_str(toy::ProjBundleModel::new(r, (r + 2) as u32))?;
            let pushed = m.pushforward(&m.euler_relative_tangent());
            expect(pushed == m.constant(rat_int(r as i64)), || {
                format!("p_*(e(T_π)) ≠ {r} at rank {r}")
            })?;
        }
        Ok(())
    });
    b.check("bracket-pushdown", || {
        for r in 1..=4usize {
            for a in [0i64, 2] {
                expect(err_str(toy::bracket_pushdown_check(r, a))?, || {
                    format!("pushdown fails at rank {r}, degree {a}")
                })?;
            }
        }
        Ok(())
    });
    b.check("flag-residues", || {
        let l = |c: i64, root: &str| toy::LocusData {
            coeff: rat_int(c),
            roots: vec![root.to_string()],
        };
        let report =
            err_str(toy::fixed_locus_residues(&l(2, "b1"), &l(3, "b2"), &l(1, "th"), 1))?;
        let ctx = toy::ToyCtx::new(vec![
            ("A".into(), 1),
            ("B".into(), 1),
            ("b1".into(), 6),
            ("b2".into(), 6),
            ("th".into(), 6),
            ("v".into(), 1),
        ]);
        expect(
            report.locus1 == toy::TPoly::monomial(&ctx, 0, &[("A", 1)], rat_int(2)),
            || "locus 1 must collapse to +A".to_string(),
        )?;
        expect(
            report.locus2 == toy::TPoly::monomial(&ctx, 0, &[("B", 1)], rat_int(-3)),
            || "locus 2 must collapse to -A'".to_string(),
        )?;
        expect(
            report.locus3 == toy::TPoly::monomial(&ctx, 0, &[("v", 1)], rat_int(1)),
            || "locus 3 must keep the bracket class".to_string(),
        )
    });
    b.check("self-dual-cancellation", || {
        // locus 1 carries +A, locus 2 carries -A', locus 3 carries +εv; under
        // the matched wall-crossing substitution A' = A + εv the sum vanishes
        let l = |c: i64| toy::LocusData { coeff: rat_int(c), roots: vec!["th".to_string()] };
        let report = err_str(toy::fixed_locus_residues(&l(1), &l(1), &l(1), 1))?;
        let single = |t: &toy::TPoly| -> Option<Rat> {
            (t.terms.len() == 1).then(|| t.terms.values().next().cloned().unwrap())
        };
        let (a, ap, v) = (
            single(&report.locus1),
            single(&report.locus2),
            single(&report.locus3),
        );
        expect(
            a == Some(Rat::one()) && ap == Some(-Rat::one()) && v == Some(Rat::one()),
            || "matched toy data must cancel after the substitution".to_string(),
        )
    });
    b.finish()
}

pub fn run_suite(name: &str, seed: u64) -> Result<Vec<RunReport>> {
    match name {
        "quiver" => Ok(vec![suite_quiver()]),
        "rep" => Ok(vec![suite_rep(seed)]),
        "signs" => Ok(vec![suite_signs()]),
        "series" => Ok(vec![suite_series(seed)]),
        "wc" => Ok(vec![suite_wc(seed)]),
        "toy" => Ok(vec![suite_toy(seed)]),
        "all" => Ok(vec![
            suite_quiver(),
            suite_rep(seed),
            suite_signs(),
            suite_series(seed),
            suite_wc(seed),
            suite_toy(seed),
        ]),
        other => Err(CoreError::Input(format!("unknown suite `{other}`"))),
    }
}
