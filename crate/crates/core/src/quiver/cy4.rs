//! CY4 completion of a graded quiver: dual edges, degree -3 loops, and the
//! differential induced by a superpotential.

use super::*;
use crate::num::rat_int;

/// A completed CY4 dg-quiver. `base` is the input quiver (degrees 0 and -1),
/// `doubled` adds dual edges with a total signed pairing, and `full`
/// additionally carries one degree -3 loop per vertex. The differential is
/// tabulated on every generator of `full`.
#[derive(Debug, Clone)]
pub struct CY4Quiver {
    base: GradedQuiver,
    doubled: GradedQuiver,
    full: GradedQuiver,
    loops: BTreeMap<String, String>,
    potential: CyclicElement,
    diff: BTreeMap<String, AlgebraElement>,
}

/// Counterexample returned by `verify_dga`.
#[derive(Debug, Clone)]
pub struct DgaWitness {
    pub generator: String,
    pub value: AlgebraElement,
}

/// Builds Q̄ from Q: every unpaired edge receives a fresh dual named `e*`
/// (degree -2-|e|, reversed endpoints), except degree -1 loops, which are
/// self-paired. Direction signs follow d(e) = ∂°H/∂e*,
/// d(e*) = (-1)^{|e|+1} ∂°H/∂e.
pub fn double(q: &GradedQuiver) -> Result<GradedQuiver> {
    for e in q.edges() {
        if !(-1..=0).contains(&e.degree) {
            return Err(CoreError::Input(format!(
                "cannot complete: edge `{}` has degree {}, expected 0 or -1",
                e.name, e.degree
            )));
        }
    }
    let mut edges = q.edges().to_vec();
    let mut pairing = q.pairing().clone();
    for e in q.edges() {
        if pairing.contains_key(&e.name) {
            continue;
        }
        if e.degree == -1 && e.tail == e.head {
            pairing.insert(e.name.clone(), (e.name.clone(), 1));
            continue;
        }
        let dual = format!("{}*", e.name);
        if q.edge(&dual).is_some() {
            return Err(CoreError::Structural(format!(
                "dual name `{dual}` collides with an existing edge"
            )));
        }
        edges.push(Edge {
            name: dual.clone(),
            tail: e.head.clone(),
            head: e.tail.clone(),
            degree: -2 - e.degree,
        });
        pairing.insert(e.name.clone(), (dual.clone(), 1));
        let back = if e.degree % 2 == 0 { -1 } else { 1 };
        pairing.insert(dual, (e.name.clone(), back));
    }
    GradedQuiver::new(q.vertices().cloned(), edges, pairing)
}

/// Completes `(Q, H)` to a CY4 dg-quiver. The master equation is checked in
/// the cyclic quotient and the failure residue is reported on rejection.
pub fn cy4_complete(q: &GradedQuiver, potential: &CyclicElement) -> Result<CY4Quiver> {
    let doubled = double(q)?;
    if !potential.is_homogeneous(&doubled, -1)? {
        return Err(CoreError::Structural(
            "superpotential is not homogeneous of degree -1".into(),
        ));
    }
    // re-canonicalize the potential against the doubled quiver
    let mut h = CyclicElement::zero();
    for (w, c) in potential.terms() {
        h.add_word(&doubled, w, c)?;
    }
    let residue = master_bracket(&doubled, &h)?;
    if !residue.is_zero() {
        return Err(CoreError::MathCheck(format!(
            "master equation fails; nonzero residue:\n{}",
            residue.render()
        )));
    }

    // degree -3 loops
    let mut edges = doubled.edges().to_vec();
    let mut loops = BTreeMap::new();
    for v in doubled.vertices() {
        let name = format!("o_{v}");
        if doubled.edge(&name).is_some() {
            return Err(CoreError::Structural(format!(
                "loop name `{name}` collides with an existing edge"
            )));
        }
        edges.push(Edge { name: name.clone(), tail: v.clone(), head: v.clone(), degree: -3 });
        loops.insert(v.clone(), name);
    }
    let full = GradedQuiver::new(doubled.vertices().cloned(), edges, doubled.pairing().clone())?;

    // differential table
    let mut diff: BTreeMap<String, AlgebraElement> = BTreeMap::new();
    for e in doubled.edges() {
        let (f, s) = doubled.star(&e.name).unwrap();
        let d = circular_derivative(&doubled, &h, f)?.scale(&rat_int(s));
        diff.insert(e.name.clone(), d);
    }
    // d(o_v) = l_v ∘ Σ_e [e, e*] ∘ l_v over pair representatives
    let mut commutators = AlgebraElement::zero();
    for rep in pair_representatives(&doubled)? {
        let e = doubled.require_edge(&rep)?;
        let (f, s) = doubled.star(&rep).unwrap();
        let fe = doubled.require_edge(f)?;
        let ef = compose_paths(
            &doubled,
            &Path::word(vec![rep.clone()]),
            &Path::word(vec![f.to_string()]),
        )?;
        let fe_path = compose_paths(
            &doubled,
            &Path::word(vec![f.to_string()]),
            &Path::word(vec![rep.clone()]),
        )?;
        let koszul = if (e.degree * fe.degree) % 2 == 0 { 1 } else { -1 };
        if let Some(p) = ef {
            commutators.add_term(p, rat_int(s));
        }
        if let Some(p) = fe_path {
            commutators.add_term(p, rat_int(-koszul * s));
        }
    }
    for v in doubled.vertices() {
        let mut at_v = AlgebraElement::zero();
        for (p, c) in commutators.terms() {
            if doubled.tail_of(p)? == *v && doubled.head_of(p)? == *v {
                at_v.add_term(p.clone(), c.clone());
            }
        }
        diff.insert(loops[v].clone(), at_v);
    }

    Ok(CY4Quiver { base: q.clone(), doubled, full, loops, potential: h, diff })
}

impl CY4Quiver {
    pub fn base(&self) -> &GradedQuiver {
        &self.base
    }

    pub fn doubled(&self) -> &GradedQuiver {
        &self.doubled
    }

    /// The completed quiver including the degree -3 loops.
    pub fn quiver(&self) -> &GradedQuiver {
        &self.full
    }

    pub fn potential(&self) -> &CyclicElement {
        &self.potential
    }

    pub fn loop_at(&self, v: &str) -> Option<&str> {
        self.loops.get(v).map(|s| s.as_str())
    }

    pub fn generators(&self) -> impl Iterator<Item = &Edge> {
        self.full.edges().iter()
    }

    /// d on a generator, by table lookup.
    pub fn differential(&self, generator: &str) -> Result<&AlgebraElement> {
        self.diff
            .get(generator)
            .ok_or_else(|| CoreError::Input(format!("unknown generator `{generator}`")))
    }

    /// Graded Leibniz extension of d to arbitrary elements.
    pub fn d_extend(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        let q = &self.full;
        let mut out = AlgebraElement::zero();
        for (p, c) in a.terms() {
            let Path::Word(w) = p else { continue };
            // d(w_{n-1}∘…∘w_0) = Σ_i (-1)^{deg(w_{>i})} w_{>i} ∘ d(w_i) ∘ w_{<i}
            for i in 0..w.len() {
                let after: i64 =
                    w[i + 1..].iter().map(|e| q.edge(e).unwrap().degree).sum();
                let sign = if after % 2 == 0 { 1 } else { -1 };
                let di = self.differential(&w[i])?;
                if di.is_zero() {
                    continue;
                }
                let pre = if i == 0 {
                    AlgebraElement::lazy(&q.require_edge(&w[0])?.tail)
                } else {
                    AlgebraElement::from_term(Path::word(w[..i].to_vec()), Rat::from_integer(1.into()))
                };
                let post = if i + 1 == w.len() {
                    AlgebraElement::lazy(&q.require_edge(&w[i])?.head)
                } else {
                    AlgebraElement::from_term(
                        Path::word(w[i + 1..].to_vec()),
                        Rat::from_integer(1.into()),
                    )
                };
                let term = post.mul(di, q)?.mul(&pre, q)?;
                out = out.add(&term.scale(&(c.clone() * rat_int(sign))));
            }
        }
        Ok(out)
    }

    /// Checks that d raises degree by one and squares to zero on every
    /// generator; returns the first counterexample otherwise.
    pub fn verify_dga(&self) -> Result<Option<DgaWitness>> {
        for e in self.generators() {
            let d = self.differential(&e.name)?;
            if !d.is_homogeneous(&self.full, e.degree + 1)? {
                return Ok(Some(DgaWitness { generator: e.name.clone(), value: d.clone() }));
            }
            let dd = self.d_extend(d)?;
            if !dd.is_zero() {
                return Ok(Some(DgaWitness { generator: e.name.clone(), value: dd }));
            }
        }
        Ok(None)
    }

    /// Master bracket of the stored potential in the cyclic quotient.
    pub fn master_residue(&self) -> Result<CyclicElement> {
        master_bracket(&self.doubled, &self.potential)
    }

    /// The strict path-algebra master bracket (usually nonzero even for
    /// valid superpotentials; exposed as a diagnostic).
    pub fn master_residue_strict(&self) -> Result<AlgebraElement> {
        master_bracket_strict(&self.doubled, &self.potential)
    }
}
