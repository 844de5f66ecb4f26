//! Built-in example quivers used by the verification suites.

use crate::error::Result;
use crate::num::rat_int;
use crate::quiver::{cy4_complete, double, CY4Quiver, CyclicElement, Edge, GradedQuiver};
use std::collections::BTreeMap;

/// One vertex, no edges, zero superpotential.
pub fn point_quiver() -> Result<(GradedQuiver, CyclicElement)> {
    let q = GradedQuiver::new(vec!["v".to_string()], vec![], BTreeMap::new())?;
    Ok((q, CyclicElement::zero()))
}

/// The four-cycle quiver with two degree -1 diagonals: degree-0 edges
/// e1: v1->v2, e2: v2->v3, e3: v3->v4, e4: v4->v1 and rho1: v4->v2,
/// rho2: v1->v3 of degree -1, with superpotential
/// rho2*∘e2∘e1 + rho1∘e3∘e2 + rho2∘e4∘e3 - rho1*∘e1∘e4.
pub fn four_cycle_quiver() -> Result<(GradedQuiver, CyclicElement)> {
    let e = |name: &str, tail: &str, head: &str, degree: i64| Edge {
        name: name.into(),
        tail: tail.into(),
        head: head.into(),
        degree,
    };
    let q = GradedQuiver::new(
        ["v1", "v2", "v3", "v4"].iter().map(|s| s.to_string()),
        vec![
            e("e1", "v1", "v2", 0),
            e("e2", "v2", "v3", 0),
            e("e3", "v3", "v4", 0),
            e("e4", "v4", "v1", 0),
            e("rho1", "v4", "v2", -1),
            e("rho2", "v1", "v3", -1),
        ],
        BTreeMap::new(),
    )?;
    let doubled = double(&q)?;
    let mut h = CyclicElement::zero();
    let w = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    h.add_word(&doubled, &w(&["e1", "e2", "rho2*"]), &rat_int(1))?;
    h.add_word(&doubled, &w(&["e2", "e3", "rho1"]), &rat_int(1))?;
    h.add_word(&doubled, &w(&["e3", "e4", "rho2"]), &rat_int(1))?;
    h.add_word(&doubled, &w(&["e4", "e1", "rho1*"]), &rat_int(-1))?;
    Ok((q, h))
}

/// The one-vertex quiver of commuting coordinates on affine 4-space:
/// degree-0 loops x1..x4, degree -1 loops c_ij (i<j) paired by
/// c12* = c34, c13* = -c24, c14* = c23, and superpotential
/// Σ ±c_ij∘[x_k, x_l].
pub fn c4_quiver() -> Result<(GradedQuiver, CyclicElement)> {
    let mut edges = Vec::new();
    for i in 1..=4 {
        edges.push(Edge {
            name: format!("x{i}"),
            tail: "v".into(),
            head: "v".into(),
            degree: 0,
        });
    }
    for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
        edges.push(Edge {
            name: format!("c{i}{j}"),
            tail: "v".into(),
            head: "v".into(),
            degree: -1,
        });
    }
    let mut pairing = BTreeMap::new();
    for (a, b, s) in [("c12", "c34", 1i64), ("c13", "c24", -1), ("c14", "c23", 1)] {
        pairing.insert(a.to_string(), (b.to_string(), s));
        pairing.insert(b.to_string(), (a.to_string(), s));
    }
    let q = GradedQuiver::new(vec!["v".to_string()], edges, pairing)?;

    // coefficient of c_ij∘[x_k, x_l] is the sign of the permutation (i j k l)
    let mut h = CyclicElement::zero();
    for (c, k, l, s) in [
        ("c12", 3, 4, 1i64),
        ("c13", 2, 4, -1),
        ("c14", 2, 3, 1),
        ("c23", 1, 4, 1),
        ("c24", 1, 3, -1),
        ("c34", 1, 2, 1),
    ] {
        let xk = format!("x{k}");
        let xl = format!("x{l}");
        h.add_word(&q, &[xl.clone(), xk.clone(), c.to_string()], &rat_int(s))?;
        h.add_word(&q, &[xk, xl, c.to_string()], &rat_int(-s))?;
    }
    Ok((q, h))
}

/// Converts a framed module over four commuting operators into a
/// representation of the JS-grafted quiver from `c4_cy4`, with the framing
/// edge carrying the vector v.
pub fn c4_framed_representation(f: &crate::rep::FramedRep) -> crate::rep::Representation {
    use crate::rep::QMat;
    let mut dims = BTreeMap::new();
    dims.insert("v".to_string(), f.n);
    dims.insert("@v1".to_string(), 1);
    let mut mats = BTreeMap::new();
    for (i, m) in f.xs.iter().enumerate() {
        mats.insert(format!("x{}", i + 1), m.clone());
    }
    let mut frame = QMat::zero(f.n, 1);
    for (r, c) in f.v.iter().enumerate() {
        frame[(r, 0)] = c.clone();
    }
    mats.insert("@e1:v".to_string(), frame);
    crate::rep::Representation { dims, mats }
}

pub fn point_cy4() -> Result<CY4Quiver> {
    let (q, h) = point_quiver()?;
    cy4_complete(&q, &h)
}

pub fn four_cycle_cy4() -> Result<CY4Quiver> {
    let (q, h) = four_cycle_quiver()?;
    cy4_complete(&q, &h)
}

pub fn c4_cy4() -> Result<CY4Quiver> {
    let (q, h) = c4_quiver()?;
    cy4_complete(&q, &h)
}
