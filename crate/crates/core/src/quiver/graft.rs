//! Framing constructions: attaching a JS, Flag(r), or MS(r, l) framing chain
//! to a CY4 dg-quiver at its connecting vertex.

use super::cy4::{cy4_complete, CY4Quiver};
use super::*;
use crate::num::rat_int;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// One framing vertex with a degree-0 edge to every original vertex.
    Js,
    /// A chain v_1 -> ... -> v_{r-1} = × plus edges e_{r-1}^{(v)} from × to
    /// every original vertex. Requires r >= 2; Flag(2) is the JS shape.
    Flag { r: usize },
    /// Flag(r) together with the master-space vertex v_0, edges
    /// e_{-1}: v_1 -> v_0 and e_0: v_l -> v_0, and the degree -1 edge
    /// rho: v_{l-1} -> v_0 carrying the superpotential rho* ∘ e_0 ∘ e_{l-1}.
    Ms { r: usize, l: usize },
}

const FRAME_PREFIX: char = '@';

fn frame_vertex(i: usize) -> String {
    format!("{FRAME_PREFIX}v{i}")
}

fn chain_edge(i: usize) -> String {
    format!("{FRAME_PREFIX}e{i}")
}

fn connecting_edge(r: usize, v: &str) -> String {
    format!("{FRAME_PREFIX}e{}:{v}", r - 1)
}

/// Grafts the framing quiver onto `base` and re-runs the CY4 completion.
pub fn graft(cy: &CY4Quiver, frame: Frame) -> Result<CY4Quiver> {
    let (r, ms) = match frame {
        Frame::Js => (2, None),
        Frame::Flag { r } => {
            if r < 2 {
                return Err(CoreError::Input("Flag framing requires r >= 2".into()));
            }
            (r, None)
        }
        Frame::Ms { r, l } => {
            if r < 3 {
                return Err(CoreError::Input("MS framing requires r >= 3".into()));
            }
            if !(2..r).contains(&l) {
                return Err(CoreError::Input("MS framing requires 2 <= l < r".into()));
            }
            (r, Some(l))
        }
    };
    let base = cy.base();
    for v in base.vertices() {
        if v.starts_with(FRAME_PREFIX) {
            return Err(CoreError::Input(format!(
                "vertex `{v}` collides with the framing namespace `{FRAME_PREFIX}`"
            )));
        }
    }
    for e in base.edges() {
        if e.name.starts_with(FRAME_PREFIX) {
            return Err(CoreError::Input(format!(
                "edge `{}` collides with the framing namespace `{FRAME_PREFIX}`",
                e.name
            )));
        }
    }

    let mut vertices: Vec<String> = base.vertices().cloned().collect();
    let mut edges = base.edges().to_vec();
    for i in 1..r {
        vertices.push(frame_vertex(i));
    }
    // chain v_1 -> v_2 -> ... -> v_{r-1}
    for i in 1..r - 1 {
        edges.push(Edge {
            name: chain_edge(i),
            tail: frame_vertex(i),
            head: frame_vertex(i + 1),
            degree: 0,
        });
    }
    // one edge from the connecting vertex × = v_{r-1} to each original vertex
    let connecting = frame_vertex(r - 1);
    for v in base.vertices() {
        edges.push(Edge {
            name: connecting_edge(r, v),
            tail: connecting.clone(),
            head: v.clone(),
            degree: 0,
        });
    }

    let mut potential = cy.potential().clone();
    if let Some(l) = ms {
        vertices.push(frame_vertex(0));
        edges.push(Edge {
            name: format!("{FRAME_PREFIX}e-1"),
            tail: frame_vertex(1),
            head: frame_vertex(0),
            degree: 0,
        });
        edges.push(Edge {
            name: format!("{FRAME_PREFIX}e0"),
            tail: frame_vertex(l),
            head: frame_vertex(0),
            degree: 0,
        });
        let rho = format!("{FRAME_PREFIX}rho");
        edges.push(Edge {
            name: rho.clone(),
            tail: frame_vertex(l - 1),
            head: frame_vertex(0),
            degree: -1,
        });
        // H_MS = rho* ∘ e_0 ∘ e_{l-1}; the grafted quiver is completed below,
        // which creates rho* with the fresh-dual naming rule.
        let grafted = GradedQuiver::new(
            vertices.clone(),
            edges.clone(),
            base.pairing().clone(),
        )?;
        let doubled = super::cy4::double(&grafted)?;
        let word = vec![chain_edge(l - 1), format!("{FRAME_PREFIX}e0"), format!("{rho}*")];
        potential.add_word(&doubled, &word, &rat_int(1))?;
        return cy4_complete(&grafted, &potential);
    }

    let grafted = GradedQuiver::new(vertices, edges, base.pairing().clone())?;
    cy4_complete(&grafted, &potential)
}
