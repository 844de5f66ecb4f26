//! Enumeration of colength-n monomial ideals in four variables, presented as
//! staircase exponent sets, together with an independent order-ideal oracle.

use super::matrix::QMat;
use super::FramedRep;
use crate::error::{CoreError, Result};
use crate::num::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

pub type Cell = [u16; 4];

/// A finite downward-closed subset of N^4 (the complement of a monomial
/// ideal), stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Staircase {
    cells: Vec<Cell>,
}

fn grlex(a: &Cell, b: &Cell) -> std::cmp::Ordering {
    let sa: u32 = a.iter().map(|&x| x as u32).sum();
    let sb: u32 = b.iter().map(|&x| x as u32).sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

impl Staircase {
    pub fn origin() -> Self {
        Staircase { cells: vec![[0, 0, 0, 0]] }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.binary_search(c).is_ok()
    }

    fn is_addable(&self, c: &Cell) -> bool {
        if self.contains(c) {
            return false;
        }
        (0..4).all(|i| {
            if c[i] == 0 {
                return true;
            }
            let mut p = *c;
            p[i] -= 1;
            self.contains(&p)
        })
    }

    /// All elements whose insertion keeps the set downward closed.
    pub fn addable(&self) -> Vec<Cell> {
        let mut cand: BTreeSet<Cell> = BTreeSet::new();
        if self.is_empty() {
            cand.insert([0, 0, 0, 0]);
        }
        for c in &self.cells {
            for i in 0..4 {
                let mut s = *c;
                s[i] += 1;
                cand.insert(s);
            }
        }
        cand.into_iter().filter(|c| self.is_addable(c)).collect()
    }

    fn with(&self, c: Cell) -> Staircase {
        let mut cells = self.cells.clone();
        let pos = cells.binary_search(&c).unwrap_err();
        cells.insert(pos, c);
        Staircase { cells }
    }

    /// The framed multiplication representation on the quotient basis, with
    /// the framing vector at the class of 1.
    pub fn to_framed_rep(&self) -> FramedRep {
        let n = self.len();
        let idx = |c: &Cell| self.cells.binary_search(c).ok();
        let mut xs: Vec<QMat> = (0..4).map(|_| QMat::zero(n, n)).collect();
        for (j, c) in self.cells.iter().enumerate() {
            for i in 0..4 {
                let mut s = *c;
                s[i] += 1;
                if let Some(r) = idx(&s) {
                    xs[i][(r, j)] = Rat::one();
                }
            }
        }
        let mut v = vec![Rat::zero(); n];
        if let Some(o) = idx(&[0, 0, 0, 0]) {
            v[o] = Rat::one();
        }
        FramedRep { n, xs: xs.try_into().unwrap(), v }
    }
}

/// Enumerates every staircase of size n by reverse search: each staircase of
/// size k+1 has the unique parent obtained by deleting its graded-lex
/// maximum, so children extend by addable cells beyond the current maximum.
pub fn monomial_fixed_points(n: usize, bound: usize) -> Result<Vec<Staircase>> {
    if n > bound {
        return Err(CoreError::Resource(format!(
            "fixed-point enumeration requested for n = {n} beyond the bound {bound}"
        )));
    }
    if n == 0 {
        return Ok(vec![Staircase { cells: vec![] }]);
    }
    let mut out = Vec::new();
    let mut stack = vec![Staircase::origin()];
    while let Some(s) = stack.pop() {
        if s.len() == n {
            out.push(s);
            continue;
        }
        let max = s.cells.iter().max_by(|a, b| grlex(a, b)).cloned().unwrap();
        for c in s.addable() {
            if grlex(&c, &max) == std::cmp::Ordering::Greater {
                stack.push(s.with(c));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Independent oracle: grows order ideals one cell at a time with global
/// deduplication, and returns the counts for sizes 1..=n.
pub fn order_ideal_counts_oracle(n: usize) -> Vec<usize> {
    let mut counts = Vec::with_capacity(n);
    let mut layer: BTreeSet<Staircase> = BTreeSet::new();
    layer.insert(Staircase::origin());
    for _ in 0..n {
        counts.push(layer.len());
        let mut next = BTreeSet::new();
        for s in &layer {
            for c in s.addable() {
                next.insert(s.with(c));
            }
        }
        layer = next;
    }
    counts
}
