//! Graded quivers, path algebras, and cyclic words with Koszul-normalized
//! representatives.
//!
//! Paths are stored in application order: `[e, f]` is the path that applies
//! `e` first and then `f`, written `f∘e` in composition notation. The product
//! `a.mul(&b)` is `a∘b`, so `b` acts first.

mod cy4;
mod graft;

pub use cy4::{cy4_complete, double, CY4Quiver, DgaWitness};
pub use graft::{graft, Frame};

use crate::error::{CoreError, Result};
use crate::num::{fmt_rat, Rat};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub tail: String,
    pub head: String,
    pub degree: i64,
}

/// A finite quiver with integer-graded edges and a partial signed dual
/// pairing. The pairing entry `e -> (f, s)` records `e* = s·f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedQuiver {
    vertices: BTreeSet<String>,
    edges: Vec<Edge>,
    index: BTreeMap<String, usize>,
    pairing: BTreeMap<String, (String, i64)>,
}

impl GradedQuiver {
    pub fn new(
        vertices: impl IntoIterator<Item = String>,
        edges: Vec<Edge>,
        pairing: BTreeMap<String, (String, i64)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<String> = vertices.into_iter().collect();
        let mut index = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            if index.insert(e.name.clone(), i).is_some() {
                return Err(CoreError::Input(format!("duplicate edge name `{}`", e.name)));
            }
            if !vertices.contains(&e.tail) {
                return Err(CoreError::Input(format!(
                    "edge `{}` has undeclared tail `{}`",
                    e.name, e.tail
                )));
            }
            if !vertices.contains(&e.head) {
                return Err(CoreError::Input(format!(
                    "edge `{}` has undeclared head `{}`",
                    e.name, e.head
                )));
            }
            if !(-3..=0).contains(&e.degree) {
                return Err(CoreError::Input(format!(
                    "edge `{}` has degree {} outside {{0,-1,-2,-3}}",
                    e.name, e.degree
                )));
            }
        }
        let q = GradedQuiver { vertices, edges, index, pairing };
        q.check_pairing()?;
        Ok(q)
    }

    fn check_pairing(&self) -> Result<()> {
        for (e, (f, s)) in &self.pairing {
            if *s != 1 && *s != -1 {
                return Err(CoreError::Input(format!("pairing sign for `{e}` must be ±1")));
            }
            let ee = self
                .edge(e)
                .ok_or_else(|| CoreError::Input(format!("pairing names unknown edge `{e}`")))?;
            let ff = self
                .edge(f)
                .ok_or_else(|| CoreError::Input(format!("pairing names unknown edge `{f}`")))?;
            if ee.degree + ff.degree != -2 {
                return Err(CoreError::Structural(format!(
                    "paired edges `{e}`, `{f}` have degrees summing to {}, not -2",
                    ee.degree + ff.degree
                )));
            }
            if ff.tail != ee.head || ff.head != ee.tail {
                return Err(CoreError::Structural(format!(
                    "paired edges `{e}`, `{f}` do not reverse tail/head"
                )));
            }
            // the two direction signs must multiply to (-1)^{|e|+1}
            let back = self.pairing.get(f).ok_or_else(|| {
                CoreError::Structural(format!("pairing is not involutive at `{f}`"))
            })?;
            if back.0 != *e {
                return Err(CoreError::Structural(format!(
                    "pairing is not involutive: `{e}` -> `{f}` -> `{}`",
                    back.0
                )));
            }
            let expect = if ee.degree % 2 == 0 { -1 } else { 1 };
            if s * back.1 != expect {
                return Err(CoreError::Structural(format!(
                    "pairing signs at `{e}`/`{f}` violate the duality sign rule"
                )));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &String> {
        self.vertices.iter()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, name: &str) -> Option<&Edge> {
        self.index.get(name).map(|&i| &self.edges[i])
    }

    pub fn require_edge(&self, name: &str) -> Result<&Edge> {
        self.edge(name)
            .ok_or_else(|| CoreError::Input(format!("unknown edge name `{name}`")))
    }

    /// `e* = s·f`, if the pairing is defined at `e`.
    pub fn star(&self, name: &str) -> Option<(&str, i64)> {
        self.pairing.get(name).map(|(f, s)| (f.as_str(), *s))
    }

    pub fn pairing(&self) -> &BTreeMap<String, (String, i64)> {
        &self.pairing
    }

    pub fn degree_of(&self, path: &Path) -> Result<i64> {
        match path {
            Path::Lazy(_) => Ok(0),
            Path::Word(w) => {
                let mut d = 0;
                for e in w {
                    d += self.require_edge(e)?.degree;
                }
                Ok(d)
            }
        }
    }

    pub fn tail_of(&self, path: &Path) -> Result<String> {
        match path {
            Path::Lazy(v) => Ok(v.clone()),
            Path::Word(w) => Ok(self.require_edge(&w[0])?.tail.clone()),
        }
    }

    pub fn head_of(&self, path: &Path) -> Result<String> {
        match path {
            Path::Lazy(v) => Ok(v.clone()),
            Path::Word(w) => Ok(self.require_edge(w.last().unwrap())?.head.clone()),
        }
    }

    /// Consecutive edges must compose and, for cyclic use, close up.
    pub fn validate_word(&self, word: &[String], cyclic: bool) -> Result<()> {
        if word.is_empty() {
            return Err(CoreError::Input("empty edge word".into()));
        }
        for pair in word.windows(2) {
            let a = self.require_edge(&pair[0])?;
            let b = self.require_edge(&pair[1])?;
            if a.head != b.tail {
                return Err(CoreError::Structural(format!(
                    "edges `{}` and `{}` do not compose",
                    pair[0], pair[1]
                )));
            }
        }
        if cyclic {
            let first = self.require_edge(&word[0])?;
            let last = self.require_edge(word.last().unwrap())?;
            if last.head != first.tail {
                return Err(CoreError::Structural(format!(
                    "cyclic word `{}` does not close up",
                    word.join(";")
                )));
            }
        }
        Ok(())
    }
}

/// A path of the quiver: either a constant path at a vertex or a nonempty
/// word of edges in application order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Path {
    Lazy(String),
    Word(Vec<String>),
}

impl Path {
    pub fn word(edges: Vec<String>) -> Self {
        Path::Word(edges)
    }

    pub fn len(&self) -> usize {
        match self {
            Path::Lazy(_) => 0,
            Path::Word(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Lazy(v) => write!(f, "l_{v}"),
            Path::Word(w) => write!(f, "{}", w.join(";")),
        }
    }
}

/// Exact linear combination of paths.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Path, Rat>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn lazy(v: &str) -> Self {
        AlgebraElement::from_term(Path::Lazy(v.to_string()), Rat::from_integer(1.into()))
    }

    pub fn from_term(p: Path, c: Rat) -> Self {
        let mut a = AlgebraElement::zero();
        a.add_term(p, c);
        a
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, p: Path, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v.clone() * c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&-Rat::from_integer(1.into()))
    }

    /// `self ∘ other` in the path algebra of `q`: `other` acts first.
    pub fn mul(&self, other: &AlgebraElement, q: &GradedQuiver) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (p, a) in self.terms() {
            for (r, b) in other.terms() {
                if let Some(path) = compose_paths(q, p, r)? {
                    out.add_term(path, a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// True when every term has the stated degree.
    pub fn is_homogeneous(&self, q: &GradedQuiver, degree: i64) -> Result<bool> {
        for (p, _) in self.terms() {
            if q.degree_of(p)? != degree {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(p, c)| format!("{} * {}", fmt_rat(c), p))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `p ∘ q` (q applied first); `None` when the endpoints do not match.
pub fn compose_paths(quiver: &GradedQuiver, p: &Path, q: &Path) -> Result<Option<Path>> {
    match (p, q) {
        (Path::Lazy(v), Path::Lazy(w)) => Ok((v == w).then(|| Path::Lazy(v.clone()))),
        (Path::Lazy(v), Path::Word(w)) => {
            Ok((quiver.head_of(q)? == *v).then(|| Path::Word(w.clone())))
        }
        (Path::Word(w), Path::Lazy(v)) => {
            Ok((quiver.tail_of(p)? == *v).then(|| Path::Word(w.clone())))
        }
        (Path::Word(a), Path::Word(b)) => {
            if quiver.head_of(q)? != quiver.tail_of(p)? {
                return Ok(None);
            }
            let mut w = b.clone();
            w.extend(a.iter().cloned());
            Ok(Some(Path::Word(w)))
        }
    }
}

/// Canonical representative of a cyclic word: the rotation with the
/// lexicographically least edge sequence. Rotating `p∘q ↦ q∘p` carries the
/// Koszul sign `(-1)^{|p||q|}`, folded into the coefficient. Returns `None`
/// when the word is killed by its own rotation symmetry.
pub fn canonical_rotation(
    q: &GradedQuiver,
    word: &[String],
    coeff: &Rat,
) -> Result<Option<(Vec<String>, Rat)>> {
    q.validate_word(word, true)?;
    let n = word.len();
    let total: i64 = word.iter().map(|e| q.edge(e).unwrap().degree).sum();
    let mut best: Option<(Vec<String>, i64)> = None;
    let mut zero = false;
    let mut rot: Vec<String> = word.to_vec();
    let mut sign = 1i64;
    for _ in 0..n {
        match &best {
            Some((b, s)) => {
                if rot < *b {
                    best = Some((rot.clone(), sign));
                } else if rot == *b && sign != *s {
                    zero = true;
                }
            }
            None => best = Some((rot.clone(), sign)),
        }
        // move the first-applied edge to the end: rot_k -> rot_{k+1}
        let e = rot.remove(0);
        let de = q.edge(&e).unwrap().degree;
        if (de * (total - de)) % 2 != 0 {
            sign = -sign;
        }
        rot.push(e);
    }
    if zero {
        return Ok(None);
    }
    let (canon, s) = best.unwrap();
    Ok(Some((canon, coeff.clone() * Rat::from_integer(s.into()))))
}

/// Exact linear combination of cyclic words in canonical rotation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CyclicElement {
    terms: BTreeMap<Vec<String>, Rat>,
}

impl CyclicElement {
    pub fn zero() -> Self {
        CyclicElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<String>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_word(&mut self, q: &GradedQuiver, word: &[String], coeff: &Rat) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        if let Some((canon, c)) = canonical_rotation(q, word, coeff)? {
            if c.is_zero() {
                return Ok(());
            }
            let entry = self.terms.entry(canon.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(&canon);
            }
        }
        Ok(())
    }

    pub fn add(&mut self, q: &GradedQuiver, other: &CyclicElement) -> Result<()> {
        for (w, c) in other.terms() {
            self.add_word(q, w, c)?;
        }
        Ok(())
    }

    /// Projection of a path-algebra element to the cyclic quotient. Open
    /// paths die; closed words are rotation-normalized.
    pub fn project(q: &GradedQuiver, a: &AlgebraElement) -> Result<CyclicElement> {
        let mut out = CyclicElement::zero();
        for (p, c) in a.terms() {
            match p {
                Path::Lazy(_) => {
                    // constant loops never occur in the potentials handled here
                    return Err(CoreError::Structural(
                        "cannot project a constant path to the cyclic quotient".into(),
                    ));
                }
                Path::Word(w) => {
                    if q.head_of(p)? == q.tail_of(p)? {
                        out.add_word(q, w, c)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_homogeneous(&self, q: &GradedQuiver, degree: i64) -> Result<bool> {
        for (w, _) in self.terms() {
            let d: i64 = w.iter().map(|e| q.edge(e).map(|e| e.degree).unwrap_or(0)).sum();
            if d != degree {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{} * ({})", fmt_rat(c), w.join(";")))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Circular derivative ∂°_f: for every appearance of `f` in a cyclic word
/// `r∘f∘q` the term `(-1)^{|r|(|f|+|q|)} q∘r` is emitted.
pub fn circular_derivative(
    q: &GradedQuiver,
    h: &CyclicElement,
    f: &str,
) -> Result<AlgebraElement> {
    let fe = q.require_edge(f)?;
    let mut out = AlgebraElement::zero();
    for (word, c) in h.terms() {
        for (i, name) in word.iter().enumerate() {
            if name != f {
                continue;
            }
            let before = &word[..i]; // applied before f, i.e. the q part
            let after = &word[i + 1..]; // applied after f, i.e. the r part
            let deg = |part: &[String]| -> i64 {
                part.iter().map(|e| q.edge(e).unwrap().degree).sum()
            };
            let sign = if (deg(after) * (fe.degree + deg(before))) % 2 == 0 { 1 } else { -1 };
            // q∘r applies r first: concatenate r then q in application order
            let mut path: Vec<String> = after.to_vec();
            path.extend_from_slice(before);
            let p = if path.is_empty() { Path::Lazy(fe.tail.clone()) } else { Path::Word(path) };
            out.add_term(p, c.clone() * Rat::from_integer(sign.into()));
        }
    }
    Ok(out)
}

/// The master bracket {H,H} = Σ_e (∂°H/∂e)(∂°H/∂e*), one term per dual pair,
/// projected to the cyclic quotient.
pub fn master_bracket(q: &GradedQuiver, h: &CyclicElement) -> Result<CyclicElement> {
    let strict = master_bracket_strict(q, h)?;
    CyclicElement::project(q, &strict)
}

/// The same sum kept in the path algebra (no cyclic projection). This is the
/// stricter of the two vanishing tests.
pub fn master_bracket_strict(q: &GradedQuiver, h: &CyclicElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for rep in pair_representatives(q)? {
        let (f, s) = q.star(&rep).unwrap();
        let de = circular_derivative(q, h, &rep)?;
        let dstar = circular_derivative(q, h, f)?.scale(&Rat::from_integer(s.into()));
        out = out.add(&de.mul(&dstar, q)?);
    }
    Ok(out)
}

/// One representative per dual pair: for mixed-degree pairs the higher-degree
/// edge, for degree -1 pairs the lexicographically smaller name.
pub fn pair_representatives(q: &GradedQuiver) -> Result<Vec<String>> {
    let mut reps = Vec::new();
    for e in q.edges() {
        let (f, _) = q.star(&e.name).ok_or_else(|| {
            CoreError::Structural(format!("edge `{}` has no dual under the pairing", e.name))
        })?;
        let fe = q.require_edge(f)?;
        let is_rep = if e.degree != fe.degree {
            e.degree > fe.degree
        } else {
            e.name.as_str() <= f
        };
        if is_rep {
            reps.push(e.name.clone());
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests;
