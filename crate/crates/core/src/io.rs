//! File formats and deterministic emission. All numbers travel as exact
//! rational strings; maps are sorted, so identical inputs produce identical
//! bytes.

use crate::error::{CoreError, Result};
use crate::num::{fmt_rat, parse_rat};
use crate::quiver::{double, CyclicElement, Edge, GradedQuiver};
use crate::rep::{QMat, Representation};
use crate::series::{EqKClass, KTerm, Regime, SeriesCtx, WeightVector};
use crate::wc::{ClassInfo, ClassTable};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pairing: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub superpotential: Vec<TermFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeFile {
    pub name: String,
    pub tail: String,
    pub head: String,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff: String,
    pub path: Vec<String>,
}

fn parse_signed_edge(v: &str) -> (i64, &str) {
    match v.strip_prefix('-') {
        Some(rest) => (-1, rest.trim()),
        None => (1, v.trim()),
    }
}

/// Parses a quiver file into the base quiver and its superpotential. The
/// pairing may list each dual pair once; the involution is completed and
/// validated, and the potential is canonicalized against the doubled quiver.
pub fn parse_quiver(text: &str) -> Result<(GradedQuiver, CyclicElement)> {
    let file: QuiverFile = serde_json::from_str(text)
        .map_err(|e| CoreError::Input(format!("malformed quiver file: {e}")))?;
    quiver_from_file(&file)
}

pub fn quiver_from_file(file: &QuiverFile) -> Result<(GradedQuiver, CyclicElement)> {
    let edges: Vec<Edge> = file
        .edges
        .iter()
        .map(|e| Edge {
            name: e.name.clone(),
            tail: e.tail.clone(),
            head: e.head.clone(),
            degree: e.degree,
        })
        .collect();
    let mut pairing: BTreeMap<String, (String, i64)> = BTreeMap::new();
    for (k, v) in &file.pairing {
        let (s, partner) = parse_signed_edge(v);
        let prev = pairing.insert(k.clone(), (partner.to_string(), s));
        if prev.is_some_and(|p| p != (partner.to_string(), s)) {
            return Err(CoreError::Input(format!("pairing lists `{k}` twice inconsistently")));
        }
        // mirror entry: degree -1 pairs carry the same sign both ways
        match pairing.get(partner) {
            None => {
                pairing.insert(partner.to_string(), (k.clone(), s));
            }
            Some(back) if *back == (k.clone(), s) => {}
            Some(_) => {
                return Err(CoreError::Input(format!(
                    "pairing around `{partner}` is not involutive"
                )))
            }
        }
    }
    let quiver = GradedQuiver::new(file.vertices.iter().cloned(), edges, pairing)?;
    let doubled = double(&quiver)?;
    let mut potential = CyclicElement::zero();
    for term in &file.superpotential {
        let coeff = parse_rat(&term.coeff)?;
        potential.add_word(&doubled, &term.path, &coeff)?;
    }
    Ok((quiver, potential))
}

pub fn emit_quiver(quiver: &GradedQuiver, potential: &CyclicElement) -> String {
    let file = QuiverFile {
        vertices: quiver.vertices().cloned().collect(),
        edges: quiver
            .edges()
            .iter()
            .map(|e| EdgeFile {
                name: e.name.clone(),
                tail: e.tail.clone(),
                head: e.head.clone(),
                degree: e.degree,
            })
            .collect(),
        pairing: {
            // one entry per pair, keyed by the smaller name
            let mut out = BTreeMap::new();
            for (k, (v, s)) in quiver.pairing() {
                if k <= v {
                    out.insert(k.clone(), if *s < 0 { format!("-{v}") } else { v.clone() });
                }
            }
            out
        },
        superpotential: potential
            .terms()
            .map(|(w, c)| TermFile { coeff: fmt_rat(c), path: w.clone() })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("quiver serialization cannot fail")
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletedFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
    pub pairing: BTreeMap<String, String>,
    pub superpotential: Vec<TermFile>,
    pub differential: BTreeMap<String, Vec<TermFile>>,
}

/// Report document for a completed CY4 dg-quiver: every generator with its
/// tabulated differential. Output-only; the input format is `QuiverFile`.
pub fn emit_completed(cy: &crate::quiver::CY4Quiver) -> String {
    let q = cy.quiver();
    let mut differential = BTreeMap::new();
    for e in cy.generators() {
        let d = cy.differential(&e.name).expect("generator has a differential");
        let terms = d
            .terms()
            .map(|(p, c)| TermFile {
                coeff: fmt_rat(c),
                path: match p {
                    crate::quiver::Path::Lazy(v) => vec![format!("l_{v}")],
                    crate::quiver::Path::Word(w) => w.clone(),
                },
            })
            .collect();
        differential.insert(e.name.clone(), terms);
    }
    let file = CompletedFile {
        vertices: q.vertices().cloned().collect(),
        edges: q
            .edges()
            .iter()
            .map(|e| EdgeFile {
                name: e.name.clone(),
                tail: e.tail.clone(),
                head: e.head.clone(),
                degree: e.degree,
            })
            .collect(),
        pairing: q
            .pairing()
            .iter()
            .map(|(k, (v, s))| (k.clone(), if *s < 0 { format!("-{v}") } else { v.clone() }))
            .collect(),
        superpotential: cy
            .potential()
            .terms()
            .map(|(w, c)| TermFile { coeff: fmt_rat(c), path: w.clone() })
            .collect(),
        differential,
    };
    serde_json::to_string_pretty(&file).expect("completed quiver serialization cannot fail")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepFile {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn parse_representation(text: &str) -> Result<Representation> {
    let file: RepFile = serde_json::from_str(text)
        .map_err(|e| CoreError::Input(format!("malformed representation file: {e}")))?;
    let mut mats = BTreeMap::new();
    for (name, rows) in &file.matrices {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = QMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(CoreError::Input(format!("ragged matrix for edge `{name}`")));
            }
            for (j, entry) in row.iter().enumerate() {
                m[(i, j)] = parse_rat(entry)?;
            }
        }
        mats.insert(name.clone(), m);
    }
    Ok(Representation { dims: file.dims, mats })
}

pub fn emit_representation(rep: &Representation) -> String {
    let file = RepFile {
        dims: rep.dims.clone(),
        matrices: rep
            .mats
            .iter()
            .map(|(name, m)| {
                let rows = (0..m.rows)
                    .map(|i| (0..m.cols).map(|j| fmt_rat(&m[(i, j)])).collect())
                    .collect();
                (name.clone(), rows)
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("representation serialization cannot fail")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KTermFile {
    #[serde(default)]
    pub weight: BTreeMap<String, i64>,
    #[serde(default = "one")]
    pub mult: i64,
    #[serde(default = "one_u32")]
    pub rank: u32,
    #[serde(default)]
    pub roots: Vec<String>,
}

fn one() -> i64 {
    1
}

fn one_u32() -> u32 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SqrtEulerFile {
    pub lambdas: Vec<String>,
    #[serde(default)]
    pub cherns: Vec<String>,
    #[serde(default = "default_order")]
    pub order: i64,
    #[serde(default)]
    pub t_ge: Vec<KTermFile>,
    #[serde(default)]
    pub t_le: Vec<KTermFile>,
    #[serde(default)]
    pub e_ge: Vec<KTermFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaFile {
    pub lambdas: Vec<String>,
    #[serde(default)]
    pub cherns: Vec<String>,
    #[serde(default = "default_order")]
    pub order: i64,
    pub theta: Vec<KTermFile>,
}

fn default_order() -> i64 {
    12
}

pub fn kclass_from_terms(ctx: &SeriesCtx, terms: &[KTermFile]) -> Result<EqKClass> {
    let mut out = EqKClass::default();
    for t in terms {
        let mut lambdas = vec![0i64; ctx.lambdas.len()];
        let mut z = 0i64;
        for (name, n) in &t.weight {
            if name == "z" {
                z = *n;
            } else {
                lambdas[ctx.lambda_index(name)?] = *n;
            }
        }
        out.terms.push(KTerm {
            mult: t.mult,
            weight: WeightVector { z, lambdas },
            rank: t.rank,
            roots: t.roots.clone(),
        });
    }
    Ok(out)
}

pub fn parse_regime(s: &str) -> Result<Regime> {
    match s {
        "local" => Ok(Regime::Local),
        "global" => Ok(Regime::Global),
        other => Err(CoreError::Input(format!("unknown regime `{other}`"))),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassFile {
    pub name: String,
    pub vector: Vec<i64>,
    pub chi_k: i64,
    pub phase: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassTableFile {
    pub rk_weights: Vec<i64>,
    pub classes: Vec<ClassFile>,
}

pub fn parse_class_table(text: &str) -> Result<ClassTable> {
    let file: ClassTableFile = serde_json::from_str(text)
        .map_err(|e| CoreError::Input(format!("malformed class table: {e}")))?;
    let dim = file.rk_weights.len();
    let classes = file
        .classes
        .iter()
        .map(|c| {
            Ok(ClassInfo {
                name: c.name.clone(),
                vector: c.vector.clone(),
                chi_k: c.chi_k,
                phase: parse_rat(&c.phase)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let table = ClassTable { dim, rk_weights: file.rk_weights, classes };
    table.validate()?;
    Ok(table)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocusFile {
    pub coeff: String,
    #[serde(default)]
    pub roots: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlagResidueFile {
    pub locus1: LocusFile,
    pub locus2: LocusFile,
    pub locus3: LocusFile,
    #[serde(default = "one")]
    pub epsilon: i64,
}
