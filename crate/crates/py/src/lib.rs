//! Python bindings: the completed CY4 quiver as a class, plus the series,
//! sign, wall-crossing, and toy-model operations as functions. All inputs
//! and outputs use the same JSON formats and exact rational strings as the
//! `cy4` command-line tool.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use cy4_core::error::CoreError;
use cy4_core::io;
use cy4_core::quiver::{self, Frame};
use cy4_core::rep;
use cy4_core::report;
use cy4_core::series;
use cy4_core::signs;
use cy4_core::toy;
use cy4_core::wc;
use std::collections::BTreeMap;

fn to_py(e: CoreError) -> PyErr {
    match e {
        CoreError::MathCheck(m) => PyRuntimeError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A CY4-completed dg-quiver built from a quiver JSON document.
#[pyclass(name = "CY4Quiver")]
struct PyCY4Quiver {
    inner: quiver::CY4Quiver,
}

#[pymethods]
impl PyCY4Quiver {
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        let (q, h) = io::parse_quiver(json).map_err(to_py)?;
        let inner = quiver::cy4_complete(&q, &h).map_err(to_py)?;
        Ok(PyCY4Quiver { inner })
    }

    /// Generator names with their degrees, in declaration order.
    fn generators(&self) -> Vec<(String, i64)> {
        self.inner.generators().map(|e| (e.name.clone(), e.degree)).collect()
    }

    /// The differential of a generator, rendered one term per line.
    fn differential(&self, generator: &str) -> PyResult<String> {
        Ok(self.inner.differential(generator).map_err(to_py)?.render())
    }

    /// True when d² vanishes on every generator.
    fn is_dga(&self) -> PyResult<bool> {
        Ok(self.inner.verify_dga().map_err(to_py)?.is_none())
    }

    /// The cyclic master-bracket residue; empty when the master equation holds.
    fn master_residue(&self) -> PyResult<String> {
        let r = self.inner.master_residue().map_err(to_py)?;
        Ok(if r.is_zero() { String::new() } else { r.render() })
    }

    /// Euler form on dimension vectors keyed by vertex.
    fn euler_form(&self, d: BTreeMap<String, usize>, e: BTreeMap<String, usize>) -> i64 {
        rep::euler_form(&self.inner, &d, &e)
    }

    /// Attach a framing quiver: "js", "flag" (with r), or "ms" (with r, l).
    #[pyo3(signature = (frame, r=None, l=None))]
    fn graft(&self, frame: &str, r: Option<usize>, l: Option<usize>) -> PyResult<Self> {
        let frame = match frame {
            "js" => Frame::Js,
            "flag" => Frame::Flag {
                r: r.ok_or_else(|| PyValueError::new_err("flag framing needs r"))?,
            },
            "ms" => Frame::Ms {
                r: r.ok_or_else(|| PyValueError::new_err("ms framing needs r"))?,
                l: l.ok_or_else(|| PyValueError::new_err("ms framing needs l"))?,
            },
            other => return Err(PyValueError::new_err(format!("unknown frame `{other}`"))),
        };
        Ok(PyCY4Quiver { inner: quiver::graft(&self.inner, frame).map_err(to_py)? })
    }

    /// The completed quiver with its differential table as a JSON document.
    fn to_json(&self) -> String {
        io::emit_completed(&self.inner)
    }

    /// Dimensions of the five-term deformation complex and of its cohomology
    /// at a representation given as a JSON document.
    fn ext_dims(&self, rep_json: &str) -> PyResult<(Vec<usize>, Vec<usize>)> {
        let m = io::parse_representation(rep_json).map_err(to_py)?;
        let ext = rep::ext_complex(&self.inner, &m).map_err(to_py)?;
        if !ext.is_complex() {
            return Err(PyRuntimeError::new_err(
                "the representation violates the quiver relations",
            ));
        }
        Ok((ext.dims.to_vec(), ext.ext_dims().to_vec()))
    }
}

/// Number of torus-fixed monomial ideals of colength n in four variables.
#[pyfunction]
#[pyo3(signature = (n, bound=8))]
fn fixed_point_count(n: usize, bound: usize) -> PyResult<usize> {
    Ok(rep::monomial_fixed_points(n, bound).map_err(to_py)?.len())
}

/// The staircase cells of every colength-n monomial ideal.
#[pyfunction]
#[pyo3(signature = (n, bound=8))]
#[allow(clippy::type_complexity)]
fn fixed_points(n: usize, bound: usize) -> PyResult<Vec<Vec<(u16, u16, u16, u16)>>> {
    Ok(rep::monomial_fixed_points(n, bound)
        .map_err(to_py)?
        .into_iter()
        .map(|s| s.cells().iter().map(|c| (c[0], c[1], c[2], c[3])).collect())
        .collect())
}

/// Expansion of (λ + z)^{-k} in the local or global regime, rendered with
/// exact coefficients.
#[pyfunction]
#[pyo3(signature = (k, regime="local", order=10))]
fn expand_power(k: u32, regime: &str, order: i64) -> PyResult<String> {
    let regime = io::parse_regime(regime).map_err(to_py)?;
    let ctx = series::SeriesCtx::new(&["l"], &[], order);
    let s = series::expand_power(&ctx, &[1], k, regime).map_err(to_py)?;
    Ok(s.render(&ctx))
}

/// The pentagon coherence of the determinant-line calculus.
#[pyfunction]
fn verify_pentagon(rk_u: u32, rk_v: u32) -> PyResult<bool> {
    signs::verify_pentagon(rk_u, rk_v).map_err(to_py)
}

/// The double-dual discrepancy sign (-1)^{|L|}, as "1" or "-1".
#[pyfunction]
fn double_dual_discrepancy(rank: u32) -> PyResult<String> {
    Ok(signs::double_dual_discrepancy(rank).map_err(to_py)?.to_string())
}

/// The orientation comparison scalar of the two normal-bundle conventions.
#[pyfunction]
fn ot_comparison(rk_t_ge: u32, rk_t_le: u32, rk_e_ge: u32) -> PyResult<String> {
    Ok(signs::ot_comparison(rk_t_ge, rk_t_le, rk_e_ge).map_err(to_py)?.to_string())
}

/// The Joyce–Song right-hand side for a class, from a class-table JSON.
#[pyfunction]
fn js_rhs(classes_json: &str, alpha: Vec<i64>) -> PyResult<String> {
    let table = io::parse_class_table(classes_json).map_err(to_py)?;
    let values: BTreeMap<String, wc::LieExpr> = table
        .classes
        .iter()
        .map(|c| (c.name.clone(), wc::LieExpr::gen(&c.gen_name())))
        .collect();
    Ok(wc::js_rhs(&table, &alpha, &values).map_err(to_py)?.render())
}

/// ⟨M_α⟩ in the Ω generators, from a class-table JSON.
#[pyfunction]
fn invert_js(classes_json: &str, alpha: Vec<i64>) -> PyResult<String> {
    let table = io::parse_class_table(classes_json).map_err(to_py)?;
    let omegas: BTreeMap<String, wc::LieExpr> = table
        .classes
        .iter()
        .map(|c| (c.name.clone(), wc::LieExpr::gen(&format!("Om_{}", c.name))))
        .collect();
    Ok(wc::invert_js(&table, &alpha, &omegas).map_err(to_py)?.render())
}

/// The pushdown collapse check of the toy intersection model.
#[pyfunction]
#[pyo3(signature = (r, a=0))]
fn bracket_pushdown_check(r: usize, a: i64) -> PyResult<bool> {
    toy::bracket_pushdown_check(r, a).map_err(to_py)
}

/// Runs a verification suite; returns (check id, passed, witness) rows.
#[pyfunction]
#[pyo3(signature = (suite="all", seed=42))]
fn verify(suite: &str, seed: u64) -> PyResult<Vec<(String, bool, String)>> {
    let reports = report::run_suite(suite, seed).map_err(to_py)?;
    Ok(reports
        .into_iter()
        .flat_map(|r| {
            let suite = r.suite.clone();
            r.checks
                .into_iter()
                .map(move |c| (format!("{suite}::{}", c.id), c.passed, c.witness))
        })
        .collect())
}

#[pymodule]
fn cy4py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCY4Quiver>()?;
    m.add_function(wrap_pyfunction!(fixed_point_count, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_points, m)?)?;
    m.add_function(wrap_pyfunction!(expand_power, m)?)?;
    m.add_function(wrap_pyfunction!(verify_pentagon, m)?)?;
    m.add_function(wrap_pyfunction!(double_dual_discrepancy, m)?)?;
    m.add_function(wrap_pyfunction!(ot_comparison, m)?)?;
    m.add_function(wrap_pyfunction!(js_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(invert_js, m)?)?;
    m.add_function(wrap_pyfunction!(bracket_pushdown_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
