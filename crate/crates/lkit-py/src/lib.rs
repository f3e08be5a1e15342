//! Python bindings. Charts and move scripts cross the boundary as JSON text;
//! structured results come back as Python dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use lkit::chart::{self, derive_hurwitz_seeded, sigma_chart, sigma_luo, validate, Chart, ChartWord, Counts, Flavor};
use lkit::classifier::{invariants_of, stable_equivalent, Mode, Presentation};
use lkit::formats::{parse_factorization, parse_word_line};
use lkit::moves::factory::{factory as make_factory, FactoryName};
use lkit::moves::{apply_script, MoveScript};
use lkit::signature::i_g;
use lkit::symplectic::{eval_word, SpMatrix};
use lkit::words::{expand_relator, RelatorId};

create_exception!(lkit, LkitError, PyException);

fn err(e: lkit::Error) -> PyErr {
    match e {
        lkit::Error::Parse { .. } | lkit::Error::Param(_) => PyValueError::new_err(e.to_string()),
        other => LkitError::new_err(other.to_string()),
    }
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| LkitError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn word(text: &str, g: usize) -> PyResult<ChartWord> {
    parse_word_line(text, g).map_err(err)
}

fn load_chart(text: &str) -> PyResult<Chart> {
    chart::json::from_json(text).map_err(err)
}

fn presentation(text: &str) -> PyResult<Presentation> {
    Ok(if text.trim_start().starts_with('{') {
        load_chart(text)?.into()
    } else {
        parse_factorization(text).map_err(err)?.into()
    })
}

fn matrix(rows: Vec<Vec<i64>>) -> PyResult<SpMatrix> {
    if rows.len() % 2 != 0 {
        return Err(PyValueError::new_err("a symplectic matrix has even size"));
    }
    SpMatrix::from_i64_rows(rows.len() / 2, &rows).map_err(err)
}

/// The generator word of a relator, e.g. `relator("r_C", 3)`.
#[pyfunction]
fn relator(name: &str, g: usize) -> PyResult<String> {
    let id: RelatorId = name.parse().map_err(err)?;
    Ok(expand_relator(id, g).map_err(err)?.to_string())
}

/// The Sp(2g, Z) image of a word, as a list of rows.
#[pyfunction]
fn evaluate(text: &str, g: usize) -> PyResult<Vec<Vec<String>>> {
    let m = eval_word(&word(text, g)?.to_twists());
    Ok(m.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
}

/// Whether a word evaluates to the identity.
#[pyfunction]
fn is_closed(text: &str, g: usize) -> PyResult<bool> {
    Ok(eval_word(&word(text, g)?.to_twists()).is_identity())
}

#[pyfunction]
fn ig(text: &str, g: usize) -> PyResult<i64> {
    Ok(i_g(&word(text, g)?.to_twists()))
}

#[pyfunction]
fn ig_relator(name: &str, g: usize) -> PyResult<i64> {
    let id: RelatorId = name.parse().map_err(err)?;
    Ok(lkit::signature::i_g_gen(&expand_relator(id, g).map_err(err)?))
}

/// The Meyer cocycle of two integer matrices given by rows.
#[pyfunction]
fn tau(a: Vec<Vec<i64>>, b: Vec<Vec<i64>>) -> PyResult<i64> {
    lkit::meyer::tau(&matrix(a)?, &matrix(b)?).map_err(err)
}

/// A ready-made chart as JSON text.
#[pyfunction]
#[pyo3(signature = (name, g = 3))]
fn factory(name: &str, g: usize) -> PyResult<String> {
    let n: FactoryName = name.parse().map_err(err)?;
    chart::json::to_json(&make_factory(n, g).map_err(err)?).map_err(err)
}

#[pyfunction]
fn chart_validate<'py>(py: Python<'py>, chart_json: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &validate(&load_chart(chart_json)?))
}

#[pyfunction]
fn chart_sigma(chart_json: &str) -> PyResult<i64> {
    let c = load_chart(chart_json)?;
    validate(&c).into_result().map_err(err)?;
    match c.flavor {
        Flavor::Wajnryb => sigma_chart(&c),
        Flavor::Luo => sigma_luo(&Counts::of(&c)),
    }
    .map_err(err)
}

/// A Hurwitz factorization of a chart, as a twist word.
#[pyfunction]
#[pyo3(signature = (chart_json, seed = None))]
fn chart_derive(chart_json: &str, seed: Option<u64>) -> PyResult<String> {
    let f = derive_hurwitz_seeded(&load_chart(chart_json)?, seed).map_err(err)?;
    Ok(f.word().to_string())
}

/// Replays a move script and returns the final chart as JSON text.
#[pyfunction]
fn chart_move(chart_json: &str, script_json: &str) -> PyResult<String> {
    let c = load_chart(chart_json)?;
    let s = MoveScript::from_json(script_json).map_err(err)?;
    let steps = apply_script(&c, &s).map_err(err)?;
    let last = steps.last().map_or(&c, |a| &a.chart);
    chart::json::to_json(last).map_err(err)
}

/// The invariant tuple of chart JSON or factorization text.
#[pyfunction]
fn invariants<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &invariants_of(&presentation(text)?).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (p, q, mode = "universal"))]
fn compare<'py>(py: Python<'py>, p: &str, q: &str, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    let mode: Mode = mode.parse().map_err(err)?;
    to_py(py, &stable_equivalent(&presentation(p)?, &presentation(q)?, mode).map_err(err)?)
}

/// Registers every function on `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LkitError", m.py().get_type::<LkitError>())?;
    m.add_function(wrap_pyfunction!(relator, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(is_closed, m)?)?;
    m.add_function(wrap_pyfunction!(ig, m)?)?;
    m.add_function(wrap_pyfunction!(ig_relator, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(factory, m)?)?;
    m.add_function(wrap_pyfunction!(chart_validate, m)?)?;
    m.add_function(wrap_pyfunction!(chart_sigma, m)?)?;
    m.add_function(wrap_pyfunction!(chart_derive, m)?)?;
    m.add_function(wrap_pyfunction!(chart_move, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    Ok(())
}

#[pymodule]
#[pyo3(name = "lkit")]
fn lkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
