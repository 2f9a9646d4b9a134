//! Python bindings. Structured results cross the boundary as JSON text,
//! which the Python side can load with `json.loads`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gradinv::classify::{all_labels, canonical_representative, classify_doc, classify_involution, ClassLabel, DatumDoc};
use gradinv::oracle::{arf_of_values, run_suite};

fn err(e: gradinv::Error) -> PyErr {
    PyValueError::new_err(gradinv::cli::diagnostic(&e).trim_end().to_string())
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

/// Runs the command line with `args` (without the program name) and
/// returns (exit code, stdout, stderr).
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let o = gradinv::cli::run(std::iter::once("gradinv".to_string()).chain(args));
    (o.code, o.stdout, o.stderr)
}

/// Label of a JSON datum document, as JSON.
#[pyfunction]
fn classify(datum: &str) -> PyResult<String> {
    let doc: DatumDoc = serde_json::from_str(datum).map_err(|e| err(gradinv::Error::Parse(e.to_string())))?;
    classify_doc(&doc).map(|c| json(&c)).map_err(err)
}

/// Kind, type and signature of a label's representative, as JSON.
#[pyfunction]
#[pyo3(signature = (label, n=None, profile=None))]
fn profile(label: &str, n: Option<u64>, profile: Option<Vec<u32>>) -> PyResult<String> {
    let l = ClassLabel::parse(label, n, profile).map_err(err)?;
    let inv = canonical_representative(&l).map_err(err)?;
    inv.profile().map(|p| json(&p)).map_err(err)
}

/// Classifies a label's representative and returns the label name.
#[pyfunction]
#[pyo3(signature = (label, n=None, profile=None))]
fn round_trip(label: &str, n: Option<u64>, profile: Option<Vec<u32>>) -> PyResult<String> {
    let l = ClassLabel::parse(label, n, profile).map_err(err)?;
    let inv = canonical_representative(&l).map_err(err)?;
    classify_involution(&inv).map(|c| c.to_string()).map_err(err)
}

/// Every label instantiable up to `max_order`.
#[pyfunction]
#[pyo3(signature = (max_order=8))]
fn labels(max_order: u64) -> Vec<String> {
    all_labels(max_order, max_order).iter().map(|l| l.to_string()).collect()
}

/// Arf invariant of a ±1 table by majority; None on a tie.
#[pyfunction]
fn arf(values: Vec<i8>) -> Option<i8> {
    arf_of_values(&values)
}

/// Runs an oracle suite and returns its report as JSON.
#[pyfunction]
#[pyo3(signature = (suite="arf", seed=0))]
fn verify(suite: &str, seed: u64) -> PyResult<String> {
    run_suite(suite, seed).map(|r| json(&r)).map_err(err)
}

#[pymodule]
fn gradinv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(profile, m)?)?;
    m.add_function(wrap_pyfunction!(round_trip, m)?)?;
    m.add_function(wrap_pyfunction!(labels, m)?)?;
    m.add_function(wrap_pyfunction!(arf, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
