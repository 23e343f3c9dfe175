use pyo3::prelude::*;

#[pymodule]
fn emvkit_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
