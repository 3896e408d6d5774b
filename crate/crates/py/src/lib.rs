use pyo3::prelude::*;

#[pymodule]
fn sp4bg_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
