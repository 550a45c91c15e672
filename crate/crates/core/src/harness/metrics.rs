use crate::error::{Error, Result};

fn check(x: &[f64], xstar: &[f64]) -> Result<()> {
    if x.len() != xstar.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: xstar.len(),
        });
    }
    Ok(())
}

/// Relative maximum absolute error `‖x − x*‖_∞ / ‖x‖_∞`.
pub fn rmae(x: &[f64], xstar: &[f64]) -> Result<f64> {
    check(x, xstar)?;
    let scale = x.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    if scale == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let err = x
        .iter()
        .zip(xstar)
        .fold(0.0, |m: f64, (a, b)| m.max((a - b).abs()));
    Ok(err / scale)
}

/// Relative root mean squared error `‖x − x*‖₂ / (√n · ‖x‖₂)`.
pub fn rrmse(x: &[f64], xstar: &[f64]) -> Result<f64> {
    check(x, xstar)?;
    let scale = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let err = x
        .iter()
        .zip(xstar)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Ok(err / ((x.len() as f64).sqrt() * scale))
}
