//! Graph basis function interpolation with the variational spline kernel.
//!
//! A GBF is fixed by its graph Fourier coefficients `f̂`. The variational
//! spline uses `f̂_k = (ε + λ_k)^{-s}` over the spectrum of `L_n`, i.e. the
//! kernel `K = (εI + L_n)^{-s} = U diag(f̂) Uᵀ`. Interpolating samples
//! `x(w_1), …, x(w_N)` means solving `K_WW c = x_W` and evaluating
//! `I_W x = K_VW c`.

use crate::error::{Error, Result};
use crate::linalg::{dot, solve_spd, DenseMatrix};
use crate::spectral::{Signal, SpectralBasis};

/// Eigenvalues with `|λ| ≤ ZERO_SNAP` are treated as exact zeros.
///
/// `L_n` has an exact zero per connected component, while the eigensolver
/// returns it as ±1e-16 or so; at `ε = 1e-3, s = 2` that would perturb
/// `f̂ ≈ 1e6` in its thirteenth digit.
pub const ZERO_SNAP: f64 = 1e-10;

/// Variational spline GBF parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbfSpec {
    pub epsilon: f64,
    pub exponent: f64,
}

impl GbfSpec {
    pub fn variational_spline(epsilon: f64, exponent: f64) -> Self {
        Self { epsilon, exponent }
    }
}

/// `f̂_k = (ε + λ_k)^{-s}`.
pub fn spline_fourier(eigenvalues: &[f64], spec: GbfSpec) -> Result<Vec<f64>> {
    eigenvalues
        .iter()
        .enumerate()
        .map(|(index, &lambda)| {
            let lambda = if lambda.abs() <= ZERO_SNAP {
                0.0
            } else {
                lambda
            };
            let shift = spec.epsilon + lambda;
            if !(shift > 0.0) {
                return Err(Error::NonPositiveShift { index, shift });
            }
            let value = shift.powf(-spec.exponent);
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveFhat { index, value });
            }
            Ok(value)
        })
        .collect()
}

fn check_fhat(basis: &SpectralBasis, fhat: &[f64]) -> Result<()> {
    if fhat.len() != basis.order() {
        return Err(Error::DimensionMismatch {
            expected: basis.order(),
            found: fhat.len(),
        });
    }
    if let Some((index, &value)) = fhat
        .iter()
        .enumerate()
        .find(|(_, &v)| !(v > 0.0 && v.is_finite()))
    {
        return Err(Error::NonPositiveFhat { index, value });
    }
    Ok(())
}

/// `K(v, w) = Σ_k f̂_k u_k(v) u_k(w)` for `v ∈ rows`, `w ∈ cols`.
pub fn kernel_matrix(
    basis: &SpectralBasis,
    fhat: &[f64],
    rows: &[usize],
    cols: &[usize],
) -> Result<DenseMatrix> {
    check_fhat(basis, fhat)?;
    let n = basis.order();
    for &v in rows.iter().chain(cols) {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
    }
    let scaled: Vec<Vec<f64>> = cols
        .iter()
        .map(|&w| {
            basis
                .node_row(w)
                .iter()
                .zip(fhat)
                .map(|(u, f)| u * f)
                .collect()
        })
        .collect();
    let mut k = DenseMatrix::zeros(rows.len(), cols.len());
    for (i, &v) in rows.iter().enumerate() {
        let uv = basis.node_row(v);
        for (o, s) in k.row_mut(i).iter_mut().zip(&scaled) {
            *o = dot(uv, s);
        }
    }
    Ok(k)
}

/// Sample nodes `w_1..w_N` (distinct) with values `x(w_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    nodes: Vec<usize>,
    values: Vec<f64>,
}

impl SampleSet {
    /// Validates against a graph with `n` nodes.
    pub fn new(nodes: Vec<usize>, values: Vec<f64>, n: usize) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                found: values.len(),
            });
        }
        let mut seen = vec![false; n];
        for &w in &nodes {
            if w >= n {
                return Err(Error::IndexOutOfRange { index: w, n });
            }
            if std::mem::replace(&mut seen[w], true) {
                return Err(Error::DuplicateNode(w));
            }
        }
        Ok(Self { nodes, values })
    }

    /// Samples of `signal` at `nodes`.
    pub fn from_signal(nodes: &[usize], signal: &[f64]) -> Result<Self> {
        let n = signal.len();
        let values = nodes
            .iter()
            .map(|&w| {
                signal
                    .get(w)
                    .copied()
                    .ok_or(Error::IndexOutOfRange { index: w, n })
            })
            .collect::<Result<_>>()?;
        Self::new(nodes.to_vec(), values, n)
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Solution of the interpolation system.
#[derive(Debug, Clone)]
pub struct Interpolant {
    pub coefficients: Vec<f64>,
    pub signal: Signal,
    /// Diagonal jitter the Cholesky solve needed; 0 when none.
    pub jitter: f64,
}

impl Interpolant {
    /// `max_i |I_W x(w_i) − x(w_i)|`.
    pub fn max_sample_error(&self, samples: &SampleSet) -> f64 {
        samples
            .nodes()
            .iter()
            .zip(samples.values())
            .map(|(&w, &x)| (self.signal[w] - x).abs())
            .fold(0.0, f64::max)
    }
}

/// Interpolates `samples` on the whole graph described by `basis`.
pub fn gbf_interpolate(basis: &SpectralBasis, spec: GbfSpec, samples: &SampleSet) -> Result<Interpolant> {
    let fhat = spline_fourier(basis.eigenvalues(), spec)?;
    interpolate_with_fhat(basis, &fhat, samples)
}

/// [`gbf_interpolate`] for an arbitrary positive `f̂`.
pub fn interpolate_with_fhat(
    basis: &SpectralBasis,
    fhat: &[f64],
    samples: &SampleSet,
) -> Result<Interpolant> {
    let n = basis.order();
    let big_n = samples.len();
    if big_n == 0 {
        return Err(Error::EmptyNodeSet);
    }
    let all: Vec<usize> = (0..n).collect();
    let mut k_vw = kernel_matrix(basis, fhat, &all, samples.nodes())?;

    // Make the sample rows exactly symmetric so the evaluated signal uses
    // the very matrix that was factorized.
    let w = samples.nodes();
    for i in 0..big_n {
        for j in 0..i {
            let v = k_vw[(w[i], j)];
            k_vw[(w[j], i)] = v;
        }
    }
    let mut k_ww = DenseMatrix::zeros(big_n, big_n);
    for (i, &wi) in w.iter().enumerate() {
        k_ww.row_mut(i).copy_from_slice(k_vw.row(wi));
    }

    let solution = solve_spd(&k_ww, samples.values())?;
    let mut c = solution.x;
    if solution.jitter == 0.0 {
        // one step of iterative refinement against the unperturbed system
        let kc = k_ww.matvec(&c)?;
        let residual: Vec<f64> = samples.values().iter().zip(&kc).map(|(x, y)| x - y).collect();
        let correction = solve_spd(&k_ww, &residual)?.x;
        for (ci, di) in c.iter_mut().zip(correction) {
            *ci += di;
        }
    }
    let signal = Signal::from(k_vw.matvec(&c)?);
    Ok(Interpolant {
        coefficients: c,
        signal,
        jitter: solution.jitter,
    })
}
