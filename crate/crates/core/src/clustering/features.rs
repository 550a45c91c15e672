use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graph::Point;
use crate::linalg::DenseMatrix;
use crate::rng;

/// An `n × k` node feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix(pub DenseMatrix);

impl FeatureMatrix {
    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.cols()
    }

    /// `cos(X W)` for a given `2 × k` projection, stored row-major as `[w_x.., w_y..]`.
    pub fn from_projection(coords: &[Point], projection: &DenseMatrix) -> Result<Self> {
        if projection.rows() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: projection.rows(),
            });
        }
        let k = projection.cols();
        let mut out = DenseMatrix::zeros(coords.len(), k);
        for (i, [x, y]) in coords.iter().enumerate() {
            for (j, o) in out.row_mut(i).iter_mut().enumerate() {
                *o = (x * projection[(0, j)] + y * projection[(1, j)]).cos();
            }
        }
        Ok(FeatureMatrix(out))
    }
}

/// Random cosine features `cos(X W)` of node coordinates `X` (`n × 2`, used
/// unnormalized) with `W` a `2 × k` matrix of i.i.d. standard normal entries
/// drawn from `ChaCha8Rng` seeded with `seed`, in row-major order.
pub fn random_feature_matrix(coords: Option<&[Point]>, k: usize, seed: u64) -> Result<FeatureMatrix> {
    let coords = coords.ok_or(Error::MissingCoordinates)?;
    if k == 0 {
        return Err(Error::Config("feature dimension k must be at least 1".into()));
    }
    let mut rng = rng::seeded(seed);
    let w: Vec<f64> = (0..2 * k).map(|_| rng.sample(StandardNormal)).collect();
    FeatureMatrix::from_projection(coords, &DenseMatrix::from_row_major(2, k, w)?)
}
