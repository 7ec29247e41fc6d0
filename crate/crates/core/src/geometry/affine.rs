use nalgebra::{DMatrix, DVector};

use super::body::{polytope_from_points, Composite};
use super::{ConvexBody, UnitDirection};
use crate::error::{Error, Result};

/// `K ↦ M·K + L` with `M` nonsingular.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    matrix: DMatrix<f64>,
    translate: ConvexBody,
}

fn check_nonsingular(matrix: &DMatrix<f64>) -> Result<()> {
    if !matrix.is_square() || matrix.nrows() == 0 {
        return Err(Error::MatrixShape {
            dim: matrix.nrows().max(matrix.ncols()),
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    if matrix.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let det = matrix.determinant();
    if det == 0.0 || !det.is_finite() {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

impl AffineMap {
    pub fn new(matrix: DMatrix<f64>, translate: ConvexBody) -> Result<Self> {
        check_nonsingular(&matrix)?;
        if translate.dim() != matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: translate.dim(),
            });
        }
        Ok(Self { matrix, translate })
    }

    /// Pure linear map (`L = {0}`).
    pub fn linear(matrix: DMatrix<f64>) -> Result<Self> {
        let dim = matrix.nrows();
        Self::new(matrix, ConvexBody::origin(dim.max(1)))
    }

    pub fn from_rows(rows: &[Vec<f64>], translate: ConvexBody) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::MatrixShape {
                dim: n,
                rows: n,
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        let matrix = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        Self::new(matrix, translate)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn translate(&self) -> &ConvexBody {
        &self.translate
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `M·K` without the translate.
    pub fn linear_image(&self, body: &ConvexBody) -> Result<ConvexBody> {
        if body.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: body.dim(),
            });
        }
        if let Some(vertices) = body.vertices() {
            let mapped = vertices
                .iter()
                .map(|v| {
                    let image = &self.matrix * DVector::from_column_slice(v);
                    image.iter().copied().collect()
                })
                .collect();
            return Ok(polytope_from_points(mapped));
        }
        Ok(ConvexBody::Composite(Composite::Linear {
            matrix: self.matrix.clone(),
            body: Box::new(body.clone()),
        }))
    }

    /// `M·K + L`.
    pub fn apply(&self, body: &ConvexBody) -> Result<ConvexBody> {
        self.linear_image(body)?.minkowski_sum(&self.translate)
    }
}

/// `Mᵀu / ‖Mᵀu‖`, the sphere bijection under which
/// `s_{M·K}(u) = ‖Mᵀu‖ · s_K(sphere_map(M, u))`.
pub fn sphere_map(matrix: &DMatrix<f64>, u: &UnitDirection) -> Result<UnitDirection> {
    check_nonsingular(matrix)?;
    if matrix.nrows() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: matrix.nrows(),
            found: u.dim(),
        });
    }
    let image = matrix.transpose() * DVector::from_column_slice(u.coords());
    UnitDirection::new(image.iter().copied().collect())
}

/// `‖Mᵀu‖`.
pub fn transpose_norm(matrix: &DMatrix<f64>, u: &UnitDirection) -> f64 {
    (matrix.transpose() * DVector::from_column_slice(u.coords())).norm()
}
