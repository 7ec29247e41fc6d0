use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{dot, hull, norm, serde_repr::BodyRepr, UnitDirection};
use crate::error::{Error, Result};

/// Largest dimension for which a box is expanded into its `2^p` corners.
const MAX_BOX_CORNER_DIM: usize = 16;

/// A nonempty compact convex subset of `R^p`, known through its support
/// function `s_K(u) = sup_{k ∈ K} <k, u>`.
///
/// Construct through the checked constructors ([`ConvexBody::interval`],
/// [`ConvexBody::polytope`], ...); the variants are public for matching.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyRepr", into = "BodyRepr")]
pub enum ConvexBody {
    /// `[a, b] ⊂ R`, `a <= b`.
    Interval {
        a: f64,
        b: f64,
    },
    /// Axis-aligned box, componentwise `min <= max`.
    Box {
        min: Vec<f64>,
        max: Vec<f64>,
    },
    /// Convex hull of a finite point set. Points need not be extreme.
    Polytope {
        vertices: Vec<Vec<f64>>,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    /// Bodies without a closed-form representation, evaluated only
    /// through support oracles.
    Composite(Composite),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Composite {
    /// Minkowski sum of at least one term.
    Sum(Vec<ConvexBody>),
    /// `factor · body` with `factor >= 0`.
    Scaled { factor: f64, body: Box<ConvexBody> },
    /// `matrix · body` with a nonsingular square matrix.
    Linear {
        matrix: DMatrix<f64>,
        body: Box<ConvexBody>,
    },
}

fn check_finite(values: &[f64], what: &str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidBody(format!("{what}: non-finite coordinate")))
    }
}

impl ConvexBody {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        check_finite(&[a, b], "interval")?;
        if a > b {
            return Err(Error::InvalidBody(format!("interval: a = {a} > b = {b}")));
        }
        Ok(Self::Interval { a, b })
    }

    pub fn boxed(min: Vec<f64>, max: Vec<f64>) -> Result<Self> {
        if min.is_empty() || min.len() != max.len() {
            return Err(Error::InvalidBody(format!(
                "box: min has {} coordinates, max has {}",
                min.len(),
                max.len()
            )));
        }
        check_finite(&min, "box.min")?;
        check_finite(&max, "box.max")?;
        if min.iter().zip(&max).any(|(lo, hi)| lo > hi) {
            return Err(Error::InvalidBody("box: min exceeds max".into()));
        }
        Ok(Self::Box { min, max })
    }

    pub fn polytope(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidBody("polytope: no vertices".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidBody("polytope: zero-dimensional vertex".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            check_finite(v, "polytope.vertices")?;
        }
        Ok(Self::Polytope { vertices })
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidBody("ball: empty center".into()));
        }
        check_finite(&center, "ball.center")?;
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidBody(format!("ball: invalid radius {radius}")));
        }
        Ok(Self::Ball { center, radius })
    }

    /// The singleton `{x}`.
    pub fn point(x: Vec<f64>) -> Result<Self> {
        if x.len() == 1 {
            return Self::interval(x[0], x[0]);
        }
        Self::polytope(vec![x])
    }

    pub fn origin(dim: usize) -> Self {
        if dim == 1 {
            Self::Interval { a: 0.0, b: 0.0 }
        } else {
            Self::Polytope {
                vertices: vec![vec![0.0; dim]],
            }
        }
    }

    /// Axis-aligned square `[x0, x0+side] × [y0, y0+side]` as a polytope.
    pub fn square(x0: f64, y0: f64, side: f64) -> Result<Self> {
        Self::polytope(vec![
            vec![x0, y0],
            vec![x0 + side, y0],
            vec![x0 + side, y0 + side],
            vec![x0, y0 + side],
        ])
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Interval { .. } => 1,
            Self::Box { min, .. } => min.len(),
            Self::Polytope { vertices } => vertices[0].len(),
            Self::Ball { center, .. } => center.len(),
            Self::Composite(c) => c.dim(),
        }
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: dim,
            })
        }
    }

    /// `s_K(u)`.
    pub fn support(&self, u: &UnitDirection) -> Result<f64> {
        self.check_dim(u.dim())?;
        Ok(self.support_vec(u.coords()))
    }

    /// Support function extended positively homogeneously to all of `R^p`.
    /// The caller guarantees `v.len() == self.dim()`.
    pub fn support_vec(&self, v: &[f64]) -> f64 {
        match self {
            Self::Interval { a, b } => {
                if v[0] >= 0.0 {
                    b * v[0]
                } else {
                    a * v[0]
                }
            }
            Self::Box { min, max } => v
                .iter()
                .zip(min.iter().zip(max))
                .map(|(vi, (lo, hi))| if *vi >= 0.0 { hi * vi } else { lo * vi })
                .sum(),
            Self::Polytope { vertices } => vertices
                .iter()
                .map(|x| dot(x, v))
                .fold(f64::NEG_INFINITY, f64::max),
            Self::Ball { center, radius } => dot(center, v) + radius * norm(v),
            Self::Composite(c) => c.support_vec(v),
        }
    }

    /// Interval, box or V-polytope.
    pub fn is_polytopal(&self) -> bool {
        matches!(
            self,
            Self::Interval { .. } | Self::Box { .. } | Self::Polytope { .. }
        )
    }

    /// Generating point set of a polytopal body; `None` otherwise.
    pub fn vertices(&self) -> Option<Vec<Vec<f64>>> {
        match self {
            Self::Interval { a, b } => {
                if a == b {
                    Some(vec![vec![*a]])
                } else {
                    Some(vec![vec![*a], vec![*b]])
                }
            }
            Self::Box { min, max } => {
                let dim = min.len();
                if dim > MAX_BOX_CORNER_DIM {
                    return None;
                }
                let free: Vec<usize> = (0..dim).filter(|&i| min[i] != max[i]).collect();
                let mut out = Vec::with_capacity(1 << free.len());
                for mask in 0..(1usize << free.len()) {
                    let mut corner = min.clone();
                    for (bit, &i) in free.iter().enumerate() {
                        if mask & (1 << bit) != 0 {
                            corner[i] = max[i];
                        }
                    }
                    out.push(corner);
                }
                Some(out)
            }
            Self::Polytope { vertices } => Some(vertices.clone()),
            _ => None,
        }
    }

    /// True when the body is `{0}` up to `tol`.
    pub fn is_origin(&self, tol: f64) -> bool {
        match self {
            Self::Ball { center, radius } => norm(center) <= tol && *radius <= tol,
            Self::Composite(_) => {
                let dim = self.dim();
                super::default_directions(dim)
                    .iter()
                    .all(|u| self.support_vec(u.coords()).abs() <= tol)
            }
            _ => self
                .vertices()
                .map(|vs| vs.iter().all(|v| norm(v) <= tol))
                .unwrap_or(false),
        }
    }

    /// Minkowski sum `K + L`. Intervals, boxes and balls close in kind,
    /// polytopal pairs close as V-polytopes, anything else becomes a
    /// composite sum.
    pub fn minkowski_sum(&self, other: &ConvexBody) -> Result<ConvexBody> {
        other.check_dim(self.dim())?;
        use ConvexBody::*;
        Ok(match (self, other) {
            (Interval { a, b }, Interval { a: c, b: d }) => Interval { a: a + c, b: b + d },
            (Box { min, max }, Box { min: m2, max: x2 }) => Box {
                min: add(min, m2),
                max: add(max, x2),
            },
            (
                Ball { center, radius },
                Ball {
                    center: c2,
                    radius: r2,
                },
            ) => Ball {
                center: add(center, c2),
                radius: radius + r2,
            },
            _ if self.is_polytopal() && other.is_polytopal() => match (self.vertices(), other.vertices()) {
                (Some(p), Some(q)) => {
                    let mut sums = Vec::with_capacity(p.len() * q.len());
                    for x in &p {
                        for y in &q {
                            sums.push(add(x, y));
                        }
                    }
                    polytope_from_points(sums)
                }
                _ => composite_sum(self, other),
            },
            _ => composite_sum(self, other),
        })
    }

    /// `γ · K` for `γ >= 0`.
    pub fn scale(&self, gamma: f64) -> Result<ConvexBody> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::NegativeScale(gamma));
        }
        use ConvexBody::*;
        Ok(match self {
            Interval { a, b } => Interval {
                a: gamma * a,
                b: gamma * b,
            },
            Box { min, max } => Box {
                min: min.iter().map(|x| gamma * x).collect(),
                max: max.iter().map(|x| gamma * x).collect(),
            },
            Polytope { vertices } => polytope_from_points(
                vertices
                    .iter()
                    .map(|v| v.iter().map(|x| gamma * x).collect())
                    .collect(),
            ),
            Ball { center, radius } => Ball {
                center: center.iter().map(|x| gamma * x).collect(),
                radius: gamma * radius,
            },
            Composite(_) => Composite(self::Composite::Scaled {
                factor: gamma,
                body: std::boxed::Box::new(self.clone()),
            }),
        })
    }

    /// `(1 − λ)·K + λ·L`.
    pub fn convex_combination(&self, other: &ConvexBody, lambda: f64) -> Result<ConvexBody> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!(
                "convex combination weight {lambda} outside [0, 1]"
            )));
        }
        self.scale(1.0 - lambda)?.minkowski_sum(&other.scale(lambda)?)
    }

    /// Translate by the vector `t`.
    pub fn translate(&self, t: &[f64]) -> Result<ConvexBody> {
        self.minkowski_sum(&ConvexBody::point(t.to_vec())?)
    }

    /// For planar polytopes, drop non-extreme points. Other bodies are
    /// returned unchanged.
    pub fn normalized(&self) -> ConvexBody {
        match self {
            Self::Polytope { vertices } if vertices[0].len() == 2 => Self::Polytope {
                vertices: hull::hull_2d(vertices),
            },
            _ => self.clone(),
        }
    }
}

fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// Builds a V-polytope, reducing planar point sets to their hull and
/// dropping exact duplicates otherwise. One-dimensional point sets become
/// intervals.
pub(crate) fn polytope_from_points(mut points: Vec<Vec<f64>>) -> ConvexBody {
    match points[0].len() {
        1 => {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            ConvexBody::Interval { a: lo, b: hi }
        }
        2 => ConvexBody::Polytope {
            vertices: hull::hull_2d(&points),
        },
        _ => {
            points.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
            points.dedup();
            ConvexBody::Polytope { vertices: points }
        }
    }
}

fn composite_sum(a: &ConvexBody, b: &ConvexBody) -> ConvexBody {
    let mut terms = Vec::new();
    for body in [a, b] {
        match body {
            ConvexBody::Composite(Composite::Sum(inner)) => terms.extend(inner.iter().cloned()),
            other => terms.push(other.clone()),
        }
    }
    ConvexBody::Composite(Composite::Sum(terms))
}

impl Composite {
    pub fn dim(&self) -> usize {
        match self {
            Composite::Sum(terms) => terms[0].dim(),
            Composite::Scaled { body, .. } => body.dim(),
            Composite::Linear { matrix, .. } => matrix.nrows(),
        }
    }

    fn support_vec(&self, v: &[f64]) -> f64 {
        match self {
            Composite::Sum(terms) => terms.iter().map(|t| t.support_vec(v)).sum(),
            Composite::Scaled { factor, body } => factor * body.support_vec(v),
            Composite::Linear { matrix, body } => {
                // s_{M·K}(v) = ‖Mᵀv‖ · s_K(Mᵀv / ‖Mᵀv‖)
                let image = matrix.transpose() * nalgebra::DVector::from_column_slice(v);
                let n = image.norm();
                if n == 0.0 {
                    return 0.0;
                }
                let unit: Vec<f64> = image.iter().map(|x| x / n).collect();
                n * body.support_vec(&unit)
            }
        }
    }
}
