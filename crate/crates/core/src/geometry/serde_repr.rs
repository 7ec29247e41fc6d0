//! JSON shape of bodies:
//! `{"type":"interval","a":1,"b":2}`, `{"type":"box","min":[..],"max":[..]}`,
//! `{"type":"polytope","vertices":[[..],..]}`, `{"type":"ball","center":[..],"radius":r}`.
//! Composites use `sum`, `scaled` and `linear`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::body::Composite;
use super::ConvexBody;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub(crate) enum BodyRepr {
    Interval {
        a: f64,
        b: f64,
    },
    Box {
        min: Vec<f64>,
        max: Vec<f64>,
    },
    Polytope {
        vertices: Vec<Vec<f64>>,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Sum {
        terms: Vec<ConvexBody>,
    },
    Scaled {
        factor: f64,
        body: std::boxed::Box<ConvexBody>,
    },
    Linear {
        matrix: Vec<Vec<f64>>,
        body: std::boxed::Box<ConvexBody>,
    },
}

impl TryFrom<BodyRepr> for ConvexBody {
    type Error = Error;

    fn try_from(repr: BodyRepr) -> Result<Self> {
        match repr {
            BodyRepr::Interval { a, b } => ConvexBody::interval(a, b),
            BodyRepr::Box { min, max } => ConvexBody::boxed(min, max),
            BodyRepr::Polytope { vertices } => ConvexBody::polytope(vertices),
            BodyRepr::Ball { center, radius } => ConvexBody::ball(center, radius),
            BodyRepr::Sum { terms } => {
                let mut iter = terms.into_iter();
                let first = iter
                    .next()
                    .ok_or_else(|| Error::InvalidBody("sum: no terms".into()))?;
                iter.try_fold(first, |acc, t| acc.minkowski_sum(&t))
            }
            BodyRepr::Scaled { factor, body } => body.scale(factor),
            BodyRepr::Linear { matrix, body } => {
                let dim = body.dim();
                super::AffineMap::from_rows(&matrix, ConvexBody::origin(dim))?.linear_image(&body)
            }
        }
    }
}

impl From<ConvexBody> for BodyRepr {
    fn from(body: ConvexBody) -> Self {
        match body {
            ConvexBody::Interval { a, b } => BodyRepr::Interval { a, b },
            ConvexBody::Box { min, max } => BodyRepr::Box { min, max },
            ConvexBody::Polytope { vertices } => BodyRepr::Polytope { vertices },
            ConvexBody::Ball { center, radius } => BodyRepr::Ball { center, radius },
            ConvexBody::Composite(Composite::Sum(terms)) => BodyRepr::Sum { terms },
            ConvexBody::Composite(Composite::Scaled { factor, body }) => BodyRepr::Scaled { factor, body },
            ConvexBody::Composite(Composite::Linear { matrix, body }) => BodyRepr::Linear {
                matrix: matrix_rows(&matrix),
                body,
            },
        }
    }
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}
