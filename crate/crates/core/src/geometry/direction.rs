use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point on the unit sphere `S^{p-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct UnitDirection(Vec<f64>);

impl UnitDirection {
    /// Normalizes `coords`; rejects empty, zero and non-finite input.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidDirection("empty coordinates".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidDirection("non-finite coordinate".into()));
        }
        let n = super::norm(&coords);
        if n == 0.0 {
            return Err(Error::InvalidDirection("zero vector".into()));
        }
        if coords.len() == 1 {
            return Ok(Self(vec![coords[0].signum()]));
        }
        Ok(Self(coords.into_iter().map(|c| c / n).collect()))
    }

    /// `(cos θ, sin θ)`.
    pub fn from_angle(theta: f64) -> Self {
        Self(vec![theta.cos(), theta.sin()])
    }

    pub fn positive_1d() -> Self {
        Self(vec![1.0])
    }

    pub fn negative_1d() -> Self {
        Self(vec![-1.0])
    }

    pub fn axis(dim: usize, i: usize, positive: bool) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = if positive { 1.0 } else { -1.0 };
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }
}

impl TryFrom<Vec<f64>> for UnitDirection {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<UnitDirection> for Vec<f64> {
    fn from(u: UnitDirection) -> Self {
        u.0
    }
}

impl AsRef<[f64]> for UnitDirection {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_input() {
        let u = UnitDirection::new(vec![3.0, 4.0]).unwrap();
        assert!((super::super::norm(u.coords()) - 1.0).abs() <= 1e-12);
        assert_eq!(u.coords(), &[0.6, 0.8]);
    }

    #[test]
    fn one_dimensional_directions_are_signs() {
        assert_eq!(UnitDirection::new(vec![0.25]).unwrap().coords(), &[1.0]);
        assert_eq!(UnitDirection::new(vec![-7.0]).unwrap().coords(), &[-1.0]);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(UnitDirection::new(vec![]).is_err());
        assert!(UnitDirection::new(vec![0.0, 0.0]).is_err());
        assert!(UnitDirection::new(vec![f64::NAN, 1.0]).is_err());
    }
}
