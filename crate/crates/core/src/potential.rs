use crate::error::{Error, Result};
use crate::grid::SpatialGrid;

#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    Free,
    /// `V(x) = v0 · x`
    Linear { v0: f64 },
    /// Linear interpolation between breakpoints, extended linearly beyond the
    /// first and last segments.
    PiecewiseLinear(PiecewiseLinear),
    /// Values tabulated at the points of a grid; linear interpolation in
    /// between and constant extension outside.
    Sampled { grid: SpatialGrid, values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    points: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("breakpoints", "need at least two"));
        }
        if points.iter().any(|(x, v)| !x.is_finite() || !v.is_finite()) {
            return Err(Error::invalid("breakpoints", "non-finite coordinate"));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::invalid("breakpoints", "x must be strictly increasing"));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn eval(&self, x: f64) -> f64 {
        let p = &self.points;
        let seg = match p.iter().position(|&(xb, _)| xb > x) {
            Some(0) => 0,
            Some(i) => i - 1,
            None => p.len() - 2,
        };
        let (x0, v0) = p[seg];
        let (x1, v1) = p[seg + 1];
        v0 + (v1 - v0) * (x - x0) / (x1 - x0)
    }
}

impl Potential {
    pub fn linear(v0: f64) -> Self {
        Potential::Linear { v0 }
    }

    pub fn piecewise(points: Vec<(f64, f64)>) -> Result<Self> {
        Ok(Potential::PiecewiseLinear(PiecewiseLinear::new(points)?))
    }

    pub fn sampled(grid: SpatialGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} potential values for {} grid points",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("values", "non-finite potential value"));
        }
        Ok(Potential::Sampled { grid, values })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Potential::Free => 0.0,
            Potential::Linear { v0 } => v0 * x,
            Potential::PiecewiseLinear(pl) => pl.eval(x),
            Potential::Sampled { grid, values } => {
                let u = (x - grid.x_min()) / grid.dx();
                if u <= 0.0 {
                    return values[0];
                }
                let last = values.len() - 1;
                if u >= last as f64 {
                    return values[last];
                }
                let i = u.floor() as usize;
                let f = u - i as f64;
                values[i] * (1.0 - f) + values[i + 1] * f
            }
        }
    }

    /// Values at the points of `grid`.
    pub fn sample_on(&self, grid: &SpatialGrid) -> Vec<f64> {
        match self {
            Potential::Sampled { grid: g, values } if g.same_positions(grid) => values.clone(),
            _ => grid.positions().into_iter().map(|x| self.eval(x)).collect(),
        }
    }

    /// Points where the potential is not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        match self {
            Potential::PiecewiseLinear(pl) => pl.points.iter().map(|p| p.0).collect(),
            Potential::Sampled { grid, .. } => grid.positions(),
            _ => Vec::new(),
        }
    }

    /// Natural extent for root finding, when the potential has one.
    pub fn support(&self) -> Option<(f64, f64)> {
        match self {
            Potential::PiecewiseLinear(pl) => {
                Some((pl.points[0].0, pl.points[pl.points.len() - 1].0))
            }
            Potential::Sampled { grid, .. } => Some((grid.x_min(), grid.x(grid.len() - 1))),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn breakpoints_must_increase() {
        assert!(Potential::piecewise(vec![(0.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(Potential::piecewise(vec![(1.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(Potential::piecewise(vec![(0.0, 0.0)]).is_err());
    }

    #[test]
    fn piecewise_is_continuous() {
        let v = Potential::piecewise(vec![(0.0, 0.0), (2.0, 4.0), (3.0, 0.0), (5.0, 0.0)]).unwrap();
        for &xb in &[0.0, 2.0, 3.0] {
            let eps = 1e-12;
            assert!((v.eval(xb - eps) - v.eval(xb + eps)).abs() < 1e-10);
        }
        assert_eq!(v.eval(1.0), 2.0);
        assert_eq!(v.eval(2.5), 2.0);
        assert_eq!(v.eval(10.0), 0.0);
    }

    #[test]
    fn linear_exact() {
        let v = Potential::linear(1.5);
        assert_eq!(v.eval(2.0), 3.0);
        assert_eq!(v.eval(-0.1), 1.5 * -0.1);
    }

    #[test]
    fn sampled_interpolates() {
        let g = SpatialGrid::new(0.0, 16.0, 16).unwrap();
        let vals: Vec<f64> = g.positions().iter().map(|x| 2.0 * x).collect();
        let v = Potential::sampled(g, vals).unwrap();
        assert!((v.eval(3.25) - 6.5).abs() < 1e-14);
        assert_eq!(v.eval(-1.0), 0.0);
        assert_eq!(v.eval(100.0), 30.0);
    }
}
