use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScale {
    Linear,
    Log,
}

/// Frequency grid description (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub scale: GridScale,
}

impl FrequencyGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.min <= 0.0 {
            return Err(Error::InvalidGrid(format!("bounds must be finite and positive, got [{}, {}]", self.min, self.max)));
        }
        if self.points == 0 {
            return Err(Error::InvalidGrid("at least one point is required".into()));
        }
        if self.points > 1 && self.max <= self.min {
            return Err(Error::InvalidGrid(format!("max {} must exceed min {}", self.max, self.min)));
        }
        Ok(())
    }

    pub fn points<T: Real>(&self) -> Result<Vec<T>> {
        self.validate()?;
        if self.points == 1 {
            return Ok(vec![T::lit(self.min)]);
        }
        let n = self.points - 1;
        let grid = (0..self.points)
            .map(|i| {
                let t = i as f64 / n as f64;
                let v = match self.scale {
                    GridScale::Linear => self.min + (self.max - self.min) * t,
                    GridScale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                };
                // pin the end points so they are reproduced exactly
                if i == 0 {
                    T::lit(self.min)
                } else if i == n {
                    T::lit(self.max)
                } else {
                    T::lit(v)
                }
            })
            .collect::<Vec<T>>();
        check_grid(&grid)?;
        Ok(grid)
    }
}

/// Grids must be strictly increasing and positive.
pub(crate) fn check_grid<T: Real>(grid: &[T]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    if grid.iter().any(|w| !w.is_finite() || *w <= T::zero()) {
        return Err(Error::InvalidGrid("frequencies must be finite and positive".into()));
    }
    if let Some(i) = grid.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(format!("grid not strictly increasing at index {}", i + 1)));
    }
    Ok(())
}

impl FrequencyGrid {
    /// Validates an explicit list of frequencies.
    pub fn validate_points<T: Real>(grid: &[T]) -> Result<()> {
        check_grid(grid)
    }
}
