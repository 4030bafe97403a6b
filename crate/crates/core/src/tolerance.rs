use crate::error::{Error, Result};

/// Tolerances behind every numerical decision made by the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative singular-value cutoff used to decide numerical rank.
    pub rank_tol: f64,
    /// Slack allowed on eigenvalue negativity in PSD tests.
    pub psd_tol: f64,
    /// Number of points on sup-norm evaluation grids.
    pub grid_points: usize,
    /// Entrywise tolerance for factorization comparisons.
    pub match_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { rank_tol: 1e-10, psd_tol: 1e-10, grid_points: 10001, match_tol: 1e-10 }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x.is_finite();
        if !ok(self.rank_tol) || !ok(self.psd_tol) || !ok(self.match_tol) || self.grid_points == 0 {
            return Err(Error::InvalidModel("tolerances must be positive and finite".into()));
        }
        Ok(())
    }
}
