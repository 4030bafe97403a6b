//! One-sided Jacobi singular value decomposition for complex matrices.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ONE};

/// A column pair is left alone once `|⟨u_p, u_q⟩| ≤ m · ε · ‖u_p‖‖u_q‖`, or
/// when the inner product is below `ε² ‖A‖_F²` and only rounding noise is left.
const MAX_SWEEPS: usize = 80;

/// `A = U Σ Vᴴ` for `A` with at least as many rows as columns. `U` has
/// orthonormal columns where `σ > 0` and zero columns elsewhere; `V` is
/// square and unitary. Singular values are in descending order.
pub(crate) struct Svd {
    pub u: DMatrix<Scalar>,
    pub sigma: Vec<f64>,
    pub v: DMatrix<Scalar>,
}

pub(crate) fn svd(a: &DMatrix<Scalar>) -> Result<Svd> {
    let (m, n) = a.shape();
    debug_assert!(m >= n, "decompose the adjoint of wide matrices");
    let mut w = a.clone();
    let mut v = DMatrix::<Scalar>::identity(n, n);
    let tol = (m.max(1) as f64) * f64::EPSILON;
    let floor = f64::EPSILON * f64::EPSILON * a.norm_squared();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let g = w.column(p).dotc(&w.column(q));
                let gm = g.norm();
                if gm <= floor || gm <= tol * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                // Rotate u_p against e^{-iφ} u_q, where g = |g| e^{iφ}.
                let phase = g / gm;
                let zeta = (beta - alpha) / (2.0 * gm);
                let t = libm::copysign(1.0, zeta) / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                let rotate = |x: &mut DMatrix<Scalar>| {
                    for i in 0..x.nrows() {
                        let (xp, xq) = (x[(i, p)], x[(i, q)] * phase.conj());
                        x[(i, p)] = xp * c - xq * s;
                        x[(i, q)] = xp * s + xq * c;
                    }
                };
                rotate(&mut w);
                rotate(&mut v);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergent("singular value decomposition".into()));
    }
    let mut order: Vec<(usize, f64)> = (0..n).map(|j| (j, w.column(j).norm())).collect();
    order.sort_by(|x, y| y.1.total_cmp(&x.1));
    let mut u = DMatrix::<Scalar>::zeros(m, n);
    let mut vs = DMatrix::<Scalar>::zeros(n, n);
    for (k, &(j, s)) in order.iter().enumerate() {
        if s > 0.0 {
            u.set_column(k, &(w.column(j) * (ONE / s)));
        }
        vs.set_column(k, &v.column(j));
    }
    Ok(Svd { u, sigma: order.into_iter().map(|(_, s)| s).collect(), v: vs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_a_rank_deficient_matrix() {
        let c = Scalar::new;
        let a = DMatrix::from_row_slice(3, 2, &[c(1.0, 1.0), c(2.0, 2.0), c(0.0, 1.0), c(0.0, 2.0), c(3.0, 0.0), c(6.0, 0.0)]);
        let d = svd(&a).unwrap();
        assert!(d.sigma[1] < 1e-15 * d.sigma[0]);
        let sigma = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(2, d.sigma.iter().map(|&s| Scalar::new(s, 0.0))));
        assert!((&d.u * sigma * d.v.adjoint() - &a).norm() < 1e-14 * d.sigma[0]);
        assert!((d.v.adjoint() * &d.v - DMatrix::identity(2, 2)).norm() < 1e-15);
    }
}
