//! Infimum/supremum profiles of one residue class of a sequence.
//!
//! A class `{first, first + step, …}` is split into a finite window, which
//! is enumerated exactly, and the asymptotic regime beyond it, which is
//! described by the leading term `C n^α` of `|f(n)|²`. The window extends
//! past the point where that leading term dominates, so beyond it the
//! moduli move monotonically towards their limit.

use alloc::vec::Vec;

use super::series::Series;

const MIN_WINDOW: usize = 64;
const MAX_WINDOW: usize = 1 << 20;
const FALLBACK_WINDOW: usize = 1 << 14;
const EXP_EPS: f64 = 1e-12;

/// Asymptotic regime of `|f(n)|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Asymptotics {
    /// The class vanishes identically.
    Zero,
    /// `|f(n)|² ~ coeff · n^exp` for `n ≥ dominance`.
    Leading { exp: f64, coeff: f64, dominance: f64 },
    /// The expansion cancelled beyond its known terms.
    Unresolved,
}

impl Asymptotics {
    pub fn from_series(series: Option<&Series>, max_shift: f64) -> Asymptotics {
        let Some(s) = series else { return Asymptotics::Unresolved };
        match s.leading() {
            Some((exp, coeff)) if coeff > 0.0 => Asymptotics::Leading {
                exp,
                coeff,
                dominance: s.dominance_index().max(2.0 * max_shift + 2.0),
            },
            Some(_) => Asymptotics::Unresolved,
            None if s.is_exact() => Asymptotics::Zero,
            None => Asymptotics::Unresolved,
        }
    }

    /// Limit of `|f(n)|` as `n → ∞`.
    pub fn limit(&self) -> Option<f64> {
        match *self {
            Asymptotics::Zero => Some(0.0),
            Asymptotics::Leading { exp, coeff, .. } => Some(if exp < -EXP_EPS {
                0.0
            } else if exp > EXP_EPS {
                f64::INFINITY
            } else {
                libm::sqrt(coeff)
            }),
            Asymptotics::Unresolved => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    /// Every entry of the class is zero.
    pub zero_class: bool,
    /// Infimum of the nonzero moduli (`+∞` if there are none).
    pub inf: f64,
    pub inf_attained: bool,
    /// Supremum of the moduli.
    pub sup: f64,
    pub sup_attained: bool,
    /// Isolated zero entries.
    pub zeros: Vec<usize>,
}

impl Profile {
    fn zero() -> Self {
        Profile { zero_class: true, inf: f64::INFINITY, inf_attained: false, sup: 0.0, sup_attained: true, zeros: Vec::new() }
    }
}

/// Running infimum/supremum over several classes and explicit values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremes {
    pub inf: f64,
    pub inf_attained: bool,
    pub sup: f64,
    pub sup_attained: bool,
}

impl Extremes {
    pub const EMPTY: Extremes = Extremes { inf: f64::INFINITY, inf_attained: false, sup: 0.0, sup_attained: true };

    pub fn merge(&mut self, inf: f64, inf_attained: bool, sup: f64, sup_attained: bool) {
        if inf < self.inf {
            self.inf = inf;
            self.inf_attained = inf_attained;
        } else if inf == self.inf {
            self.inf_attained |= inf_attained;
        }
        if sup > self.sup {
            self.sup = sup;
            self.sup_attained = sup_attained;
        } else if sup == self.sup {
            self.sup_attained |= sup_attained;
        }
    }

    /// An explicitly enumerated nonzero modulus.
    pub fn value(&mut self, m: f64) {
        self.merge(m, true, m, true);
    }

    pub fn profile(&mut self, p: &Profile) {
        if !p.zero_class {
            self.merge(p.inf, p.inf_attained, p.sup, p.sup_attained);
        }
    }
}

/// Profiles the moduli `modulus(n)` over the class starting at `first`.
pub fn profile_class(first: usize, step: usize, asym: Asymptotics, modulus: impl Fn(usize) -> f64) -> Profile {
    let window = match asym {
        Asymptotics::Zero => return Profile::zero(),
        Asymptotics::Leading { dominance, .. } => {
            let dom = (4.0 * dominance).min((first + MAX_WINDOW * step) as f64) as usize;
            let beyond = dom.saturating_sub(first) / step + 1;
            beyond.clamp(MIN_WINDOW, MAX_WINDOW)
        }
        Asymptotics::Unresolved => FALLBACK_WINDOW,
    };
    let mut inf = f64::INFINITY;
    let mut sup: f64 = 0.0;
    let mut zeros = Vec::new();
    for i in 0..window {
        let n = first + i * step;
        let m = modulus(n);
        if m == 0.0 {
            zeros.push(n);
            continue;
        }
        inf = inf.min(m);
        sup = sup.max(m);
    }
    let Some(limit) = asym.limit() else {
        if inf == f64::INFINITY {
            return Profile::zero();
        }
        return Profile { zero_class: false, inf, inf_attained: true, sup, sup_attained: true, zeros };
    };
    let (inf, inf_attained) = if limit < inf { (limit, false) } else { (inf, true) };
    let (sup, sup_attained) = if limit > sup { (limit, false) } else { (sup, true) };
    Profile { zero_class: false, inf, inf_attained, sup, sup_attained, zeros }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lead(exp: f64, coeff: f64) -> Asymptotics {
        Asymptotics::Leading { exp, coeff, dominance: 1.0 }
    }

    #[test]
    fn growing_class_attains_infimum_at_start() {
        let p = profile_class(4, 1, lead(2.0, 1.0), |n| n as f64);
        assert_eq!((p.inf, p.inf_attained), (4.0, true));
        assert_eq!(p.sup, f64::INFINITY);
        assert!(!p.sup_attained);
    }

    #[test]
    fn decaying_class_has_unattained_zero_infimum() {
        let p = profile_class(3, 2, lead(-2.0, 1.0), |n| 1.0 / n as f64);
        assert_eq!((p.inf, p.inf_attained), (0.0, false));
        assert_eq!((p.sup, p.sup_attained), (1.0 / 3.0, true));
    }

    #[test]
    fn limit_from_above_is_not_attained() {
        let p = profile_class(1, 1, lead(0.0, 1.0), |n| 1.0 + 1.0 / n as f64);
        assert_eq!((p.inf, p.inf_attained), (1.0, false));
        assert_eq!((p.sup, p.sup_attained), (2.0, true));
    }

    #[test]
    fn isolated_zeros_are_reported() {
        let p = profile_class(1, 1, lead(2.0, 1.0), |n| if n == 3 { 0.0 } else { n as f64 });
        assert_eq!(p.zeros, alloc::vec![3]);
        assert_eq!(p.inf, 1.0);
    }
}
