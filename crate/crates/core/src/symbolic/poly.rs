//! Generalized polynomials in the sequence index `n`.
//!
//! A monomial is `c · Π (n + h_i)^{p_i}` with real shifts `h_i ≥ 0` and real
//! exponents `p_i`; a polynomial is a finite sum of monomials with like terms
//! merged. Shifts appear only after interleaving substitutions.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::scalar::{modulus, pow_real, scalar_powf, Scalar, ONE, ZERO};

/// Coefficient sums smaller than this fraction of the summands cancel to zero.
pub(crate) const CANCEL_REL: f64 = 1e-13;
const EXP_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub shift: f64,
    pub exp: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coeff: Scalar,
    pub factors: Vec<Factor>,
}

fn cancelled(sum: Scalar, a: Scalar, b: Scalar) -> bool {
    let scale = modulus(a) + modulus(b);
    modulus(sum) <= CANCEL_REL * scale
}

fn normalize_factors(mut factors: Vec<Factor>) -> Vec<Factor> {
    factors.sort_by(|a, b| a.shift.total_cmp(&b.shift));
    let mut out: Vec<Factor> = Vec::with_capacity(factors.len());
    for f in factors {
        match out.last_mut() {
            Some(last) if last.shift == f.shift => last.exp += f.exp,
            _ => out.push(f),
        }
    }
    out.retain(|f| libm::fabs(f.exp) > EXP_EPS);
    out
}

fn same_factors(a: &[Factor], b: &[Factor]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| x.shift == y.shift && libm::fabs(x.exp - y.exp) <= EXP_EPS)
}

fn cmp_factors(a: &[Factor], b: &[Factor]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.shift.total_cmp(&y.shift).then(x.exp.total_cmp(&y.exp));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

impl Monomial {
    pub fn constant(c: Scalar) -> Self {
        Monomial { coeff: c, factors: Vec::new() }
    }

    /// `c · n^p`.
    pub fn power(c: Scalar, p: f64) -> Self {
        Monomial { coeff: c, factors: normalize_factors(alloc::vec![Factor { shift: 0.0, exp: p }]) }
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree `Σ p_i`, the exponent of the leading asymptotic term.
    pub fn degree(&self) -> f64 {
        self.factors.iter().map(|f| f.exp).sum()
    }

    pub fn max_shift(&self) -> f64 {
        self.factors.iter().map(|f| f.shift).fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Monomial { coeff: self.coeff * other.coeff, factors: normalize_factors(factors) }
    }

    /// Real power; the coefficient takes its principal branch.
    pub fn powf(&self, e: f64) -> Monomial {
        let factors = self.factors.iter().map(|f| Factor { shift: f.shift, exp: f.exp * e }).collect();
        Monomial { coeff: scalar_powf(self.coeff, e), factors: normalize_factors(factors) }
    }

    pub fn recip(&self) -> Monomial {
        let factors = self.factors.iter().map(|f| Factor { shift: f.shift, exp: -f.exp }).collect();
        Monomial { coeff: ONE / self.coeff, factors }
    }

    /// Substitutes `n ↦ (n + beta) / alpha`.
    pub fn substitute(&self, alpha: f64, beta: f64) -> Monomial {
        let mut coeff = self.coeff;
        let factors = self
            .factors
            .iter()
            .map(|f| {
                coeff *= pow_real(alpha, -f.exp);
                Factor { shift: beta + alpha * f.shift, exp: f.exp }
            })
            .collect();
        Monomial { coeff, factors: normalize_factors(factors) }
    }

    pub fn eval(&self, n: f64) -> Scalar {
        let mut v = 1.0;
        for f in &self.factors {
            v *= pow_real(n + f.shift, f.exp);
        }
        self.coeff * v
    }
}

/// Finite sum of monomials, kept with like terms merged and sorted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GenPoly {
    terms: Vec<Monomial>,
}

impl GenPoly {
    pub fn zero() -> Self {
        GenPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_terms(alloc::vec![Monomial::constant(c)])
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_terms(alloc::vec![m])
    }

    pub fn from_terms(mut terms: Vec<Monomial>) -> Self {
        terms.sort_by(|a, b| cmp_factors(&a.factors, &b.factors));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.coeff == ZERO {
                continue;
            }
            match out.last_mut() {
                Some(last) if same_factors(&last.factors, &t.factors) => {
                    let sum = last.coeff + t.coeff;
                    if cancelled(sum, last.coeff, t.coeff) {
                        out.pop();
                    } else {
                        last.coeff = sum;
                    }
                }
                _ => out.push(t),
            }
        }
        GenPoly { terms: out }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn single(&self) -> Option<&Monomial> {
        match self.terms.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(ZERO),
            [m] if m.is_constant() => Some(m.coeff),
            _ => None,
        }
    }

    pub fn max_shift(&self) -> f64 {
        self.terms.iter().map(Monomial::max_shift).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &GenPoly) -> GenPoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(terms)
    }

    pub fn neg(&self) -> GenPoly {
        self.scale(-ONE)
    }

    pub fn sub(&self, other: &GenPoly) -> GenPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Scalar) -> GenPoly {
        Self::from_terms(self.terms.iter().map(|m| Monomial { coeff: m.coeff * c, factors: m.factors.clone() }).collect())
    }

    pub fn mul(&self, other: &GenPoly) -> GenPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.mul(b));
            }
        }
        Self::from_terms(terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> GenPoly {
        Self::from_terms(self.terms.iter().map(|t| t.mul(m)).collect())
    }

    pub fn powi(&self, e: u32) -> GenPoly {
        let mut acc = GenPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conj(&self) -> GenPoly {
        Self::from_terms(self.terms.iter().map(|m| Monomial { coeff: m.coeff.conj(), factors: m.factors.clone() }).collect())
    }

    pub fn substitute(&self, alpha: f64, beta: f64) -> GenPoly {
        Self::from_terms(self.terms.iter().map(|m| m.substitute(alpha, beta)).collect())
    }

    /// Value at `n` together with `Σ |term|`, the scale that rounding
    /// errors are measured against.
    pub fn eval(&self, n: f64) -> (Scalar, f64) {
        let mut v = ZERO;
        let mut mag = 0.0;
        for m in &self.terms {
            let t = m.eval(n);
            mag += modulus(t);
            v += t;
        }
        (v, mag)
    }

    /// Value at `n`, snapped to zero when it is pure cancellation noise.
    pub fn eval_snapped(&self, n: f64) -> Scalar {
        let (v, mag) = self.eval(n);
        if self.terms.len() > 1 && modulus(v) <= CANCEL_REL * mag {
            ZERO
        } else {
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::real;

    #[test]
    fn like_terms_cancel() {
        let a = GenPoly::monomial(Monomial::power(real(1.0), -1.0)).add(&GenPoly::constant(real(1.0)));
        let b = GenPoly::monomial(Monomial::power(real(1.0), -1.0));
        assert_eq!(a.sub(&b), GenPoly::constant(real(1.0)));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exponents_cancel_to_constants() {
        let n = Monomial::power(real(1.0), 1.0);
        let inv = Monomial::power(real(1.0), -1.0);
        let prod = GenPoly::monomial(n.mul(&inv)).sub(&GenPoly::one());
        assert!(prod.is_zero());
    }

    #[test]
    fn substitution_interleaves() {
        // k^2 at k = (n + 1) / 2
        let m = Monomial::power(real(1.0), 2.0).substitute(2.0, 1.0);
        assert_eq!(m.eval(5.0), real(9.0));
    }

    #[test]
    fn snapped_evaluation_detects_roots() {
        let p = GenPoly::monomial(Monomial::power(real(1.0), 1.0)).sub(&GenPoly::constant(real(3.0)));
        assert_eq!(p.eval_snapped(3.0), ZERO);
        assert_eq!(p.eval_snapped(4.0), real(1.0));
    }
}
