//! Entry laws `n ↦ d_n` for one residue class of a diagonal tail.
//!
//! A law is `(P/Q)(k) · Π R_j(k)^{ρ_j}` evaluated at `k = (n + β)/α`, where
//! `P`, `Q` are generalized polynomials and every radical base `R_j` is a
//! positive real ratio. The lazy argument map keeps interleaved laws
//! bitwise identical to the laws they came from.

use alloc::format;
use alloc::vec::Vec;

use super::poly::{GenPoly, Monomial};
use super::series::Series;
use crate::error::{Error, Result};
use crate::scalar::{pow_real, Scalar, ONE, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct Ratio {
    pub num: GenPoly,
    pub den: GenPoly,
}

impl Ratio {
    pub fn new(num: GenPoly, den: GenPoly) -> Self {
        if num.is_zero() {
            return Ratio { num, den: GenPoly::one() };
        }
        if num == den {
            return Ratio { num: GenPoly::one(), den: GenPoly::one() };
        }
        if let Some(m) = den.single() {
            let inv = m.recip();
            return Ratio { num: num.mul_monomial(&inv), den: GenPoly::one() };
        }
        Ratio { num, den }
    }

    pub fn poly(p: GenPoly) -> Self {
        Ratio { num: p, den: GenPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Ratio) -> Ratio {
        if self.den == other.den {
            Ratio::new(self.num.add(&other.num), self.den.clone())
        } else {
            Ratio::new(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
        }
    }

    fn mul(&self, other: &Ratio) -> Ratio {
        Ratio::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn recip(&self) -> Ratio {
        Ratio::new(self.den.clone(), self.num.clone())
    }

    fn conj(&self) -> Ratio {
        Ratio::new(self.num.conj(), self.den.conj())
    }

    fn powi(&self, e: i32) -> Ratio {
        let r = Ratio::new(self.num.powi(e.unsigned_abs()), self.den.powi(e.unsigned_abs()));
        if e < 0 {
            r.recip()
        } else {
            r
        }
    }

    fn substitute(&self, alpha: f64, beta: f64) -> Ratio {
        Ratio::new(self.num.substitute(alpha, beta), self.den.substitute(alpha, beta))
    }

    fn eval(&self, k: f64) -> Scalar {
        let num = self.num.eval_snapped(k);
        if num == ZERO {
            return ZERO;
        }
        match self.den.as_constant() {
            Some(c) if c == ONE => num,
            _ => num / self.den.eval(k).0,
        }
    }

    /// `|P/Q|²` as a ratio of real polynomials.
    fn modulus_sq(&self) -> Ratio {
        Ratio::new(self.num.mul(&self.num.conj()), self.den.mul(&self.den.conj()))
    }

    fn series(&self) -> Option<Series> {
        Some(Series::of_poly(&self.num).mul(&Series::of_poly(&self.den).recip()?))
    }

    fn max_shift(&self) -> f64 {
        self.num.max_shift().max(self.den.max_shift())
    }

    /// `(P/Q)^ρ` as a single monomial when both sides are monomials.
    fn monomial_power(&self, rho: f64) -> Option<Monomial> {
        let num = self.num.single()?;
        let den = match self.den.as_constant() {
            Some(c) => Monomial::constant(c),
            None => self.den.single()?.clone(),
        };
        Some(num.mul(&den.recip()).powf(rho))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Radical {
    pub base: Ratio,
    pub exp: f64,
}

/// Affine argument map `n ↦ (n + beta) / alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgMap {
    pub alpha: f64,
    pub beta: f64,
}

impl ArgMap {
    pub const IDENTITY: ArgMap = ArgMap { alpha: 1.0, beta: 0.0 };

    fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// `self` applied after `inner`: `n ↦ inner((n + beta)/alpha)`.
    fn then(&self, inner: ArgMap) -> ArgMap {
        ArgMap { alpha: self.alpha * inner.alpha, beta: self.beta + self.alpha * inner.beta }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Law {
    ratio: Ratio,
    radicals: Vec<Radical>,
    arg: ArgMap,
}

impl Law {
    pub fn zero() -> Self {
        Self::from_ratio(Ratio::poly(GenPoly::zero()))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_ratio(Ratio::poly(GenPoly::constant(c)))
    }

    /// `c · n^p`.
    pub fn power(c: Scalar, p: f64) -> Self {
        Self::from_ratio(Ratio::poly(GenPoly::monomial(Monomial::power(c, p))))
    }

    pub fn from_ratio(ratio: Ratio) -> Self {
        Law { ratio, radicals: Vec::new(), arg: ArgMap::IDENTITY }
    }

    pub fn ratio(&self) -> &Ratio {
        &self.ratio
    }

    pub fn radicals(&self) -> &[Radical] {
        &self.radicals
    }

    pub fn arg(&self) -> ArgMap {
        self.arg
    }

    pub fn is_zero(&self) -> bool {
        self.ratio.is_zero()
    }

    /// The constant value, when the law is constant in `n`.
    pub fn as_constant(&self) -> Option<Scalar> {
        if !self.radicals.is_empty() || self.ratio.den != GenPoly::one() {
            return None;
        }
        self.ratio.num.as_constant()
    }

    /// `(c, p)` with the law equal to `c · n^p`, if it has that form.
    pub fn as_power(&self) -> Option<(Scalar, f64)> {
        let law = self.materialized();
        let mut m = law.ratio.monomial_power(1.0)?;
        for r in &law.radicals {
            m = m.mul(&r.base.monomial_power(r.exp)?);
        }
        match m.factors.as_slice() {
            [] => Some((m.coeff, 0.0)),
            [f] if f.shift == 0.0 => Some((m.coeff, f.exp)),
            _ => None,
        }
    }

    fn normalized(ratio: Ratio, radicals: Vec<Radical>, arg: ArgMap) -> Law {
        if ratio.is_zero() {
            return Law::zero();
        }
        let mut ratio = ratio;
        let mut merged: Vec<Radical> = Vec::new();
        for r in radicals {
            match merged.iter_mut().find(|m| m.base == r.base) {
                Some(m) => m.exp += r.exp,
                None => merged.push(r),
            }
        }
        let mut kept = Vec::new();
        for r in merged {
            if r.exp == 0.0 || r.base.num == r.base.den {
                continue;
            }
            if r.exp == libm::trunc(r.exp) && libm::fabs(r.exp) <= 16.0 {
                ratio = ratio.mul(&r.base.powi(r.exp as i32));
            } else {
                kept.push(r);
            }
        }
        kept.sort_by(|a, b| a.exp.total_cmp(&b.exp));
        Law { ratio, radicals: kept, arg }
    }

    /// The same law with its argument map pushed into the polynomials.
    pub fn materialized(&self) -> Law {
        if self.arg.is_identity() {
            return self.clone();
        }
        let ArgMap { alpha, beta } = self.arg;
        let radicals =
            self.radicals.iter().map(|r| Radical { base: r.base.substitute(alpha, beta), exp: r.exp }).collect();
        Law::normalized(self.ratio.substitute(alpha, beta), radicals, ArgMap::IDENTITY)
    }

    fn aligned(&self, other: &Law) -> (Law, Law) {
        if self.arg == other.arg {
            (self.clone(), other.clone())
        } else {
            (self.materialized(), other.materialized())
        }
    }

    pub fn add(&self, other: &Law) -> Result<Law> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (a, b) = self.aligned(other);
        if a.radicals != b.radicals {
            return Err(Error::UnsupportedModel(format!(
                "sum of entry laws with different radical factors ({} vs {})",
                a.radicals.len(),
                b.radicals.len()
            )));
        }
        Ok(Law::normalized(a.ratio.add(&b.ratio), a.radicals, a.arg))
    }

    pub fn neg(&self) -> Law {
        self.scale(-ONE)
    }

    pub fn sub(&self, other: &Law) -> Result<Law> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Scalar) -> Law {
        let ratio = Ratio::new(self.ratio.num.scale(c), self.ratio.den.clone());
        Law::normalized(ratio, self.radicals.clone(), self.arg)
    }

    pub fn mul(&self, other: &Law) -> Law {
        if self.is_zero() || other.is_zero() {
            return Law::zero();
        }
        let (a, b) = self.aligned(other);
        let mut radicals = a.radicals.clone();
        radicals.extend(b.radicals.iter().cloned());
        Law::normalized(a.ratio.mul(&b.ratio), radicals, a.arg)
    }

    pub fn recip(&self) -> Result<Law> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero entry law".into()));
        }
        let radicals = self.radicals.iter().map(|r| Radical { base: r.base.clone(), exp: -r.exp }).collect();
        Ok(Law::normalized(self.ratio.recip(), radicals, self.arg))
    }

    pub fn div(&self, other: &Law) -> Result<Law> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn conj(&self) -> Law {
        Law::normalized(self.ratio.conj(), self.radicals.clone(), self.arg)
    }

    pub fn powi(&self, e: u32) -> Law {
        let mut acc = Law::constant(ONE);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `|f|²`; radicals fold back into the ratio whenever `2ρ` is an integer.
    pub fn modulus_sq(&self) -> Law {
        let radicals = self.radicals.iter().map(|r| Radical { base: r.base.clone(), exp: 2.0 * r.exp }).collect();
        Law::normalized(self.ratio.modulus_sq(), radicals, self.arg)
    }

    /// Principal square root of a nonnegative real law.
    pub fn sqrt(&self) -> Law {
        if self.is_zero() {
            return Law::zero();
        }
        if let Some(c) = self.as_constant() {
            let root = if c.im == 0.0 && c.re >= 0.0 { Scalar::new(libm::sqrt(c.re), 0.0) } else { c.sqrt() };
            return Law::constant(root);
        }
        let mut radicals: Vec<Radical> =
            self.radicals.iter().map(|r| Radical { base: r.base.clone(), exp: r.exp / 2.0 }).collect();
        radicals.push(Radical { base: self.ratio.clone(), exp: 0.5 });
        Law::normalized(Ratio::poly(GenPoly::one()), radicals, self.arg)
    }

    /// `f · (base)^ρ` for a law `base` without radicals.
    pub fn times_radical(&self, base: &Law, rho: f64) -> Result<Law> {
        let (a, b) = self.aligned(base);
        if !b.radicals.is_empty() {
            return Err(Error::UnsupportedModel("nested radical in entry law".into()));
        }
        let mut radicals = a.radicals.clone();
        radicals.push(Radical { base: b.ratio.clone(), exp: rho });
        Ok(Law::normalized(a.ratio.clone(), radicals, a.arg))
    }

    /// Composes with the index map `n ↦ (n + beta) / alpha`.
    pub fn substitute(&self, alpha: f64, beta: f64) -> Law {
        Law { ratio: self.ratio.clone(), radicals: self.radicals.clone(), arg: ArgMap { alpha, beta }.then(self.arg) }
    }

    pub fn eval(&self, n: usize) -> Scalar {
        let k = if self.arg.is_identity() { n as f64 } else { (n as f64 + self.arg.beta) / self.arg.alpha };
        let v = self.ratio.eval(k);
        if v == ZERO {
            return ZERO;
        }
        let mut scale = 1.0;
        for r in &self.radicals {
            let b = r.base.eval(k).re;
            scale *= pow_real(b, r.exp);
        }
        if scale == 1.0 {
            v
        } else {
            v * scale
        }
    }

    /// Asymptotic expansion of `|f(n)|²`, or `None` when it cannot be formed.
    pub fn modulus_sq_series(&self) -> Option<Series> {
        self.modulus_sq().real_series()
    }

    /// Asymptotic expansion of a real-valued law.
    pub fn real_series(&self) -> Option<Series> {
        let law = self.materialized();
        let mut s = law.ratio.series()?;
        for r in &law.radicals {
            s = s.mul(&r.base.series()?.powf(r.exp)?);
        }
        Some(s)
    }

    /// Largest index shift appearing in the materialized law.
    pub fn max_shift(&self) -> f64 {
        let law = self.materialized();
        law.radicals.iter().map(|r| r.base.max_shift()).fold(law.ratio.max_shift(), f64::max)
    }

    /// Approximate structural equality with relative coefficient tolerance.
    pub fn approx_eq(&self, other: &Law, rel: f64) -> bool {
        let diff = match self.sub(other) {
            Ok(d) => d,
            Err(_) => return false,
        };
        if diff.is_zero() {
            return true;
        }
        let scale: f64 = self.ratio.num.terms().iter().map(|m| crate::scalar::modulus(m.coeff)).sum::<f64>().max(1e-300);
        diff.ratio.num.terms().iter().all(|m| crate::scalar::modulus(m.coeff) <= rel * scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::real;

    fn n_pow(p: f64) -> Law {
        Law::power(real(1.0), p)
    }

    #[test]
    fn schur_cancellation_is_exact() {
        // e - c b / a with e = 1/n + 1, a = n, b = c = 1
        let e = n_pow(-1.0).add(&Law::constant(real(1.0))).unwrap();
        let s = e.sub(&Law::constant(real(1.0)).div(&n_pow(1.0)).unwrap()).unwrap();
        assert_eq!(s.as_constant(), Some(real(1.0)));
    }

    #[test]
    fn determinant_cancels_to_zero() {
        let det = n_pow(1.0).mul(&n_pow(-1.0)).sub(&Law::constant(real(1.0))).unwrap();
        assert!(det.is_zero());
    }

    #[test]
    fn bounded_transform_law() {
        let d = n_pow(1.0);
        let base = d.modulus_sq().add(&Law::constant(real(1.0))).unwrap();
        let z = d.times_radical(&base, -0.5).unwrap();
        assert!((z.eval(1).re - 1.0 / libm::sqrt(2.0)).abs() < 1e-15);
        let s = z.modulus_sq_series().unwrap();
        assert_eq!(s.leading(), Some((0.0, 1.0)));
    }

    #[test]
    fn square_root_ladder_is_bitwise_repeatable() {
        let d = Law::power(real(3.0), 2.0);
        let mut law = d.clone();
        for k in 1..=6u32 {
            law = law.sqrt();
            let mut expect = d.eval(5).re;
            for _ in 0..k {
                expect = libm::sqrt(expect);
            }
            assert_eq!(law.eval(5).re, expect);
        }
        let back = d.sqrt().sqrt().sqrt().sqrt().modulus_sq().modulus_sq().modulus_sq().modulus_sq();
        assert_eq!(back.as_power(), d.as_power());
    }

    #[test]
    fn interleaving_preserves_values() {
        let d = Law::power(real(2.0), -1.5);
        let odd = d.substitute(2.0, 1.0);
        assert_eq!(odd.eval(7), d.eval(4));
        let m = odd.materialized();
        assert!((m.eval(7).re - d.eval(4).re).abs() < 1e-15);
    }

    #[test]
    fn as_power_recognizes_radical_monomials() {
        let law = Law::power(real(4.0), 2.0).sqrt();
        let (c, p) = law.as_power().unwrap();
        assert!((c.re - 2.0).abs() < 1e-15 && (p - 1.0).abs() < 1e-15);
    }
}
