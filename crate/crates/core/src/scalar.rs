use core::fmt;

use crate::error::{Error, Result};

/// Complex double-precision entry of a sequence or matrix.
pub type Scalar = num_complex::Complex64;

pub const ZERO: Scalar = Scalar::new(0.0, 0.0);
pub const ONE: Scalar = Scalar::new(1.0, 0.0);

#[inline]
pub fn real(re: f64) -> Scalar {
    Scalar::new(re, 0.0)
}

pub fn check_finite(s: Scalar) -> Result<Scalar> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(s)
    } else {
        Err(Error::InvalidModel("scalar entries must be finite".into()))
    }
}

/// Modulus computed with `hypot`, exact for real entries.
#[inline]
pub fn modulus(s: Scalar) -> f64 {
    if s.im == 0.0 {
        libm::fabs(s.re)
    } else if s.re == 0.0 {
        libm::fabs(s.im)
    } else {
        libm::hypot(s.re, s.im)
    }
}

/// `x^e` for real `x > 0`. Integer exponents use repeated products and
/// dyadic exponents use repeated square roots so that results stay
/// bitwise reproducible under the algebra's rewrites.
pub fn pow_real(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        return 1.0;
    }
    if e == libm::trunc(e) && libm::fabs(e) <= 64.0 {
        return powi(x, e as i32);
    }
    let mut scaled = e;
    for k in 1..=12 {
        scaled *= 2.0;
        if scaled == libm::trunc(scaled) && libm::fabs(scaled) <= 64.0 {
            let mut v = powi(x, scaled as i32);
            for _ in 0..k {
                v = libm::sqrt(v);
            }
            return v;
        }
    }
    libm::pow(x, e)
}

pub fn powi(x: f64, e: i32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        1.0 / acc
    } else {
        acc
    }
}

/// Integer power of a complex scalar by repeated products.
pub fn scalar_powi(s: Scalar, e: i32) -> Scalar {
    let mut acc = ONE;
    for _ in 0..e.unsigned_abs() {
        acc *= s;
    }
    if e < 0 {
        ONE / acc
    } else {
        acc
    }
}

/// Principal real power of a complex scalar.
pub fn scalar_powf(s: Scalar, e: f64) -> Scalar {
    if e == libm::trunc(e) && libm::fabs(e) <= 64.0 {
        return scalar_powi(s, e as i32);
    }
    if s.im == 0.0 && s.re > 0.0 {
        return real(pow_real(s.re, e));
    }
    s.powf(e)
}

/// Dimension of a kernel, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelDim {
    Finite(usize),
    Infinite,
}

impl KernelDim {
    pub fn is_finite(&self) -> bool {
        matches!(self, KernelDim::Finite(_))
    }

    pub fn add(self, other: KernelDim) -> KernelDim {
        match (self, other) {
            (KernelDim::Finite(a), KernelDim::Finite(b)) => KernelDim::Finite(a + b),
            _ => KernelDim::Infinite,
        }
    }
}

impl fmt::Display for KernelDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelDim::Finite(d) => write!(f, "{d}"),
            KernelDim::Infinite => f.write_str("infinite"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_powers_are_exact() {
        assert_eq!(pow_real(3.0, -1.0), 1.0 / 3.0);
        assert_eq!(pow_real(7.0, -2.0), 1.0 / 49.0);
        assert_eq!(pow_real(5.0, 3.0), 125.0);
    }

    #[test]
    fn dyadic_powers_use_square_roots() {
        let x = 7.3;
        assert_eq!(pow_real(x, 0.5), libm::sqrt(x));
        assert_eq!(pow_real(x, 0.25), libm::sqrt(libm::sqrt(x)));
        assert_eq!(pow_real(x, 1.5), libm::sqrt(x * x * x));
    }

    #[test]
    fn modulus_of_real_and_imaginary() {
        assert_eq!(modulus(Scalar::new(-3.0, 0.0)), 3.0);
        assert_eq!(modulus(Scalar::new(0.0, 2.0)), 2.0);
        assert_eq!(modulus(Scalar::new(3.0, 4.0)), 5.0);
    }
}
