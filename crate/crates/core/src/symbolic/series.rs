//! Truncated asymptotic expansions `Σ a_i n^{e_i}` as `n → ∞`.
//!
//! Exponents are kept in strictly decreasing order. Every series carries a
//! `floor`: terms with exponent at or below it were discarded, so only the
//! terms above the floor are known. Exact (finite) expansions have an
//! infinite negative floor.

use alloc::vec::Vec;

use super::poly::{GenPoly, Monomial, CANCEL_REL};

/// How far below the leading exponent infinite expansions are carried.
const DEPTH: f64 = 10.0;
const MAX_TERMS: usize = 48;
const EXP_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    terms: Vec<(f64, f64)>,
    floor: f64,
}

impl Series {
    pub fn zero() -> Self {
        Series { terms: Vec::new(), floor: f64::NEG_INFINITY }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms(alloc::vec![(0.0, c)], f64::NEG_INFINITY)
    }

    fn from_terms(mut terms: Vec<(f64, f64)>, floor: f64) -> Self {
        terms.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut out: Vec<(f64, f64, f64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e <= floor || c == 0.0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if libm::fabs(last.0 - e) <= EXP_EPS => {
                    last.1 += c;
                    last.2 += libm::fabs(c);
                }
                _ => out.push((e, c, libm::fabs(c))),
            }
        }
        let mut kept: Vec<(f64, f64)> =
            out.into_iter().filter(|&(_, c, scale)| libm::fabs(c) > CANCEL_REL * scale).map(|(e, c, _)| (e, c)).collect();
        let mut floor = floor;
        if kept.len() > MAX_TERMS {
            floor = floor.max(kept[MAX_TERMS].0);
            kept.truncate(MAX_TERMS);
        }
        Series { terms: kept, floor }
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor == f64::NEG_INFINITY
    }

    /// Leading `(exponent, coefficient)`, if any term is known.
    pub fn leading(&self) -> Option<(f64, f64)> {
        self.terms.first().copied()
    }

    /// Expansion of the real part of a generalized polynomial.
    pub fn of_poly(p: &GenPoly) -> Series {
        let mut acc = Series::zero();
        for m in p.terms() {
            acc = acc.add(&Self::of_monomial(m));
        }
        acc
    }

    fn of_monomial(m: &Monomial) -> Series {
        let mut acc = Series::constant(m.coeff.re);
        let mut degree = 0.0;
        for f in &m.factors {
            degree += f.exp;
            acc = acc.mul(&binomial_shift(f.shift, f.exp));
        }
        acc.shift_exponents(degree)
    }

    fn shift_exponents(&self, by: f64) -> Series {
        Series { terms: self.terms.iter().map(|&(e, c)| (e + by, c)).collect(), floor: self.floor + by }
    }

    pub fn scale(&self, k: f64) -> Series {
        if k == 0.0 {
            return Series::zero();
        }
        Series { terms: self.terms.iter().map(|&(e, c)| (e, c * k)).collect(), floor: self.floor }
    }

    pub fn add(&self, other: &Series) -> Series {
        let floor = self.floor.max(other.floor);
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms(terms, floor)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Series) -> Series {
        let lead_a = self.leading().map_or(self.floor, |t| t.0);
        let lead_b = other.leading().map_or(other.floor, |t| t.0);
        let floor = (lead_a + other.floor).max(lead_b + self.floor);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &other.terms {
                terms.push((ea + eb, ca * cb));
            }
        }
        Self::from_terms(terms, floor)
    }

    /// Real power `ρ` of a series with positive leading coefficient.
    /// Returns `None` when the leading term is unknown or not positive.
    pub fn powf(&self, rho: f64) -> Option<Series> {
        if rho == 0.0 {
            return Some(Series::constant(1.0));
        }
        let (e0, a0) = self.leading()?;
        if a0 <= 0.0 && rho != libm::trunc(rho) {
            return None;
        }
        if rho == libm::trunc(rho) && rho > 0.0 && rho <= 16.0 {
            let mut acc = Series::constant(1.0);
            for _ in 0..(rho as u32) {
                acc = acc.mul(self);
            }
            return Some(acc);
        }
        // (a0 n^e0)^ρ (1 + r)^ρ with r = Σ_{i≥1} (a_i / a0) n^{e_i - e0}.
        let r = Series {
            terms: self.terms[1..].iter().map(|&(e, c)| (e - e0, c / a0)).collect(),
            floor: self.floor - e0,
        };
        let rel_floor = if r.is_exact() && r.terms.is_empty() {
            f64::NEG_INFINITY
        } else {
            r.floor.max(-DEPTH)
        };
        let lead_r = r.leading().map_or(rel_floor, |t| t.0);
        let mut acc = Series::constant(1.0);
        let mut power = Series::constant(1.0);
        let mut binom = 1.0;
        let mut k = 0u32;
        if !r.terms.is_empty() {
            loop {
                k += 1;
                binom *= (rho - (k as f64 - 1.0)) / k as f64;
                power = power.mul(&r);
                if binom == 0.0 {
                    break;
                }
                acc = acc.add(&power.scale(binom));
                if (k as f64 + 1.0) * lead_r <= rel_floor || k >= 64 {
                    break;
                }
            }
        }
        let truncated_floor = if r.terms.is_empty() || binom == 0.0 {
            rel_floor
        } else {
            rel_floor.max((k as f64 + 1.0) * lead_r)
        };
        let acc = Series::from_terms(acc.terms, truncated_floor);
        let scale = if a0 > 0.0 { libm::pow(a0, rho) } else { crate::scalar::powi(a0, rho as i32) };
        Some(acc.scale(scale).shift_exponents(e0 * rho))
    }

    pub fn recip(&self) -> Option<Series> {
        let (_, a0) = self.leading()?;
        if a0 > 0.0 {
            self.powf(-1.0)
        } else {
            Some(self.scale(-1.0).powf(-1.0)?.scale(-1.0))
        }
    }

    /// Smallest power of two beyond which the leading term dominates the
    /// known corrections by a factor of four.
    pub fn dominance_index(&self) -> f64 {
        let Some((e0, a0)) = self.leading() else { return 1.0 };
        let a0 = libm::fabs(a0);
        let mut n: f64 = 1.0;
        while n < 1e15 {
            let rest: f64 = self.terms[1..].iter().map(|&(e, c)| libm::fabs(c) / a0 * libm::pow(n, e - e0)).sum();
            if rest <= 0.25 {
                return n;
            }
            n *= 2.0;
        }
        n
    }
}

/// `(1 + h/n)^p` expanded in powers of `1/n`.
fn binomial_shift(h: f64, p: f64) -> Series {
    if h == 0.0 {
        return Series::constant(1.0);
    }
    let mut terms = alloc::vec![(0.0, 1.0)];
    let mut binom = 1.0;
    let mut hk = 1.0;
    let exact_poly = p >= 0.0 && p == libm::trunc(p);
    let mut k = 0u32;
    loop {
        k += 1;
        binom *= (p - (k as f64 - 1.0)) / k as f64;
        hk *= h;
        if binom == 0.0 {
            break;
        }
        terms.push((-(k as f64), binom * hk));
        if k as f64 >= DEPTH {
            break;
        }
    }
    let floor = if exact_poly && binom == 0.0 { f64::NEG_INFINITY } else { -(k as f64) - 0.5 };
    Series::from_terms(terms, floor)
}
