//! Seeded random operators for the verification suites.

use hus_core::scalar::real;
use hus_core::symbolic::Law;
use hus_core::{BlockMatrix, DiagonalOperator, MatrixOperator, OperatorModel, Scalar, TailRule};
use rand::seq::IndexedRandom;
use rand::Rng;

/// Nonzero half-integer in `[-4, 4]`.
pub fn coefficient<R: Rng>(rng: &mut R) -> f64 {
    let k = rng.random_range(1..=8) as f64 / 2.0;
    if rng.random_bool(0.5) {
        k
    } else {
        -k
    }
}

fn exponent<R: Rng>(rng: &mut R) -> f64 {
    *[-2.0, -1.0, -0.5, 0.5, 1.0, 2.0].choose(rng).expect("nonempty")
}

pub fn simple_rule<R: Rng>(rng: &mut R) -> TailRule {
    match rng.random_range(0..6) {
        0 => TailRule::Zero,
        1 | 2 => TailRule::constant(coefficient(rng)),
        _ => TailRule::power(coefficient(rng), exponent(rng)),
    }
}

/// Tail rule, cyclic with period 2 or 3 a quarter of the time.
pub fn rule<R: Rng>(rng: &mut R) -> TailRule {
    if rng.random_bool(0.25) {
        let len = rng.random_range(2..=3);
        TailRule::Cyclic((0..len).map(|_| simple_rule(rng)).collect())
    } else {
        simple_rule(rng)
    }
}

fn head<R: Rng>(rng: &mut R, entry: impl Fn(&mut R) -> f64) -> Vec<f64> {
    let len = rng.random_range(0..4);
    (0..len).map(|_| entry(rng)).collect()
}

fn head_entry<R: Rng>(rng: &mut R) -> f64 {
    if rng.random_bool(0.2) {
        0.0
    } else {
        coefficient(rng)
    }
}

/// Redraws until the operator is nonzero.
fn nonzero<R: Rng>(rng: &mut R, mut draw: impl FnMut(&mut R) -> (Vec<f64>, TailRule)) -> DiagonalOperator {
    loop {
        let (h, t) = draw(rng);
        if let Ok(d) = DiagonalOperator::from_reals(&h, t) {
            return d;
        }
    }
}

pub fn diagonal<R: Rng>(rng: &mut R) -> DiagonalOperator {
    nonzero(rng, |rng| (head(rng, head_entry), rule(rng)))
}

/// Constants and decaying powers only.
pub fn bounded_diagonal<R: Rng>(rng: &mut R) -> DiagonalOperator {
    let simple = |rng: &mut R| match rng.random_range(0..3) {
        0 => TailRule::Zero,
        1 => TailRule::constant(coefficient(rng)),
        _ => TailRule::power(coefficient(rng), *[-2.0, -1.0, -0.5].choose(rng).expect("nonempty")),
    };
    nonzero(rng, |rng| {
        let tail = if rng.random_bool(0.25) {
            let len = rng.random_range(2..=3);
            TailRule::Cyclic((0..len).map(|_| simple(rng)).collect())
        } else {
            simple(rng)
        };
        (head(rng, head_entry), tail)
    })
}

/// Nonnegative real entries; `decaying` restricts tails to bounded laws.
pub fn nonneg_diagonal<R: Rng>(rng: &mut R, decaying: bool) -> DiagonalOperator {
    nonzero(rng, |rng| {
        let c = rng.random_range(1..=8) as f64 / 2.0;
        let tail = if rng.random_bool(0.4) {
            TailRule::constant(c)
        } else if decaying {
            TailRule::power(c, *[-2.0, -1.0, -0.5].choose(rng).expect("nonempty"))
        } else {
            TailRule::power(c, exponent(rng))
        };
        (head(rng, |rng| rng.random_range(0..=8) as f64 / 2.0), tail)
    })
}

/// Uniform complex entries in `[-3, 3]²`, with rank drops a quarter of the time.
pub fn matrix<R: Rng>(rng: &mut R, max_dim: usize) -> MatrixOperator {
    loop {
        let (r, c) = (rng.random_range(1..=max_dim), rng.random_range(1..=max_dim));
        let mut entries: Vec<Scalar> = (0..r * c).map(|_| scalar(rng)).collect();
        if r > 1 && rng.random_bool(0.25) {
            // Copy a multiple of row 0 into another row.
            let (src, dst, k) = (0, rng.random_range(1..r), scalar(rng));
            for j in 0..c {
                entries[dst * c + j] = k * entries[src * c + j];
            }
        }
        if let Ok(m) = MatrixOperator::new(r, c, entries) {
            return m;
        }
    }
}

pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))
}

pub fn vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| scalar(rng)).collect()
}

/// Diagonal with every entry of modulus at least 1/2, so `T − μ` stays
/// injective for `|μ| < 1/2`.
pub fn invertible_block<R: Rng>(rng: &mut R) -> DiagonalOperator {
    let tail = if rng.random_bool(0.4) {
        TailRule::constant(coefficient(rng))
    } else {
        TailRule::power(coefficient(rng), *[0.5, 1.0, 2.0].choose(rng).expect("nonempty"))
    };
    let len = rng.random_range(0..3);
    let h: Vec<f64> = (0..len).map(|_| coefficient(rng)).collect();
    DiagonalOperator::from_reals(&h, tail).expect("nonzero entries")
}

pub fn block_of<R: Rng>(rng: &mut R, mut block: impl FnMut(&mut R) -> DiagonalOperator) -> BlockMatrix {
    let mut next = || -> OperatorModel { block(rng).into() };
    let (a, b, c, e) = (next(), next(), next(), next());
    BlockMatrix::new(a, b, c, e).expect("diagonal blocks")
}

fn law_diagonal(law: Law) -> DiagonalOperator {
    let one = DiagonalOperator::from_reals(&[], TailRule::constant(1.0)).expect("nonzero");
    one.map(Ok, |_| Ok(law.clone())).expect("finite law")
}

/// Power of two in `{±1/2, ±1, ±2, ±4}`: divisions by it are exact.
fn dyadic<R: Rng>(rng: &mut R) -> f64 {
    let v = *[0.5, 1.0, 2.0, 4.0].choose(rng).expect("nonempty");
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// `[[a n^p, b n^p], [c n^p, (bc/a) n^p]]`: rank-one cells, so the
/// Schur complement `E − CA⁻¹B` vanishes identically.
pub fn cancelling_block<R: Rng>(rng: &mut R) -> BlockMatrix {
    let p = *[0.0, 0.5, 1.0].choose(rng).expect("nonempty");
    let (a, b, c) = (dyadic(rng), coefficient(rng), coefficient(rng));
    let e = b * c / a;
    let op = |k: f64| -> OperatorModel { law_diagonal(Law::power(real(k), p)).into() };
    BlockMatrix::new(op(a), op(b), op(c), op(e)).expect("diagonal blocks")
}

/// `A = a n^p`, `B = b`, `C = c`, `E = (bc/a) n^{−p} + d n^{−q}` with
/// `q > p`: the
/// Schur complement is `d n^{−q}`, nonzero with γ = 0.
pub fn vanishing_block<R: Rng>(rng: &mut R) -> BlockMatrix {
    let p = *[0.0, 1.0].choose(rng).expect("nonempty");
    // q > p keeps the two terms of E from cancelling.
    let q = p + *[0.5, 1.0, 2.0].choose(rng).expect("nonempty");
    let (a, b, c, d) = (dyadic(rng), coefficient(rng), coefficient(rng), coefficient(rng));
    let e = Law::power(real(b * c / a), -p).add(&Law::power(real(d), -q)).expect("finite sum");
    let op = |law: Law| -> OperatorModel { law_diagonal(law).into() };
    BlockMatrix::new(op(Law::power(real(a), p)), op(Law::constant(real(b))), op(Law::constant(real(c))), op(e))
        .expect("diagonal blocks")
}

/// Moves the Schur-2 structure of `m` onto the quadratic complement `T₂`
/// by exchanging block rows: `T₂` of the result is `S₂` of `m`.
pub fn rows_exchanged(m: &BlockMatrix) -> BlockMatrix {
    BlockMatrix::new(m.c().clone(), m.e().clone(), m.a().clone(), m.b().clone()).expect("same blocks")
}
