use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::MatrixOperator;
use crate::scalar::{check_finite, modulus, KernelDim, Scalar, ZERO};
use crate::symbolic::{profile_class, Asymptotics, Extremes, Law, Profile};
use crate::tail::{lcm, Tail, TailRule};

/// Densely defined diagonal operator on ℓ²: explicit entries `d_1..d_m`
/// followed by a symbolic tail starting at `m + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperator {
    head: Vec<Scalar>,
    tail: Tail,
}

/// Zero set `{n : d_n = 0}` of a diagonal operator.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSupport {
    /// Finitely many zero indices (head entries and isolated tail zeros).
    pub indices: Vec<usize>,
    /// Residues `r` such that every `n ≥ start` with `(n - 1) % period == r`
    /// is a zero index.
    pub zero_classes: Vec<usize>,
    pub period: usize,
    pub start: usize,
    pub dim: KernelDim,
}

impl KernelSupport {
    pub fn contains(&self, n: usize) -> bool {
        self.indices.binary_search(&n).is_ok()
            || (n >= self.start && self.zero_classes.contains(&((n - 1) % self.period)))
    }
}

/// Exact infimum/supremum data of the entry moduli.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalProfile {
    pub inf_nonzero: f64,
    pub inf_attained: bool,
    pub sup: f64,
    pub sup_attained: bool,
    pub kernel: KernelSupport,
}

/// Modulus profile of one tail class.
pub(crate) fn law_profile(law: &Law, first: usize, step: usize) -> Profile {
    let asym = if law.is_zero() {
        Asymptotics::Zero
    } else {
        Asymptotics::from_series(law.modulus_sq_series().as_ref(), law.max_shift())
    };
    profile_class(first, step, asym, |n| modulus(law.eval(n)))
}

/// Number of class entries inspected when checking the sign of a law.
const SIGN_WINDOW: usize = 4096;

/// True when every value of a real law on its class is `≥ 0`: real
/// coefficients, a nonnegative window and a positive leading term.
pub(crate) fn law_is_nonneg_real(law: &Law, first: usize, step: usize) -> bool {
    if law.is_zero() {
        return true;
    }
    if law.conj() != *law {
        return false;
    }
    let window = (0..SIGN_WINDOW).all(|i| {
        let v = law.eval(first + i * step);
        v.im == 0.0 && v.re >= 0.0
    });
    window && matches!(law.real_series().and_then(|s| s.leading()), Some((_, c)) if c > 0.0)
}

impl DiagonalOperator {
    /// Validated constructor; the zero operator is rejected.
    pub fn new(head: Vec<Scalar>, tail: TailRule) -> Result<Self> {
        for &h in &head {
            check_finite(h)?;
        }
        let tail = Tail::from_rule(&tail, head.len() + 1)?;
        Self::from_parts(head, tail).nonzero()
    }

    pub fn from_reals(head: &[f64], tail: TailRule) -> Result<Self> {
        Self::new(head.iter().map(|&x| Scalar::new(x, 0.0)).collect(), tail)
    }

    /// Unchecked assembly; results of the calculus may be the zero operator.
    pub(crate) fn from_parts(head: Vec<Scalar>, tail: Tail) -> Self {
        debug_assert_eq!(tail.start(), head.len() + 1);
        DiagonalOperator { head, tail }
    }

    pub(crate) fn nonzero(self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::InvalidModel("the zero operator is not an operator model".into()))
        } else {
            Ok(self)
        }
    }

    pub fn head(&self) -> &[Scalar] {
        &self.head
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn tail_rule(&self) -> Option<TailRule> {
        self.tail.to_rule()
    }

    /// Entry `d_n`, 1-based.
    pub fn entry(&self, n: usize) -> Scalar {
        assert!(n >= 1, "diagonal indices are 1-based");
        if n <= self.head.len() {
            self.head[n - 1]
        } else {
            self.tail.eval(n)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.head.iter().all(|&h| h == ZERO) && self.tail.laws().iter().all(Law::is_zero)
    }

    /// Exact profile of the entry moduli from head enumeration and tail analysis.
    pub fn profile(&self) -> DiagonalProfile {
        let mut ext = Extremes::EMPTY;
        let mut indices = Vec::new();
        let mut zero_classes = Vec::new();
        for (i, &h) in self.head.iter().enumerate() {
            let m = modulus(h);
            if m == 0.0 {
                indices.push(i + 1);
            } else {
                ext.value(m);
            }
        }
        let period = self.tail.period();
        for (r, law) in self.tail.laws().iter().enumerate() {
            let p = law_profile(law, self.tail.first_in_class(r, period), period);
            if p.zero_class {
                zero_classes.push(r);
                continue;
            }
            indices.extend_from_slice(&p.zeros);
            ext.profile(&p);
        }
        indices.sort_unstable();
        let dim = if zero_classes.is_empty() { KernelDim::Finite(indices.len()) } else { KernelDim::Infinite };
        let kernel = KernelSupport { indices, zero_classes, period, start: self.tail.start(), dim };
        DiagonalProfile {
            inf_nonzero: ext.inf,
            inf_attained: ext.inf_attained,
            sup: ext.sup,
            sup_attained: ext.sup_attained,
            kernel,
        }
    }

    /// `inf{|d_n| : d_n ≠ 0}` and whether it is attained by an entry.
    pub fn inf_nonzero_modulus(&self) -> (f64, bool) {
        let p = self.profile();
        (p.inf_nonzero, p.inf_attained)
    }

    /// `sup |d_n|`, `+∞` for unbounded operators.
    pub fn sup_modulus(&self) -> f64 {
        self.profile().sup
    }

    pub fn kernel_support(&self) -> KernelSupport {
        self.profile().kernel
    }

    /// The `n × n` diagonal matrix `diag(d_1, …, d_n)`.
    pub fn truncate(&self, n: usize) -> Result<MatrixOperator> {
        if n == 0 {
            return Err(Error::InvalidModel("truncation size must be positive".into()));
        }
        let mut entries = alloc::vec![ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = self.entry(i + 1);
        }
        Ok(MatrixOperator::from_parts(n, n, entries))
    }

    /// Same operator with the head materialized out to length `m`.
    pub fn with_head_len(&self, m: usize) -> DiagonalOperator {
        if m <= self.head.len() {
            return self.clone();
        }
        let head = (1..=m).map(|n| self.entry(n)).collect();
        DiagonalOperator { head, tail: self.tail.with_start(m + 1) }
    }

    /// Brings two operators to a common head length and tail period.
    pub fn align(a: &DiagonalOperator, b: &DiagonalOperator) -> (DiagonalOperator, DiagonalOperator, usize) {
        let m = a.head.len().max(b.head.len());
        let period = lcm(a.tail.period(), b.tail.period());
        (a.with_head_len(m), b.with_head_len(m), period)
    }

    /// Entrywise combination of two diagonals, exact in the law algebra.
    pub fn zip_with(
        a: &DiagonalOperator,
        b: &DiagonalOperator,
        entry: impl Fn(Scalar, Scalar) -> Result<Scalar>,
        law: impl Fn(&Law, &Law) -> Result<Law>,
    ) -> Result<DiagonalOperator> {
        let (a, b, period) = Self::align(a, b);
        let head = a.head.iter().zip(&b.head).map(|(&x, &y)| entry(x, y)).collect::<Result<Vec<_>>>()?;
        let la = a.tail.laws_with_period(period);
        let lb = b.tail.laws_with_period(period);
        let laws = la.iter().zip(&lb).map(|(x, y)| law(x, y)).collect::<Result<Vec<_>>>()?;
        Ok(DiagonalOperator { tail: Tail::from_laws(head.len() + 1, laws), head })
    }

    /// Entrywise map, exact in the law algebra.
    pub fn map(&self, entry: impl Fn(Scalar) -> Result<Scalar>, law: impl Fn(&Law) -> Result<Law>) -> Result<DiagonalOperator> {
        let head = self.head.iter().map(|&x| entry(x)).collect::<Result<Vec<_>>>()?;
        let tail = self.tail.map(law)?;
        Ok(DiagonalOperator { head, tail })
    }

    /// Interleaves `self` (odd indices) with `other` (even indices).
    pub fn interleave(&self, other: &DiagonalOperator) -> DiagonalOperator {
        let (a, b, period) = Self::align(self, other);
        let m = a.head.len();
        let mut head = Vec::with_capacity(2 * m);
        for i in 0..m {
            head.push(a.head[i]);
            head.push(b.head[i]);
        }
        let la = a.tail.laws_with_period(period);
        let lb = b.tail.laws_with_period(period);
        let mut laws = Vec::with_capacity(2 * period);
        for r in 0..period {
            // n = 2k - 1 carries a_k, n = 2k carries b_k.
            laws.push(la[r].substitute(2.0, 1.0));
            laws.push(lb[r].substitute(2.0, 0.0));
        }
        DiagonalOperator { tail: Tail::from_laws(2 * m + 1, laws), head }
    }

    /// Brings several operators to a common head length and tail period.
    pub fn align_all(ops: &[&DiagonalOperator]) -> (Vec<DiagonalOperator>, usize) {
        let m = ops.iter().map(|d| d.head.len()).max().unwrap_or(0);
        let period = ops.iter().fold(1, |p, d| lcm(p, d.tail.period()));
        (ops.iter().map(|d| d.with_head_len(m)).collect(), period)
    }

    /// Same operator with every isolated tail zero moved into the head, so
    /// that the remaining tail laws vanish nowhere or everywhere.
    pub fn with_isolated_zeros_in_head(&self) -> DiagonalOperator {
        let last = self.kernel_support().indices.last().copied().unwrap_or(0);
        self.with_head_len(last)
    }

    /// True when every entry is real and nonnegative.
    pub fn is_nonneg_real(&self) -> bool {
        self.head.iter().all(|h| h.im == 0.0 && h.re >= 0.0)
            && self
                .tail
                .laws()
                .iter()
                .enumerate()
                .all(|(r, law)| law_is_nonneg_real(law, self.tail.first_in_class(r, self.tail.period()), self.tail.period()))
    }

    /// `(d_1 x_1, …, d_k x_k)` for a vector of length `k`.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        x.iter().enumerate().map(|(i, &v)| self.entry(i + 1) * v).collect()
    }

    /// Entrywise comparison: heads to `rel` relative, laws structurally.
    pub fn approx_eq(&self, other: &DiagonalOperator, rel: f64) -> bool {
        let (a, b, period) = Self::align(self, other);
        let heads = a.head.iter().zip(&b.head).all(|(&x, &y)| modulus(x - y) <= rel * modulus(x).max(modulus(y)).max(1.0));
        heads
            && a.tail.laws_with_period(period).iter().zip(b.tail.laws_with_period(period).iter()).all(|(x, y)| x.approx_eq(y, rel))
    }
}
