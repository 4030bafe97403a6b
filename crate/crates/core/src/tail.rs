use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{check_finite, Scalar, ZERO};
use crate::symbolic::Law;

/// Symbolic law for the entries `d_n`, `n ≥ start`, of a diagonal operator.
///
/// `Cyclic` sub-rules are selected by the residue of `n - 1` modulo the
/// list length, so the phase is anchored at index 1 regardless of `start`.
#[derive(Debug, Clone, PartialEq)]
pub enum TailRule {
    Zero,
    Constant(Scalar),
    /// `d_n = c · n^p`.
    Power(Scalar, f64),
    Cyclic(Vec<TailRule>),
}

impl TailRule {
    pub fn power(c: f64, p: f64) -> Self {
        TailRule::Power(Scalar::new(c, 0.0), p)
    }

    pub fn constant(c: f64) -> Self {
        TailRule::Constant(Scalar::new(c, 0.0))
    }

    fn validate(&self, nested: bool) -> Result<()> {
        match self {
            TailRule::Zero => Ok(()),
            TailRule::Constant(c) => check_finite(*c).map(|_| ()),
            TailRule::Power(c, p) => {
                check_finite(*c)?;
                if *c == ZERO {
                    return Err(Error::InvalidModel("power coefficient must be nonzero; use zero".into()));
                }
                if !p.is_finite() {
                    return Err(Error::InvalidModel("power exponent must be finite".into()));
                }
                Ok(())
            }
            TailRule::Cyclic(rules) => {
                if nested {
                    return Err(Error::InvalidModel("cyclic rules cannot nest".into()));
                }
                if rules.is_empty() {
                    return Err(Error::InvalidModel("cyclic rule list is empty".into()));
                }
                rules.iter().try_for_each(|r| r.validate(true))
            }
        }
    }

    fn law(&self) -> Law {
        match self {
            TailRule::Zero => Law::zero(),
            TailRule::Constant(c) => Law::constant(*c),
            TailRule::Power(c, p) if *p == 0.0 => Law::constant(*c),
            TailRule::Power(c, p) => Law::power(*c, *p),
            TailRule::Cyclic(_) => unreachable!("cyclic rules are flattened"),
        }
    }

    fn from_law(law: &Law) -> Option<TailRule> {
        if law.is_zero() {
            return Some(TailRule::Zero);
        }
        if let Some(c) = law.as_constant() {
            return Some(TailRule::Constant(c));
        }
        match law.as_power()? {
            (c, p) if p == 0.0 => Some(TailRule::Constant(c)),
            (c, p) => Some(TailRule::Power(c, p)),
        }
    }
}

/// Periodic family of entry laws for `n ≥ start`; the law for index `n` is
/// `laws[(n - 1) % laws.len()]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tail {
    start: usize,
    laws: Vec<Law>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl Tail {
    pub fn from_rule(rule: &TailRule, start: usize) -> Result<Tail> {
        if start == 0 {
            return Err(Error::InvalidModel("tail start must be at least 1".into()));
        }
        rule.validate(false)?;
        let laws = match rule {
            TailRule::Cyclic(rules) => rules.iter().map(TailRule::law).collect(),
            r => alloc::vec![r.law()],
        };
        Ok(Tail::from_laws(start, laws))
    }

    /// Builds a tail, collapsing the law list to its minimal period.
    pub fn from_laws(start: usize, mut laws: Vec<Law>) -> Tail {
        assert!(!laws.is_empty() && start >= 1);
        let len = laws.len();
        for p in 1..len {
            if len % p == 0 && (0..len).all(|i| laws[i] == laws[i % p]) {
                laws.truncate(p);
                break;
            }
        }
        Tail { start, laws }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn period(&self) -> usize {
        self.laws.len()
    }

    pub fn laws(&self) -> &[Law] {
        &self.laws
    }

    pub fn law_for(&self, n: usize) -> &Law {
        &self.laws[(n - 1) % self.laws.len()]
    }

    pub fn eval(&self, n: usize) -> Scalar {
        self.law_for(n).eval(n)
    }

    /// The laws repeated out to period `p` (a multiple of the current one).
    pub fn laws_with_period(&self, p: usize) -> Vec<Law> {
        (0..p).map(|r| self.laws[r % self.laws.len()].clone()).collect()
    }

    /// First index `≥ start` with `(n - 1) % p == r`, for any `p > r`.
    pub fn first_in_class(&self, r: usize, p: usize) -> usize {
        let offset = (self.start - 1) % p;
        self.start + (r + p - offset) % p
    }

    pub fn with_start(&self, start: usize) -> Tail {
        Tail { start, laws: self.laws.clone() }
    }

    pub fn map(&self, f: impl Fn(&Law) -> Result<Law>) -> Result<Tail> {
        let laws = self.laws.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Tail::from_laws(self.start, laws))
    }

    /// The equivalent rule, when every law is zero, constant or a power.
    pub fn to_rule(&self) -> Option<TailRule> {
        let rules = self.laws.iter().map(TailRule::from_law).collect::<Option<Vec<_>>>()?;
        if rules.len() == 1 {
            rules.into_iter().next()
        } else {
            Some(TailRule::Cyclic(rules))
        }
    }
}
