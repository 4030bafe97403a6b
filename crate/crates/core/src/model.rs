use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::blockmat::BlockMatrix;
use crate::diagonal::DiagonalOperator;
use crate::error::{Error, Result};
use crate::matrix::MatrixOperator;
use crate::scalar::Scalar;

/// The closed family of operator representations every analysis accepts.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorModel {
    Diagonal(DiagonalOperator),
    Matrix(MatrixOperator),
    Block(Box<BlockMatrix>),
}

impl From<DiagonalOperator> for OperatorModel {
    fn from(d: DiagonalOperator) -> Self {
        OperatorModel::Diagonal(d)
    }
}

impl From<MatrixOperator> for OperatorModel {
    fn from(m: MatrixOperator) -> Self {
        OperatorModel::Matrix(m)
    }
}

impl From<BlockMatrix> for OperatorModel {
    fn from(b: BlockMatrix) -> Self {
        OperatorModel::Block(Box::new(b))
    }
}

impl OperatorModel {
    pub fn kind(&self) -> &'static str {
        match self {
            OperatorModel::Diagonal(_) => "diagonal",
            OperatorModel::Matrix(_) => "matrix",
            OperatorModel::Block(_) => "block",
        }
    }

    pub fn as_diagonal(&self) -> Option<&DiagonalOperator> {
        match self {
            OperatorModel::Diagonal(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&MatrixOperator> {
        match self {
            OperatorModel::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_block(&self) -> Option<&BlockMatrix> {
        match self {
            OperatorModel::Block(b) => Some(b),
            _ => None,
        }
    }

    /// True for the zero operator, which only arises from the calculus
    /// (for example an exactly cancelling complement).
    pub fn is_zero(&self) -> bool {
        match self {
            OperatorModel::Diagonal(d) => d.is_zero(),
            OperatorModel::Matrix(m) => m.is_zero(),
            OperatorModel::Block(b) => b.blocks().iter().all(|x| x.is_zero()),
        }
    }

    /// `Tx`. A diagonal model reads `x` as the leading coordinates of a
    /// finitely supported sequence.
    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        match self {
            OperatorModel::Diagonal(d) => Ok(d.apply(x)),
            OperatorModel::Matrix(m) => m.apply(x),
            OperatorModel::Block(b) => b.apply(x),
        }
    }

    pub(crate) fn unsupported(&self, what: &str) -> Error {
        Error::UnsupportedModel(alloc::format!("{what} is not available for {} models", self.kind()))
    }
}

/// `Tx`, see [`OperatorModel::apply`].
pub fn apply(op: &OperatorModel, x: &[Scalar]) -> Result<Vec<Scalar>> {
    op.apply(x)
}

/// Euclidean norm of a coefficient vector.
pub fn norm(x: &[Scalar]) -> f64 {
    let scale = x.iter().map(|z| crate::scalar::modulus(*z)).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = x
        .iter()
        .map(|z| {
            let (re, im) = (z.re / scale, z.im / scale);
            re * re + im * im
        })
        .sum();
    scale * libm::sqrt(sum)
}
