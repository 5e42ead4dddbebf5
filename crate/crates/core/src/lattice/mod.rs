//! Even integral lattices given by Gram matrices.

mod binary;
mod discriminant;
mod embedding;
mod named;
mod overlattice;
mod sublattice;

pub use binary::{enumerate_even_binary, is_isometric_rank2, reduce_even_binary};
pub use discriminant::{disc_forms_opposite, discriminant_data, forms_isomorphic, DiscriminantForm};
pub use embedding::{embedding_matrix, slh_embed, t_gen, t_gen_form};
pub use named::{make_lattice, parse_lattice, LatticeSpec};
pub use overlattice::{
    even_overlattices, even_overlattices_preserving, glue_in_span, overlattice_index, Overlattice,
};
pub use sublattice::{
    orthogonal_complement, saturate, span_sublattice, span_with_proposed, sublattice_index,
    EmbeddedSublattice,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, IntMatrix, LinalgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is odd: {0}")]
    Odd(String),
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("vectors span the zero lattice")]
    ZeroSpan,
    #[error("sublattice does not have full rank in its ambient lattice")]
    NotFullRank,
    #[error("cannot parse lattice description {0:?}")]
    Parse(String),
    #[error("twist multiplier must be nonzero")]
    ZeroTwist,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("discriminant group of order {0} is too large for exhaustive search")]
    TooLarge(BigInt),
    #[error("vector does not lie in the lattice")]
    NotInLattice,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// An even integral lattice. Degenerate Gram matrices are allowed (raw curve
/// spans) but every operation that needs a nondegenerate form checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    gram: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if let Some(i) = (0..gram.rows()).find(|&i| gram.get(i, i).is_odd()) {
            return Err(LatticeError::Odd(format!("diagonal entry {i} is {}", gram.get(i, i))));
        }
        Ok(Lattice { gram, label: None })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Lattice::new(IntMatrix::from_i64_rows(rows))
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        linalg::det(&self.gram).expect("gram is square")
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    /// Inertia `(positive, negative, zero)`.
    pub fn signature(&self) -> (usize, usize, usize) {
        linalg::signature(&self.gram).expect("gram is symmetric")
    }

    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y).expect("vector length matches rank")
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.dot(x, x)
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { gram: self.gram.direct_sum(&other.gram), label: None }
    }

    /// `L(n)`: the same group with the form multiplied by `n`.
    pub fn twist(&self, n: i64) -> Result<Lattice, LatticeError> {
        if n == 0 {
            return Err(LatticeError::ZeroTwist);
        }
        Lattice::new(self.gram.scaled(&BigInt::from(n)))
    }

    /// Gram matrix of the given rows (vectors in this lattice's coordinates).
    pub fn induced(&self, rows: &IntMatrix) -> Result<Lattice, LatticeError> {
        Lattice::new(self.gram.congruence(rows)?)
    }

    /// Radical `{x : G·x = 0}` as saturated rows.
    pub fn radical(&self) -> IntMatrix {
        linalg::kernel(&self.gram)
    }
}

/// JSON report for a nondegenerate lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub label: Option<String>,
    pub gram: IntMatrix,
    pub disc: String,
    pub invariant_factors: Vec<String>,
    pub q_values: Vec<String>,
}

impl LatticeReport {
    pub fn new(l: &Lattice) -> Result<Self, LatticeError> {
        let (disc, form) = discriminant_data(l)?;
        Ok(LatticeReport {
            label: l.label.clone(),
            gram: l.gram.clone(),
            disc: disc.to_string(),
            invariant_factors: form.invariant_factors.iter().map(|d| d.to_string()).collect(),
            q_values: form.q_values.iter().map(|q| format!("{q} mod 2")).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_and_asymmetric() {
        assert!(matches!(Lattice::from_i64(&[&[1]]), Err(LatticeError::Odd(_))));
        assert_eq!(Lattice::from_i64(&[&[2, 1], &[0, 2]]), Err(LatticeError::NotSymmetric));
        assert_eq!(Lattice::from_i64(&[&[2]]).unwrap().twist(0), Err(LatticeError::ZeroTwist));
    }

    #[test]
    fn report_json_shape() {
        let a2m2 = make_lattice("A2(-2)").unwrap();
        let rep = LatticeReport::new(&a2m2).unwrap();
        assert_eq!(rep.disc, "12");
        assert_eq!(rep.invariant_factors, vec!["2", "6"]);
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["gram"][0][0], "-4");
        assert!(v["q_values"][0].as_str().unwrap().ends_with("mod 2"));
    }
}
