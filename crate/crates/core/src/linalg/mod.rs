//! Exact dense linear algebra over Z and Q.

mod integer;
mod matrix;
mod rational;

pub use integer::{
    content, det, det_via_snf, hnf, kernel, rank, rank_via_snf, row_basis, rows_primitive, snf,
    solve_integer, Hermite, Smith,
};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use rational::{
    common_denominator, inverse, rank_rational, rref, signature, solve_rational, to_integral,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
}

pub type IntVector = Vec<num_bigint::BigInt>;

/// Integer vector from machine integers.
pub fn ivec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| x.into()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&m(&[&[2, 0], &[0, 2]])).h, m(&[&[2, 0], &[0, 2]]));
        assert_eq!(hnf(&m(&[&[0, 1], &[1, 0]])).h, m(&[&[1, 0], &[0, 1]]));
        let her = hnf(&m(&[&[2, 4], &[4, 8]]));
        assert_eq!(her.h, m(&[&[2, 4], &[0, 0]]));
        assert_eq!(her.rank, 1);
        assert_eq!(her.u.mul_mat(&m(&[&[2, 4], &[4, 8]])).unwrap(), her.h);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let her = hnf(&m(&[&[3, 5, 1], &[0, 2, 7], &[0, 0, 4]]));
        let h = &her.h;
        for (r, &c) in her.pivots.iter().enumerate() {
            let p = h.get(r, c);
            assert!(*p > BigInt::from(0));
            for i in 0..r {
                assert!(*h.get(i, c) >= BigInt::from(0) && h.get(i, c) < p);
            }
        }
        assert_eq!(det(&her.u).unwrap().magnitude().to_string(), "1");
    }

    #[test]
    fn snf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(snf(&id).s, id);
        assert_eq!(snf(&m(&[&[2, 1], &[1, 2]])).diagonal(), ivec(&[1, 3]));
        assert_eq!(snf(&m(&[&[0, 2], &[2, 0]])).diagonal(), ivec(&[2, 2]));
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let sm = snf(&a);
        assert_eq!(sm.diagonal(), ivec(&[2, 6, 12]));
        assert_eq!(sm.u.mul_mat(&a).unwrap().mul_mat(&sm.v).unwrap(), sm.s);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(snf(&z).rank(), 0);
        let r = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(snf(&r).diagonal(), ivec(&[1, 0]));
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(det(&m(&[&[2, -1], &[-1, 2]])).unwrap(), BigInt::from(3));
        assert_eq!(det_via_snf(&m(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[0, 0, 1], &[0, 0, 2], &[1, 0, 0]])), 2);
        assert!(det(&m(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&m(&[&[1, 1]])), m(&[&[1, -1]]));
        let k = kernel(&m(&[&[2, 4, 6]]));
        assert_eq!(k.rows(), 2);
        assert!(rows_primitive(&k));
        assert_eq!(kernel(&IntMatrix::identity(2)).rows(), 0);
    }

    #[test]
    fn solve_integer_cases() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_integer(&a, &ivec(&[4, 9])).unwrap(), Some(ivec(&[2, 3])));
        assert_eq!(solve_integer(&a, &ivec(&[1, 0])).unwrap(), None);
        let b = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_integer(&b, &ivec(&[1, 2])).unwrap(), None);
        let x = solve_integer(&b, &ivec(&[3, 3])).unwrap().unwrap();
        assert_eq!(b.mul_vec(&x).unwrap(), ivec(&[3, 3]));
    }

    #[test]
    fn signature_of_hyperbolic_and_definite() {
        assert_eq!(signature(&m(&[&[0, 1], &[1, 0]])).unwrap(), (1, 1, 0));
        assert_eq!(signature(&m(&[&[-2, 1], &[1, -2]])).unwrap(), (0, 2, 0));
        assert_eq!(signature(&m(&[&[0, 0], &[0, 0]])).unwrap(), (0, 0, 2));
        assert_eq!(signature(&m(&[&[0, 2, 0], &[2, 0, 0], &[0, 0, 0]])).unwrap(), (1, 1, 1));
    }

    #[test]
    fn matrix_json_roundtrip() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let a = m(&[&[1, -2], &[3, 4]]).scaled(&big);
        let s = serde_json::to_string(&a).unwrap();
        let b: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        let c: IntMatrix = serde_json::from_str("[[\"2\",\"-1\"],[\"-1\",\"2\"]]").unwrap();
        assert_eq!(c, m(&[&[2, -1], &[-1, 2]]));
        assert!(serde_json::from_str::<IntMatrix>("[[\"1\"],[\"1\",\"2\"]]").is_err());
    }

    #[test]
    fn rational_inverse() {
        let a = m(&[&[2, 1], &[1, 2]]).to_rational();
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul_mat(&inv).unwrap(), RatMatrix::identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]]).to_rational()).is_err());
    }
}
