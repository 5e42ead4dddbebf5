use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Lattice;
use crate::linalg::IntMatrix;

/// `U ⊕ U(2) ⊕ A2(-2)`, the quadratic form
/// `2x1x2 + 4x3x4 - 4(x5² + x6² - x5x6)`.
pub fn t_gen() -> Lattice {
    Lattice::from_i64(&[
        &[0, 1, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 2, 0, 0],
        &[0, 0, 2, 0, 0, 0],
        &[0, 0, 0, 0, -4, 2],
        &[0, 0, 0, 0, 2, -4],
    ])
    .expect("even")
    .labeled("Tgen")
}

/// The defining quadratic form of [`t_gen`] evaluated directly.
pub fn t_gen_form(x: &[BigInt]) -> BigInt {
    BigInt::from(2) * &x[0] * &x[1] + BigInt::from(4) * &x[2] * &x[3]
        - BigInt::from(4) * (&x[4] * &x[4] + &x[5] * &x[5] - &x[4] * &x[5])
}

fn hyperbolic_pair(n: &BigInt, m: &BigInt, a: &BigInt) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    // x = (n,1,0,0,0,0), y = (a - n·y2, y2, 1, (n·y2² - a·y2 + m)/2, 0, 0)
    for y2 in [BigInt::zero(), BigInt::one()] {
        let top = n * &y2 * &y2 - a * &y2 + m;
        if top.is_even() {
            let x = vec![n.clone(), BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
            let y = vec![a - n * &y2, y2, BigInt::one(), top / 2, BigInt::zero(), BigInt::zero()];
            return Some((x, y));
        }
    }
    None
}

/// Primitive embedding of `[[2n, a], [a, 2m]]` into [`t_gen`], or `None`
/// when `n`, `m`, `a` are all odd.
pub fn slh_embed(n: &BigInt, m: &BigInt, a: &BigInt) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    hyperbolic_pair(n, m, a).or_else(|| hyperbolic_pair(m, n, a).map(|(y, x)| (x, y)))
}

/// Coordinate matrix of an embedding, rows x and y.
pub fn embedding_matrix(x: &[BigInt], y: &[BigInt]) -> IntMatrix {
    IntMatrix::from_rows(vec![x.to_vec(), y.to_vec()], 6).expect("6 columns")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, rows_primitive};

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn form_agrees_with_gram() {
        let t = t_gen();
        for v in [ivec(&[1, 2, 3, 4, 5, 6]), ivec(&[0, 0, 0, 0, 1, 2]), ivec(&[6, -2, -3, -6, 4, 2])] {
            assert_eq!(t.norm(&v), t_gen_form(&v));
        }
    }

    #[test]
    fn all_odd_has_no_embedding() {
        assert_eq!(slh_embed(&b(1), &b(1), &b(1)), None);
        assert_eq!(slh_embed(&b(3), &b(-1), &b(5)), None);
    }

    #[test]
    fn hyperbolic_plane() {
        let (x, y) = slh_embed(&b(0), &b(0), &b(1)).unwrap();
        assert_eq!(x, ivec(&[0, 1, 0, 0, 0, 0]));
        assert_eq!(y, ivec(&[1, 0, 1, 0, 0, 0]));
    }

    #[test]
    fn gram_and_primitivity() {
        let t = t_gen();
        for (n, m, a) in [(2, 2, 1), (1, 1, 0), (1, 3, 2), (3, 2, 5), (-1, 1, 2)] {
            let (x, y) = slh_embed(&b(n), &b(m), &b(a)).unwrap();
            assert_eq!(t.norm(&x), b(2 * n));
            assert_eq!(t.norm(&y), b(2 * m));
            assert_eq!(t.dot(&x, &y), b(a));
            assert!(rows_primitive(&embedding_matrix(&x, &y)));
        }
    }
}
