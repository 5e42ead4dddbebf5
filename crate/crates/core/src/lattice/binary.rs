use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Lattice, LatticeError};
use crate::linalg::IntMatrix;

fn form(a: &BigInt, b: &BigInt, c: &BigInt) -> Lattice {
    let m = IntMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b.clone(), c.clone()]], 2)
        .expect("2x2");
    Lattice::new(m).expect("even form")
}

/// Gauss-reduced representative `[[a,b],[b,c]]` with `0 ≤ 2b ≤ a ≤ c`,
/// up to GL2(Z) equivalence.
pub fn reduce_even_binary(l: &Lattice) -> Result<Lattice, LatticeError> {
    if l.rank() != 2 {
        return Err(LatticeError::NotPositiveDefinite);
    }
    let g = l.gram();
    let (mut a, mut b, mut c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 1).clone());
    if !a.is_positive() || !(&a * &c - &b * &b).is_positive() {
        return Err(LatticeError::NotPositiveDefinite);
    }
    loop {
        // x -> x - k y brings b into (-a/2, a/2]
        let k: BigInt = (BigInt::from(2) * &b + &a - 1i32).div_floor(&(BigInt::from(2) * &a));
        if !k.is_zero() {
            c = &c - BigInt::from(2) * &k * &b + &k * &k * &a;
            b = &b - &k * &a;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            continue;
        }
        break;
    }
    Ok(form(&a, &b.abs(), &c))
}

/// All reduced even positive definite forms of determinant `d`.
pub fn enumerate_even_binary(d: &BigInt) -> Vec<Lattice> {
    let mut out = Vec::new();
    if !d.is_positive() {
        return out;
    }
    // 3a²/4 ≤ ac − b² = d
    let a_max: BigInt = (BigInt::from(4) * d / 3i32).sqrt();
    let mut a = BigInt::from(2);
    while a <= a_max {
        let mut b = BigInt::zero();
        while BigInt::from(2) * &b <= a {
            let num = d + &b * &b;
            if num.is_multiple_of(&a) {
                let c = &num / &a;
                if c.is_even() && c >= a {
                    out.push(form(&a, &b, &c));
                }
            }
            b += 1;
        }
        a += 2;
    }
    out
}

/// Isometry test for definite binary lattices by comparing reduced forms.
pub fn is_isometric_rank2(x: &Lattice, y: &Lattice) -> Result<bool, LatticeError> {
    let flip = |l: &Lattice| -> Result<Lattice, LatticeError> {
        if l.rank() == 2 && l.gram().get(0, 0).is_negative() {
            l.twist(-1)
        } else {
            Ok(l.clone())
        }
    };
    let (x, y) = (flip(x)?, flip(y)?);
    Ok(reduce_even_binary(&x)?.gram() == reduce_even_binary(&y)?.gram())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(a: i64, b: i64, c: i64) -> Lattice {
        Lattice::from_i64(&[&[a, b], &[b, c]]).unwrap()
    }

    #[test]
    fn disc_15_has_two_classes() {
        let forms = enumerate_even_binary(&BigInt::from(15));
        let grams: Vec<_> = forms.iter().map(|l| l.gram().clone()).collect();
        assert_eq!(grams, vec![lat(2, 1, 8).gram().clone(), lat(4, 1, 4).gram().clone()]);
    }

    #[test]
    fn disc_12_contains_expected() {
        let forms = enumerate_even_binary(&BigInt::from(12));
        assert!(forms.contains(&lat(2, 0, 6)));
        assert!(forms.contains(&lat(4, 2, 4)));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_even_binary(&lat(8, 3, 2)).unwrap(), lat(2, 1, 4));
        assert_eq!(reduce_even_binary(&lat(4, -1, 4)).unwrap(), lat(4, 1, 4));
        assert_eq!(reduce_even_binary(&lat(4, 2, 4)).unwrap(), lat(4, 2, 4));
        assert!(matches!(reduce_even_binary(&lat(0, 1, 0)), Err(LatticeError::NotPositiveDefinite)));
        assert!(is_isometric_rank2(&lat(-4, -1, -4), &lat(4, 1, 4)).unwrap());
    }
}
