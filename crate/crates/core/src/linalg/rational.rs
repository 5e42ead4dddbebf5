use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinalgError, RatMatrix};

/// Reduced row echelon form over Q. Returns the reduced matrix and its pivot
/// columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.get(r, c).recip();
        for j in 0..cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in 0..cols {
                let v = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank_rational(m: &RatMatrix) -> usize {
    rref(m).1.len()
}

/// Unique solution of a square nonsingular system.
pub fn solve_rational(m: &RatMatrix, rhs: &[BigRational]) -> Result<Vec<BigRational>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    if rhs.len() != n {
        return Err(LinalgError::Shape("right-hand side length".into()));
    }
    let aug = RatMatrix::from_fn(n, n + 1, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else {
            rhs[i].clone()
        }
    });
    let (red, piv) = rref(&aug);
    if piv.len() < n || piv.iter().any(|&p| p >= n) {
        return Err(LinalgError::Singular);
    }
    Ok((0..n).map(|i| red.get(i, n).clone()).collect())
}

pub fn inverse(m: &RatMatrix) -> Result<RatMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let aug = RatMatrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    let (red, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    Ok(RatMatrix::from_fn(n, n, |i, j| red.get(i, n + j).clone()))
}

/// Inertia `(positive, negative, zero)` of a symmetric integer matrix,
/// by congruence diagonalization over Q.
pub fn signature(m: &IntMatrix) -> Result<(usize, usize, usize), LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mut a = m.to_rational();
    let n = a.rows();
    let (mut pos, mut neg) = (0, 0);
    let mut t = 0;
    while t < n {
        if a.get(t, t).is_zero() {
            if let Some(k) = (t + 1..n).find(|&k| !a.get(k, k).is_zero()) {
                a.swap_rows(t, k);
                a.swap_cols(t, k);
            } else if let Some(k) = (t + 1..n).find(|&k| !a.get(t, k).is_zero()) {
                // e_t += e_k makes the diagonal entry 2·a[t][k] ≠ 0.
                for j in 0..n {
                    let v = a.get(t, j) + a.get(k, j);
                    a.set(t, j, v);
                }
                for i in 0..n {
                    let v = a.get(i, t) + a.get(i, k);
                    a.set(i, t, v);
                }
            } else {
                // Row t is entirely zero within the remaining block.
                t += 1;
                continue;
            }
        }
        let p = a.get(t, t).clone();
        if p.is_zero() {
            t += 1;
            continue;
        }
        for i in t + 1..n {
            if a.get(i, t).is_zero() {
                continue;
            }
            let f = a.get(i, t) / &p;
            for j in 0..n {
                let v = a.get(i, j) - &f * a.get(t, j);
                a.set(i, j, v);
            }
            for r in 0..n {
                let v = a.get(r, i) - &f * a.get(r, t);
                a.set(r, i, v);
            }
        }
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        t += 1;
    }
    Ok((pos, neg, n - pos - neg))
}

/// Converts a rational vector to an integral one if every entry is integral.
pub fn to_integral(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

pub fn common_denominator(v: &[BigRational]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}
