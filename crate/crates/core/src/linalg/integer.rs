//! Integer matrix algorithms: Hermite and Smith normal forms, fraction-free
//! elimination, integral solving and saturated kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinalgError};

fn row_axpy(m: &mut IntMatrix, target: usize, q: &BigInt, src: usize) {
    // row_target -= q * row_src
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let s = m.get(src, j);
        if s.is_zero() {
            continue;
        }
        let d = q * s;
        *m.get_mut(target, j) -= d;
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, q: &BigInt, src: usize) {
    // col_target -= q * col_src
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let s = m.get(i, src);
        if s.is_zero() {
            continue;
        }
        let d = q * s;
        *m.get_mut(i, target) -= d;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = -m.get(i, j).clone();
        m.set(i, j, v);
    }
}

/// Row Hermite normal form `h = u·m` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

/// Row-style HNF: positive pivots, entries above a pivot reduced into
/// `[0, pivot)`, zero rows last.
pub fn hnf(m: &IntMatrix) -> Hermite {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()));
            let Some(p) = best else { break };
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut clean = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c) / h.get(r, c);
                row_axpy(&mut h, i, &q, r);
                row_axpy(&mut u, i, &q, r);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            row_axpy(&mut h, i, &q, r);
            row_axpy(&mut u, i, &q, r);
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h, u, rank: r, pivots }
}

/// Smith normal form `s = u·m·v`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// det(u) and det(v), each ±1, tracked through the elementary operations.
    pub det_u: i8,
    pub det_v: i8,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries greater than one.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| *d > BigInt::one()).collect()
    }
}

/// Smith normal form. The pivot is always the smallest nonzero entry (by
/// absolute value) of the remaining block, first in row-major order on ties,
/// so transforms are reproducible.
pub fn snf(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let (mut det_u, mut det_v) = (1i8, 1i8);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if s.get(bi, bj).abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { u, s, v, det_u, det_v };
            };
            if pi != t {
                s.swap_rows(pi, t);
                u.swap_rows(pi, t);
                det_u = -det_u;
            }
            if pj != t {
                s.swap_cols(pj, t);
                v.swap_cols(pj, t);
                det_v = -det_v;
            }
            let mut done = true;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t) / s.get(t, t);
                row_axpy(&mut s, i, &q, t);
                row_axpy(&mut u, i, &q, t);
                if !s.get(i, t).is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j) / s.get(t, t);
                col_axpy(&mut s, j, &q, t);
                col_axpy(&mut v, j, &q, t);
                if !s.get(t, j).is_zero() {
                    done = false;
                }
            }
            if !done {
                continue;
            }
            let p = s.get(t, t).clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    // row_t += row_i
                    let minus_one = -BigInt::one();
                    row_axpy(&mut s, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
            det_u = -det_u;
        }
    }
    Smith { u, s, v, det_u, det_v }
}

/// Fraction-free (Bareiss) row echelon reduction. Returns the rank and, for a
/// square input, its determinant.
fn bareiss(m: &IntMatrix) -> (usize, BigInt) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            a.swap_rows(p, r);
            sign = -sign;
        }
        let piv = a.get(r, c).clone();
        for i in r + 1..rows {
            let lead = a.get(i, c).clone();
            for j in c + 1..cols {
                let val = (&piv * a.get(i, j) - &lead * a.get(r, j)) / &prev;
                a.set(i, j, val);
            }
            a.set(i, c, BigInt::zero());
        }
        prev = piv;
        r += 1;
    }
    let det = if rows == cols && r == rows {
        if sign < 0 {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (r, det)
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(m: &IntMatrix) -> usize {
    bareiss(m).0
}

/// Rank as the number of nonzero Smith invariants.
pub fn rank_via_snf(m: &IntMatrix) -> usize {
    snf(m).rank()
}

pub fn det(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    if m.rows() == 0 {
        return Ok(BigInt::one());
    }
    Ok(bareiss(m).1)
}

/// Determinant recovered from the Smith form and the tracked signs of the
/// transforms.
pub fn det_via_snf(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let sm = snf(m);
    let prod: BigInt = sm.diagonal().iter().product();
    Ok(if sm.det_u * sm.det_v < 0 { -prod } else { prod })
}

/// Some integral `x` with `m·x = rhs`, if one exists.
pub fn solve_integer(m: &IntMatrix, rhs: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if rhs.len() != m.rows() {
        return Err(LinalgError::Shape("right-hand side length".into()));
    }
    let sm = snf(m);
    let ub = sm.u.mul_vec(rhs)?;
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, b) in ub.iter().enumerate() {
        let d = if i < m.cols() { sm.s.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !b.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = b.div_rem(&d);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(sm.v.mul_vec(&y)?))
}

/// Saturated basis (rows, in HNF) of the integer right kernel `{x : m·x = 0}`.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let her = hnf(&m.transpose());
    let basis: Vec<Vec<BigInt>> =
        (her.rank..her.u.rows()).map(|i| her.u.row(i).to_vec()).collect();
    let k = IntMatrix::from_rows(basis, m.cols()).expect("kernel rows");
    if k.rows() == 0 {
        return k;
    }
    let reduced = hnf(&k);
    reduced.h.select_rows(&(0..reduced.rank).collect::<Vec<_>>())
}

/// Nonzero rows of the HNF: a canonical basis of the row lattice.
pub fn row_basis(m: &IntMatrix) -> IntMatrix {
    let her = hnf(m);
    her.h.select_rows(&(0..her.rank).collect::<Vec<_>>())
}

/// True when the rows of `m` span a primitive (saturated) sublattice of Zⁿ,
/// i.e. every nonzero Smith invariant equals one.
pub fn rows_primitive(m: &IntMatrix) -> bool {
    snf(m).diagonal().iter().all(|d| d.is_zero() || d.is_one())
}

/// gcd of a vector's entries (zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
