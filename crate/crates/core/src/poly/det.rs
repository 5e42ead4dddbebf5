use std::collections::HashMap;

use super::{Field, MultiPoly, PolyError, Ring};

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoized on the set of remaining columns. Rows are processed from
/// the sparsest.
pub fn det_poly_matrix<F: Field>(m: &[Vec<MultiPoly<F>>]) -> Result<MultiPoly<F>, PolyError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(PolyError::NotSquare);
    }
    if n == 0 {
        return Ok(MultiPoly::one());
    }
    if n > 20 {
        return Err(PolyError::NotSquare);
    }
    let weight = |r: &Vec<MultiPoly<F>>| r.iter().filter(|p| !p.is_zero()).map(|p| p.n_terms()).sum::<usize>();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| weight(&m[i]));
    // the permutation of rows changes the sign
    let mut perm = order.clone();
    let mut sign = 1i64;
    for i in 0..n {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            sign = -sign;
        }
    }
    let rows: Vec<&Vec<MultiPoly<F>>> = order.iter().map(|&i| &m[i]).collect();
    let mut memo: HashMap<u32, MultiPoly<F>> = HashMap::new();
    let full = (1u32 << n) - 1;
    let d = expand(&rows, 0, full, &mut memo);
    Ok(if sign < 0 { d.neg_ref() } else { d })
}

fn expand<F: Field>(
    rows: &[&Vec<MultiPoly<F>>],
    depth: usize,
    cols: u32,
    memo: &mut HashMap<u32, MultiPoly<F>>,
) -> MultiPoly<F> {
    if depth == rows.len() {
        return MultiPoly::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = MultiPoly::zero();
    let mut pos = 0usize;
    for j in 0..rows.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let e = &rows[depth][j];
        if !e.is_zero() {
            let minor = expand(rows, depth + 1, cols & !(1 << j), memo);
            if !minor.is_zero() {
                let t = e.mul_ref(&minor);
                acc = if pos % 2 == 0 { acc.add_ref(&t) } else { acc.sub_ref(&t) };
            }
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Sylvester matrix of two polynomials in `var`, rows of `p` first.
pub fn sylvester_matrix<F: Field>(
    p: &MultiPoly<F>,
    q: &MultiPoly<F>,
    var: &str,
) -> Result<Vec<Vec<MultiPoly<F>>>, PolyError> {
    let m = p.degree_in(var)?.ok_or(PolyError::Zero)? as usize;
    let n = q.degree_in(var)?.ok_or(PolyError::Zero)? as usize;
    let size = m + n;
    let pc: Vec<MultiPoly<F>> = (0..=m).rev().map(|k| p.coefficient_of(var, k as i32)).collect::<Result<_, _>>()?;
    let qc: Vec<MultiPoly<F>> = (0..=n).rev().map(|k| q.coefficient_of(var, k as i32)).collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(size);
    for (coeffs, shifts) in [(&pc, n), (&qc, m)] {
        for s in 0..shifts {
            let mut row = vec![MultiPoly::zero(); size];
            for (k, c) in coeffs.iter().enumerate() {
                row[s + k] = c.clone();
            }
            out.push(row);
        }
    }
    Ok(out)
}

/// Discriminant of a monic polynomial in `var`:
/// `(-1)^{n(n-1)/2} Res(p, p')`.
pub fn discriminant_univariate<F: Field>(p: &MultiPoly<F>, var: &str) -> Result<MultiPoly<F>, PolyError> {
    let n = p.degree_in(var)?.ok_or(PolyError::Zero)?;
    if p.valuation(var)? < 0 || p.coefficient_of(var, n)?.constant_value() != Some(F::one()) {
        return Err(PolyError::NotMonic(var.to_string()));
    }
    let dp = p.derivative(var)?;
    let res = det_poly_matrix(&sylvester_matrix(p, &dp, var)?)?;
    let k = (n as i64) * (n as i64 - 1) / 2;
    Ok(if k % 2 == 1 { res.neg_ref() } else { res })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, Q};

    type P = MultiPoly<Q>;

    #[test]
    fn diagonal_determinant() {
        let v = P::variables(&["a", "b", "c", "d"]);
        let m: Vec<Vec<P>> =
            (0..4).map(|i| (0..4).map(|j| if i == j { v[i].clone() } else { P::zero() }).collect()).collect();
        assert_eq!(det_poly_matrix(&m).unwrap(), &v[0] * &v[1] * &v[2] * &v[3]);
    }

    #[test]
    fn permutation_signs() {
        let one = P::one;
        let z = P::zero;
        let m = vec![vec![z(), one(), z()], vec![z(), z(), one()], vec![one(), z(), z()]];
        assert_eq!(det_poly_matrix(&m).unwrap(), P::one());
        let m = vec![vec![z(), one()], vec![one(), z()]];
        assert_eq!(det_poly_matrix(&m).unwrap(), P::from_i64(-1));
        let m = vec![vec![P::from_i64(2), P::from_i64(7), P::from_i64(1)], vec![P::from_i64(3), P::zero(), P::from_i64(5)], vec![P::from_i64(-1), P::from_i64(4), P::from_i64(2)]];
        // 2(0-20) - 7(6+5) + 1(12-0)
        assert_eq!(det_poly_matrix(&m).unwrap(), P::from_i64(-40 - 77 + 12));
        assert!(det_poly_matrix(&[vec![P::one(), P::one()]]).is_err());
    }

    #[test]
    fn quadratic_discriminant() {
        let v = P::variables(&["x", "b", "c"]);
        let p = v[0].pow(2) + &v[1] * &v[0] + &v[2];
        let d = discriminant_univariate(&p, "x").unwrap();
        assert_eq!(d, v[1].pow(2) - v[2].scale(&q(4, 1)));
        assert!(discriminant_univariate(&(&p + &p), "x").is_err());
    }

    #[test]
    fn quintic_discriminant_numeric() {
        let x = P::var("x");
        let mut p = P::one();
        for l in 0..5 {
            p = p * (&x - &P::from_i64(l));
        }
        assert_eq!(discriminant_univariate(&p, "x").unwrap(), P::from_i64(82944));
        let mut r = P::one();
        for _ in 0..5 {
            r = r * (&x - &P::one());
        }
        assert!(discriminant_univariate(&r, "x").unwrap().is_zero());
    }
}
