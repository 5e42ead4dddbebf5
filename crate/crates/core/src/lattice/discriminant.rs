use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Lattice, LatticeError};
use crate::linalg::{self, IntMatrix};

/// Largest discriminant group searched exhaustively.
const MAX_GROUP: u64 = 1 << 16;

/// `r mod n` in `[0, n)`.
pub(crate) fn rat_mod(r: &BigRational, n: i64) -> BigRational {
    let n = BigRational::from_integer(BigInt::from(n));
    r - &n * (r / &n).floor()
}

/// Finite quadratic form on `L*/L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantForm {
    /// Invariant factors greater than one.
    pub invariant_factors: Vec<BigInt>,
    /// Generator lifts in lattice coordinates (dual vectors).
    pub generators: Vec<Vec<BigRational>>,
    /// `q(g_i)` in `[0, 2)`.
    pub q_values: Vec<BigRational>,
    /// `b(g_i, g_j)` in `[0, 1)`.
    pub b_values: Vec<Vec<BigRational>>,
}

impl DiscriminantForm {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// `q(Σ c_i g_i)` mod 2.
    pub fn q(&self, c: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..c.len() {
            if c[i].is_zero() {
                continue;
            }
            acc += &self.q_values[i] * BigRational::from_integer(&c[i] * &c[i]);
            for j in i + 1..c.len() {
                acc += &self.b_values[i][j] * BigRational::from_integer(BigInt::from(2) * &c[i] * &c[j]);
            }
        }
        rat_mod(&acc, 2)
    }

    /// `b(Σ c_i g_i, Σ d_j g_j)` mod 1.
    pub fn b(&self, c: &[BigInt], d: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, dj) in d.iter().enumerate() {
                acc += &self.b_values[i][j] * BigRational::from_integer(ci * dj);
            }
        }
        rat_mod(&acc, 1)
    }

    pub fn element_order(&self, c: &[BigInt]) -> BigInt {
        c.iter()
            .zip(&self.invariant_factors)
            .fold(BigInt::one(), |acc, (ci, d)| acc.lcm(&(d / ci.gcd(d))))
    }

    /// Every group element as a coefficient vector, in lexicographic order.
    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>, LatticeError> {
        let order = self.order();
        if order.to_u64().is_none_or(|o| o > MAX_GROUP) {
            return Err(LatticeError::TooLarge(order));
        }
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let d = d.to_i64().expect("small factor");
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for k in 0..d {
                    let mut v = e.clone();
                    v.push(BigInt::from(k));
                    next.push(v);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Coefficient vector to a dual vector in lattice coordinates.
    pub fn lift(&self, c: &[BigInt]) -> Vec<BigRational> {
        let n = self.generators.first().map_or(0, Vec::len);
        let mut v = vec![BigRational::zero(); n];
        for (ci, g) in c.iter().zip(&self.generators) {
            for (vk, gk) in v.iter_mut().zip(g) {
                *vk += gk * BigRational::from_integer(ci.clone());
            }
        }
        v
    }
}

/// Determinant and discriminant form. Generators are `v·e_i/d_i` from the
/// Smith form `u·G·v = diag(d)`.
pub fn discriminant_data(l: &Lattice) -> Result<(BigInt, DiscriminantForm), LatticeError> {
    let det = l.det();
    if det.is_zero() {
        return Err(LatticeError::Degenerate);
    }
    let g = l.gram();
    let sm = linalg::snf(g);
    let n = l.rank();
    let mut factors = Vec::new();
    let mut gens = Vec::new();
    for i in 0..n {
        let d = sm.s.get(i, i).clone();
        if d.is_one() {
            continue;
        }
        let col: Vec<BigRational> =
            (0..n).map(|k| BigRational::new(sm.v.get(k, i).clone(), d.clone())).collect();
        factors.push(d);
        gens.push(col);
    }
    let gr = g.to_rational();
    let pair = |x: &[BigRational], y: &[BigRational]| gr.bilinear(x, y).expect("dimension");
    let q_values = gens.iter().map(|x| rat_mod(&pair(x, x), 2)).collect();
    let b_values = gens
        .iter()
        .map(|x| gens.iter().map(|y| rat_mod(&pair(x, y), 1)).collect())
        .collect();
    Ok((det, DiscriminantForm { invariant_factors: factors, generators: gens, q_values, b_values }))
}

/// Whether there is a group isomorphism `φ: A → B` with
/// `q_B(φ(x)) = sign·q_A(x)`, searched over generator images.
pub fn forms_isomorphic(a: &DiscriminantForm, b: &DiscriminantForm, sign: i64) -> Result<bool, LatticeError> {
    if a.invariant_factors != b.invariant_factors {
        return Ok(false);
    }
    if a.is_trivial() {
        return Ok(true);
    }
    let s = BigRational::from_integer(BigInt::from(sign));
    let elems = b.elements()?;
    let r = a.invariant_factors.len();
    let candidates: Vec<Vec<&Vec<BigInt>>> = (0..r)
        .map(|i| {
            let target = rat_mod(&(&s * &a.q_values[i]), 2);
            elems
                .iter()
                .filter(|y| b.element_order(y) == a.invariant_factors[i] && b.q(y) == target)
                .collect()
        })
        .collect();
    let targets: Vec<Vec<BigRational>> = (0..r)
        .map(|i| (0..r).map(|k| rat_mod(&(&s * &a.b_values[i][k]), 1)).collect())
        .collect();
    let mut images: Vec<&Vec<BigInt>> = Vec::with_capacity(r);
    Ok(search(b, &candidates, &targets, &mut images))
}

fn search<'a>(
    b: &DiscriminantForm,
    candidates: &[Vec<&'a Vec<BigInt>>],
    targets: &[Vec<BigRational>],
    images: &mut Vec<&'a Vec<BigInt>>,
) -> bool {
    let i = images.len();
    if i == candidates.len() {
        return generates(b, images);
    }
    for &y in &candidates[i] {
        if (0..i).all(|k| b.b(y, images[k]) == targets[i][k]) {
            images.push(y);
            if search(b, candidates, targets, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}

fn generates(b: &DiscriminantForm, images: &[&Vec<BigInt>]) -> bool {
    let r = b.invariant_factors.len();
    let mut rows: Vec<Vec<BigInt>> = images.iter().map(|v| (*v).clone()).collect();
    for (i, d) in b.invariant_factors.iter().enumerate() {
        let mut row = vec![BigInt::zero(); r];
        row[i] = d.clone();
        rows.push(row);
    }
    let m = IntMatrix::from_rows(rows, r).expect("rows");
    let her = linalg::hnf(&m);
    her.pivots.iter().enumerate().all(|(k, &c)| her.h.get(k, c).is_one())
}

/// True iff `|disc a| = |disc b|` and the discriminant form of `a` is
/// isomorphic to the opposite of that of `b`.
pub fn disc_forms_opposite(a: &Lattice, b: &Lattice) -> Result<bool, LatticeError> {
    let (da, fa) = discriminant_data(a)?;
    let (db, fb) = discriminant_data(b)?;
    if da.magnitude() != db.magnitude() {
        return Ok(false);
    }
    forms_isomorphic(&fa, &fb, -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_lattice;

    fn opp(a: &str, b: &str) -> bool {
        disc_forms_opposite(&make_lattice(a).unwrap(), &make_lattice(b).unwrap()).unwrap()
    }

    #[test]
    fn unimodular_trivial() {
        let (d, f) = discriminant_data(&make_lattice("U").unwrap()).unwrap();
        assert_eq!(d, BigInt::from(-1));
        assert!(f.is_trivial());
        assert!(opp("U", "U"));
        assert!(opp("E8", "U"));
    }

    #[test]
    fn a2_twisted() {
        let (d, f) = discriminant_data(&make_lattice("A2(-2)").unwrap()).unwrap();
        assert_eq!(d, BigInt::from(12));
        assert_eq!(f.invariant_factors, vec![BigInt::from(2), BigInt::from(6)]);
        let elems = f.elements().unwrap();
        for x in &elems {
            for y in &elems {
                let sum: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                let lhs = rat_mod(&(f.q(&sum) - f.q(x) - f.q(y)), 2);
                assert_eq!(lhs, rat_mod(&(BigRational::from_integer(2.into()) * f.b(x, y)), 2));
            }
        }
    }

    #[test]
    fn opposite_examples() {
        assert!(opp("<2>", "<-2>"));
        assert!(!opp("<2>", "<2>"));
        assert!(opp("E8(-1)^2+U+<-2>+<-6>", "<2>+<6>"));
        assert!(opp("A2", "A2(-1)"));
        assert!(!opp("A2", "A2"));
        // disc 15 forms [[4,1],[1,4]] and [[2,1],[1,8]] differ
        let t10 = Lattice::from_i64(&[&[4, 1], &[1, 4]]).unwrap();
        let other = Lattice::from_i64(&[&[2, 1], &[1, 8]]).unwrap();
        assert!(!disc_forms_opposite(&t10, &other).unwrap());
        let (_, f1) = discriminant_data(&t10).unwrap();
        let (_, f2) = discriminant_data(&other).unwrap();
        assert!(!forms_isomorphic(&f1, &f2, 1).unwrap());
        assert!(forms_isomorphic(&f1, &f1, 1).unwrap());
    }
}
