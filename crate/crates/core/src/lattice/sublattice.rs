use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Lattice, LatticeError};
use crate::linalg::{self, IntMatrix, RatMatrix};

/// A sublattice given by basis rows in the coordinates of its ambient lattice.
///
/// The ambient may be degenerate (a raw span of curve classes). Then the
/// sublattice lives in the quotient by the radical, and `basis` holds lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedSublattice {
    pub ambient: Lattice,
    pub basis: IntMatrix,
    pub lattice: Lattice,
    /// Set when a caller proposed a subset of the spanning vectors as a basis.
    pub proposed_accepted: Option<bool>,
}

impl EmbeddedSublattice {
    fn from_basis(ambient: &Lattice, basis: IntMatrix) -> Result<Self, LatticeError> {
        let lattice = ambient.induced(&basis)?;
        Ok(EmbeddedSublattice {
            ambient: ambient.clone(),
            basis,
            lattice,
            proposed_accepted: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        self.lattice.gram()
    }

    pub fn disc(&self) -> BigInt {
        self.lattice.det()
    }

    pub fn is_degenerate(&self) -> bool {
        self.lattice.is_degenerate()
    }

    /// Ambient vector with the given coordinates in this basis.
    pub fn to_ambient(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.basis.transpose().mul_vec(coords).expect("coordinate length")
    }

    /// Coordinates of an ambient vector in this basis, if the vector lies in
    /// the sublattice (modulo the ambient radical). Needs a nondegenerate
    /// sublattice form.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
        if self.is_degenerate() {
            return Err(LatticeError::Degenerate);
        }
        let pairing = self.basis.mul_vec(&self.ambient.gram().mul_vec(v)?)?;
        let rhs: Vec<BigRational> = pairing.into_iter().map(BigRational::from_integer).collect();
        let c = linalg::solve_rational(&self.gram().to_rational(), &rhs)?;
        let Some(c) = linalg::to_integral(&c) else { return Ok(None) };
        let back = self.to_ambient(&c);
        let diff: Vec<BigInt> = v.iter().zip(&back).map(|(a, b)| a - b).collect();
        let g_diff = self.ambient.gram().mul_vec(&diff)?;
        Ok(g_diff.iter().all(Zero::is_zero).then_some(c))
    }

    /// The induced lattice on its own.
    pub fn to_lattice(&self) -> Lattice {
        self.lattice.clone()
    }
}

/// Basis of `w / rad` lifted to `w`, where `rad` is saturated and contained
/// in the row span of `w` (both given as row bases).
fn complement_of_radical(w: &IntMatrix, rad: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    if rad.rows() == 0 {
        return Ok(w.clone());
    }
    // coordinates of the radical rows in the basis w
    let wt = w.transpose();
    let mut rows = Vec::with_capacity(rad.rows());
    for r in rad.row_vecs() {
        let c = linalg::solve_integer(&wt, &r)?.ok_or(LatticeError::NotInLattice)?;
        rows.push(c);
    }
    let r_coords = IntMatrix::from_rows(rows, w.rows())?;
    let sm = linalg::snf(&r_coords);
    let v_inv = linalg::inverse(&sm.v.to_rational())?;
    let k = sm.rank();
    let comp: Vec<Vec<BigInt>> = (k..w.rows())
        .map(|i| {
            (0..w.rows())
                .map(|j| {
                    let x = v_inv.get(i, j);
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    let comp = IntMatrix::from_rows(comp, w.rows())?;
    Ok(comp.mul_mat(w)?)
}

fn stacked(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    if a.rows() == 0 {
        return Ok(b.clone());
    }
    if b.rows() == 0 {
        return Ok(a.clone());
    }
    Ok(a.vstack(b)?)
}

/// Basis of the span of `vectors` (rows, ambient coordinates), modulo the
/// ambient radical.
pub fn span_sublattice(ambient: &Lattice, vectors: &IntMatrix) -> Result<EmbeddedSublattice, LatticeError> {
    if vectors.cols() != ambient.rank() {
        return Err(linalg::LinalgError::Shape("vector length differs from ambient rank".into()).into());
    }
    let rad = ambient.radical();
    let w = linalg::row_basis(&stacked(vectors, &rad)?);
    if w.rows() == rad.rows() {
        return Err(LatticeError::ZeroSpan);
    }
    let basis = complement_of_radical(&w, &rad)?;
    EmbeddedSublattice::from_basis(ambient, basis)
}

/// Like [`span_sublattice`], and also decides whether the rows listed in
/// `proposed` already form a basis. If so that subset becomes the basis.
pub fn span_with_proposed(
    ambient: &Lattice,
    vectors: &IntMatrix,
    proposed: &[usize],
) -> Result<EmbeddedSublattice, LatticeError> {
    let mut sub = span_sublattice(ambient, vectors)?;
    let rad = ambient.radical();
    let chosen = vectors.select_rows(proposed);
    let accepted = proposed.len() == sub.rank()
        && linalg::row_basis(&stacked(&chosen, &rad)?)
            == linalg::row_basis(&stacked(vectors, &rad)?);
    if accepted {
        sub = EmbeddedSublattice::from_basis(ambient, chosen)?;
    }
    sub.proposed_accepted = Some(accepted);
    Ok(sub)
}

/// Primitive closure `(S ⊗ Q) ∩ ambient`.
pub fn saturate(s: &EmbeddedSublattice) -> Result<EmbeddedSublattice, LatticeError> {
    let rad = s.ambient.radical();
    let w = linalg::kernel(&linalg::kernel(&stacked(&s.basis, &rad)?));
    let basis = complement_of_radical(&w, &rad)?;
    EmbeddedSublattice::from_basis(&s.ambient, basis)
}

/// `S^⊥` in a nondegenerate ambient.
pub fn orthogonal_complement(s: &EmbeddedSublattice) -> Result<EmbeddedSublattice, LatticeError> {
    if s.ambient.is_degenerate() {
        return Err(LatticeError::Degenerate);
    }
    let bg = s.basis.mul_mat(s.ambient.gram())?;
    let k = linalg::kernel(&bg);
    if k.rows() == 0 {
        return Err(LatticeError::ZeroSpan);
    }
    EmbeddedSublattice::from_basis(&s.ambient, k)
}

/// Index of a full-rank sublattice in its ambient (modulo the radical).
pub fn sublattice_index(s: &EmbeddedSublattice) -> Result<BigInt, LatticeError> {
    let rad = s.ambient.radical();
    let full_rank = s.ambient.rank() - rad.rows();
    if s.rank() != full_rank {
        return Err(LatticeError::NotFullRank);
    }
    if rad.rows() == 0 {
        return Ok(linalg::det(&s.basis)?.abs());
    }
    let whole = complement_of_radical(&IntMatrix::identity(s.ambient.rank()), &rad)?;
    // coordinates of s.basis modulo rad in terms of `whole`
    let sys = stacked(&whole, &rad)?.transpose();
    let mut coords = Vec::new();
    for v in s.basis.row_vecs() {
        let c = linalg::solve_integer(&sys, &v)?.ok_or(LatticeError::NotInLattice)?;
        coords.push(c[..full_rank].to_vec());
    }
    Ok(linalg::det(&IntMatrix::from_rows(coords, full_rank)?)?.abs())
}

/// Rational row vectors `rows / denom` as a rational matrix.
pub(crate) fn scaled_rows(rows: &IntMatrix, denom: &BigInt) -> RatMatrix {
    rows.map(|x| BigRational::new(x.clone(), denom.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_lattice;
    use crate::linalg::ivec;
    use num_traits::One;

    #[test]
    fn isotropic_vector_is_degenerate() {
        let u = make_lattice("U").unwrap();
        let s = span_sublattice(&u, &IntMatrix::from_i64_rows(&[&[2, 0]])).unwrap();
        assert_eq!(s.gram(), &IntMatrix::from_i64_rows(&[&[0]]));
        assert!(s.is_degenerate());
        let sat = saturate(&s).unwrap();
        assert_eq!(sat.basis, IntMatrix::from_i64_rows(&[&[1, 0]]));
        assert!(matches!(
            span_sublattice(&u, &IntMatrix::from_i64_rows(&[&[0, 0]])),
            Err(LatticeError::ZeroSpan)
        ));
    }

    #[test]
    fn complement_of_u_summand() {
        let uu = make_lattice("U+U").unwrap();
        let s = span_sublattice(&uu, &IntMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        let c = orthogonal_complement(&s).unwrap();
        assert_eq!(c.gram(), &IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn index_examples() {
        let u = make_lattice("U").unwrap();
        let whole = span_sublattice(&u, &IntMatrix::identity(2)).unwrap();
        assert_eq!(sublattice_index(&whole).unwrap(), BigInt::one());
        let doubled = EmbeddedSublattice::from_basis(&u, IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(sublattice_index(&doubled).unwrap(), BigInt::from(4));
        let line = span_sublattice(&u, &IntMatrix::from_i64_rows(&[&[1, 1]])).unwrap();
        assert_eq!(sublattice_index(&line), Err(LatticeError::NotFullRank));
    }

    #[test]
    fn degenerate_ambient_span() {
        // two curves with the same class: radical (1,-1,0)
        let g = Lattice::from_i64(&[&[-2, -2, 1], &[-2, -2, 1], &[1, 1, -2]]).unwrap();
        let s = span_with_proposed(&g, &IntMatrix::identity(3), &[0, 2]).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.proposed_accepted, Some(true));
        assert_eq!(s.disc(), BigInt::from(3));
        let t = span_with_proposed(&g, &IntMatrix::identity(3), &[0, 1]).unwrap();
        assert_eq!(t.proposed_accepted, Some(false));
        assert_eq!(sublattice_index(&s).unwrap(), BigInt::one());
        assert_eq!(s.coordinates(&ivec(&[0, 1, 1])).unwrap(), Some(ivec(&[1, 1])));
    }
}
