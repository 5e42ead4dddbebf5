use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::discriminant::{discriminant_data, rat_mod};
use super::sublattice::scaled_rows;
use super::{Lattice, LatticeError};
use crate::linalg::{self, IntMatrix, RatMatrix};

/// An even overlattice `L + Z·glue` of prime index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlattice {
    pub lattice: Lattice,
    /// Basis rows in the rational coordinates of the original lattice.
    pub basis: RatMatrix,
    pub glue: Vec<BigRational>,
}

/// All even overlattices of index `p`, one per isotropic subgroup of order
/// `p` in the discriminant form.
pub fn even_overlattices(l: &Lattice, p: u32) -> Result<Vec<Overlattice>, LatticeError> {
    let (disc, form) = discriminant_data(l)?;
    let pb = BigInt::from(p);
    if !disc.is_multiple_of(&(&pb * &pb)) {
        return Ok(Vec::new());
    }
    // p-torsion: coefficient (d_i/p)·k_i on generators with p | d_i
    let slots: Vec<usize> = (0..form.invariant_factors.len())
        .filter(|&i| form.invariant_factors[i].is_multiple_of(&pb))
        .collect();
    let n = l.rank();
    let mut out = Vec::new();
    for ks in projective_points(slots.len(), p) {
        let mut c = vec![BigInt::zero(); form.invariant_factors.len()];
        for (&slot, k) in slots.iter().zip(&ks) {
            c[slot] = &form.invariant_factors[slot] / &pb * BigInt::from(*k);
        }
        if !rat_mod(&form.q(&c), 2).is_zero() {
            continue;
        }
        let glue = form.lift(&c);
        let scaled: Vec<BigInt> = glue
            .iter()
            .map(|x| (x * BigRational::from_integer(pb.clone())).to_integer())
            .collect();
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { pb.clone() } else { BigInt::zero() }).collect())
            .collect();
        rows.push(scaled);
        let h = linalg::row_basis(&IntMatrix::from_rows(rows, n)?);
        let basis = scaled_rows(&h, &pb);
        let gram_q = l.gram().to_rational().congruence(&basis)?;
        let gram = IntMatrix::from_fn(n, n, |i, j| gram_q.get(i, j).to_integer());
        debug_assert!(gram_q.entries().iter().all(BigRational::is_integer));
        out.push(Overlattice { lattice: Lattice::new(gram)?, basis, glue });
    }
    Ok(out)
}

/// Even overlattices of index `p` in which the sublattice spanned by
/// `keep` (rows, coordinates of `l`) stays primitive.
pub fn even_overlattices_preserving(
    l: &Lattice,
    p: u32,
    keep: &IntMatrix,
) -> Result<Vec<Overlattice>, LatticeError> {
    let all = even_overlattices(l, p)?;
    let mut out = Vec::new();
    for o in all {
        if !glue_in_span(&o.glue, keep)? {
            out.push(o);
        }
    }
    Ok(out)
}

/// Whether `glue ∈ S⊗Q + Zⁿ`, with `S` the row span of `span`.
pub fn glue_in_span(glue: &[BigRational], span: &IntMatrix) -> Result<bool, LatticeError> {
    let n = glue.len();
    let ann = if span.rows() == 0 { IntMatrix::identity(n) } else { linalg::kernel(span) };
    if ann.rows() == 0 {
        return Ok(true);
    }
    let img = ann.to_rational().mul_vec(glue)?;
    let Some(img) = linalg::to_integral(&img) else { return Ok(false) };
    Ok(linalg::solve_integer(&ann, &img)?.is_some())
}

/// Representatives of the nonzero vectors of `F_p^r` up to scalars: first
/// nonzero coordinate equal to one.
fn projective_points(r: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        let total = (p as u64).pow(free as u32);
        for mut t in 0..total {
            let mut v = vec![0u32; r];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (t % p as u64) as u32;
                t /= p as u64;
            }
            out.push(v);
        }
    }
    out
}

/// Index of `l` in an overlattice, from the basis change.
pub fn overlattice_index(o: &Overlattice) -> BigInt {
    let inv = linalg::inverse(&o.basis).expect("basis is invertible");
    let d = linalg::common_denominator(inv.entries());
    debug_assert!(d.is_one() || !d.is_zero());
    let m = IntMatrix::from_fn(inv.rows(), inv.cols(), |i, j| inv.get(i, j).to_integer());
    linalg::det(&m).map(|x| x.magnitude().clone().into()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_lattice;

    #[test]
    fn a1_squared_has_none() {
        let l = make_lattice("A1^2").unwrap();
        assert!(even_overlattices(&l, 2).unwrap().is_empty());
    }

    #[test]
    fn u2_glues_to_u() {
        let l = make_lattice("U(2)").unwrap();
        let os = even_overlattices(&l, 2).unwrap();
        assert_eq!(os.len(), 2);
        for o in &os {
            assert_eq!(o.lattice.det(), BigInt::from(-1));
            assert_eq!(overlattice_index(o), BigInt::from(2));
        }
    }

    #[test]
    fn no_square_factor_means_empty() {
        assert!(even_overlattices(&make_lattice("<-24>").unwrap(), 3).unwrap().is_empty());
    }

    #[test]
    fn primitivity_filter() {
        let l = make_lattice("E8(-1)^2+U+<-24>+<-2>").unwrap();
        let all = even_overlattices(&l, 2).unwrap();
        assert!(!all.is_empty());
        // the rank 19 part E8(-1)^2+U+<-24> must stay primitive
        let keep = IntMatrix::from_fn(19, 20, |i, j| if i == j { BigInt::one() } else { BigInt::zero() });
        assert!(even_overlattices_preserving(&l, 2, &keep).unwrap().is_empty());
    }
}
