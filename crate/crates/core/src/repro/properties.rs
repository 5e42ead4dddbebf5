use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, TaskResult};
use crate::lattice::{
    disc_forms_opposite, make_lattice, orthogonal_complement, reduce_even_binary, saturate, span_sublattice, Lattice,
};
use crate::linalg::{det, hnf, rank, snf, solve_integer, IntMatrix};

type Failures = Vec<String>;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = BigInt::from(rng.gen_range(-3i64..=3));
                for c in 0..n {
                    let v = m.get(i, c) + &k * m.get(j, c);
                    m.set(i, c, v);
                }
            }
            1 => m.swap_rows(i, j),
            _ => {
                for c in 0..n {
                    let v = -m.get(i, c).clone();
                    m.set(i, c, v);
                }
            }
        }
    }
    m
}

fn is_unimodular(m: &IntMatrix) -> bool {
    det(m).map(|d| d.abs().is_one()).unwrap_or(false)
}

fn snf_laws(rng: &mut ChaCha8Rng, n: usize) -> Failures {
    let mut bad = Vec::new();
    for case in 0..n {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = random_matrix(rng, r, c, 9);
        let s = snf(&m);
        let product = s.u.mul_mat(&m).and_then(|x| x.mul_mat(&s.v));
        let d = s.diagonal();
        let diagonal = (0..r).all(|i| (0..c).all(|j| i == j || s.s.get(i, j).is_zero()));
        let chain = d.iter().all(|x| !x.is_negative())
            && d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
        let dets = det(&s.u).ok() == Some(BigInt::from(s.det_u)) && det(&s.v).ok() == Some(BigInt::from(s.det_v));
        let square = r != c || det(&m).ok().map(|x| x.abs()) == Some(d.iter().product::<BigInt>());
        let ok = product.as_ref().ok() == Some(&s.s)
            && is_unimodular(&s.u)
            && is_unimodular(&s.v)
            && diagonal
            && chain
            && dets
            && square
            && s.rank() == rank(&m);
        if !ok {
            bad.push(format!("snf case {case}: {m}"));
        }
    }
    bad
}

fn hnf_shape(h: &IntMatrix, rank: usize, pivots: &[usize]) -> bool {
    if pivots.len() != rank || pivots.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    for (i, &p) in pivots.iter().enumerate() {
        let piv = h.get(i, p);
        if !piv.is_positive() || (0..p).any(|j| !h.get(i, j).is_zero()) {
            return false;
        }
        if (0..i).any(|k| h.get(k, p).is_negative() || h.get(k, p) >= piv) || (i + 1..h.rows()).any(|k| !h.get(k, p).is_zero()) {
            return false;
        }
    }
    (rank..h.rows()).all(|i| h.row(i).iter().all(Zero::is_zero))
}

fn hnf_laws(rng: &mut ChaCha8Rng, n: usize) -> Failures {
    let mut bad = Vec::new();
    for case in 0..n {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = random_matrix(rng, r, c, 9);
        let h = hnf(&m);
        let p = random_unimodular(rng, r, 8);
        let ok = h.u.mul_mat(&m).as_ref().ok() == Some(&h.h)
            && is_unimodular(&h.u)
            && hnf_shape(&h.h, h.rank, &h.pivots)
            && h.rank == rank(&m)
            && p.mul_mat(&m).map(|pm| hnf(&pm).h == h.h).unwrap_or(false);
        if !ok {
            bad.push(format!("hnf case {case}: {m}"));
        }
    }
    bad
}

fn duality(rng: &mut ChaCha8Rng, n: usize) -> Result<(Failures, usize), Box<dyn std::error::Error + Send + Sync>> {
    let ambient = make_lattice("U^3")?;
    let mut bad = Vec::new();
    let (mut valid, mut tries) = (0, 0);
    while valid < n && tries < 20 * n {
        tries += 1;
        let k = rng.gen_range(1..=3);
        let v = random_matrix(rng, k, 6, 3);
        if rank(&v) != k {
            continue;
        }
        let s = saturate(&span_sublattice(&ambient, &v)?)?;
        if s.is_degenerate() {
            continue;
        }
        valid += 1;
        let perp = orthogonal_complement(&s)?;
        let ok = s.rank() + perp.rank() == 6
            && s.disc().abs() == perp.disc().abs()
            && disc_forms_opposite(&s.lattice, &perp.lattice)?;
        if !ok {
            bad.push(format!("duality: {}", s.basis));
        }
    }
    Ok((bad, valid))
}

fn contained(big: &IntMatrix, small: &IntMatrix) -> Result<bool, Box<dyn std::error::Error + Send + Sync>> {
    let t = big.transpose();
    for v in small.row_vecs() {
        if solve_integer(&t, &v)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn saturation(rng: &mut ChaCha8Rng, n: usize) -> Result<Failures, Box<dyn std::error::Error + Send + Sync>> {
    let ambient = make_lattice("U+U+<2>")?;
    let mut bad = Vec::new();
    let mut done = 0;
    while done < n {
        let k = rng.gen_range(1..=4);
        let v = random_matrix(rng, k, 5, 4);
        if rank(&v) == 0 {
            continue;
        }
        done += 1;
        let s = span_sublattice(&ambient, &v)?;
        let once = saturate(&s)?;
        let twice = saturate(&once)?;
        let ok = hnf(&once.basis).h == hnf(&twice.basis).h
            && once.rank() == rank(&v)
            && contained(&once.basis, &s.basis)?
            && snf(&once.basis).nontrivial_factors().is_empty();
        if !ok {
            bad.push(format!("saturation: {v}"));
        }
    }
    Ok(bad)
}

fn gauss(rng: &mut ChaCha8Rng, n: usize) -> Result<Failures, Box<dyn std::error::Error + Send + Sync>> {
    let mut bad = Vec::new();
    let mut done = 0;
    while done < n {
        let (a, b, c) = (rng.gen_range(1i64..=12), rng.gen_range(-12i64..=12), rng.gen_range(1i64..=12));
        if 4 * a * c - b * b <= 0 {
            continue;
        }
        done += 1;
        let l = Lattice::from_i64(&[&[2 * a, b], &[b, 2 * c]])?;
        let p = random_unimodular(rng, 2, 6);
        let moved = l.induced(&p)?;
        let r = reduce_even_binary(&l)?;
        let g = r.gram();
        let (ra, rb, rc) = (g.get(0, 0), g.get(0, 1), g.get(1, 1));
        let reduced = !rb.is_negative() && BigInt::from(2) * rb <= *ra && ra <= rc;
        let ok = reduce_even_binary(&moved)? == r && reduced && r.det() == l.det();
        if !ok {
            bad.push(format!("gauss: [[{}, {b}], [{b}, {}]] by {p}", 2 * a, 2 * c));
        }
    }
    Ok(bad)
}

pub(crate) fn properties() -> TaskResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5052_4f50);
    let snf_bad = snf_laws(&mut rng, 300);
    let hnf_bad = hnf_laws(&mut rng, 300);
    let (dual_bad, dual_valid) = duality(&mut rng, 200)?;
    let sat_bad = saturation(&mut rng, 200)?;
    let gauss_bad = gauss(&mut rng, 300)?;
    let total = 300 + 300 + dual_valid + 200 + 300;
    let show = |v: &Failures| format!("{:?}", v.iter().take(3).collect::<Vec<_>>());
    Ok(vec![
        Check::eq("SNF: u m v = s, unimodular transforms, divisibility chain, |det| and rank (300 cases) failures", "[]", show(&snf_bad)),
        Check::eq("HNF: u m = h, echelon shape, invariance under unimodular row changes (300 cases) failures", "[]", show(&hnf_bad)),
        Check::eq("nondegenerate primitive sublattices of U^3 tested", 200, dual_valid),
        Check::eq("opposite discriminant forms of S and its complement in U^3, failures", "[]", show(&dual_bad)),
        Check::eq("saturation idempotent, contains the span, primitive in U+U+<2> (200 cases) failures", "[]", show(&sat_bad)),
        Check::eq("Gauss reduction canonical under GL2(Z) (300 cases) failures", "[]", show(&gauss_bad)),
        Check::holds(format!("at least 1000 instances ({total})"), total >= 1000),
    ])
}
