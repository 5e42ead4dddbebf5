//! E8(−1) chains inside curve configurations, splitting of Néron–Severi
//! lattices, and transcendental lattice candidates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::curves::{CurveError, CurveLabel, Configuration};
use crate::lattice::{
    disc_forms_opposite, enumerate_even_binary, even_overlattices, orthogonal_complement, span_sublattice,
    EmbeddedSublattice, Lattice, LatticeError,
};
use crate::linalg::{content, IntMatrix};

/// An E8 Dynkin diagram drawn as a chain of seven nodes with one extra node
/// attached to the third.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootChain {
    pub chain: [CurveLabel; 7],
    pub branch: CurveLabel,
}

impl RootChain {
    pub fn new(chain: [CurveLabel; 7], branch: CurveLabel) -> Self {
        RootChain { chain, branch }
    }

    /// Chain nodes followed by the branch node.
    pub fn labels(&self) -> Vec<CurveLabel> {
        let mut v = self.chain.to_vec();
        v.push(self.branch);
        v
    }
}

impl fmt::Display for RootChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.chain.iter().map(ToString::to_string).collect();
        write!(f, "{} + {}", names.join("-"), self.branch)
    }
}

/// `A-B-C-D-E-F-G + H`, with `H` attached to `C`.
impl FromStr for RootChain {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (body, branch) = s.split_once('+').ok_or_else(|| CurveError::BadLabel(s.to_string()))?;
        let nodes: Vec<CurveLabel> = body.split('-').map(str::parse).collect::<Result<_, _>>()?;
        let chain: [CurveLabel; 7] = nodes.try_into().map_err(|_| CurveError::BadLabel(s.to_string()))?;
        Ok(RootChain { chain, branch: branch.parse()? })
    }
}

/// Negative definite E8 Gram in the node order of [`RootChain::labels`].
pub fn e8_chain_gram() -> IntMatrix {
    let mut g = IntMatrix::identity(8).scaled(&BigInt::from(-2));
    let mut link = |a: usize, b: usize| {
        g.set(a, b, BigInt::one());
        g.set(b, a, BigInt::one());
    };
    for i in 0..6 {
        link(i, i + 1);
    }
    link(2, 7);
    g
}

fn chain_units(cfg: &Configuration, chain: &RootChain) -> Result<Vec<Vec<BigInt>>, CurveError> {
    chain.labels().iter().map(|c| cfg.unit(c)).collect()
}

/// Whether the curves of `chain` meet exactly as the drawn E8 diagram.
pub fn verify_root_chain(cfg: &Configuration, chain: &RootChain) -> Result<bool, CurveError> {
    let labels = chain.labels();
    let idx: Vec<usize> = labels.iter().map(|c| cfg.index_of(c)).collect::<Result<_, _>>()?;
    Ok(cfg.gram.submatrix(&idx, &idx) == e8_chain_gram())
}

/// Orthogonal complement of two E8 chains inside the span of a
/// configuration.
pub fn split_off_e8_pair(
    cfg: &Configuration,
    span: &EmbeddedSublattice,
    chains: &[RootChain; 2],
) -> Result<Lattice, CurveError> {
    for ch in chains {
        if !verify_root_chain(cfg, ch)? {
            return Err(CurveError::Invalid(format!("{ch} is not an E8 diagram")));
        }
    }
    let a = chains[0].labels();
    for x in &a {
        for y in &chains[1].labels() {
            if x == y || !cfg.intersection(x, y)?.is_zero() {
                return Err(CurveError::Invalid(format!("chains are not orthogonal at {x}, {y}")));
            }
        }
    }
    let mut rows = Vec::with_capacity(16);
    for ch in chains {
        for u in chain_units(cfg, ch)? {
            rows.push(span.coordinates(&u)?.ok_or(CurveError::Lattice(LatticeError::NotInLattice))?);
        }
    }
    let e8s = span_sublattice(&span.lattice, &IntMatrix::from_rows(rows, span.rank()).map_err(LatticeError::from)?)?;
    let rest = orthogonal_complement(&e8s)?;
    Ok(rest.lattice)
}

/// Basis change putting a rank 2 lattice of discriminant `-n²` into the form
/// `[[0, n], [n, 0]]`, when one exists.
pub fn hyperbolic_basis(l: &Lattice) -> Option<IntMatrix> {
    if l.rank() != 2 {
        return None;
    }
    let g = l.gram();
    let (a, b, c) = (g.get(0, 0), g.get(0, 1), g.get(1, 1));
    let d = b * b - a * c;
    if !d.is_positive() {
        return None;
    }
    let s = d.sqrt();
    if &s * &s != d {
        return None;
    }
    // isotropic directions: a x + (b ± s) y = 0 or, for a = 0, (1,0)
    let dirs: Vec<[BigInt; 2]> = if a.is_zero() {
        vec![[BigInt::one(), BigInt::zero()], [-c, BigInt::from(2) * b]]
    } else {
        vec![[-(b + &s), a.clone()], [-(b - &s), a.clone()]]
    };
    let prim: Vec<Vec<BigInt>> = dirs
        .iter()
        .map(|v| {
            let k = content(v);
            v.iter().map(|x| x / &k).collect()
        })
        .collect();
    let det = &prim[0][0] * &prim[1][1] - &prim[0][1] * &prim[1][0];
    if det.abs() != BigInt::one() {
        return None;
    }
    let mut m = IntMatrix::from_rows(prim, 2).expect("2x2");
    if l.dot(m.row(0), m.row(1)).is_negative() {
        for j in 0..2 {
            let x = -m.get(1, j).clone();
            m.set(1, j, x);
        }
    }
    Some(m)
}

/// Rank, signature, discriminant and discriminant-form test for `t` as the
/// transcendental lattice belonging to `ns` in the K3 lattice.
pub fn verify_transcendental_candidate(ns: &Lattice, t: &Lattice) -> Result<bool, LatticeError> {
    if ns.rank() + t.rank() != 22 || ns.is_degenerate() || t.is_degenerate() {
        return Ok(false);
    }
    let (pos, neg, _) = t.signature();
    if pos != 2 || neg != t.rank() - 2 {
        return Ok(false);
    }
    if ns.det().magnitude() != t.det().magnitude() {
        return Ok(false);
    }
    disc_forms_opposite(ns, t)
}

/// All reduced even positive definite binary lattices that pass
/// [`verify_transcendental_candidate`] for a rank 20 lattice.
pub fn rank2_transcendental_enumerate(ns: &Lattice) -> Result<Vec<Lattice>, LatticeError> {
    if ns.rank() != 20 {
        return Err(LatticeError::NotFullRank);
    }
    let d = ns.det().abs();
    let mut out = Vec::new();
    for t in enumerate_even_binary(&d) {
        if verify_transcendental_candidate(ns, &t)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// One possibility for the Néron–Severi lattice and its rank 2
/// transcendental candidates.
#[derive(Clone, Debug)]
pub struct NsBranch {
    /// 1 for the given lattice, `p` for an overlattice.
    pub index: u32,
    pub ns: Lattice,
    pub candidates: Vec<Lattice>,
}

/// Candidates for `ns` itself and for each of its even overlattices of
/// index `p`.
pub fn transcendental_branches(ns: &Lattice, p: u32) -> Result<Vec<NsBranch>, LatticeError> {
    let mut out = vec![NsBranch { index: 1, ns: ns.clone(), candidates: rank2_transcendental_enumerate(ns)? }];
    for o in even_overlattices(ns, p)? {
        let candidates = rank2_transcendental_enumerate(&o.lattice)?;
        out.push(NsBranch { index: p, ns: o.lattice, candidates });
    }
    Ok(out)
}

fn chain(s: &str) -> RootChain {
    s.parse().expect("builtin chain")
}

/// The two printed E8 diagrams of the Clebsch configuration.
pub fn clebsch_chains() -> [RootChain; 2] {
    [chain("N034-N04-N024-C024-C124-C041-N23+N24"), chain("N12-N012-N01-C234-C142-C143-N134+N013")]
}

/// The two printed E8 diagrams of the Cayley configuration.
pub fn cayley_chains() -> [RootChain; 2] {
    [chain("N012-N02-N024-N24-N234-N34-N134+N04"), chain("N013-N03-L03-M3-L23-M2-L12+M0")]
}

/// The two printed E8 diagrams of the three-node configuration.
pub fn x3n4_chains() -> [RootChain; 2] {
    [chain("N23-N123-N13-N013-N01-L01-M0+N134"), chain("N124-N24-N024-N04-N034-L12-M2+N02")]
}

/// Two disjoint E8 diagrams in the subdivided square.
pub fn ns2_chains() -> [RootChain; 2] {
    [chain("V14-V15-V0-V1-V2-V3-V4+V16"), chain("V6-V7-V8-V9-V10-V11-V12+V18")]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{build_configuration, lbl, ConfigTag};
    use crate::lattice::make_lattice;

    #[test]
    fn chain_parse_display() {
        let c = &clebsch_chains()[0];
        assert_eq!(c.to_string(), "N034-N04-N024-C024-C124-C041-N23 + N24");
        assert_eq!(c.branch, lbl("N24"));
        assert!("N01-N012+N02".parse::<RootChain>().is_err());
    }

    #[test]
    fn e8_gram_is_unimodular() {
        let e8 = Lattice::new(e8_chain_gram()).unwrap();
        assert_eq!(e8.det(), BigInt::one());
        assert_eq!(e8.signature(), (0, 8, 0));
    }

    #[test]
    fn broken_chain_rejected() {
        let cfg = build_configuration(&ConfigTag::Clebsch).unwrap();
        let bad: RootChain = "N034-N12-N024-C024-C124-C041-N23+N24".parse().unwrap();
        assert!(!verify_root_chain(&cfg, &bad).unwrap());
        let unknown: RootChain = "N034-N04-N024-C024-C124-C041-N23+M0".parse().unwrap();
        assert!(verify_root_chain(&cfg, &unknown).is_err());
    }

    #[test]
    fn hyperbolic_basis_of_twisted_plane() {
        let l = Lattice::from_i64(&[&[2, 0], &[0, -2]]).unwrap();
        assert!(hyperbolic_basis(&l).is_none());
        let u2 = Lattice::from_i64(&[&[4, 2], &[2, 0]]).unwrap();
        let b = hyperbolic_basis(&u2).unwrap();
        assert_eq!(u2.induced(&b).unwrap().gram(), make_lattice("U(2)").unwrap().gram());
    }

    #[test]
    fn candidates_for_known_lattices() {
        let ns = make_lattice("E8(-1)^2+U+<-2>+<-6>").unwrap();
        let t = make_lattice("<2>+<6>").unwrap();
        assert!(verify_transcendental_candidate(&ns, &t).unwrap());
        assert!(!verify_transcendental_candidate(&ns, &t.twist(-1).unwrap()).unwrap());
        let found = rank2_transcendental_enumerate(&ns).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].gram(), t.gram());
    }
}
