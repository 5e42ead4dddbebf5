use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{build_configuration, c_pair, complement, ConfigTag, Configuration, CurveError, CurveLabel};
use crate::lattice::{orthogonal_complement, span_sublattice, EmbeddedSublattice, Lattice, LatticeError};
use crate::linalg::IntMatrix;

/// `c_ij = C_abc − C_acb` with `a < b < c` the complement of `{i, j}`, in
/// Clebsch curve coordinates.
pub fn c_class(i: u8, j: u8, clebsch: &Configuration) -> Result<Vec<BigInt>, CurveError> {
    c_combination(&[(1, i, j)], clebsch)
}

/// `Σ k·c_ij` in Clebsch curve coordinates.
pub fn c_combination(terms: &[(i64, u8, u8)], clebsch: &Configuration) -> Result<Vec<BigInt>, CurveError> {
    let mut out = vec![BigInt::zero(); clebsch.curves.len()];
    for &(k, i, j) in terms {
        if i == j || i > 4 || j > 4 {
            return Err(CurveError::BadLabel(format!("c{i}{j}")));
        }
        let t = complement(&[i, j]);
        let [plus, minus] = c_pair(t[0], t[1], t[2]);
        out[clebsch.index_of(&plus)?] += k;
        out[clebsch.index_of(&minus)?] -= k;
    }
    Ok(out)
}

/// The Clebsch Néron–Severi lattice with its 20-curve basis.
#[derive(Clone, Debug)]
pub struct NS10 {
    pub config: Configuration,
    pub span: EmbeddedSublattice,
}

impl NS10 {
    pub fn lattice(&self) -> &Lattice {
        &self.span.lattice
    }

    /// Coordinates in the 20-curve basis of a vector given in curve
    /// coordinates.
    pub fn coords(&self, v: &[BigInt]) -> Result<Vec<BigInt>, CurveError> {
        self.span.coordinates(v)?.ok_or(CurveError::Lattice(LatticeError::NotInLattice))
    }

    pub fn c_coords(&self, terms: &[(i64, u8, u8)]) -> Result<Vec<BigInt>, CurveError> {
        self.coords(&c_combination(terms, &self.config)?)
    }
}

pub fn ns10() -> &'static NS10 {
    static CELL: OnceLock<NS10> = OnceLock::new();
    CELL.get_or_init(|| {
        let config = build_configuration(&ConfigTag::Clebsch).expect("builtin");
        let mut span = config.span().expect("clebsch span");
        span.lattice = span.lattice.clone().labeled("NS10");
        NS10 { config, span }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EckardtCase {
    One,
    Two,
    TwoPrime,
    Three,
    Four,
    Six,
    /// No Eckardt points: the general Hessian.
    Gen,
}

impl EckardtCase {
    pub const ALL: [EckardtCase; 7] = [
        EckardtCase::Six,
        EckardtCase::Four,
        EckardtCase::Three,
        EckardtCase::TwoPrime,
        EckardtCase::Two,
        EckardtCase::One,
        EckardtCase::Gen,
    ];
}

impl fmt::Display for EckardtCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EckardtCase::One => "1",
            EckardtCase::Two => "2",
            EckardtCase::TwoPrime => "2'",
            EckardtCase::Three => "3",
            EckardtCase::Four => "4",
            EckardtCase::Six => "6",
            EckardtCase::Gen => "gen",
        };
        f.write_str(s)
    }
}

impl FromStr for EckardtCase {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "1" => EckardtCase::One,
            "2" => EckardtCase::Two,
            "2'" | "2p" | "2′" => EckardtCase::TwoPrime,
            "3" => EckardtCase::Three,
            "4" => EckardtCase::Four,
            "6" => EckardtCase::Six,
            "0" | "gen" => EckardtCase::Gen,
            other => return Err(CurveError::BadTag(other.to_string())),
        })
    }
}

type CTerms = Vec<(i64, u8, u8)>;

fn v6() -> CTerms {
    vec![(1, 0, 4), (-1, 1, 4), (1, 2, 4), (-1, 3, 4)]
}

fn v4() -> CTerms {
    vec![(1, 1, 4), (-1, 2, 4), (1, 0, 3), (-1, 1, 3), (1, 2, 3), (-1, 0, 4)]
}

/// Each route lists the c-combinations whose perpendicular in NS10 is the
/// lattice of the case. Alternative routes pass through different
/// intermediate lattices.
pub fn eckardt_routes(case: EckardtCase) -> Vec<Vec<CTerms>> {
    let c34 = vec![(1, 3, 4)];
    let c01 = vec![(1, 0, 1)];
    let d012 = vec![(1, 0, 2), (-1, 1, 2)];
    let d3 = vec![(1, 2, 3), (-1, 1, 3), (1, 0, 3)];
    let d2p = vec![(1, 0, 2), (-1, 0, 3), (-1, 1, 2), (1, 1, 3)];
    match case {
        EckardtCase::Six => vec![vec![v6()]],
        EckardtCase::Four => vec![vec![v4()]],
        EckardtCase::Three => vec![vec![v4(), c34], vec![v6(), d3]],
        EckardtCase::TwoPrime => vec![vec![v6(), d2p]],
        EckardtCase::Two => vec![vec![v4(), d012]],
        EckardtCase::One => vec![vec![v4(), d012.clone(), c34], vec![v6(), d3, d012]],
        EckardtCase::Gen => vec![vec![v4(), d012, c34, c01]],
    }
}

/// The lattice of the case as a perpendicular inside NS10, along the given
/// route.
pub fn eckardt_sublattice(case: EckardtCase, route: usize) -> Result<EmbeddedSublattice, CurveError> {
    let routes = eckardt_routes(case);
    let vecs = routes
        .get(route)
        .ok_or_else(|| CurveError::Unsupported(format!("route {route} for case {case}")))?;
    let ns = ns10();
    let rows: Vec<Vec<BigInt>> = vecs.iter().map(|t| ns.c_coords(t)).collect::<Result<_, _>>()?;
    let s = span_sublattice(ns.lattice(), &IntMatrix::from_rows(rows, 20).map_err(LatticeError::from)?)?;
    Ok(orthogonal_complement(&s)?)
}

/// Néron–Severi lattice of the general cubic with `k` nodes, as the
/// perpendicular of `M_k, …, M_3` inside the Cayley lattice.
pub fn nodal_sublattice(k: u8) -> Result<EmbeddedSublattice, CurveError> {
    if !(1..=4).contains(&k) {
        return Err(CurveError::BadTag(format!("nodal{k}")));
    }
    let cfg = build_configuration(&ConfigTag::Cayley)?;
    let span = cfg.span()?;
    let ns = span.lattice.clone().labeled("NS4n");
    if k == 4 {
        return Ok(span_sublattice(&ns, &IntMatrix::identity(ns.rank()))?);
    }
    let mut rows = Vec::new();
    for j in k..4 {
        let v = cfg.unit(&CurveLabel::MNode(j))?;
        rows.push(span.coordinates(&v)?.ok_or(CurveError::Lattice(LatticeError::NotInLattice))?);
    }
    let s = span_sublattice(&ns, &IntMatrix::from_rows(rows, ns.rank()).map_err(LatticeError::from)?)?;
    Ok(orthogonal_complement(&s)?)
}

/// Kodaira fiber types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kodaira {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Absolute discriminant of the lattice spanned by the components not
    /// meeting the zero section.
    pub fn disc(&self) -> u64 {
        match *self {
            Kodaira::I(n) => u64::from(n.max(1)),
            Kodaira::IStar(_) => 4,
            Kodaira::II | Kodaira::IIStar => 1,
            Kodaira::III | Kodaira::IIIStar => 2,
            Kodaira::IV | Kodaira::IVStar => 3,
        }
    }
}

impl FromStr for Kodaira {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CurveError::BadLabel(s.to_string());
        let t = s.trim().replace('*', "s");
        Ok(match t.as_str() {
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "IVs" => Kodaira::IVStar,
            "IIIs" => Kodaira::IIIStar,
            "IIs" => Kodaira::IIStar,
            _ => {
                let body = t.strip_prefix('I').ok_or_else(bad)?;
                match body.strip_suffix('s') {
                    Some(n) => Kodaira::IStar(n.parse().map_err(|_| bad())?),
                    None => Kodaira::I(body.parse().map_err(|_| bad())?),
                }
            }
        })
    }
}

/// `|disc NS|` of an elliptic K3 with finite Mordell–Weil group.
pub fn shioda_tate_disc(fibers: &[Kodaira], mw_rank: u32, torsion: u64) -> Result<BigRational, CurveError> {
    if mw_rank > 0 {
        return Err(CurveError::Unsupported("positive Mordell-Weil rank".into()));
    }
    if torsion == 0 {
        return Err(CurveError::Invalid("torsion order must be positive".into()));
    }
    let prod: BigInt = fibers.iter().map(|f| BigInt::from(f.disc())).product();
    Ok(BigRational::new(prod, BigInt::from(torsion * torsion)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{disc_forms_opposite, make_lattice};

    fn ks(s: &str) -> Vec<Kodaira> {
        s.split_whitespace().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn shioda_tate_examples() {
        let four = BigRational::from_integer(4.into());
        assert_eq!(shioda_tate_disc(&ks("I0* I8* I1 I1 I1 I1"), 0, 2).unwrap(), four);
        let sixteen = BigRational::from_integer(16.into());
        assert_eq!(shioda_tate_disc(&ks("I4* I4 I0* I1 I1 I1 I1"), 0, 2).unwrap(), sixteen);
        let twelve = BigRational::from_integer(12.into());
        assert_eq!(shioda_tate_disc(&ks("I6 I6 I6 I2 I2 I2"), 0, 12).unwrap(), twelve);
        assert!(shioda_tate_disc(&[], 1, 1).is_err());
    }

    #[test]
    fn c_class_norms() {
        let ns = ns10();
        let g = ns.config.ambient();
        let c01 = c_class(0, 1, &ns.config).unwrap();
        assert_eq!(g.norm(&c01), BigInt::from(-4));
        let c23 = c_class(2, 3, &ns.config).unwrap();
        assert_eq!(g.dot(&c01, &c23), BigInt::zero());
    }

    #[test]
    fn six_eckardt_points() {
        let s = eckardt_sublattice(EckardtCase::Six, 0).unwrap();
        assert_eq!(s.rank(), 19);
        assert!(disc_forms_opposite(&s.lattice, &make_lattice("U+<24>").unwrap()).unwrap());
    }
}
