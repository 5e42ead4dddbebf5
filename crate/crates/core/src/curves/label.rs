use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CurveError;

/// A (−2)-curve on a Hessian K3 surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveLabel {
    /// Strict transform of the pentahedron edge `x_i = x_j = 0`, `i < j`.
    NPair(u8, u8),
    /// Exceptional curve over the vertex `P_ijk`, `i < j < k`.
    NTriple(u8, u8, u8),
    /// Eckardt line `C_abc`, stored as the rotation with the smallest index
    /// first.
    CLine(u8, u8, u8),
    /// Exceptional curve over a node.
    MNode(u8),
    /// Line through two nodes, `i < j`.
    LEdge(u8, u8),
    /// Vertex of an abstract configuration graph.
    Vertex(u16),
}

impl CurveLabel {
    pub fn n_pair(i: u8, j: u8) -> Self {
        CurveLabel::NPair(i.min(j), i.max(j))
    }

    pub fn n_triple(i: u8, j: u8, k: u8) -> Self {
        let mut v = [i, j, k];
        v.sort_unstable();
        CurveLabel::NTriple(v[0], v[1], v[2])
    }

    pub fn c_line(a: u8, b: u8, c: u8) -> Self {
        let m = a.min(b).min(c);
        if m == a {
            CurveLabel::CLine(a, b, c)
        } else if m == b {
            CurveLabel::CLine(b, c, a)
        } else {
            CurveLabel::CLine(c, a, b)
        }
    }

    pub fn l_edge(i: u8, j: u8) -> Self {
        CurveLabel::LEdge(i.min(j), i.max(j))
    }

    /// Sort key for the canonical layout: N pairs, N triples, C, M, L,
    /// abstract vertices.
    pub fn order_key(&self) -> (u8, [u16; 3]) {
        match *self {
            CurveLabel::NPair(i, j) => (0, [i.into(), j.into(), 0]),
            CurveLabel::NTriple(i, j, k) => (1, [i.into(), j.into(), k.into()]),
            CurveLabel::CLine(a, b, c) => (2, [a.into(), b.into(), c.into()]),
            CurveLabel::MNode(i) => (3, [i.into(), 0, 0]),
            CurveLabel::LEdge(i, j) => (4, [i.into(), j.into(), 0]),
            CurveLabel::Vertex(v) => (5, [v, 0, 0]),
        }
    }

    fn valid(&self) -> bool {
        let ok = |xs: &[u8]| {
            xs.iter().all(|&x| x <= 4) && (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| xs[i] != xs[j]))
        };
        match *self {
            CurveLabel::NPair(i, j) => ok(&[i, j]) && i < j,
            CurveLabel::NTriple(i, j, k) => ok(&[i, j, k]) && i < j && j < k,
            CurveLabel::CLine(a, b, c) => ok(&[a, b, c]) && a < b && a < c,
            CurveLabel::MNode(i) => i <= 4,
            CurveLabel::LEdge(i, j) => ok(&[i, j]) && i < j,
            CurveLabel::Vertex(_) => true,
        }
    }

    /// Image under a permutation of the indices `0..=4`. Node labels are
    /// left unchanged.
    pub fn permuted(&self, p: &[u8; 5]) -> Self {
        let q = |i: u8| p[i as usize];
        match *self {
            CurveLabel::NPair(i, j) => CurveLabel::n_pair(q(i), q(j)),
            CurveLabel::NTriple(i, j, k) => CurveLabel::n_triple(q(i), q(j), q(k)),
            CurveLabel::CLine(a, b, c) => CurveLabel::c_line(q(a), q(b), q(c)),
            other => other,
        }
    }

    /// Index set of an N or C label.
    pub fn support(&self) -> Vec<u8> {
        match *self {
            CurveLabel::NPair(i, j) | CurveLabel::LEdge(i, j) => vec![i, j],
            CurveLabel::NTriple(i, j, k) => vec![i, j, k],
            CurveLabel::CLine(a, b, c) => {
                let mut v = vec![a, b, c];
                v.sort_unstable();
                v
            }
            CurveLabel::MNode(i) => vec![i],
            CurveLabel::Vertex(_) => Vec::new(),
        }
    }

    /// Ordered adjacent pairs of a cyclic word.
    fn cyclic_pairs(&self) -> [(u8, u8); 3] {
        match *self {
            CurveLabel::CLine(a, b, c) => [(a, b), (b, c), (c, a)],
            _ => unreachable!("not a C line"),
        }
    }
}

/// Intersection number given by the combinatorial rules. Abstract vertices
/// are not covered (their intersections come from a graph).
pub fn rule_intersection(a: &CurveLabel, b: &CurveLabel) -> i64 {
    use CurveLabel::*;
    if a == b {
        return -2;
    }
    let disjoint = |x: &[u8], y: &[u8]| x.iter().all(|i| !y.contains(i));
    let hit = match (a, b) {
        (NPair(..), NTriple(..)) | (NTriple(..), NPair(..)) => {
            let (p, t) = if matches!(a, NPair(..)) { (a, b) } else { (b, a) };
            p.support().iter().all(|i| t.support().contains(i))
        }
        (CLine(..), NPair(..)) | (NPair(..), CLine(..)) => disjoint(&a.support(), &b.support()),
        (CLine(..), NTriple(..)) | (NTriple(..), CLine(..)) => a.support() == b.support(),
        (CLine(..), CLine(..)) => {
            let pb = b.cyclic_pairs();
            a.cyclic_pairs().iter().any(|p| pb.contains(p))
        }
        (MNode(k), LEdge(i, j)) | (LEdge(i, j), MNode(k)) => k == i || k == j,
        (NTriple(..), LEdge(..)) | (LEdge(..), NTriple(..)) => disjoint(&a.support(), &b.support()),
        (NPair(..), LEdge(..)) | (LEdge(..), NPair(..)) => a.support() == b.support(),
        _ => false,
    };
    i64::from(hit)
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CurveLabel::NPair(i, j) => write!(f, "N{i}{j}"),
            CurveLabel::NTriple(i, j, k) => write!(f, "N{i}{j}{k}"),
            CurveLabel::CLine(a, b, c) => write!(f, "C{a}{b}{c}"),
            CurveLabel::MNode(i) => write!(f, "M{i}"),
            CurveLabel::LEdge(i, j) => write!(f, "L{i}{j}"),
            CurveLabel::Vertex(v) => write!(f, "V{v}"),
        }
    }
}

impl FromStr for CurveLabel {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CurveError::BadLabel(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let rest: String = chars.filter(|c| *c != '_' && *c != ',').collect();
        if kind == 'V' {
            return rest.parse().map(CurveLabel::Vertex).map_err(|_| bad());
        }
        let idx: Vec<u8> = rest
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        let label = match (kind, idx.as_slice()) {
            ('N', &[i, j]) => CurveLabel::n_pair(i, j),
            ('N', &[i, j, k]) => CurveLabel::n_triple(i, j, k),
            ('C', &[a, b, c]) => CurveLabel::c_line(a, b, c),
            ('M', &[i]) => CurveLabel::MNode(i),
            ('L', &[i, j]) => CurveLabel::l_edge(i, j),
            _ => return Err(bad()),
        };
        if label.valid() {
            Ok(label)
        } else {
            Err(bad())
        }
    }
}

impl Serialize for CurveLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CurveLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for fixed labels, e.g. `lbl("C024")`.
pub fn lbl(s: &str) -> CurveLabel {
    s.parse().expect("valid label literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing_and_canonical_forms() {
        assert_eq!(lbl("C041"), CurveLabel::CLine(0, 4, 1));
        assert_eq!(lbl("C410"), CurveLabel::CLine(0, 4, 1));
        assert_eq!(lbl("C124"), lbl("C241"));
        assert_ne!(lbl("C234"), lbl("C243"));
        assert_eq!(lbl("N10"), CurveLabel::NPair(0, 1));
        assert_eq!(lbl("N_234"), CurveLabel::NTriple(2, 3, 4));
        assert_eq!(lbl("V17"), CurveLabel::Vertex(17));
        assert!("N00".parse::<CurveLabel>().is_err());
        assert!("C015".parse::<CurveLabel>().is_err());
        assert!("X12".parse::<CurveLabel>().is_err());
        assert_eq!(lbl("C032").to_string(), "C032");
    }

    #[test]
    fn basic_rules() {
        assert_eq!(rule_intersection(&lbl("N01"), &lbl("N012")), 1);
        assert_eq!(rule_intersection(&lbl("N01"), &lbl("N234")), 0);
        assert_eq!(rule_intersection(&lbl("C124"), &lbl("C041")), 1);
        assert_eq!(rule_intersection(&lbl("C234"), &lbl("C243")), 0);
        assert_eq!(rule_intersection(&lbl("C234"), &lbl("N01")), 1);
        assert_eq!(rule_intersection(&lbl("C234"), &lbl("N234")), 1);
        assert_eq!(rule_intersection(&lbl("M0"), &lbl("L01")), 1);
        assert_eq!(rule_intersection(&lbl("N234"), &lbl("L01")), 1);
        assert_eq!(rule_intersection(&lbl("N01"), &lbl("L01")), 1);
        assert_eq!(rule_intersection(&lbl("M0"), &lbl("N01")), 0);
    }
}
