//! Configurations of (−2)-curves on Hessian K3 surfaces and the sublattices
//! of their Néron–Severi lattices used to identify transcendental lattices.

mod label;
mod sublattices;

pub use label::{lbl, rule_intersection, CurveLabel};
pub use sublattices::{
    c_class, c_combination, eckardt_routes, eckardt_sublattice, nodal_sublattice, ns10, shioda_tate_disc,
    EckardtCase, Kodaira, NS10,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{span_sublattice, span_with_proposed, EmbeddedSublattice, Lattice, LatticeError};
use crate::linalg::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("invalid curve label {0:?}")]
    BadLabel(String),
    #[error("curve {0} is not part of configuration {1}")]
    NotInConfiguration(CurveLabel, String),
    #[error("unknown configuration tag {0:?}")]
    BadTag(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Which curve system a configuration describes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConfigTag {
    Gen,
    /// General member of the family with `k` Eckardt points.
    Eckardt(u8),
    Clebsch,
    Cayley,
    /// Cayley curves restricted to the nodes `0..k`.
    Nodal(u8),
    X3n4,
    X1n6,
    X1n4,
    Ns2Square,
    Ns1Cube,
    Custom(String),
}

impl fmt::Display for ConfigTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigTag::Gen => write!(f, "gen"),
            ConfigTag::Eckardt(k) => write!(f, "eckardt{k}"),
            ConfigTag::Clebsch => write!(f, "clebsch"),
            ConfigTag::Cayley => write!(f, "cayley"),
            ConfigTag::Nodal(k) => write!(f, "nodal{k}"),
            ConfigTag::X3n4 => write!(f, "x3n4"),
            ConfigTag::X1n6 => write!(f, "x1n6"),
            ConfigTag::X1n4 => write!(f, "x1n4"),
            ConfigTag::Ns2Square => write!(f, "ns2_square"),
            ConfigTag::Ns1Cube => write!(f, "ns1_cube"),
            ConfigTag::Custom(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for ConfigTag {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase().replace(['(', ')', '-'], "");
        let num = |prefix: &str| t.strip_prefix(prefix).and_then(|r| r.parse::<u8>().ok());
        Ok(match t.as_str() {
            "gen" => ConfigTag::Gen,
            "clebsch" => ConfigTag::Clebsch,
            "cayley" => ConfigTag::Cayley,
            "x3n4" => ConfigTag::X3n4,
            "x1n6" => ConfigTag::X1n6,
            "x1n4" => ConfigTag::X1n4,
            "ns2_square" | "ns2square" | "ns2" => ConfigTag::Ns2Square,
            "ns1_cube" | "ns1cube" | "ns1" => ConfigTag::Ns1Cube,
            _ => {
                if let Some(k) = num("nodal").filter(|k| (1..=4).contains(k)) {
                    ConfigTag::Nodal(k)
                } else if let Some(k) = num("eckardt").filter(|k| [1, 2, 3, 4, 6].contains(k)) {
                    ConfigTag::Eckardt(k)
                } else {
                    return Err(CurveError::BadTag(s.to_string()));
                }
            }
        })
    }
}

/// A labeled set of (−2)-curves with its intersection matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub tag: ConfigTag,
    pub curves: Vec<CurveLabel>,
    pub gram: IntMatrix,
    pub proposed_basis: Vec<CurveLabel>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationJson {
    tag: String,
    curves: Vec<CurveLabel>,
    gram: IntMatrix,
    #[serde(default)]
    proposed_basis: Vec<CurveLabel>,
}

fn all_pairs() -> Vec<CurveLabel> {
    let mut v = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            v.push(CurveLabel::NPair(i, j));
        }
    }
    v
}

fn all_triples() -> Vec<CurveLabel> {
    let mut v = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                v.push(CurveLabel::NTriple(i, j, k));
            }
        }
    }
    v
}

/// The two C lines over the vertex `P_abc`.
fn c_pair(a: u8, b: u8, c: u8) -> [CurveLabel; 2] {
    [CurveLabel::c_line(a, b, c), CurveLabel::c_line(a, c, b)]
}

fn complement(idx: &[u8]) -> Vec<u8> {
    (0..5).filter(|i| !idx.contains(i)).collect()
}

/// Index pairs `{i, j}` with `λ_i = λ_j` for the standard member of the
/// family with `k` Eckardt points.
pub fn eckardt_pairs(k: u8) -> Vec<(u8, u8)> {
    let classes: &[&[u8]] = match k {
        1 => &[&[0, 1]],
        2 => &[&[0, 1], &[3, 4]],
        3 => &[&[0, 1, 2]],
        4 => &[&[0, 1, 2], &[3, 4]],
        6 => &[&[0, 1, 2, 3]],
        10 => &[&[0, 1, 2, 3, 4]],
        _ => &[],
    };
    let mut out = Vec::new();
    for cls in classes {
        for (x, &i) in cls.iter().enumerate() {
            for &j in &cls[x + 1..] {
                out.push((i, j));
            }
        }
    }
    out
}

fn eckardt_lines(k: u8) -> Vec<CurveLabel> {
    let mut v: Vec<CurveLabel> = eckardt_pairs(k)
        .into_iter()
        .flat_map(|(i, j)| {
            let t = complement(&[i, j]);
            c_pair(t[0], t[1], t[2])
        })
        .collect();
    v.sort_by_key(CurveLabel::order_key);
    v
}

fn gen_basis() -> Vec<CurveLabel> {
    let drop = [lbl("N234"), lbl("N14"), lbl("N23"), lbl("N24")];
    all_pairs().into_iter().chain(all_triples()).filter(|c| !drop.contains(c)).collect()
}

fn nodes(k: u8) -> (Vec<CurveLabel>, Vec<CurveLabel>) {
    let m = (0..k).map(CurveLabel::MNode).collect();
    let mut l = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            l.push(CurveLabel::LEdge(i, j));
        }
    }
    (m, l)
}

fn with(base: Vec<CurveLabel>, extra: &[&str]) -> Vec<CurveLabel> {
    base.into_iter().chain(extra.iter().map(|s| lbl(s))).collect()
}

/// 4-cycle with three points on each edge and a pendant vertex at each
/// corner. Corner `k` is vertex `4k`, its pendant is `16 + k`.
fn square_graph() -> Vec<(u16, u16)> {
    let mut e: Vec<(u16, u16)> = (0..16).map(|i| (i, (i + 1) % 16)).collect();
    e.extend((0..4).map(|k| (4 * k, 16 + k)));
    e
}

/// Cube graph with every edge subdivided. Corners are `0..8` (bit
/// patterns), midpoints `8..20`.
fn cube_graph() -> Vec<(u16, u16)> {
    let mut e = Vec::new();
    let mut mid = 8;
    for a in 0u16..8 {
        for bit in [1u16, 2, 4] {
            let b = a ^ bit;
            if a < b {
                e.push((a, mid));
                e.push((mid, b));
                mid += 1;
            }
        }
    }
    e
}

fn graph_configuration(tag: ConfigTag, edges: &[(u16, u16)]) -> Configuration {
    let n = 20;
    let mut gram = IntMatrix::identity(n).scaled(&BigInt::from(-2));
    for &(a, b) in edges {
        gram.set(a as usize, b as usize, BigInt::one());
        gram.set(b as usize, a as usize, BigInt::one());
    }
    Configuration {
        tag,
        curves: (0..n as u16).map(CurveLabel::Vertex).collect(),
        gram,
        proposed_basis: Vec::new(),
    }
}

pub fn build_configuration(tag: &ConfigTag) -> Result<Configuration, CurveError> {
    let gen: Vec<CurveLabel> = all_pairs().into_iter().chain(all_triples()).collect();
    let (curves, basis) = match tag {
        ConfigTag::Gen => (gen, gen_basis()),
        ConfigTag::Eckardt(k) => {
            let mut c = gen;
            c.extend(eckardt_lines(*k));
            (c, Vec::new())
        }
        ConfigTag::Clebsch => {
            let mut c = gen;
            c.extend(eckardt_lines(10));
            (c, with(gen_basis(), &["C234", "C134", "C124", "C032"]))
        }
        ConfigTag::Cayley | ConfigTag::Nodal(4) => {
            let (m, l) = nodes(4);
            (gen.into_iter().chain(m).chain(l).collect(), with(gen_basis(), &["L01", "L02", "L03", "L12"]))
        }
        ConfigTag::Nodal(k) if (1..4).contains(k) => {
            let (m, l) = nodes(*k);
            (gen.into_iter().chain(m).chain(l).collect(), Vec::new())
        }
        ConfigTag::X3n4 => {
            let (m, l) = nodes(3);
            let c: Vec<CurveLabel> = gen.into_iter().chain(c_pair(0, 1, 2)).chain(m).chain(l).collect();
            (c, with(gen_basis(), &["C012", "L01", "L02", "L12"]))
        }
        ConfigTag::X1n6 | ConfigTag::X1n4 => {
            let k = if *tag == ConfigTag::X1n6 { 6 } else { 4 };
            let mut c = gen;
            c.extend(eckardt_lines(k));
            c.push(CurveLabel::MNode(0));
            (c, Vec::new())
        }
        ConfigTag::Ns2Square => return Ok(graph_configuration(tag.clone(), &square_graph())),
        ConfigTag::Ns1Cube => return Ok(graph_configuration(tag.clone(), &cube_graph())),
        other => return Err(CurveError::BadTag(other.to_string())),
    };
    let n = curves.len();
    let gram = IntMatrix::from_fn(n, n, |i, j| BigInt::from(rule_intersection(&curves[i], &curves[j])));
    Ok(Configuration { tag: tag.clone(), curves, gram, proposed_basis: basis })
}

impl Configuration {
    pub fn index_of(&self, c: &CurveLabel) -> Result<usize, CurveError> {
        self.curves
            .iter()
            .position(|x| x == c)
            .ok_or_else(|| CurveError::NotInConfiguration(*c, self.tag.to_string()))
    }

    pub fn intersection(&self, a: &CurveLabel, b: &CurveLabel) -> Result<BigInt, CurveError> {
        Ok(self.gram.get(self.index_of(a)?, self.index_of(b)?).clone())
    }

    /// The curve lattice `Z^curves` with the (possibly degenerate) Gram.
    pub fn ambient(&self) -> Lattice {
        Lattice::new(self.gram.clone()).expect("diagonal -2").labeled(self.tag.to_string())
    }

    /// Unit vector of a curve in curve coordinates.
    pub fn unit(&self, c: &CurveLabel) -> Result<Vec<BigInt>, CurveError> {
        let i = self.index_of(c)?;
        let mut v = vec![BigInt::zero(); self.curves.len()];
        v[i] = BigInt::one();
        Ok(v)
    }

    /// Curve-coordinate vector of an integer combination of curves.
    pub fn combination(&self, terms: &[(i64, CurveLabel)]) -> Result<Vec<BigInt>, CurveError> {
        let mut v = vec![BigInt::zero(); self.curves.len()];
        for (k, c) in terms {
            v[self.index_of(c)?] += *k;
        }
        Ok(v)
    }

    /// Parses `-2N_{134} - 5N124 + C032` style combinations into curve
    /// coordinates. Braces, underscores and spaces are ignored.
    pub fn parse_combination(&self, s: &str) -> Result<Vec<BigInt>, CurveError> {
        let bad = || CurveError::BadLabel(s.to_string());
        let clean: String = s
            .chars()
            .filter(|c| !matches!(c, '{' | '}' | '_' | ' ' | '\n' | '\t' | '$'))
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = clean.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
                terms.push(&clean[start..i]);
                start = i;
            }
        }
        let mut out = Vec::new();
        for t in terms.into_iter().filter(|t| !t.is_empty()) {
            let (sign, body) = match t.as_bytes()[0] {
                b'-' => (-1, &t[1..]),
                b'+' => (1, &t[1..]),
                _ => (1, t),
            };
            let split = body.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
            let k: i64 = if split == 0 { 1 } else { body[..split].parse().map_err(|_| bad())? };
            out.push((sign * k, body[split..].parse::<CurveLabel>()?));
        }
        if out.is_empty() {
            return Err(bad());
        }
        self.combination(&out)
    }

    /// Lattice spanned by the curve classes. When a proposed basis is
    /// present it is tested, and used when accepted.
    pub fn span(&self) -> Result<EmbeddedSublattice, CurveError> {
        let ambient = self.ambient();
        let all = IntMatrix::identity(self.curves.len());
        if self.proposed_basis.is_empty() {
            return Ok(span_sublattice(&ambient, &all)?);
        }
        let idx: Vec<usize> = self.proposed_basis.iter().map(|c| self.index_of(c)).collect::<Result<_, _>>()?;
        Ok(span_with_proposed(&ambient, &all, &idx)?)
    }

    /// Checks the structural invariants (symmetric, −2 diagonal, 0/1 off the
    /// diagonal, sizes).
    pub fn validate(&self) -> Result<(), CurveError> {
        let n = self.curves.len();
        if self.gram.rows() != n || self.gram.cols() != n {
            return Err(CurveError::Invalid(format!("gram is {}x{}, expected {n}x{n}", self.gram.rows(), self.gram.cols())));
        }
        if !self.gram.is_symmetric() {
            return Err(CurveError::Invalid("gram not symmetric".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let x = self.gram.get(i, j);
                let ok = if i == j { *x == BigInt::from(-2) } else { x.is_zero() || x.is_one() };
                if !ok {
                    return Err(CurveError::Invalid(format!("entry ({i},{j}) = {x}")));
                }
            }
        }
        for (i, c) in self.curves.iter().enumerate() {
            if self.curves[..i].contains(c) {
                return Err(CurveError::Invalid(format!("duplicate curve {c}")));
            }
        }
        for c in &self.proposed_basis {
            self.index_of(c)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ConfigurationJson {
            tag: self.tag.to_string(),
            curves: self.curves.clone(),
            gram: self.gram.clone(),
            proposed_basis: self.proposed_basis.clone(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CurveError> {
        let raw: ConfigurationJson =
            serde_json::from_value(v.clone()).map_err(|e| CurveError::Invalid(e.to_string()))?;
        let tag = raw.tag.parse().unwrap_or(ConfigTag::Custom(raw.tag));
        let cfg = Configuration { tag, curves: raw.curves, gram: raw.gram, proposed_basis: raw.proposed_basis };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Intersection number of two curves within a named configuration.
pub fn intersection_number(a: &CurveLabel, b: &CurveLabel, tag: &ConfigTag) -> Result<BigInt, CurveError> {
    build_configuration(tag)?.intersection(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;

    #[test]
    fn gen_rank_and_basis() {
        let cfg = build_configuration(&ConfigTag::Gen).unwrap();
        assert_eq!(cfg.curves.len(), 20);
        assert_eq!(rank(&cfg.gram), 16);
        let span = cfg.span().unwrap();
        assert_eq!(span.proposed_accepted, Some(true));
        assert_eq!(span.disc(), BigInt::from(-48));
    }

    #[test]
    fn tags_roundtrip() {
        for t in ["gen", "clebsch", "cayley", "nodal2", "x3n4", "x1n6", "x1n4", "ns2_square", "ns1_cube", "eckardt4"] {
            let tag: ConfigTag = t.parse().unwrap();
            assert_eq!(tag.to_string(), t);
        }
        assert_eq!("nodal(3)".parse::<ConfigTag>().unwrap(), ConfigTag::Nodal(3));
        assert!("nodal5".parse::<ConfigTag>().is_err());
    }

    #[test]
    fn invariants_hold_for_all_builtins() {
        for t in ["gen", "clebsch", "cayley", "nodal1", "nodal2", "nodal3", "x3n4", "x1n6", "x1n4", "ns2_square", "ns1_cube", "eckardt1", "eckardt2", "eckardt3", "eckardt6"] {
            let cfg = build_configuration(&t.parse().unwrap()).unwrap();
            cfg.validate().unwrap();
        }
    }

    #[test]
    fn json_roundtrip_and_rejection() {
        let cfg = build_configuration(&ConfigTag::Cayley).unwrap();
        let j = cfg.to_json();
        assert_eq!(j["curves"][0], "N01");
        assert_eq!(Configuration::from_json(&j).unwrap(), cfg);
        let mut bad = j.clone();
        bad["gram"][0][0] = serde_json::Value::String("2".into());
        assert!(Configuration::from_json(&bad).is_err());
        let mut custom = j;
        custom["tag"] = "mine".into();
        assert_eq!(Configuration::from_json(&custom).unwrap().tag, ConfigTag::Custom("mine".into()));
    }

    #[test]
    fn combination_parsing() {
        let cfg = build_configuration(&ConfigTag::Clebsch).unwrap();
        let v = cfg.parse_combination("-2N_{134}+N01 - C_{032} + 3N01").unwrap();
        assert_eq!(v, cfg.combination(&[(-2, lbl("N134")), (4, lbl("N01")), (-1, lbl("C032"))]).unwrap());
        assert!(cfg.parse_combination("").is_err());
        assert!(cfg.parse_combination("2X01").is_err());
    }

    #[test]
    fn unknown_label_is_error() {
        let r = intersection_number(&lbl("C012"), &lbl("N01"), &ConfigTag::Gen);
        assert!(matches!(r, Err(CurveError::NotInConfiguration(..))));
        assert_eq!(intersection_number(&lbl("C124"), &lbl("C041"), &ConfigTag::Clebsch).unwrap(), BigInt::one());
    }
}
