//! Named cubic surfaces with the data expected for them.

use serde::Serialize;

use crate::cubic::{CoordMatrix, CubicForm, COORDS};
use crate::moduli::{ns1_family, weighted_limit, Flavor, WeightedPoint};
use crate::poly::{Cyclotomic, Field, MultiPoly, Ring, Q};

/// How a catalog surface is given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Sylvester(String),
    Form(String),
    Limit(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub model: Model,
    /// Nodes in Sylvester or `x0..x3` coordinates.
    pub nodes: Vec<String>,
    pub eckardt_points: Option<usize>,
    pub i_point: String,
    /// Divisor flags that hold at the point.
    pub flags: Vec<&'static str>,
    pub transcendental: Option<&'static str>,
    /// Configuration whose Néron–Severi lattice belongs to the Hessian.
    pub configuration: Option<&'static str>,
    pub automorphism_order: Option<u32>,
}

fn entry(name: &'static str, model: Model, i_point: &str) -> CatalogEntry {
    CatalogEntry {
        name,
        model,
        nodes: Vec::new(),
        eckardt_points: None,
        i_point: i_point.to_string(),
        flags: Vec::new(),
        transcendental: None,
        configuration: None,
        automorphism_order: None,
    }
}

fn syl(s: &str) -> Model {
    Model::Sylvester(s.to_string())
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();

    let mut e = entry("clebsch", syl("1,1,1,1,1"), "(-15:5:5:10:1)");
    e.eckardt_points = Some(10);
    e.transcendental = Some("[[4,1],[1,4]]");
    e.configuration = Some("clebsch");
    e.flags = vec!["tritangent"];
    out.push(e);

    let mut e = entry("cayley", syl("1,1,1,1,1/4"), "(-3/2:17/256:1/128:7/4096:1/65536)");
    e.nodes = strings(&["-1,1,1,1,-2", "1,-1,1,1,-2", "1,1,-1,1,-2", "1,1,1,-1,-2"]);
    e.eckardt_points = Some(6);
    e.transcendental = Some("<2>+<6>");
    e.configuration = Some("cayley");
    e.flags = vec!["boundary", "tritangent"];
    out.push(e);

    let mut e = entry("s1n6", syl("1,1,1,1,1/16"), "(15/32:65/65536:5/262144:25/67108864:1/4294967296)");
    e.nodes = strings(&["1,1,1,1,-4"]);
    e.eckardt_points = Some(6);
    e.transcendental = Some("<2>+<24>");
    e.configuration = Some("x1n6");
    e.flags = vec!["boundary", "tritangent"];
    out.push(e);

    let mut e = entry("s1n4", syl("1,1,1,4/9,4/9"), "(-2560/2187:143360/4782969:2621440/1162261467:7969177600/22876792454961:4294967296/1853020188851841)");
    e.nodes = strings(&["-2,-2,-2,3,3"]);
    e.eckardt_points = Some(4);
    e.transcendental = Some("<6>+<12> or <2>+<4>");
    e.configuration = Some("x1n4");
    e.flags = vec!["boundary", "tritangent"];
    out.push(e);

    let mut e = entry("s3n4", syl("1,1,1,4,4"), "(-1536:45056:3670016:721420288:4294967296)");
    e.nodes = strings(&["-2,2,2,-1,-1", "2,-2,2,-1,-1", "2,2,-2,-1,-1"]);
    e.eckardt_points = Some(4);
    e.transcendental = Some("<4>+<6>");
    e.configuration = Some("x3n4");
    e.flags = vec!["boundary", "tritangent"];
    out.push(e);

    let mut e = entry("ns1", Model::Limit("ns1 family, a = (1,1,2,3)".into()), "(-143:251:432:7776:0)");
    e.flags = vec!["non_sylvester"];
    out.push(e);

    let mut e = entry("ns2", Model::Limit("ns2 family, lambda = 1, mu = 2".into()), "(-8:9:0:8:0)");
    e.flags = vec!["non_sylvester", "ns2_locus", "tritangent"];
    out.push(e);

    let mut e = entry("cyclic", Model::Limit("cyclic family, lambda = (1,2,3,5,1)".into()), "(-1199:27000:0:0:0)");
    e.flags = vec!["non_sylvester", "ns2_locus", "cyclic_locus", "kummer", "g_locus", "tritangent"];
    out.push(e);

    let mut e = entry("fermat", Model::Form("x0^3 + x1^3 + x2^3 + x3^3".into()), "(1:0:0:0:0)");
    e.flags = vec!["non_sylvester", "ns2_locus", "cyclic_locus", "fermat_point", "kummer", "g_locus", "tritangent"];
    out.push(e);

    let mut e = entry("t3=xyz", Model::Form("x4^3 = 3(x0+x1)(x0+x2)(x1+x2)".into()), "(8:1:0:0:0)");
    e.flags = vec!["boundary", "non_sylvester", "ns2_locus", "cyclic_locus", "kummer", "g_locus", "tritangent"];
    out.push(e);

    let mut e = entry("eisenstein", Model::Form("x1^3 + w x2^3 + w^2 x3^3 - 3 x0^2 (x1 + x2 + x3)".into()), "(0:0:1:0:0)");
    e.nodes = strings(&["1:1:w:w^2", "-1:1:w:w^2"]);
    e.flags = vec!["boundary", "non_sylvester", "kummer", "tritangent"];
    e.automorphism_order = Some(3);
    out.push(e);

    let mut e = entry("eta", syl("1,h,h^2,h^3,h^4"), "(0:0:0:0:1)");
    e.nodes = strings(&["1:h^2:h^4:h:h^3"]);
    e.flags = vec!["boundary", "kummer"];
    e.automorphism_order = Some(5);
    out.push(e);

    let mut e = entry("s_mu(0)", Model::Form("x1^3 + x2^3 - 3 x3 (x2 x3 + x0^2)".into()), "(0:1:0:0:0)");
    e.flags = vec!["non_sylvester", "ns2_locus", "cyclic_locus", "kummer", "g_locus", "tritangent"];
    e.automorphism_order = Some(4);
    out.push(e);

    let mut e = entry("s_mu(-1)", Model::Form("x1^3 + x2^3 - 3 x3 (-x1 x3 + x2 x3 + x0^2)".into()), "(0:0:0:1:0)");
    e.flags = vec!["non_sylvester", "ns2_locus", "tritangent"];
    e.automorphism_order = Some(4);
    out.push(e);

    out
}

/// Catalog name of a rational point, if it matches an entry.
pub fn lookup(p: &WeightedPoint<Q>) -> Option<&'static str> {
    catalog().into_iter().find_map(|e| {
        let q = WeightedPoint::parse(&e.i_point, Flavor::I).ok()?;
        crate::moduli::wps_equal(p, &q).ok()?.then_some(e.name)
    })
}

pub type Omega = Cyclotomic<3>;
pub type Eps = Cyclotomic<9>;
pub type Eta = Cyclotomic<5>;
pub type Gauss = Cyclotomic<4>;

fn diagonal<F: Field>(d: [F; 4]) -> CoordMatrix<F> {
    let mut d = d.map(Some);
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { d[i].take().expect("once") } else { F::zero() }))
}

/// `x1³ + ωx2³ + ω²x3³ − 3x0²(x1 + x2 + x3)`.
pub fn eisenstein_surface() -> CubicForm<Omega> {
    let w = Omega::zeta();
    let v = MultiPoly::<Omega>::variables(&COORDS);
    let f = v[1].pow(3) + v[2].pow(3).scale(&w) + v[3].pow(3).scale(&w.pow_u(2))
        - (&v[0] * &v[0] * (&v[1] + &v[2] + &v[3])).scale(&Omega::from_i64(3));
    CubicForm::new(f).expect("cubic")
}

/// `(x0:x1:x2:x3) ↦ (ωx0:x2:x3:x1)`.
pub fn eisenstein_automorphism() -> CoordMatrix<Omega> {
    let (z, o) = (Omega::zero, Omega::one);
    [[Omega::zeta(), z(), z(), z()], [z(), z(), o(), z()], [z(), z(), z(), o()], [z(), o(), z(), z()]]
}

pub fn eisenstein_nodes() -> Vec<[Omega; 4]> {
    let w = Omega::zeta();
    [1, -1].into_iter().map(|s| [Omega::from_i64(s), Omega::one(), w.clone(), w.pow_u(2)]).collect()
}

/// The ns1 limit with `a0 = 0`, `aᵢ = εⁱ`, landing on `(0:0:1:0:0)`.
pub fn eisenstein_point() -> Result<WeightedPoint<MultiPoly<Eps>>, crate::moduli::ModuliError> {
    let a: [MultiPoly<Eps>; 4] = std::array::from_fn(|i| {
        if i == 0 {
            MultiPoly::zero()
        } else {
            MultiPoly::constant(Eps::zeta_pow(i as i64))
        }
    });
    Ok(weighted_limit(&ns1_family(&a))?.point)
}

/// `λᵢ = ηⁱ`.
pub fn eta_lambda() -> [Eta; 5] {
    std::array::from_fn(|i| Eta::zeta_pow(i as i64))
}

/// The cyclic shift of the Sylvester coordinates, written on `x0..x3`.
pub fn eta_automorphism() -> CoordMatrix<Eta> {
    crate::cubic::rational_matrix([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [-1, -1, -1, -1]])
}

pub fn eta_node() -> [Eta; 5] {
    [0, 2, 4, 1, 3].map(|k| Eta::zeta_pow(k))
}

/// `x1³ + x2³ − 3x3(μx1x3 + x2x3 + x0²)`.
pub fn s_mu(mu: &Q) -> CubicForm<Gauss> {
    let v = MultiPoly::<Gauss>::variables(&COORDS);
    let m = Gauss::from_rational(mu);
    let inner = (&v[1] * &v[3]).scale(&m) + &v[2] * &v[3] + &v[0] * &v[0];
    let f = v[1].pow(3) + v[2].pow(3) - (&v[3] * &inner).scale(&Gauss::from_i64(3));
    CubicForm::new(f).expect("cubic")
}

/// `diag(i, 1, 1, −1)`.
pub fn s_mu_automorphism() -> CoordMatrix<Gauss> {
    diagonal([Gauss::zeta(), Gauss::one(), Gauss::one(), Gauss::from_i64(-1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_points_parse() {
        let c = catalog();
        let mut names: Vec<&str> = c.iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), c.len());
        for e in &c {
            assert!(WeightedPoint::parse(&e.i_point, Flavor::I).is_ok(), "{}", e.name);
        }
    }

    #[test]
    fn lookup_up_to_weights() {
        let p = WeightedPoint::parse("(-8:1:0:0:0)", Flavor::I).unwrap();
        assert_eq!(lookup(&p), Some("t3=xyz"));
        let p = WeightedPoint::parse("(1:2:3:4:5)", Flavor::I).unwrap();
        assert_eq!(lookup(&p), None);
    }
}
