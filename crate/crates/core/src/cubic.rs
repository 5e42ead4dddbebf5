//! Cubic surfaces in Sylvester form, their Hessian quartics, the degree 32
//! smoothness discriminant, Eckardt data and automorphisms.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::poly::{det_poly_matrix, parse_rational, Field, MultiPoly, PolyError, Ring, Q};

pub const COORDS: [&str; 4] = ["x0", "x1", "x2", "x3"];
pub const LAMBDAS: [&str; 5] = ["l0", "l1", "l2", "l3", "l4"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubicError {
    #[error("all Sylvester coefficients are zero")]
    AllZero,
    #[error("form is not a homogeneous cubic in x0..x3")]
    NotCubic,
    #[error("the Hessian vanishes identically")]
    ZeroHessian,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("bad point: {0}")]
    BadPoint(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `Σ λᵢ xᵢ³` on the hyperplane `Σ xᵢ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterSurface<F: Field> {
    pub lambda: [F; 5],
}

impl<F: Field> SylvesterSurface<F> {
    pub fn new(lambda: [F; 5]) -> Result<Self, CubicError> {
        if lambda.iter().all(Ring::is_zero) {
            return Err(CubicError::AllZero);
        }
        Ok(SylvesterSurface { lambda })
    }
}

impl SylvesterSurface<Q> {
    /// Parses `"1,1,1,1,1/4"`.
    pub fn parse(s: &str) -> Result<Self, CubicError> {
        let v: Vec<Q> = s.split(',').map(parse_rational).collect::<Result<_, _>>()?;
        let arr: [Q; 5] = v
            .try_into()
            .map_err(|v: Vec<Q>| CubicError::Poly(PolyError::Parse(format!("expected 5 coefficients, got {}", v.len()))))?;
        Self::new(arr)
    }
}

impl<F: Field> fmt::Display for SylvesterSurface<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambda.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A cubic form in `x0..x3`; other variables are treated as parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicForm<F: Field> {
    poly: MultiPoly<F>,
}

impl<F: Field> CubicForm<F> {
    pub fn new(p: MultiPoly<F>) -> Result<Self, CubicError> {
        let p = p.extend_vars(&COORDS);
        let w: Vec<(&str, i64)> = COORDS.iter().map(|c| (*c, 1)).collect();
        if p.is_zero() || p.weighted_degree_named(&w) != Some(3) {
            return Err(CubicError::NotCubic);
        }
        Ok(CubicForm { poly: p })
    }

    pub fn poly(&self) -> &MultiPoly<F> {
        &self.poly
    }
}

impl<F: Field> fmt::Display for CubicForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// `x0, x1, x2, x3` and `x4 = -(x0+x1+x2+x3)`.
pub fn pentahedral_coordinates<F: Field>() -> [MultiPoly<F>; 5] {
    let v = MultiPoly::<F>::variables(&COORDS);
    let x4 = v.iter().fold(MultiPoly::zero(), |a, b| a - b);
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), x4]
}

fn sylvester_sum<F: Field>(coeffs: &[MultiPoly<F>; 5]) -> MultiPoly<F> {
    let x = pentahedral_coordinates::<F>();
    coeffs.iter().zip(&x).fold(MultiPoly::zero(), |acc, (l, xi)| acc + l * &xi.pow(3))
}

pub fn sylvester_to_cubic<F: Field>(s: &SylvesterSurface<F>) -> CubicForm<F> {
    let c = s.lambda.clone().map(MultiPoly::constant);
    CubicForm::new(sylvester_sum(&c)).expect("nonzero Sylvester cubic")
}

/// The Sylvester cubic with indeterminate coefficients `l0..l4`.
pub fn sylvester_cubic_symbolic() -> CubicForm<Q> {
    let l = MultiPoly::<Q>::variables(&LAMBDAS);
    CubicForm::new(sylvester_sum(&[l[0].clone(), l[1].clone(), l[2].clone(), l[3].clone(), l[4].clone()]))
        .expect("symbolic cubic")
}

/// Matrix of second partials in `x0..x3`.
pub fn hessian_matrix<F: Field>(f: &MultiPoly<F>) -> Result<Vec<Vec<MultiPoly<F>>>, PolyError> {
    let first: Vec<MultiPoly<F>> = COORDS.iter().map(|c| f.derivative(c)).collect::<Result<_, _>>()?;
    first.iter().map(|d| COORDS.iter().map(|c| d.derivative(c)).collect()).collect()
}

/// Determinant of the Hessian matrix of `f`.
pub fn hessian_form<F: Field>(f: &CubicForm<F>) -> Result<MultiPoly<F>, CubicError> {
    let h = det_poly_matrix(&hessian_matrix(&f.poly)?)?;
    if h.is_zero() {
        return Err(CubicError::ZeroHessian);
    }
    Ok(h)
}

fn closed_hessian<F: Field>(coeffs: &[MultiPoly<F>; 5]) -> MultiPoly<F> {
    let x = pentahedral_coordinates::<F>();
    let mut acc = MultiPoly::zero();
    for i in 0..5 {
        let mut t = MultiPoly::one();
        for j in (0..5).filter(|&j| j != i) {
            t = t * &coeffs[j] * &x[j];
        }
        acc = acc + t;
    }
    acc
}

/// `Σᵢ λ₀…λ̂ᵢ…λ₄ · x₀…x̂ᵢ…x₄` with `x4` eliminated.
pub fn hessian_sylvester_closed<F: Field>(s: &SylvesterSurface<F>) -> MultiPoly<F> {
    closed_hessian(&s.lambda.clone().map(MultiPoly::constant))
}

/// The closed Hessian formula with indeterminate `l0..l4`.
pub fn hessian_sylvester_closed_symbolic() -> MultiPoly<Q> {
    let l = MultiPoly::<Q>::variables(&LAMBDAS);
    closed_hessian(&[l[0].clone(), l[1].clone(), l[2].clone(), l[3].clone(), l[4].clone()])
}

/// `∏ (s₀ ± s₁ ± s₂ ± s₃ ± s₄)` over all 16 sign choices, rewritten through
/// `sᵢ² = λ₀…λ̂ᵢ…λ₄` as a polynomial in `l0..l4`.
pub fn disc32_symbolic() -> &'static MultiPoly<Q> {
    static CELL: OnceLock<MultiPoly<Q>> = OnceLock::new();
    CELL.get_or_init(|| {
        let s = MultiPoly::<Q>::variables(&["s0", "s1", "s2", "s3", "s4"]);
        let mut prod = MultiPoly::one();
        for signs in 0..16u32 {
            let mut f = s[0].clone();
            for (i, si) in s.iter().enumerate().skip(1) {
                f = if signs & (1 << (i - 1)) == 0 { f + si } else { f - si };
            }
            prod = prod * f;
        }
        let prod = prod.extend_vars(&["s0", "s1", "s2", "s3", "s4"]);
        let terms = prod
            .terms()
            .iter()
            .map(|(m, c)| {
                debug_assert!(m.0.iter().all(|e| e % 2 == 0));
                (m.0.iter().map(|e| 8 - e / 2).collect(), c.clone())
            })
            .collect();
        MultiPoly::from_terms(&LAMBDAS, terms).expect("five exponents")
    })
}

/// Value of the degree 32 discriminant; zero iff the surface is singular.
pub fn disc32<F: Field>(s: &SylvesterSurface<F>) -> F {
    let sym = disc32_symbolic().map_coefficients(|c| F::from_rational(c));
    sym.evaluate(&s.lambda).expect("polynomial evaluation")
}

fn affine_point<F: Field>(p: &[F]) -> Result<Vec<F>, CubicError> {
    let v = match p.len() {
        4 => p.to_vec(),
        5 => {
            let s = p.iter().fold(F::zero(), |a, b| a.add_ref(b));
            if !s.is_zero() {
                return Err(CubicError::BadPoint("coordinates do not sum to zero".into()));
            }
            p[..4].to_vec()
        }
        n => return Err(CubicError::BadPoint(format!("{n} coordinates"))),
    };
    if v.iter().all(Ring::is_zero) {
        return Err(CubicError::BadPoint("zero vector".into()));
    }
    Ok(v)
}

/// Whether `f` and its partials in `x0..x3` all vanish at `p`. Points may be
/// given in the four coordinates `x0..x3` or as five Sylvester coordinates.
pub fn singular_point_of<F: Field>(f: &MultiPoly<F>, p: &[F]) -> Result<bool, CubicError> {
    let pt = affine_point(p)?;
    let f = f.extend_vars(&COORDS);
    let subs: Vec<(&str, F)> = COORDS.iter().copied().zip(pt.iter().cloned()).collect();
    let eval = |g: &MultiPoly<F>| -> Result<bool, CubicError> {
        let mut h = g.clone();
        for (name, v) in &subs {
            h = h.specialize(name, v)?;
        }
        Ok(h.is_zero())
    };
    if !eval(&f)? {
        return Ok(false);
    }
    for c in COORDS {
        if !eval(&f.derivative(c)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn singular_at<F: Field>(f: &CubicForm<F>, p: &[F]) -> Result<bool, CubicError> {
    singular_point_of(&f.poly, p)
}

/// `a + b√d` over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub a: Q,
    pub b: Q,
    pub d: Q,
}

impl Surd {
    pub fn rational(a: Q, d: &Q) -> Self {
        Surd { a, b: Q::zero(), d: d.clone() }
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        assert_eq!(self.d, o.d, "surds with different radicands");
        Surd { a: &self.a * &o.a + &self.b * &o.b * &self.d, b: &self.a * &o.b + &o.a * &self.b, d: self.d.clone() }
    }

    pub fn add(&self, o: &Surd) -> Surd {
        assert_eq!(self.d, o.d, "surds with different radicands");
        Surd { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() }
    }

    /// The value when the irrational part vanishes.
    pub fn to_rational(&self) -> Option<Q> {
        Ring::is_zero(&self.b).then(|| self.a.clone())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Ring::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// The line `x_k + x_l + x_m = 0, ck·x_k + cl·x_l = 0` in Sylvester
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewLine {
    pub plane: [usize; 3],
    pub ck: Surd,
    pub cl: Surd,
}

impl fmt::Display for NewLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [k, l, m] = self.plane;
        write!(f, "(x{k} + x{l} + x{m}, ({})*x{k} + ({})*x{l})", self.ck, self.cl)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EckardtPoint {
    pub pair: (usize, usize),
    pub vertex: [usize; 3],
    /// `λₖλₗxₖxₗ + λₖλₘxₖxₘ + λₗλₘxₗxₘ` restricted to the plane, as the
    /// coefficients `(A, B, C)` of `x_k², x_k x_l, x_l²`.
    pub quadric: (Q, Q, Q),
    pub lines: [NewLine; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EckardtData {
    pub count: usize,
    pub points: Vec<EckardtPoint>,
}

/// Eckardt points of a Sylvester surface and the two new lines through each.
pub fn eckardt_data(s: &SylvesterSurface<Q>) -> Result<EckardtData, CubicError> {
    let l = &s.lambda;
    if l.iter().any(Ring::is_zero) {
        return Err(CubicError::BadPoint("Sylvester coefficients must be nonzero".into()));
    }
    let mut points = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            if l[i] != l[j] {
                continue;
            }
            let rest: Vec<usize> = (0..5).filter(|&t| t != i && t != j).collect();
            let (k, ll, m) = (rest[0], rest[1], rest[2]);
            let a = -(&l[k] * &l[m]);
            let b = &l[k] * &l[ll] - &l[k] * &l[m] - &l[ll] * &l[m];
            let c = -(&l[ll] * &l[m]);
            let d = &b * &b - Q::from_i64(4) * &a * &c;
            let two_a = Q::from_i64(2) * &a;
            let line = |sign: i64| NewLine {
                plane: [k, ll, m],
                ck: Surd::rational(two_a.clone(), &d),
                cl: Surd { a: b.clone(), b: Q::from_i64(-sign), d: d.clone() },
            };
            points.push(EckardtPoint { pair: (i, j), vertex: [k, ll, m], quadric: (a, b.clone(), c), lines: [line(1), line(-1)] });
        }
    }
    Ok(EckardtData { count: points.len(), points })
}

/// 4×4 matrix over a field acting on `x0..x3`: `xᵢ ↦ Σⱼ mᵢⱼ xⱼ`.
pub type CoordMatrix<F> = [[F; 4]; 4];

fn mat_mul<F: Field>(a: &CoordMatrix<F>, b: &CoordMatrix<F>) -> CoordMatrix<F> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(F::zero(), |acc, k| acc.add_ref(&a[i][k].mul_ref(&b[k][j]))))
    })
}

/// Determinant by fraction-free elimination over the field.
pub fn det_field<F: Field>(m: &CoordMatrix<F>) -> F {
    let mut a: Vec<Vec<F>> = m.iter().map(|r| r.to_vec()).collect();
    let mut det = F::one();
    for c in 0..4 {
        let Some(p) = (c..4).find(|&r| !a[r][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            det = det.neg_ref();
        }
        det = det.mul_ref(&a[c][c]);
        let inv = a[c][c].inv().expect("nonzero pivot");
        for r in c + 1..4 {
            let f = a[r][c].mul_ref(&inv);
            for k in c..4 {
                let t = f.mul_ref(&a[c][k]);
                a[r][k] = a[r][k].sub_ref(&t);
            }
        }
    }
    det
}

/// The scalar `c` with `f(m·x) = c·f(x)`, or `None` if `m` does not preserve
/// the surface.
pub fn is_automorphism<F: Field>(f: &CubicForm<F>, m: &CoordMatrix<F>) -> Result<Option<F>, CubicError> {
    if det_field(m).is_zero() {
        return Err(CubicError::SingularMatrix);
    }
    let x = MultiPoly::<F>::variables(&COORDS);
    let images: Vec<MultiPoly<F>> = m
        .iter()
        .map(|row| row.iter().zip(&x).fold(MultiPoly::zero(), |acc, (c, xi)| acc + xi.scale(c)))
        .collect();
    let assignments: Vec<(&str, &MultiPoly<F>)> = COORDS.iter().copied().zip(images.iter()).collect();
    let g = f.poly.substitute(&assignments)?;
    let (lm, lc) = f.poly.terms().first().expect("nonzero form").clone();
    let c = coefficient_by_names(&g, f.poly.vars(), &lm.0);
    if c.is_zero() {
        return Ok(None);
    }
    let c = c.div_ref(&lc)?;
    Ok((g == f.poly.scale(&c)).then_some(c))
}

fn coefficient_by_names<F: Field>(g: &MultiPoly<F>, names: &[String], exps: &[i32]) -> F {
    if names.iter().zip(exps).any(|(n, e)| *e != 0 && !g.vars().contains(n)) {
        return F::zero();
    }
    let want: Vec<i32> =
        g.vars().iter().map(|v| names.iter().position(|n| n == v).map_or(0, |k| exps[k])).collect();
    g.terms().iter().find(|(m, _)| m.0 == want).map_or_else(F::zero, |(_, c)| c.clone())
}

/// Smallest `k ≤ bound` with `mᵏ` a scalar matrix.
pub fn projective_order<F: Field>(m: &CoordMatrix<F>, bound: u32) -> Option<u32> {
    let mut p = m.clone();
    for k in 1..=bound {
        let d = &p[0][0];
        let scalar = !d.is_zero()
            && (0..4).all(|i| (0..4).all(|j| if i == j { p[i][j] == *d } else { p[i][j].is_zero() }));
        if scalar {
            return Some(k);
        }
        p = mat_mul(&p, m);
    }
    None
}

/// Matrix from rational entries.
pub fn rational_matrix<F: Field>(rows: [[i64; 4]; 4]) -> CoordMatrix<F> {
    rows.map(|r| r.map(F::from_i64))
}

/// `Σ_{i≤3} xᵢ³ − (Σ xᵢ)³`, the Clebsch diagonal surface.
pub fn clebsch_cubic() -> CubicForm<Q> {
    sylvester_to_cubic(&SylvesterSurface::new(std::array::from_fn(|_| Q::from_i64(1))).expect("nonzero"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, Cyclotomic};

    fn surface(s: &str) -> SylvesterSurface<Q> {
        SylvesterSurface::parse(s).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_i64(x)).collect()
    }

    #[test]
    fn sylvester_forms() {
        let x = pentahedral_coordinates::<Q>();
        assert_eq!(sylvester_to_cubic(&surface("1,0,0,0,0")).poly, x[0].pow(3));
        assert_eq!(sylvester_to_cubic(&surface("0,0,0,0,1")).poly, x[4].pow(3));
        let sum = x[0].clone() + &x[1] + &x[2] + &x[3];
        let expect = (0..4).fold(MultiPoly::zero(), |a, i| a + x[i].pow(3)) - sum.pow(3);
        assert_eq!(clebsch_cubic().poly, expect);
        assert!(SylvesterSurface::parse("0,0,0,0,0").is_err());
        assert!(SylvesterSurface::parse("1,2,3").is_err());
    }

    #[test]
    fn hessian_of_cone_vanishes() {
        let x = MultiPoly::<Q>::var("x0");
        let f = CubicForm::new(x.pow(3)).unwrap();
        assert_eq!(hessian_form(&f), Err(CubicError::ZeroHessian));
    }

    #[test]
    fn hessian_closed_formula_numeric() {
        let s = surface("1,2,3,5,7");
        let h = hessian_form(&sylvester_to_cubic(&s)).unwrap();
        assert_eq!(h, hessian_sylvester_closed(&s).scale(&q(1296, 1)));
    }

    #[test]
    fn cyclic_hessian_splits_off_x0() {
        let v = MultiPoly::<Q>::variables(&COORDS);
        let g = v[1].pow(3) + v[2].pow(3) + v[3].pow(3) - (&v[1] * &v[2] * &v[3]).scale(&q(5, 1));
        let f = CubicForm::new(v[0].pow(3).scale(&q(2, 1)) + g).unwrap();
        let h = hessian_form(&f).unwrap();
        assert!(h.exact_div(&v[0]).is_ok());
    }

    #[test]
    fn disc32_values() {
        let d = disc32_symbolic();
        assert_eq!(d.total_degree(), Some(32));
        assert!(d.is_homogeneous());
        assert_eq!(disc32(&surface("1,1,1,1,1")), q(-1215, 1));
        assert_eq!(disc32(&surface("1,1,1,1,1/4")), q(0, 1));
        assert_eq!(disc32(&surface("1,1,1,1,1/16")), q(0, 1));
        assert_ne!(disc32(&surface("1,2,3,4,5")), q(0, 1));
    }

    #[test]
    fn known_nodes() {
        let cayley = sylvester_to_cubic(&surface("1,1,1,1,1/4"));
        assert!(singular_at(&cayley, &ints(&[-1, 1, 1, 1, -2])).unwrap());
        let s1n6 = sylvester_to_cubic(&surface("1,1,1,1,1/16"));
        assert!(singular_at(&s1n6, &ints(&[1, 1, 1, 1, -4])).unwrap());
        assert!(!singular_at(&clebsch_cubic(), &ints(&[1, 0, 0, 0, -1])).unwrap());
        assert!(singular_at(&clebsch_cubic(), &ints(&[1, 1, 1, 1, 1])).is_err());
        assert!(singular_at(&clebsch_cubic(), &ints(&[0, 0, 0, 0])).is_err());
    }

    #[test]
    fn eckardt_counts() {
        let d = eckardt_data(&surface("1,1,2,3,4")).unwrap();
        assert_eq!(d.count, 1);
        assert_eq!(d.points[0].vertex, [2, 3, 4]);
        assert_eq!(eckardt_data(&surface("1,1,1,1,2")).unwrap().count, 6);
        assert_eq!(eckardt_data(&surface("1,1,1,1,1")).unwrap().count, 10);
        assert_eq!(eckardt_data(&surface("1,2,3,4,5")).unwrap().count, 0);
    }

    #[test]
    fn new_lines_multiply_to_the_quadric() {
        let d = eckardt_data(&surface("1,1,2,3,4")).unwrap();
        let p = &d.points[0];
        let (a, b, c) = &p.quadric;
        let [l0, l1] = &p.lines;
        let four_a = Q::from_i64(4) * a;
        assert_eq!(l0.ck.mul(&l1.ck).to_rational(), Some(&four_a * a));
        assert_eq!(l0.ck.mul(&l1.cl).add(&l1.ck.mul(&l0.cl)).to_rational(), Some(&four_a * b));
        assert_eq!(l0.cl.mul(&l1.cl).to_rational(), Some(&four_a * c));
    }

    #[test]
    fn eisenstein_automorphism() {
        type W = Cyclotomic<3>;
        let w = W::zeta();
        let v = MultiPoly::<W>::variables(&COORDS);
        let f = v[1].pow(3) + v[2].pow(3).scale(&w) + v[3].pow(3).scale(&w.pow_u(2))
            - (&v[0] * &v[0] * (&v[1] + &v[2] + &v[3])).scale(&W::from_i64(3));
        let f = CubicForm::new(f).unwrap();
        let z = W::zero;
        let o = W::one;
        let m: CoordMatrix<W> = [[w.clone(), z(), z(), z()], [z(), z(), o(), z()], [z(), z(), z(), o()], [z(), o(), z(), z()]];
        assert!(is_automorphism(&f, &m).unwrap().is_some());
        assert_eq!(projective_order(&m, 12), Some(3));
        let id: CoordMatrix<W> = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { o() } else { z() }));
        assert_eq!(is_automorphism(&f, &id).unwrap(), Some(W::one()));
        let swap: CoordMatrix<W> = [[o(), z(), z(), z()], [z(), z(), o(), z()], [z(), o(), z(), z()], [z(), z(), z(), o()]];
        assert_eq!(is_automorphism(&f, &swap).unwrap(), None);
        let sing: CoordMatrix<W> = std::array::from_fn(|_| [o(), z(), z(), z()]);
        assert_eq!(is_automorphism(&f, &sing), Err(CubicError::SingularMatrix));
    }

    #[test]
    fn rational_helpers() {
        let m: CoordMatrix<Q> = rational_matrix([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [-1, -1, -1, -1]]);
        assert_eq!(projective_order(&m, 10), Some(5));
        assert_eq!(det_field(&m), Q::from_i64(1));
    }
}
