//! The moduli space of cubic surfaces as the weighted projective space
//! P(1,2,3,4,5): invariants, the maps φ and ψ, divisors, weighted limits of
//! degenerating families and special surfaces.

use std::fmt;
use std::path::PathBuf;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cubic::{disc32_symbolic, CubicError, LAMBDAS};
use crate::linalg::{kernel, IntMatrix};
use crate::poly::{discriminant_univariate, parse_rational, q, Field, MultiPoly, PolyError, PolyJson, Ring, Q};

pub const WEIGHTS: [u32; 5] = [1, 2, 3, 4, 5];
pub const SIGMAS: [&str; 5] = ["s1", "s2", "s3", "s4", "s5"];
pub const INVARIANTS: [&str; 5] = ["I8", "I16", "I24", "I32", "I40"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("all coordinates vanish")]
    ZeroPoint,
    #[error("(1:0:0:0:0) is the base point of psi")]
    BasePoint,
    #[error("points live in different spaces")]
    FlavorMismatch,
    #[error("family is degenerate: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cubic(#[from] CubicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Sigma,
    I,
}

/// A point of P(1,2,3,4,5), either in σ-coordinates or in invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedPoint<T: Ring> {
    pub coords: [T; 5],
    pub flavor: Flavor,
}

impl<T: Ring> WeightedPoint<T> {
    pub fn new(coords: [T; 5], flavor: Flavor) -> Result<Self, ModuliError> {
        if coords.iter().all(Ring::is_zero) {
            return Err(ModuliError::ZeroPoint);
        }
        Ok(WeightedPoint { coords, flavor })
    }

    /// `(t x₁, t² x₂, …, t⁵ x₅)`.
    pub fn rescale(&self, t: &T) -> Self {
        let coords = std::array::from_fn(|i| self.coords[i].mul_ref(&t.pow_u(WEIGHTS[i])));
        WeightedPoint { coords, flavor: self.flavor }
    }
}

impl WeightedPoint<Q> {
    /// Parses `(a:b:c:d:e)`; rationals as `p/q`.
    pub fn parse(s: &str, flavor: Flavor) -> Result<Self, ModuliError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<Q> = t
            .split([':', ','])
            .map(parse_rational)
            .collect::<Result<_, _>>()
            .map_err(|e| ModuliError::Parse(e.to_string()))?;
        let coords: [Q; 5] =
            parts.try_into().map_err(|_| ModuliError::Parse(format!("{s}: expected 5 coordinates")))?;
        Self::new(coords, flavor)
    }
}

impl<T: Ring> fmt::Display for WeightedPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

/// Equality in P(1,2,3,4,5) over the algebraic closure: the zero patterns
/// agree and the ratios `qᵢ/pᵢ` satisfy every multiplicative relation
/// `Σ nᵢ wᵢ = 0` among the weights of the support.
pub fn wps_equal<T: Ring>(p: &WeightedPoint<T>, q: &WeightedPoint<T>) -> Result<bool, ModuliError> {
    if p.flavor != q.flavor {
        return Err(ModuliError::FlavorMismatch);
    }
    let support: Vec<usize> = (0..5).filter(|&i| !p.coords[i].is_zero()).collect();
    if (0..5).any(|i| p.coords[i].is_zero() != q.coords[i].is_zero()) {
        return Ok(false);
    }
    let row: Vec<BigInt> = support.iter().map(|&i| BigInt::from(WEIGHTS[i])).collect();
    let m = IntMatrix::from_rows(vec![row], support.len()).expect("one row");
    let rel = kernel(&m);
    for r in 0..rel.rows() {
        let mut lhs = T::one();
        let mut rhs = T::one();
        for (k, &i) in support.iter().enumerate() {
            let n = rel.get(r, k);
            let e: u32 = n.magnitude().try_into().expect("small relation");
            if e == 0 {
                continue;
            }
            if n > &BigInt::from(0) {
                lhs = lhs.mul_ref(&p.coords[i].pow_u(e));
                rhs = rhs.mul_ref(&q.coords[i].pow_u(e));
            } else {
                lhs = lhs.mul_ref(&q.coords[i].pow_u(e));
                rhs = rhs.mul_ref(&p.coords[i].pow_u(e));
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `p` lies in the singular locus of P(1,2,3,4,5).
pub fn wps_is_singular<T: Ring>(p: &WeightedPoint<T>) -> bool {
    let g = (0..5).filter(|&i| !p.coords[i].is_zero()).fold(0u32, |g, i| g.gcd(&WEIGHTS[i]));
    g > 1
}

/// Elementary symmetric functions `σ₁..σ₅`.
pub fn sigma<T: Ring>(lambda: &[T; 5]) -> [T; 5] {
    let mut e: Vec<T> = vec![T::one(), T::zero(), T::zero(), T::zero(), T::zero(), T::zero()];
    for l in lambda {
        for k in (1..=5).rev() {
            let t = e[k - 1].mul_ref(l);
            e[k] = e[k].add_ref(&t);
        }
    }
    std::array::from_fn(|i| e[i + 1].clone())
}

/// `(σ₁..σ₅) ↦ (I₈..I₄₀)`.
pub fn phi<T: Ring>(s: &[T; 5]) -> [T; 5] {
    let [s1, s2, s3, s4, s5] = s;
    let i8 = s4.mul_ref(s4).sub_ref(&T::from_i64(4).mul_ref(s3).mul_ref(s5));
    [
        i8,
        s5.pow_u(3).mul_ref(s1),
        s5.pow_u(4).mul_ref(s4),
        s5.pow_u(6).mul_ref(s2),
        s5.pow_u(8),
    ]
}

/// `(I₈..I₄₀) ↦ (I₁₆ : I₃₂ : (I₂₄² − I₈I₄₀)/4 : I₂₄I₄₀ : I₄₀²)`.
pub fn psi_coords<T: Ring>(i: &[T; 5]) -> [T; 5] {
    let [i8, i16, i24, i32, i40] = i;
    let quarter = T::from_rational(&q(1, 4));
    [
        i16.clone(),
        i32.clone(),
        i24.mul_ref(i24).sub_ref(&i8.mul_ref(i40)).mul_ref(&quarter),
        i24.mul_ref(i40),
        i40.mul_ref(i40),
    ]
}

pub fn phi_point<T: Ring>(p: &WeightedPoint<T>) -> Result<WeightedPoint<T>, ModuliError> {
    if p.flavor != Flavor::Sigma {
        return Err(ModuliError::FlavorMismatch);
    }
    WeightedPoint::new(phi(&p.coords), Flavor::I)
}

pub fn psi<T: Ring>(p: &WeightedPoint<T>) -> Result<WeightedPoint<T>, ModuliError> {
    if p.flavor != Flavor::I {
        return Err(ModuliError::FlavorMismatch);
    }
    if p.coords[1..].iter().all(Ring::is_zero) {
        return Err(ModuliError::BasePoint);
    }
    WeightedPoint::new(psi_coords(&p.coords), Flavor::Sigma)
}

/// The point of a Sylvester surface in P(1,2,3,4,5)_I.
pub fn invariants_point<T: Ring>(lambda: &[T; 5]) -> Result<WeightedPoint<T>, ModuliError> {
    WeightedPoint::new(phi(&sigma(lambda)), Flavor::I)
}

fn invariant_vars() -> Vec<MultiPoly<Q>> {
    MultiPoly::variables(&INVARIANTS)
}

/// `(I₈² − 2⁶I₁₆)² − 2¹⁴(I₃₂ + 2⁻³I₈I₂₄)`.
pub fn boundary_polynomial() -> MultiPoly<Q> {
    let v = invariant_vars();
    let a = v[0].pow(2) - v[1].scale(&q(64, 1));
    let b = &v[3] + (&v[0] * &v[2]).scale(&q(1, 8));
    a.pow(2) - b.scale(&q(16384, 1))
}

/// `I₈I₂₄ + 8I₃₂`.
pub fn kummer_polynomial() -> MultiPoly<Q> {
    let v = invariant_vars();
    &v[0] * &v[2] + v[3].scale(&q(8, 1))
}

/// `16I₁₆³I₂₄² + 27I₂₄⁴ − 72I₁₆I₂₄²I₃₂ − 16I₁₆²I₃₂² + 64I₃₂³`.
pub fn g_polynomial() -> MultiPoly<Q> {
    let v = invariant_vars();
    let (i16, i24, i32) = (&v[1], &v[2], &v[3]);
    (i16.pow(3) * i24.pow(2)).scale(&q(16, 1)) + i24.pow(4).scale(&q(27, 1))
        - (i16 * &i24.pow(2) * i32).scale(&q(72, 1))
        - (i16.pow(2) * i32.pow(2)).scale(&q(16, 1))
        + i32.pow(3).scale(&q(64, 1))
}

/// `I₈..I₄₀` as polynomials in `l0..l4`.
pub fn phi_in_lambda() -> [MultiPoly<Q>; 5] {
    let l = MultiPoly::<Q>::variables(&LAMBDAS);
    let lam: [MultiPoly<Q>; 5] = std::array::from_fn(|i| l[i].clone());
    phi(&sigma(&lam))
}

/// Composes a polynomial in `I8..I40` with the invariants of the Sylvester
/// form.
pub fn pull_back_to_lambda(p: &MultiPoly<Q>) -> Result<MultiPoly<Q>, ModuliError> {
    let phis = phi_in_lambda();
    let subs: Vec<(&str, &MultiPoly<Q>)> = INVARIANTS.iter().copied().zip(phis.iter()).collect();
    Ok(p.extend_vars(&INVARIANTS).substitute(&subs)?)
}

/// Whether the boundary polynomial composed with σ is exactly the degree 32
/// discriminant, with constant 1.
pub fn boundary_matches_disc32() -> Result<bool, ModuliError> {
    Ok(pull_back_to_lambda(&boundary_polynomial())? == *disc32_symbolic())
}

fn eval_i<F: Field>(p: &MultiPoly<Q>, point: &[F; 5]) -> Result<F, ModuliError> {
    let p = p.extend_vars(&INVARIANTS).map_coefficients(|c| F::from_rational(c));
    let named: Vec<(&str, F)> = INVARIANTS.iter().copied().zip(point.iter().cloned()).collect();
    Ok(p.evaluate_named(&named)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorFlags {
    pub boundary: bool,
    pub kummer: bool,
    pub non_sylvester: bool,
    pub ns2_locus: bool,
    pub cyclic_locus: bool,
    pub fermat_point: bool,
    /// `I₄₀ = g = 0`.
    pub g_locus: bool,
    pub tritangent: bool,
}

/// Which of the named divisors and loci contain `p`.
pub fn divisor_membership<F: Field>(p: &WeightedPoint<F>) -> Result<DivisorFlags, ModuliError> {
    if p.flavor != Flavor::I {
        return Err(ModuliError::FlavorMismatch);
    }
    let c = &p.coords;
    let z = |i: usize| c[i].is_zero();
    let tri = tritangent_polynomial()?;
    Ok(DivisorFlags {
        boundary: eval_i(&boundary_polynomial(), c)?.is_zero(),
        kummer: eval_i(&kummer_polynomial(), c)?.is_zero(),
        non_sylvester: z(4),
        ns2_locus: z(2) && z(4),
        cyclic_locus: z(2) && z(3) && z(4),
        fermat_point: z(1) && z(2) && z(3) && z(4),
        g_locus: z(4) && eval_i(&g_polynomial(), c)?.is_zero(),
        tritangent: eval_i(&tri.f, c)?.is_zero(),
    })
}

/// Discriminant of `x⁵ − s1x⁴ + s2x³ − s3x² + s4x − s5` in `s1..s5`.
pub fn quintic_discriminant_sigma() -> &'static MultiPoly<Q> {
    static CELL: OnceLock<MultiPoly<Q>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut names = vec!["x"];
        names.extend(SIGMAS);
        let v = MultiPoly::<Q>::variables(&names);
        let x = &v[0];
        let p = x.pow(5) - &v[1] * &x.pow(4) + &v[2] * &x.pow(3) - &v[3] * &x.pow(2) + &v[4] * x - &v[5];
        discriminant_univariate(&p, "x").expect("monic quintic").trim_vars()
    })
}

/// The tritangent polynomial and the checks made while computing it.
#[derive(Clone, Debug)]
pub struct Tritangent {
    /// Degree of the ψ pull-back in `I8..I40` (as invariant degrees).
    pub pullback_degree: i64,
    /// Quotient of the pull-back by `I40³`, normalized to content 1 and
    /// positive leading coefficient.
    pub f: MultiPoly<Q>,
    pub f_degree: i64,
    /// `f(I8, I16, I24, I32, 0) = c·I24³(I8I24 + 8I32)g`, when it holds.
    pub restriction_constant: Option<Q>,
    pub from_cache: bool,
}

const INVARIANT_DEGREES: [i64; 5] = [8, 16, 24, 32, 40];

/// Composes a polynomial in `s1..s5` with ψ.
pub fn psi_pullback(p: &MultiPoly<Q>) -> Result<MultiPoly<Q>, ModuliError> {
    let v = invariant_vars();
    let ps = psi_coords(&[v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()]);
    let subs: Vec<(&str, &MultiPoly<Q>)> = SIGMAS.iter().copied().zip(ps.iter()).collect();
    Ok(p.extend_vars(&SIGMAS).substitute(&subs)?.extend_vars(&INVARIANTS))
}

fn cache_path() -> Option<PathBuf> {
    std::env::var_os("HESSK3_CACHE_DIR").map(|d| PathBuf::from(d).join("tritangent_f.json"))
}

fn compute_tritangent() -> Result<Tritangent, ModuliError> {
    let disc = quintic_discriminant_sigma();
    let pulled = psi_pullback(disc)?;
    let pullback_degree = pulled.weighted_degree_named(&weighted_names()).ok_or_else(|| {
        ModuliError::Degenerate("pull-back is not weighted homogeneous".into())
    })?;
    let i40_cubed = MultiPoly::<Q>::var("I40").pow(3);
    let (f_raw, from_cache) = match cache_path().and_then(|p| std::fs::read_to_string(p).ok()) {
        Some(text) => {
            let j: PolyJson = serde_json::from_str(&text).map_err(|e| ModuliError::Cache(e.to_string()))?;
            let cached = MultiPoly::<Q>::from_json(&j)?;
            if &cached * &i40_cubed != pulled {
                return Err(ModuliError::Cache("cached polynomial does not match the pull-back".into()));
            }
            (cached, true)
        }
        None => (pulled.exact_div(&i40_cubed)?, false),
    };
    if !from_cache {
        if let Some(path) = cache_path() {
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir).map_err(|e| ModuliError::Cache(e.to_string()))?;
            }
            let text = serde_json::to_string(&f_raw.to_json()).map_err(|e| ModuliError::Cache(e.to_string()))?;
            std::fs::write(&path, text).map_err(|e| ModuliError::Cache(e.to_string()))?;
        }
    }
    let f = f_raw.primitive_part();
    let f_degree = f.weighted_degree_named(&weighted_names()).unwrap_or(-1);
    let restriction_constant = restriction_constant(&f)?;
    Ok(Tritangent { pullback_degree, f, f_degree, restriction_constant, from_cache })
}

fn weighted_names() -> Vec<(&'static str, i64)> {
    INVARIANTS.iter().copied().zip(INVARIANT_DEGREES).collect()
}

/// The constant `c` with `f|_{I40=0} = c·I24³(I8I24 + 8I32)g`, if any.
pub fn restriction_constant(f: &MultiPoly<Q>) -> Result<Option<Q>, ModuliError> {
    let restricted = f.extend_vars(&INVARIANTS).specialize("I40", &Q::zero())?;
    let v = invariant_vars();
    let rhs = (v[2].pow(3) * kummer_polynomial() * g_polynomial()).specialize("I40", &Q::zero())?;
    let (Some((_, a)), Some((_, b))) = (restricted.terms().first(), rhs.terms().first()) else {
        return Ok(None);
    };
    let c = a.div_ref(b)?;
    Ok((restricted == rhs.scale(&c)).then_some(c))
}

/// Computed once per process; reused from `HESSK3_CACHE_DIR` when present.
pub fn tritangent_polynomial() -> Result<&'static Tritangent, ModuliError> {
    static CELL: OnceLock<Result<Tritangent, ModuliError>> = OnceLock::new();
    CELL.get_or_init(compute_tritangent).as_ref().map_err(Clone::clone)
}

/// A family of Sylvester surfaces whose coefficients are Laurent
/// polynomials in `t`, possibly with further parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Family<F: Field> {
    pub lambda: [MultiPoly<F>; 5],
}

/// Result of [`weighted_limit`]: the limit point, the exponent `e` and the
/// denominator `d` of the substitution `t = u^d`.
#[derive(Clone, Debug)]
pub struct Limit<F: Field> {
    pub point: WeightedPoint<MultiPoly<F>>,
    pub e: Q,
    pub d: u32,
}

/// Invariants of the family as Laurent polynomials in `t`.
pub fn family_invariants<F: Field>(fam: &Family<F>) -> [MultiPoly<F>; 5] {
    phi(&sigma(&fam.lambda)).map(|p| p.extend_vars(&["t"]))
}

/// Limit as `t → 0` in P(1,2,3,4,5)_I: with `e = max(−val(Iₙ)/wₙ)`, the
/// coordinates `t^{e·wₙ}·Iₙ(t)` have a finite nonzero limit.
pub fn weighted_limit<F: Field>(fam: &Family<F>) -> Result<Limit<F>, ModuliError> {
    if fam.lambda.iter().any(|l| l.is_zero()) {
        return Err(ModuliError::Degenerate("a coefficient vanishes identically".into()));
    }
    let inv = family_invariants(fam);
    let mut e: Option<Q> = None;
    for (n, p) in inv.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let cand = q(-(p.valuation("t")? as i64), WEIGHTS[n] as i64);
        if e.as_ref().is_none_or(|x| cand > *x) {
            e = Some(cand);
        }
    }
    let e = e.ok_or_else(|| ModuliError::Degenerate("all invariants vanish".into()))?;
    let d: u32 = e.denom().try_into().map_err(|_| ModuliError::Degenerate("huge exponent".into()))?;
    let coords: [MultiPoly<F>; 5] = std::array::from_fn(|n| {
        let k = -(&e * Q::from_i64(WEIGHTS[n] as i64));
        if inv[n].is_zero() || !k.is_integer() {
            return MultiPoly::zero();
        }
        let k: i32 = k.to_integer().try_into().expect("small exponent");
        inv[n].coefficient_of("t", k).expect("t present").trim_vars()
    });
    let point = WeightedPoint::new(coords, Flavor::I)?;
    Ok(Limit { point, e, d })
}

/// `{"lambda": [[[exponent, "coefficient"], …], …]}` with five Laurent
/// polynomials in `t` over Q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub lambda: Vec<Vec<(i32, String)>>,
}

impl FamilySpec {
    pub fn to_family(&self) -> Result<Family<Q>, ModuliError> {
        if self.lambda.len() != 5 {
            return Err(ModuliError::Parse(format!("expected 5 coefficients, got {}", self.lambda.len())));
        }
        let polys: Vec<MultiPoly<Q>> = self
            .lambda
            .iter()
            .map(|terms| {
                let t = terms
                    .iter()
                    .map(|(e, c)| Ok((vec![*e], parse_rational(c)?)))
                    .collect::<Result<Vec<_>, PolyError>>()?;
                MultiPoly::from_terms(&["t"], t)
            })
            .collect::<Result<_, _>>()?;
        Ok(Family { lambda: polys.try_into().expect("five") })
    }

    pub fn from_family(fam: &Family<Q>) -> Result<Self, ModuliError> {
        let mut lambda = Vec::with_capacity(5);
        for p in &fam.lambda {
            let p = p.extend_vars(&["t"]).trim_vars();
            if p.vars().iter().any(|v| v != "t") {
                return Err(ModuliError::Parse("only the variable t is allowed".into()));
            }
            let p = p.extend_vars(&["t"]);
            lambda.push(p.terms().iter().map(|(m, c)| (m.0[0], c.to_string())).collect());
        }
        Ok(FamilySpec { lambda })
    }
}

fn laurent<F: Field>(vars: &[&str], terms: Vec<(Vec<i32>, F)>) -> MultiPoly<F> {
    MultiPoly::from_terms(vars, terms).expect("matching exponent lengths")
}

/// The family degenerating to the surfaces with two coinciding Sylvester
/// forms, with the parameters `a0..a3` given as polynomials.
pub fn ns1_family<F: Field>(a: &[MultiPoly<F>; 4]) -> Family<F> {
    let t = MultiPoly::<F>::var("t");
    let tinv = laurent(&["t"], vec![(vec![-1], F::one())]);
    let inv_cube = |x: &MultiPoly<F>| -> MultiPoly<F> {
        match x.terms() {
            [(m, c)] => {
                let e: Vec<i32> = m.0.iter().map(|k| -3 * k).collect();
                let names: Vec<&str> = x.vars().iter().map(String::as_str).collect();
                let c3 = c.pow_i(-3).expect("nonzero parameter");
                laurent(&names, vec![(e, c3)])
            }
            _ => panic!("ns1 parameters must be monomials"),
        }
    };
    Family {
        lambda: [
            &a[0] + &tinv,
            inv_cube(&(&a[1] * &t)),
            inv_cube(&(&a[2] * &t)),
            inv_cube(&(&a[3] * &t)),
            tinv.clone(),
        ],
    }
}

/// Symbolic parameters `a0..a3` for [`ns1_family`].
pub fn ns1_symbolic() -> (Family<Q>, WeightedPoint<MultiPoly<Q>>) {
    let a = MultiPoly::<Q>::variables(&["a0", "a1", "a2", "a3"]);
    let fam = ns1_family(&[a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone()]);
    let cubes: [MultiPoly<Q>; 3] = std::array::from_fn(|i| a[i + 1].pow(3));
    let rho = elementary3(&cubes);
    let expected = [
        a[0].pow(2) - rho[0].scale(&q(4, 1)),
        rho[1].clone(),
        rho[2].scale(&q(2, 1)),
        &rho[0] * &rho[2],
        MultiPoly::zero(),
    ];
    (fam, WeightedPoint { coords: expected, flavor: Flavor::I })
}

fn elementary3<T: Ring>(x: &[T; 3]) -> [T; 3] {
    [
        x[0].add_ref(&x[1]).add_ref(&x[2]),
        x[0].mul_ref(&x[1]).add_ref(&x[0].mul_ref(&x[2])).add_ref(&x[1].mul_ref(&x[2])),
        x[0].mul_ref(&x[1]).mul_ref(&x[2]),
    ]
}

fn elementary4<T: Ring>(x: &[T; 4]) -> [T; 4] {
    let mut e = vec![T::one(), T::zero(), T::zero(), T::zero(), T::zero()];
    for l in x {
        for k in (1..=4).rev() {
            let t = e[k - 1].mul_ref(l);
            e[k] = e[k].add_ref(&t);
        }
    }
    std::array::from_fn(|i| e[i + 1].clone())
}

/// The family degenerating to surfaces with three coinciding forms,
/// symbolic in `lam`, `mu`, with the printed limit.
pub fn ns2_symbolic() -> (Family<Q>, WeightedPoint<MultiPoly<Q>>) {
    let names = ["t", "lam", "mu"];
    let v = MultiPoly::<Q>::variables(&names);
    let (lam, mu) = (&v[1], &v[2]);
    let t_pow = |k: i32| laurent::<Q>(&names, vec![(vec![k, 0, 0], Q::one())]);
    let fam = Family {
        lambda: [
            t_pow(-2),
            laurent(&names, vec![(vec![-6, 0, -3], Q::one())]),
            t_pow(-6),
            lam.scale(&q(1, 4)) + t_pow(-2).scale(&q(1, 4)),
            t_pow(-2),
        ],
    };
    let one = MultiPoly::<Q>::one();
    let mu3 = mu.pow(3);
    let expected = [lam.scale(&q(-8, 1)), &one + &mu3, MultiPoly::zero(), mu3, MultiPoly::zero()];
    (fam, WeightedPoint { coords: expected, flavor: Flavor::I })
}

/// The family degenerating to a cyclic surface with coefficients `λ₀..λ₄`
/// given as polynomials.
pub fn cyclic_family<F: Field>(l: &[MultiPoly<F>; 5]) -> Family<F> {
    let t3 = laurent(&["t"], vec![(vec![-3], F::one())]);
    Family { lambda: [l[0].clone(), l[1].clone(), l[2].clone(), l[3].clone(), &l[4] * &t3] }
}

pub fn cyclic_symbolic() -> (Family<Q>, WeightedPoint<MultiPoly<Q>>) {
    let v = MultiPoly::<Q>::variables(&LAMBDAS);
    let l: [MultiPoly<Q>; 5] = std::array::from_fn(|i| v[i].clone());
    let tau = elementary4(&[v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]);
    let expected = [
        tau[2].pow(2) - (&tau[1] * &tau[3]).scale(&q(4, 1)),
        tau[3].pow(3),
        MultiPoly::zero(),
        MultiPoly::zero(),
        MultiPoly::zero(),
    ];
    (cyclic_family(&l), WeightedPoint { coords: expected, flavor: Flavor::I })
}

/// Converts a limit with constant coordinates to a point over the field.
pub fn constant_point<F: Field>(p: &WeightedPoint<MultiPoly<F>>) -> Option<WeightedPoint<F>> {
    let coords: Vec<F> = p.coords.iter().map(MultiPoly::constant_value).collect::<Option<_>>()?;
    Some(WeightedPoint { coords: coords.try_into().ok()?, flavor: p.flavor })
}

/// Lifts a point over the field to constant polynomials.
pub fn polynomial_point<F: Field>(p: &WeightedPoint<F>) -> WeightedPoint<MultiPoly<F>> {
    WeightedPoint { coords: p.coords.clone().map(MultiPoly::constant), flavor: p.flavor }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> WeightedPoint<Q> {
        WeightedPoint::parse(s, Flavor::I).unwrap()
    }

    fn lam(s: &str) -> [Q; 5] {
        let v: Vec<Q> = s.split(',').map(|x| parse_rational(x).unwrap()).collect();
        v.try_into().unwrap()
    }

    #[test]
    fn invariant_points() {
        let p = invariants_point(&lam("1,1,1,1,1")).unwrap();
        assert_eq!(p.coords, ip("(-15:5:5:10:1)").coords);
        let p = invariants_point(&lam("1,1,1,1,1/4")).unwrap();
        assert_eq!(p.coords, ip("(-3/2 : 17/256 : 1/128 : 7/4096 : 1/65536)").coords);
        let p = invariants_point(&lam("0,1,2,3,4")).unwrap();
        assert_eq!(p.coords[1..], [Q::zero(), Q::zero(), Q::zero(), Q::zero()]);
        assert!(invariants_point(&lam("0,0,0,1,1")).is_err());
    }

    #[test]
    fn psi_examples() {
        let p = psi(&ip("(-3:1:1:1:1)")).unwrap();
        assert!(wps_equal(&p, &WeightedPoint::parse("(1:1:1:1:1)", Flavor::Sigma).unwrap()).unwrap());
        assert_eq!(psi(&ip("(1:0:0:0:0)")), Err(ModuliError::BasePoint));
        assert_eq!(psi(&ip("(5:0:0:0:0)")), Err(ModuliError::BasePoint));
    }

    #[test]
    fn weighted_equality() {
        assert!(wps_equal(&ip("(-8:1:0:0:0)"), &ip("(8:1:0:0:0)")).unwrap());
        assert!(!wps_equal(&ip("(1:1:0:0:0)"), &ip("(1:2:0:0:0)")).unwrap());
        let p = ip("(1:2:3:4:5)");
        assert!(wps_equal(&p, &p.rescale(&Q::from_i64(3))).unwrap());
        assert!(!wps_equal(&ip("(0:1:0:1:0)"), &ip("(0:1:0:-1:0)")).unwrap());
        assert!(wps_equal(&ip("(0:1:0:1:0)"), &ip("(0:-1:0:1:0)")).unwrap());
        assert!(!wps_equal(&ip("(1:0:0:0:0)"), &ip("(1:0:0:0:1)")).unwrap());
        assert!(wps_equal(&ip("(0:0:1:0:0)"), &ip("(0:0:-2:0:0)")).unwrap());
    }

    #[test]
    fn singular_locus_examples() {
        assert!(wps_is_singular(&ip("(0:0:1:0:0)")));
        assert!(wps_is_singular(&ip("(0:1:0:1:0)")));
        assert!(wps_is_singular(&ip("(0:0:0:0:1)")));
        assert!(!wps_is_singular(&ip("(1:0:0:0:0)")));
        assert!(!wps_is_singular(&ip("(0:1:1:0:0)")));
    }

    #[test]
    fn boundary_values() {
        let b = boundary_polynomial();
        let cl = invariants_point(&lam("1,1,1,1,1")).unwrap();
        assert_eq!(eval_i(&b, &cl.coords).unwrap(), q(9025 - 10240, 1));
        let cay = invariants_point(&lam("1,1,1,1,1/4")).unwrap();
        assert_eq!(eval_i(&b, &cay.coords).unwrap(), Q::zero());
        assert!(eval_i(&b, &ip("(8:1:0:0:0)").coords).unwrap().is_zero());
    }

    #[test]
    fn quintic_discriminant_at_sample() {
        let d = quintic_discriminant_sigma();
        assert_eq!(d.weighted_degree_named(&[("s1", 1), ("s2", 2), ("s3", 3), ("s4", 4), ("s5", 5)]), Some(20));
        let s = sigma(&lam("0,1,2,3,4"));
        let named: Vec<(&str, Q)> = SIGMAS.iter().copied().zip(s.iter().cloned()).collect();
        assert_eq!(s, lam("10,35,50,24,0"));
        assert_eq!(d.evaluate_named(&named).unwrap(), q(82944, 1));
    }

    #[test]
    fn numeric_cyclic_limit() {
        let c = |x: i64| MultiPoly::<Q>::from_i64(x);
        let fam = cyclic_family(&[c(1), c(1), c(1), c(1), c(1)]);
        let lim = weighted_limit(&fam).unwrap();
        let p = constant_point(&lim.point).unwrap();
        assert!(wps_equal(&p, &ip("(8:1:0:0:0)")).unwrap());
        assert_eq!(lim.d, 1);
        let spec = FamilySpec::from_family(&fam).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        let back: FamilySpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_family().unwrap(), fam);
    }
}
