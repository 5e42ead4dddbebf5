use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lattices::grams;
use super::{Check, TaskResult};
use crate::catalog::{
    catalog as entries, eisenstein_automorphism, eisenstein_nodes, eisenstein_point, eisenstein_surface,
    eta_automorphism, eta_lambda, eta_node, s_mu, s_mu_automorphism, CatalogEntry, Eps, Eta, Gauss, Model, Omega,
};
use crate::cubic::{
    disc32, disc32_symbolic, eckardt_data, hessian_form, hessian_sylvester_closed, hessian_sylvester_closed_symbolic,
    is_automorphism, projective_order, singular_point_of, sylvester_cubic_symbolic, sylvester_to_cubic, CoordMatrix,
    CubicForm, SylvesterSurface, LAMBDAS,
};
use crate::curves::{build_configuration, ConfigTag};
use crate::k3::{rank2_transcendental_enumerate, transcendental_branches};
use crate::lattice::make_lattice;
use crate::moduli::{
    boundary_matches_disc32, boundary_polynomial, constant_point, cyclic_family, cyclic_symbolic, divisor_membership,
    invariants_point, ns1_family, ns1_symbolic, ns2_symbolic, phi_point, psi, psi_pullback,
    quintic_discriminant_sigma, sigma, tritangent_polynomial, weighted_limit, wps_equal, wps_is_singular,
    DivisorFlags, Flavor, ModuliError, WeightedPoint, INVARIANTS, SIGMAS,
};
use crate::poly::{parse_rational, Field, MultiPoly, Ring, Q};

const SEED: u64 = 0x4853_4b33;

fn ipoint(s: &str) -> Result<WeightedPoint<Q>, ModuliError> {
    WeightedPoint::parse(s, Flavor::I)
}

fn lambda(s: &str) -> Result<[Q; 5], Box<dyn std::error::Error + Send + Sync>> {
    let v: Vec<Q> = s.split(',').map(parse_rational).collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| "expected five coefficients".into())
}

fn embed<F: Field>(p: &WeightedPoint<Q>) -> WeightedPoint<F> {
    WeightedPoint { coords: p.coords.clone().map(|c| F::from_rational(&c)), flavor: p.flavor }
}

fn eval_i<F: Field>(p: &MultiPoly<Q>, point: &[F; 5]) -> Result<F, ModuliError> {
    let p = p.extend_vars(&INVARIANTS).map_coefficients(|c| F::from_rational(c));
    let named: Vec<(&str, F)> = INVARIANTS.iter().copied().zip(point.iter().cloned()).collect();
    Ok(p.evaluate_named(&named)?)
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=6).into())
}

fn distinct_lambda(rng: &mut ChaCha8Rng) -> [Q; 5] {
    loop {
        let l: [Q; 5] = std::array::from_fn(|_| random_q(rng));
        if (0..5).all(|i| (i + 1..5).all(|j| l[i] != l[j])) {
            return l;
        }
    }
}

pub(crate) fn hessian() -> TaskResult {
    let f = sylvester_cubic_symbolic();
    let h = hessian_form(&f)?;
    let closed = hessian_sylvester_closed_symbolic();
    let mut out = vec![Check::holds(
        "det of the symbolic Hessian matrix equals 1296 times the closed formula in Q[l0..l4, x0..x3]",
        h == closed.scale(&Q::from_i64(1296)),
    )];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for _ in 0..5 {
        let s = SylvesterSurface::new(distinct_lambda(&mut rng))?;
        let q = hessian_sylvester_closed(&s);
        for k in 0..5 {
            for l in k + 1..5 {
                for m in l + 1..5 {
                    let rest: Vec<usize> = (0..5).filter(|i| ![k, l, m].contains(i)).collect();
                    let mut p = vec![Q::zero(); 5];
                    p[rest[0]] = Q::from_i64(1);
                    p[rest[1]] = Q::from_i64(-1);
                    if !singular_point_of(&q, &p)? {
                        bad.push(format!("P{k}{l}{m} on ({s})"));
                    }
                }
            }
        }
    }
    out.push(Check::eq("vertices that are not singular on the Hessian of 5 random surfaces", "[]", format!("{bad:?}")));
    Ok(out)
}

pub(crate) fn disc32_identity() -> TaskResult {
    let d = disc32_symbolic();
    let degrees: BTreeSet<i64> = d.terms().iter().map(|(m, _)| m.degree()).collect();
    let mut symmetric = true;
    let l = MultiPoly::<Q>::variables(&LAMBDAS);
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4)] {
        let swapped = d.substitute(&[(LAMBDAS[a], &l[b]), (LAMBDAS[b], &l[a])])?;
        symmetric &= swapped == *d;
    }
    let ones = SylvesterSurface::parse("1,1,1,1,1")?;
    let cayley = SylvesterSurface::parse("1,1,1,1,1/4")?;
    let clebsch_point = ipoint("(-15:5:5:10:1)")?;
    Ok(vec![
        Check::eq("degrees of the monomials of disc32", "{32}", format!("{degrees:?}")),
        Check::holds("disc32 is symmetric in l0..l4", symmetric),
        Check::holds("boundary polynomial composed with sigma equals disc32 with constant 1", boundary_matches_disc32()?),
        Check::eq("disc32 at (1,1,1,1,1)", -1215, disc32(&ones)),
        Check::eq("disc32 at (1,1,1,1,1/4)", 0, disc32(&cayley)),
        Check::eq("boundary polynomial at (-15:5:5:10:1)", -1215, eval_i(&boundary_polynomial(), &clebsch_point.coords)?),
    ])
}

pub(crate) fn moduli_maps() -> TaskResult {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut samples, mut ok) = (0, 0);
    while samples < 100 {
        let s: [Q; 5] = std::array::from_fn(|_| random_q(&mut rng));
        if s[3].is_zero() || s[4].is_zero() {
            continue;
        }
        samples += 1;
        let p = WeightedPoint::new(s.clone(), Flavor::Sigma)?;
        let back = psi(&phi_point(&p)?)?;
        if wps_equal(&back, &p)? && back == p.rescale(&s[4].pow_u(3)) {
            ok += 1;
        }
    }
    let base = psi(&ipoint("(1:0:0:0:0)")?);
    let base2 = psi(&ipoint("(-7/3:0:0:0:0)")?);
    let p = psi(&ipoint("(-3:1:1:1:1)")?)?;
    Ok(vec![
        Check::eq("random sigma with s4*s5 != 0 where psi(phi(s)) = s as weighted points", 100, ok),
        Check::eq("psi at (1:0:0:0:0)", "error: base point", base.err().map_or("accepted".into(), |_| "error: base point".to_string())),
        Check::eq("psi at (-7/3:0:0:0:0)", "error: base point", base2.err().map_or("accepted".into(), |_| "error: base point".to_string())),
        Check::holds("psi(-3:1:1:1:1) = (1:1:1:1:1)", wps_equal(&p, &WeightedPoint::parse("(1:1:1:1:1)", Flavor::Sigma)?)?),
    ])
}

pub(crate) fn limits() -> TaskResult {
    let mut out = Vec::new();
    for (name, (fam, expected)) in [("ns1", ns1_symbolic()), ("ns2", ns2_symbolic()), ("cyclic", cyclic_symbolic())] {
        let lim = weighted_limit(&fam)?;
        out.push(Check::holds(format!("{name} limit equals the printed formula {expected}"), wps_equal(&lim.point, &expected)?));
    }
    let one = MultiPoly::<Q>::from_i64(1);
    let lim = weighted_limit(&cyclic_family(&std::array::from_fn(|_| one.clone())))?;
    let p = constant_point(&lim.point).ok_or("limit is not constant")?;
    out.push(Check::holds(format!("t^3 = xyz limit {p} equals (8:1:0:0:0)"), wps_equal(&p, &ipoint("(8:1:0:0:0)")?)?));
    Ok(out)
}

fn quintic_disc_at(l: &[Q; 5]) -> Result<Q, ModuliError> {
    let s = sigma(l);
    let named: Vec<(&str, Q)> = SIGMAS.iter().copied().zip(s.iter().cloned()).collect();
    Ok(quintic_discriminant_sigma().extend_vars(&SIGMAS).evaluate_named(&named)?)
}

pub(crate) fn tritangent() -> TaskResult {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut ok = 0;
    for _ in 0..200 {
        let l: [Q; 5] = std::array::from_fn(|_| Q::from_i64(rng.gen_range(-12i64..=12)));
        let mut prod = Q::from_i64(1);
        for i in 0..5 {
            for j in i + 1..5 {
                let d = &l[i] - &l[j];
                prod = prod * &d * &d;
            }
        }
        if quintic_disc_at(&l)? == prod {
            ok += 1;
        }
    }
    let tri = tritangent_polynomial()?;
    let pulled = psi_pullback(quintic_discriminant_sigma())?;
    let i40_cubed = MultiPoly::<Q>::var("I40").pow(3);
    let quotient = pulled.exact_div(&i40_cubed);
    let proportional = match &quotient {
        Ok(q) => match (q.terms().first(), tri.f.terms().first()) {
            (Some((_, a)), Some((_, b))) => *q == tri.f.scale(&a.div_ref(b)?),
            _ => false,
        },
        Err(_) => false,
    };
    let at = |s: &str| -> Result<Q, Box<dyn std::error::Error + Send + Sync>> {
        Ok(eval_i(&tri.f, &invariants_point(&lambda(s)?)?.coords)?)
    };
    let constant = tri.restriction_constant.clone();
    Ok(vec![
        Check::eq("random integer samples where disc of the quintic in sigma equals prod (li - lj)^2", 200, ok),
        Check::eq("weighted degree of the psi pull-back", 320, tri.pullback_degree),
        Check::holds("psi pull-back is divisible by I40^3", quotient.is_ok()),
        Check::holds("quotient is a scalar multiple of f", proportional),
        Check::eq("weighted degree of f", 200, tri.f_degree),
        Check::holds(
            "f(I8, I16, I24, I32, 0) = c * I24^3 (I8 I24 + 8 I32) g with one nonzero constant",
            constant.as_ref().is_some_and(|c| !c.is_zero()),
        ),
        Check::eq("that constant for f of content 1", "-1", constant.map_or("none".into(), |c| c.to_string())),
        Check::eq("f at the Clebsch point", 0, at("1,1,1,1,1")?),
        Check::eq("f at the point of (1,1,2,3,4)", 0, at("1,1,2,3,4")?),
        Check::holds("f at the point of (1,2,3,4,5) is nonzero", !at("1,2,3,4,5")?.is_zero()),
    ])
}

fn automorphism_check<F: Field>(
    name: &str,
    f: &CubicForm<F>,
    m: &CoordMatrix<F>,
    order: u32,
    scalar: F,
    out: &mut Vec<Check>,
) -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    let c = is_automorphism(f, m)?;
    out.push(Check::eq(format!("{name}: scalar of the automorphism"), scalar, c.map_or("not an automorphism".into(), |c| c.to_string())));
    out.push(Check::eq(
        format!("{name}: projective order"),
        order,
        projective_order(m, 24).map_or("none up to 24".into(), |k| k.to_string()),
    ));
    Ok(())
}

fn special_automorphisms(out: &mut Vec<Check>) -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    let w = Omega::zeta();
    automorphism_check("eisenstein", &eisenstein_surface(), &eisenstein_automorphism(), 3, w.pow_u(2), out)?;
    let eta = SylvesterSurface::new(eta_lambda())?;
    automorphism_check("eta", &sylvester_to_cubic(&eta), &eta_automorphism(), 5, Eta::zeta().pow_u(4), out)?;
    for mu in ["0", "-1"] {
        let f = s_mu(&parse_rational(mu)?);
        automorphism_check(&format!("s_mu({mu})"), &f, &s_mu_automorphism(), 4, Gauss::one(), out)?;
    }
    Ok(())
}

pub(crate) fn singular_locus() -> TaskResult {
    let mut mismatches = Vec::new();
    let mut singular_patterns = Vec::new();
    for mask in 1u32..32 {
        let support: Vec<usize> = (0..5).filter(|i| mask & (1 << i) != 0).collect();
        let expected = support == [2] || support == [4] || support.iter().all(|i| [1, 3].contains(i));
        for variant in [1i64, 2] {
            let coords: [Q; 5] = std::array::from_fn(|i| {
                if mask & (1 << i) == 0 {
                    Q::zero()
                } else {
                    Q::from_i64(if variant == 1 { 1 } else { -(i as i64) - 2 })
                }
            });
            let p = WeightedPoint::new(coords, Flavor::I)?;
            if wps_is_singular(&p) != expected {
                mismatches.push(p.to_string());
            }
            if variant == 1 && wps_is_singular(&p) {
                singular_patterns.push(p.to_string());
            }
        }
    }
    let mut out = vec![
        Check::eq("zero patterns disagreeing with {(0:0:1:0:0)} + {(0:0:0:0:1)} + {(0:a:0:b:0)}", "[]", format!("{mismatches:?}")),
        Check::eq(
            "singular zero patterns",
            "[\"(0 : 1 : 0 : 0 : 0)\", \"(0 : 0 : 1 : 0 : 0)\", \"(0 : 0 : 0 : 1 : 0)\", \"(0 : 1 : 0 : 1 : 0)\", \"(0 : 0 : 0 : 0 : 1)\"]",
            format!("{singular_patterns:?}"),
        ),
    ];
    special_automorphisms(&mut out)?;
    let eis = constant_point(&eisenstein_point()?).ok_or("limit is not constant")?;
    out.push(Check::holds(
        format!("eisenstein limit {eis} is (0:0:1:0:0) and singular"),
        wps_equal(&eis, &embed::<Eps>(&ipoint("(0:0:1:0:0)")?))? && wps_is_singular(&eis),
    ));
    let eta = invariants_point(&eta_lambda())?;
    out.push(Check::holds(
        format!("eta point {eta} is (0:0:0:0:1) and singular"),
        wps_equal(&eta, &embed::<Eta>(&ipoint("(0:0:0:0:1)")?))? && wps_is_singular(&eta),
    ));
    Ok(out)
}

fn flag_names(f: &DivisorFlags) -> BTreeSet<&'static str> {
    [
        ("boundary", f.boundary),
        ("kummer", f.kummer),
        ("non_sylvester", f.non_sylvester),
        ("ns2_locus", f.ns2_locus),
        ("cyclic_locus", f.cyclic_locus),
        ("fermat_point", f.fermat_point),
        ("g_locus", f.g_locus),
        ("tritangent", f.tritangent),
    ]
    .into_iter()
    .filter_map(|(n, b)| b.then_some(n))
    .collect()
}

fn rational_nodes(e: &CatalogEntry) -> Result<Vec<[Q; 5]>, Box<dyn std::error::Error + Send + Sync>> {
    e.nodes.iter().map(|n| lambda(n)).collect()
}

fn const_poly(x: i64) -> MultiPoly<Q> {
    MultiPoly::from_i64(x)
}

/// The I-point of an entry recomputed from its model, when the model
/// determines it over Q.
fn computed_point(e: &CatalogEntry) -> Result<Option<WeightedPoint<Q>>, Box<dyn std::error::Error + Send + Sync>> {
    let fam = match e.name {
        "ns1" => ns1_family(&[1, 1, 2, 3].map(const_poly)),
        "ns2" => {
            let (fam, _) = ns2_symbolic();
            let lam = fam.lambda.map(|p| {
                p.specialize("lam", &Q::from_i64(1)).and_then(|p| p.specialize("mu", &Q::from_i64(2))).map(|p| p.trim_vars())
            });
            crate::moduli::Family { lambda: [lam[0].clone()?, lam[1].clone()?, lam[2].clone()?, lam[3].clone()?, lam[4].clone()?] }
        }
        "cyclic" => cyclic_family(&[1, 2, 3, 5, 1].map(const_poly)),
        "t3=xyz" => cyclic_family(&[1, 1, 1, 1, 1].map(const_poly)),
        "fermat" => {
            let (_, formula) = cyclic_symbolic();
            let vals: Vec<(&str, Q)> = LAMBDAS.iter().copied().zip(lambda("1,1,1,0,1")?).collect();
            let coords = formula.coords.iter().map(|c| c.evaluate_named(&vals)).collect::<Result<Vec<_>, _>>()?;
            return Ok(Some(WeightedPoint::new(coords.try_into().map_err(|_| "five")?, Flavor::I)?));
        }
        _ => match &e.model {
            Model::Sylvester(s) if !s.contains('h') => return Ok(Some(invariants_point(&lambda(s)?)?)),
            _ => return Ok(None),
        },
    };
    Ok(constant_point(&weighted_limit(&fam)?.point))
}

fn transcendental_matches(e: &CatalogEntry) -> Result<Option<bool>, Box<dyn std::error::Error + Send + Sync>> {
    let (Some(cfg), Some(t)) = (e.configuration, e.transcendental) else {
        return Ok(None);
    };
    let span = build_configuration(&cfg.parse::<ConfigTag>()?)?.span()?;
    if e.name == "s1n4" {
        let found: Vec<String> = transcendental_branches(&span.lattice, 3)?
            .iter()
            .flat_map(|b| b.candidates.iter().map(|c| c.gram().to_string()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let want: BTreeSet<String> =
            ["<6>+<12>", "<2>+<4>"].iter().map(|s| make_lattice(s).map(|l| l.gram().to_string())).collect::<Result<_, _>>()?;
        return Ok(Some(found.into_iter().collect::<BTreeSet<_>>() == want));
    }
    let want = if t.starts_with('[') {
        format!("[{t}]").replace(',', ", ")
    } else {
        format!("[{}]", make_lattice(t)?.gram())
    };
    Ok(Some(grams(&rank2_transcendental_enumerate(&span.lattice)?) == want))
}

pub(crate) fn catalog() -> TaskResult {
    let mut out = Vec::new();
    for e in entries() {
        let stated = ipoint(&e.i_point)?;
        let n = e.name;
        if let Some(p) = computed_point(&e)? {
            out.push(Check::holds(format!("{n}: computed point {p} equals {}", e.i_point), wps_equal(&p, &stated)?));
        }
        let flags: Vec<&str> = flag_names(&divisor_membership(&stated)?).into_iter().collect();
        let mut want = e.flags.clone();
        want.sort_unstable();
        out.push(Check::eq(format!("{n}: divisor flags"), format!("{want:?}"), format!("{flags:?}")));
        if let Model::Sylvester(s) = &e.model {
            if !s.contains('h') {
                let surface = SylvesterSurface::parse(s)?;
                if let Some(k) = e.eckardt_points {
                    out.push(Check::eq(format!("{n}: Eckardt points"), k, eckardt_data(&surface)?.count));
                }
                let f = sylvester_to_cubic(&surface);
                for node in rational_nodes(&e)? {
                    out.push(Check::holds(format!("{n}: node {node:?} is singular"), singular_point_of(f.poly(), &node)?));
                }
            }
        }
        if let Some(ok) = transcendental_matches(&e)? {
            out.push(Check::holds(format!("{n}: transcendental lattice {}", e.transcendental.unwrap_or("")), ok));
        }
    }
    let eis = eisenstein_surface();
    for (i, node) in eisenstein_nodes().iter().enumerate() {
        out.push(Check::holds(format!("eisenstein: node {i} is singular"), singular_point_of(eis.poly(), node)?));
    }
    let eta = sylvester_to_cubic(&SylvesterSurface::new(eta_lambda())?);
    out.push(Check::holds("eta: (1:h^2:h^4:h:h^3) is singular", singular_point_of(eta.poly(), &eta_node())?));
    special_automorphisms(&mut out)?;
    Ok(out)
}
