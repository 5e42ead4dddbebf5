use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Field, PolyError, Ring};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial over a field `F`. Exponents may be negative, so the same
/// type serves for Laurent polynomials.
#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    vars: Arc<Vec<String>>,
    // descending grlex, no zero coefficients
    terms: Vec<(Monomial, F)>,
}

pub type LaurentPoly<F> = MultiPoly<F>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

fn var_list(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

impl<F: Field> MultiPoly<F> {
    fn from_map(vars: Arc<Vec<String>>, map: HashMap<Monomial, F>) -> Self {
        let mut terms: Vec<(Monomial, F)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { vars, terms }
    }

    fn from_sorted(vars: Arc<Vec<String>>, terms: Vec<(Monomial, F)>) -> Self {
        MultiPoly { vars, terms }
    }

    /// The zero polynomial in the given variables.
    pub fn zero_in(vars: &[&str]) -> Self {
        MultiPoly { vars: var_list(vars), terms: Vec::new() }
    }

    pub fn constant_in(vars: &[&str], c: F) -> Self {
        Self::zero_in(vars).with_constant(c)
    }

    fn with_constant(mut self, c: F) -> Self {
        if !c.is_zero() {
            self.terms = vec![(Monomial::one(self.vars.len()), c)];
        }
        self
    }

    /// A polynomial without variables.
    pub fn constant(c: F) -> Self {
        Self::constant_in(&[], c)
    }

    /// Each of `names` as a polynomial, all sharing the variable list.
    pub fn variables(names: &[&str]) -> Vec<Self> {
        let vars = var_list(names);
        (0..names.len())
            .map(|i| {
                let mut e = vec![0; names.len()];
                e[i] = 1;
                MultiPoly { vars: vars.clone(), terms: vec![(Monomial(e), F::one())] }
            })
            .collect()
    }

    /// One variable on its own.
    pub fn var(name: &str) -> Self {
        Self::variables(&[name]).remove(0)
    }

    /// Builds from exponent/coefficient pairs; repeated monomials are summed.
    pub fn from_terms(vars: &[&str], terms: Vec<(Vec<i32>, F)>) -> Result<Self, PolyError> {
        let mut map: HashMap<Monomial, F> = HashMap::new();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(PolyError::Parse(format!("exponent vector {e:?} for {} variables", vars.len())));
            }
            map.entry(Monomial(e)).or_insert_with(F::zero).add_assign_ref(&c);
        }
        Ok(Self::from_map(var_list(vars), map))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// The value when the polynomial has no non-constant terms.
    pub fn constant_value(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.0.iter().all(|&e| e == 0) => Some(c.clone()),
            _ => None,
        }
    }

    /// Rewrites in a larger variable list containing all current variables.
    fn embed(&self, vars: &Arc<Vec<String>>) -> Self {
        if Arc::ptr_eq(&self.vars, vars) || self.vars == *vars {
            return MultiPoly { vars: vars.clone(), terms: self.terms.clone() };
        }
        let pos: Vec<usize> = self.vars.iter().map(|v| vars.iter().position(|w| w == v).expect("superset")).collect();
        let mut map = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (k, &p) in pos.iter().enumerate() {
                e[p] = m.0[k];
            }
            map.insert(Monomial(e), c.clone());
        }
        Self::from_map(vars.clone(), map)
    }

    fn unify(&self, o: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars {
            return (self.clone(), MultiPoly { vars: self.vars.clone(), terms: o.terms.clone() });
        }
        let mut all = (*self.vars).clone();
        for v in o.vars.iter() {
            if !all.contains(v) {
                all.push(v.clone());
            }
        }
        let all = Arc::new(all);
        (self.embed(&all), o.embed(&all))
    }

    /// Adds variables (at the end) without changing the polynomial.
    pub fn extend_vars(&self, names: &[&str]) -> Self {
        let mut all = (*self.vars).clone();
        for v in names {
            if !all.iter().any(|w| w == v) {
                all.push(v.to_string());
            }
        }
        self.embed(&Arc::new(all))
    }

    fn merge(a: &Self, b: &Self, sign: bool) -> Self {
        let (a, b) = a.unify(b);
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let ord = match (a.terms.get(i), b.terms.get(j)) {
                (Some(x), Some(y)) => y.0.cmp(&x.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &b.terms[j];
                    out.push((m.clone(), if sign { c.clone() } else { c.neg_ref() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &b.terms[j].1;
                    let s = if sign { a.terms[i].1.add_ref(c) } else { a.terms[i].1.sub_ref(c) };
                    if !s.is_zero() {
                        out.push((a.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted(a.vars, out)
    }

    fn product(a: &Self, b: &Self) -> Self {
        let (a, b) = a.unify(b);
        if a.is_zero() || b.is_zero() {
            return Self::from_sorted(a.vars, Vec::new());
        }
        let mut map: HashMap<Monomial, F> = HashMap::with_capacity(a.terms.len() * b.terms.len() / 2 + 1);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let p = ca.mul_ref(cb);
                match map.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&p),
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        Self::from_map(a.vars, map)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_sorted(self.vars.clone(), vec![(Monomial::one(self.vars.len()), F::one())]);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::product(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = Self::product(&base, &base);
            }
        }
        acc
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::from_sorted(self.vars.clone(), Vec::new());
        }
        Self::from_sorted(self.vars.clone(), self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(k))).collect())
    }

    /// Multiplies by a single monomial with the given exponents.
    pub fn shift(&self, exps: &[i32]) -> Self {
        let m = Monomial(exps.to_vec());
        Self::from_sorted(self.vars.clone(), self.terms.iter().map(|(a, c)| (a.mul(&m), c.clone())).collect())
    }

    pub fn derivative(&self, var: &str) -> Result<Self, PolyError> {
        let k = self.var_index(var)?;
        let mut map = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e != 0 {
                let mut n = m.clone();
                n.0[k] -= 1;
                map.insert(n, c.mul_ref(&F::from_i64(e as i64)));
            }
        }
        Ok(Self::from_map(self.vars.clone(), map))
    }

    /// Replaces variables by polynomials. Substituted variables disappear
    /// unless they occur in a replacement. A variable with a negative
    /// exponent can only be replaced by a single term.
    pub fn substitute(&self, assignments: &[(&str, &Self)]) -> Result<Self, PolyError> {
        let mut idx = Vec::with_capacity(assignments.len());
        for (name, _) in assignments {
            idx.push(self.var_index(name)?);
        }
        let keep: Vec<&str> =
            self.vars.iter().enumerate().filter(|(i, _)| !idx.contains(i)).map(|(_, v)| v.as_str()).collect();
        let mut target = Self::zero_in(&keep);
        for (_, p) in assignments {
            target = target.unify(&p.trim_vars()).0;
        }
        let vars = target.vars.clone();
        let keep_pos: Vec<(usize, usize)> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !idx.contains(i))
            .map(|(i, v)| (i, vars.iter().position(|w| w == v).expect("kept")))
            .collect();
        let repl: Vec<Self> = assignments.iter().map(|(_, p)| p.trim_vars().embed(&vars)).collect();
        let mut cache: Vec<HashMap<i32, Self>> = vec![HashMap::new(); repl.len()];
        let mut power = |r: usize, e: i32| -> Result<Self, PolyError> {
            if let Some(p) = cache[r].get(&e) {
                return Ok(p.clone());
            }
            let p = if e >= 0 {
                repl[r].pow(e as u32)
            } else {
                match repl[r].terms.as_slice() {
                    [(m, c)] => {
                        let inv = c.inv().ok_or(PolyError::DivisionByZero)?;
                        let mono = Monomial(m.0.iter().map(|x| -x).collect());
                        Self::from_sorted(vars.clone(), vec![(mono, inv)]).pow((-e) as u32)
                    }
                    _ => return Err(PolyError::NotInvertible(repl[r].to_string())),
                }
            };
            cache[r].insert(e, p.clone());
            Ok(p)
        };
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for &(i, p) in &keep_pos {
                e[p] = m.0[i];
            }
            let mut t = Self::from_sorted(vars.clone(), vec![(Monomial(e), c.clone())]);
            for (r, &i) in idx.iter().enumerate() {
                if m.0[i] != 0 {
                    t = Self::product(&t, &power(r, m.0[i])?);
                }
            }
            for (mm, cc) in t.terms {
                acc.entry(mm).or_insert_with(F::zero).add_assign_ref(&cc);
            }
        }
        Ok(Self::from_map(vars, acc))
    }

    /// Sets one variable to a field value.
    pub fn specialize(&self, var: &str, value: &F) -> Result<Self, PolyError> {
        let k = self.var_index(var)?;
        let mut names: Vec<String> = (*self.vars).clone();
        names.remove(k);
        let vars = Arc::new(names);
        let mut map: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let x = e.remove(k);
            let v = c.mul_ref(&value.pow_i(x as i64)?);
            map.entry(Monomial(e)).or_insert_with(F::zero).add_assign_ref(&v);
        }
        Ok(Self::from_map(vars, map))
    }

    /// Evaluates at a point given in the order of [`Self::vars`].
    pub fn evaluate(&self, point: &[F]) -> Result<F, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::Parse(format!("{} values for {} variables", point.len(), self.vars.len())));
        }
        let mut powers: Vec<HashMap<i32, F>> = vec![HashMap::new(); point.len()];
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    let p = match powers[k].get(&e) {
                        Some(p) => p.clone(),
                        None => {
                            let p = point[k].pow_i(e as i64)?;
                            powers[k].insert(e, p.clone());
                            p
                        }
                    };
                    t = t.mul_ref(&p);
                }
            }
            acc.add_assign_ref(&t);
        }
        Ok(acc)
    }

    /// Evaluates with values given by name; every variable must be assigned.
    pub fn evaluate_named(&self, values: &[(&str, F)]) -> Result<F, PolyError> {
        let point: Vec<F> = self
            .vars
            .iter()
            .map(|v| {
                values.iter().find(|(n, _)| n == v).map(|(_, x)| x.clone()).ok_or_else(|| PolyError::UnknownVariable(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        self.evaluate(&point)
    }

    /// Exact quotient `self / q`; errors with the remainder if `q` does not
    /// divide `self`.
    pub fn exact_div(&self, q: &Self) -> Result<Self, PolyError> {
        let (p, q) = self.unify(q);
        let (lm, lc) = q.terms.first().ok_or(PolyError::DivisionByZero)?.clone();
        let lc_inv = lc.inv().ok_or(PolyError::DivisionByZero)?;
        if q.terms.len() == 1 {
            let mut out = Vec::with_capacity(p.terms.len());
            for (m, c) in &p.terms {
                let e: Vec<i32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
                if e.iter().any(|&x| x < 0) {
                    return Err(PolyError::NotExact(p.to_string()));
                }
                out.push((Monomial(e), c.mul_ref(&lc_inv)));
            }
            return Ok(Self::from_sorted(p.vars, out));
        }
        let mut rem: BTreeMap<Monomial, F> = p.terms.into_iter().collect();
        let mut quot: HashMap<Monomial, F> = HashMap::new();
        while let Some((m, c)) = rem.pop_last() {
            let e: Vec<i32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
            if e.iter().any(|&x| x < 0) {
                rem.insert(m, c);
                let r = Self::from_map(q.vars.clone(), rem.into_iter().collect());
                return Err(PolyError::NotExact(r.to_string()));
            }
            let e = Monomial(e);
            let k = c.mul_ref(&lc_inv);
            for (qm, qc) in q.terms.iter().skip(1) {
                let mm = qm.mul(&e);
                let d = k.mul_ref(qc);
                let slot = rem.entry(mm.clone()).or_insert_with(F::zero);
                *slot = slot.sub_ref(&d);
                if slot.is_zero() {
                    rem.remove(&mm);
                }
            }
            quot.insert(e, k);
        }
        Ok(Self::from_map(q.vars, quot))
    }

    /// Smallest exponent of `var` among the terms.
    pub fn valuation(&self, var: &str) -> Result<i32, PolyError> {
        let k = self.var_index(var)?;
        self.terms.iter().map(|(m, _)| m.0[k]).min().ok_or(PolyError::Zero)
    }

    /// Coefficient of `var^e`, as a polynomial in the other variables.
    pub fn coefficient_of(&self, var: &str, e: i32) -> Result<Self, PolyError> {
        let k = self.var_index(var)?;
        let mut names: Vec<String> = (*self.vars).clone();
        names.remove(k);
        let mut map = HashMap::new();
        for (m, c) in &self.terms {
            if m.0[k] == e {
                let mut x = m.0.clone();
                x.remove(k);
                map.insert(Monomial(x), c.clone());
            }
        }
        Ok(Self::from_map(Arc::new(names), map))
    }

    /// Coefficient of the lowest power of `var`.
    pub fn leading_at_zero(&self, var: &str) -> Result<Self, PolyError> {
        let v = self.valuation(var)?;
        self.coefficient_of(var, v)
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: &str) -> Result<Option<i32>, PolyError> {
        let k = self.var_index(var)?;
        Ok(self.terms.iter().map(|(m, _)| m.0[k]).max())
    }

    /// The common weighted degree of all terms, if there is one.
    /// Weights are given in variable order.
    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut it = self.terms.iter().map(|(m, _)| m.0.iter().zip(weights).map(|(&e, w)| e as i64 * w).sum::<i64>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Weighted degree with weights given by variable name; unnamed variables
    /// get weight 0.
    pub fn weighted_degree_named(&self, weights: &[(&str, i64)]) -> Option<i64> {
        let w: Vec<i64> =
            self.vars.iter().map(|v| weights.iter().find(|(n, _)| n == v).map_or(0, |(_, x)| *x)).collect();
        self.weighted_degree(&w)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.is_empty() || self.weighted_degree(&vec![1; self.vars.len()]).is_some()
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let map = self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect();
        MultiPoly::from_map(self.vars.clone(), map)
    }

    /// Drops variables that occur in no term.
    pub fn trim_vars(&self) -> Self {
        let used: Vec<usize> =
            (0..self.vars.len()).filter(|&k| self.terms.iter().any(|(m, _)| m.0[k] != 0)).collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars = Arc::new(used.iter().map(|&k| self.vars[k].clone()).collect::<Vec<_>>());
        let terms = self.terms.iter().map(|(m, c)| (Monomial(used.iter().map(|&k| m.0[k]).collect()), c.clone())).collect();
        Self::from_sorted(vars, terms)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: (*self.vars).clone(),
            terms: self.terms.iter().map(|(m, c)| TermJson { exponents: m.0.clone(), coefficient: c.to_repr() }).collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self, PolyError> {
        let names: Vec<&str> = j.vars.iter().map(String::as_str).collect();
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), F::from_repr(&t.coefficient)?)))
            .collect::<Result<Vec<_>, PolyError>>()?;
        Self::from_terms(&names, terms)
    }
}

impl MultiPoly<BigRational> {
    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        use num_integer::Integer;
        use num_traits::{Signed, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::from(1);
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut k = BigRational::new(den, num);
        if self.terms[0].1.is_negative() {
            k = -k;
        }
        self.scale(&k)
    }
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, o: &Self) -> bool {
        if self.vars == o.vars {
            return self.terms == o.terms;
        }
        let (a, b) = (self.trim_vars(), o.trim_vars());
        let (a, b) = a.unify(&b);
        a.terms == b.terms
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(self.vars.iter())
                .filter(|(e, _)| **e != 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let cs = c.to_string();
            let simple = c.to_rational().is_some();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, cs),
            };
            let coef = if simple { mag } else { format!("({mag})") };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{coef}")?;
            } else if coef == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{coef}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.vars)
    }
}

impl<F: Field> Ring for MultiPoly<F> {
    fn zero() -> Self {
        Self::zero_in(&[])
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        Self::merge(self, o, true)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Self::merge(self, o, false)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Self::product(self, o)
    }
    fn neg_ref(&self) -> Self {
        Self::from_sorted(self.vars.clone(), self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect())
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::constant(F::from_rational(r))
    }
    fn pow_u(&self, e: u32) -> Self {
        self.pow(e)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<F: Field> $tr<&MultiPoly<F>> for &MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, o: &MultiPoly<F>) -> MultiPoly<F> {
                self.$f(o)
            }
        }
        impl<F: Field> $tr<MultiPoly<F>> for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, o: MultiPoly<F>) -> MultiPoly<F> {
                self.$f(&o)
            }
        }
        impl<F: Field> $tr<&MultiPoly<F>> for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, o: &MultiPoly<F>) -> MultiPoly<F> {
                self.$f(o)
            }
        }
        impl<F: Field> $tr<MultiPoly<F>> for &MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, o: MultiPoly<F>) -> MultiPoly<F> {
                self.$f(&o)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl<F: Field> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.neg_ref()
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, Cyclotomic, Q};

    type P = MultiPoly<Q>;

    fn xyz() -> (P, P, P) {
        let v = P::variables(&["x", "y", "z"]);
        (v[0].clone(), v[1].clone(), v[2].clone())
    }

    fn c(n: i64) -> P {
        P::from_i64(n)
    }

    #[test]
    fn square_of_sum() {
        let (x, y, _) = xyz();
        let s = (&x + &y).pow(2);
        assert_eq!(s, &x * &x + c(2) * &x * &y + &y * &y);
        assert_eq!(s.to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(s.total_degree(), Some(2));
    }

    #[test]
    fn cube_difference_over_eisenstein() {
        type W = Cyclotomic<3>;
        let v = MultiPoly::<W>::variables(&["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let w = W::zeta();
        let f = (x - &y.scale(&w)) * (x - &y.scale(&w.pow_u(2))) * (x - y);
        assert_eq!(f, x.pow(3) - y.pow(3));
    }

    #[test]
    fn vieta_expansion() {
        let names = ["x", "l0", "l1", "l2", "l3", "l4"];
        let v = P::variables(&names);
        let mut p = P::one();
        for l in &v[1..] {
            p = p * (&v[0] - l);
        }
        assert_eq!(p.degree_in("x").unwrap(), Some(5));
        let lead = p.coefficient_of("x", 4).unwrap();
        let sigma1 = v[1..].iter().fold(P::zero(), |a, b| a + b);
        assert_eq!(lead, -sigma1);
        let c0 = p.coefficient_of("x", 0).unwrap();
        assert_eq!(c0, -v[1..].iter().fold(P::one(), |a, b| a * b));
    }

    #[test]
    fn derivative_and_substitution() {
        let (x, y, _) = xyz();
        assert_eq!(x.pow(3).derivative("x").unwrap(), x.pow(2).scale(&q(3, 1)));
        let s = x.pow(2).substitute(&[("x", &(&y + &c(1)))]).unwrap();
        assert_eq!(s, y.pow(2) + c(2) * &y + c(1));
        assert!(s.vars().iter().all(|v| v != "x"));
        assert!(x.derivative("w").is_err());
    }

    #[test]
    fn exact_division() {
        let (x, y, z) = xyz();
        let p = x.pow(2) - y.pow(2);
        assert_eq!(p.exact_div(&(&x - &y)).unwrap(), &x + &y);
        let f = (&x + &z).pow(3) * (&x * &y - &z + c(2));
        assert_eq!(f.exact_div(&(&x * &y - &z + c(2))).unwrap(), (&x + &z).pow(3));
        match (&x + &c(1)).exact_div(&y) {
            Err(PolyError::NotExact(r)) => assert_eq!(r, "x + 1"),
            other => panic!("{other:?}"),
        }
        assert_eq!((x.pow(4) * &y).exact_div(&x.pow(3)).unwrap(), &x * &y);
        assert!(x.exact_div(&P::zero()).is_err());
    }

    #[test]
    fn laurent_valuations() {
        let t = P::var("t");
        let tinv = P::from_terms(&["t"], vec![(vec![-1], q(1, 1))]).unwrap();
        let p = tinv.pow(3) + &t;
        assert_eq!(p.valuation("t").unwrap(), -3);
        assert_eq!(p.leading_at_zero("t").unwrap().constant_value(), Some(q(1, 1)));
        assert_eq!(c(5).extend_vars(&["t"]).valuation("t").unwrap(), 0);
        assert_eq!(P::zero_in(&["t"]).valuation("t"), Err(PolyError::Zero));
        let u = P::var("u");
        let sub = p.substitute(&[("t", &u.pow(2).scale(&q(2, 1)))]).unwrap();
        assert_eq!(sub.valuation("u").unwrap(), -6);
        assert!(p.substitute(&[("t", &(&u + &c(1)))]).is_err());
    }

    #[test]
    fn evaluation_and_specialization() {
        let (x, y, z) = xyz();
        let p = &x * &y - z.pow(2) + c(3);
        assert_eq!(p.evaluate(&[q(2, 1), q(1, 2), q(1, 1)]).unwrap(), q(3, 1));
        let s = p.specialize("z", &q(2, 1)).unwrap();
        assert_eq!(s, &x * &y - c(1));
        assert_eq!(s.vars(), ["x", "y"]);
    }

    #[test]
    fn json_round_trip() {
        let (x, y, z) = xyz();
        let p = (&x - y.scale(&q(1, 3))).pow(3) + z;
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back = P::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(j.contains("\"coefficient\":\"-1/27\""));
    }

    #[test]
    fn weighted_degrees() {
        let v = P::variables(&["a", "b"]);
        let p = v[0].pow(2) + &v[1];
        assert_eq!(p.weighted_degree(&[1, 2]), Some(2));
        assert_eq!(p.weighted_degree(&[1, 1]), None);
        assert!(!p.is_homogeneous());
        assert_eq!(p.scale(&q(-2, 3)).primitive_part(), p);
    }

    #[test]
    fn mixed_variable_sets_unify() {
        let x = P::var("x");
        let y = P::var("y");
        let s = &x + &y;
        assert_eq!(s.vars(), ["x", "y"]);
        assert_eq!(&s - &y, x);
        assert_eq!(&x * &c(2), x.scale(&q(2, 1)));
    }
}
