use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{parse_rational, Field, PolyError, Ring};
use crate::linalg::{solve_rational, RatMatrix};

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // both little-endian, den monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::from(0); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c != BigInt::from(0) {
            for (i, d) in den.iter().enumerate() {
                r[k + i] -= &c * d;
            }
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|x| *x == BigInt::from(0)));
    q
}

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::from(0); n as usize + 1];
    num[0] = -BigInt::from(1);
    num[n as usize] = BigInt::from(1);
    for d in (1..n).filter(|d| n % d == 0) {
        num = poly_div_exact(&num, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(num);
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

/// An element of `Q(ζ_N)`, stored as coefficients of `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic<const N: u32> {
    c: Vec<BigRational>,
}

impl<const N: u32> Cyclotomic<N> {
    pub fn degree() -> usize {
        cyclotomic_polynomial(N).len() - 1
    }

    fn reduce(mut v: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(N);
        let d = phi.len() - 1;
        for k in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if !c.is_zero() {
                for i in 0..d {
                    let t = &c * BigRational::from_integer(phi[i].clone());
                    v[k - d + i] -= t;
                }
            }
        }
        v.truncate(d);
        v.resize(d, BigRational::zero());
        Cyclotomic { c: v }
    }

    /// Element from coefficients in the power basis (any length).
    pub fn from_coeffs(v: Vec<BigRational>) -> Self {
        Self::reduce(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    /// The generator `ζ_N`.
    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let e = k.rem_euclid(N as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        Self::reduce(v)
    }

    fn mult_matrix(&self) -> RatMatrix {
        let d = Self::degree();
        let cols: Vec<Vec<BigRational>> = (0..d).map(|j| self.mul_ref(&Self::zeta_pow(j as i64)).c).collect();
        RatMatrix::from_fn(d, d, |i, j| cols[j][i].clone())
    }
}

impl<const N: u32> Ring for Cyclotomic<N> {
    fn zero() -> Self {
        Cyclotomic { c: vec![BigRational::zero(); Self::degree()] }
    }
    fn one() -> Self {
        Self::from_rational(&BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }
    fn add_ref(&self, o: &Self) -> Self {
        Cyclotomic { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Cyclotomic { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let d = self.c.len();
        let mut v = vec![BigRational::zero(); 2 * d];
        for (i, a) in self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.c.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                v[i + j] += a * b;
            }
        }
        Self::reduce(v)
    }
    fn neg_ref(&self) -> Self {
        Cyclotomic { c: self.c.iter().map(|a| -a).collect() }
    }
    fn from_rational(r: &BigRational) -> Self {
        let mut z = Self::zero();
        z.c[0] = r.clone();
        z
    }
}

impl<const N: u32> Field for Cyclotomic<N> {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let mut one = vec![BigRational::zero(); Self::degree()];
        one[0] = BigRational::one();
        solve_rational(&self.mult_matrix(), &one).ok().map(|c| Cyclotomic { c })
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.c[1..].iter().all(Ring::is_zero).then(|| self.c[0].clone())
    }

    fn to_repr(&self) -> String {
        let parts: Vec<String> = self.c.iter().map(ToString::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    fn from_repr(s: &str) -> Result<Self, PolyError> {
        let t = s.trim();
        match t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            Some(body) => {
                let v: Vec<BigRational> = body.split(',').map(parse_rational).collect::<Result<_, _>>()?;
                Ok(Self::reduce(v))
            }
            None => Ok(Self::from_rational(&parse_rational(t)?)),
        }
    }
}

impl<const N: u32> fmt::Display for Cyclotomic<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.c.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let (neg, mag) = if *c < BigRational::zero() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag == BigRational::one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<const N: u32> fmt::Debug for Cyclotomic<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{N})[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity() {
        type W = Cyclotomic<3>;
        let w = W::zeta();
        assert_eq!(w.pow_u(3), W::one());
        assert_eq!(w.add_ref(&w.pow_u(2)).add_ref(&W::one()), W::zero());
        type I = Cyclotomic<4>;
        assert_eq!(I::zeta().pow_u(2), I::from_i64(-1));
        type E = Cyclotomic<9>;
        let eps = E::zeta();
        assert_eq!(eps.pow_u(9), E::one());
        assert_ne!(eps.pow_u(3), E::one());
        assert_eq!(E::zeta_pow(-1).mul_ref(&eps), E::one());
    }

    #[test]
    fn inverses() {
        type F = Cyclotomic<5>;
        let x = F::from_coeffs(vec![q(1, 2), q(3, 1), q(0, 1), q(-1, 1)]);
        let y = x.inv().unwrap();
        assert_eq!(x.mul_ref(&y), F::one());
        assert!(F::zero().inv().is_none());
        assert_eq!(F::from_repr(&x.to_repr()).unwrap(), x);
        assert_eq!(F::from_repr("3/2").unwrap().to_rational(), Some(q(3, 2)));
    }
}
