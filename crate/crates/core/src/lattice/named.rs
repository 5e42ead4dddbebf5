use std::fmt;

use num_bigint::BigInt;

use super::{t_gen, Lattice, LatticeError};
use crate::linalg::IntMatrix;

/// Named lattice description, e.g. `U+U(2)+A2(-2)`, `E8(-1)^2+U^3`, `<-24>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    U,
    Rank1(i64),
    A(usize),
    D(usize),
    E(usize),
    /// `E8(-1)^2 + U^3`.
    K3,
    /// `U + U(2) + A2(-2)` in the coordinates of the embedding lemma.
    TGen,
    Twist(Box<LatticeSpec>, i64),
    Power(Box<LatticeSpec>, usize),
    Sum(Vec<LatticeSpec>),
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::U => write!(f, "U"),
            LatticeSpec::Rank1(n) => write!(f, "<{n}>"),
            LatticeSpec::A(n) => write!(f, "A{n}"),
            LatticeSpec::D(n) => write!(f, "D{n}"),
            LatticeSpec::E(n) => write!(f, "E{n}"),
            LatticeSpec::K3 => write!(f, "K3"),
            LatticeSpec::TGen => write!(f, "Tgen"),
            LatticeSpec::Twist(l, n) => match **l {
                LatticeSpec::Sum(_) => write!(f, "({l})({n})"),
                _ => write!(f, "{l}({n})"),
            },
            LatticeSpec::Power(l, k) => match **l {
                LatticeSpec::Sum(_) => write!(f, "({l})^{k}"),
                _ => write!(f, "{l}^{k}"),
            },
            LatticeSpec::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Chain of `len` nodes with one extra node joined to chain node `branch`.
/// The extra node is last. With `branch = None` this is a plain chain.
pub(crate) fn tree_cartan(len: usize, branch: Option<usize>) -> IntMatrix {
    let n = len + usize::from(branch.is_some());
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, BigInt::from(2));
    }
    for i in 0..len.saturating_sub(1) {
        m.set(i, i + 1, BigInt::from(-1));
        m.set(i + 1, i, BigInt::from(-1));
    }
    if let Some(b) = branch {
        m.set(b, len, BigInt::from(-1));
        m.set(len, b, BigInt::from(-1));
    }
    m
}

fn build(spec: &LatticeSpec) -> Result<IntMatrix, LatticeError> {
    let bad = |s: &str| LatticeError::Parse(s.to_string());
    Ok(match spec {
        LatticeSpec::U => IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
        LatticeSpec::Rank1(n) => IntMatrix::from_i64_rows(&[&[*n]]),
        LatticeSpec::A(n) if *n >= 1 => tree_cartan(*n, None),
        LatticeSpec::D(n) if *n >= 4 => tree_cartan(n - 1, Some(n - 3)),
        // E_n: chain of n-1 nodes, branch on the third.
        LatticeSpec::E(n) if (6..=8).contains(n) => tree_cartan(n - 1, Some(2)),
        LatticeSpec::A(_) => return Err(bad("A0")),
        LatticeSpec::D(n) => return Err(bad(&format!("D{n}"))),
        LatticeSpec::E(n) => return Err(bad(&format!("E{n}"))),
        LatticeSpec::K3 => {
            let e8m = build(&LatticeSpec::E(8))?.scaled(&BigInt::from(-1));
            let u = build(&LatticeSpec::U)?;
            e8m.direct_sum(&e8m).direct_sum(&u).direct_sum(&u).direct_sum(&u)
        }
        LatticeSpec::TGen => t_gen().gram().clone(),
        LatticeSpec::Twist(l, n) => {
            if *n == 0 {
                return Err(LatticeError::ZeroTwist);
            }
            build(l)?.scaled(&BigInt::from(*n))
        }
        LatticeSpec::Power(l, k) => {
            let one = build(l)?;
            let mut acc = IntMatrix::zeros(0, 0);
            for _ in 0..*k {
                acc = acc.direct_sum(&one);
            }
            acc
        }
        LatticeSpec::Sum(parts) => {
            let mut acc = IntMatrix::zeros(0, 0);
            for p in parts {
                acc = acc.direct_sum(&build(p)?);
            }
            acc
        }
    })
}

impl LatticeSpec {
    pub fn build(&self) -> Result<Lattice, LatticeError> {
        Ok(Lattice::new(build(self)?)?.labeled(self.to_string()))
    }
}

/// Parses and builds a named lattice.
pub fn make_lattice(desc: &str) -> Result<Lattice, LatticeError> {
    parse_lattice(desc)?.build()
}

pub fn parse_lattice(desc: &str) -> Result<LatticeSpec, LatticeError> {
    let cleaned: Vec<char> = desc.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: &cleaned, pos: 0, src: desc };
    let spec = p.sum()?;
    if p.pos != cleaned.len() {
        return Err(p.err());
    }
    Ok(spec)
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self) -> LatticeError {
        LatticeError::Parse(self.src.to_string())
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, w: &str) -> bool {
        let chars: Vec<char> = w.chars().collect();
        if self.s[self.pos..].starts_with(&chars) {
            self.pos += chars.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64, LatticeError> {
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+') | Some('−')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.s[start..self.pos].iter().collect::<String>().replace('−', "-");
        text.parse().map_err(|_| self.err())
    }

    fn uint(&mut self) -> Result<usize, LatticeError> {
        let v = self.int()?;
        usize::try_from(v).map_err(|_| self.err())
    }

    fn sum(&mut self) -> Result<LatticeSpec, LatticeError> {
        let mut parts = vec![self.term()?];
        while self.eat('+') || self.eat('⊕') {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { LatticeSpec::Sum(parts) })
    }

    fn term(&mut self) -> Result<LatticeSpec, LatticeError> {
        let mut atom = self.atom()?;
        loop {
            if self.eat('(') {
                let n = self.int()?;
                if !self.eat(')') {
                    return Err(self.err());
                }
                atom = LatticeSpec::Twist(Box::new(atom), n);
            } else if self.eat('^') {
                let k = self.uint()?;
                atom = LatticeSpec::Power(Box::new(atom), k);
            } else {
                return Ok(atom);
            }
        }
    }

    fn atom(&mut self) -> Result<LatticeSpec, LatticeError> {
        if self.eat('(') {
            let inner = self.sum()?;
            if !self.eat(')') {
                return Err(self.err());
            }
            return Ok(inner);
        }
        if self.eat('<') {
            let n = self.int()?;
            if !self.eat('>') {
                return Err(self.err());
            }
            return Ok(LatticeSpec::Rank1(n));
        }
        if self.eat_str("K3") {
            return Ok(LatticeSpec::K3);
        }
        if self.eat_str("T_gen") || self.eat_str("Tgen") {
            return Ok(LatticeSpec::TGen);
        }
        match self.peek() {
            Some('U') => {
                self.pos += 1;
                Ok(LatticeSpec::U)
            }
            Some(c @ ('A' | 'D' | 'E')) => {
                self.pos += 1;
                let n = self.uint()?;
                Ok(match c {
                    'A' => LatticeSpec::A(n),
                    'D' => LatticeSpec::D(n),
                    _ => LatticeSpec::E(n),
                })
            }
            _ => Err(self.err()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;

    #[test]
    fn basic_names() {
        assert_eq!(make_lattice("U").unwrap().gram(), &IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(
            make_lattice("A2(-2)").unwrap().gram(),
            &IntMatrix::from_i64_rows(&[&[-4, 2], &[2, -4]])
        );
        assert_eq!(make_lattice("U(2)").unwrap().det(), BigInt::from(-4));
        assert_eq!(make_lattice("<-24>+<-2>").unwrap().det(), BigInt::from(48));
    }

    #[test]
    fn odd_rank_one_rejected() {
        assert!(matches!(make_lattice("<3>"), Err(LatticeError::Odd(_))));
        assert!(matches!(make_lattice("U(0)"), Err(LatticeError::ZeroTwist)));
        assert!(matches!(make_lattice("Q7"), Err(LatticeError::Parse(_))));
        assert!(matches!(make_lattice("U+"), Err(LatticeError::Parse(_))));
    }

    #[test]
    fn root_lattice_determinants() {
        for (name, d) in [("A1", 2), ("A4", 5), ("D4", 4), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1)] {
            let l = make_lattice(name).unwrap();
            assert_eq!(det(l.gram()).unwrap(), BigInt::from(d), "{name}");
            assert_eq!(l.signature().0, l.rank());
        }
    }

    #[test]
    fn k3_lattice_is_even_unimodular_of_signature_3_19() {
        let k3 = make_lattice("K3").unwrap();
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.det(), BigInt::from(-1));
        assert_eq!(k3.signature(), (3, 19, 0));
        let spelled = make_lattice("E8(-1)^2+U^3").unwrap();
        assert_eq!(spelled.gram(), k3.gram());
    }

    #[test]
    fn t_gen_matches_named_sum() {
        let a = make_lattice("Tgen").unwrap();
        let b = make_lattice("U+U(2)+A2(-2)").unwrap();
        assert_eq!(a.gram(), b.gram());
        assert_eq!(a.det(), BigInt::from(48));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["U+U(2)+A2(-2)", "E8(-1)^2+U^3", "(U+<2>)(3)", "<-24>"] {
            let spec = parse_lattice(s).unwrap();
            assert_eq!(parse_lattice(&spec.to_string()).unwrap(), spec);
        }
    }
}
