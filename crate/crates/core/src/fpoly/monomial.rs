use std::cmp::Ordering;
use std::fmt;

/// An exponent vector. Ordering is graded lexicographic: compare total
/// degree first, then exponents left to right (earlier variables heavier).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// other / self; caller must have checked divisibility.
    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        assert!(self.divides(other), "inexact monomial division");
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| b - a).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }

    /// All exponents divisible by q?
    pub fn is_qth_power(&self, q: u32) -> bool {
        self.0.iter().all(|&e| e % q == 0)
    }

    pub fn qth_root(&self, q: u32) -> Option<Monomial> {
        if self.is_qth_power(q) {
            Some(Monomial(self.0.iter().map(|&e| e / q).collect()))
        } else {
            None
        }
    }

    /// Componentwise split e = q*quot + rem with rem in [0, q).
    pub fn q_split(&self, q: u32) -> (Monomial, Monomial) {
        let quot = Monomial(self.0.iter().map(|&e| e / q).collect());
        let rem = Monomial(self.0.iter().map(|&e| e % q).collect());
        (quot, rem)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of total degree exactly `deg` in `nvars` variables,
/// ascending in the monomial order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, deg);
    out.sort();
    return out;

    fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, i: usize, left: u32) {
        if i + 1 == current.len() {
            current[i] = left;
            out.push(Monomial::new(current.clone()));
            current[i] = 0;
            return;
        }
        for e in 0..=left {
            current[i] = e;
            fill(out, current, i + 1, left - e);
        }
        current[i] = 0;
    }
}

/// All exponent vectors in the box [0, bound)^nvars, ascending in the
/// monomial order.
pub fn exponent_boxes(nvars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    loop {
        out.push(Monomial::new(current.clone()));
        let mut i = nvars;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < bound {
                break;
            }
            current[i] = 0;
        }
    }
}
