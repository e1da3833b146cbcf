use std::collections::BTreeMap;
use std::fmt;

use super::{Monomial, PrimeField};

/// A sparse polynomial over F_p in a fixed number of variables.
///
/// Invariants: every stored coefficient is nonzero and reduced into `0..p`;
/// every key has exactly `nvars` exponents. The zero polynomial is the empty
/// map. Operations panic on ambient mismatch (different field or variable
/// count): mixing ambients is a caller bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl FpPoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        FpPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u64) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(nvars, i), 1);
        p
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: u64) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(field, nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, u64)>>(
        field: PrimeField,
        nvars: usize,
        iter: I,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    #[inline]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        *self.terms.get(m).unwrap_or(&0)
    }

    /// Leading term in graded lex order.
    pub fn leading(&self) -> Option<(&Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True for the zero polynomial as well: zero is homogeneous of every
    /// degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, deg: u32) -> FpPoly {
        FpPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// In-place fused add of `c * m`; drops the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: u64) {
        assert_eq!(m.nvars(), self.nvars, "monomial has wrong variable count");
        let field = self.field;
        let c = field.reduce(c);
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let s = field.add(*slot.get(), c);
                if s == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &FpPoly) {
        assert_eq!(self.field, other.field, "ambient mismatch: different fields");
        assert_eq!(self.nvars, other.nvars, "ambient mismatch: different variable counts");
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), self.field.neg(c))).collect(),
        }
    }

    pub fn scalar_mul(&self, c: u64) -> FpPoly {
        let c = self.field.reduce(c);
        if c == 0 {
            return FpPoly::zero(self.field, self.nvars);
        }
        FpPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), self.field.mul(v, c))).collect(),
        }
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        self.assert_compatible(other);
        let mut out = FpPoly::zero(self.field, self.nvars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u64) -> FpPoly {
        let c = self.field.reduce(c);
        let mut out = FpPoly::zero(self.field, self.nvars);
        if c == 0 {
            return out;
        }
        for (ma, ca) in self.terms() {
            out.add_term(ma.mul(m), self.field.mul(ca, c));
        }
        out
    }

    /// Binary exponentiation, peeling off p-th powers first: f^(p*k) =
    /// frobenius(f)^k, which keeps intermediate expansions small.
    pub fn pow(&self, mut e: u32) -> FpPoly {
        if e == 0 {
            return FpPoly::one(self.field, self.nvars);
        }
        let p = self.field.p() as u32;
        let mut base = self.clone();
        while e % p == 0 {
            base = base.frobenius();
            e /= p;
        }
        let mut acc = FpPoly::one(self.field, self.nvars);
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e == 0 {
                return acc;
            }
            sq = sq.mul(&sq);
        }
    }

    /// f -> f^p. Coefficients are fixed by Frobenius on F_p, so this is pure
    /// exponent scaling.
    pub fn frobenius(&self) -> FpPoly {
        self.q_power(1)
    }

    /// f -> f^(p^k) by scaling exponents by p^k.
    pub fn q_power(&self, k: u32) -> FpPoly {
        let q = (self.field.p() as u32).checked_pow(k).expect("p^k overflow");
        FpPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &c)| (m.pow(q), c)).collect(),
        }
    }

    /// Inverse of [`FpPoly::frobenius`] when it exists: requires every
    /// exponent divisible by p.
    pub fn pth_root(&self) -> Option<FpPoly> {
        self.qth_root(1)
    }

    pub fn qth_root(&self, k: u32) -> Option<FpPoly> {
        let q = (self.field.p() as u32).checked_pow(k).expect("p^k overflow");
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms() {
            terms.insert(m.qth_root(q)?, c);
        }
        Some(FpPoly { field: self.field, nvars: self.nvars, terms })
    }

    /// Writes f = sum_e g_e^p * x^e over residues e in [0, p)^nvars and
    /// returns the nonzero g_e keyed by e. Coefficients transfer unchanged
    /// because c^p = c in F_p.
    pub fn p_basis_decompose(&self) -> BTreeMap<Monomial, FpPoly> {
        self.q_basis_decompose(1)
    }

    /// Writes f = sum_e g_e^(p^k) * x^e over residues e in [0, p^k)^nvars.
    pub fn q_basis_decompose(&self, k: u32) -> BTreeMap<Monomial, FpPoly> {
        let q = (self.field.p() as u32).checked_pow(k).expect("p^k overflow");
        let mut out: BTreeMap<Monomial, FpPoly> = BTreeMap::new();
        for (m, c) in self.terms() {
            let (quot, rem) = m.q_split(q);
            out.entry(rem)
                .or_insert_with(|| FpPoly::zero(self.field, self.nvars))
                .add_term(quot, c);
        }
        out.retain(|_, g| !g.is_zero());
        out
    }

    pub fn partial_derivative(&self, i: usize) -> FpPoly {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = FpPoly::zero(self.field, self.nvars);
        for (m, c) in self.terms() {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let coeff = self.field.mul(c, self.field.reduce(e as u64));
            if coeff == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), coeff);
        }
        out
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        let f = self.field;
        let mut acc = 0;
        for (m, c) in self.terms() {
            let mut t = c;
            for (i, &e) in m.exps().iter().enumerate() {
                t = f.mul(t, f.pow(point[i] % f.p(), e as u64));
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Coordinates with respect to an indexed monomial set. Panics if a term
    /// falls outside the index: the caller promised a spanning set.
    pub fn coords(&self, index: &BTreeMap<Monomial, usize>, len: usize) -> Vec<u64> {
        let mut v = vec![0u64; len];
        for (m, c) in self.terms() {
            let i = *index
                .get(m)
                .unwrap_or_else(|| panic!("monomial {m} outside coordinate index"));
            v[i] = c;
        }
        v
    }
}

impl fmt::Display for FpPoly {
    /// Default rendering with variables named x0, x1, ... Terms descend in
    /// graded lex order; coefficients print as canonical residues.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Division with remainder by a single divisor in graded lex order:
/// f = q*g + r where no term of r is divisible by the leading monomial of g.
/// The remainder is unique for a single divisor, so exactness checks
/// (`r == 0`) are sound.
pub fn divide(f: &FpPoly, g: &FpPoly) -> (FpPoly, FpPoly) {
    assert!(!g.is_zero(), "division by the zero polynomial");
    assert_eq!(f.field(), g.field(), "ambient mismatch: different fields");
    assert_eq!(f.nvars(), g.nvars(), "ambient mismatch: different variable counts");
    let field = f.field();
    let (lt_m, lt_c) = g.leading().expect("nonzero divisor");
    let lt_m = lt_m.clone();
    let lt_inv = field.inv(lt_c);

    let mut q = FpPoly::zero(field, f.nvars());
    let mut r = f.clone();
    loop {
        // largest remaining term divisible by LT(g)
        let hit = r
            .terms
            .iter()
            .rev()
            .find(|(m, _)| lt_m.divides(m))
            .map(|(m, &c)| (m.clone(), c));
        let Some((m, c)) = hit else {
            return (q, r);
        };
        let factor_m = lt_m.div_exact(&m);
        let factor_c = field.mul(c, lt_inv);
        q.add_term(factor_m.clone(), factor_c);
        r = r.sub(&g.mul_monomial(&factor_m, factor_c));
    }
}
