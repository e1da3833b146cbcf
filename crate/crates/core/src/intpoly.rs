//! Sparse polynomials with exact integer coefficients.
//!
//! These serve as characteristic-0 lifts: ghost-component computations and
//! the universal structural polynomial recursion happen here, where division
//! by powers of p can be checked exactly instead of assumed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::fpoly::{FpPoly, Monomial, PrimeField};

/// Integer-coefficient sparse polynomial. Invariant: no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), BigInt::one());
        p
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(nvars);
        p.add_term(m, c.into());
        p
    }

    /// Lift of an F_p polynomial with coefficients taken in 0..p.
    pub fn lift(f: &FpPoly) -> Self {
        IntPoly {
            nvars: f.nvars(),
            terms: f.terms().map(|(m, c)| (m.clone(), BigInt::from(c))).collect(),
        }
    }

    /// Reduction mod p.
    pub fn reduce_mod(&self, field: PrimeField) -> FpPoly {
        let p = BigInt::from(field.p());
        FpPoly::from_terms(
            field,
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                let r = c.rem_euclid_big(&p);
                (m.clone(), r)
            }),
        )
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        assert_eq!(m.nvars(), self.nvars, "monomial has wrong variable count");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero(self.nvars);
        }
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = IntPoly::zero(self.nvars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one(self.nvars);
        if e == 0 {
            return acc;
        }
        let mut sq = self.clone();
        let mut e = e;
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

    /// Exact division by an integer; None if any coefficient is not
    /// divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by zero");
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms() {
            let (q, r) = num_integer::Integer::div_rem(c, d);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                terms.insert(m.clone(), q);
            }
        }
        Some(IntPoly { nvars: self.nvars, terms })
    }

    /// Substitutes the given polynomials for the variables.
    pub fn substitute(&self, values: &[IntPoly]) -> IntPoly {
        assert_eq!(values.len(), self.nvars, "substitution arity mismatch");
        let out_vars = values.first().map_or(0, IntPoly::nvars);
        let mut out = IntPoly::zero(out_vars);
        for (m, c) in self.terms() {
            let mut t = IntPoly::constant(out_vars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&values[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }
}

trait RemEuclidBig {
    fn rem_euclid_big(&self, m: &BigInt) -> u64;
}

impl RemEuclidBig for BigInt {
    fn rem_euclid_big(&self, m: &BigInt) -> u64 {
        use num_traits::ToPrimitive;
        let mut r = self % m;
        if r.is_negative() {
            r += m;
        }
        r.to_u64().expect("residue fits in u64")
    }
}

/// Ghost components of a Witt coordinate vector of integer polynomials:
/// w_i = sum_{j <= i} p^j * a_j^(p^(i-j)).
pub fn ghost_components(p: u64, comps: &[IntPoly]) -> Vec<IntPoly> {
    let n = comps.len();
    let nvars = comps.first().map_or(0, IntPoly::nvars);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut w = IntPoly::zero(nvars);
        let mut pj = BigInt::one();
        for (j, a) in comps.iter().take(i + 1).enumerate() {
            let e = (p as u32).pow((i - j) as u32);
            w = w.add(&a.pow(e).scalar_mul(&pj));
            pj *= p;
        }
        out.push(w);
    }
    out
}

/// Recovers Witt coordinates from ghost components by peeling:
/// a_i = (w_i - sum_{j < i} p^j a_j^(p^(i-j))) / p^i.
/// Returns None if some division is inexact, which certifies that the ghost
/// vector is not in the image of the ghost map over the integers.
pub fn from_ghost(p: u64, ghosts: &[IntPoly]) -> Option<Vec<IntPoly>> {
    let mut comps: Vec<IntPoly> = Vec::with_capacity(ghosts.len());
    let mut pi = BigInt::one();
    for (i, w) in ghosts.iter().enumerate() {
        let mut rhs = w.clone();
        let mut pj = BigInt::one();
        for (j, a) in comps.iter().enumerate() {
            let e = (p as u32).pow((i - j) as u32);
            rhs = rhs.sub(&a.pow(e).scalar_mul(&pj));
            pj *= p;
        }
        comps.push(rhs.div_exact(&pi)?);
        pi *= p;
    }
    Some(comps)
}
