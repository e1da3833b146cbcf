//! Modular ghost-component engine.
//!
//! Concrete Witt arithmetic happens here: operands lift to integer
//! polynomials with coefficients reduced modulo p^(len+2), ghost components
//! are combined in that modulus, and Witt coordinates are peeled back by
//! exact division. Peeling at stage i divides a quantity that is determined
//! modulo p^(len+2) and divisible by p^i, so the quotient is determined
//! modulo p^(len+2-i); raising to a p-th power recovers one lost digit per
//! squaring level (x = y mod p^m implies x^p = y^p mod p^(m+1)), which keeps
//! every peeled coordinate exact modulo p until the final reduction.

use std::collections::BTreeMap;

use crate::fpoly::{FpPoly, Monomial, PrimeField};

/// Sparse polynomial with coefficients in Z/p^(len+2). Invariant: no zero
/// coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ModPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl ModPoly {
    fn zero(nvars: usize) -> Self {
        ModPoly { nvars, terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Arithmetic context: the prime, vector length, and working modulus
/// p^(len+2).
#[derive(Debug, Clone, Copy)]
pub(crate) struct GhostEngine {
    p: u64,
    len: usize,
    modulus: u64,
}

impl GhostEngine {
    pub(crate) fn new(p: u64, len: usize) -> Self {
        assert!(len >= 1, "Witt length must be positive");
        let modulus = p
            .checked_pow(len as u32 + 2)
            .expect("working modulus p^(len+2) overflows u64");
        GhostEngine { p, len, modulus }
    }

    #[inline]
    fn reduce(&self, v: u64) -> u64 {
        v % self.modulus
    }

    fn add_term(&self, poly: &mut ModPoly, m: Monomial, c: u64) {
        let c = self.reduce(c);
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match poly.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let s = self.reduce(*slot.get() + c);
                if s == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    fn lift(&self, f: &FpPoly) -> ModPoly {
        ModPoly {
            nvars: f.nvars(),
            terms: f.terms().map(|(m, c)| (m.clone(), c)).collect(),
        }
    }

    fn add(&self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        let mut out = a.clone();
        for (m, &c) in &b.terms {
            self.add_term(&mut out, m.clone(), c);
        }
        out
    }

    fn add_scaled(&self, acc: &mut ModPoly, b: &ModPoly, s: u64) {
        let s = self.reduce(s);
        if s == 0 {
            return;
        }
        for (m, &c) in &b.terms {
            self.add_term(acc, m.clone(), self.reduce(c * s) );
        }
    }

    fn mul(&self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        let mut out = ModPoly::zero(a.nvars);
        for (ma, &ca) in &a.terms {
            for (mb, &cb) in &b.terms {
                self.add_term(&mut out, ma.mul(mb), self.reduce(ca * cb));
            }
        }
        out
    }

    fn pow(&self, a: &ModPoly, mut e: u32) -> ModPoly {
        let mut acc = ModPoly { nvars: a.nvars, terms: BTreeMap::new() };
        self.add_term(&mut acc, Monomial::one(a.nvars), 1);
        if e == 0 {
            return acc;
        }
        let mut sq = a.clone();
        loop {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e == 0 {
                return acc;
            }
            sq = self.mul(&sq, &sq);
        }
    }

    /// Coefficientwise exact division by p^k. The dividend must be divisible
    /// termwise; a failure indicates an implementation bug, because the
    /// ghost identities guarantee divisibility.
    fn div_exact_pk(&self, a: &ModPoly, k: u32) -> ModPoly {
        let d = self.p.pow(k);
        ModPoly {
            nvars: a.nvars,
            terms: a
                .terms
                .iter()
                .map(|(m, &c)| {
                    assert!(
                        c % d == 0,
                        "ghost peeling hit an inexact division by p^{k}: implementation bug"
                    );
                    (m.clone(), c / d)
                })
                .filter(|(_, c)| *c != 0)
                .collect(),
        }
    }

    fn reduce_mod_p(&self, a: &ModPoly, field: PrimeField) -> FpPoly {
        FpPoly::from_terms(field, a.nvars, a.terms.iter().map(|(m, &c)| (m.clone(), c % self.p)))
    }

    /// Ghost components w_i = sum_{j <= i} p^j lift(a_j)^(p^(i-j)) of a
    /// coordinate vector, all modulo p^(len+2).
    pub(crate) fn ghosts(&self, comps: &[FpPoly]) -> Vec<ModPoly> {
        assert_eq!(comps.len(), self.len, "component count differs from engine length");
        let nvars = comps[0].nvars();
        let lifts: Vec<ModPoly> = comps.iter().map(|c| self.lift(c)).collect();
        let mut out = Vec::with_capacity(self.len);
        for i in 0..self.len {
            let mut w = ModPoly::zero(nvars);
            let mut pj = 1u64;
            for (j, l) in lifts.iter().take(i + 1).enumerate() {
                let e = (self.p as u32).pow((i - j) as u32);
                let powed = self.pow(l, e);
                self.add_scaled(&mut w, &powed, pj);
                pj = self.reduce(pj * self.p);
            }
            out.push(w);
        }
        out
    }

    /// Ghost components of a sum of shifted Teichmuller slots
    /// sum_k V^(level_k)([content_k]): each slot contributes
    /// p^level * content^(p^(i-level)) to w_i for i >= level. Contents are
    /// arbitrary polynomials; monomial contents keep everything sparse.
    pub(crate) fn slot_ghosts(&self, nvars: usize, slots: &[(usize, FpPoly)]) -> Vec<ModPoly> {
        let mut out: Vec<ModPoly> = (0..self.len).map(|_| ModPoly::zero(nvars)).collect();
        for (level, content) in slots {
            assert!(*level < self.len, "slot level out of range");
            let lift = self.lift(content);
            let scale = self.p.pow(*level as u32);
            for (i, w) in out.iter_mut().enumerate().skip(*level) {
                let e = (self.p as u32).pow((i - level) as u32);
                let powed = self.pow(&lift, e);
                self.add_scaled(w, &powed, scale);
            }
        }
        out
    }

    /// Combined ghost vectors back to Witt coordinates mod p:
    /// C_i = (w_i - sum_{j<i} p^j C_j^(p^(i-j))) / p^i, then reduce mod p.
    pub(crate) fn peel(&self, ghosts: &[ModPoly], field: PrimeField) -> Vec<FpPoly> {
        assert_eq!(ghosts.len(), self.len);
        let nvars = ghosts
            .iter()
            .map(|g| g.nvars)
            .max()
            .expect("at least one ghost component");
        let mut coords: Vec<ModPoly> = Vec::with_capacity(self.len);
        for i in 0..self.len {
            let mut rhs = ghosts[i].clone();
            if rhs.is_zero() {
                rhs = ModPoly::zero(nvars);
            }
            let mut pj = 1u64;
            for (j, c) in coords.iter().enumerate() {
                let e = (self.p as u32).pow((i - j) as u32);
                let powed = self.pow(c, e);
                self.add_scaled(&mut rhs, &powed, self.reduce(self.modulus - pj));
                pj = self.reduce(pj * self.p);
            }
            coords.push(self.div_exact_pk(&rhs, i as u32));
        }
        coords.iter().map(|c| self.reduce_mod_p(c, field)).collect()
    }

    /// Pointwise ghost combination helpers.
    pub(crate) fn combine_add(&self, a: &[ModPoly], b: &[ModPoly]) -> Vec<ModPoly> {
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }

    pub(crate) fn combine_mul(&self, a: &[ModPoly], b: &[ModPoly]) -> Vec<ModPoly> {
        a.iter().zip(b).map(|(x, y)| self.mul(x, y)).collect()
    }

    pub(crate) fn combine_scale(&self, a: &[ModPoly], s: i64) -> Vec<ModPoly> {
        let s = s.rem_euclid(self.modulus as i64) as u64;
        a.iter()
            .map(|x| {
                let mut out = ModPoly::zero(x.nvars);
                self.add_scaled(&mut out, x, s);
                out
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn peel_inverts_ghosts() {
        let p = 3;
        let field = fp(p);
        let eng = GhostEngine::new(p, 3);
        let comps = vec![
            FpPoly::from_terms(field, 2, [(Monomial::new(vec![1, 0]), 1), (Monomial::new(vec![0, 0]), 2)]),
            FpPoly::from_terms(field, 2, [(Monomial::new(vec![0, 2]), 2)]),
            FpPoly::from_terms(field, 2, [(Monomial::new(vec![1, 1]), 1)]),
        ];
        let ghosts = eng.ghosts(&comps);
        let back = eng.peel(&ghosts, field);
        assert_eq!(back, comps);
    }

    #[test]
    fn slot_ghosts_match_component_ghosts_on_single_slot() {
        let p = 2;
        let field = fp(p);
        let eng = GhostEngine::new(p, 2);
        let g = FpPoly::from_terms(field, 1, [(Monomial::new(vec![3]), 1)]);
        // V([g]) has coordinates (0, g)
        let via_slots = eng.slot_ghosts(1, &[(1, g.clone())]);
        let via_comps = eng.ghosts(&[FpPoly::zero(field, 1), g]);
        assert_eq!(via_slots, via_comps);
    }

    #[test]
    fn modulus_matches_truncation_contract() {
        let eng = GhostEngine::new(5, 3);
        assert_eq!(eng.modulus, 5u64.pow(5));
    }
}
