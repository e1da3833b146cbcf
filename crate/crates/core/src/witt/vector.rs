use std::fmt;

use crate::fpoly::{poly_to_string, Ambient, FpPoly};

use super::ghost::GhostEngine;

/// A truncated Witt vector: `n` coordinates in the ambient coefficient
/// ring, each stored in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittVector {
    comps: Vec<FpPoly>,
}

impl WittVector {
    pub fn comps(&self) -> &[FpPoly] {
        &self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comp(&self, i: usize) -> &FpPoly {
        &self.comps[i]
    }
}

/// The ring W_n(R) of length-n Witt vectors over an ambient ring R (a
/// polynomial ring or a hypersurface quotient of one).
///
/// All arithmetic routes through ghost components modulo p^(n+2); see the
/// module documentation for why that truncation is exact.
#[derive(Debug, Clone)]
pub struct WittRing {
    ambient: Ambient,
    n: usize,
    engine: GhostEngine,
}

impl WittRing {
    pub fn new(ambient: Ambient, n: usize) -> Self {
        assert!(n >= 1, "Witt length must be at least 1");
        assert!(n <= 4, "Witt length {n} exceeds the supported cap 4");
        let engine = GhostEngine::new(ambient.field().p(), n);
        WittRing { ambient, n, engine }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.ambient.field().p()
    }

    /// The ring of one shorter length over the same ambient; used by
    /// Frobenius (which shortens) and the class machinery (which divides
    /// out Verschiebung images level by level).
    pub fn shorten(&self) -> WittRing {
        assert!(self.n >= 2, "cannot shorten length-1 Witt vectors");
        WittRing::new(self.ambient.clone(), self.n - 1)
    }

    pub fn from_comps(&self, comps: Vec<FpPoly>) -> WittVector {
        assert_eq!(comps.len(), self.n, "wrong number of Witt coordinates");
        WittVector { comps: comps.iter().map(|c| self.ambient.nf(c)).collect() }
    }

    pub fn zero(&self) -> WittVector {
        WittVector { comps: (0..self.n).map(|_| self.ambient.zero()).collect() }
    }

    pub fn one(&self) -> WittVector {
        self.teichmuller(&self.ambient.one())
    }

    /// Multiplicative lift [r] = (r, 0, ..., 0).
    pub fn teichmuller(&self, r: &FpPoly) -> WittVector {
        let mut comps = vec![self.ambient.nf(r)];
        comps.extend((1..self.n).map(|_| self.ambient.zero()));
        WittVector { comps }
    }

    pub fn is_zero(&self, a: &WittVector) -> bool {
        a.comps.iter().all(FpPoly::is_zero)
    }

    fn nf_all(&self, comps: Vec<FpPoly>) -> WittVector {
        WittVector { comps: comps.iter().map(|c| self.ambient.nf(c)).collect() }
    }

    pub fn add(&self, a: &WittVector, b: &WittVector) -> WittVector {
        self.check(a);
        self.check(b);
        let ga = self.engine.ghosts(&a.comps);
        let gb = self.engine.ghosts(&b.comps);
        let combined = self.engine.combine_add(&ga, &gb);
        self.nf_all(self.engine.peel(&combined, self.ambient.field()))
    }

    pub fn mul(&self, a: &WittVector, b: &WittVector) -> WittVector {
        self.check(a);
        self.check(b);
        let ga = self.engine.ghosts(&a.comps);
        let gb = self.engine.ghosts(&b.comps);
        let combined = self.engine.combine_mul(&ga, &gb);
        self.nf_all(self.engine.peel(&combined, self.ambient.field()))
    }

    pub fn neg(&self, a: &WittVector) -> WittVector {
        self.check(a);
        let ga = self.engine.ghosts(&a.comps);
        let combined = self.engine.combine_scale(&ga, -1);
        self.nf_all(self.engine.peel(&combined, self.ambient.field()))
    }

    pub fn sub(&self, a: &WittVector, b: &WittVector) -> WittVector {
        self.add(a, &self.neg(b))
    }

    /// Multiplication by an integer scalar, through ghost scaling.
    pub fn scalar_int(&self, k: i64, a: &WittVector) -> WittVector {
        self.check(a);
        let ga = self.engine.ghosts(&a.comps);
        let combined = self.engine.combine_scale(&ga, k);
        self.nf_all(self.engine.peel(&combined, self.ambient.field()))
    }

    /// Witt sum of shifted Teichmuller slots sum_k V^(level_k)([content_k]).
    /// This is the workhorse for module-basis arithmetic: ghost accumulation
    /// is linear in the slot count, and peeling stays sparse when contents
    /// are single monomials.
    pub fn sum_of_slots(&self, slots: &[(usize, FpPoly)]) -> WittVector {
        if slots.is_empty() {
            return self.zero();
        }
        let nvars = self.ambient.nvars();
        let ghosts = self.engine.slot_ghosts(nvars, slots);
        self.nf_all(self.engine.peel(&ghosts, self.ambient.field()))
    }

    /// Frobenius W_n -> W_(n-1): componentwise p-th power dropping the last
    /// coordinate (valid because the ambient has characteristic p).
    pub fn frobenius(&self, a: &WittVector) -> WittVector {
        self.check(a);
        assert!(self.n >= 2, "Frobenius needs length at least 2 to land somewhere");
        WittVector {
            comps: a.comps[..self.n - 1]
                .iter()
                .map(|c| self.ambient.nf(&c.frobenius()))
                .collect(),
        }
    }

    /// Verschiebung W_(n-1) -> W_n: shift right, zero in front.
    pub fn verschiebung(&self, a: &WittVector) -> WittVector {
        assert_eq!(a.len(), self.n - 1, "Verschiebung input must have length n-1");
        let mut comps = vec![self.ambient.zero()];
        comps.extend(a.comps.iter().cloned());
        WittVector { comps }
    }

    /// Inverse of Verschiebung on its image; the first coordinate must be
    /// zero.
    pub fn v_divide(&self, a: &WittVector) -> WittVector {
        self.check(a);
        assert!(a.comps[0].is_zero(), "v_divide needs a vector with zero first coordinate");
        WittVector { comps: a.comps[1..].to_vec() }
    }

    /// Multiplication by p in closed form: p * a = (0, a_0^p, ..., a_(n-2)^p).
    pub fn mul_by_p(&self, a: &WittVector) -> WittVector {
        self.check(a);
        let mut comps = vec![self.ambient.zero()];
        comps.extend(
            a.comps[..self.n - 1]
                .iter()
                .map(|c| self.ambient.nf(&c.frobenius())),
        );
        WittVector { comps }
    }

    /// First coordinate; mod p this is the ring map W_n(R)/p -> R.
    pub fn restriction(&self, a: &WittVector) -> FpPoly {
        self.check(a);
        a.comps[0].clone()
    }

    /// The section R -> W_n(R)/p of the restriction, r -> class of [r^p].
    /// (Its composite with restriction is the Frobenius of R; the class of
    /// F(a) equals the class of [a_0^p], which is the factorization tests
    /// exercise.)
    pub fn section(&self, r: &FpPoly) -> WittVector {
        self.teichmuller(&self.ambient.nf(&r.frobenius()))
    }

    fn check(&self, a: &WittVector) {
        assert_eq!(a.len(), self.n, "Witt vector has wrong length for this ring");
    }

    /// Display helper carrying variable names.
    pub fn display<'a>(&'a self, a: &'a WittVector, vars: &'a [&'a str]) -> WittDisplay<'a> {
        WittDisplay { ring: self, vector: a, vars }
    }
}

/// Renders "(a_0; a_1; ...; a_(n-1)) @ p=.., n=.." with coordinates in the
/// polynomial grammar.
pub struct WittDisplay<'a> {
    ring: &'a WittRing,
    vector: &'a WittVector,
    vars: &'a [&'a str],
}

impl fmt::Display for WittDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .vector
            .comps
            .iter()
            .map(|c| poly_to_string(c, self.vars))
            .collect();
        write!(f, "({}) @ p={}, n={}", comps.join("; "), self.ring.p(), self.ring.n())
    }
}
