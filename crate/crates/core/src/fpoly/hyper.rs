use std::collections::BTreeMap;

use thiserror::Error;

use super::{divide, monomials_of_degree, FpPoly, Monomial, PrimeField};
use crate::linalg::MatFp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypersurfaceError {
    #[error("defining polynomial must be nonzero")]
    ZeroEquation,
    #[error("defining polynomial must be nonconstant")]
    ConstantEquation,
}

/// The quotient S/(f) of a polynomial ring by one equation, with normal
/// forms taken by graded lex division against f. Graded routines (degreewise
/// bases, p-th power tests) additionally require f homogeneous and assert it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceRing {
    f: FpPoly,
}

impl HypersurfaceRing {
    pub fn new(f: FpPoly) -> Result<Self, HypersurfaceError> {
        if f.is_zero() {
            return Err(HypersurfaceError::ZeroEquation);
        }
        if f.total_degree() == Some(0) {
            return Err(HypersurfaceError::ConstantEquation);
        }
        Ok(HypersurfaceRing { f })
    }

    pub fn equation(&self) -> &FpPoly {
        &self.f
    }

    pub fn field(&self) -> PrimeField {
        self.f.field()
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// Canonical representative of g mod (f): the unique remainder of
    /// division by f in graded lex order.
    pub fn normal_form(&self, g: &FpPoly) -> FpPoly {
        divide(g, &self.f).1
    }

    pub fn is_zero_class(&self, g: &FpPoly) -> bool {
        self.normal_form(g).is_zero()
    }

    fn assert_graded(&self) {
        assert!(
            self.f.is_homogeneous(),
            "graded routine called on a hypersurface with inhomogeneous equation"
        );
    }

    /// Monomial basis of the degree-t graded piece of S/(f): degree-t
    /// monomials not divisible by the leading monomial of f.
    pub fn monomial_basis(&self, t: u32) -> Vec<Monomial> {
        self.assert_graded();
        let (lt, _) = self.f.leading().expect("nonzero equation");
        monomials_of_degree(self.nvars(), t)
            .into_iter()
            .filter(|m| !lt.divides(m))
            .collect()
    }

    pub fn dim_at(&self, t: u32) -> usize {
        self.monomial_basis(t).len()
    }
}

/// The coefficient ring Witt and splitting machinery runs over: either a
/// free polynomial ring or a hypersurface quotient. Provides normal forms
/// and the p-th power structure in a uniform way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient {
    Free { field: PrimeField, nvars: usize },
    Hypersurface(HypersurfaceRing),
}

impl Ambient {
    pub fn free(field: PrimeField, nvars: usize) -> Self {
        Ambient::Free { field, nvars }
    }

    pub fn hypersurface(f: FpPoly) -> Result<Self, HypersurfaceError> {
        Ok(Ambient::Hypersurface(HypersurfaceRing::new(f)?))
    }

    pub fn field(&self) -> PrimeField {
        match self {
            Ambient::Free { field, .. } => *field,
            Ambient::Hypersurface(h) => h.field(),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            Ambient::Free { nvars, .. } => *nvars,
            Ambient::Hypersurface(h) => h.nvars(),
        }
    }

    pub fn zero(&self) -> FpPoly {
        FpPoly::zero(self.field(), self.nvars())
    }

    pub fn one(&self) -> FpPoly {
        FpPoly::one(self.field(), self.nvars())
    }

    pub fn nf(&self, g: &FpPoly) -> FpPoly {
        match self {
            Ambient::Free { .. } => g.clone(),
            Ambient::Hypersurface(h) => h.normal_form(g),
        }
    }

    pub fn is_zero_class(&self, g: &FpPoly) -> bool {
        self.nf(g).is_zero()
    }

    /// Monomial basis of the degree-t piece (all monomials for the free
    /// ring, normal-form monomials for a graded hypersurface).
    pub fn monomial_basis(&self, t: u32) -> Vec<Monomial> {
        match self {
            Ambient::Free { nvars, .. } => monomials_of_degree(*nvars, t),
            Ambient::Hypersurface(h) => h.monomial_basis(t),
        }
    }

    pub fn dim_at(&self, t: u32) -> usize {
        self.monomial_basis(t).len()
    }

    /// Splits a normal-form element g as (root, rest) with g = nf(root^p) +
    /// rest and rest containing no p-th power summand: for the free ring the
    /// split is term-by-term; for a graded hypersurface it is the projection
    /// onto the span of {nf(m^p)} along the echelon complement, computed
    /// degree by degree. The split is canonical for the fixed monomial order.
    pub fn pth_power_part(&self, g: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.field().p() as u32;
        match self {
            Ambient::Free { field, nvars } => {
                let mut root = FpPoly::zero(*field, *nvars);
                let mut rest = FpPoly::zero(*field, *nvars);
                for (m, c) in g.terms() {
                    match m.qth_root(p) {
                        Some(r) => root.add_term(r, c),
                        None => rest.add_term(m.clone(), c),
                    }
                }
                (root, rest)
            }
            Ambient::Hypersurface(h) => {
                h.assert_graded();
                let field = h.field();
                let mut root = FpPoly::zero(field, h.nvars());
                let mut rest = FpPoly::zero(field, h.nvars());
                let degrees: Vec<u32> = {
                    let mut ds: Vec<u32> =
                        g.terms().map(|(m, _)| m.degree()).collect();
                    ds.sort_unstable();
                    ds.dedup();
                    ds
                };
                for t in degrees {
                    let piece = g.homogeneous_component(t);
                    let (r, q) = self.graded_power_split(&piece, t);
                    root = root.add(&r);
                    rest = rest.add(&q);
                }
                (root, rest)
            }
        }
    }

    /// Degree-t piece of the projection, for a graded hypersurface. Returns
    /// (root, rest) with piece = nf(root^p) + rest.
    fn graded_power_split(&self, piece: &FpPoly, t: u32) -> (FpPoly, FpPoly) {
        let Ambient::Hypersurface(h) = self else {
            unreachable!("graded split is hypersurface-only")
        };
        let field = h.field();
        let p = field.p() as u32;
        if piece.is_zero() {
            return (FpPoly::zero(field, h.nvars()), piece.clone());
        }
        if t % p != 0 {
            return (FpPoly::zero(field, h.nvars()), piece.clone());
        }
        let target_basis = h.monomial_basis(t);
        let index: BTreeMap<Monomial, usize> =
            target_basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = target_basis.len();
        let roots = h.monomial_basis(t / p);
        // columns: nf(m^p) for root monomials m, then identity columns to
        // make the system always solvable; projection prefers power columns
        let mut mat = MatFp::zero(field, dim, roots.len() + dim);
        for (j, m) in roots.iter().enumerate() {
            let img = h.normal_form(&FpPoly::monomial(field, m.pow(p), 1));
            for (mm, c) in img.terms() {
                mat.set(index[mm], j, c);
            }
        }
        for i in 0..dim {
            mat.set(i, roots.len() + i, 1);
        }
        // solve [powers | id] * (a, b) = piece with the echelon preference
        // for power columns; gaussian elimination with rhs carried along
        let rhs = piece.coords(&index, dim);
        let mut aug = MatFp::zero(field, dim, roots.len() + dim + 1);
        for r in 0..dim {
            for c in 0..roots.len() + dim {
                aug.set(r, c, mat.get(r, c));
            }
            aug.set(r, roots.len() + dim, rhs[r]);
        }
        let pivots = aug.rref();
        let mut root = FpPoly::zero(field, h.nvars());
        let mut rest = FpPoly::zero(field, h.nvars());
        for (row, &pc) in pivots.iter().enumerate() {
            let v = aug.get(row, roots.len() + dim);
            if v == 0 {
                continue;
            }
            if pc < roots.len() {
                root.add_term(roots[pc].clone(), v);
            } else {
                rest.add_term(target_basis[pc - roots.len()].clone(), v);
            }
        }
        (root, rest)
    }

    /// Does the class of g lie in the subring of p-th powers?
    pub fn is_pth_power_class(&self, g: &FpPoly) -> bool {
        let (_, rest) = self.pth_power_part(&self.nf(g));
        rest.is_zero()
    }

    /// A representative h with nf(h^p) = nf(g), when one exists.
    pub fn pth_root_class(&self, g: &FpPoly) -> Option<FpPoly> {
        let (root, rest) = self.pth_power_part(&self.nf(g));
        if rest.is_zero() {
            Some(root)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn normal_form_reduces_leading_monomial() {
        // S = F_2[x, y], f = x^3 + y with LT = x^3: nf(x^3) = y
        let f2 = fp(2);
        let f = FpPoly::from_terms(f2, 2, [(m(&[3, 0]), 1), (m(&[0, 1]), 1)]);
        let h = HypersurfaceRing::new(f).unwrap();
        let g = FpPoly::from_terms(f2, 2, [(m(&[3, 0]), 1)]);
        assert_eq!(h.normal_form(&g), FpPoly::var(f2, 2, 1));
        // and over F_3, nf(x^3) = -y = 2y for f = x^3 + y
        let f3 = fp(3);
        let f = FpPoly::from_terms(f3, 2, [(m(&[3, 0]), 1), (m(&[0, 1]), 1)]);
        let h = HypersurfaceRing::new(f).unwrap();
        let g = FpPoly::from_terms(f3, 2, [(m(&[3, 0]), 1)]);
        assert_eq!(h.normal_form(&g), FpPoly::from_terms(f3, 2, [(m(&[0, 1]), 2)]));
    }

    #[test]
    fn normal_form_is_ring_homomorphism_on_samples() {
        let f3 = fp(3);
        // elliptic-like equation: x^3 + 2xz^2 + 2y^2z, homogeneous
        let f = FpPoly::from_terms(
            f3,
            3,
            [(m(&[3, 0, 0]), 1), (m(&[1, 0, 2]), 2), (m(&[0, 2, 1]), 2)],
        );
        let h = HypersurfaceRing::new(f.clone()).unwrap();
        let a = FpPoly::from_terms(f3, 3, [(m(&[2, 1, 0]), 2), (m(&[0, 0, 1]), 1)]);
        let b = FpPoly::from_terms(f3, 3, [(m(&[1, 1, 1]), 1), (m(&[0, 3, 0]), 2)]);
        let lhs = h.normal_form(&a.mul(&b));
        let rhs = h.normal_form(&h.normal_form(&a).mul(&h.normal_form(&b)));
        assert_eq!(lhs, rhs);
        // f itself is zero in the quotient
        assert!(h.is_zero_class(&f));
        assert!(h.is_zero_class(&f.mul(&a)));
    }

    #[test]
    fn graded_dimensions_match_hilbert_series() {
        // cubic curve in P^2: dim R_t = 3t for t >= 1 (Hilbert polynomial),
        // dims 1, 3, 6, 9, 12, ...
        let f2 = fp(2);
        let f = FpPoly::from_terms(
            f2,
            3,
            [(m(&[0, 2, 1]), 1), (m(&[1, 1, 1]), 1), (m(&[3, 0, 0]), 1), (m(&[0, 0, 3]), 1)],
        );
        let h = HypersurfaceRing::new(f).unwrap();
        assert_eq!(h.dim_at(0), 1);
        assert_eq!(h.dim_at(1), 3);
        assert_eq!(h.dim_at(2), 6);
        assert_eq!(h.dim_at(3), 9);
        assert_eq!(h.dim_at(4), 12);
        assert_eq!(h.dim_at(5), 15);
    }

    #[test]
    fn free_power_split_partitions_terms() {
        let f2 = fp(2);
        let amb = Ambient::free(f2, 2);
        // g = x^2 + x: root x, rest x
        let g = FpPoly::from_terms(f2, 2, [(m(&[2, 0]), 1), (m(&[1, 0]), 1)]);
        let (root, rest) = amb.pth_power_part(&g);
        assert_eq!(root, FpPoly::var(f2, 2, 0));
        assert_eq!(rest, FpPoly::var(f2, 2, 0));
        assert!(amb.is_pth_power_class(&g.sub(&FpPoly::var(f2, 2, 0))));
    }

    #[test]
    fn hypersurface_power_split_reassembles() {
        let f2 = fp(2);
        // ordinary-looking cubic over F_2
        let f = FpPoly::from_terms(
            f2,
            3,
            [(m(&[0, 2, 1]), 1), (m(&[1, 1, 1]), 1), (m(&[3, 0, 0]), 1), (m(&[0, 0, 3]), 1)],
        );
        let amb = Ambient::hypersurface(f).unwrap();
        let g = FpPoly::from_terms(
            f2,
            3,
            [(m(&[2, 2, 0]), 1), (m(&[1, 2, 1]), 1), (m(&[0, 0, 4]), 1)],
        );
        let gn = amb.nf(&g);
        let (root, rest) = amb.pth_power_part(&gn);
        let back = amb.nf(&root.frobenius()).add(&rest);
        assert_eq!(back, gn);
        // idempotence: rest has no power part left
        let (root2, rest2) = amb.pth_power_part(&rest);
        assert!(root2.is_zero());
        assert_eq!(rest2, rest);
    }

    #[test]
    fn pth_root_class_round_trip() {
        let f3 = fp(3);
        let f = FpPoly::from_terms(
            f3,
            3,
            [(m(&[3, 0, 0]), 1), (m(&[1, 0, 2]), 2), (m(&[0, 2, 1]), 2)],
        );
        let amb = Ambient::hypersurface(f).unwrap();
        let h = FpPoly::from_terms(f3, 3, [(m(&[1, 1, 0]), 2), (m(&[0, 0, 2]), 1)]);
        let cube = amb.nf(&h.frobenius());
        let root = amb.pth_root_class(&cube).expect("cube has a root");
        assert!(amb.is_zero_class(&root.frobenius().sub(&cube)));
    }
}
