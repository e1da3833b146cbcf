//! Lifts of Frobenius on a polynomial ring and the multiplicative map on
//! forms they induce.
//!
//! A lift sends x_i to x_i^p + p g_i, so its divided differential acts on
//! generators by dx_i -> x_i^{p-1} dx_i + d(g_i). Extending p-semilinearly
//! and multiplicatively gives a map Phi on all forms whose image consists
//! of cocycles and which induces the inverse Cartier operator on
//! cohomology; the zero lift recovers `cartier_inverse` on the nose.

use crate::fpoly::{FpPoly, Monomial, PrimeField};

use super::{DerhamError, Form};

#[derive(Debug, Clone)]
pub struct FrobeniusLift {
    field: PrimeField,
    gs: Vec<FpPoly>,
}

impl FrobeniusLift {
    pub fn new(field: PrimeField, gs: Vec<FpPoly>) -> Result<Self, DerhamError> {
        let nvars = gs.len();
        for g in &gs {
            if g.nvars() != nvars {
                return Err(DerhamError::LiftArityMismatch { got: g.nvars(), nvars });
            }
            assert_eq!(g.field().p(), field.p(), "field mismatch in lift data");
        }
        Ok(FrobeniusLift { field, gs })
    }

    /// The coordinate lift x_i -> x_i^p.
    pub fn standard(field: PrimeField, nvars: usize) -> Self {
        FrobeniusLift { field, gs: vec![FpPoly::zero(field, nvars); nvars] }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.gs.len()
    }

    pub fn perturbations(&self) -> &[FpPoly] {
        &self.gs
    }

    /// zeta(dx_i) = x_i^{p-1} dx_i + d(g_i), the divided differential of
    /// the lifted coordinate.
    pub fn zeta_dx(&self, i: usize) -> Form {
        let nvars = self.nvars();
        let p = self.field.p() as u32;
        let leading = FpPoly::monomial(self.field, Monomial::var(nvars, i).pow(p - 1), 1);
        Form::term(leading, &[i]).add(&Form::from_poly(self.gs[i].clone()).d())
    }

    /// Wedge of zeta over an increasing index tuple; the empty tuple gives
    /// the constant 0-form 1.
    pub fn zeta_wedge(&self, idx: &[usize]) -> Form {
        let mut acc = Form::from_poly(FpPoly::constant(self.field, self.nvars(), 1));
        for &i in idx {
            acc = acc.wedge(&self.zeta_dx(i));
        }
        acc
    }

    /// Phi(g dx_T) = g^p zeta(dx_{t_1}) ^ ... ^ zeta(dx_{t_k}).
    pub fn apply(&self, form: &Form) -> Form {
        assert_eq!(form.nvars(), self.nvars(), "form arity mismatch");
        let mut out = Form::zero(self.field, self.nvars(), form.form_degree());
        for (idx, g) in form.terms() {
            out = out.add(&self.zeta_wedge(idx).poly_mul(&g.frobenius()));
        }
        out
    }
}
