//! The inverse Cartier operator, its left inverse on closed forms, and
//! the per-multidegree cohomology dimensions that calibrate both.

use crate::fpoly::{FpPoly, Monomial, PrimeField};
use crate::linalg::{IncrementalSystem, MatFp};

use super::form::{basis_at, coords_at};
use super::{DerhamError, Form};

/// Inverse Cartier operator, on generators
/// `C^{-1}(g dx_T) = g^p prod_{i in T} x_i^{p-1} dx_T`.
///
/// The image is always closed: the coefficient of dx_T is a p-th power
/// times the critical monomial, so differentiating in a T-variable
/// produces a repeated dx and differentiating elsewhere kills the p-th
/// power.
pub fn cartier_inverse(form: &Form) -> Form {
    let field = form.field();
    let p = field.p();
    let mut out = Form::zero(field, form.nvars(), form.form_degree());
    for (idx, g) in form.terms() {
        let mut exps = vec![0u32; form.nvars()];
        for &i in idx {
            exps[i] = (p - 1) as u32;
        }
        let critical = FpPoly::monomial(field, Monomial::new(exps), 1);
        out = out.add(&Form::term(g.frobenius().mul(&critical), idx));
    }
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Combinatorial dimension of H^k of the de Rham complex in one
/// multidegree: zero unless the multidegree is p times some c, in which
/// case the classes of x^{pc - 1_T} dx_T for k-subsets T of supp(c) form
/// a basis.
pub fn cohomology_dim_oracle(p: u64, k: usize, mdeg: &Monomial) -> usize {
    let p = p as u32;
    if mdeg.exps().iter().any(|&e| e % p != 0) {
        return 0;
    }
    let support = mdeg.exps().iter().filter(|&&e| e > 0).count();
    binomial(support, k)
}

/// Matrix of d from the k-forms to the (k+1)-forms of one multidegree,
/// columns indexed by `basis_at(nvars, k, mdeg)`.
fn d_matrix(field: PrimeField, nvars: usize, k: usize, mdeg: &Monomial) -> MatFp {
    let source = basis_at(nvars, k, mdeg);
    let target = basis_at(nvars, k + 1, mdeg);
    let mut mat = MatFp::zero(field, target.len(), source.len());
    for (j, (t, a)) in source.iter().enumerate() {
        let image = Form::term(FpPoly::monomial(field, a.clone(), 1), t).d();
        for (r, c) in coords_at(&image, &target).into_iter().enumerate() {
            mat.set(r, j, c);
        }
    }
    mat
}

/// Honest dimension of H^k in one multidegree: kernel of d minus the
/// rank of the incoming d.
pub fn cohomology_dim(field: PrimeField, nvars: usize, k: usize, mdeg: &Monomial) -> usize {
    let source = basis_at(nvars, k, mdeg).len();
    let cocycles = d_matrix(field, nvars, k, mdeg).kernel_basis().len();
    let incoming_rank = if k == 0 {
        0
    } else {
        let prev = basis_at(nvars, k - 1, mdeg).len();
        prev - d_matrix(field, nvars, k - 1, mdeg).kernel_basis().len()
    };
    debug_assert!(cocycles <= source);
    cocycles - incoming_rank
}

/// Cartier operator: the left inverse of `cartier_inverse` on closed
/// forms, killing exact ones.
///
/// Per multidegree pc the cocycles split as C^{-1}(forms of multidegree
/// c) plus coboundaries, so the image is read off from one small linear
/// solve; cocycles in multidegrees outside pZ^n are exact and map to
/// zero.
pub fn cartier(form: &Form) -> Result<Form, DerhamError> {
    let differential = form.d();
    if let Some((mdeg, _)) = differential.multidegree_pieces().into_iter().next() {
        return Err(DerhamError::NotClosed { multidegree: mdeg.exps().to_vec() });
    }
    let field = form.field();
    let nvars = form.nvars();
    let k = form.form_degree();
    let p = field.p() as u32;
    let mut out = Form::zero(field, nvars, k);
    for (mdeg, piece) in form.multidegree_pieces() {
        if mdeg.exps().iter().any(|&e| e % p != 0) {
            continue;
        }
        let source_mdeg = Monomial::new(mdeg.exps().iter().map(|&e| e / p).collect());
        let source_basis = basis_at(nvars, k, &source_mdeg);
        let boundary_basis =
            if k == 0 { Vec::new() } else { basis_at(nvars, k - 1, &mdeg) };
        let target_basis = basis_at(nvars, k, &mdeg);

        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(source_basis.len() + boundary_basis.len());
        for (t, a) in &source_basis {
            let image = cartier_inverse(&Form::term(FpPoly::monomial(field, a.clone(), 1), t));
            cols.push(coords_at(&image, &target_basis));
        }
        for (t, a) in &boundary_basis {
            let image = Form::term(FpPoly::monomial(field, a.clone(), 1), t).d();
            cols.push(coords_at(&image, &target_basis));
        }
        let rhs = coords_at(&piece, &target_basis);

        let mut sys = IncrementalSystem::new(field, cols.len());
        for (r, &b) in rhs.iter().enumerate() {
            sys.add_row(cols.iter().map(|c| c[r]).collect(), b);
        }
        let sol = sys
            .particular_solution()
            .expect("closed forms lie in the span of Cartier images and coboundaries");
        for (j, (t, a)) in source_basis.iter().enumerate() {
            if sol[j] != 0 {
                out = out.add(&Form::term(FpPoly::monomial(field, a.clone(), sol[j]), t));
            }
        }
    }
    Ok(out)
}
