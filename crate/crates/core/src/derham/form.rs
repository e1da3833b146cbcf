//! Differential forms with polynomial coefficients.
//!
//! A k-form is stored as a map from strictly increasing index tuples
//! `[i_1 < ... < i_k]` to coefficient polynomials, so every bookkeeping
//! question about signs is concentrated in two tiny merge functions.

use std::collections::BTreeMap;

use crate::fpoly::{monomials_of_degree, FpPoly, Monomial, PrimeField};

/// Sign and result of inserting index `i` into the increasing tuple `idx`.
/// `None` when `i` already occurs (the wedge square is zero).
fn insert_index(i: usize, idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    if idx.contains(&i) {
        return None;
    }
    let pos = idx.iter().take_while(|&&t| t < i).count();
    let mut merged = Vec::with_capacity(idx.len() + 1);
    merged.extend_from_slice(&idx[..pos]);
    merged.push(i);
    merged.extend_from_slice(&idx[pos..]);
    Some((merged, pos % 2 == 1))
}

/// Merge two increasing tuples, counting the inversions that the shuffle
/// undoes. `None` when they share an index.
fn merge_indices(left: &[usize], right: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0usize;
    for &r in right {
        let above = left.iter().filter(|&&l| l > r).count();
        if left.contains(&r) {
            return None;
        }
        inversions += above;
    }
    let mut merged: Vec<usize> = left.iter().chain(right.iter()).copied().collect();
    merged.sort_unstable();
    Some((merged, inversions % 2 == 1))
}

/// All index tuples `T` of size `k` drawn from `pool`, in lexicographic
/// order.
fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k > pool.len() {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in pool.iter().enumerate() {
        for mut tail in combinations(&pool[i + 1..], k - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// A homogeneous-arity differential form `sum_T g_T dx_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    field: PrimeField,
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, FpPoly>,
}

impl Form {
    pub fn zero(field: PrimeField, nvars: usize, degree: usize) -> Self {
        Form { field, nvars, degree, terms: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn from_poly(g: FpPoly) -> Self {
        let mut form = Form::zero(g.field(), g.nvars(), 0);
        form.add_term(Vec::new(), g, false);
        form
    }

    /// The single term `g dx_{idx}`.
    pub fn term(g: FpPoly, idx: &[usize]) -> Self {
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "indices must be strictly increasing");
        assert!(idx.iter().all(|&i| i < g.nvars()), "index out of range");
        let mut form = Form::zero(g.field(), g.nvars(), idx.len());
        form.add_term(idx.to_vec(), g, false);
        form
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Arity k of the form.
    pub fn form_degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &FpPoly)> {
        self.terms.iter().map(|(idx, g)| (idx.as_slice(), g))
    }

    pub fn component(&self, idx: &[usize]) -> FpPoly {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| FpPoly::zero(self.field, self.nvars))
    }

    fn add_term(&mut self, idx: Vec<usize>, g: FpPoly, negate: bool) {
        if g.is_zero() {
            return;
        }
        assert_eq!(idx.len(), self.degree, "term arity mismatch");
        let g = if negate { g.neg() } else { g };
        let sum = match self.terms.remove(&idx) {
            None => g,
            Some(old) => old.add(&g),
        };
        if !sum.is_zero() {
            self.terms.insert(idx, sum);
        }
    }

    fn compatible(&self, other: &Form) {
        assert_eq!(self.field.p(), other.field.p(), "field mismatch");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn add(&self, other: &Form) -> Form {
        self.compatible(other);
        assert_eq!(self.degree, other.degree, "cannot add forms of different arity");
        let mut out = self.clone();
        for (idx, g) in &other.terms {
            out.add_term(idx.clone(), g.clone(), false);
        }
        out
    }

    pub fn neg(&self) -> Form {
        let mut out = Form::zero(self.field, self.nvars, self.degree);
        for (idx, g) in &self.terms {
            out.add_term(idx.clone(), g.neg(), false);
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: u64) -> Form {
        let mut out = Form::zero(self.field, self.nvars, self.degree);
        for (idx, g) in &self.terms {
            out.add_term(idx.clone(), g.scalar_mul(c), false);
        }
        out
    }

    /// Multiply every coefficient by the 0-form `g`.
    pub fn poly_mul(&self, g: &FpPoly) -> Form {
        let mut out = Form::zero(self.field, self.nvars, self.degree);
        for (idx, h) in &self.terms {
            out.add_term(idx.clone(), g.mul(h), false);
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Form {
        self.compatible(other);
        let mut out = Form::zero(self.field, self.nvars, self.degree + other.degree);
        for (s, g) in &self.terms {
            for (t, h) in &other.terms {
                if let Some((merged, negate)) = merge_indices(s, t) {
                    out.add_term(merged, g.mul(h), negate);
                }
            }
        }
        out
    }

    /// Exterior derivative. d(g dx_T) = sum_i (d_i g) dx_i ^ dx_T.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.field, self.nvars, self.degree + 1);
        for (idx, g) in &self.terms {
            for i in 0..self.nvars {
                let dg = g.partial_derivative(i);
                if dg.is_zero() {
                    continue;
                }
                if let Some((merged, negate)) = insert_index(i, idx) {
                    out.add_term(merged, dg, negate);
                }
            }
        }
        out
    }

    /// The multidegree of `x^a dx_T` is `a + 1_T`; both d and the Cartier
    /// operators act multidegree by multidegree, so this split makes every
    /// downstream question finite-dimensional.
    pub fn multidegree_pieces(&self) -> BTreeMap<Monomial, Form> {
        let mut pieces: BTreeMap<Monomial, Form> = BTreeMap::new();
        for (idx, g) in &self.terms {
            for (m, c) in g.terms() {
                let mut exps = m.exps().to_vec();
                for &i in idx {
                    exps[i] += 1;
                }
                let key = Monomial::new(exps);
                let piece = pieces
                    .entry(key)
                    .or_insert_with(|| Form::zero(self.field, self.nvars, self.degree));
                piece.add_term(idx.clone(), FpPoly::monomial(self.field, m.clone(), c), false);
            }
        }
        pieces
    }

    /// Total degree |a| + |T| of the largest term, or None for the zero
    /// form. d and wedge respect this grading.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .flat_map(|(idx, g)| {
                g.terms().map(move |(m, _)| m.degree() + idx.len() as u32)
            })
            .max()
    }
}

/// Basis of the k-forms in one multidegree: pairs `(T, a)` with
/// `a + 1_T = mdeg`, i.e. T ranges over k-subsets of the support.
pub(crate) fn basis_at(nvars: usize, k: usize, mdeg: &Monomial) -> Vec<(Vec<usize>, Monomial)> {
    assert_eq!(mdeg.exps().len(), nvars);
    let support: Vec<usize> =
        (0..nvars).filter(|&i| mdeg.exps()[i] >= 1).collect();
    combinations(&support, k)
        .into_iter()
        .map(|t| {
            let mut exps = mdeg.exps().to_vec();
            for &i in &t {
                exps[i] -= 1;
            }
            (t, Monomial::new(exps))
        })
        .collect()
}

/// Basis of the k-forms of one total degree |a| + |T|, the union of the
/// multidegree bases.
pub(crate) fn total_basis(nvars: usize, k: usize, total: u32) -> Vec<(Vec<usize>, Monomial)> {
    if (total as usize) < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mdeg in monomials_of_degree(nvars, total) {
        out.extend(basis_at(nvars, k, &mdeg));
    }
    out
}

/// Coordinates of a form concentrated in one multidegree with respect to
/// `basis_at`. Terms outside the basis are a caller bug.
pub(crate) fn coords_at(form: &Form, basis: &[(Vec<usize>, Monomial)]) -> Vec<u64> {
    let coords: Vec<u64> = basis
        .iter()
        .map(|(t, a)| form.component(t).coefficient(a))
        .collect();
    debug_assert_eq!(
        {
            let mut rebuilt = Form::zero(form.field(), form.nvars(), form.form_degree());
            for ((t, a), &c) in basis.iter().zip(&coords) {
                rebuilt = rebuilt.add(&Form::term(
                    FpPoly::monomial(form.field(), a.clone(), c),
                    t,
                ));
            }
            rebuilt
        },
        *form,
        "form has terms outside the requested multidegree"
    );
    coords
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpoly::parse_poly;
    use crate::sample::Sampler;

    const VARS: [&str; 3] = ["x", "y", "z"];

    fn poly(field: PrimeField, src: &str) -> FpPoly {
        parse_poly(src, field, &VARS).unwrap()
    }

    fn random_form(field: PrimeField, rng: &mut Sampler, degree: usize) -> Form {
        let mut form = Form::zero(field, 3, degree);
        let tuples: Vec<Vec<usize>> = combinations(&[0, 1, 2], degree);
        for idx in tuples {
            form = form.add(&Form::term(rng.poly(field, 3, 3, 4), &idx));
        }
        form
    }

    #[test]
    fn d_squared_vanishes() {
        let mut rng = Sampler::from_seed(11);
        for &p in &[2u64, 3, 5] {
            let field = PrimeField::new(p).unwrap();
            for degree in 0..3 {
                for _ in 0..8 {
                    let form = random_form(field, &mut rng, degree);
                    assert!(form.d().d().is_zero(), "d^2 != 0 at p={p}, k={degree}");
                }
            }
        }
    }

    #[test]
    fn d_satisfies_leibniz() {
        let mut rng = Sampler::from_seed(12);
        for &p in &[3u64, 5] {
            let field = PrimeField::new(p).unwrap();
            for (j, k) in [(0usize, 1usize), (1, 1), (1, 2), (0, 0)] {
                for _ in 0..6 {
                    let a = random_form(field, &mut rng, j);
                    let b = random_form(field, &mut rng, k);
                    let lhs = a.wedge(&b).d();
                    let mut rhs = a.d().wedge(&b);
                    let sign_term = a.wedge(&b.d());
                    rhs = if j % 2 == 1 { rhs.sub(&sign_term) } else { rhs.add(&sign_term) };
                    assert_eq!(lhs, rhs, "Leibniz fails at p={p}, ({j},{k})");
                }
            }
        }
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let mut rng = Sampler::from_seed(13);
        let field = PrimeField::new(5).unwrap();
        for (j, k) in [(1usize, 1usize), (1, 2), (0, 2), (2, 1)] {
            for _ in 0..6 {
                let a = random_form(field, &mut rng, j);
                let b = random_form(field, &mut rng, k);
                let forward = a.wedge(&b);
                let backward = b.wedge(&a);
                let expected = if (j * k) % 2 == 1 { backward.neg() } else { backward };
                assert_eq!(forward, expected);
            }
        }
    }

    #[test]
    fn wedge_signs_on_generators() {
        let field = PrimeField::new(5).unwrap();
        let one = FpPoly::constant(field, 3, 1);
        let dx = Form::term(one.clone(), &[0]);
        let dy = Form::term(one.clone(), &[1]);
        let dz = Form::term(one.clone(), &[2]);
        // dz ^ dx ^ dy = dx ^ dy ^ dz needs two transpositions
        let cyclic = dz.wedge(&dx).wedge(&dy);
        let sorted = dx.wedge(&dy).wedge(&dz);
        assert_eq!(cyclic, sorted);
        assert_eq!(dy.wedge(&dx), dx.wedge(&dy).neg());
        assert!(dx.wedge(&dx).is_zero());
    }

    #[test]
    fn d_on_a_known_two_form() {
        // d(x*y dz) = y dx^dz + x dy^dz
        let field = PrimeField::new(7).unwrap();
        let form = Form::term(poly(field, "x*y"), &[2]);
        let derived = form.d();
        assert_eq!(derived.component(&[0, 2]), poly(field, "y"));
        assert_eq!(derived.component(&[1, 2]), poly(field, "x"));
        assert!(derived.component(&[0, 1]).is_zero());
    }

    #[test]
    fn multidegree_split_reassembles() {
        let mut rng = Sampler::from_seed(14);
        let field = PrimeField::new(3).unwrap();
        for degree in 0..3 {
            let form = random_form(field, &mut rng, degree);
            let mut sum = Form::zero(field, 3, degree);
            for (mdeg, piece) in form.multidegree_pieces() {
                // every piece really is concentrated in its multidegree
                let pieces = piece.multidegree_pieces();
                assert_eq!(pieces.len(), 1);
                assert!(pieces.contains_key(&mdeg));
                sum = sum.add(&piece);
            }
            assert_eq!(sum, form);
        }
    }

    #[test]
    fn basis_enumerates_one_multidegree() {
        let field = PrimeField::new(3).unwrap();
        let mdeg = Monomial::new(vec![2, 1, 0]);
        // k=1: T in {{0},{1}}, so x y^? ... exactly x^1 y dx and x^2 dy
        let basis = basis_at(3, 1, &mdeg);
        assert_eq!(basis.len(), 2);
        let form = Form::term(poly(field, "x*y"), &[0]).add(&Form::term(poly(field, "2*x^2"), &[1]));
        assert_eq!(coords_at(&form, &basis), vec![1, 2]);
        // k=2 needs two support indices
        assert_eq!(basis_at(3, 2, &mdeg).len(), 1);
        assert_eq!(basis_at(3, 3, &mdeg).len(), 0);
    }
}
