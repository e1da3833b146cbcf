//! The divided power algebra on the conormal module of a presentation
//! and its two maps into the reduced envelope: the linear splitting on
//! the Frobenius-pullback basis and the semilinear canonical map, whose
//! honest computation runs through divided-power calculus on lifts.

use std::collections::BTreeMap;

use crate::fpoly::{monomials_of_degree, Monomial, PrimeField};

use super::pd::{binom_mod_p, PdElement, PdRing};

/// Element of the divided power algebra over R = P/I on the conormal
/// classes a_j: terms (fractional monomial, divided-power index q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaElement {
    terms: BTreeMap<(Monomial, Vec<u32>), u64>,
}

impl GammaElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &[u32], u64)> {
        self.terms.iter().map(|((frac, q), &c)| (frac, q.as_slice(), c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaAlgebra {
    field: PrimeField,
    nvars: usize,
    precision: u32,
}

impl GammaAlgebra {
    pub fn new(field: PrimeField, nvars: usize, precision: u32) -> Self {
        GammaAlgebra { field, nvars, precision }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn frac_bound(&self) -> u32 {
        (self.field.p() as u32).pow(self.precision)
    }

    pub fn zero(&self) -> GammaElement {
        GammaElement { terms: BTreeMap::new() }
    }

    pub fn one(&self) -> GammaElement {
        self.term(&Monomial::one(self.nvars), &vec![0; self.nvars], 1)
    }

    /// The single term c x^frac a^[q].
    pub fn term(&self, frac: &Monomial, q: &[u32], c: u64) -> GammaElement {
        assert_eq!(frac.nvars(), self.nvars, "fractional part arity mismatch");
        assert_eq!(q.len(), self.nvars, "index arity mismatch");
        assert!(
            frac.exps().iter().all(|&e| e < self.frac_bound()),
            "fractional exponent out of range"
        );
        let mut out = self.zero();
        self.accumulate(&mut out, frac.clone(), q.to_vec(), c);
        out
    }

    fn accumulate(&self, target: &mut GammaElement, frac: Monomial, q: Vec<u32>, c: u64) {
        let c = self.field.reduce(c);
        if c == 0 {
            return;
        }
        let key = (frac, q);
        let sum = match target.terms.remove(&key) {
            None => c,
            Some(old) => self.field.add(old, c),
        };
        if sum != 0 {
            target.terms.insert(key, sum);
        }
    }

    pub fn add(&self, a: &GammaElement, b: &GammaElement) -> GammaElement {
        let mut out = a.clone();
        for ((frac, q), &c) in &b.terms {
            self.accumulate(&mut out, frac.clone(), q.clone(), c);
        }
        out
    }

    /// Product: divided powers of the conormal classes combine with
    /// binomials, and a fractional carry means a factor of x_j, which is
    /// zero in R.
    pub fn mul(&self, a: &GammaElement, b: &GammaElement) -> GammaElement {
        let p = self.field.p();
        let bound = self.frac_bound();
        let mut out = self.zero();
        'terms: for ((fa, qa), &ca) in &a.terms {
            for ((fb, qb), &cb) in &b.terms {
                let mut c = self.field.mul(ca, cb);
                let mut q = Vec::with_capacity(self.nvars);
                let mut frac = Vec::with_capacity(self.nvars);
                for j in 0..self.nvars {
                    let s = fa.exps()[j] + fb.exps()[j];
                    if s >= bound {
                        continue 'terms;
                    }
                    frac.push(s);
                    c = self.field.mul(c, binom_mod_p((qa[j] + qb[j]) as u64, qa[j] as u64, p));
                    q.push(qa[j] + qb[j]);
                }
                if c != 0 {
                    self.accumulate(&mut out, Monomial::new(frac), q, c);
                }
            }
        }
        out
    }

    /// Basis of level n: every fractional monomial against every index
    /// of weight n.
    pub fn basis_of_level(&self, n: usize) -> Vec<(Monomial, Vec<u32>)> {
        let fracs = crate::fpoly::exponent_boxes(self.nvars, self.frac_bound());
        let mut out = Vec::new();
        for q in monomials_of_degree(self.nvars, n as u32) {
            for frac in &fracs {
                out.push((frac.clone(), q.exps().to_vec()));
            }
        }
        out
    }

    fn sign(&self, weight: u32) -> u64 {
        if weight % 2 == 0 {
            1
        } else {
            self.field.neg(1)
        }
    }

    /// The linear splitting on the pullback basis:
    /// x^beta a^[q] -> (-1)^|q| x^beta F^[pq].
    pub fn splitting(&self, pd: &PdRing, u: &GammaElement) -> PdElement {
        let p = self.field.p() as u32;
        let mut out = pd.zero();
        for ((frac, q), &c) in &u.terms {
            let weight: u32 = q.iter().sum();
            let dp: Vec<u32> = q.iter().map(|&qj| p * qj).collect();
            let coeff = self.field.mul(c, self.sign(weight));
            out = pd.add(&out, &pd.term(frac, &dp, coeff));
        }
        out
    }

    /// The canonical semilinear map: the fractional coefficient is
    /// twisted by Frobenius before splitting, and a twisted exponent
    /// that reaches an integer power of a variable dies in the quotient.
    pub fn graded_piece_map(&self, pd: &PdRing, u: &GammaElement) -> PdElement {
        let p = self.field.p() as u32;
        let bound = self.frac_bound();
        let mut out = pd.zero();
        'terms: for ((frac, q), &c) in &u.terms {
            let mut twisted = Vec::with_capacity(self.nvars);
            for &e in frac.exps() {
                if p * e >= bound {
                    continue 'terms;
                }
                twisted.push(p * e);
            }
            let weight: u32 = q.iter().sum();
            let dp: Vec<u32> = q.iter().map(|&qj| p * qj).collect();
            let coeff = self.field.mul(c, self.sign(weight));
            out = pd.add(&out, &pd.term(&Monomial::new(twisted), &dp, coeff));
        }
        out
    }
}

/// Representative of the canonical class of a^[q] computed honestly from
/// lifts of the conormal classes: prod_j gamma_(q_j)(-gamma_p(lift_j)),
/// reduced modulo the ideal. With the tautological lifts x_j this
/// collapses to (-1)^|q| F^[pq] because gamma_q(x^[p]) = x^[pq] on the
/// nose; the point of computing it this way is that perturbing the lifts
/// by elements of I^2 must not move the top graded piece.
pub fn lifted_class(pd: &PdRing, q: &[u32], lifts: &[PdElement]) -> PdElement {
    assert_eq!(q.len(), pd.nvars(), "index arity mismatch");
    assert_eq!(lifts.len(), pd.nvars(), "one lift per conormal class");
    let p = pd.field().p() as usize;
    let mut acc = pd.one();
    for (j, &qj) in q.iter().enumerate() {
        if qj == 0 {
            continue;
        }
        let inner = pd.neg(&pd.gamma(p, &lifts[j]));
        acc = pd.mul(&acc, &pd.gamma(qj as usize, &inner));
    }
    pd.reduce_mod_ideal(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn setup(p: u64, nvars: usize, precision: u32, cap: usize) -> (GammaAlgebra, PdRing) {
        let field = PrimeField::new(p).unwrap();
        (GammaAlgebra::new(field, nvars, precision), PdRing::new(field, nvars, precision, cap))
    }

    #[test]
    fn gamma_products_use_binomials_and_kill_carries() {
        let (g, _) = setup(3, 1, 1, 4);
        let a = g.term(&Monomial::new(vec![1]), &[1], 1);
        let b = g.term(&Monomial::new(vec![1]), &[1], 1);
        // fractional carry: 1/3 + 1/3 = 2/3 fine, but indices C(2,1) = 2
        assert_eq!(g.mul(&a, &b), g.term(&Monomial::new(vec![2]), &[2], 2));
        // 2/3 + 2/3 crosses 1, so the product dies in R
        let c = g.term(&Monomial::new(vec![2]), &[1], 1);
        assert!(g.mul(&c, &c).is_zero());
    }

    #[test]
    fn splitting_is_multiplicative() {
        // binom(pq + pq', pq) = binom(q + q', q) mod p makes the signs
        // and binomials line up
        let mut rng = Sampler::from_seed(61);
        for &(p, nvars, precision, level) in &[(2u64, 1usize, 2u32, 3usize), (3, 1, 1, 3), (2, 2, 1, 2)] {
            let (g, pd) = setup(p, nvars, precision, 2 * level + 1);
            for _ in 0..20 {
                let pick = |rng: &mut Sampler| {
                    let frac = Monomial::new(
                        (0..nvars).map(|_| rng.u64_below(g.frac_bound() as u64) as u32).collect(),
                    );
                    let q: Vec<u32> =
                        (0..nvars).map(|_| rng.u64_below(level as u64 + 1) as u32).collect();
                    let c = 1 + rng.u64_below(p - 1);
                    g.term(&frac, &q, c)
                };
                let u = pick(&mut rng);
                let v = pick(&mut rng);
                let lhs = g.splitting(&pd, &g.mul(&u, &v));
                let rhs = pd.reduce_mod_ideal(&pd.mul(&g.splitting(&pd, &u), &g.splitting(&pd, &v)));
                assert_eq!(lhs, rhs, "p={p}, nvars={nvars}");
            }
        }
    }

    #[test]
    fn lifted_class_matches_splitting_on_tautological_lifts() {
        for &(p, nvars, level) in &[(2u64, 1usize, 3usize), (3, 1, 3), (2, 2, 2), (3, 2, 2)] {
            let (g, pd) = setup(p, nvars, 1, 2 * level + 1);
            let lifts: Vec<PdElement> = (0..nvars).map(|j| pd.generator(j)).collect();
            for n in 1..=level {
                for q in monomials_of_degree(nvars, n as u32) {
                    let route = lifted_class(&pd, q.exps(), &lifts);
                    let direct =
                        g.splitting(&pd, &g.term(&Monomial::one(nvars), q.exps(), 1));
                    assert_eq!(route, direct, "p={p}, q={:?}", q.exps());
                }
            }
        }
    }

    #[test]
    fn graded_piece_map_twists_fractional_exponents() {
        // at precision 2 the twist sends x^(1/p^2) to x^(1/p); exponents
        // that reach 1 die
        let (g, pd) = setup(3, 1, 2, 3);
        let small = g.term(&Monomial::new(vec![1]), &[1], 2);
        // coefficient 2 picks up the sign of weight 1: 2 * (-1) = 1 mod 3
        let expect = pd.term(&Monomial::new(vec![3]), &[3], 1);
        assert_eq!(g.graded_piece_map(&pd, &small), expect);
        let dies = g.term(&Monomial::new(vec![3]), &[1], 1);
        assert!(g.graded_piece_map(&pd, &dies).is_zero());
        // the linear splitting keeps both
        assert!(!g.splitting(&pd, &dies).is_zero());
    }

    #[test]
    fn level_basis_counts_fracs_times_compositions() {
        let (g, _) = setup(2, 2, 1, 3);
        // 4 fractional monomials, 3 compositions of 2
        assert_eq!(g.basis_of_level(2).len(), 12);
    }
}
