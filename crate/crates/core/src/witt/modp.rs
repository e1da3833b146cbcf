use crate::fpoly::{exponent_boxes, FpPoly, Monomial};

use super::vector::{WittRing, WittVector};

/// Class operations in W_n(R)/p.
///
/// The subgroup pW_n(R) is exactly the set of vectors with zero first
/// coordinate and p-th power coordinates everywhere else (image of the
/// closed-form multiplication by p, componentwise independent), so zeroness
/// of a class reduces to coordinatewise checks: no search is involved.
impl WittRing {
    pub fn is_zero_class(&self, a: &WittVector) -> bool {
        if !a.comp(0).is_zero() {
            return false;
        }
        (1..self.n()).all(|i| self.ambient().is_pth_power_class(a.comp(i)))
    }

    pub fn class_equal(&self, a: &WittVector, b: &WittVector) -> bool {
        self.is_zero_class(&self.sub(a, b))
    }

    /// Canonical class representative: subtracts elements of pW_n(R) until
    /// no coordinate above the first retains a p-th power part. One low-to-
    /// high pass suffices because subtracting a vector supported in
    /// coordinates >= i leaves coordinates < i untouched.
    pub fn canonical_form(&self, a: &WittVector) -> WittVector {
        let mut v = a.clone();
        for i in 1..self.n() {
            let (root, _) = self.ambient().pth_power_part(v.comp(i));
            if root.is_zero() {
                continue;
            }
            let mut comps: Vec<FpPoly> = (0..self.n()).map(|_| self.ambient().zero()).collect();
            comps[i] = self.ambient().nf(&root.frobenius());
            let shift = self.from_comps(comps);
            v = self.sub(&v, &shift);
        }
        v
    }
}

/// One generator V^level([x^exps]) of the mod-p Witt module.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisEntry {
    pub level: usize,
    pub exps: Monomial,
}

impl BasisEntry {
    /// Module degree times p^n, kept integral: |exps| * p^(n-1-level).
    pub fn scaled_degree(&self, p: u64, n: usize) -> u64 {
        self.exps.degree() as u64 * p.pow((n - 1 - self.level) as u32)
    }
}

/// The free basis of F_* W_n(R)/p over a polynomial ring R in d variables:
/// level 0 contributes [x^e] for e in [0, p)^d, level i >= 1 contributes
/// V^i([x^e]) for e in [0, p^(i+1))^d with some coordinate not divisible by
/// p (fully divisible e give classes in pW). Cardinality p^(nd).
#[derive(Debug, Clone)]
pub struct ModuleBasis {
    p: u64,
    n: usize,
    d: usize,
    entries: Vec<BasisEntry>,
}

impl ModuleBasis {
    pub fn new(p: u64, n: usize, d: usize) -> Self {
        let mut entries = Vec::new();
        for level in 0..n {
            let bound = (p as u32).pow(level as u32 + 1);
            for e in exponent_boxes(d, bound) {
                if level > 0 && e.is_qth_power(p as u32) {
                    continue;
                }
                entries.push(BasisEntry { level, exps: e });
            }
        }
        ModuleBasis { p, n, d, entries }
    }

    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, level: usize, exps: &Monomial) -> Option<usize> {
        self.entries
            .iter()
            .position(|b| b.level == level && &b.exps == exps)
    }

    /// The generator itself, as a Witt vector.
    pub fn entry_vector(&self, ring: &WittRing, idx: usize) -> WittVector {
        let entry = &self.entries[idx];
        let field = ring.ambient().field();
        let mono = FpPoly::monomial(field, entry.exps.clone(), 1);
        let mut comps: Vec<FpPoly> = (0..self.n).map(|_| ring.ambient().zero()).collect();
        comps[entry.level] = mono;
        ring.from_comps(comps)
    }

    /// Coefficients of the class of w in this basis; exact on the nose for
    /// the expression produced by [`ModuleBasis::recompose`]. Requires the
    /// ring to be over the free ambient with matching parameters.
    pub fn express(&self, ring: &WittRing, w: &WittVector) -> Vec<FpPoly> {
        assert!(
            matches!(ring.ambient(), crate::fpoly::Ambient::Free { .. }),
            "module basis expression requires a free polynomial ambient"
        );
        assert_eq!(ring.p(), self.p);
        assert_eq!(ring.n(), self.n);
        assert_eq!(ring.ambient().nvars(), self.d);
        let mut out = vec![ring.ambient().zero(); self.entries.len()];
        for (level, exps, coeff) in express_class(ring, w) {
            match self.position(level, &exps) {
                Some(idx) => out[idx] = out[idx].add(&coeff),
                None => {
                    // only residues with every exponent divisible by p are
                    // outside the basis, and those classes vanish
                    assert!(
                        level > 0 && exps.is_qth_power(self.p as u32),
                        "expression produced a residue outside the basis"
                    );
                }
            }
        }
        out
    }

    /// sum_idx coeff_idx . entry_idx, where a coefficient r acts on
    /// V^i([x^e]) as V^i([r^(p^(i+1)) x^e]).
    pub fn recompose(&self, ring: &WittRing, coeffs: &[FpPoly]) -> WittVector {
        assert_eq!(coeffs.len(), self.entries.len(), "coefficient count mismatch");
        let slots: Vec<(usize, FpPoly)> = self
            .entries
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(entry, c)| {
                let content = c.q_power(entry.level as u32 + 1).mul_monomial(&entry.exps, 1);
                (entry.level, content)
            })
            .collect();
        ring.sum_of_slots(&slots)
    }
}

/// Decomposes the class of w as sum over levels of V^level([g^(p^(level+1))
/// x^e]) by reading q-power expansions off the first coordinate, subtracting
/// an honest Witt sum, and dividing by Verschiebung. Works over any ambient;
/// over a quotient the expansion applies to the normal-form representative.
/// Returns (level, residue exponent, coefficient g) triples.
pub fn express_class(ring: &WittRing, w: &WittVector) -> Vec<(usize, Monomial, FpPoly)> {
    let n = ring.n();
    let mut out = Vec::new();
    let mut u = w.clone();
    let mut current = ring.clone();
    for level in 0..n {
        let q_exp = level as u32 + 1;
        let parts = u.comp(0).q_basis_decompose(q_exp);
        let mut slots = Vec::with_capacity(parts.len());
        for (e, g) in &parts {
            out.push((level, e.clone(), g.clone()));
            slots.push((0usize, g.q_power(q_exp).mul_monomial(e, 1)));
        }
        let subtractor = current.sum_of_slots(&slots);
        u = current.sub(&u, &subtractor);
        assert!(
            u.comp(0).is_zero(),
            "first coordinate must vanish after subtracting its own expansion"
        );
        if level + 1 < n {
            u = current.v_divide(&u);
            current = current.shorten();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpoly::{Ambient, PrimeField};
    use crate::sample::Sampler;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn free_ring(p: u64, n: usize, d: usize) -> WittRing {
        WittRing::new(Ambient::free(fp(p), d), n)
    }

    #[test]
    fn zero_class_characterization() {
        let r = free_ring(2, 2, 1);
        let field = fp(2);
        let x = FpPoly::var(field, 1, 0);
        let sq = r.from_comps(vec![FpPoly::zero(field, 1), x.pow(2)]);
        assert!(r.is_zero_class(&sq));
        let lin = r.from_comps(vec![FpPoly::zero(field, 1), x.clone()]);
        assert!(!r.is_zero_class(&lin));
        let head = r.from_comps(vec![x.clone(), FpPoly::zero(field, 1)]);
        assert!(!r.is_zero_class(&head));
    }

    #[test]
    fn multiples_of_p_are_zero_classes() {
        for (p, n) in [(2u64, 2usize), (3, 2), (2, 3), (5, 2)] {
            let r = free_ring(p, n, 2);
            let mut s = Sampler::from_seed(17 + p + n as u64);
            for _ in 0..10 {
                let a = r.from_comps((0..n).map(|_| s.poly(fp(p), 2, 2, 3)).collect());
                assert!(r.is_zero_class(&r.mul_by_p(&a)), "p*a = 0 mod p at p={p} n={n}");
                let b = r.from_comps((0..n).map(|_| s.poly(fp(p), 2, 2, 3)).collect());
                assert!(
                    r.class_equal(&a, &r.add(&a, &r.mul_by_p(&b))),
                    "class unchanged by p-multiples"
                );
            }
        }
    }

    #[test]
    fn canonical_form_strips_power_parts() {
        let r = free_ring(2, 2, 1);
        let field = fp(2);
        let x = FpPoly::var(field, 1, 0);
        let v = r.from_comps(vec![x.clone(), x.pow(2).add(&x)]);
        let c = r.canonical_form(&v);
        assert_eq!(c.comps(), &[x.clone(), x.clone()]);
        assert!(r.class_equal(&v, &c));
        // canonical forms have no power part above coordinate 0
        for i in 1..r.n() {
            let (root, _) = r.ambient().pth_power_part(c.comp(i));
            assert!(root.is_zero());
        }
    }

    #[test]
    fn canonical_form_is_class_invariant_representative() {
        let r = free_ring(3, 3, 1);
        let field = fp(3);
        let mut s = Sampler::from_seed(5);
        for _ in 0..8 {
            let a = r.from_comps((0..3).map(|_| s.poly(field, 1, 4, 3)).collect());
            let b = r.from_comps((0..3).map(|_| s.poly(field, 1, 2, 2)).collect());
            let shifted = r.add(&a, &r.mul_by_p(&b));
            assert_eq!(r.canonical_form(&a), r.canonical_form(&shifted));
        }
    }

    #[test]
    fn basis_cardinality_is_p_to_nd() {
        for (p, n, d) in [(2u64, 2usize, 1usize), (2, 2, 2), (3, 2, 1), (2, 3, 1)] {
            let basis = ModuleBasis::new(p, n, d);
            assert_eq!(basis.len() as u64, p.pow((n * d) as u32), "p={p} n={n} d={d}");
        }
    }

    #[test]
    fn express_splits_teichmuller_plus_shift() {
        // (x, x^3) = [x] + V([x^3]) at p=2, n=2
        let r = free_ring(2, 2, 1);
        let field = fp(2);
        let x = FpPoly::var(field, 1, 0);
        let basis = ModuleBasis::new(2, 2, 1);
        let w = r.from_comps(vec![x.clone(), x.pow(3)]);
        let coeffs = basis.express(&r, &w);
        for (entry, c) in basis.entries().iter().zip(&coeffs) {
            let expected = match (entry.level, entry.exps.exps()) {
                (0, [1]) | (1, [3]) => FpPoly::one(field, 1),
                _ => FpPoly::zero(field, 1),
            };
            assert_eq!(c, &expected, "entry {:?}", entry);
        }
    }

    #[test]
    fn express_drops_verschiebung_of_powers() {
        // (0, x^2) is the zero class; (0, x^2 + x) = V([x])
        let r = free_ring(2, 2, 1);
        let field = fp(2);
        let x = FpPoly::var(field, 1, 0);
        let basis = ModuleBasis::new(2, 2, 1);
        let zero_class = r.from_comps(vec![FpPoly::zero(field, 1), x.pow(2)]);
        assert!(r.is_zero_class(&zero_class));
        assert!(basis.express(&r, &zero_class).iter().all(FpPoly::is_zero));

        let v_of_x = r.from_comps(vec![FpPoly::zero(field, 1), x.pow(2).add(&x)]);
        let coeffs = basis.express(&r, &v_of_x);
        for (entry, c) in basis.entries().iter().zip(&coeffs) {
            let expected = match (entry.level, entry.exps.exps()) {
                (1, [1]) => FpPoly::one(field, 1),
                _ => FpPoly::zero(field, 1),
            };
            assert_eq!(c, &expected, "entry {:?}", entry);
        }
    }

    #[test]
    fn express_length_one_reads_p_basis() {
        // class of [x^2] at p=2, n=1: coefficient x on the entry [1]
        let r = free_ring(2, 1, 1);
        let field = fp(2);
        let x = FpPoly::var(field, 1, 0);
        let basis = ModuleBasis::new(2, 1, 1);
        let w = r.teichmuller(&x.pow(2));
        let coeffs = basis.express(&r, &w);
        for (entry, c) in basis.entries().iter().zip(&coeffs) {
            let expected = match (entry.level, entry.exps.exps()) {
                (0, [0]) => x.clone(),
                _ => FpPoly::zero(field, 1),
            };
            assert_eq!(c, &expected);
        }
    }

    #[test]
    fn express_recompose_round_trips() {
        for (p, n, d) in [(2u64, 2usize, 1usize), (2, 2, 2), (3, 2, 1), (2, 3, 1)] {
            let r = free_ring(p, n, d);
            let field = fp(p);
            let basis = ModuleBasis::new(p, n, d);
            let mut s = Sampler::from_seed(91 + p * 10 + n as u64);
            for _ in 0..5 {
                // class -> coefficients -> class
                let w = r.from_comps((0..n).map(|_| s.poly(field, d, 3, 3)).collect());
                let coeffs = basis.express(&r, &w);
                let back = basis.recompose(&r, &coeffs);
                assert!(r.class_equal(&w, &back), "class round trip p={p} n={n} d={d}");

                // coefficients -> class -> coefficients, exactly
                let coeffs: Vec<FpPoly> =
                    (0..basis.len()).map(|_| s.poly(field, d, 2, 2)).collect();
                let w = basis.recompose(&r, &coeffs);
                let read = basis.express(&r, &w);
                assert_eq!(read, coeffs, "coefficient round trip p={p} n={n} d={d}");
            }
        }
    }

    #[test]
    fn restriction_section_factor_frobenius() {
        for (p, n) in [(2u64, 2usize), (3, 2), (5, 2), (2, 3)] {
            let r = free_ring(p, n, 1);
            let field = fp(p);
            let mut s = Sampler::from_seed(p + 100 * n as u64);
            let short = r.shorten();
            for _ in 0..10 {
                let a = r.from_comps((0..n).map(|_| s.poly(field, 1, 2, 3)).collect());
                // F(a) and [restriction(a)^p] agree in W_(n-1)(R)/p
                let fa = r.frobenius(&a);
                let sra = short.section(&r.restriction(&a));
                assert!(short.class_equal(&fa, &sra), "F = s . r mod p at p={p} n={n}");
            }
        }
    }
}
