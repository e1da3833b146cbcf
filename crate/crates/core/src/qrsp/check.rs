//! Drivers for the filtered comparison: bijectivity of the splitting on
//! each graded window, multiplicativity, semilinearity of the canonical
//! map, independence of the canonical classes from the choice of lifts,
//! and the integer sign identity behind the collapse.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::fpoly::{monomials_of_degree, FpPoly, Monomial, PrimeField};
use crate::sample::Sampler;

use super::gamma::{lifted_class, GammaAlgebra};
use super::pd::{factorial, PdElement, PdRing, PerfectionRing};
use super::QrspError;

/// One graded window of the filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPieceCheck {
    pub level: usize,
    /// Rank of the divided power algebra in this weight.
    pub gamma_dim: usize,
    /// Rank of the corresponding window in the reduced envelope.
    pub graded_dim: usize,
    /// The splitting carries the weight basis bijectively onto the window.
    pub splitting_bijective: bool,
    /// The lift route lands exactly on the splitting of each basis class.
    pub canonical_matches_splitting: bool,
}

impl GradedPieceCheck {
    pub fn passed(&self) -> bool {
        self.gamma_dim == self.graded_dim
            && self.splitting_bijective
            && self.canonical_matches_splitting
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredIsoReport {
    pub p: u64,
    pub nvars: usize,
    pub precision: u32,
    pub level: usize,
    pub pieces: Vec<GradedPieceCheck>,
    /// Splitting of a product equals the product of splittings.
    pub multiplicative: bool,
    /// The canonical map twists fractional coefficients by Frobenius.
    pub semilinear: bool,
}

impl FilteredIsoReport {
    pub fn all_passed(&self) -> bool {
        self.pieces.iter().all(GradedPieceCheck::passed) && self.multiplicative && self.semilinear
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftIndependenceReport {
    pub p: u64,
    pub nvars: usize,
    pub precision: u32,
    pub level: usize,
    pub trials: usize,
    /// (trial, class) pairs inspected.
    pub classes_checked: usize,
    /// Perturbed representatives that leaked above their window.
    pub window_violations: usize,
    /// Perturbed representatives whose top graded piece moved.
    pub class_violations: usize,
}

impl LiftIndependenceReport {
    pub fn all_independent(&self) -> bool {
        self.window_violations == 0 && self.class_violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignIdentityReport {
    pub max_k: usize,
    pub primes: Vec<u64>,
    pub all_hold: bool,
}

/// Truncation depth that retains every index sum the gamma recursion on
/// perturbed lifts can produce. A term of gamma_k applied to a term of
/// index s has index at most k s + (k - 1) nvars (the pow carries), and
/// cross-term carries add at most nvars per factor, which bounds the
/// whole route by level (2p + (p + 1) nvars) <= (2 level (1 + nvars) + 1) p.
fn working_cap(level: usize, nvars: usize) -> usize {
    2 * level * (1 + nvars)
}

fn guarded_ring(
    field: PrimeField,
    nvars: usize,
    precision: u32,
    level: usize,
    cap: usize,
) -> Result<PdRing, QrspError> {
    let p = field.p();
    if (cap as u64 + 1).checked_mul(p).is_none_or(|c| c > u32::MAX as u64) {
        return Err(QrspError::LevelAboveCap { level, cap });
    }
    assert!(
        (p as u64).checked_pow(precision).is_some_and(|b| b <= u32::MAX as u64),
        "fractional precision too large"
    );
    Ok(PdRing::new(field, nvars, precision, cap))
}

fn pure_class(gamma: &GammaAlgebra, q: &[u32]) -> super::gamma::GammaElement {
    gamma.term(&Monomial::one(gamma.nvars()), q, 1)
}

/// Verify that the divided power algebra on the conormal module computes
/// the graded pieces of the reduced envelope through level `level`:
/// the splitting is a bijection on each window, it is multiplicative,
/// and the canonical (semilinear) map agrees with honest envelope
/// arithmetic on lifts.
pub fn verify_filtered_iso(
    field: PrimeField,
    nvars: usize,
    precision: u32,
    level: usize,
) -> Result<FilteredIsoReport, QrspError> {
    let p = field.p();
    let pd = guarded_ring(field, nvars, precision, level, level + nvars)?;
    let gamma = GammaAlgebra::new(field, nvars, precision);
    let perf = PerfectionRing::new(field, nvars, precision);
    let tautological: Vec<PdElement> = (0..nvars).map(|j| pd.generator(j)).collect();
    let fracs = pd.fractional_monomials();

    let mut pieces = Vec::new();
    for n in 0..=level {
        let comps = monomials_of_degree(nvars, n as u32);
        let window: BTreeSet<(Monomial, Vec<u32>)> = comps
            .iter()
            .flat_map(|q| {
                let dp: Vec<u32> = q.exps().iter().map(|&e| p as u32 * e).collect();
                fracs.iter().map(move |frac| (frac.clone(), dp.clone()))
            })
            .collect();

        let basis = gamma.basis_of_level(n);
        let mut images = BTreeSet::new();
        let mut bijective = true;
        for (frac, q) in &basis {
            let img = gamma.splitting(&pd, &gamma.term(frac, q, 1));
            let keys: Vec<_> = img.terms().map(|(f, dp, _)| (f.clone(), dp.to_vec())).collect();
            match keys.as_slice() {
                [key] if window.contains(key) => bijective &= images.insert(key.clone()),
                _ => bijective = false,
            }
        }
        bijective &= images.len() == window.len();

        let canonical_matches_splitting = comps.iter().all(|q| {
            lifted_class(&pd, q.exps(), &tautological)
                == gamma.splitting(&pd, &pure_class(&gamma, q.exps()))
        });

        pieces.push(GradedPieceCheck {
            level: n,
            gamma_dim: basis.len(),
            graded_dim: window.len(),
            splitting_bijective: bijective,
            canonical_matches_splitting,
        });
    }

    let mut multiplicative = true;
    for i in 0..=level {
        for j in 0..=level - i {
            for (fu, qu) in gamma.basis_of_level(i) {
                let u = gamma.term(&fu, &qu, 1);
                let su = gamma.splitting(&pd, &u);
                for (fv, qv) in gamma.basis_of_level(j) {
                    let v = gamma.term(&fv, &qv, 1);
                    let lhs = gamma.splitting(&pd, &gamma.mul(&u, &v));
                    let rhs = pd.reduce_mod_ideal(&pd.mul(&su, &gamma.splitting(&pd, &v)));
                    multiplicative &= lhs == rhs;
                }
            }
        }
    }

    let mut semilinear = true;
    for n in 0..=level {
        for q in monomials_of_degree(nvars, n as u32) {
            let route = lifted_class(&pd, q.exps(), &tautological);
            for frac in &fracs {
                let lhs = gamma.graded_piece_map(&pd, &gamma.term(frac, q.exps(), 1));
                let beta = FpPoly::monomial(field, frac.clone(), 1);
                let rhs = pd.reduce_mod_ideal(&pd.mul(&pd.embed(&perf.frobenius(&beta)), &route));
                semilinear &= lhs == rhs;
            }
        }
    }

    Ok(FilteredIsoReport {
        p,
        nvars,
        precision,
        level,
        pieces,
        multiplicative,
        semilinear,
    })
}

fn random_square_ideal_element(pd: &PdRing, rng: &mut Sampler) -> PdElement {
    let nvars = pd.nvars();
    let p = pd.field().p();
    let mut v = pd.zero();
    for _ in 0..2 {
        let mut product = pd.term(
            &Monomial::new((0..nvars).map(|_| rng.u64_below(pd.frac_bound() as u64) as u32).collect()),
            &vec![0; nvars],
            1 + rng.u64_below(p - 1),
        );
        for _ in 0..2 {
            product = pd.mul(&product, &pd.generator(rng.usize_below(nvars)));
        }
        v = pd.add(&v, &product);
    }
    v
}

/// Perturb each lift by a random element of I^2 and verify that the
/// canonical representative of a^[q] does not move at all: the
/// difference of two lifts lands in the ideal once the divided power
/// rules unwind, so the reduced representative is exactly invariant,
/// not merely invariant in its top graded piece.
pub fn lift_independence(
    field: PrimeField,
    nvars: usize,
    precision: u32,
    level: usize,
    trials: usize,
    seed: u64,
) -> Result<LiftIndependenceReport, QrspError> {
    let p = field.p();
    let pd = guarded_ring(field, nvars, precision, level, working_cap(level, nvars))?;
    let mut rng = Sampler::from_seed(seed);
    let tautological: Vec<PdElement> = (0..nvars).map(|j| pd.generator(j)).collect();

    let mut classes_checked = 0;
    let mut window_violations = 0;
    let mut class_violations = 0;
    for _ in 0..trials {
        let lifts: Vec<PdElement> = (0..nvars)
            .map(|j| pd.add(&pd.generator(j), &random_square_ideal_element(&pd, &mut rng)))
            .collect();
        for n in 1..=level {
            for q in monomials_of_degree(nvars, n as u32) {
                classes_checked += 1;
                let rep = lifted_class(&pd, q.exps(), &lifts);
                if rep.max_index_sum().unwrap_or(0) > p as u32 * n as u32 {
                    window_violations += 1;
                }
                if rep != lifted_class(&pd, q.exps(), &tautological) {
                    class_violations += 1;
                }
            }
        }
    }

    Ok(LiftIndependenceReport {
        p,
        nvars,
        precision,
        level,
        trials,
        classes_checked,
        window_violations,
        class_violations,
    })
}

/// Exact integer check of (pk)! / (p^k k!) = (-1)^k mod p for k up to
/// `max_k`: the quotient is an integer on the nose and its residue
/// alternates, which is what collapses the canonical representatives to
/// signed divided powers.
pub fn sign_identity_check(max_k: usize, primes: &[u64]) -> SignIdentityReport {
    let mut all_hold = true;
    for &p in primes {
        for k in 1..=max_k as u64 {
            let num = factorial(p * k);
            let den = BigUint::from(p).pow(k as u32) * factorial(k);
            let (quot, rem) = num.div_rem(&den);
            let residue = (quot % BigUint::from(p))
                .to_u64_digits()
                .first()
                .copied()
                .unwrap_or(0);
            let expected = if k % 2 == 0 { 1 } else { p - 1 };
            all_hold &= rem.is_zero() && residue == expected;
        }
    }
    SignIdentityReport { max_k, primes: primes.to_vec(), all_hold }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtered_iso_holds_for_the_small_presentations() {
        for &(p, nvars, precision, level) in
            &[(2u64, 1usize, 2u32, 3usize), (3, 1, 2, 3), (2, 2, 1, 2)]
        {
            let field = PrimeField::new(p).unwrap();
            let report = verify_filtered_iso(field, nvars, precision, level).unwrap();
            assert!(report.all_passed(), "p={p}, nvars={nvars}: {report:?}");
            assert_eq!(report.pieces.len(), level + 1);
        }
    }

    #[test]
    fn graded_dims_scale_with_fracs_and_compositions() {
        let field = PrimeField::new(2).unwrap();
        let report = verify_filtered_iso(field, 2, 1, 2).unwrap();
        // 4 fractional monomials; 1, 2, 3 compositions in weights 0, 1, 2
        let dims: Vec<usize> = report.pieces.iter().map(|c| c.graded_dim).collect();
        assert_eq!(dims, vec![4, 8, 12]);
        for piece in &report.pieces {
            assert_eq!(piece.gamma_dim, piece.graded_dim);
        }
    }

    #[test]
    fn perturbed_lifts_leave_classes_alone() {
        for &(p, nvars, precision, level) in &[(2u64, 1usize, 2u32, 3usize), (3, 1, 1, 2)] {
            let field = PrimeField::new(p).unwrap();
            let report = lift_independence(field, nvars, precision, level, 5, 99).unwrap();
            assert!(report.all_independent(), "p={p}: {report:?}");
            assert_eq!(report.classes_checked, 5 * level);
        }
    }

    #[test]
    fn perturbations_are_nonzero_where_the_square_ideal_survives() {
        // the independence checks are only as strong as the
        // perturbations: for p >= 3 or two variables the square of the
        // ideal is nonzero in the envelope, so the lifts genuinely move
        for &(p, nvars) in &[(3u64, 1usize), (2, 2), (5, 1)] {
            let field = PrimeField::new(p).unwrap();
            let pd = PdRing::new(field, nvars, 1, working_cap(2, nvars));
            let mut rng = Sampler::from_seed(7);
            let nonzero = (0..10)
                .filter(|_| !random_square_ideal_element(&pd, &mut rng).is_zero())
                .count();
            assert!(nonzero > 0, "p={p}, nvars={nvars}: every perturbation vanished");
        }
    }

    #[test]
    fn square_ideal_collapses_for_one_variable_at_two() {
        // x * x = 2 x^[2] = 0, so for (x) in one variable at p = 2 every
        // lift of the conormal class is the same element of the envelope
        // and independence holds for structural reasons
        let field = PrimeField::new(2).unwrap();
        let pd = PdRing::new(field, 1, 2, working_cap(3, 1));
        let mut rng = Sampler::from_seed(7);
        for _ in 0..10 {
            assert!(random_square_ideal_element(&pd, &mut rng).is_zero());
        }
    }

    #[test]
    fn oversized_levels_are_rejected() {
        let field = PrimeField::new(2).unwrap();
        let level = u32::MAX as usize;
        assert!(matches!(
            verify_filtered_iso(field, 1, 1, level),
            Err(QrspError::LevelAboveCap { .. })
        ));
        assert!(matches!(
            lift_independence(field, 1, 1, level, 1, 0),
            Err(QrspError::LevelAboveCap { .. })
        ));
    }

    #[test]
    fn sign_identity_exact_small_cases() {
        // 6!/(2^3 3!) = 15 = -1 mod 2, (2*3)!/(3^2 2!) = 40 = 1 mod 3
        let report = sign_identity_check(3, &[2, 3]);
        assert!(report.all_hold);
    }

    #[test]
    fn sign_identity_full_acceptance_range() {
        let report = sign_identity_check(20, &[2, 3, 5, 7]);
        assert!(report.all_hold);
    }
}
