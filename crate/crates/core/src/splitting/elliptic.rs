use crate::fpoly::{FpPoly, PrimeField};
use crate::sample::Sampler;

/// Points of P^2(F_p) as normalized representatives.
fn projective_plane(p: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::with_capacity((p * p + p + 1) as usize);
    for y in 0..p {
        for z in 0..p {
            pts.push([1, y, z]);
        }
    }
    for z in 0..p {
        pts.push([0, 1, z]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Number of rational points of the plane curve f = 0, by full enumeration.
/// Independent of everything Witt-related, which is the point: this is the
/// oracle the splitting criteria are measured against.
pub fn projective_point_count(f: &FpPoly) -> u64 {
    assert_eq!(f.nvars(), 3, "plane curves live in three variables");
    let p = f.field().p();
    projective_plane(p)
        .iter()
        .filter(|pt| f.eval(&pt[..]) == 0)
        .count() as u64
}

/// a_p = p + 1 - #C(F_p) for a smooth plane cubic.
pub fn trace_of_frobenius(f: &FpPoly) -> i64 {
    let p = f.field().p() as i64;
    p + 1 - projective_point_count(f) as i64
}

/// Supersingularity test via the trace: ordinary curves have a_p prime to p.
pub fn is_supersingular_cubic(f: &FpPoly) -> bool {
    let p = f.field().p() as i64;
    trace_of_frobenius(f).rem_euclid(p) == 0
}

/// Searches the rational points of the curve for one where the whole
/// Jacobian vanishes. `None` certifies smoothness only for irreducible
/// curves (a Weierstrass cubic in particular), where a singular point is
/// unique and therefore Galois-fixed.
pub fn rational_singular_point(f: &FpPoly) -> Option<[u64; 3]> {
    assert_eq!(f.nvars(), 3, "plane curves live in three variables");
    let p = f.field().p();
    let partials: Vec<FpPoly> = (0..3).map(|i| f.partial_derivative(i)).collect();
    projective_plane(p).into_iter().find(|pt| {
        f.eval(&pt[..]) == 0 && partials.iter().all(|g| g.eval(&pt[..]) == 0)
    })
}

/// Homogeneous Weierstrass cubic
/// y^2 z + a1 xyz + a3 y z^2 - x^3 - a2 x^2 z - a4 x z^2 - a6 z^3
/// with variables ordered (x, y, z).
pub fn weierstrass_cubic(field: PrimeField, a: [u64; 5]) -> FpPoly {
    let [a1, a2, a3, a4, a6] = a;
    let x = FpPoly::var(field, 3, 0);
    let y = FpPoly::var(field, 3, 1);
    let z = FpPoly::var(field, 3, 2);
    let mut f = y.pow(2).mul(&z);
    f = f.add(&x.mul(&y).mul(&z).scalar_mul(a1));
    f = f.add(&y.mul(&z.pow(2)).scalar_mul(a3));
    f = f.sub(&x.pow(3));
    f = f.sub(&x.pow(2).mul(&z).scalar_mul(a2));
    f = f.sub(&x.mul(&z.pow(2)).scalar_mul(a4));
    f = f.sub(&z.pow(3).scalar_mul(a6));
    f
}

/// Discriminant of the Weierstrass model, via the b-invariants. Computed
/// over the integers first; every intermediate fits comfortably in i64 for
/// the supported primes.
pub fn weierstrass_discriminant(field: PrimeField, a: [u64; 5]) -> u64 {
    let [a1, a2, a3, a4, a6] = a.map(|v| v as i64);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    debug_assert_eq!(4 * b8, b2 * b6 - b4 * b4);
    let disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    field.reduce_i64(disc)
}

/// Rejection-samples Weierstrass coefficients until the discriminant is a
/// unit, yielding a uniformly random smooth cubic in that family.
pub fn sample_smooth_weierstrass(field: PrimeField, sampler: &mut Sampler) -> FpPoly {
    loop {
        let a = [
            sampler.scalar(field),
            sampler.scalar(field),
            sampler.scalar(field),
            sampler.scalar(field),
            sampler.scalar(field),
        ];
        if weierstrass_discriminant(field, a) != 0 {
            return weierstrass_cubic(field, a);
        }
    }
}
