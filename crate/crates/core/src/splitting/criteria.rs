use num_integer::binomial;

use crate::fpoly::{divide, FpPoly, Monomial, PrimeField};

use super::SplittingError;

/// Coefficient of (x_0 ... x_d)^(p-1) in f^(p-1) for a hypersurface of
/// degree equal to its variable count. Nonzero exactly when the cone is
/// F-split: in this degree range the monomial is the only candidate below
/// the componentwise p-th power ideal.
pub fn cy_coefficient(f: &FpPoly) -> Result<u64, SplittingError> {
    if f.is_zero() || !f.is_homogeneous() {
        return Err(SplittingError::NotHomogeneous);
    }
    let nvars = f.nvars();
    let degree = f.total_degree().expect("nonzero");
    if degree as usize != nvars {
        return Err(SplittingError::DegreeMismatch { degree, nvars });
    }
    let p = f.field().p() as u32;
    let power = f.pow(p - 1);
    Ok(power.coefficient(&Monomial::new(vec![p - 1; nvars])))
}

/// f^(p-1) escapes the ideal (x_0^p, ..., x_d^p) iff some monomial keeps
/// every exponent at most p-1.
pub fn fedder_membership(f: &FpPoly) -> bool {
    let p = f.field().p() as u32;
    f.pow(p - 1)
        .terms()
        .any(|(m, _)| m.exps().iter().all(|&e| e <= p - 1))
}

/// A splitting section for the standard smooth quadric in P^dim, written
/// as sigma = (f * cofactor)^(p-1) with a square-free monomial cofactor.
#[derive(Debug, Clone)]
pub struct QuadricSplitting {
    pub f: FpPoly,
    pub sigma: FpPoly,
    pub cofactor: FpPoly,
    /// coefficient of (x_0 ... x_dim)^(p-1) in sigma; nonzero by design
    pub key_coefficient: u64,
    /// the same coefficient read off f^(p-1) alone: degree forces zero
    pub power_coefficient: u64,
    /// closed form binom(p-1, (p-1)/2) for the diagonal form at odd p
    pub expected_diagonal: Option<u64>,
}

/// Builds the standard smooth quadric f in dim+1 variables together with
/// the section polynomial sigma. f^(p-1) itself has degree 2(p-1), too
/// small to reach the full square-free target in dim >= 2; the monomial
/// cofactor supplies exactly the missing variables.
pub fn quadric_splitting(
    field: PrimeField,
    dim: usize,
) -> Result<QuadricSplitting, SplittingError> {
    if !(2..=4).contains(&dim) {
        return Err(SplittingError::UnsupportedDimension(dim));
    }
    let nvars = dim + 1;
    let p = field.p();
    let (f, hole) = standard_quadric(field, dim);
    // cofactor covers every variable the hole monomial misses
    let all = Monomial::new(vec![1; nvars]);
    let cof_mono = hole.div_exact(&all);
    let cofactor = FpPoly::monomial(field, cof_mono, 1);
    let sigma = f.mul(&cofactor).pow(p as u32 - 1);
    let target = Monomial::new(vec![p as u32 - 1; nvars]);
    let key_coefficient = sigma.coefficient(&target);
    let power_coefficient = f.pow(p as u32 - 1).coefficient(&target);
    let expected_diagonal = if p % 2 == 1 {
        Some(field.reduce(binomial(p - 1, (p - 1) / 2)))
    } else {
        None
    };
    Ok(QuadricSplitting {
        f,
        sigma,
        cofactor,
        key_coefficient,
        power_coefficient,
        expected_diagonal,
    })
}

/// The standard smooth quadric and a square-free monomial of f whose
/// complement serves as the section cofactor. Odd p takes the diagonal
/// form; p = 2 needs the hyperbolic one (squares of linear forms are
/// degenerate there).
fn standard_quadric(field: PrimeField, dim: usize) -> (FpPoly, Monomial) {
    let nvars = dim + 1;
    let var = |i: usize| FpPoly::var(field, nvars, i);
    if field.p() != 2 {
        let mut f = FpPoly::zero(field, nvars);
        for i in 0..nvars {
            f = f.add(&var(i).pow(2));
        }
        let mut hole = vec![0u32; nvars];
        hole[0] = 1;
        hole[1] = 1;
        return (f, Monomial::new(hole));
    }
    let mut f = FpPoly::zero(field, nvars);
    let mut hole = vec![0u32; nvars];
    if dim % 2 == 1 {
        for i in (0..nvars).step_by(2) {
            f = f.add(&var(i).mul(&var(i + 1)));
        }
        hole[0] = 1;
        hole[1] = 1;
    } else {
        f = var(0).pow(2);
        for i in (1..nvars).step_by(2) {
            f = f.add(&var(i).mul(&var(i + 1)));
        }
        hole[1] = 1;
        hole[2] = 1;
    }
    (f, Monomial::new(hole))
}

/// Exact divisibility check: sigma = f^(p-1) * q with zero remainder.
pub fn divides_exactly(f_power: &FpPoly, sigma: &FpPoly) -> Option<FpPoly> {
    let (q, r) = divide(sigma, f_power);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpoly::parse_poly;
    use crate::sample::Sampler;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn cy_coefficient_of_fixed_cubics() {
        let field = fp(2);
        let vars = &["x", "y", "z"];
        let ordinary = parse_poly("y^2*z + x*y*z + x^3 + z^3", field, vars).unwrap();
        assert_eq!(cy_coefficient(&ordinary).unwrap(), 1);
        let supersingular = parse_poly("y^2*z + y*z^2 + x^3", field, vars).unwrap();
        assert_eq!(cy_coefficient(&supersingular).unwrap(), 0);
    }

    #[test]
    fn cy_coefficient_rejects_wrong_degrees() {
        let field = fp(3);
        let vars = &["x", "y", "z"];
        let quadric = parse_poly("x^2 + y^2 + z^2", field, vars).unwrap();
        assert!(matches!(
            cy_coefficient(&quadric),
            Err(SplittingError::DegreeMismatch { degree: 2, nvars: 3 })
        ));
        let mixed = parse_poly("x^3 + y", field, vars).unwrap();
        assert!(matches!(
            cy_coefficient(&mixed),
            Err(SplittingError::NotHomogeneous)
        ));
    }

    #[test]
    fn fedder_equals_cy_test_in_matching_degree() {
        for p in [2u64, 3, 5] {
            let field = fp(p);
            let mut s = Sampler::from_seed(400 + p);
            for _ in 0..12 {
                let f = s.homogeneous_poly(field, 3, 3, 6);
                if f.is_zero() {
                    continue;
                }
                let cy = cy_coefficient(&f).unwrap();
                assert_eq!(
                    cy != 0,
                    fedder_membership(&f),
                    "p={p} f={f}"
                );
            }
        }
    }

    #[test]
    fn quadric_sections_in_all_supported_cases() {
        for p in [2u64, 3, 5] {
            let field = fp(p);
            for dim in 2..=4 {
                let q = quadric_splitting(field, dim).unwrap();
                let expect_deg = (p as u32 - 1) * (dim as u32 + 1);
                assert_eq!(q.sigma.total_degree(), Some(expect_deg), "p={p} dim={dim}");
                assert!(q.sigma.is_homogeneous());
                // f^(p-1) divides sigma with the cofactor power as quotient
                let fp1 = q.f.pow(p as u32 - 1);
                let quotient = divides_exactly(&fp1, &q.sigma).expect("exact division");
                assert_eq!(quotient, q.cofactor.pow(p as u32 - 1));
                assert_ne!(q.key_coefficient, 0, "p={p} dim={dim}");
                assert_eq!(q.power_coefficient, 0, "p={p} dim={dim}");
                if let Some(expected) = q.expected_diagonal {
                    assert_eq!(q.key_coefficient, expected, "p={p} dim={dim}");
                }
            }
        }
    }

    #[test]
    fn standard_quadrics_are_smooth() {
        // common zero of f and its partials must be the irrelevant origin
        for p in [2u64, 3, 5] {
            let field = fp(p);
            for dim in 2..=4 {
                let q = quadric_splitting(field, dim).unwrap();
                let nvars = dim + 1;
                let mut points = vec![vec![0u64; nvars]];
                for i in 0..nvars {
                    let mut extended = Vec::new();
                    for pt in &points {
                        for v in 0..p {
                            let mut next = pt.clone();
                            next[i] = v;
                            extended.push(next);
                        }
                    }
                    points = extended;
                }
                for pt in points {
                    if pt.iter().all(|&v| v == 0) {
                        continue;
                    }
                    let singular = q.f.eval(&pt) == 0
                        && (0..nvars).all(|i| q.f.partial_derivative(i).eval(&pt) == 0);
                    assert!(!singular, "p={p} dim={dim} point {pt:?}");
                }
            }
        }
    }

    #[test]
    fn quadric_rejects_out_of_range_dimension() {
        assert!(matches!(
            quadric_splitting(fp(3), 1),
            Err(SplittingError::UnsupportedDimension(1))
        ));
        assert!(matches!(
            quadric_splitting(fp(3), 5),
            Err(SplittingError::UnsupportedDimension(5))
        ));
    }
}
