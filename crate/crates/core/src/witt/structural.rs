use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::intpoly::{from_ghost, ghost_components, IntPoly};

use super::WittError;

/// The universal addition, multiplication and negation laws for length-n
/// Witt vectors, as exact integer polynomials.
///
/// `sum[i]` and `prod[i]` live in 2n variables (X_0..X_{n-1} are variables
/// 0..n-1, Y_0..Y_{n-1} are variables n..2n-1); `neg[i]` lives in n
/// variables. Each is produced by peeling the ghost equations, and the
/// recursion asserts every division by p^i is exact: a failed division is a
/// hard failure, not a recoverable error, because it would contradict the
/// integrality of the Witt laws.
#[derive(Debug, Clone)]
pub struct StructuralPolys {
    pub p: u64,
    pub n: usize,
    pub sum: Vec<IntPoly>,
    pub prod: Vec<IntPoly>,
    pub neg: Vec<IntPoly>,
}

/// Expansion feasibility: the polynomials grow super-polynomially in p and
/// doubly so in n (S_i contains S_1 raised to p^(i-1)), so explicit
/// expansion is only offered where the term count stays in the millions.
fn expansion_feasible(p: u64, n: usize) -> bool {
    match n {
        0..=2 => true,
        3 => p <= 7,
        4 => p <= 3,
        _ => false,
    }
}

fn cache() -> &'static Mutex<HashMap<(u64, usize), Arc<StructuralPolys>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<StructuralPolys>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Computes (and caches) the structural polynomials for length-n Witt
/// vectors at the prime p.
pub fn structural_polys(p: u64, n: usize) -> Result<Arc<StructuralPolys>, WittError> {
    if n == 0 {
        return Err(WittError::ZeroLength(0));
    }
    if n > 4 {
        return Err(WittError::LengthTooLarge(n));
    }
    if !expansion_feasible(p, n) {
        return Err(WittError::StructuralExpansionInfeasible { p, n });
    }
    if let Some(hit) = cache().lock().unwrap().get(&(p, n)) {
        return Ok(hit.clone());
    }

    let xs: Vec<IntPoly> = (0..n).map(|i| IntPoly::var(2 * n, i)).collect();
    let ys: Vec<IntPoly> = (0..n).map(|i| IntPoly::var(2 * n, n + i)).collect();
    let gx = ghost_components(p, &xs);
    let gy = ghost_components(p, &ys);

    let sum_ghost: Vec<IntPoly> = gx.iter().zip(&gy).map(|(a, b)| a.add(b)).collect();
    let prod_ghost: Vec<IntPoly> = gx.iter().zip(&gy).map(|(a, b)| a.mul(b)).collect();
    let sum = from_ghost(p, &sum_ghost)
        .expect("inexact division while peeling the addition law: implementation bug");
    let prod = from_ghost(p, &prod_ghost)
        .expect("inexact division while peeling the multiplication law: implementation bug");

    let zs: Vec<IntPoly> = (0..n).map(|i| IntPoly::var(n, i)).collect();
    let neg_ghost: Vec<IntPoly> = ghost_components(p, &zs).iter().map(IntPoly::neg).collect();
    let neg = from_ghost(p, &neg_ghost)
        .expect("inexact division while peeling the negation law: implementation bug");

    let out = Arc::new(StructuralPolys { p, n, sum, prod, neg });
    cache().lock().unwrap().insert((p, n), out.clone());
    Ok(out)
}
