//! Workloads shared by the benchmarks.

use finegrad::division::GradedDivisionAlgebra;
use finegrad::error::DEFAULT_BOUND;
use finegrad::grading::{GradedMatrixAlgebra, GradingSpec};
use finegrad::symplectic::for_each_automorphism;
use finegrad::weyl::brute_force_weyl;
use finegrad::{Result, TorsionGroup};

/// Counts `Sp_{2r}(2)` by exhaustive enumeration.
pub fn count_symplectic(r: usize) -> u64 {
    let mut n = 0;
    for_each_automorphism(&TorsionGroup::elementary(r), |_| n += 1);
    n
}

/// Checks `X_u X_v = β(u, v) X_v X_u` for all pairs; returns the number of
/// pairs checked.
pub fn pauli_relations(orders: &[u8]) -> Result<usize> {
    let t = TorsionGroup::new(orders.to_vec())?;
    let d = GradedDivisionAlgebra::build_pauli(&t)?;
    let elems = t.elements();
    let mut n = 0;
    for u in &elems {
        for v in &elems {
            assert_eq!(d.x(u) * d.x(v), (d.x(v) * d.x(u)).scale(&t.beta(u, v)));
            n += 1;
        }
    }
    Ok(n)
}

/// Order of the Weyl group of a spec, by closure on the support.
pub fn weyl_closure(spec: &GradingSpec) -> Result<u128> {
    let alg = GradedMatrixAlgebra::new(spec)?;
    Ok(brute_force_weyl(&alg, DEFAULT_BOUND)?.order)
}
