//! Numerically conservative certification of cv non-multiplicativity.

use super::{ppt_dual_cv, seesaw_cv, CvError, NonMultCertificate, SeesawConfig};
use crate::channels::{tensor_channels, QuantumChannel};

/// Certify `cv(N ⊗ M) > cv(N)·cv(M)` by comparing a see-saw lower bound on
/// the joint channel against the product of certified PPT-dual upper bounds
/// on the marginals.  The dual bounds are repaired to exact feasibility
/// after solving, so any numerical slack only loosens the upper product and
/// never produces a false positive.
pub fn certify_nonmultiplicativity(
    c1: &QuantumChannel,
    c2: &QuantumChannel,
    cfg: &SeesawConfig,
    epsilon: f64,
) -> Result<NonMultCertificate, CvError> {
    let upper1 = ppt_dual_cv(&c1.choi(), 1e-8, 200_000)?;
    let upper2 = ppt_dual_cv(&c2.choi(), 1e-8, 200_000)?;
    let upper_product = upper1.value * upper2.value;

    let joint = tensor_channels(c1, c2);
    let lower = seesaw_cv(&joint, cfg);

    Ok(NonMultCertificate {
        lower_joint: lower.value,
        upper_product,
        epsilon,
        certified: lower.value - upper_product > epsilon,
    })
}
