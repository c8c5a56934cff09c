use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};

/// Off-axis Bloch components up to this size still count as diagonal.
pub const DIAGONAL_TOL: f64 = 1e-12;

pub fn is_diagonal(ensemble: &WeightedEnsemble) -> bool {
    ensemble
        .blochs()
        .iter()
        .all(|b| b.x.abs() <= DIAGONAL_TOL && b.y.abs() <= DIAGONAL_TOL)
}

/// Best two-outcome classical decision for states diagonal in the `z` basis:
/// announce `i` on outcome 0 and `j` on outcome 1, so
/// `P = max_i p_i(1+z_i)/2 + max_j p_j(1−z_j)/2`.
pub fn classical_diagonal_oracle(ensemble: &WeightedEnsemble) -> Result<f64> {
    if !is_diagonal(ensemble) {
        return Err(Error::WrongShape(
            "states are not diagonal in the z basis".into(),
        ));
    }
    let mut up = f64::NEG_INFINITY;
    let mut down = f64::NEG_INFINITY;
    for e in ensemble.entries() {
        let z = e.state.bloch().z;
        up = up.max(e.prior * (1.0 + z) / 2.0);
        down = down.max(e.prior * (1.0 - z) / 2.0);
    }
    Ok(up + down)
}
