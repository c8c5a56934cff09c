use crate::bloch::BlochVector;
use crate::closed_form::{finish, guess_dominant};
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::family::CommonPoint;
use crate::oracle::classical::is_diagonal;
use crate::povm::{Povm, PovmElement};
use crate::result::{DiscriminationResult, Method};

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// States diagonal in the `z` basis. The optimum over pairs `(i, j)` of
/// `½(p_i + p_j + |p_j z_j − p_i z_i|)` is evaluated in the split form
/// `p_i(1+z_i)/2 + p_j(1−z_j)/2`; the larger `p·z` of the winning pair gets
/// `|0⟩⟨0|` and the other `|1⟩⟨1|`.
pub fn solve_diagonal(ensemble: &WeightedEnsemble) -> Result<DiscriminationResult> {
    if !is_diagonal(ensemble) {
        return Err(Error::WrongShape(
            "states are not diagonal in the z basis".into(),
        ));
    }
    let up: Vec<f64> = ensemble
        .entries()
        .iter()
        .map(|e| e.prior * (1.0 + e.state.bloch().z) / 2.0)
        .collect();
    let down: Vec<f64> = ensemble
        .entries()
        .iter()
        .map(|e| e.prior * (1.0 - e.state.bloch().z) / 2.0)
        .collect();
    let (i, j) = (argmax(&up), argmax(&down));
    let p = up[i] + down[j];
    if i == j {
        return guess_dominant(ensemble, Method::Diagonal).map(|mut r| {
            r.p_opt = p;
            r
        });
    }
    let mut elements = vec![PovmElement::ZERO; ensemble.len()];
    elements[i] = PovmElement::scaled_projector(1.0, BlochVector::Z);
    elements[j] = PovmElement::scaled_projector(1.0, -BlochVector::Z);
    let povm = Povm::new(elements)?;
    let r = ensemble.bloch(i) * ensemble.prior(i) - BlochVector::Z * (p - ensemble.prior(i));
    finish(ensemble, p, CommonPoint(r), povm, Method::Diagonal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::classical_diagonal_oracle;
    use crate::result::check_result;

    fn diag(priors: &[f64], z: &[f64]) -> WeightedEnsemble {
        let raw: Vec<_> = priors
            .iter()
            .zip(z)
            .map(|(&p, &z)| (p, BlochVector::new(0.0, 0.0, z)))
            .collect();
        WeightedEnsemble::new(&raw).unwrap()
    }

    #[test]
    fn poles() {
        let e = diag(&[0.5, 0.5], &[1.0, -1.0]);
        let r = solve_diagonal(&e).unwrap();
        assert_eq!(r.p_opt, 1.0);
        assert!(check_result(&e, &r).passes());
    }

    #[test]
    fn three_level_example() {
        let e = diag(&[0.5, 0.3, 0.2], &[0.8, -0.5, 0.1]);
        let r = solve_diagonal(&e).unwrap();
        assert_eq!(r.p_opt, classical_diagonal_oracle(&e).unwrap());
        assert!((r.p_opt - 0.675).abs() < 1e-15);
        assert_eq!(
            r.povm.elements()[0],
            PovmElement::scaled_projector(1.0, BlochVector::Z)
        );
        assert_eq!(
            r.povm.elements()[1],
            PovmElement::scaled_projector(1.0, -BlochVector::Z)
        );
        assert!(r.povm.elements()[2].is_zero());
        let check = check_result(&e, &r);
        assert!(check.passes(), "{check:?}");
    }

    #[test]
    fn printed_ket_pairing_gives_the_minimum() {
        // |0⟩⟨0| on the smaller p·z of the pair (1,2) yields ½(p₁+p₂−|p₁z₁−p₂z₂|)
        let e = diag(&[0.5, 0.3, 0.2], &[0.8, -0.5, 0.1]);
        let swapped = Povm::new(vec![
            PovmElement::scaled_projector(1.0, -BlochVector::Z),
            PovmElement::scaled_projector(1.0, BlochVector::Z),
            PovmElement::ZERO,
        ])
        .unwrap();
        let s = crate::family::success_probability(&e, &swapped).unwrap();
        assert!((s - 0.5 * (0.8 - 0.55)).abs() < 1e-15);
        assert!(s < solve_diagonal(&e).unwrap().p_opt);
    }

    #[test]
    fn equal_z_reduces_to_max_prior_or_better() {
        let e = diag(&[0.2, 0.5, 0.3], &[0.4, 0.4, 0.4]);
        let r = solve_diagonal(&e).unwrap();
        assert_eq!(r.p_opt, classical_diagonal_oracle(&e).unwrap());
        assert!(r.p_opt >= 0.5);
        assert!(check_result(&e, &r).passes());
    }

    #[test]
    fn dominant_state() {
        let e = diag(&[0.98, 0.01, 0.01], &[1.0, -1.0, 0.0]);
        let r = solve_diagonal(&e).unwrap();
        assert!((r.p_opt - 0.99).abs() < 1e-15);
    }

    #[test]
    fn rejects_off_axis() {
        let e = WeightedEnsemble::new(&[(0.5, BlochVector::X), (0.5, BlochVector::Z)]).unwrap();
        assert!(solve_diagonal(&e).is_err());
    }
}
