use serde::Serialize;

use crate::cartan_w::WittAlgebra;
use crate::exec::{map_range, Strategy};
use crate::field::Fe;
use crate::liealg::{derived_of_generated, generated_subalgebra};
use crate::pstruct::{structure_check, PMap};
use crate::rng::{random_vector, stream_rng};

use super::{scalar_label, GenError};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ObstructionTrial {
    pub stream: Option<u64>,
    pub closure_dim: usize,
    pub derived_dim: usize,
    pub generates: bool,
    /// Verdict of the restricted structure check, run for `n = (1, ..., 1)`.
    pub structure_pass: Option<bool>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ObstructionReport {
    pub algebra: String,
    pub x: String,
    pub dim: usize,
    /// `p^{|n|}`.
    pub bound: usize,
    pub trials: Vec<ObstructionTrial>,
    pub y_zero: ObstructionTrial,
    pub max_closure: usize,
    pub max_derived: usize,
}

impl ObstructionReport {
    pub fn bounded(&self) -> bool {
        self.trials.iter().chain([&self.y_zero]).all(|t| t.derived_dim <= self.bound)
    }

    pub fn none_generate(&self) -> bool {
        self.trials.iter().chain([&self.y_zero]).all(|t| !t.generates)
    }

    pub fn structure_ok(&self) -> bool {
        self.trials.iter().all(|t| t.structure_pass != Some(false))
    }

    pub fn pass(&self) -> bool {
        self.bounded() && self.none_generate() && self.structure_ok()
    }
}

/// One partner `y` of `x`.
pub fn obstruction_trial(w: &WittAlgebra, pm: Option<&PMap>, x: &[Fe], y: &[Fe]) -> Result<ObstructionTrial, GenError> {
    let closure_dim = generated_subalgebra(&w.base, x, y).dim();
    let derived_dim = derived_of_generated(&w.base, x, y).dim();
    let structure_pass = match pm {
        Some(pm) if y.iter().any(|c| !c.is_zero()) => Some(structure_check(w, pm, x, y)?.pass()),
        _ => None,
    };
    Ok(ObstructionTrial { stream: None, closure_dim, derived_dim, generates: closure_dim == w.dim(), structure_pass })
}

/// `trials` random partners of a nonzero top-component `x` in `W(m, n)`, `m ≥ 2`,
/// plus `y = 0`.
pub fn obstruction_report(
    w: &WittAlgebra,
    x: &[Fe],
    trials: u64,
    seed: u64,
    strategy: Strategy,
) -> Result<ObstructionReport, GenError> {
    if w.m() < 2 {
        return Err(GenError::Precondition("the obstruction concerns m >= 2".into()));
    }
    if w.base.degree_support(x) != vec![w.s] {
        return Err(GenError::Precondition("x must be a nonzero element of the top component".into()));
    }
    let f = w.field();
    let p = f.p() as usize;
    let bound = p.pow(w.n().iter().sum());
    let pm = if w.is_restricted_type() { Some(PMap::new(&w.base)?) } else { None };
    let results = map_range(strategy, trials as usize, |i| {
        let mut rng = stream_rng(seed, i as u64);
        let y = random_vector(f, w.dim(), &mut rng);
        obstruction_trial(w, pm.as_ref(), x, &y).map(|t| ObstructionTrial { stream: Some(i as u64), ..t })
    });
    let trials = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let y_zero = obstruction_trial(w, None, x, &w.base.zero_vec())?;
    let label = w
        .base
        .sparse(x)
        .iter()
        .map(|&(u, c)| format!("{}*{}", scalar_label(f, c), w.base.label(u as usize)))
        .collect::<Vec<_>>()
        .join(" + ");
    Ok(ObstructionReport {
        algebra: w.base.name().to_string(),
        x: label,
        dim: w.dim(),
        bound,
        max_closure: trials.iter().map(|t| t.closure_dim).max().unwrap_or(0),
        max_derived: trials.iter().map(|t| t.derived_dim).max().unwrap_or(0),
        trials,
        y_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_w::{build_witt, DEFAULT_CAP};
    use crate::field::Field;

    #[test]
    fn top_elements_of_w21() {
        let f = Field::prime(5).unwrap();
        let w = build_witt(2, &[1, 1], &f, DEFAULT_CAP).unwrap();
        for &u in &w.component(w.s) {
            let r = obstruction_report(&w, &w.base.basis_vec(u), 6, 3, Strategy::Parallel).unwrap();
            assert!(r.pass(), "{}: {:?}", r.x, r.trials);
            assert_eq!(r.bound, 25);
            assert!(r.trials.iter().all(|t| t.structure_pass.is_some()));
        }
        assert!(obstruction_report(&w, &w.partial(0), 1, 0, Strategy::Sequential).is_err());
    }
}
