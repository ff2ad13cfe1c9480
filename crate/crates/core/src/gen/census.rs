use std::collections::BTreeMap;

use serde::Serialize;

use crate::exec::{map_range, Strategy};
use crate::field::{Fe, FieldSpec};
use crate::liealg::{generated_subalgebra, LieAlgebra};
use crate::rng::{random_vector, stream_rng};

use super::GenError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SamplingPlan {
    Exhaustive,
    /// Sample `i` draws from `stream_rng(seed, i)`.
    Random { seed: u64, count: u64 },
}

/// Histogram of `dim F<x, y>` over pairs.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StrataCensus {
    pub algebra: String,
    pub dim: usize,
    pub field: FieldSpec,
    pub plan: String,
    pub sample_size: u64,
    pub histogram: BTreeMap<usize, u64>,
}

impl StrataCensus {
    pub fn count(&self, d: usize) -> u64 {
        self.histogram.get(&d).copied().unwrap_or(0)
    }

    pub fn generating_fraction(&self) -> f64 {
        if self.sample_size == 0 {
            return 0.0;
        }
        self.count(self.dim) as f64 / self.sample_size as f64
    }
}

const CHUNKS: u64 = 256;

/// Number of pairs in `L × L`, if it fits in a u64.
pub fn pair_count(l: &LieAlgebra) -> Option<u64> {
    (l.field().size() as u64).checked_pow(2 * l.dim() as u32)
}

fn decode(q: u64, mut idx: u64, out: &mut [Fe]) {
    for c in out.iter_mut() {
        *c = Fe((idx % q) as u32);
        idx /= q;
    }
}

pub fn strata_census(
    l: &LieAlgebra,
    plan: &SamplingPlan,
    budget: u64,
    strategy: Strategy,
) -> Result<StrataCensus, GenError> {
    let n = l.dim();
    let f = l.field();
    let (total, label) = match plan {
        SamplingPlan::Exhaustive => {
            let total = pair_count(l)
                .filter(|&t| t <= budget)
                .ok_or_else(|| GenError::BudgetExceeded(format!("{}^{} pairs over budget {}", f.size(), 2 * n, budget)))?;
            (total, "exhaustive".to_string())
        }
        SamplingPlan::Random { seed, count } => {
            if *count > budget {
                return Err(GenError::BudgetExceeded(format!("{} samples over budget {}", count, budget)));
            }
            (*count, format!("random(seed={}, count={})", seed, count))
        }
    };
    let chunks = CHUNKS.min(total.max(1));
    let per = total.div_ceil(chunks);
    let q = f.size() as u64;
    let partial = map_range(strategy, chunks as usize, |c| {
        let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
        let lo = c as u64 * per;
        let hi = (lo + per).min(total);
        let mut xy = vec![Fe::ZERO; 2 * n];
        for i in lo..hi {
            let d = match plan {
                SamplingPlan::Exhaustive => {
                    decode(q, i, &mut xy);
                    generated_subalgebra(l, &xy[..n], &xy[n..]).dim()
                }
                SamplingPlan::Random { seed, .. } => {
                    let mut rng = stream_rng(*seed, i);
                    let x = random_vector(f, n, &mut rng);
                    let y = random_vector(f, n, &mut rng);
                    generated_subalgebra(l, &x, &y).dim()
                }
            };
            *hist.entry(d).or_default() += 1;
        }
        hist
    });
    let mut histogram = BTreeMap::new();
    for h in partial {
        for (d, c) in h {
            *histogram.entry(d).or_default() += c;
        }
    }
    Ok(StrataCensus {
        algebra: l.name().to_string(),
        dim: n,
        field: f.spec().clone(),
        plan: label,
        sample_size: total,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::liealg::fixtures;

    #[test]
    fn sl2_exhaustive_census() {
        let f = Field::prime(5).unwrap();
        let l = fixtures::sl2(&f);
        let c = strata_census(&l, &SamplingPlan::Exhaustive, 1 << 20, Strategy::Sequential).unwrap();
        assert_eq!(c.sample_size, 15625);
        assert_eq!(c.histogram.values().sum::<u64>(), 15625);
        // x = y = 0 is the only pair with closure 0
        assert_eq!(c.count(0), 1);
        assert!(c.count(3) > 0);
        assert!(!c.histogram.contains_key(&4));
        let par = strata_census(&l, &SamplingPlan::Exhaustive, 1 << 20, Strategy::Parallel).unwrap();
        assert_eq!(c, par);
    }

    #[test]
    fn budget_and_random_plans() {
        let f = Field::prime(5).unwrap();
        let l = fixtures::sl2(&f);
        assert!(matches!(
            strata_census(&l, &SamplingPlan::Exhaustive, 100, Strategy::Sequential),
            Err(GenError::BudgetExceeded(_))
        ));
        let plan = SamplingPlan::Random { seed: 4, count: 300 };
        let a = strata_census(&l, &plan, 1000, Strategy::Sequential).unwrap();
        let b = strata_census(&l, &plan, 1000, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sample_size, 300);
        assert!(a.generating_fraction() > 0.5);
    }
}
