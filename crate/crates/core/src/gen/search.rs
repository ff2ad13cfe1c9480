use crate::classical::{
    build_classical, central_extension_partner, theorem_b_partner, ClassicalAlgebra, ClassicalError, ClassicalKind,
};
use crate::exec::{map_range, Strategy};
use crate::field::{Fe, Field};
use crate::liealg::{center, generated_subalgebra, LieAlgebra};
use crate::rng::{random_vector, stream_rng};

use super::zassenhaus::ZassenhausSearcher;
use super::{GenError, GenerationCertificate, Ladder, Method};

/// A classical algebra over `F_q, F_{q^2}, ..., F_{q^max}`, for moving up
/// when a field is too small for the recipe.
#[derive(Clone, Debug)]
pub struct ClassicalLadder {
    pub kind: ClassicalKind,
    pub base: ClassicalAlgebra,
    rungs: Vec<(u32, ClassicalAlgebra, Vec<Fe>)>,
    central: bool,
}

impl ClassicalLadder {
    pub fn new(kind: &ClassicalKind, field: &Field, max_ext: u32) -> Result<ClassicalLadder, GenError> {
        let base = build_classical(kind, field)?;
        let ladder = Ladder::new(field, max_ext.max(1))?;
        let mut rungs = vec![];
        for (j, f, table) in ladder.rungs {
            let g = if j == 1 { base.clone() } else { base.retarget(&f)? };
            rungs.push((j, g, table));
        }
        let central = match center(&base.base).dim() {
            0 => false,
            1 => true,
            d => return Err(GenError::Precondition(format!("center of {} has dimension {}", kind, d))),
        };
        Ok(ClassicalLadder { kind: kind.clone(), base, rungs, central })
    }

    pub fn max_ext(&self) -> u32 {
        self.rungs.len() as u32
    }

    pub fn rung(&self, j: u32) -> Option<&ClassicalAlgebra> {
        self.rungs.iter().find(|r| r.0 == j).map(|r| &r.1)
    }

    /// Certified partner of `x` (coordinates over the base field) over the
    /// smallest rung where the recipe succeeds. Returns the rung degree.
    pub fn partner(&self, x: &[Fe], seed: u64, stream: u64) -> Result<(GenerationCertificate, u32), GenError> {
        let mut last = None;
        for (j, g, table) in &self.rungs {
            let xe = Ladder::embed(table, x);
            let mut rng = stream_rng(seed, stream);
            let attempt = if self.central {
                central_extension_partner(g, &xe, &mut rng).map(|w| (w.y, Method::CentralExtension))
            } else {
                theorem_b_partner(g, &xe, &mut rng).map(|w| (w.y, Method::TheoremB))
            };
            match attempt {
                Ok((y, method)) => {
                    let cert = GenerationCertificate::certify(&g.base, xe, y, method, Some(seed), Some(stream));
                    if !cert.generates(&g.base) {
                        return Err(GenError::RecipeStepFailed {
                            step: "certify",
                            detail: format!("closure {} < {}", cert.closure_dim, g.dim()),
                        });
                    }
                    return Ok((cert, *j));
                }
                Err(
                    e @ (ClassicalError::FieldTooSmall(_)
                    | ClassicalError::SearchBudgetExhausted(_)
                    | ClassicalError::NoPartnerInField(_)),
                ) => last = Some(e),
                Err(e) => return Err(e.into()),
            }
        }
        Err(last.map(GenError::from).unwrap_or_else(|| GenError::Precondition("empty ladder".into())))
    }
}

#[derive(Clone, Debug)]
pub enum SearchStrategy {
    /// The constructive recipe for the target's class of algebra.
    Recipe { seed: u64 },
    /// `trials` uniform partners, trial `i` drawn from `stream_rng(seed, i)`.
    Random { seed: u64, trials: u64 },
    /// Every `y` supported on the given basis coordinates.
    Exhaustive { coords: Vec<usize>, budget: u64 },
}

#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Classical(&'a ClassicalLadder),
    Zassenhaus(&'a ZassenhausSearcher),
    Plain(&'a LieAlgebra),
}

impl Target<'_> {
    pub fn algebra(&self) -> &LieAlgebra {
        match self {
            Target::Classical(c) => &c.base.base,
            Target::Zassenhaus(z) => &z.w.base,
            Target::Plain(l) => l,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(GenerationCertificate),
    NotFound { searched: String },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&GenerationCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

/// Looks for `y` with `F<x, y> = L`, `x` given over the target's base field.
pub fn one_and_half_search(
    target: Target,
    x: &[Fe],
    strategy: &SearchStrategy,
    exec: Strategy,
) -> Result<SearchOutcome, GenError> {
    let l = target.algebra();
    if x.len() != l.dim() {
        return Err(GenError::Precondition(format!("x has {} coordinates, expected {}", x.len(), l.dim())));
    }
    if x.iter().all(|c| c.is_zero()) {
        return Err(GenError::Precondition("x = 0".into()));
    }
    let f = l.field();
    let n = l.dim();
    match strategy {
        SearchStrategy::Recipe { seed } => match target {
            Target::Classical(c) => Ok(SearchOutcome::Found(c.partner(x, *seed, 0)?.0)),
            Target::Zassenhaus(z) => Ok(SearchOutcome::Found(z.partner(x)?.certificate)),
            Target::Plain(l) => Ok(SearchOutcome::NotFound { searched: format!("no recipe for {}", l.name()) }),
        },
        SearchStrategy::Random { seed, trials } => {
            let hits = map_range(exec, *trials as usize, |i| {
                let mut rng = stream_rng(*seed, i as u64);
                let y = random_vector(f, n, &mut rng);
                (generated_subalgebra(l, x, &y).dim() == n).then_some((i, y))
            });
            Ok(match hits.into_iter().flatten().next() {
                Some((i, y)) => SearchOutcome::Found(GenerationCertificate::certify(
                    l,
                    x.to_vec(),
                    y,
                    Method::Search,
                    Some(*seed),
                    Some(i as u64),
                )),
                None => SearchOutcome::NotFound { searched: format!("{} random y over {}", trials, f) },
            })
        }
        SearchStrategy::Exhaustive { coords, budget } => {
            if let Some(&bad) = coords.iter().find(|&&c| c >= n) {
                return Err(GenError::Precondition(format!("coordinate {} out of range", bad)));
            }
            let q = f.size() as u64;
            let total = q
                .checked_pow(coords.len() as u32)
                .filter(|t| t <= budget)
                .ok_or_else(|| GenError::BudgetExceeded(format!("{}^{} partners over budget {}", q, coords.len(), budget)))?;
            let chunks = 64u64.min(total);
            let per = total.div_ceil(chunks);
            let decode = |mut idx: u64| {
                let mut y = vec![Fe::ZERO; n];
                for &c in coords {
                    y[c] = Fe((idx % q) as u32);
                    idx /= q;
                }
                y
            };
            let hits = map_range(exec, chunks as usize, |c| {
                let lo = c as u64 * per;
                (lo..(lo + per).min(total)).map(decode).find(|y| generated_subalgebra(l, x, y).dim() == n)
            });
            let labels: Vec<String> = coords.iter().map(|&c| l.label(c)).collect();
            Ok(match hits.into_iter().flatten().next() {
                Some(y) => SearchOutcome::Found(GenerationCertificate::certify(l, x.to_vec(), y, Method::Search, None, None)),
                None => SearchOutcome::NotFound {
                    searched: format!("all {} partners in span{{{}}} over {}", total, labels.join(", "), f),
                },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::fixtures;

    #[test]
    fn classical_ladder_partners() {
        let f = Field::prime(5).unwrap();
        for name in ["A1", "sl:3", "gl:2", "B2"] {
            let kind: ClassicalKind = name.parse().unwrap();
            let ladder = ClassicalLadder::new(&kind, &f, 2).unwrap();
            let x = ladder.base.base.basis_vec(0);
            let (cert, j) = ladder.partner(&x, 11, 0).unwrap();
            let g = ladder.rung(j).unwrap();
            assert!(cert.generates(&g.base), "{}", name);
            assert!(cert.replay(&g.base));
        }
    }

    #[test]
    fn strategies_on_sl2() {
        let f = Field::prime(5).unwrap();
        let l = fixtures::sl2(&f);
        let x = l.basis_vec(0);
        let r = one_and_half_search(Target::Plain(&l), &x, &SearchStrategy::Random { seed: 3, trials: 50 }, Strategy::Parallel)
            .unwrap();
        assert!(r.found().unwrap().generates(&l));
        let e = SearchStrategy::Exhaustive { coords: vec![1, 2], budget: 1000 };
        let r = one_and_half_search(Target::Plain(&l), &x, &e, Strategy::Sequential).unwrap();
        assert!(r.found().is_some());
        // y in span{x} never generates
        let e = SearchStrategy::Exhaustive { coords: vec![0], budget: 1000 };
        let r = one_and_half_search(Target::Plain(&l), &x, &e, Strategy::Sequential).unwrap();
        assert!(matches!(r, SearchOutcome::NotFound { .. }));
        let r = one_and_half_search(Target::Plain(&l), &x, &SearchStrategy::Recipe { seed: 0 }, Strategy::Sequential);
        assert!(matches!(r, Ok(SearchOutcome::NotFound { .. })));
    }
}
