//! Seeded scrambling and budgeted simplification.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    apply_move, canonical_code, enumerate_insertions, enumerate_local_moves, enumerate_moves,
};
use super::{MoveInstance, MoveKind};
use crate::diagram::Diagram;

/// Applies `n` moves, each drawn uniformly from all applicable moves.
pub fn scramble(d: &Diagram, n: usize, seed: u64) -> Diagram {
    scramble_traced(d, n, seed).0
}

pub fn scramble_traced(d: &Diagram, n: usize, seed: u64) -> (Diagram, Vec<MoveInstance>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut trace = Vec::with_capacity(n);
    for _ in 0..n {
        let moves = enumerate_moves(&cur);
        let m = moves[rng.gen_range(0..moves.len())];
        cur = apply_move(&cur, &m).expect("enumerated moves apply");
        trace.push(m);
    }
    (cur, trace)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplifyConfig {
    /// Maximum number of distinct diagrams visited.
    pub budget: usize,
    /// How many R2+ moves an excursion may have outstanding.
    pub excursion_depth: usize,
}

impl Default for SimplifyConfig {
    fn default() -> Self {
        SimplifyConfig {
            budget: 100_000,
            excursion_depth: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplifyOutcome {
    pub diagram: Diagram,
    /// Moves leading from the input to `diagram`.
    pub trace: Vec<MoveInstance>,
    pub states_visited: usize,
    pub budget_exhausted: bool,
}

/// Smallest diagram found within `budget` visited states.
pub fn simplify(d: &Diagram, budget: usize) -> Diagram {
    simplify_traced(
        d,
        &SimplifyConfig {
            budget,
            ..SimplifyConfig::default()
        },
    )
    .diagram
}

/// Applies R1- and R2- moves until none is left.
fn reduce(mut d: Diagram, trace: &mut Vec<MoveInstance>) -> Diagram {
    loop {
        let Some(m) = enumerate_local_moves(&d)
            .into_iter()
            .find(MoveInstance::is_reducing)
        else {
            return d;
        };
        d = apply_move(&d, &m).expect("enumerated moves apply");
        trace.push(m);
    }
}

struct State {
    diagram: Diagram,
    trace: Vec<MoveInstance>,
    depth: usize,
}

/// Greedy reduction, then a breadth-first search through R3 moves and
/// bounded R2+ excursions, with states deduplicated by canonical code.
pub fn simplify_traced(d: &Diagram, config: &SimplifyConfig) -> SimplifyOutcome {
    let mut trace = Vec::new();
    let start = reduce(d.clone(), &mut trace);
    let mut best = State {
        diagram: start.clone(),
        trace: trace.clone(),
        depth: 0,
    };
    let mut visited: HashSet<Vec<u32>> = HashSet::new();
    visited.insert(canonical_code(&start));
    let mut queue = VecDeque::from([State {
        diagram: start,
        trace,
        depth: 0,
    }]);
    let mut exhausted = false;
    'search: while let Some(state) = queue.pop_front() {
        if best.diagram.crossing_count() == 0 {
            break;
        }
        let mut children: Vec<(MoveInstance, bool)> = enumerate_local_moves(&state.diagram)
            .into_iter()
            .filter(|m| m.kind() == MoveKind::R3)
            .map(|m| (m, false))
            .collect();
        if state.depth < config.excursion_depth {
            children.extend(
                enumerate_insertions(&state.diagram)
                    .into_iter()
                    .filter(|m| m.kind() == MoveKind::R2Plus)
                    .map(|m| (m, true)),
            );
        }
        for (m, excursion) in children {
            if visited.len() >= config.budget {
                exhausted = true;
                break 'search;
            }
            let Ok(next) = apply_move(&state.diagram, &m) else {
                continue;
            };
            let mut next_trace = state.trace.clone();
            next_trace.push(m);
            let (next, depth) = if excursion {
                (next, state.depth + 1)
            } else {
                let before = next.crossing_count();
                let reduced = reduce(next, &mut next_trace);
                let paid = (before - reduced.crossing_count()) / 2;
                (reduced, state.depth.saturating_sub(paid))
            };
            if !visited.insert(canonical_code(&next)) {
                continue;
            }
            if next.crossing_count() < best.diagram.crossing_count() {
                best = State {
                    diagram: next.clone(),
                    trace: next_trace.clone(),
                    depth,
                };
                if next.crossing_count() == 0 {
                    break 'search;
                }
            }
            queue.push_back(State {
                diagram: next,
                trace: next_trace,
                depth,
            });
        }
    }
    SimplifyOutcome {
        diagram: best.diagram,
        trace: best.trace,
        states_visited: visited.len(),
        budget_exhausted: exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::standard;

    #[test]
    fn scramble_zero_is_identity() {
        let d = standard("trefoil").unwrap();
        assert_eq!(scramble(&d, 0, 7), d);
    }

    #[test]
    fn scramble_is_deterministic() {
        let d = standard("figure8").unwrap();
        assert_eq!(scramble(&d, 10, 3), scramble(&d, 10, 3));
    }

    #[test]
    fn curl_simplifies_to_unknot() {
        let d = standard("curl+").unwrap();
        assert_eq!(simplify(&d, 10).crossing_count(), 0);
    }

    #[test]
    fn trace_replays() {
        let d = scramble(&Diagram::unknot(), 8, 11);
        let out = simplify_traced(
            &d,
            &SimplifyConfig {
                budget: 2000,
                excursion_depth: 1,
            },
        );
        let mut cur = d.clone();
        for m in &out.trace {
            cur = apply_move(&cur, m).unwrap();
        }
        assert_eq!(cur, out.diagram);
    }
}
