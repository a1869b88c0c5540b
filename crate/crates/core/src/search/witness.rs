//! Backtracking search for colourings of `1..=n` without monochromatic
//! solutions.

use super::eval::Compiled;
use super::SearchError;
use crate::colouring::Colouring;
use crate::pattern::Pattern;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessResult {
    /// An explicit colouring of `1..=n` with no monochromatic solution
    /// whose values all lie in `1..=n`.
    Witness(Colouring),
    /// Every colouring of `1..=n` has a monochromatic solution.
    Unsat,
    BudgetExhausted { nodes: u64 },
}

/// Solutions with all values in `1..=n`, as sorted distinct element sets,
/// grouped by their largest element.
fn hyperedges(compiled: &Compiled, n: u64) -> Vec<Vec<Vec<u32>>> {
    let mut by_max: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n as usize + 1];
    for x in 1..=n {
        let step = compiled.y_step(x);
        let mut y = step;
        while y <= n {
            if let Some(values) = compiled.values(x, y) {
                if values.iter().all(|&v| v <= n) {
                    let mut edge: Vec<u32> = values.iter().map(|&v| v as u32).collect();
                    edge.sort_unstable();
                    edge.dedup();
                    let max = *edge.last().expect("nonempty") as usize;
                    edge.pop();
                    if !by_max[max].contains(&edge) {
                        by_max[max].push(edge);
                    }
                }
            }
            y += step;
        }
    }
    by_max
}

/// Depth-first search over colourings of `1, 2, ..., n` in order.
///
/// Colour 1 gets colour 0 and new colours are opened in increasing order,
/// so the first witness found is the least one in that order. `budget`
/// bounds the number of colour assignments tried.
///
/// ```
/// use partreg::pattern::parse_pattern;
/// use partreg::search::{search_witness, WitnessResult};
///
/// let schur = parse_pattern("x, y, x+y").unwrap();
/// assert!(matches!(search_witness(&schur, 2, 4, 1_000).unwrap(), WitnessResult::Witness(_)));
/// assert_eq!(search_witness(&schur, 2, 5, 1_000).unwrap(), WitnessResult::Unsat);
/// ```
pub fn search_witness(pattern: &Pattern, r: u32, n: u64, budget: u64) -> Result<WitnessResult, SearchError> {
    assert!(r >= 1, "at least one colour");
    let compiled = Compiled::new(pattern)?;
    let edges = hyperedges(&compiled, n);
    let n = n as usize;
    if n == 0 {
        return Ok(WitnessResult::Witness(Colouring::Explicit { table: Vec::new(), r }));
    }

    // colour[v] for v in 1..=n; `next[v]` is the next colour to try at v.
    let mut colour = vec![0u32; n + 1];
    let mut next = vec![0u32; n + 1];
    // used[v] = number of distinct colours among 1..=v.
    let mut used = vec![0u32; n + 1];
    let mut nodes = 0u64;
    let mut v = 1usize;

    let conflicts = |colour: &[u32], v: usize, c: u32| {
        edges[v]
            .iter()
            .any(|rest| rest.iter().all(|&u| colour[u as usize] == c))
    };

    loop {
        let limit = if v == 1 { 1 } else { (used[v - 1] + 1).min(r) };
        let mut placed = false;
        while next[v] < limit {
            let c = next[v];
            next[v] += 1;
            nodes += 1;
            if nodes > budget {
                return Ok(WitnessResult::BudgetExhausted { nodes: nodes - 1 });
            }
            if !conflicts(&colour, v, c) {
                colour[v] = c;
                used[v] = if v == 1 { 1 } else { used[v - 1].max(c + 1) };
                placed = true;
                break;
            }
        }
        if placed {
            if v == n {
                let table = colour[1..].to_vec();
                return Ok(WitnessResult::Witness(Colouring::Explicit { table, r }));
            }
            v += 1;
            next[v] = 0;
        } else {
            if v == 1 {
                return Ok(WitnessResult::Unsat);
            }
            v -= 1;
        }
    }
}
