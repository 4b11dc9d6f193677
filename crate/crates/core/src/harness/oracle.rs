//! Exhaustive oracles for small instances.

use std::collections::BTreeMap;

use super::instance::Mode;
use crate::error::{Error, Result};
use crate::planar::Cycle;

pub const MAX_ORACLE_CYCLES: usize = 20;

fn conflicts(a: &Cycle, b: &Cycle, mode: Mode) -> bool {
    match mode {
        Mode::Vertex => a.shares_vertex(b),
        Mode::Edge => a.shares_edge(b),
    }
}

/// Maximum number of pairwise disjoint cycles and one witness (positions).
pub fn brute_max_packing(cycles: &[Cycle], mode: Mode) -> Result<(usize, Vec<usize>)> {
    let k = cycles.len();
    if k > MAX_ORACLE_CYCLES {
        return Err(Error::BudgetExceeded(format!("{k} cycles")));
    }
    let conflict: Vec<u32> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i && conflicts(&cycles[i], &cycles[j], mode))
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect();
    let mut best = 0u32;
    fn search(cand: u32, chosen: u32, conflict: &[u32], best: &mut u32) {
        if cand == 0 {
            if chosen.count_ones() > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        let i = cand.trailing_zeros() as usize;
        let bit = 1u32 << i;
        search(cand & !bit & !conflict[i], chosen | bit, conflict, best);
        search(cand & !bit, chosen, conflict, best);
    }
    let all = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    search(all, 0, &conflict, &mut best);
    let witness: Vec<usize> = (0..k).filter(|&i| best & (1 << i) != 0).collect();
    Ok((witness.len(), witness))
}

/// Minimum number of vertices (or edges) meeting every cycle, with a witness.
/// Elements whose cycle set is contained in another element's are skipped.
pub fn brute_min_transversal(cycles: &[Cycle], mode: Mode, budget: usize) -> Result<(usize, Vec<usize>)> {
    let k = cycles.len();
    if k > MAX_ORACLE_CYCLES {
        return Err(Error::BudgetExceeded(format!("{k} cycles")));
    }
    let mut masks: BTreeMap<usize, u32> = BTreeMap::new();
    for (i, c) in cycles.iter().enumerate() {
        let elems = match mode {
            Mode::Vertex => c.vertices(),
            Mode::Edge => c.edges(),
        };
        for &x in elems {
            *masks.entry(x).or_default() |= 1 << i;
        }
    }
    // one element per distinct cycle set, keeping only maximal sets
    let mut by_mask: BTreeMap<u32, usize> = BTreeMap::new();
    for (&x, &m) in &masks {
        by_mask.entry(m).or_insert(x);
    }
    let all: Vec<(u32, usize)> = by_mask.iter().map(|(&m, &x)| (m, x)).collect();
    let elems: Vec<(u32, usize)> =
        all.iter().copied().filter(|&(m, _)| !all.iter().any(|&(o, _)| o != m && o & m == m)).collect();
    let mut nodes = 0usize;
    fn hit(elems: &[(u32, usize)], open: u32, left: usize, chosen: &mut Vec<usize>, nodes: &mut usize, budget: usize) -> Result<bool> {
        if open == 0 {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(format!("{budget} search nodes")));
        }
        let best = elems.iter().map(|&(m, _)| (m & open).count_ones()).max().unwrap_or(0) as usize;
        if left == 0 || best * left < open.count_ones() as usize {
            return Ok(false);
        }
        // branch on the open cycle with the fewest covering elements
        let (i, _) = (0..32)
            .filter(|&i| open & (1 << i) != 0)
            .map(|i| (i, elems.iter().filter(|&&(m, _)| m & (1 << i) != 0).count()))
            .min_by_key(|&(_, n)| n)
            .unwrap();
        for &(m, x) in elems.iter().filter(|&&(m, _)| m & (1 << i) != 0) {
            chosen.push(x);
            if hit(elems, open & !m, left - 1, chosen, nodes, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    let full = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    for size in 0..=k {
        let mut chosen = Vec::new();
        if hit(&elems, full, size, &mut chosen, &mut nodes, budget)? {
            chosen.sort_unstable();
            return Ok((size, chosen));
        }
    }
    unreachable!("one element per cycle always hits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{disjoint, theta};

    #[test]
    fn theta_values() {
        let t = theta();
        let cycles = t.explicit_cycles().unwrap();
        assert_eq!(brute_max_packing(cycles, Mode::Vertex).unwrap().0, 1);
        assert_eq!(brute_max_packing(cycles, Mode::Edge).unwrap().0, 1);
        assert_eq!(brute_min_transversal(cycles, Mode::Vertex, 10_000).unwrap().0, 1);
        assert_eq!(brute_min_transversal(cycles, Mode::Edge, 10_000).unwrap().0, 2);
    }

    #[test]
    fn disjoint_values() {
        let d = disjoint(4);
        let cycles = d.explicit_cycles().unwrap();
        assert_eq!(brute_max_packing(cycles, Mode::Vertex).unwrap().0, 4);
        assert_eq!(brute_min_transversal(cycles, Mode::Vertex, 10_000).unwrap().0, 4);
        assert_eq!(brute_min_transversal(&cycles[..1], Mode::Edge, 10_000).unwrap().0, 1);
    }
}
