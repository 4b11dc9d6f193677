use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::simplex::maximize;
use crate::error::{Error, Result};
use crate::harness::Mode;
use crate::planar::Cycle;
use crate::rational::{self, Rational};

/// Cycle weights aligned with a cycle list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalSolution {
    pub mode: Mode,
    #[serde(with = "rational::serde_vec")]
    pub weights: Vec<Rational>,
}

impl FractionalSolution {
    pub fn zero(mode: Mode, len: usize) -> Self {
        FractionalSolution { mode, weights: vec![Rational::zero(); len] }
    }

    pub fn value(&self) -> Rational {
        rational::sum(&self.weights)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i].is_positive()).collect()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.weights[i]
    }
}

/// Rows of the packing LP: elements (vertices or edges) on at least one cycle,
/// in increasing order, each with the cycles through it.
pub fn constraint_rows(cycles: &[Cycle], mode: Mode) -> BTreeMap<usize, Vec<usize>> {
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, c) in cycles.iter().enumerate() {
        let elems = match mode {
            Mode::Vertex => c.vertices(),
            Mode::Edge => c.edges(),
        };
        for &x in elems {
            rows.entry(x).or_default().push(j);
        }
    }
    rows
}

/// Exact optimum of the packing LP restricted to `cycles`.
pub fn solve_packing_lp(cycles: &[Cycle], mode: Mode) -> (FractionalSolution, Rational) {
    if cycles.is_empty() {
        return (FractionalSolution::zero(mode, 0), Rational::zero());
    }
    let rows = constraint_rows(cycles, mode);
    let n = cycles.len();
    let a: Vec<Vec<Rational>> = rows
        .values()
        .map(|cs| {
            let mut row = vec![Rational::zero(); n];
            for &j in cs {
                row[j] = Rational::one();
            }
            row
        })
        .collect();
    let b = vec![Rational::one(); a.len()];
    let c = vec![Rational::one(); n];
    let (value, x) = maximize(&a, &b, &c).expect("packing LP is bounded");
    (FractionalSolution { mode, weights: x }, value)
}

/// Checks `0 ≤ x ≤ 1` and every element load `≤ 1`.
pub fn check_feasible(cycles: &[Cycle], x: &FractionalSolution) -> Result<()> {
    if cycles.len() != x.weights.len() {
        return Err(Error::FeasibilityViolation("weight vector length".into()));
    }
    for (i, w) in x.weights.iter().enumerate() {
        if w.is_negative() || *w > Rational::one() {
            return Err(Error::FeasibilityViolation(format!("weight of cycle {i} is {w}")));
        }
    }
    for (elem, cs) in constraint_rows(cycles, x.mode) {
        let load = rational::sum(cs.iter().map(|&j| &x.weights[j]));
        if load > Rational::one() {
            return Err(Error::FeasibilityViolation(format!("{} {elem} carries {load}", x.mode)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{disjoint, theta};
    use crate::rational::int;

    #[test]
    fn theta_value_one() {
        let t = theta();
        let (x, v) = solve_packing_lp(t.explicit_cycles().unwrap(), Mode::Vertex);
        assert_eq!(v, int(1));
        check_feasible(t.explicit_cycles().unwrap(), &x).unwrap();
    }

    #[test]
    fn theta_edge_mode_is_three_halves() {
        let t = theta();
        let (_, v) = solve_packing_lp(t.explicit_cycles().unwrap(), Mode::Edge);
        assert_eq!(v, crate::rational::ratio(3, 2));
    }

    #[test]
    fn single_and_disjoint() {
        let d = disjoint(2);
        let cs = d.explicit_cycles().unwrap();
        let (x, v) = solve_packing_lp(&cs[..1], Mode::Vertex);
        assert_eq!((v, x.weights), (int(1), vec![int(1)]));
        assert_eq!(solve_packing_lp(cs, Mode::Vertex).1, int(2));
        assert_eq!(solve_packing_lp(&[], Mode::Vertex).1, int(0));
    }
}
