use num_traits::{One, Zero};

use crate::lp::FractionalSolution;
use crate::planar::LaminarFamily;
use crate::rational::{self, Rational};

/// Weights of the one-sided cycles of a component and the level fractions `r_α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdProfile {
    /// One-sided positions with their weights.
    pub one_sided: Vec<(usize, Rational)>,
    /// Sorted distinct one-sided weights.
    pub values: Vec<Rational>,
}

impl ThresholdProfile {
    pub fn new(fam: &LaminarFamily, x: &FractionalSolution) -> Self {
        let one_sided: Vec<(usize, Rational)> =
            fam.one_sided().into_iter().map(|i| (i, x.weights[fam.id(i)].clone())).collect();
        let mut values: Vec<Rational> = one_sided.iter().map(|(_, w)| w.clone()).collect();
        values.sort();
        values.dedup();
        ThresholdProfile { one_sided, values }
    }

    pub fn len(&self) -> usize {
        self.one_sided.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_sided.is_empty()
    }

    /// Positions of `𝓛₁^{>α}`.
    pub fn level(&self, alpha: &Rational) -> Vec<usize> {
        self.one_sided.iter().filter(|(_, w)| w > alpha).map(|&(i, _)| i).collect()
    }

    /// `r_α = |𝓛₁^{>α}| / |𝓛₁|`.
    pub fn r(&self, alpha: &Rational) -> Rational {
        if self.is_empty() {
            return Rational::zero();
        }
        Rational::new(self.level(alpha).len().into(), self.len().into())
    }

    /// `∫₀¹ r_α dα` as an exact piecewise-constant sum.
    pub fn integral(&self) -> Rational {
        let mut cuts = vec![Rational::zero()];
        cuts.extend(self.values.iter().filter(|v| **v > Rational::zero() && **v < Rational::one()).cloned());
        cuts.push(Rational::one());
        cuts.windows(2).map(|w| (&w[1] - &w[0]) * self.r(&w[0])).fold(Rational::zero(), |a, b| a + b)
    }

    /// `Σ_{C∈𝓛₁} x(C) = |𝓛₁| · ∫₀¹ r_α dα`.
    pub fn integral_identity_holds(&self) -> bool {
        let total = rational::sum(self.one_sided.iter().map(|(_, w)| w));
        total == self.integral() * Rational::from_integer(self.len().into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::flower;
    use crate::harness::Mode;
    use crate::planar::classify_family;
    use crate::rational::ratio;

    #[test]
    fn integral_matches_mass() {
        let inst = flower(4);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        let x = FractionalSolution { mode: Mode::Vertex, weights: vec![ratio(1, 4), ratio(1, 4), ratio(1, 3), ratio(1, 6)] };
        let p = ThresholdProfile::new(&fam, &x);
        assert_eq!(p.integral(), ratio(1, 1) / ratio(4, 1));
        assert!(p.integral_identity_holds());
        assert_eq!(p.r(&ratio(1, 4)), ratio(1, 4));
        assert_eq!(p.r(&Rational::zero()), Rational::one());
    }
}
