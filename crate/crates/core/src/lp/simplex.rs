use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Maximizes `c·x` subject to `A x ≤ b`, `x ≥ 0`, with `b ≥ 0`, over exact
/// rationals. Dense tableau, slack basis start, Bland's rule for both the
/// entering and leaving choice. Returns `None` when unbounded.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Option<(Rational, Vec<Rational>)> {
    let m = a.len();
    let n = c.len();
    assert!(b.iter().all(|x| !x.is_negative()), "slack start needs b ≥ 0");
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = Rational::from_integer(1.into());
            row[width - 1] = b[i].clone();
            row
        })
        .collect();
    // reduced costs; the last entry holds minus the objective value
    let mut z = vec![Rational::zero(); width];
    z[..n].clone_from_slice(c);
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(enter) = (0..n + m).find(|&j| z[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let r = &t[i][width - 1] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => r < *best || (r == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, r));
            }
        }
        let (p, _) = leave?;
        let piv = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x /= &piv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == p || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let f = z[enter].clone();
        for (x, y) in z.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        basis[p] = enter;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some((-z[width - 1].clone(), x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook() {
        // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3
        let (val, x) = maximize(&[r(&[1, 1]), r(&[1, 3]), r(&[1, 0])], &r(&[4, 6, 3]), &r(&[3, 2])).unwrap();
        assert_eq!(val, int(11));
        assert_eq!(x, r(&[3, 1]));
    }

    #[test]
    fn fractional_optimum() {
        // odd cycle packing on a triangle of pairwise conflicts: value 3/2
        let (val, _) = maximize(&[r(&[1, 1, 0]), r(&[0, 1, 1]), r(&[1, 0, 1])], &r(&[1, 1, 1]), &r(&[1, 1, 1])).unwrap();
        assert_eq!(val, ratio(3, 2));
    }

    #[test]
    fn unbounded() {
        assert!(maximize(&[r(&[1, -1])], &r(&[1]), &r(&[1, 1])).is_none());
    }

    #[test]
    fn degenerate_terminates() {
        // a classic cycling example for the largest-coefficient rule
        let a = vec![
            vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)],
            vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)],
            r(&[0, 0, 1, 0]),
        ];
        let c = vec![ratio(3, 4), int(-150), ratio(1, 50), int(-6)];
        let (val, _) = maximize(&a, &r(&[0, 0, 1]), &c).unwrap();
        assert_eq!(val, ratio(1, 20));
    }
}
