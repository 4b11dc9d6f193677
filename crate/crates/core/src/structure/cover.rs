use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planar::{FaceSet, LaminarFamily};

/// A vertex set meeting every cycle that touches a chosen set of one-sided cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub m_int: Vec<usize>,
    pub m_ext: Vec<usize>,
    /// Sorted union of `m_int` and `m_ext`.
    pub m: Vec<usize>,
}

/// Interior side of every cycle relative to a reference face.
///
/// The reference is the lowest face lying in no minimal one-sided side. When
/// every face lies in one, a thin face is imagined next to an edge of the
/// first one-sided cycle `D`, inside `D`'s minimal side: `D`'s interior is its
/// minimal side and every other cycle takes the side away from the face across
/// that edge.
fn interiors(fam: &LaminarFamily) -> Vec<FaceSet> {
    let g = fam.graph();
    let covered = |f: usize| fam.minimal_sides().iter().any(|&(i, s)| fam.side(i, s).contains(f));
    let free = (0..g.num_faces()).find(|&f| !covered(f));
    let (p, special) = match free {
        Some(f) => (f, None),
        None => {
            let d = fam.one_sided()[0];
            let s = fam.minimal_side(d).unwrap();
            let e = fam.cycle(d).edges()[0];
            let (a, b) = (g.face_of(2 * e), g.face_of(2 * e + 1));
            let p = if fam.side(d, s).contains(a) { a } else { b };
            (p, Some((d, s)))
        }
    };
    (0..fam.len())
        .map(|i| match special {
            Some((d, s)) if d == i => fam.side(i, s).clone(),
            _ => {
                let s = if fam.side(i, 0).contains(p) { 1 } else { 0 };
                fam.side(i, s).clone()
            }
        })
        .collect()
}

/// A cover for the cycles at positions `f` (all one-sided): every family cycle
/// sharing a vertex with an `f` cycle contains a vertex of the result.
pub fn cover_for_set(fam: &LaminarFamily, f: &[usize]) -> Result<Cover> {
    if let Some(&i) = f.iter().find(|&&i| !fam.is_one_sided(i)) {
        return Err(Error::PreconditionViolated(format!("cycle {} is not one-sided", fam.id(i))));
    }
    if f.is_empty() {
        return Ok(Cover { m_int: vec![], m_ext: vec![], m: vec![] });
    }
    let int = interiors(fam);
    let n = fam.len();
    let within = |a: usize, b: usize| int[a].is_subset(&int[b]);
    let touch = |a: usize, b: usize| fam.cycle(a).shares_vertex(fam.cycle(b));

    // f(C): the F cycle with the smallest interior inside C that C touches
    let assign: Vec<Option<usize>> = (0..n)
        .map(|c| {
            f.iter()
                .copied()
                .filter(|&c2| within(c2, c) && (c2 == c || touch(c, c2)))
                .min_by_key(|&c2| (int[c2].count_ones(..), c2))
        })
        .collect();
    let mut m_int = Vec::new();
    for &c2 in f {
        let mut common: Vec<usize> = fam.cycle(c2).vertices().to_vec();
        for c in (0..n).filter(|&c| assign[c] == Some(c2) && c != c2) {
            common.retain(|&v| fam.cycle(c).contains_vertex(v));
        }
        let Some(&v) = common.iter().min() else {
            return Err(Error::StructureInvariantViolated(format!(
                "cycles assigned to {} share no vertex",
                fam.id(c2)
            )));
        };
        m_int.push(v);
    }

    let ext: Vec<usize> = (0..n).filter(|&c| assign[c].is_none() && f.iter().any(|&c2| touch(c, c2))).collect();
    let mut alive = vec![true; n];
    let mut m_ext = Vec::new();
    loop {
        let live: Vec<usize> = ext.iter().copied().filter(|&c| alive[c]).collect();
        let Some(c1) = live.iter().copied().find(|&c| !live.iter().any(|&d| d != c && within(d, c) && int[d] != int[c]))
        else {
            break;
        };
        let c2 = f.iter().copied().find(|&c2| touch(c1, c2)).unwrap();
        let v = fam.cycle(c1).vertices().iter().copied().filter(|&v| fam.cycle(c2).contains_vertex(v)).min().unwrap();
        m_ext.push(v);
        for c in 0..n {
            if within(c, c1) || (!f.contains(&c) && fam.cycle(c).contains_vertex(v)) {
                alive[c] = false;
            }
        }
        alive[c1] = false;
    }
    let mut m: Vec<usize> = m_int.iter().chain(&m_ext).copied().collect();
    m.sort_unstable();
    m.dedup();
    Ok(Cover { m_int, m_ext, m })
}

/// Violations of the size bound `|M| ≤ |F| + |𝓛₁|` and of the hitting property.
pub fn check_cover(fam: &LaminarFamily, f: &[usize], cover: &[usize]) -> Vec<String> {
    let mut bad = Vec::new();
    let l1 = fam.one_sided().len();
    if cover.len() > f.len() + l1 {
        bad.push(format!("|M| = {} exceeds {} + {}", cover.len(), f.len(), l1));
    }
    for c in 0..fam.len() {
        let touches = f.iter().any(|&c2| fam.cycle(c).shares_vertex(fam.cycle(c2)));
        if touches && !cover.iter().any(|&v| fam.cycle(c).contains_vertex(v)) {
            bad.push(format!("cycle {} touches F but misses M", fam.id(c)));
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{peeling, flower, point_label, PEELING_V};
    use crate::planar::classify_family;

    #[test]
    fn empty_set_needs_nothing() {
        let inst = flower(4);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        assert!(cover_for_set(&fam, &[]).unwrap().m.is_empty());
    }

    #[test]
    fn peeling_peels_at_v() {
        let inst = peeling();
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        let v = inst.vertex_by_label(&point_label(PEELING_V)).unwrap();
        let pos = |n: &str| fam.position_of(inst.cycle_by_name(n).unwrap()).unwrap();
        for f in [vec![pos("C2")], vec![pos("C2"), pos("G")]] {
            let cover = cover_for_set(&fam, &f).unwrap();
            assert!(cover.m_ext.contains(&v), "{cover:?}");
            assert!(check_cover(&fam, &f, &cover.m).is_empty());
        }
    }

    #[test]
    fn every_flower_subset_is_covered() {
        let inst = flower(5);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        for mask in 0u32..32 {
            let f: Vec<usize> = (0..5).filter(|&i| mask & (1 << i) != 0).collect();
            let cover = cover_for_set(&fam, &f).unwrap();
            assert!(check_cover(&fam, &f, &cover.m).is_empty(), "{f:?} {cover:?}");
        }
    }
}
