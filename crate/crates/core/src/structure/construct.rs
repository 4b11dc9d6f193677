use std::collections::BTreeMap;

use super::incidence::{compute_incidences, is_crossing, sub_incidences, Incidence, Pockets};
use crate::error::{Error, Result};
use crate::planar::{FaceSet, LaminarFamily};

/// The construction for families whose cycles are all one-sided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseConstruction {
    /// Edges of the auxiliary graph on cycle ids, one per non-crossing incidence.
    pub aux_edges: Vec<(usize, usize)>,
    /// Extra v-incidences added at vertices lying on four or more cycles.
    pub extra: Vec<Incidence>,
    pub m: Vec<Incidence>,
    pub mstar: Vec<usize>,
}

/// Base construction for an all-one-sided family with at least three cycles:
/// every non-crossing incidence, plus `k − 3` v-incidences at each vertex on
/// `k ≥ 4` cycles (lexicographically first, as many as exist).
pub fn build_base_mstar(fam: &LaminarFamily) -> Result<BaseConstruction> {
    if fam.one_sided().len() != fam.len() || fam.len() < 3 {
        return Err(Error::PreconditionViolated(format!(
            "base construction needs at least three cycles, all one-sided ({} of {})",
            fam.one_sided().len(),
            fam.len()
        )));
    }
    let all = compute_incidences(fam);
    let crossing: Vec<bool> = all.iter().map(|i| is_crossing(fam, i)).collect();
    let mut m: Vec<Incidence> = Vec::new();
    let mut aux_edges = Vec::new();
    for (inc, &c) in all.iter().zip(&crossing) {
        if !c {
            aux_edges.push(inc.pair);
            m.push(inc.clone());
        }
    }
    let mut on: BTreeMap<usize, usize> = BTreeMap::new();
    for c in fam.cycles() {
        for &v in c.vertices() {
            *on.entry(v).or_default() += 1;
        }
    }
    let mut extra = Vec::new();
    for (&v, &k) in &on {
        if k < 4 {
            continue;
        }
        let at_v = all.iter().zip(&crossing).filter(|(i, &c)| c && i.vertices == [v]).map(|(i, _)| i.clone());
        extra.extend(at_v.take(k - 3));
    }
    m.extend(extra.iter().cloned());
    let mstar = extract_vertices(&m);
    Ok(BaseConstruction { aux_edges, extra, m, mstar })
}

/// One vertex (the lowest) per incidence, sorted.
pub(crate) fn extract_vertices(m: &[Incidence]) -> Vec<usize> {
    let mut out: Vec<usize> = m.iter().map(|i| i.vertices[0]).collect();
    out.sort_unstable();
    out
}

/// A good and structured incidence multiset, built recursively by splitting
/// at a two-sided cycle whose side holds no other two-sided cycle.
pub fn build_good_structured(fam: &LaminarFamily) -> Result<Vec<Incidence>> {
    if fam.len() < 2 || fam.num_one_sided_sides() <= 2 {
        return Ok(Vec::new());
    }
    if fam.one_sided().len() == fam.len() {
        return Ok(build_base_mstar(fam)?.m);
    }
    let (star, s1) = split_side(fam);
    let sides = [fam.side(star, s1).clone(), fam.side(star, 1 - s1).clone()];
    let halves: Vec<LaminarFamily> = sides
        .iter()
        .map(|s| {
            let members: Vec<usize> = (0..fam.len()).filter(|&j| fam.inside(j, s)).collect();
            fam.subfamily(&members)
        })
        .collect::<Result<_>>()?;
    let all = compute_incidences(fam);
    let star_id = fam.id(star);
    let mut out = Vec::new();
    for i in 0..2 {
        let half = &halves[i];
        let mi = build_good_structured(half)?;
        let replace: Vec<Incidence> = compute_incidences(half)
            .into_iter()
            .filter(|inc| {
                inc.involves(star_id) && half.is_one_sided(half.position_of(inc.partner(star_id)).unwrap())
            })
            .filter(|inc| !is_crossing(half, inc))
            .collect();
        for inc in mi {
            if replace.contains(&inc) {
                out.push(replacement(fam, &all, star, &sides[1 - i], &inc, i == 0)?);
            } else {
                out.push(inc);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `(C*, s1)`: the two-sided cycle and side used to split, with side `s1`
/// ⊆-minimal among all sides of two-sided cycles; ties by id then side.
pub fn split_side(fam: &LaminarFamily) -> (usize, usize) {
    let two: Vec<(usize, usize)> =
        (0..fam.len()).filter(|&i| !fam.is_one_sided(i)).flat_map(|i| [(i, 0), (i, 1)]).collect();
    *two.iter()
        .filter(|&&(i, s)| {
            let a = fam.side(i, s);
            !two.iter().any(|&(j, t)| (j, t) != (i, s) && fam.side(j, t).is_subset(a) && fam.side(j, t) != a)
        })
        .min_by_key(|&&(i, s)| (fam.id(i), s))
        .expect("a two-sided cycle exists")
}

/// The ordered candidates for replacing the non-crossing incidence `inc`
/// between `C*` and a one-sided cycle `N` on side `i`: the minimal
/// sub-incidences between `N` and cycles inside `far` (the other side),
/// keyed by the first position along `C*`'s stored orientation within the
/// arc spanned by `V(inc)`, then by the angular rank of the partner at that
/// vertex walking the `far` corners from the incoming `C*` edge, then by id.
pub fn ordered_replacements(
    fam: &LaminarFamily,
    all: &[Incidence],
    star: usize,
    far: &FaceSet,
    inc: &Incidence,
) -> Vec<Incidence> {
    let star_id = fam.id(star);
    let n_id = inc.partner(star_id);
    let mut cands: Vec<Incidence> = sub_incidences(fam, all, inc)
        .into_iter()
        .filter(|j| j.involves(n_id) && fam.inside(fam.position_of(j.partner(n_id)).unwrap(), far))
        .collect();
    let c = fam.cycle(star);
    let len = c.len();
    let mut pos: Vec<usize> = inc.vertices.iter().map(|&v| c.index_of(v).unwrap()).collect();
    pos.sort_unstable();
    // The arc spanned by the incidence leaves out exactly the gaps along C*
    // that bound a pocket holding a one-sided side. Start after such a gap,
    // the largest if several.
    let n_pos = fam.position_of(n_id).unwrap();
    let pockets = Pockets::between(fam, star, n_pos);
    let g = fam.graph();
    let gap_is_inner = |k: usize| -> bool {
        let e = c.edges()[k];
        if fam.cycle(n_pos).contains_edge(e) {
            return true;
        }
        let (a, b) = (g.face_of(2 * e), g.face_of(2 * e + 1));
        let f = if far.contains(a) { b } else { a };
        pockets.empty_at(f)
    };
    let mut start = pos[0];
    let mut best = (false, 0);
    for k in 0..pos.len() {
        let next = pos[(k + 1) % pos.len()];
        let gap = (next + len - pos[k]) % len;
        let gap = if gap == 0 { len } else { gap };
        let key = (!gap_is_inner(pos[k]), gap);
        if key > best {
            best = key;
            start = next;
        }
    }
    let offset = |v: usize| (c.index_of(v).unwrap() + len - start) % len;
    let rank = |v: usize, partner: usize| -> usize {
        let k = c.index_of(v).unwrap();
        let e_in = c.edges()[(k + len - 1) % len];
        let e_out = c.edges()[k];
        let deg = g.degree(v);
        let p_in = g.position(g.dart_from(e_in, v));
        let p_out = g.position(g.dart_from(e_out, v));
        let faces = g.corner_faces(v);
        let ccw = far.contains(faces[p_in]);
        let corners: Vec<usize> = if ccw {
            (0..(p_out + deg - p_in) % deg).map(|t| faces[(p_in + t) % deg]).collect()
        } else {
            (0..(p_in + deg - p_out) % deg).map(|t| faces[(p_in + deg - 1 - t) % deg]).collect()
        };
        let q = fam.position_of(partner).unwrap();
        let side = fam.side_inside(q, far).map(|s| fam.side(q, s));
        side.and_then(|s| corners.iter().position(|&f| s.contains(f))).unwrap_or(usize::MAX)
    };
    cands.sort_by_cached_key(|j| {
        let (first, v) = j.vertices.iter().map(|&v| (offset(v), v)).min().unwrap();
        let partner = j.partner(n_id);
        (first, rank(v, partner), partner, j.vertices.clone())
    });
    cands
}

/// `f₁` (first candidate) for incidences on the split side, `f₂` (first
/// non-crossing candidate, else the first) for the other side.
fn replacement(
    fam: &LaminarFamily,
    all: &[Incidence],
    star: usize,
    far: &FaceSet,
    inc: &Incidence,
    first_side: bool,
) -> Result<Incidence> {
    let cands = ordered_replacements(fam, all, star, far, inc);
    let Some(first) = cands.first() else {
        return Err(Error::StructureInvariantViolated(format!("no minimal sub-incidence below {inc:?}")));
    };
    if first_side {
        return Ok(first.clone());
    }
    Ok(cands.iter().find(|j| !is_crossing(fam, j)).unwrap_or(first).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{chain, star_split, flower, point_label, STAR_SPLIT_V, STAR_SPLIT_W};
    use crate::planar::classify_family;

    #[test]
    fn chain_and_small_families() {
        let inst = chain(3);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        assert!(build_good_structured(&fam).unwrap().is_empty());
        let inst = flower(3);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        assert_eq!(build_good_structured(&fam).unwrap(), compute_incidences(&fam));
    }

    #[test]
    fn five_petals_add_two_copies() {
        let inst = flower(5);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        let base = build_base_mstar(&fam).unwrap();
        assert_eq!(base.aux_edges.len(), 5);
        assert_eq!(base.extra.len(), 2);
        assert!(base.extra.iter().all(|i| i.vertices == [0]));
        assert_eq!(base.mstar.iter().filter(|&&v| v == 0).count(), 7);
        assert!(base.m.len() <= 3 * 5 - 6);
    }

    #[test]
    fn star_split_f2_of_c2() {
        let inst = star_split();
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        let vid = |p| inst.vertex_by_label(&point_label(p)).unwrap();
        let (v, w) = (vid(STAR_SPLIT_V), vid(STAR_SPLIT_W));
        let id = |n: &str| inst.cycle_by_name(n).unwrap();
        let star = id("C*");
        let c4 = id("C4");
        // the side of C* holding C4 and C5
        let s1 = fam.side_inside(c4, fam.side(star, 0)).map(|_| 0).unwrap_or(1);
        let far = fam.side(star, s1).clone();
        let all = compute_incidences(&fam);
        let inc = Incidence::new(star, id("C2"), vec![v, w]);
        let cands = ordered_replacements(&fam, &all, star, &far, &inc);
        let f2 = cands.iter().find(|j| !is_crossing(&fam, j)).unwrap();
        assert_eq!(*f2, Incidence::new(c4, id("C2"), vec![v, w]));
    }
}
