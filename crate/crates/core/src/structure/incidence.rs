use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::planar::{FaceSet, LaminarFamily};

/// An equivalence class of neighbour pairs: a cycle pair (ids, ascending) and
/// the shared vertices of the class (ascending).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Incidence {
    pub pair: (usize, usize),
    pub vertices: Vec<usize>,
}

impl Incidence {
    pub fn new(a: usize, b: usize, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Incidence { pair: (a.min(b), a.max(b)), vertices }
    }

    pub fn involves(&self, id: usize) -> bool {
        self.pair.0 == id || self.pair.1 == id
    }

    /// The other cycle of the pair.
    pub fn partner(&self, id: usize) -> usize {
        if self.pair.0 == id {
            self.pair.1
        } else {
            self.pair.0
        }
    }

    /// `V(I) ⊆ V(C)`.
    pub fn hits(&self, c: &crate::planar::Cycle) -> bool {
        self.vertices.iter().all(|&v| c.contains_vertex(v))
    }

    pub fn single_vertex(&self) -> Option<usize> {
        (self.vertices.len() == 1).then(|| self.vertices[0])
    }
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    p[x] = r;
    r
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(p, a), find(p, b));
    if a != b {
        p[a.max(b)] = a.min(b);
    }
}

/// Faces holding some one-sided side of the family, marked per face.
fn minimal_faces(fam: &LaminarFamily) -> Vec<Option<usize>> {
    let mut owner = vec![None; fam.graph().num_faces()];
    for (t, &(i, s)) in fam.minimal_sides().iter().enumerate() {
        for f in fam.side(i, s).ones() {
            owner[f] = Some(t);
        }
    }
    owner
}

/// Vertex classes of the neighbour pairs of positions `i`, `j`. Shared
/// vertices are merged along shared edges and across every pocket between the
/// two cycles that holds no one-sided side.
pub fn pair_classes(fam: &LaminarFamily, i: usize, j: usize) -> Vec<Vec<usize>> {
    pair_classes_with(fam, i, j, &minimal_faces(fam))
}

/// The regions between two cycles: faces outside both of their disjoint
/// sides, grouped into connected pockets, with a flag per pocket telling
/// whether it holds a one-sided side.
pub(crate) struct Pockets {
    /// Pocket root per face, `None` for faces in either side.
    root: Vec<Option<usize>>,
    holds_side: Vec<bool>,
}

impl Pockets {
    fn new(fam: &LaminarFamily, i: usize, j: usize, marked: &[Option<usize>]) -> Self {
        let g = fam.graph();
        let (si, sj) = fam.pair_sides(i, j);
        let (sc, sn) = (fam.side(i, si), fam.side(j, sj));
        let nf = g.num_faces();
        let in_r: Vec<bool> = (0..nf).map(|f| !sc.contains(f) && !sn.contains(f)).collect();
        let mut parent: Vec<usize> = (0..nf).collect();
        for e in 0..g.num_edges() {
            let (a, b) = (g.face_of(2 * e), g.face_of(2 * e + 1));
            if in_r[a] && in_r[b] {
                union(&mut parent, a, b);
            }
        }
        let root: Vec<Option<usize>> = (0..nf).map(|f| in_r[f].then(|| find(&mut parent, f))).collect();
        let mut holds_side = vec![false; nf];
        for f in 0..nf {
            if let (Some(r), Some(_)) = (root[f], marked[f]) {
                holds_side[r] = true;
            }
        }
        Pockets { root, holds_side }
    }

    pub(crate) fn between(fam: &LaminarFamily, i: usize, j: usize) -> Self {
        Self::new(fam, i, j, &minimal_faces(fam))
    }

    pub(crate) fn root(&self, f: usize) -> Option<usize> {
        self.root[f]
    }

    /// The face lies in a pocket holding no one-sided side.
    pub(crate) fn empty_at(&self, f: usize) -> bool {
        self.root[f].is_some_and(|r| !self.holds_side[r])
    }
}

fn pair_classes_with(fam: &LaminarFamily, i: usize, j: usize, marked: &[Option<usize>]) -> Vec<Vec<usize>> {
    let g = fam.graph();
    let (c, n) = (fam.cycle(i), fam.cycle(j));
    let shared: Vec<usize> = c.vertices().iter().copied().filter(|&v| n.contains_vertex(v)).collect();
    if shared.is_empty() {
        return Vec::new();
    }
    let nf = g.num_faces();
    let pockets = Pockets::new(fam, i, j, marked);
    let mut shared = shared;
    shared.sort_unstable();
    let index = |v: usize| shared.binary_search(&v).ok();
    let mut parent: Vec<usize> = (0..shared.len()).collect();
    for &e in c.edges() {
        if n.contains_edge(e) {
            let (a, b) = g.endpoints(e);
            union(&mut parent, index(a).unwrap(), index(b).unwrap());
        }
    }
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for (k, &v) in shared.iter().enumerate() {
        for f in g.corner_faces(v) {
            if let Some(r) = pockets.root(f) {
                touching[r].push(k);
            }
        }
    }
    for (r, ks) in touching.iter().enumerate() {
        if !pockets.holds_side[r] {
            for w in ks.windows(2) {
                union(&mut parent, w[0], w[1]);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; shared.len()];
    for k in 0..shared.len() {
        let r = find(&mut parent, k);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(shared[k]);
    }
    classes.sort();
    classes
}

/// All incidences of the family, ordered by pair then vertex set.
pub fn compute_incidences(fam: &LaminarFamily) -> Vec<Incidence> {
    let marked = minimal_faces(fam);
    let mut out = Vec::new();
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            if fam.homotopic(i, j) || !fam.cycle(i).shares_vertex(fam.cycle(j)) {
                continue;
            }
            for vs in pair_classes_with(fam, i, j, &marked) {
                out.push(Incidence::new(fam.id(i), fam.id(j), vs));
            }
        }
    }
    out.sort();
    out
}

/// Corners at `v` on side `s` of the cycle at position `i` (which passes `v`).
fn sector(fam: &LaminarFamily, i: usize, side: &FaceSet, v: usize) -> Vec<usize> {
    let g = fam.graph();
    let c = fam.cycle(i);
    let k = c.index_of(v).expect("cycle passes v");
    let e_in = c.edges()[(k + c.len() - 1) % c.len()];
    let e_out = c.edges()[k];
    let deg = g.degree(v);
    let p1 = g.position(g.dart_from(e_in, v));
    let p2 = g.position(g.dart_from(e_out, v));
    let faces = g.corner_faces(v);
    let (from, to) = if side.contains(faces[p1]) { (p1, p2) } else { (p2, p1) };
    let len = (to + deg - from) % deg;
    (0..len).map(|t| (from + t) % deg).collect()
}

/// A singleton incidence is crossing when two further cycles through its
/// vertex have sides that, with the pair's disjoint sides, are pairwise
/// disjoint and alternate around the vertex.
pub fn is_crossing(fam: &LaminarFamily, inc: &Incidence) -> bool {
    let Some(v) = inc.single_vertex() else { return false };
    let (Some(i), Some(j)) = (fam.position_of(inc.pair.0), fam.position_of(inc.pair.1)) else {
        return false;
    };
    let (si, sj) = fam.pair_sides(i, j);
    let (sc, sn) = (fam.side(i, si), fam.side(j, sj));
    let deg = fam.graph().degree(v);
    let sec_c = sector(fam, i, sc, v);
    let sec_n = sector(fam, j, sn, v);
    // corners after the C sector and before the N sector form gap 0
    let mut gap = vec![None; deg];
    let mut t = (sec_c.last().unwrap() + 1) % deg;
    let mut label = 0;
    let blocked: BTreeSet<usize> = sec_c.iter().chain(&sec_n).copied().collect();
    for _ in 0..deg {
        if sec_n.contains(&t) {
            label = 1;
        } else if !blocked.contains(&t) {
            gap[t] = Some(label);
        }
        t = (t + 1) % deg;
    }
    let mut found: [Vec<&FaceSet>; 2] = [Vec::new(), Vec::new()];
    for k in 0..fam.len() {
        if k == i || k == j || !fam.cycle(k).contains_vertex(v) {
            continue;
        }
        for s in 0..2 {
            let side = fam.side(k, s);
            if side.is_disjoint(sc) && side.is_disjoint(sn) {
                let sec = sector(fam, k, side, v);
                if let Some(g) = sec.first().and_then(|&c| gap[c]) {
                    found[g].push(side);
                }
            }
        }
    }
    found[0].iter().any(|a| found[1].iter().any(|b| a.is_disjoint(b)))
}

/// Sides `(S_a, S_b)` of an incidence's pair (ids) that are disjoint.
pub fn incidence_sides<'f>(fam: &'f LaminarFamily, inc: &Incidence) -> Option<(&'f FaceSet, &'f FaceSet)> {
    let (i, j) = (fam.position_of(inc.pair.0)?, fam.position_of(inc.pair.1)?);
    let (si, sj) = fam.pair_sides(i, j);
    Some((fam.side(i, si), fam.side(j, sj)))
}

/// `sub` is a sub-incidence of `sup`: its cycles lie inside the pair's
/// disjoint sides (one each) and its vertex set is contained in `sup`'s.
pub fn is_sub_incidence(fam: &LaminarFamily, sub: &Incidence, sup: &Incidence) -> bool {
    if !sub.vertices.iter().all(|v| sup.vertices.binary_search(v).is_ok()) {
        return false;
    }
    let Some((sa, sb)) = incidence_sides(fam, sup) else { return false };
    let (Some(p), Some(q)) = (fam.position_of(sub.pair.0), fam.position_of(sub.pair.1)) else {
        return false;
    };
    (fam.inside(p, sa) && fam.inside(q, sb)) || (fam.inside(q, sa) && fam.inside(p, sb))
}

/// Incidences of `all` that are sub-incidences of `inc` and have no
/// sub-incidence other than themselves.
pub fn sub_incidences(fam: &LaminarFamily, all: &[Incidence], inc: &Incidence) -> Vec<Incidence> {
    all.iter()
        .filter(|j| is_sub_incidence(fam, j, inc))
        .filter(|j| !all.iter().any(|k| k != *j && is_sub_incidence(fam, k, j)))
        .cloned()
        .collect()
}

/// Independent homotopy test for two neighbour pairs of positions `i`, `j` at
/// vertices `v`, `w`: some choice of arcs `P ⊆ C`, `P' ⊆ N` makes the mod-2
/// edge sum `P + P'` bound a face region holding every one-sided side.
pub fn neighbour_pairs_homotopic(fam: &LaminarFamily, i: usize, j: usize, v: usize, w: usize) -> bool {
    if v == w {
        return true;
    }
    let g = fam.graph();
    let arcs = |c: &crate::planar::Cycle| -> [Vec<usize>; 2] {
        let k = c.len();
        let (a, b) = (c.index_of(v).unwrap(), c.index_of(w).unwrap());
        let fwd = (0..(b + k - a) % k).map(|t| c.edges()[(a + t) % k]).collect();
        let bwd = (0..(a + k - b) % k).map(|t| c.edges()[(b + t) % k]).collect();
        [fwd, bwd]
    };
    let all_minimal: Vec<usize> = fam.minimal_sides().iter().flat_map(|&(p, s)| fam.side(p, s).ones()).collect();
    for p in arcs(fam.cycle(i)) {
        for q in arcs(fam.cycle(j)) {
            let mut z = FixedBitSet::with_capacity(g.num_edges());
            for &e in p.iter().chain(&q) {
                z.toggle(e);
            }
            let colour = two_colour(g, &z);
            let first = all_minimal.first().map(|&f| colour[f]);
            if all_minimal.iter().all(|&f| Some(colour[f]) == first) {
                return true;
            }
        }
    }
    false
}

/// Face parity colouring across an even edge set.
fn two_colour(g: &crate::planar::EmbeddedGraph, z: &FixedBitSet) -> Vec<bool> {
    let nf = g.num_faces();
    let mut colour = vec![None; nf];
    let mut stack = vec![0];
    colour[0] = Some(false);
    while let Some(f) = stack.pop() {
        let cf = colour[f].unwrap();
        for &d in &g.faces()[f] {
            let other = g.face_of(d ^ 1);
            let c = cf ^ z.contains(d / 2);
            if colour[other].is_none() {
                colour[other] = Some(c);
                stack.push(other);
            }
        }
    }
    colour.into_iter().map(|c| c.unwrap_or(false)).collect()
}

/// Checks that the pocket classes agree with the direct homotopy test on
/// every pair of shared vertices; returns the offending (i, j, v, w).
pub fn audit_pair_homotopy(fam: &LaminarFamily) -> Vec<(usize, usize, usize, usize)> {
    let mut bad = Vec::new();
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            if fam.homotopic(i, j) {
                continue;
            }
            let classes = pair_classes(fam, i, j);
            let class_of = |v: usize| classes.iter().position(|c| c.contains(&v));
            let shared: Vec<usize> = classes.iter().flatten().copied().collect();
            for (a, &v) in shared.iter().enumerate() {
                for &w in &shared[a + 1..] {
                    if (class_of(v) == class_of(w)) != neighbour_pairs_homotopic(fam, i, j, v, w) {
                        bad.push((fam.id(i), fam.id(j), v, w));
                    }
                }
            }
        }
    }
    bad
}
