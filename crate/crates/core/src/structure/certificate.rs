use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::construct::{build_good_structured, extract_vertices};
use super::incidence::{compute_incidences, is_crossing, Incidence};
use crate::error::{Error, Result};
use crate::planar::LaminarFamily;

/// `|𝓘¹(C)|` for every position: incidences between `C` and one-sided cycles.
fn one_sided_incidence_counts(fam: &LaminarFamily, all: &[Incidence]) -> Vec<usize> {
    (0..fam.len())
        .map(|i| {
            let id = fam.id(i);
            all.iter()
                .filter(|inc| inc.involves(id))
                .filter(|inc| fam.is_one_sided(fam.position_of(inc.partner(id)).unwrap()))
                .count()
        })
        .collect()
}

/// Violations of the two structured-set properties; empty when `m` is structured.
pub fn check_structured(fam: &LaminarFamily, m: &[Incidence]) -> Vec<String> {
    let all = compute_incidences(fam);
    let crossing: Vec<bool> = all.iter().map(|i| is_crossing(fam, i)).collect();
    let mut bad = Vec::new();
    let one_sided = |id: usize| fam.is_one_sided(fam.position_of(id).unwrap());
    for (inc, &c) in all.iter().zip(&crossing) {
        if !c && one_sided(inc.pair.0) && one_sided(inc.pair.1) && !m.contains(inc) {
            bad.push(format!("missing non-crossing incidence {:?} {:?}", inc.pair, inc.vertices));
        }
    }
    let mut in_m: BTreeMap<usize, usize> = BTreeMap::new();
    for inc in m {
        if let Some(v) = inc.single_vertex() {
            if is_crossing(fam, inc) {
                *in_m.entry(v).or_default() += 1;
            }
        }
    }
    for i in fam.one_sided() {
        let id = fam.id(i);
        for &v in fam.cycle(i).vertices() {
            let need = all
                .iter()
                .zip(&crossing)
                .filter(|(inc, &c)| c && inc.vertices == [v] && inc.involves(id) && one_sided(inc.partner(id)))
                .count();
            let have = in_m.get(&v).copied().unwrap_or(0);
            if have < need {
                bad.push(format!("cycle {id} at vertex {v}: {have} v-incidences, needs {need}"));
            }
        }
    }
    bad
}

/// Violations of goodness: the size bound `|M| ≤ 3|𝓛₁| − 6` and every cycle
/// hit by at least `|𝓘¹(C)|` elements.
pub fn check_good(fam: &LaminarFamily, m: &[Incidence]) -> Vec<String> {
    let mut bad = Vec::new();
    let l1 = fam.one_sided().len() as i64;
    if m.len() as i64 > 3 * l1 - 6 && !m.is_empty() {
        bad.push(format!("|M| = {} exceeds 3·{} − 6", m.len(), l1));
    }
    let all = compute_incidences(fam);
    let need = one_sided_incidence_counts(fam, &all);
    for i in 0..fam.len() {
        let have = m.iter().filter(|inc| inc.hits(fam.cycle(i))).count();
        if have < need[i] {
            bad.push(format!("cycle {} hit {} times, needs {}", fam.id(i), have, need[i]));
        }
    }
    bad
}

/// `M*`: one vertex per incidence of `m`. When the family is a chain of two
/// touching one-sided cycles, those two are homotopic so no incidence counts
/// them, and one shared vertex is added.
pub fn extract_mstar(fam: &LaminarFamily, m: &[Incidence]) -> Result<Vec<usize>> {
    if let Some(i) = (0..fam.len()).find(|&i| fam.is_redundant(i)) {
        return Err(Error::RedundantCyclePresent(fam.id(i)));
    }
    let mut out = extract_vertices(m);
    if let Some(v) = chain_patch(fam) {
        out.push(v);
        out.sort_unstable();
    }
    Ok(out)
}

/// The vertex added for a touching chain of two one-sided cycles.
pub fn chain_patch(fam: &LaminarFamily) -> Option<usize> {
    let l1 = fam.one_sided();
    if fam.len() < 2 || l1.len() != 2 {
        return None;
    }
    let (a, b) = (fam.cycle(l1[0]), fam.cycle(l1[1]));
    a.vertices().iter().copied().filter(|&v| b.contains_vertex(v)).min()
}

/// Required hits per position: `|𝓝¹(C) \ {C}|`.
pub fn required_hits(fam: &LaminarFamily) -> Vec<usize> {
    (0..fam.len()).map(|i| fam.neighbours(i).1.iter().filter(|&&j| j != i).count()).collect()
}

/// Violations of the certificate: `|M*| ≤ 3|𝓛₁|` and `|M* ∩ V(C)| ≥ |𝓝¹(C) \ {C}|`
/// with multiplicity.
pub fn check_certificate(fam: &LaminarFamily, mstar: &[usize]) -> Vec<String> {
    let mut bad = Vec::new();
    let l1 = fam.one_sided().len();
    if mstar.len() > 3 * l1 {
        bad.push(format!("|M*| = {} exceeds 3·{}", mstar.len(), l1));
    }
    for (i, need) in required_hits(fam).into_iter().enumerate() {
        let have = mstar.iter().filter(|&&v| fam.cycle(i).contains_vertex(v)).count();
        if have < need {
            bad.push(format!("cycle {} meets M* {} times, needs {}", fam.id(i), have, need));
        }
    }
    bad
}

/// The incidence set, vertex certificate and checker verdicts for one family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub ids: Vec<usize>,
    pub one_sided: usize,
    pub m: Vec<Incidence>,
    pub mstar: Vec<usize>,
    pub chain_patch: Option<usize>,
    pub structured_violations: Vec<String>,
    pub good_violations: Vec<String>,
    pub certificate_violations: Vec<String>,
}

impl Certificate {
    pub fn passes(&self) -> bool {
        self.structured_violations.is_empty() && self.good_violations.is_empty() && self.certificate_violations.is_empty()
    }

    /// `|M*| ≤ 3|𝓛₁| − 6` whenever `|𝓛₁| ≥ 3`; for chains the extra vertex
    /// keeps `|M*| ≤ 3|𝓛₁|`.
    pub fn within_size_bound(&self) -> bool {
        if self.one_sided >= 3 {
            self.mstar.len() + 6 <= 3 * self.one_sided
        } else {
            self.mstar.len() <= 3 * self.one_sided
        }
    }
}

/// Builds and checks the certificate for a family with no redundant cycles.
pub fn certify(fam: &LaminarFamily) -> Result<Certificate> {
    let m = build_good_structured(fam)?;
    let mstar = extract_mstar(fam, &m)?;
    Ok(Certificate {
        ids: fam.ids().to_vec(),
        one_sided: fam.one_sided().len(),
        structured_violations: check_structured(fam, &m),
        good_violations: check_good(fam, &m),
        certificate_violations: check_certificate(fam, &mstar),
        chain_patch: chain_patch(fam),
        m,
        mstar,
    })
}

/// A minimum multiset of vertices meeting every cycle `C` at least
/// `|𝓝¹(C) \ {C}|` times, by exhaustive search. Limited to 15 vertices on the
/// family and 8 cycles; `budget` bounds the number of search nodes.
pub fn brute_min_mstar(fam: &LaminarFamily, budget: usize) -> Result<Vec<usize>> {
    let need = required_hits(fam);
    let mut verts: Vec<usize> = fam.cycles().iter().flat_map(|c| c.vertices().iter().copied()).collect();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() > 15 || fam.len() > 8 {
        return Err(Error::BudgetExceeded(format!("{} vertices, {} cycles", verts.len(), fam.len())));
    }
    let cap = fam.one_sided().len();
    let mut nodes = 0;
    for size in 0.. {
        let mut chosen = Vec::new();
        let mut counts = vec![0usize; fam.len()];
        if search(fam, &need, size, cap, &mut chosen, &mut counts, &mut nodes, budget)? {
            chosen.sort_unstable();
            return Ok(chosen);
        }
        if size > need.iter().sum::<usize>() {
            break;
        }
    }
    Err(Error::SearchExhausted)
}

#[allow(clippy::too_many_arguments)]
fn search(
    fam: &LaminarFamily,
    need: &[usize],
    left: usize,
    cap: usize,
    chosen: &mut Vec<usize>,
    counts: &mut [usize],
    nodes: &mut usize,
    budget: usize,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded(format!("{budget} search nodes")));
    }
    let Some(i) = (0..fam.len()).find(|&i| counts[i] < need[i]) else { return Ok(true) };
    if left == 0 {
        return Ok(false);
    }
    for &v in fam.cycle(i).vertices() {
        if chosen.iter().filter(|&&u| u == v).count() >= cap.max(1) {
            continue;
        }
        chosen.push(v);
        for (j, c) in fam.cycles().iter().enumerate() {
            if c.contains_vertex(v) {
                counts[j] += 1;
            }
        }
        if search(fam, need, left - 1, cap, chosen, counts, nodes, budget)? {
            return Ok(true);
        }
        for (j, c) in fam.cycles().iter().enumerate() {
            if c.contains_vertex(v) {
                counts[j] -= 1;
            }
        }
        chosen.pop();
    }
    Ok(false)
}
