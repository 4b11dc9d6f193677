use crate::error::{Error, Result};

/// Half-edge `2e` runs from `edges[e].0` to `edges[e].1`, `2e + 1` runs back.
pub type Dart = usize;

pub fn rev(d: Dart) -> Dart {
    d ^ 1
}

pub fn edge_of(d: Dart) -> usize {
    d / 2
}

/// A connected planar multigraph with a rotation system fixing its sphere
/// embedding. Rotations are read counter-clockwise, so every face lies to the
/// right of the darts on its boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<Dart>>,
    pos: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<Dart>>,
}

impl EmbeddedGraph {
    /// `rotation[v]` lists the edge ids around `v` in counter-clockwise order.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != n {
            return Err(Error::MalformedRotation(format!(
                "{} rotations for {} vertices",
                rotation.len(),
                n
            )));
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::MalformedRotation(format!("edge {e} has an unknown endpoint")));
            }
            if u == v {
                return Err(Error::MalformedRotation(format!("edge {e} is a loop")));
            }
        }
        let mut seen = vec![0u8; 2 * edges.len()];
        let mut darts = Vec::with_capacity(n);
        for (v, rot) in rotation.iter().enumerate() {
            let mut out = Vec::with_capacity(rot.len());
            for &e in rot {
                let &(a, b) = edges
                    .get(e)
                    .ok_or_else(|| Error::MalformedRotation(format!("unknown edge {e} at vertex {v}")))?;
                let d = if a == v {
                    2 * e
                } else if b == v {
                    2 * e + 1
                } else {
                    return Err(Error::MalformedRotation(format!("edge {e} is not incident to vertex {v}")));
                };
                seen[d] += 1;
                out.push(d);
            }
            darts.push(out);
        }
        if let Some(d) = seen.iter().position(|&c| c != 1) {
            return Err(Error::MalformedRotation(format!(
                "edge {} appears {} times at one endpoint",
                edge_of(d),
                seen[d]
            )));
        }
        let mut g = EmbeddedGraph {
            n,
            edges,
            rotation: darts,
            pos: Vec::new(),
            face_of: Vec::new(),
            faces: Vec::new(),
        };
        g.pos = vec![0; 2 * g.edges.len()];
        for rot in &g.rotation {
            for (i, &d) in rot.iter().enumerate() {
                g.pos[d] = i;
            }
        }
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
        g.trace_faces();
        if n as i64 - g.edges.len() as i64 + g.faces.len() as i64 != 2 {
            return Err(Error::MalformedRotation(format!(
                "Euler check failed: V={} E={} F={}",
                n,
                g.edges.len(),
                g.faces.len()
            )));
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.rotation[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn trace_faces(&mut self) {
        let m = 2 * self.edges.len();
        self.face_of = vec![usize::MAX; m];
        for start in 0..m {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                self.face_of[d] = id;
                walk.push(d);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            self.faces.push(walk);
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn tail(&self, d: Dart) -> usize {
        let (u, v) = self.edges[edge_of(d)];
        if d.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(rev(d))
    }

    /// The dart of edge `e` leaving `v`.
    pub fn dart_from(&self, e: usize, v: usize) -> Dart {
        if self.edges[e].0 == v {
            2 * e
        } else {
            debug_assert_eq!(self.edges[e].1, v);
            2 * e + 1
        }
    }

    /// Outgoing darts at `v`, counter-clockwise.
    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    /// Rotation as edge ids, in the same form accepted by [`EmbeddedGraph::new`].
    pub fn rotation_edges(&self) -> Vec<Vec<usize>> {
        self.rotation.iter().map(|r| r.iter().map(|&d| edge_of(d)).collect()).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Position of an outgoing dart in its tail's rotation.
    pub fn position(&self, d: Dart) -> usize {
        self.pos[d]
    }

    pub fn succ(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.pos[d] + 1) % rot.len()]
    }

    pub fn pred(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.pos[d] + rot.len() - 1) % rot.len()]
    }

    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.succ(rev(d))
    }

    /// Face on the right of `d`.
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    /// Faces of the corners at `v` in rotation order; corner `j` sits between
    /// `rotation[j]` and `rotation[j + 1]`.
    pub fn corner_faces(&self, v: usize) -> Vec<usize> {
        let rot = &self.rotation[v];
        (0..rot.len()).map(|j| self.face_of[rot[(j + 1) % rot.len()]]).collect()
    }
}

/// Faces of a rotation system without connectivity or Euler validation.
pub fn compute_faces(g: &EmbeddedGraph) -> Vec<Vec<Dart>> {
    g.faces.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn theta() -> EmbeddedGraph {
        EmbeddedGraph::new(2, vec![(0, 1), (0, 1), (0, 1)], vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap()
    }

    #[test]
    fn theta_has_three_faces() {
        assert_eq!(theta().num_faces(), 3);
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = EmbeddedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)], vec![vec![0, 2], vec![1, 0], vec![2, 1]]).unwrap();
        assert_eq!(g.num_faces(), 2);
    }

    #[test]
    fn every_dart_on_one_face() {
        let g = theta();
        let mut count = [0; 6];
        for f in g.faces() {
            for &d in f {
                count[d] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            EmbeddedGraph::new(2, vec![(0, 0)], vec![vec![0, 0], vec![]]),
            Err(Error::MalformedRotation(_))
        ));
        assert_eq!(
            EmbeddedGraph::new(4, vec![(0, 1), (2, 3)], vec![vec![0], vec![0], vec![1], vec![1]]),
            Err(Error::NotConnected)
        );
        // theta with a rotation that is not planar at both ends: genus 1
        assert!(EmbeddedGraph::new(
            2,
            vec![(0, 1), (0, 1), (0, 1)],
            vec![vec![0, 1, 2], vec![0, 1, 2]]
        )
        .is_err());
    }
}
