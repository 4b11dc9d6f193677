use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planar::{Cycle, EmbeddedGraph};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Vertex,
    Edge,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Vertex => "vertex",
            Mode::Edge => "edge",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(Mode::Vertex),
            "edge" => Ok(Mode::Edge),
            _ => Err(Error::InvalidInstance(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Str(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<Label>,
    pub edges: Vec<[Label; 2]>,
    pub rotations: std::collections::BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cycles: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub demand: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_cap: Option<usize>,
    /// Optional display names for explicit cycles.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
    /// Optional starting weights for explicit cycles, as "p/q".
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub graph: GraphJson,
    pub family: FamilyJson,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

pub const DEFAULT_LENGTH_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Explicit {
        cycles: Vec<Cycle>,
        names: Vec<String>,
        weights: Vec<Rational>,
    },
    All { length_cap: usize },
    Odd { length_cap: usize },
    DCycles { demand: Vec<usize>, length_cap: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: EmbeddedGraph,
    pub labels: Vec<Label>,
    pub family: FamilySpec,
    pub mode: Mode,
    pub seed: u64,
    pub name: Option<String>,
    pub generator: Option<String>,
}

impl Instance {
    /// An instance over integer-labelled vertices with an explicit family.
    pub fn explicit(graph: EmbeddedGraph, cycles: Vec<Cycle>, mode: Mode) -> Self {
        let labels = (0..graph.num_vertices() as i64).map(Label::Int).collect();
        Instance {
            graph,
            labels,
            family: FamilySpec::Explicit { cycles, names: Vec::new(), weights: Vec::new() },
            mode,
            seed: 0,
            name: None,
            generator: None,
        }
    }

    pub fn with_family(graph: EmbeddedGraph, family: FamilySpec, mode: Mode) -> Self {
        let mut inst = Instance::explicit(graph, Vec::new(), mode);
        inst.family = family;
        inst
    }

    pub fn named(mut self, name: &str, generator: &str, seed: u64) -> Self {
        self.name = Some(name.to_string());
        self.generator = Some(generator.to_string());
        self.seed = seed;
        self
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.to_string() == label)
    }

    /// Position of the explicit cycle with the given name.
    pub fn cycle_by_name(&self, name: &str) -> Option<usize> {
        self.cycle_names().iter().position(|n| n == name)
    }

    pub fn explicit_cycles(&self) -> Option<&[Cycle]> {
        match &self.family {
            FamilySpec::Explicit { cycles, .. } => Some(cycles),
            _ => None,
        }
    }

    pub fn cycle_names(&self) -> Vec<String> {
        match &self.family {
            FamilySpec::Explicit { names, cycles, .. } if names.len() == cycles.len() => names.clone(),
            _ => Vec::new(),
        }
    }

    pub fn from_json(j: &InstanceJson) -> Result<Self> {
        let bad = |m: String| Error::InvalidInstance(m);
        let labels = j.graph.vertices.clone();
        let mut index: HashMap<String, usize> = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.to_string(), i).is_some() {
                return Err(bad(format!("duplicate vertex {l}")));
            }
        }
        let look = |l: &Label| index.get(&l.to_string()).copied().ok_or_else(|| bad(format!("unknown vertex {l}")));
        let edges = j
            .graph
            .edges
            .iter()
            .map(|[u, v]| Ok((look(u)?, look(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut rotation = vec![Vec::new(); labels.len()];
        for (k, rot) in &j.graph.rotations {
            let v = *index.get(k).ok_or_else(|| bad(format!("rotation for unknown vertex {k}")))?;
            rotation[v] = rot.clone();
        }
        let graph = EmbeddedGraph::new(labels.len(), edges, rotation)?;
        let check_edges = |es: &[usize]| -> Result<()> {
            match es.iter().find(|&&e| e >= graph.num_edges()) {
                Some(e) => Err(bad(format!("unknown edge {e}"))),
                None => Ok(()),
            }
        };
        let cap = j.family.length_cap.unwrap_or(DEFAULT_LENGTH_CAP);
        let family = match j.family.kind.as_str() {
            "explicit" => {
                let cycles = j
                    .family
                    .cycles
                    .iter()
                    .map(|es| {
                        check_edges(es)?;
                        Cycle::new(&graph, es)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let weights = j
                    .family
                    .weights
                    .iter()
                    .map(|s| rational::parse(s).ok_or_else(|| bad(format!("bad weight {s:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                if !weights.is_empty() && weights.len() != cycles.len() {
                    return Err(bad("weights do not match cycles".into()));
                }
                FamilySpec::Explicit { cycles, names: j.family.names.clone(), weights }
            }
            "all" => FamilySpec::All { length_cap: cap },
            "odd" => FamilySpec::Odd { length_cap: cap },
            "dcycles" => {
                check_edges(&j.family.demand)?;
                FamilySpec::DCycles { demand: j.family.demand.clone(), length_cap: cap }
            }
            k => return Err(bad(format!("unknown family kind {k:?}"))),
        };
        Ok(Instance {
            graph,
            labels,
            family,
            mode: j.mode,
            seed: j.seed,
            name: j.name.clone(),
            generator: j.generator.clone(),
        })
    }

    pub fn to_json(&self) -> InstanceJson {
        let g = &self.graph;
        let rotations = g
            .rotation_edges()
            .into_iter()
            .enumerate()
            .map(|(v, r)| (self.labels[v].to_string(), r))
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|&(u, v)| [self.labels[u].clone(), self.labels[v].clone()])
            .collect();
        let family = match &self.family {
            FamilySpec::Explicit { cycles, names, weights } => FamilyJson {
                kind: "explicit".into(),
                cycles: cycles.iter().map(|c| c.edges().to_vec()).collect(),
                demand: Vec::new(),
                length_cap: None,
                names: names.clone(),
                weights: weights.iter().map(rational::format).collect(),
            },
            FamilySpec::All { length_cap } => FamilyJson::kind("all", Vec::new(), *length_cap),
            FamilySpec::Odd { length_cap } => FamilyJson::kind("odd", Vec::new(), *length_cap),
            FamilySpec::DCycles { demand, length_cap } => FamilyJson::kind("dcycles", demand.clone(), *length_cap),
        };
        InstanceJson {
            graph: GraphJson { vertices: self.labels.clone(), edges, rotations },
            family,
            mode: self.mode,
            seed: self.seed,
            name: self.name.clone(),
            generator: self.generator.clone(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let j: InstanceJson = serde_json::from_str(s).map_err(|e| Error::InvalidInstance(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("instance serializes")
    }
}

impl FamilyJson {
    fn kind(kind: &str, demand: Vec<usize>, cap: usize) -> Self {
        FamilyJson {
            kind: kind.into(),
            cycles: Vec::new(),
            demand,
            length_cap: Some(cap),
            names: Vec::new(),
            weights: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str = r#"{
        "graph": {"vertices": [1, 2], "edges": [[1, 2], [1, 2], [1, 2]],
                  "rotations": {"1": [0, 1, 2], "2": [2, 1, 0]}},
        "family": {"kind": "all"},
        "mode": "vertex", "seed": 7
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let inst = Instance::parse(THETA).unwrap();
        assert_eq!(inst.graph.num_faces(), 3);
        assert_eq!(inst.family, FamilySpec::All { length_cap: DEFAULT_LENGTH_CAP });
        let again = Instance::parse(&inst.to_json_string()).unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn rejects_unknown_ids() {
        let bad = THETA.replace("[1, 2], [1, 2], [1, 2]", "[1, 2], [1, 3], [1, 2]");
        assert!(matches!(Instance::parse(&bad), Err(Error::InvalidInstance(_))));
        let bad = THETA.replace(r#""kind": "all""#, r#""kind": "explicit", "cycles": [[0, 9]]"#);
        assert!(Instance::parse(&bad).is_err());
    }
}
