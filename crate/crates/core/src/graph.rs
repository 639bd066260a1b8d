//! Undirected simple graphs with edge colours, 0/1 weights and a specified
//! edge, plus the JSON instance format.
//!
//! Vertices are `1..=n`; the integer order is the vertex order used by the
//! matrix construction.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Plain undirected simple graph. Edges are stored as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph {
            n,
            edges: Vec::new(),
            index: HashMap::new(),
        };
        for (pos, (u, v)) in edges.into_iter().enumerate() {
            g.push_edge(pos, u, v).map_err(Error::Parse)?;
        }
        Ok(g)
    }

    fn push_edge(&mut self, pos: usize, u: usize, v: usize) -> std::result::Result<(), String> {
        if u == v {
            return Err(format!("edge #{pos} ({u},{v}) is a loop"));
        }
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(format!("edge #{pos} ({u},{v}) names vertex {w} outside 1..={}", self.n));
            }
        }
        let key = (u.min(v), u.max(v));
        if self.index.contains_key(&key) {
            return Err(format!("edge #{pos} ({u},{v}) duplicates an earlier edge"));
        }
        self.index.insert(key, self.edges.len());
        self.edges.push(key);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// `adj[u]` lists `(neighbour, edge index)`; `adj[0]` is empty.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, idx));
            adj[v].push((u, idx));
        }
        adj
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouredEdge {
    pub u: usize,
    pub v: usize,
    pub colour: usize,
    pub weight: u8,
}

/// Graph with colours remapped onto `1..=s`, weights in `{0, 1}` and an
/// oriented specified edge `(v1, v2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    graph: Graph,
    colours: Vec<usize>,
    weights: Vec<u8>,
    s: usize,
    specified: (usize, usize),
    specified_index: usize,
}

impl ColouredGraph {
    /// Validates and remaps colours to `1..=s`, preserving their order.
    pub fn new(n: usize, edges: &[ColouredEdge], specified: (usize, usize)) -> Result<Self> {
        let graph = Graph::new(n, edges.iter().map(|e| (e.u, e.v)))?;
        for (pos, e) in edges.iter().enumerate() {
            if e.weight > 1 {
                return Err(Error::Parse(format!(
                    "edge #{pos} ({},{}) has weight {} outside {{0,1}}",
                    e.u, e.v, e.weight
                )));
            }
        }
        let raw: Vec<usize> = edges.iter().map(|e| e.colour).collect();
        let weights = edges.iter().map(|e| e.weight).collect();
        Self::assemble(graph, raw, weights, specified)
    }

    fn assemble(graph: Graph, raw: Vec<usize>, weights: Vec<u8>, specified: (usize, usize)) -> Result<Self> {
        let distinct: BTreeSet<usize> = raw.iter().copied().collect();
        let rank: HashMap<usize, usize> = distinct.iter().enumerate().map(|(i, &c)| (c, i + 1)).collect();
        let colours = raw.iter().map(|c| rank[c]).collect();
        let (v1, v2) = specified;
        let specified_index = graph
            .edge_index(v1, v2)
            .filter(|_| v1 != v2)
            .ok_or_else(|| Error::Parse(format!("specified edge ({v1},{v2}) is not an edge of the graph")))?;
        Ok(ColouredGraph {
            graph,
            colours,
            weights,
            s: distinct.len(),
            specified,
            specified_index,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn specified(&self) -> (usize, usize) {
        self.specified
    }

    pub fn specified_index(&self) -> usize {
        self.specified_index
    }

    /// Same graph with another oriented specified edge.
    pub fn with_specified(&self, specified: (usize, usize)) -> Result<Self> {
        let raw = self.colours.clone();
        Self::assemble(self.graph.clone(), raw, self.weights.clone(), specified)
    }

    pub fn colour(&self, idx: usize) -> usize {
        self.colours[idx]
    }

    pub fn weight(&self, idx: usize) -> u8 {
        self.weights[idx]
    }

    pub fn edge(&self, idx: usize) -> ColouredEdge {
        let (u, v) = self.graph.edges[idx];
        ColouredEdge {
            u,
            v,
            colour: self.colours[idx],
            weight: self.weights[idx],
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = ColouredEdge> + '_ {
        (0..self.m()).map(|i| self.edge(i))
    }

    /// Number of distinct colours carried by weight-1 edges.
    pub fn weighted_colour_count(&self) -> usize {
        let set: BTreeSet<usize> = (0..self.m())
            .filter(|&i| self.weights[i] == 1)
            .map(|i| self.colours[i])
            .collect();
        set.len()
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            n: self.n(),
            edges: self
                .edges()
                .map(|e| EdgeRecord {
                    u: e.u,
                    v: e.v,
                    colour: Some(e.colour as i64),
                    weight: Some(e.weight as i64),
                })
                .collect(),
            specified: [self.specified.0, self.specified.1],
            bipartition: None,
        };
        serde_json::to_string_pretty(&file).expect("instance serialises")
    }
}

/// Every edge gets its own colour (`1..=m` in edge order); all weights 0.
pub fn all_unique_colouring(g: &Graph, specified: (usize, usize)) -> Result<ColouredGraph> {
    ColouredGraph::assemble(g.clone(), (1..=g.m()).collect(), vec![0; g.m()], specified)
}

/// A long-cycle question: is there a simple cycle through `specified` of
/// length at least `k`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongCycleInstance {
    pub graph: Graph,
    pub specified: (usize, usize),
    pub k: usize,
}

impl LongCycleInstance {
    pub fn new(graph: Graph, specified: (usize, usize), k: usize) -> Result<Self> {
        if k < 3 || k > graph.n() {
            return Err(Error::invalid(format!(
                "k = {k} must satisfy 3 <= k <= n = {}",
                graph.n()
            )));
        }
        if !graph.has_edge(specified.0, specified.1) {
            return Err(Error::invalid(format!(
                "specified edge ({},{}) is not an edge",
                specified.0, specified.1
            )));
        }
        Ok(LongCycleInstance { graph, specified, k })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colour: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<EdgeRecord>,
    pub specified: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<Bipartition>,
}

/// Parsed instance: the coloured graph and an optional declared bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: ColouredGraph,
    pub bipartition: Option<Bipartition>,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut graph = Graph {
        n: file.n,
        edges: Vec::new(),
        index: HashMap::new(),
    };
    let mut explicit = Vec::with_capacity(file.edges.len());
    let mut weights = Vec::with_capacity(file.edges.len());
    for (pos, rec) in file.edges.iter().enumerate() {
        graph.push_edge(pos, rec.u, rec.v).map_err(Error::Parse)?;
        if let Some(c) = rec.colour {
            if c < 1 {
                return Err(Error::Parse(format!(
                    "edge #{pos} ({},{}) has colour {c}; colours must be positive",
                    rec.u, rec.v
                )));
            }
        }
        let w = rec.weight.unwrap_or(0);
        if !(0..=1).contains(&w) {
            return Err(Error::Parse(format!(
                "edge #{pos} ({},{}) has weight {w} outside {{0,1}}",
                rec.u, rec.v
            )));
        }
        explicit.push(rec.colour.map(|c| c as usize));
        weights.push(w as u8);
    }
    // edges without a colour get fresh colours above every given one
    let mut fresh = explicit.iter().flatten().max().copied().unwrap_or(0);
    let raw = explicit
        .into_iter()
        .map(|c| {
            c.unwrap_or_else(|| {
                fresh += 1;
                fresh
            })
        })
        .collect();
    let graph = ColouredGraph::assemble(graph, raw, weights, (file.specified[0], file.specified[1]))?;
    if let Some(bp) = &file.bipartition {
        check_bipartition(graph.graph(), bp)?;
    }
    Ok(Instance {
        graph,
        bipartition: file.bipartition,
    })
}

pub fn parse_graph(text: &str) -> Result<ColouredGraph> {
    parse_instance(text).map(|inst| inst.graph)
}

fn check_bipartition(g: &Graph, bp: &Bipartition) -> Result<()> {
    let mut side = vec![None; g.n() + 1];
    for (part, verts) in [(false, &bp.u), (true, &bp.v)] {
        for &x in verts {
            if x == 0 || x > g.n() {
                return Err(Error::Parse(format!(
                    "bipartition names vertex {x} outside 1..={}",
                    g.n()
                )));
            }
            if side[x].replace(part).is_some() {
                return Err(Error::Parse(format!("vertex {x} appears twice in the bipartition")));
            }
        }
    }
    if let Some(x) = (1..=g.n()).find(|&x| side[x].is_none()) {
        return Err(Error::Parse(format!("vertex {x} is missing from the bipartition")));
    }
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| side[u] == side[v]) {
        return Err(Error::Parse(format!(
            "edge ({u},{v}) lies inside one side of the bipartition"
        )));
    }
    Ok(())
}

/// Two-colours the graph. `result[x]` is true for the V side; vertex 1 of
/// each component lands on U. Fails with an odd cycle as witness.
pub fn bipartition(g: &Graph) -> Result<Vec<bool>> {
    let adj = g.adjacency();
    let mut side: Vec<Option<bool>> = vec![None; g.n() + 1];
    let mut parent = vec![0usize; g.n() + 1];
    let mut depth = vec![0usize; g.n() + 1];
    for root in 1..=g.n() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &adj[x] {
                match side[y] {
                    None => {
                        side[y] = side[x].map(|s| !s);
                        parent[y] = x;
                        depth[y] = depth[x] + 1;
                        queue.push_back(y);
                    }
                    Some(sy) if Some(sy) == side[x] => {
                        return Err(Error::NotBipartite {
                            cycle: odd_cycle(x, y, &parent, &depth),
                        });
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(side.into_iter().map(|s| s.unwrap_or(false)).collect())
}

// Tree paths from both endpoints of a monochromatic edge meet at their
// lowest common ancestor.
fn odd_cycle(mut a: usize, mut b: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}
