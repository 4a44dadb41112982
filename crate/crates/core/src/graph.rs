//! Undirected vertex- and edge-labeled graphs, subgraph matching and
//! canonical DFS codes.
//!
//! A [`LabeledGraph`] serves both as a transaction of the input database and
//! as the body of a mined pattern. Transactions may be disconnected; pattern
//! operations ([`subgraph_isomorphic`], [`canonical_code`]) require a
//! connected, non-empty pattern.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

/// Integer vertex or edge label.
pub type Label = u32;

/// One undirected edge `{u, v}` with its label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub label: Label,
}

impl Edge {
    pub const fn new(u: u32, v: u32, label: Label) -> Self {
        Edge { u, v, label }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Adj {
    pub to: usize,
    pub label: Label,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop { vertex: u32 },
    DuplicateEdge { u: u32, v: u32 },
    VertexOutOfRange { vertex: u32, vertex_count: usize },
    Empty,
    Disconnected,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { vertex } => write!(f, "self-loop on vertex {vertex}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge {{{u},{v}}}"),
            GraphError::VertexOutOfRange { vertex, vertex_count } => {
                write!(f, "edge endpoint {vertex} out of range (graph has {vertex_count} vertices)")
            }
            GraphError::Empty => f.write_str("graph is empty"),
            GraphError::Disconnected => f.write_str("pattern graph is not connected"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Simple undirected labeled graph (no self-loops, no multi-edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    labels: Vec<Label>,
    edges: Vec<Edge>,
    adj: Vec<Vec<Adj>>,
}

impl LabeledGraph {
    pub fn new(labels: Vec<Label>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut adj: Vec<Vec<Adj>> = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if x as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, vertex_count: n });
                }
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop { vertex: e.u });
            }
            let (u, v) = (e.u as usize, e.v as usize);
            if adj[u].iter().any(|a| a.to == v) {
                return Err(GraphError::DuplicateEdge { u: e.u, v: e.v });
            }
            adj[u].push(Adj { to: v, label: e.label, edge: i });
            adj[v].push(Adj { to: u, label: e.label, edge: i });
        }
        Ok(LabeledGraph { labels, edges, adj })
    }

    /// A graph with one vertex and no edges.
    pub fn single_vertex(label: Label) -> Self {
        LabeledGraph { labels: vec![label], edges: Vec::new(), adj: vec![Vec::new()] }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `(neighbor, edge label)` pairs of `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, Label)> + '_ {
        self.adj[v].iter().map(|a| (a.to, a.label))
    }

    pub(crate) fn adjacency(&self, v: usize) -> &[Adj] {
        &self.adj[v]
    }

    pub fn edge_label(&self, u: usize, v: usize) -> Option<Label> {
        self.adj[u].iter().find(|a| a.to == v).map(|a| a.label)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for a in &self.adj[v] {
                if !seen[a.to] {
                    seen[a.to] = true;
                    count += 1;
                    stack.push(a.to);
                }
            }
        }
        count == n
    }

    /// Graph with one more edge. `to` may equal `vertex_count()`, in which case a
    /// new vertex labeled `new_label` is appended.
    pub fn extended(&self, from: u32, to: u32, edge_label: Label, new_label: Option<Label>) -> Result<Self, GraphError> {
        let mut labels = self.labels.clone();
        if to as usize == labels.len() {
            labels.push(new_label.ok_or(GraphError::VertexOutOfRange { vertex: to, vertex_count: labels.len() })?);
        }
        let mut edges = self.edges.clone();
        edges.push(Edge::new(from, to, edge_label));
        LabeledGraph::new(labels, edges)
    }

    /// Removes edge `index`; endpoints left isolated are dropped and the
    /// remaining vertices renumbered in order. Returns `None` when the result is
    /// disconnected or empty (a single-edge graph, see [`Self::one_edge_deletions`]).
    pub fn without_edge(&self, index: usize) -> Option<Self> {
        let removed = self.edges[index];
        let keep: Vec<bool> = (0..self.vertex_count())
            .map(|v| {
                let lost = (v == removed.u as usize || v == removed.v as usize) as usize;
                self.degree(v) > lost
            })
            .collect();
        let mut remap = vec![u32::MAX; self.vertex_count()];
        let mut labels = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                remap[v] = labels.len() as u32;
                labels.push(self.labels[v]);
            }
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, e)| Edge::new(remap[e.u as usize], remap[e.v as usize], e.label))
            .collect();
        let g = LabeledGraph::new(labels, edges).ok()?;
        (!g.is_empty() && g.is_connected()).then_some(g)
    }

    /// All connected graphs obtained by deleting one edge (and any vertex it
    /// leaves isolated). For a single-edge graph these are its two endpoints
    /// as one-vertex graphs.
    pub fn one_edge_deletions(&self) -> Vec<Self> {
        match self.edges.as_slice() {
            [] => Vec::new(),
            [e] => vec![Self::single_vertex(self.label(e.u as usize)), Self::single_vertex(self.label(e.v as usize))],
            _ => (0..self.edges.len()).filter_map(|i| self.without_edge(i)).collect(),
        }
    }

    fn check_pattern(&self) -> Result<(), GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(())
    }
}

/// Backtracking matcher enumerating injective, label-preserving mappings of a
/// connected pattern into a host graph. Host edges not covered by the pattern
/// are allowed.
struct Matcher<'a> {
    pattern: &'a LabeledGraph,
    host: &'a LabeledGraph,
    /// Pattern vertices in BFS order.
    order: Vec<usize>,
    /// For `order[k]`, an earlier-ordered neighbor used to seed candidates.
    anchor: Vec<Option<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

const UNMAPPED: usize = usize::MAX;

impl<'a> Matcher<'a> {
    fn new(pattern: &'a LabeledGraph, host: &'a LabeledGraph) -> Self {
        let n = pattern.vertex_count();
        // Start at the highest-degree vertex; BFS keeps every later vertex
        // adjacent to an already placed one.
        let start = (0..n).max_by_key(|&v| (pattern.degree(v), core::cmp::Reverse(v))).unwrap_or(0);
        let mut order = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        placed[start] = true;
        order.push(start);
        anchor.push(None);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for a in pattern.adjacency(v) {
                if !placed[a.to] {
                    placed[a.to] = true;
                    order.push(a.to);
                    anchor.push(Some(v));
                }
            }
        }
        Matcher { pattern, host, order, anchor, map: vec![UNMAPPED; n], used: vec![false; host.vertex_count()] }
    }

    fn feasible(&self, pv: usize, hv: usize) -> bool {
        if self.used[hv] || self.pattern.label(pv) != self.host.label(hv) {
            return false;
        }
        self.pattern.adjacency(pv).iter().all(|a| {
            let m = self.map[a.to];
            m == UNMAPPED || self.host.edge_label(hv, m) == Some(a.label)
        })
    }

    fn run<F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let pv = self.order[depth];
        let candidates: Vec<usize> = match self.anchor[depth] {
            Some(p) => self.host.adjacency(self.map[p]).iter().map(|a| a.to).collect(),
            None => (0..self.host.vertex_count()).collect(),
        };
        for hv in candidates {
            if self.feasible(pv, hv) {
                self.map[pv] = hv;
                self.used[hv] = true;
                let flow = self.run(depth + 1, visit);
                self.used[hv] = false;
                self.map[pv] = UNMAPPED;
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with every embedding of `pattern` in `host`, as a slice mapping
/// pattern vertex → host vertex. Enumeration stops early on `Break`.
pub fn for_each_embedding<F>(pattern: &LabeledGraph, host: &LabeledGraph, mut visit: F) -> Result<(), GraphError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    pattern.check_pattern()?;
    if pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return Ok(());
    }
    let _ = Matcher::new(pattern, host).run(0, &mut visit);
    Ok(())
}

/// True iff `pattern` occurs in `host`. Multiple embeddings count once.
pub fn subgraph_isomorphic(pattern: &LabeledGraph, host: &LabeledGraph) -> Result<bool, GraphError> {
    let mut found = false;
    for_each_embedding(pattern, host, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Minimal DFS code of a connected graph, encoded as bytes. Two graphs have
/// equal codes iff they are isomorphic with identical labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// One DFS code entry `(i, j, label_i, edge_label, label_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DfsEntry {
    from: u32,
    to: u32,
    from_label: Label,
    edge_label: Label,
    to_label: Label,
}

impl DfsEntry {
    fn is_forward(&self) -> bool {
        self.from < self.to
    }

    /// Rank among the extensions of a common prefix: backward edges first
    /// (nearest target first), then forward edges from the deepest rightmost
    /// path vertex.
    fn rank(&self) -> (u8, u32, Label, Label) {
        if self.is_forward() {
            (1, u32::MAX - self.from, self.edge_label, self.to_label)
        } else {
            (0, self.to, self.edge_label, 0)
        }
    }
}

#[derive(Clone)]
struct DfsState {
    /// DFS index → graph vertex.
    order: Vec<usize>,
    /// Graph vertex → DFS index.
    index: Vec<u32>,
    used: Vec<bool>,
    used_count: Vec<usize>,
    /// DFS indices on the rightmost path, root first.
    path: Vec<u32>,
}

const NO_INDEX: u32 = u32::MAX;

impl DfsState {
    fn rightmost(&self) -> u32 {
        *self.path.last().expect("non-empty path")
    }

    fn extensions(&self, g: &LabeledGraph, out: &mut Vec<(DfsEntry, usize, usize)>) {
        out.clear();
        let rm = self.rightmost();
        let rm_v = self.order[rm as usize];
        let mut rm_has_backward = false;
        for a in g.adjacency(rm_v) {
            if self.used[a.edge] {
                continue;
            }
            let j = self.index[a.to];
            if j != NO_INDEX {
                rm_has_backward = true;
                let entry = DfsEntry { from: rm, to: j, from_label: g.label(rm_v), edge_label: a.label, to_label: g.label(a.to) };
                out.push((entry, a.edge, a.to));
            }
        }
        if rm_has_backward {
            return;
        }
        let next = self.order.len() as u32;
        // Walk the rightmost path from the leaf upward; a vertex may only be
        // left behind once all of its edges are used.
        for &i in self.path.iter().rev() {
            let v = self.order[i as usize];
            for a in g.adjacency(v) {
                if !self.used[a.edge] && self.index[a.to] == NO_INDEX {
                    let entry = DfsEntry { from: i, to: next, from_label: g.label(v), edge_label: a.label, to_label: g.label(a.to) };
                    out.push((entry, a.edge, a.to));
                }
            }
            if self.used_count[v] < g.degree(v) {
                break;
            }
        }
    }

    fn apply(&self, entry: &DfsEntry, edge: usize, target: usize, g: &LabeledGraph) -> DfsState {
        let mut s = self.clone();
        s.used[edge] = true;
        let e = g.edges()[edge];
        s.used_count[e.u as usize] += 1;
        s.used_count[e.v as usize] += 1;
        if entry.is_forward() {
            let keep = s.path.iter().position(|&p| p == entry.from).expect("source on rightmost path");
            s.path.truncate(keep + 1);
            s.index[target] = entry.to;
            s.order.push(target);
            s.path.push(entry.to);
        }
        s
    }
}

fn push_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_be_bytes());
}

/// Computes the minimal DFS code of a connected, non-empty graph.
pub fn canonical_code(g: &LabeledGraph) -> Result<CanonicalCode, GraphError> {
    g.check_pattern()?;
    let mut bytes = Vec::with_capacity(8 + 20 * g.edge_count());
    push_u32(&mut bytes, g.vertex_count() as u32);
    push_u32(&mut bytes, g.edge_count() as u32);
    if g.edge_count() == 0 {
        push_u32(&mut bytes, g.label(0));
        return Ok(CanonicalCode(bytes));
    }

    let n = g.vertex_count();
    let m = g.edge_count();
    let blank = DfsState { order: Vec::new(), index: vec![NO_INDEX; n], used: vec![false; m], used_count: vec![0; n], path: Vec::new() };

    let first_key = |e: &Edge, rev: bool| {
        let (a, b) = if rev { (e.v, e.u) } else { (e.u, e.v) };
        (g.label(a as usize), e.label, g.label(b as usize), a as usize, b as usize)
    };
    let best = g
        .edges()
        .iter()
        .flat_map(|e| [first_key(e, false), first_key(e, true)])
        .map(|(la, le, lb, _, _)| (la, le, lb))
        .min()
        .expect("at least one edge");
    let mut states: Vec<DfsState> = Vec::new();
    for (idx, e) in g.edges().iter().enumerate() {
        for rev in [false, true] {
            let (la, le, lb, a, b) = first_key(e, rev);
            if (la, le, lb) != best {
                continue;
            }
            let mut s = blank.clone();
            s.order = vec![a, b];
            s.index[a] = 0;
            s.index[b] = 1;
            s.used[idx] = true;
            s.used_count[a] += 1;
            s.used_count[b] += 1;
            s.path = vec![0, 1];
            states.push(s);
        }
    }
    for x in [0, 1, best.0, best.1, best.2] {
        push_u32(&mut bytes, x);
    }

    let mut ext = Vec::new();
    for _ in 1..m {
        let mut min: Option<DfsEntry> = None;
        let mut next: Vec<DfsState> = Vec::new();
        for s in &states {
            s.extensions(g, &mut ext);
            for (entry, edge, target) in &ext {
                match min {
                    Some(cur) if entry.rank() > cur.rank() => continue,
                    Some(cur) if entry.rank() < cur.rank() => next.clear(),
                    None => {}
                    _ => {}
                }
                min = Some(*entry);
                next.push(s.apply(entry, *edge, *target, g));
            }
        }
        let entry = min.expect("connected graph always has a rightmost extension");
        for x in [entry.from, entry.to, entry.from_label, entry.edge_label, entry.to_label] {
            push_u32(&mut bytes, x);
        }
        states = next;
    }
    Ok(CanonicalCode(bytes))
}
