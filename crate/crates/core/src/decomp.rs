//! Tree, path, weak path decompositions and layerings, their validators, and
//! the scalar measures defined on bag collections.
//!
//! Empty bags are allowed everywhere. A validator reports the first failed
//! axiom in a fixed order (structure, vertex coverage, edge coverage,
//! connectivity) with the smallest witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub type Bag = BTreeSet<Vertex>;

/// Anything that is a list of bags.
pub trait Bags {
    fn bags(&self) -> &[Bag];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Bag>,
    /// Edges between node indices into `bags`.
    pub tree_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<Bag>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakPathDecomposition {
    pub bags: Vec<Bag>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    pub layers: Vec<Bag>,
}

impl Bags for TreeDecomposition {
    fn bags(&self) -> &[Bag] {
        &self.bags
    }
}
impl Bags for PathDecomposition {
    fn bags(&self) -> &[Bag] {
        &self.bags
    }
}
impl Bags for WeakPathDecomposition {
    fn bags(&self) -> &[Bag] {
        &self.bags
    }
}
impl Bags for Layering {
    fn bags(&self) -> &[Bag] {
        &self.layers
    }
}

fn to_bags<I, B>(bags: I) -> Vec<Bag>
where
    I: IntoIterator<Item = B>,
    B: IntoIterator<Item = Vertex>,
{
    bags.into_iter().map(|b| b.into_iter().collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { node: usize, vertex: Vertex },
    TreeNodeOutOfRange { x: usize, y: usize },
    TreeEdgeCount { nodes: usize, edges: usize },
    TreeDisconnected { node: usize },
    VertexUncovered { vertex: Vertex },
    EdgeUncovered { u: Vertex, v: Vertex },
    VertexDisconnected { vertex: Vertex },
    VertexInTwoLayers { vertex: Vertex },
    EdgeSpansLayers { u: Vertex, v: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} holds vertex {vertex}, which is not in the graph")
            }
            Violation::TreeNodeOutOfRange { x, y } => write!(f, "tree edge ({x},{y}) names a missing node"),
            Violation::TreeEdgeCount { nodes, edges } => {
                write!(f, "a tree on {nodes} nodes needs {} edges, found {edges}", nodes.saturating_sub(1))
            }
            Violation::TreeDisconnected { node } => write!(f, "tree node {node} is not reachable from node 0"),
            Violation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::EdgeUncovered { u, v } => write!(f, "edge ({u},{v}) is not covered"),
            Violation::VertexDisconnected { vertex } => {
                write!(f, "the bags containing vertex {vertex} are not connected")
            }
            Violation::VertexInTwoLayers { vertex } => write!(f, "vertex {vertex} is in more than one layer"),
            Violation::EdgeSpansLayers { u, v } => write!(f, "edge ({u},{v}) joins non-adjacent layers"),
        }
    }
}

impl Violation {
    /// Short machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            Violation::VertexOutOfRange { .. } => "vertex_out_of_range",
            Violation::TreeNodeOutOfRange { .. } => "tree_node_out_of_range",
            Violation::TreeEdgeCount { .. } => "tree_edge_count",
            Violation::TreeDisconnected { .. } => "tree_disconnected",
            Violation::VertexUncovered { .. } => "vertex_uncovered",
            Violation::EdgeUncovered { .. } => "edge_uncovered",
            Violation::VertexDisconnected { .. } => "vertex_disconnected",
            Violation::VertexInTwoLayers { .. } => "vertex_in_two_layers",
            Violation::EdgeSpansLayers { .. } => "edge_spans_layers",
        }
    }
}

fn check_range(bags: &[Bag], g: &Graph) -> std::result::Result<(), Violation> {
    for (node, bag) in bags.iter().enumerate() {
        if let Some(&vertex) = bag.range(g.n()..).next() {
            return Err(Violation::VertexOutOfRange { node, vertex });
        }
    }
    Ok(())
}

/// For each vertex, the sorted list of bag indices containing it.
fn occurrences(bags: &[Bag], n: usize) -> Vec<Vec<usize>> {
    let mut occ = vec![Vec::new(); n];
    for (i, bag) in bags.iter().enumerate() {
        for &v in bag {
            occ[v].push(i);
        }
    }
    occ
}

fn check_cover(occ: &[Vec<usize>]) -> std::result::Result<(), Violation> {
    match occ.iter().position(Vec::is_empty) {
        Some(vertex) => Err(Violation::VertexUncovered { vertex }),
        None => Ok(()),
    }
}

fn is_consecutive(idx: &[usize]) -> bool {
    idx.windows(2).all(|w| w[1] == w[0] + 1)
}

fn check_tree_shape(td: &TreeDecomposition) -> std::result::Result<(), Violation> {
    let b = td.bags.len();
    let mut adj = vec![Vec::new(); b];
    for &(x, y) in &td.tree_edges {
        if x >= b || y >= b || x == y {
            return Err(Violation::TreeNodeOutOfRange { x, y });
        }
        adj[x].push(y);
        adj[y].push(x);
    }
    if td.tree_edges.len() + 1 != b && b > 0 {
        return Err(Violation::TreeEdgeCount {
            nodes: b,
            edges: td.tree_edges.len(),
        });
    }
    if b == 0 && !td.tree_edges.is_empty() {
        return Err(Violation::TreeEdgeCount { nodes: 0, edges: td.tree_edges.len() });
    }
    let mut seen = vec![false; b];
    if b > 0 {
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    if let Some(node) = seen.iter().position(|s| !s) {
        return Err(Violation::TreeDisconnected { node });
    }
    Ok(())
}

impl TreeDecomposition {
    pub fn new<I, B>(bags: I, tree_edges: Vec<(usize, usize)>) -> Self
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = Vertex>,
    {
        TreeDecomposition {
            bags: to_bags(bags),
            tree_edges,
        }
    }

    /// A single bag holding `bag`.
    pub fn single(bag: Bag) -> Self {
        TreeDecomposition {
            bags: vec![bag],
            tree_edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Neighbour lists of the underlying tree (no validation).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(x, y) in &self.tree_edges {
            if x < adj.len() && y < adj.len() {
                adj[x].push(y);
                adj[y].push(x);
            }
        }
        adj
    }

    pub fn check(&self, g: &Graph) -> std::result::Result<(), Violation> {
        check_range(&self.bags, g)?;
        check_tree_shape(self)?;
        let occ = occurrences(&self.bags, g.n());
        check_cover(&occ)?;
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(Violation::EdgeUncovered { u, v });
            }
        }
        // Support of v is connected iff it spans |support| - 1 tree edges.
        let mut induced_edges = vec![0usize; g.n()];
        for &(x, y) in &self.tree_edges {
            for v in self.bags[x].intersection(&self.bags[y]) {
                induced_edges[*v] += 1;
            }
        }
        for (vertex, nodes) in occ.iter().enumerate() {
            if induced_edges[vertex] + 1 != nodes.len() {
                return Err(Violation::VertexDisconnected { vertex });
            }
        }
        Ok(())
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.check(g).map_err(|v| Error::invalid("tree decomposition", v))
    }
}

impl PathDecomposition {
    pub fn new<I, B>(bags: I) -> Self
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = Vertex>,
    {
        PathDecomposition { bags: to_bags(bags) }
    }

    pub fn check(&self, g: &Graph) -> std::result::Result<(), Violation> {
        check_range(&self.bags, g)?;
        let occ = occurrences(&self.bags, g.n());
        check_cover(&occ)?;
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(Violation::EdgeUncovered { u, v });
            }
        }
        for (vertex, idx) in occ.iter().enumerate() {
            if !is_consecutive(idx) {
                return Err(Violation::VertexDisconnected { vertex });
            }
        }
        Ok(())
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.check(g).map_err(|v| Error::invalid("path decomposition", v))
    }

    pub fn to_tree(&self) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.bags.clone(),
            tree_edges: (1..self.bags.len()).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn to_weak(&self) -> WeakPathDecomposition {
        WeakPathDecomposition { bags: self.bags.clone() }
    }
}

impl WeakPathDecomposition {
    pub fn new<I, B>(bags: I) -> Self
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = Vertex>,
    {
        WeakPathDecomposition { bags: to_bags(bags) }
    }

    pub fn check(&self, g: &Graph) -> std::result::Result<(), Violation> {
        check_range(&self.bags, g)?;
        let occ = occurrences(&self.bags, g.n());
        check_cover(&occ)?;
        for (u, v) in g.edges() {
            // Some i has both ends in P_i ∪ P_{i+1}.
            let near = occ[u].iter().any(|&a| occ[v].iter().any(|&b| a.abs_diff(b) <= 1));
            if !near {
                return Err(Violation::EdgeUncovered { u, v });
            }
        }
        for (vertex, idx) in occ.iter().enumerate() {
            if !is_consecutive(idx) {
                return Err(Violation::VertexDisconnected { vertex });
            }
        }
        Ok(())
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.check(g).map_err(|v| Error::invalid("weak path decomposition", v))
    }
}

impl Layering {
    pub fn new<I, B>(layers: I) -> Self
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = Vertex>,
    {
        Layering { layers: to_bags(layers) }
    }

    /// Layer index of every vertex (valid layerings only).
    pub fn layer_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut at = vec![None; n];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                if v < n {
                    at[v] = Some(i);
                }
            }
        }
        at
    }

    pub fn check(&self, g: &Graph) -> std::result::Result<(), Violation> {
        check_range(&self.layers, g)?;
        let occ = occurrences(&self.layers, g.n());
        if let Some(vertex) = occ.iter().position(|o| o.len() > 1) {
            return Err(Violation::VertexInTwoLayers { vertex });
        }
        check_cover(&occ)?;
        for (u, v) in g.edges() {
            if occ[u][0].abs_diff(occ[v][0]) > 1 {
                return Err(Violation::EdgeSpansLayers { u, v });
            }
        }
        Ok(())
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.check(g).map_err(|v| Error::invalid("layering", v))
    }

    pub fn to_weak(&self) -> WeakPathDecomposition {
        WeakPathDecomposition { bags: self.layers.clone() }
    }
}

/// Any of the four decomposition kinds, as read from or written to JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyDecomposition {
    Tree(TreeDecomposition),
    Path(PathDecomposition),
    WeakPath(WeakPathDecomposition),
    Layering(Layering),
}

impl AnyDecomposition {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyDecomposition::Tree(_) => "tree",
            AnyDecomposition::Path(_) => "path",
            AnyDecomposition::WeakPath(_) => "weakpath",
            AnyDecomposition::Layering(_) => "layering",
        }
    }

    pub fn check(&self, g: &Graph) -> std::result::Result<(), Violation> {
        match self {
            AnyDecomposition::Tree(d) => d.check(g),
            AnyDecomposition::Path(d) => d.check(g),
            AnyDecomposition::WeakPath(d) => d.check(g),
            AnyDecomposition::Layering(d) => d.check(g),
        }
    }

    /// The underlying tree decomposition, for kinds that are one.
    pub fn as_tree(&self) -> Option<TreeDecomposition> {
        match self {
            AnyDecomposition::Tree(d) => Some(d.clone()),
            AnyDecomposition::Path(d) => Some(d.to_tree()),
            _ => None,
        }
    }

    pub fn as_weak_path(&self) -> Option<WeakPathDecomposition> {
        match self {
            AnyDecomposition::Path(d) => Some(d.to_weak()),
            AnyDecomposition::WeakPath(d) => Some(d.clone()),
            AnyDecomposition::Layering(d) => Some(d.to_weak()),
            AnyDecomposition::Tree(_) => None,
        }
    }
}

impl Bags for AnyDecomposition {
    fn bags(&self) -> &[Bag] {
        match self {
            AnyDecomposition::Tree(d) => d.bags(),
            AnyDecomposition::Path(d) => d.bags(),
            AnyDecomposition::WeakPath(d) => d.bags(),
            AnyDecomposition::Layering(d) => d.bags(),
        }
    }
}

/// Largest bag size minus one; `-1` when there are no nonempty bags.
pub fn width<D: Bags + ?Sized>(d: &D) -> isize {
    d.bags().iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
}

/// Sum of bag sizes.
pub fn magnitude<D: Bags + ?Sized>(d: &D) -> usize {
    d.bags().iter().map(Bag::len).sum()
}

pub fn universe<D: Bags + ?Sized>(d: &D) -> Bag {
    d.bags().iter().flatten().copied().collect()
}

/// Largest `|A_x ∩ B_y|` over all bag pairs.
pub fn orthogonality<A: Bags + ?Sized, B: Bags + ?Sized>(a: &A, b: &B) -> Result<usize> {
    if universe(a) != universe(b) {
        return Err(Error::UniverseMismatch);
    }
    Ok(max_intersection(a.bags(), b.bags()))
}

fn max_intersection(a: &[Bag], b: &[Bag]) -> usize {
    let mut best = 0;
    for x in a {
        for y in b {
            let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
            if small.len() <= best {
                continue;
            }
            best = best.max(small.iter().filter(|v| large.contains(v)).count());
        }
    }
    best
}

/// Largest number of vertices a single bag has in a single layer.
pub fn layered_width<D: Bags + ?Sized>(d: &D, layering: &Layering) -> Result<usize> {
    if universe(d) != universe(layering) {
        return Err(Error::UniverseMismatch);
    }
    Ok(max_intersection(d.bags(), &layering.layers))
}

/// True iff every vertex lies in at most two bags.
pub fn is_domino<D: Bags + ?Sized>(d: &D) -> bool {
    let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
    for bag in d.bags() {
        for &v in bag {
            *count.entry(v).or_default() += 1;
        }
    }
    count.values().all(|&c| c <= 2)
}

/// Same tree, every bag intersected with `keep`.
pub fn restrict(td: &TreeDecomposition, keep: &BTreeSet<Vertex>) -> TreeDecomposition {
    TreeDecomposition {
        bags: td.bags.iter().map(|b| b.intersection(keep).copied().collect()).collect(),
        tree_edges: td.tree_edges.clone(),
    }
}

/// `P_1 ∪ P_2, ..., P_{t-1} ∪ P_t`; a single bag is returned unchanged.
pub fn weak_to_path(p: &WeakPathDecomposition) -> PathDecomposition {
    if p.bags.len() <= 1 {
        return PathDecomposition { bags: p.bags.clone() };
    }
    PathDecomposition {
        bags: p.bags.windows(2).map(|w| w[0].union(&w[1]).copied().collect()).collect(),
    }
}

/// BFS layering from `root`. Remaining components follow, each rooted at its
/// smallest vertex and preceded by one empty layer.
pub fn bfs_layering(g: &Graph, root: Vertex) -> Result<Layering> {
    if root >= g.n() {
        return Err(Error::InvalidParameter(format!("root {root} out of range for n = {}", g.n())));
    }
    let mut layers: Vec<Bag> = Vec::new();
    let mut placed = vec![false; g.n()];
    let mut next_root = Some(root);
    while let Some(r) = next_root {
        if !layers.is_empty() {
            layers.push(Bag::new());
        }
        let offset = layers.len();
        for (v, d) in g.bfs_distances(r).into_iter().enumerate() {
            if let Some(d) = d {
                while layers.len() <= offset + d {
                    layers.push(Bag::new());
                }
                layers[offset + d].insert(v);
                placed[v] = true;
            }
        }
        next_root = placed.iter().position(|p| !p);
    }
    Ok(Layering { layers })
}

/// Tree decomposition read off an elimination ordering: the bag of `v` is
/// `v` plus its neighbours eliminated later in the fill-in graph, hung below
/// the bag of the earliest such neighbour. Component roots are chained to the
/// first root. Width equals the largest later-neighbourhood.
pub fn elimination_decomposition(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::single(Bag::new());
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).clone()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<Vertex> = adj[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        match later.iter().map(|&w| pos[w]).min() {
            Some(p) => tree_edges.push((i, p)),
            None => roots.push(i),
        }
        let mut bag: Bag = later.into_iter().collect();
        bag.insert(v);
        bags.push(bag);
    }
    for w in roots.windows(2) {
        tree_edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, tree_edges }
}
