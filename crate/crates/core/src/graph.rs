//! Simple undirected graphs over dense integer ids and the generators for
//! every graph family the rest of the crate works with.
//!
//! Generators publish their id scheme so that decompositions elsewhere can be
//! written down by formula:
//!
//! * `grid(n)`: vertex `(r, c)` is `r * n + c` (row-major).
//! * `complete_bipartite(a, b)`: side `v` is `0..a`, side `w` is `a..a+b`.
//! * `complete_tripartite(n)`: part `p` occupies `p*n..(p+1)*n`.
//! * `subdivided_knn(n)`: `v_i = i`, `w_j = n + j`, and the division vertex of
//!   `v_i w_j` is `2n + i*n + j`.
//! * `shift_graph(n)`: the pairs `(i, j)`, `1 <= i < j <= n`, in lexicographic order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest vertex count accepted from untrusted input.
pub const MAX_VERTICES: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts `uv`; inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge ({u},{v}) has an endpoint >= n = {n}")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    /// Connected components of `G - removed`, each sorted, ordered by smallest member.
    pub fn components_without(&self, removed: &BTreeSet<Vertex>) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        for &r in removed {
            if r < self.n() {
                seen[r] = true;
            }
        }
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_without(&BTreeSet::new())
    }

    /// Breadth-first distances from `root`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, root: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        if root >= self.n() {
            return dist;
        }
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The subgraph induced by `keep`, relabelled to `0..keep.len()`.
    /// The returned vector maps new ids back to the original ones.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> (Graph, Vec<Vertex>) {
        let old: Vec<Vertex> = keep.iter().copied().filter(|&v| v < self.n()).collect();
        let new_id: BTreeMap<Vertex, Vertex> = old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(old.len());
        for (i, &v) in old.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = new_id.get(w) {
                    g.adj[i].insert(j);
                }
            }
        }
        (g, old)
    }

    /// A proper 2-colouring `(A, B)` if one exists, colouring each component
    /// from its smallest vertex.
    pub fn bipartition(&self) -> Option<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
        let mut colour = vec![None; self.n()];
        for s in self.vertices() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u]?;
                for &w in &self.adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let a = self.vertices().filter(|&v| colour[v] == Some(false)).collect();
        let b = self.vertices().filter(|&v| colour[v] == Some(true)).collect();
        Some((a, b))
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.adj[v - 1].insert(v);
            g.adj[v].insert(v - 1);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.adj[0].insert(n - 1);
            g.adj[n - 1].insert(0);
        }
        g
    }

    /// Star with centre 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.adj[0].insert(v);
            g.adj[v].insert(0);
        }
        g
    }

    /// Complete binary tree with `levels` levels in heap order (children of `v`
    /// are `2v+1`, `2v+2`).
    pub fn complete_binary_tree(levels: u32) -> Graph {
        let n = (1usize << levels) - 1;
        let mut g = Graph::new(n);
        for v in 1..n {
            let p = (v - 1) / 2;
            g.adj[p].insert(v);
            g.adj[v].insert(p);
        }
        g
    }

    /// Disjoint union, with `other`'s ids shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = Graph::new(off + other.n());
        for (u, v) in self.edges() {
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        for (u, v) in other.edges() {
            g.adj[u + off].insert(v + off);
            g.adj[v + off].insert(u + off);
        }
        g
    }
}

/// The named families accepted by [`gen_classic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Grid,
    CompleteBipartite,
    CompleteTripartite,
    SubdividedKnn,
    AddDominant,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "grid" => Ok(Family::Grid),
            "complete_bipartite" | "knn" => Ok(Family::CompleteBipartite),
            "complete_tripartite" | "knnn" => Ok(Family::CompleteTripartite),
            "subdivided_knn" => Ok(Family::SubdividedKnn),
            "add_dominant" => Ok(Family::AddDominant),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

fn positive(name: &str, value: i64) -> Result<usize> {
    if value < 1 {
        return Err(Error::InvalidParameter(format!("{name} must be >= 1, got {value}")));
    }
    usize::try_from(value).map_err(|_| Error::InvalidParameter(format!("{name} too large")))
}

/// Dispatches to the classic generators. `params` holds the integer
/// parameters (`[n]`, or `[a, b]` for an unbalanced bipartite graph);
/// `add_dominant` needs `base`.
pub fn gen_classic(family: Family, params: &[i64], base: Option<&Graph>) -> Result<Graph> {
    let first = || -> Result<usize> {
        let v = *params
            .first()
            .ok_or_else(|| Error::InvalidParameter("missing size parameter".into()))?;
        positive("n", v)
    };
    match family {
        Family::Grid => Ok(grid(first()?)),
        Family::CompleteBipartite => {
            let a = first()?;
            let b = match params.get(1) {
                Some(&b) => positive("b", b)?,
                None => a,
            };
            Ok(complete_bipartite(a, b))
        }
        Family::CompleteTripartite => Ok(complete_tripartite(first()?)),
        Family::SubdividedKnn => Ok(subdivided_knn(first()?)),
        Family::AddDominant => {
            let g = base.ok_or_else(|| Error::InvalidParameter("add_dominant needs a base graph".into()))?;
            Ok(add_dominant(g))
        }
    }
}

pub fn grid(n: usize) -> Graph {
    let mut g = Graph::new(n * n);
    let mut labels = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let v = r * n + c;
            labels.push(format!("({r},{c})"));
            if c + 1 < n {
                g.adj[v].insert(v + 1);
                g.adj[v + 1].insert(v);
            }
            if r + 1 < n {
                g.adj[v].insert(v + n);
                g.adj[v + n].insert(v);
            }
        }
    }
    g.labels = Some(labels);
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for i in 0..a {
        for j in 0..b {
            g.adj[i].insert(a + j);
            g.adj[a + j].insert(i);
        }
    }
    let labels = (1..=a).map(|i| format!("v{i}")).chain((1..=b).map(|j| format!("w{j}")));
    g.labels = Some(labels.collect());
    g
}

pub fn complete_tripartite(n: usize) -> Graph {
    let mut g = Graph::new(3 * n);
    for u in 0..3 * n {
        for v in u + 1..3 * n {
            if u / n != v / n {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
    }
    g
}

/// 1-subdivision of `K_{n,n}`: `n^2 + 2n` vertices.
pub fn subdivided_knn(n: usize) -> Graph {
    let mut g = Graph::new(n * n + 2 * n);
    let mut labels: Vec<String> = (1..=n)
        .map(|i| format!("v{i}"))
        .chain((1..=n).map(|j| format!("w{j}")))
        .collect();
    for i in 0..n {
        for j in 0..n {
            let x = 2 * n + i * n + j;
            g.adj[i].insert(x);
            g.adj[x].insert(i);
            g.adj[n + j].insert(x);
            g.adj[x].insert(n + j);
            labels.push(format!("x{},{}", i + 1, j + 1));
        }
    }
    g.labels = Some(labels);
    g
}

/// Adds a vertex `n` adjacent to every existing vertex.
pub fn add_dominant(base: &Graph) -> Graph {
    let n = base.n();
    let mut g = Graph::new(n + 1);
    for (u, v) in base.edges() {
        g.adj[u].insert(v);
        g.adj[v].insert(u);
    }
    for v in 0..n {
        g.adj[v].insert(n);
        g.adj[n].insert(v);
    }
    if let Some(labels) = &base.labels {
        let mut l = labels.clone();
        l.push("dominant".into());
        g.labels = Some(l);
    }
    g
}

/// Shift graph `H_n`: vertices are pairs `(i, j)` with `1 <= i < j <= n`,
/// edges `(i, j)(j, l)` for `i < j < l`.
pub fn shift_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("shift graph needs n >= 2, got {n}")));
    }
    let mut index = BTreeMap::new();
    let mut labels = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            index.insert((i, j), labels.len());
            labels.push(format!("({i},{j})"));
        }
    }
    let mut g = Graph::new(labels.len());
    for i in 1..=n {
        for j in i + 1..=n {
            for l in j + 1..=n {
                g.add_edge(index[&(i, j)], index[&(j, l)])?;
            }
        }
    }
    g.labels = Some(labels);
    Ok(g)
}

/// Line graph: one vertex per edge of `g` (in [`Graph::edges`] order), two
/// adjacent when the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut l = Graph::new(edges.len());
    for inc in &incident {
        for (a, &e) in inc.iter().enumerate() {
            for &f in &inc[a + 1..] {
                l.adj[e].insert(f);
                l.adj[f].insert(e);
            }
        }
    }
    l.labels = Some(edges.iter().map(|(u, v)| format!("{u}-{v}")).collect());
    l
}

/// The plane graph `Y'_{q,r}`: subdivide every edge of the `(q+1) x (q+1)`
/// grid `r` times, put a vertex inside each internal face joined to the
/// subdivision vertices on that face's boundary, then delete the grid
/// vertices and the subdivided grid edges.
///
/// Ids: horizontal subdivision vertices first (grid row `i` in `0..=q`,
/// column `j` in `0..q`, step `s` in `0..r`), then vertical ones (row `i` in
/// `0..q`, column `j` in `0..=q`), then the `q^2` face vertices row-major.
pub fn line_grid_base(q: usize, r: usize) -> Result<Graph> {
    if q < 1 || r < 1 {
        return Err(Error::InvalidParameter(format!("q and r must be >= 1, got q={q}, r={r}")));
    }
    let horizontal = |i: usize, j: usize, s: usize| (i * q + j) * r + s;
    let h_count = (q + 1) * q * r;
    let vertical = |i: usize, j: usize, s: usize| h_count + (i * (q + 1) + j) * r + s;
    let v_count = q * (q + 1) * r;
    let face = |i: usize, j: usize| h_count + v_count + i * q + j;
    let mut g = Graph::new(h_count + v_count + q * q);
    for i in 0..q {
        for j in 0..q {
            let f = face(i, j);
            for s in 0..r {
                g.add_edge(f, horizontal(i, j, s))?;
                g.add_edge(f, horizontal(i + 1, j, s))?;
                g.add_edge(f, vertical(i, j, s))?;
                g.add_edge(f, vertical(i, j + 1, s))?;
            }
        }
    }
    Ok(g)
}

/// `L(Y'_{q,r})`, which has `4 q^2 r` vertices.
pub fn gen_line_grid(q: usize, r: usize) -> Result<Graph> {
    Ok(line_graph(&line_grid_base(q, r)?))
}

/// Default cap on materialised universal 2-tree edge counts.
pub const DEFAULT_TWO_TREE_CAP: u128 = 1_000_000;

/// Number of edges of `T_{h,d}`: the sum of `(2d)^i` over `i = 0..=h`.
/// `None` on overflow.
pub fn two_tree_edge_count(height: i64, branching: usize) -> Option<u128> {
    let base = 2u128.checked_mul(branching as u128)?;
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for i in 0..=height {
        if i > 0 {
            level = level.checked_mul(base)?;
        }
        total = total.checked_add(level)?;
    }
    Some(total)
}

/// A materialised height-`h`, `d`-branching universal 2-tree.
#[derive(Debug, Clone)]
pub struct UniversalTwoTree {
    pub height: i64,
    pub branching: usize,
    graph: Graph,
    vertex_level: Vec<usize>,
    edge_level: BTreeMap<(Vertex, Vertex), usize>,
    children: BTreeMap<(Vertex, Vertex), Vec<Vertex>>,
}

impl UniversalTwoTree {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root_edge(&self) -> Option<(Vertex, Vertex)> {
        (self.height >= 0).then_some((0, 1))
    }

    pub fn vertex_level(&self, v: Vertex) -> usize {
        self.vertex_level[v]
    }

    /// Level of edge `uv` (order-insensitive), if it is an edge.
    pub fn edge_level(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edge_level.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn level_edge_count(&self, level: usize) -> usize {
        self.edge_level.values().filter(|&&l| l == level).count()
    }

    /// The vertices added for edge `uv`, empty on the last level.
    pub fn children(&self, u: Vertex, v: Vertex) -> &[Vertex] {
        self.children
            .get(&(u.min(v), u.max(v)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Every non-leaf edge with its children, in creation order.
    pub fn child_sets(&self) -> Vec<((Vertex, Vertex), &[Vertex])> {
        let mut sets: Vec<_> = self.children.iter().map(|(&e, kids)| (e, kids.as_slice())).collect();
        sets.sort_by_key(|(_, kids)| kids.first().copied());
        sets
    }
}

/// Builds `T_{h,d}` (`h >= -1`, `d >= 1`), refusing when the predicted edge
/// count exceeds `cap`.
pub fn gen_universal_2tree(height: i64, branching: usize, cap: u128) -> Result<UniversalTwoTree> {
    if height < -1 {
        return Err(Error::InvalidParameter(format!("height must be >= -1, got {height}")));
    }
    if branching < 1 {
        return Err(Error::InvalidParameter("branching must be >= 1".into()));
    }
    let predicted = two_tree_edge_count(height, branching).unwrap_or(u128::MAX);
    if predicted > cap {
        return Err(Error::CapExceeded {
            what: format!("universal 2-tree T_{{{height},{branching}}} edges"),
            size: predicted,
            cap,
        });
    }
    let mut t = UniversalTwoTree {
        height,
        branching,
        graph: Graph::new(0),
        vertex_level: Vec::new(),
        edge_level: BTreeMap::new(),
        children: BTreeMap::new(),
    };
    if height < 0 {
        return Ok(t);
    }
    let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::from([1]), BTreeSet::from([0])];
    t.vertex_level = vec![0, 0];
    t.edge_level.insert((0, 1), 0);
    let mut frontier = vec![(0, 1)];
    for level in 1..=height as usize {
        let mut next = Vec::with_capacity(frontier.len() * 2 * branching);
        for &(u, v) in &frontier {
            let mut kids = Vec::with_capacity(branching);
            for _ in 0..branching {
                let x = adj.len();
                adj.push(BTreeSet::from([u, v]));
                adj[u].insert(x);
                adj[v].insert(x);
                t.vertex_level.push(level);
                t.edge_level.insert((u.min(x), u.max(x)), level);
                t.edge_level.insert((v.min(x), v.max(x)), level);
                next.push((u.min(x), u.max(x)));
                next.push((v.min(x), v.max(x)));
                kids.push(x);
            }
            t.children.insert((u, v), kids);
        }
        frontier = next;
    }
    t.graph = Graph { adj, labels: None };
    Ok(t)
}

/// A vertex of the lazily explored universal 2-tree, named by its ancestry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwoTreeVertex {
    Root(u8),
    Child {
        parents: Box<(TwoTreeVertex, TwoTreeVertex)>,
        index: u32,
        level: u32,
    },
}

impl TwoTreeVertex {
    pub fn level(&self) -> u32 {
        match self {
            TwoTreeVertex::Root(_) => 0,
            TwoTreeVertex::Child { level, .. } => *level,
        }
    }

    fn is_parent(&self, other: &TwoTreeVertex) -> bool {
        match self {
            TwoTreeVertex::Root(_) => false,
            TwoTreeVertex::Child { parents, .. } => &parents.0 == other || &parents.1 == other,
        }
    }
}

/// `T_{h,d}` explored on demand: only the branches that are asked about are
/// ever built, so heights far beyond materialisation are usable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LazyTwoTree {
    pub height: u32,
    pub branching: u32,
}

impl LazyTwoTree {
    pub fn new(height: u32, branching: u32) -> Result<Self> {
        if branching < 1 {
            return Err(Error::InvalidParameter("branching must be >= 1".into()));
        }
        Ok(LazyTwoTree { height, branching })
    }

    pub fn root_edge(&self) -> (TwoTreeVertex, TwoTreeVertex) {
        (TwoTreeVertex::Root(0), TwoTreeVertex::Root(1))
    }

    /// Level of edge `ab`, or `None` if `ab` is not an edge of the tree.
    pub fn edge_level(&self, a: &TwoTreeVertex, b: &TwoTreeVertex) -> Option<u32> {
        match (a, b) {
            (TwoTreeVertex::Root(x), TwoTreeVertex::Root(y)) if x != y => Some(0),
            _ if a.is_parent(b) => Some(a.level()),
            _ if b.is_parent(a) => Some(b.level()),
            _ => None,
        }
    }

    /// The `d` vertices attached to edge `ab`; empty when `ab` is on the last level.
    pub fn children(&self, a: &TwoTreeVertex, b: &TwoTreeVertex) -> Result<Vec<TwoTreeVertex>> {
        let level = self
            .edge_level(a, b)
            .ok_or_else(|| Error::InvalidParameter("not an edge of the universal 2-tree".into()))?;
        if level >= self.height {
            return Ok(Vec::new());
        }
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Ok((0..self.branching)
            .map(|index| TwoTreeVertex::Child {
                parents: Box::new((lo.clone(), hi.clone())),
                index,
                level: level + 1,
            })
            .collect())
    }
}
