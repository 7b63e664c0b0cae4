//! Curve arrangements and drawings, their planarizations, and the liftings of
//! decompositions of a planarization back to the original graph.
//!
//! Everything is combinatorial: a curve (or drawn edge) is just the ordered
//! list of crossing ids met along it. Crossing ids are indexed in sorted order.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, Zero};

use crate::decomp::{elimination_decomposition, Bag, Layering, PathDecomposition, TreeDecomposition, WeakPathDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::oracles::exact_treewidth;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CurveArrangement {
    pub curves: Vec<Vec<String>>,
    pub genus: u64,
    /// Optional cap on crossings per curve.
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawnEdge {
    pub tail: Vertex,
    pub head: Vertex,
    /// Crossing ids in order from tail to head.
    pub crossings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    pub graph: Graph,
    pub edges: Vec<DrawnEdge>,
    pub genus: u64,
}

/// `G'` together with the maps back to the original curves or edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Planarization {
    pub gprime: Graph,
    /// Sorted crossing ids; crossing `i` is vertex `offset + i` of `G'`.
    pub crossing_ids: Vec<String>,
    /// 0 for arrangements, `n` for drawings (original vertices come first).
    pub offset: usize,
    /// The vertices of the original graph each `G'` vertex stands for.
    pub owners: Vec<Vec<Vertex>>,
    /// The `G'` vertices along each curve or drawn edge, in order.
    pub paths: Vec<Vec<Vertex>>,
    /// For each crossing, the two curves or drawn edges through it.
    pub carriers: Vec<(usize, usize)>,
}

/// Sorted ids, the crossing sequence of each list, and the carrier pairs.
type CrossingIndex = (Vec<String>, Vec<Vec<usize>>, Vec<(usize, usize)>);

/// Maps each crossing id to its index and carrier pair, checking that every
/// id lies on exactly two distinct lists, once on each.
fn index_crossings<'a>(
    lists: impl Iterator<Item = &'a Vec<String>>,
    bad: fn(String) -> Error,
) -> Result<CrossingIndex> {
    let lists: Vec<&Vec<String>> = lists.collect();
    let mut seen: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (c, list) in lists.iter().enumerate() {
        for id in list.iter() {
            let on = seen.entry(id.as_str()).or_default();
            if on.last() == Some(&c) {
                return Err(bad(format!("crossing `{id}` occurs twice on curve {c}")));
            }
            on.push(c);
        }
    }
    let mut carriers = Vec::with_capacity(seen.len());
    for (id, on) in &seen {
        if on.len() != 2 {
            return Err(bad(format!("crossing `{id}` lies on {} curves, expected 2", on.len())));
        }
        carriers.push((on[0], on[1]));
    }
    let index: BTreeMap<&str, usize> = seen.keys().enumerate().map(|(i, id)| (*id, i)).collect();
    let sequences = lists
        .iter()
        .map(|list| list.iter().map(|id| index[id.as_str()]).collect())
        .collect();
    let ids = seen.keys().map(|s| s.to_string()).collect();
    Ok((ids, sequences, carriers))
}

impl CurveArrangement {
    /// Number of crossings `m`.
    pub fn crossing_count(&self) -> usize {
        self.curves.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn validate(&self) -> Result<()> {
        self.planarize().map(|_| ())
    }

    /// One vertex per crossing, joined along each curve.
    pub fn planarize(&self) -> Result<Planarization> {
        let (ids, sequences, carriers) = index_crossings(self.curves.iter(), Error::InvalidArrangement)?;
        if let Some(cap) = self.cap {
            check_cap(&sequences, cap)?;
        }
        let mut gprime = Graph::new(ids.len());
        for seq in &sequences {
            for w in seq.windows(2) {
                gprime.add_edge(w[0], w[1])?;
            }
        }
        let owners = carriers.iter().map(|&(a, b)| vec![a, b]).collect();
        Ok(Planarization {
            gprime,
            crossing_ids: ids,
            offset: 0,
            owners,
            paths: sequences,
            carriers,
        })
    }
}

fn check_cap(sequences: &[Vec<usize>], cap: usize) -> Result<()> {
    match sequences.iter().position(|s| s.len() > cap) {
        Some(curve) => Err(Error::CurveCapExceeded {
            curve,
            crossings: sequences[curve].len(),
            cap,
        }),
        None => Ok(()),
    }
}

/// Intersection graph of the curves.
pub fn string_graph(a: &CurveArrangement) -> Result<Graph> {
    let p = a.planarize()?;
    Graph::from_edges(a.curves.len(), p.carriers.iter().copied())
}

impl Drawing {
    pub fn crossing_count(&self) -> usize {
        self.edges.iter().map(|e| e.crossings.len()).sum::<usize>() / 2
    }

    pub fn validate(&self) -> Result<()> {
        self.planarize().map(|_| ())
    }

    /// Original vertices keep their ids; crossing `i` becomes vertex `n + i`.
    /// A crossing of directed edges `v1 v2` and `w1 w2` stands for `v1` and `w1`.
    pub fn planarize(&self) -> Result<Planarization> {
        let g = &self.graph;
        let n = g.n();
        let mut drawn = BTreeSet::new();
        for e in &self.edges {
            if e.tail >= n || e.head >= n || !g.has_edge(e.tail, e.head) {
                return Err(Error::InvalidDrawing(format!("({},{}) is not an edge of the graph", e.tail, e.head)));
            }
            if !drawn.insert((e.tail.min(e.head), e.tail.max(e.head))) {
                return Err(Error::InvalidDrawing(format!("edge ({},{}) drawn twice", e.tail, e.head)));
            }
        }
        if drawn.len() != g.m() {
            let (u, v) = g.edges().find(|e| !drawn.contains(e)).unwrap_or((0, 0));
            return Err(Error::InvalidDrawing(format!("edge ({u},{v}) is not drawn")));
        }
        let (ids, sequences, carriers) =
            index_crossings(self.edges.iter().map(|e| &e.crossings), Error::InvalidDrawing)?;
        let mut gprime = Graph::new(n + ids.len());
        let mut paths = Vec::with_capacity(self.edges.len());
        for (e, seq) in self.edges.iter().zip(&sequences) {
            let path: Vec<Vertex> = std::iter::once(e.tail)
                .chain(seq.iter().map(|&c| n + c))
                .chain(std::iter::once(e.head))
                .collect();
            for w in path.windows(2) {
                gprime.add_edge(w[0], w[1])?;
            }
            paths.push(path);
        }
        let mut owners: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
        for &(a, b) in &carriers {
            let mut o = vec![self.edges[a].tail, self.edges[b].tail];
            o.sort_unstable();
            o.dedup();
            owners.push(o);
        }
        Ok(Planarization {
            gprime,
            crossing_ids: ids,
            offset: n,
            owners,
            paths,
            carriers,
        })
    }
}

impl Planarization {
    /// Replaces every `G'` vertex in each bag by its owners.
    pub fn lift_bags(&self, bags: &[Bag]) -> Vec<Bag> {
        bags.iter()
            .map(|b| b.iter().flat_map(|&x| self.owners[x].iter().copied()).collect())
            .collect()
    }
}

fn check_base(p: &Planarization, tree: &TreeDecomposition, layering: &Layering) -> Result<()> {
    if p.gprime.n() == 0 && tree.bags.iter().all(Bag::is_empty) && layering.layers.iter().all(Bag::is_empty) {
        return Ok(());
    }
    tree.validate(&p.gprime)?;
    layering.validate(&p.gprime)
}

/// Curves with no crossings.
fn isolated_curves(a: &CurveArrangement) -> Vec<Vertex> {
    (0..a.curves.len()).filter(|&c| a.curves[c].is_empty()).collect()
}

/// Lifted tree decomposition, with a leaf bag hung off node 0 for each curve
/// without crossings.
fn lift_string_tree(a: &CurveArrangement, p: &Planarization, tree: &TreeDecomposition) -> TreeDecomposition {
    let mut lifted = TreeDecomposition {
        bags: p.lift_bags(&tree.bags),
        tree_edges: tree.tree_edges.clone(),
    };
    if lifted.bags.is_empty() {
        lifted.bags.push(Bag::new());
    }
    for c in isolated_curves(a) {
        lifted.tree_edges.push((0, lifted.bags.len()));
        lifted.bags.push(Bag::from([c]));
    }
    lifted
}

/// Tree decomposition and layering of the string graph from a tree
/// decomposition and layering of `G'`. Layer `i` collects the curves whose
/// first-touched `G'` layer lies in `[i(k-1), (i+1)(k-1) - 1]`; curves
/// without crossings go to layer 0.
pub fn lift_string_layered(
    a: &CurveArrangement,
    tree: &TreeDecomposition,
    layering: &Layering,
    k: usize,
) -> Result<(TreeDecomposition, Layering)> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("per-curve cap k must be at least 2, got {k}")));
    }
    let p = a.planarize()?;
    check_cap(&p.paths, k)?;
    check_base(&p, tree, layering)?;
    let lifted = lift_string_tree(a, &p, tree);

    let layer_of = layering.layer_of(p.gprime.n());
    let mut layers: Vec<Bag> = Vec::new();
    for (v, path) in p.paths.iter().enumerate() {
        let f = path.iter().filter_map(|&x| layer_of[x]).min().unwrap_or(0);
        let group = f / (k - 1);
        if layers.len() <= group {
            layers.resize(group + 1, Bag::new());
        }
        layers[group].insert(v);
    }
    Ok((lifted, Layering { layers }))
}

/// Tree and path decompositions of the string graph: bag `i` of the path
/// holds both curves through each crossing of layer `i`. Curves without
/// crossings are added to the first bag.
pub fn lift_string_path(
    a: &CurveArrangement,
    tree: &TreeDecomposition,
    layering: &Layering,
) -> Result<(TreeDecomposition, PathDecomposition)> {
    let p = a.planarize()?;
    check_base(&p, tree, layering)?;
    let lifted = lift_string_tree(a, &p, tree);
    let mut bags = p.lift_bags(&layering.layers);
    let isolated = isolated_curves(a);
    if !isolated.is_empty() {
        if bags.is_empty() {
            bags.push(Bag::new());
        }
        bags[0].extend(isolated);
    }
    Ok((lifted, PathDecomposition { bags }))
}

/// Tree and weak path decompositions of the drawn graph obtained by replacing
/// each `G'` vertex by the vertices it belongs to.
pub fn lift_drawing(
    d: &Drawing,
    tree: &TreeDecomposition,
    layering: &Layering,
) -> Result<(TreeDecomposition, WeakPathDecomposition)> {
    let p = d.planarize()?;
    check_base(&p, tree, layering)?;
    let mut lifted = TreeDecomposition {
        bags: p.lift_bags(&tree.bags),
        tree_edges: tree.tree_edges.clone(),
    };
    if lifted.bags.is_empty() {
        lifted.bags.push(Bag::new());
    }
    let weak = WeakPathDecomposition {
        bags: p.lift_bags(&layering.layers),
    };
    Ok((lifted, weak))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseMode {
    /// Min-fill elimination, ties to the smallest id.
    Heuristic,
    /// Optimal decomposition from the treewidth oracle, up to `cap` vertices.
    Exact { cap: usize },
}

/// Min-fill elimination ordering.
pub fn min_fill_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).clone()).collect();
    let mut alive: BTreeSet<Vertex> = g.vertices().collect();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let fill = |v: Vertex| {
            let nb: Vec<Vertex> = adj[v].iter().copied().collect();
            let mut missing = 0usize;
            for (i, &x) in nb.iter().enumerate() {
                missing += nb[i + 1..].iter().filter(|y| !adj[x].contains(y)).count();
            }
            missing
        };
        let v = alive.iter().copied().min_by_key(|&v| (fill(v), v)).unwrap_or(0);
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        for &x in &nb {
            adj[x].remove(&v);
            for &y in &nb {
                if x != y {
                    adj[x].insert(y);
                }
            }
        }
        adj[v].clear();
        alive.remove(&v);
        order.push(v);
    }
    order
}

/// A tree decomposition and BFS layering of `gp` to feed the liftings. The
/// layered width of the pair is whatever it turns out to be.
pub fn base_decomposition(gp: &Graph, mode: BaseMode, root: Vertex) -> Result<(TreeDecomposition, Layering)> {
    if gp.n() == 0 {
        return Ok((TreeDecomposition::single(Bag::new()), Layering { layers: Vec::new() }));
    }
    let layering = crate::decomp::bfs_layering(gp, root)?;
    let tree = match mode {
        BaseMode::Heuristic => elimination_decomposition(gp, &min_fill_order(gp)),
        BaseMode::Exact { cap } => exact_treewidth(gp, cap)?.decomposition,
    };
    Ok((tree, layering))
}

/// `max(0, (tw + 1)^2 / 48 - n / 2)`.
pub fn crossing_lower_bound(tw: u64, n: u64) -> BigRational {
    let t = BigInt::from(tw) + 1;
    let value = BigRational::new(&t * &t, BigInt::from(48)) - BigRational::new(BigInt::from(n), BigInt::from(2));
    if value < BigRational::zero() {
        BigRational::zero()
    } else {
        value
    }
}
