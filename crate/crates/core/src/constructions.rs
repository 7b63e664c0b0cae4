//! Explicit orthogonal decomposition pairs for the standard examples, plus
//! the domino path decomposition built from a layered tree decomposition and
//! the pair obtained from a two-part vertex partition.
//!
//! Star decompositions put the root bag at node 0 and order leaves by vertex id.

use std::collections::BTreeSet;

use crate::decomp::{layered_width, restrict, width, Bag, Layering, PathDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Column-pair and row-pair path decompositions of the `n x n` grid
/// (row-major ids). Each has `n - 1` bags of size `2n`; they are 4-orthogonal.
pub fn grid_orthogonal_paths(n: usize) -> Result<(PathDecomposition, PathDecomposition)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("grid pair needs n >= 2, got {n}")));
    }
    let columns = (0..n - 1).map(|c| (0..n).flat_map(move |r| [r * n + c, r * n + c + 1]));
    let rows = (0..n - 1).map(|r| (0..n).flat_map(move |c| [r * n + c, (r + 1) * n + c]));
    Ok((PathDecomposition::new(columns), PathDecomposition::new(rows)))
}

/// `P = (V ∪ {w_1}, ..., V ∪ {w_n})` and `Q = (W ∪ {v_1}, ..., W ∪ {v_n})`
/// for `K_{n,n}` with `v_i = i`, `w_j = n + j`.
pub fn knn_orthogonal_paths(n: usize) -> Result<(PathDecomposition, PathDecomposition)> {
    if n < 1 {
        return Err(Error::InvalidParameter("K_{n,n} pair needs n >= 1".into()));
    }
    let p = (0..n).map(|j| (0..n).chain([n + j]));
    let q = (0..n).map(|i| (n..2 * n).chain([i]));
    Ok((PathDecomposition::new(p), PathDecomposition::new(q)))
}

fn star(root: &BTreeSet<Vertex>, leaves: Vec<Bag>) -> TreeDecomposition {
    let tree_edges = (1..=leaves.len()).map(|i| (0, i)).collect();
    let mut bags = vec![root.clone()];
    bags.extend(leaves);
    TreeDecomposition { bags, tree_edges }
}

fn closed_neighbourhood(g: &Graph, v: Vertex) -> Bag {
    let mut bag = g.neighbors(v).clone();
    bag.insert(v);
    bag
}

/// Star decompositions for a bipartite graph with sides `(A, B)`: `S` has
/// root `A` and a leaf `N[w]` per `w ∈ B`; `T` is symmetric. They are
/// `Δ`-orthogonal and each has magnitude `|V| + |E|`.
pub fn bipartite_star_pair(
    g: &Graph,
    a: &BTreeSet<Vertex>,
    b: &BTreeSet<Vertex>,
) -> Result<(TreeDecomposition, TreeDecomposition)> {
    let partition = a.is_disjoint(b) && a.len() + b.len() == g.n() && a.iter().chain(b).all(|&v| v < g.n());
    if !partition {
        return Err(Error::InvalidParameter("(A, B) is not a partition of the vertex set".into()));
    }
    if let Some((u, v)) = g.edges().find(|(u, v)| a.contains(u) == a.contains(v)) {
        return Err(Error::InvalidParameter(format!("edge ({u},{v}) lies inside one side")));
    }
    let s = star(a, b.iter().map(|&w| closed_neighbourhood(g, w)).collect());
    let t = star(b, a.iter().map(|&v| closed_neighbourhood(g, v)).collect());
    Ok((s, t))
}

/// Star decompositions of the 1-subdivision of `K_{n,n}` (ids as in
/// [`crate::graph::subdivided_knn`]). Any two bags meet in at most 3 vertices.
pub fn subdivision_star_pair(n: usize) -> Result<(TreeDecomposition, TreeDecomposition)> {
    if n < 1 {
        return Err(Error::InvalidParameter("subdivision pair needs n >= 1".into()));
    }
    let x = |i: usize, j: usize| 2 * n + i * n + j;
    let v_side: BTreeSet<Vertex> = (0..n).collect();
    let w_side: BTreeSet<Vertex> = (n..2 * n).collect();
    let s_leaves = (0..n)
        .map(|j| v_side.iter().copied().chain([n + j]).chain((0..n).map(|i| x(i, j))).collect())
        .collect();
    let t_leaves = (0..n)
        .map(|i| w_side.iter().copied().chain([i]).chain((0..n).map(|j| x(i, j))).collect())
        .collect();
    Ok((star(&v_side, s_leaves), star(&w_side, t_leaves)))
}

/// `(V_1 ∪ V_2, ..., V_{t-1} ∪ V_t)` where `V_t` is an appended empty layer.
/// Requires `tree` and `layering` to be valid for `g`.
pub fn domino_from_layered(tree: &TreeDecomposition, layering: &Layering, g: &Graph) -> Result<PathDecomposition> {
    tree.validate(g)?;
    layering.validate(g)?;
    let mut layers = layering.layers.clone();
    layers.push(Bag::new());
    Ok(PathDecomposition {
        bags: layers.windows(2).map(|w| w[0].union(&w[1]).copied().collect()).collect(),
    })
}

/// Result of checking the domino neighbourhood property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominoReport {
    /// Layered width `k` of the tree decomposition.
    pub layered_width: usize,
    /// Largest width of the tree restricted to the union of the domino bags
    /// containing a vertex, over all vertices.
    pub max_neighbourhood_width: isize,
}

impl DominoReport {
    /// `max_neighbourhood_width <= 3k - 1`.
    pub fn holds(&self) -> bool {
        self.max_neighbourhood_width < 3 * self.layered_width as isize
    }
}

/// Measures, for every vertex `v`, the width of `tree` restricted to the
/// union of the bags of `domino` containing `v`.
pub fn domino_report(tree: &TreeDecomposition, layering: &Layering, domino: &PathDecomposition) -> Result<DominoReport> {
    let k = layered_width(tree, layering)?;
    let vertices: BTreeSet<Vertex> = domino.bags.iter().flatten().copied().collect();
    let mut worst = -1;
    for v in vertices {
        let around: BTreeSet<Vertex> = domino
            .bags
            .iter()
            .filter(|b| b.contains(&v))
            .flatten()
            .copied()
            .collect();
        worst = worst.max(width(&restrict(tree, &around)));
    }
    Ok(DominoReport {
        layered_width: k,
        max_neighbourhood_width: worst,
    })
}

/// Given a partition `(V1, V2)` and path decompositions of `G[V1]` and
/// `G[V2]` (in `g`'s ids), adds `V2` to every bag of `p1` and `V1` to every
/// bag of `p2`. The results are `(2c + 2)`-orthogonal for widths at most `c`.
pub fn vertex_partition_orthogonal(
    g: &Graph,
    v1: &BTreeSet<Vertex>,
    v2: &BTreeSet<Vertex>,
    p1: &PathDecomposition,
    p2: &PathDecomposition,
) -> Result<(PathDecomposition, PathDecomposition)> {
    if !v1.is_disjoint(v2) || v1.len() + v2.len() != g.n() || v1.iter().chain(v2).any(|&v| v >= g.n()) {
        return Err(Error::InvalidParameter("(V1, V2) is not a partition of the vertex set".into()));
    }
    check_induced(g, v1, p1)?;
    check_induced(g, v2, p2)?;
    let widen = |p: &PathDecomposition, extra: &BTreeSet<Vertex>| {
        let bags: Vec<Bag> = if p.bags.is_empty() {
            vec![extra.clone()]
        } else {
            p.bags.iter().map(|b| b.union(extra).copied().collect()).collect()
        };
        PathDecomposition { bags }
    };
    Ok((widen(p1, v2), widen(p2, v1)))
}

/// Validates `p` as a path decomposition of `G[part]` without relabelling.
fn check_induced(g: &Graph, part: &BTreeSet<Vertex>, p: &PathDecomposition) -> Result<()> {
    let (sub, old) = g.induced(part);
    let index: std::collections::BTreeMap<Vertex, Vertex> = old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut bags = Vec::with_capacity(p.bags.len());
    for bag in &p.bags {
        let mut mapped = Bag::new();
        for v in bag {
            match index.get(v) {
                Some(&i) => {
                    mapped.insert(i);
                }
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {v} appears in a decomposition of the other part"
                    )))
                }
            }
        }
        bags.push(mapped);
    }
    if bags.is_empty() && sub.n() == 0 {
        return Ok(());
    }
    PathDecomposition { bags }.validate(&sub)
}
