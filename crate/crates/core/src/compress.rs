//! Certificates extracted from orthogonal pairs: width compression, the edge
//! bound, balanced separators, and closed-form bound evaluation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{BigInt, BigRational, BigUint, ToPrimitive};

use crate::decomp::{magnitude, orthogonality, width, Bag, TreeDecomposition, WeakPathDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Smallest `t >= 1` with `k t^2 >= s`, i.e. `ceil(sqrt(s / k))`.
fn ceil_sqrt_ratio(s: usize, k: usize) -> usize {
    let mut t = ((s as f64 / k as f64).sqrt() as usize).max(1);
    while (t as u128) * (t as u128) * (k as u128) < s as u128 {
        t += 1;
    }
    while t > 1 && ((t - 1) as u128) * ((t - 1) as u128) * (k as u128) >= s as u128 {
        t -= 1;
    }
    t
}

/// Which cyclic label was deleted, and the resulting decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compression {
    pub t: usize,
    /// Label in `1..=t`.
    pub label: usize,
    pub deleted: Bag,
    pub decomposition: TreeDecomposition,
}

/// Builds a tree decomposition of width below `2 sqrt(ks)` from a tree
/// decomposition `tree` and a weak path decomposition `weak` that are
/// `k`-orthogonal, where `s` is the magnitude of `weak`.
pub fn compress(g: &Graph, tree: &TreeDecomposition, weak: &WeakPathDecomposition, k: usize) -> Result<Compression> {
    tree.validate(g)?;
    weak.validate(g)?;
    if g.n() == 0 {
        return Ok(Compression {
            t: 1,
            label: 1,
            deleted: Bag::new(),
            decomposition: TreeDecomposition::single(Bag::new()),
        });
    }
    let actual = orthogonality(tree, weak)?;
    if actual > k {
        return Err(Error::OrthogonalityExceeded { actual, bound: k });
    }
    let s = magnitude(weak);
    let t = ceil_sqrt_ratio(s, k);

    let mut totals = vec![0usize; t];
    for (j, bag) in weak.bags.iter().enumerate() {
        totals[j % t] += bag.len();
    }
    let best = (0..t).min_by_key(|&i| (totals[i], i)).unwrap_or(0);
    let deleted: Bag = weak.bags.iter().skip(best).step_by(t).flatten().copied().collect();

    let adjacency = tree.adjacency();
    let mut bags: Vec<Bag> = Vec::new();
    let mut tree_edges = Vec::new();
    for comp in g.components_without(&deleted) {
        let members: BTreeSet<Vertex> = comp.into_iter().collect();
        let kept: Vec<usize> = (0..tree.bags.len()).filter(|&x| !tree.bags[x].is_disjoint(&members)).collect();
        let offset = bags.len();
        let local: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(i, &x)| (x, offset + i)).collect();
        for &x in &kept {
            bags.push(tree.bags[x].intersection(&members).copied().collect());
            for &y in &adjacency[x] {
                if x < y {
                    if let Some(&ly) = local.get(&y) {
                        tree_edges.push((local[&x], ly));
                    }
                }
            }
        }
        if offset > 0 {
            tree_edges.push((0, offset));
        }
    }
    if bags.is_empty() {
        bags.push(Bag::new());
    }
    for bag in &mut bags {
        bag.extend(deleted.iter().copied());
    }
    let decomposition = TreeDecomposition { bags, tree_edges };

    let w1 = (width(&decomposition) + 1) as u128;
    if w1 * w1 > 4 * k as u128 * s as u128 {
        return Err(Error::InvariantBroken(format!(
            "compressed width {} exceeds 2 sqrt({k} * {s}) - 1",
            w1 as i128 - 1
        )));
    }
    Ok(Compression {
        t,
        label: best + 1,
        deleted,
        decomposition,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBoundReport {
    pub edges: usize,
    pub k: usize,
    pub magnitude: usize,
    /// `(k - 1) * magnitude`.
    pub bound: i128,
    pub holds: bool,
}

/// Checks `|E(G)| <= (k - 1) s` for `k`-orthogonal tree decompositions `a`
/// and `b`, with `s` the magnitude of `a`.
pub fn edge_bound_check(g: &Graph, a: &TreeDecomposition, b: &TreeDecomposition, k: usize) -> Result<EdgeBoundReport> {
    a.validate(g)?;
    b.validate(g)?;
    let actual = orthogonality(a, b)?;
    if actual > k {
        return Err(Error::OrthogonalityExceeded { actual, bound: k });
    }
    let s = magnitude(a);
    let bound = (k as i128 - 1) * s as i128;
    Ok(EdgeBoundReport {
        edges: g.m(),
        k,
        magnitude: s,
        bound,
        holds: (g.m() as i128) <= bound,
    })
}

/// A bag whose removal leaves components of at most `n / 2` vertices,
/// found by walking towards the oversized component.
pub fn separator_from_decomposition(g: &Graph, tree: &TreeDecomposition) -> Result<Bag> {
    tree.validate(g)?;
    let n = g.n();
    let adjacency = tree.adjacency();
    let mut x = 0;
    for _ in 0..=tree.bags.len() {
        let bag = &tree.bags[x];
        let Some(big) = g.components_without(bag).into_iter().find(|c| 2 * c.len() > n) else {
            return Ok(bag.clone());
        };
        let big: BTreeSet<Vertex> = big.into_iter().collect();
        x = step_towards(&adjacency, x, |y| !tree.bags[y].is_disjoint(&big))
            .ok_or_else(|| Error::InvariantBroken("oversized component has no bag".into()))?;
    }
    Err(Error::InvariantBroken("separator walk did not terminate".into()))
}

/// First step on the tree path from `from` to the nearest node satisfying `goal`.
fn step_towards(adjacency: &[Vec<usize>], from: usize, goal: impl Fn(usize) -> bool) -> Option<usize> {
    let mut first = vec![usize::MAX; adjacency.len()];
    let mut queue = VecDeque::new();
    for &y in &adjacency[from] {
        first[y] = y;
        queue.push_back(y);
    }
    first[from] = from;
    while let Some(y) = queue.pop_front() {
        if goal(y) {
            return Some(first[y]);
        }
        for &z in &adjacency[y] {
            if first[z] == usize::MAX {
                first[z] = first[y];
                queue.push_back(z);
            }
        }
    }
    None
}

/// Parameters for [`bounds_report`]; absent values skip the bounds needing them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundParams {
    pub k: Option<u64>,
    pub s: Option<u64>,
    pub n: Option<u64>,
    pub g: Option<u64>,
    pub m: Option<u64>,
    pub tw: Option<u64>,
}

/// `coefficient * sqrt(radicand) - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootBound {
    pub name: &'static str,
    pub formula: &'static str,
    pub coefficient: u64,
    pub radicand: BigUint,
    pub value: f64,
    /// Exact `floor(coefficient * sqrt(radicand)) - 1`.
    pub floor: BigInt,
}

impl RootBound {
    fn new(name: &'static str, formula: &'static str, coefficient: u64, radicand: BigUint) -> Self {
        let scaled = &radicand * BigUint::from(coefficient * coefficient);
        let floor = BigInt::from(scaled.sqrt()) - 1;
        let value = coefficient as f64 * radicand.to_f64().unwrap_or(f64::INFINITY).sqrt() - 1.0;
        RootBound {
            name,
            formula,
            coefficient,
            radicand,
            value,
            floor,
        }
    }

    /// Exact test of `width <= coefficient * sqrt(radicand) - 1`.
    pub fn admits(&self, width: isize) -> bool {
        if width < 0 {
            return true;
        }
        let w1 = BigUint::from(width as u64 + 1);
        &w1 * &w1 <= &self.radicand * BigUint::from(self.coefficient * self.coefficient)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub params: BoundParams,
    pub roots: Vec<RootBound>,
    pub crossing_lower_bound: Option<BigRational>,
}

/// Evaluates every closed-form bound whose parameters are present.
pub fn bounds_report(params: &BoundParams) -> BoundsReport {
    let big = |x: u64| BigUint::from(x);
    let mut roots = Vec::new();
    if let (Some(k), Some(s)) = (params.k, params.s) {
        roots.push(RootBound::new("treewidth_from_pair", "2*sqrt(k*s)-1", 2, big(k) * big(s)));
        roots.push(RootBound::new("pathwidth_from_pair", "11*sqrt(k*s)-1", 11, big(k) * big(s)));
    }
    if let (Some(k), Some(n)) = (params.k, params.n) {
        roots.push(RootBound::new("treewidth_from_layering", "2*sqrt(k*n)-1", 2, big(k) * big(n)));
    }
    if let (Some(g), Some(m), Some(n)) = (params.g, params.m, params.n) {
        roots.push(RootBound::new(
            "treewidth_of_drawing",
            "2*sqrt((4g+6)*(2m+n))-1",
            2,
            (big(4) * big(g) + big(6)) * (big(2) * big(m) + big(n)),
        ));
    }
    if let (Some(g), Some(m)) = (params.g, params.m) {
        roots.push(RootBound::new(
            "treewidth_of_string_graph",
            "4*sqrt((2g+3)*m)-1",
            4,
            (big(2) * big(g) + big(3)) * big(m),
        ));
    }
    let crossing_lower_bound = match (params.tw, params.n) {
        (Some(tw), Some(n)) => Some(crate::planarize::crossing_lower_bound(tw, n)),
        _ => None,
    };
    BoundsReport {
        params: params.clone(),
        roots,
        crossing_lower_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::knn_orthogonal_paths;
    use crate::decomp::{bfs_layering, PathDecomposition};
    use crate::graph;

    #[test]
    fn ceil_sqrt() {
        assert_eq!(ceil_sqrt_ratio(4, 1), 2);
        assert_eq!(ceil_sqrt_ratio(5, 1), 3);
        assert_eq!(ceil_sqrt_ratio(3, 4), 1);
        assert_eq!(ceil_sqrt_ratio(16, 4), 2);
        assert_eq!(ceil_sqrt_ratio(17, 4), 3);
    }

    #[test]
    fn compress_path_by_hand() {
        let g = graph::Graph::path(4);
        let tree = TreeDecomposition::single((0..4).collect());
        let weak = WeakPathDecomposition::new([[0], [1], [2], [3]]);
        let c = compress(&g, &tree, &weak, 1).unwrap();
        assert_eq!((c.t, c.label), (2, 1));
        assert_eq!(c.deleted, Bag::from([0, 2]));
        assert_eq!(c.decomposition.bags, vec![Bag::from([0, 1, 2]), Bag::from([0, 2, 3])]);
        c.decomposition.validate(&g).unwrap();
        assert_eq!(width(&c.decomposition), 2);
    }

    #[test]
    fn compress_empty_graph() {
        let g = graph::Graph::new(0);
        let tree = TreeDecomposition::single(Bag::new());
        let weak = WeakPathDecomposition::new([Vec::<usize>::new()]);
        let c = compress(&g, &tree, &weak, 1).unwrap();
        assert_eq!(width(&c.decomposition), -1);
        c.decomposition.validate(&g).unwrap();
    }

    #[test]
    fn compress_small_magnitude_deletes_everything() {
        let g = graph::Graph::complete(3);
        let tree = TreeDecomposition::single((0..3).collect());
        let weak = WeakPathDecomposition::new([[0, 1, 2]]);
        let c = compress(&g, &tree, &weak, 3).unwrap();
        assert_eq!(c.t, 1);
        assert_eq!(c.decomposition.bags, vec![Bag::from([0, 1, 2])]);
    }

    #[test]
    fn compress_grid_with_layering() {
        for n in [3, 4, 6] {
            let g = graph::grid(n);
            let (cols, _) = crate::constructions::grid_orthogonal_paths(n).unwrap();
            let tree = cols.to_tree();
            let layering = bfs_layering(&g, 0).unwrap();
            let k = orthogonality(&tree, &layering).unwrap();
            let c = compress(&g, &tree, &layering.to_weak(), k).unwrap();
            c.decomposition.validate(&g).unwrap();
            assert!(width(&c.decomposition) >= n as isize);
        }
    }

    #[test]
    fn compress_rejects_understated_k() {
        let g = graph::Graph::complete(3);
        let tree = TreeDecomposition::single((0..3).collect());
        let weak = WeakPathDecomposition::new([[0, 1, 2]]);
        assert_eq!(
            compress(&g, &tree, &weak, 2).unwrap_err(),
            Error::OrthogonalityExceeded { actual: 3, bound: 2 }
        );
    }

    #[test]
    fn edge_bound_examples() {
        let g = graph::complete_bipartite(3, 3);
        let (p, q) = knn_orthogonal_paths(3).unwrap();
        let r = edge_bound_check(&g, &p.to_tree(), &q.to_tree(), 2).unwrap();
        assert_eq!((r.edges, r.bound, r.holds), (9, 12, true));

        let g = graph::grid(4);
        let (a, b) = crate::constructions::grid_orthogonal_paths(4).unwrap();
        let r = edge_bound_check(&g, &a.to_tree(), &b.to_tree(), 4).unwrap();
        assert_eq!((r.edges, r.magnitude, r.bound), (24, 24, 72));

        let g = graph::Graph::new(2);
        let d = PathDecomposition::new([[0], [1]]).to_tree();
        assert!(edge_bound_check(&g, &d, &d, 1).unwrap().holds);
    }

    fn assert_balanced(g: &graph::Graph, sep: &Bag) {
        for c in g.components_without(sep) {
            assert!(2 * c.len() <= g.n());
        }
    }

    #[test]
    fn separators() {
        let g = graph::Graph::path(5);
        let p = PathDecomposition::new([[0, 1], [1, 2], [2, 3], [3, 4]]).to_tree();
        let sep = separator_from_decomposition(&g, &p).unwrap();
        assert!(sep == Bag::from([1, 2]) || sep == Bag::from([2, 3]));
        assert_balanced(&g, &sep);

        let k5 = graph::Graph::complete(5);
        let sep = separator_from_decomposition(&k5, &TreeDecomposition::single((0..5).collect())).unwrap();
        assert_eq!(sep.len(), 5);

        let star = graph::Graph::star(9);
        let bags: Vec<Vec<usize>> = (1..=9).map(|l| vec![0, l]).collect();
        let d = PathDecomposition::new(bags).to_tree();
        let sep = separator_from_decomposition(&star, &d).unwrap();
        assert!(sep.contains(&0));
        assert_balanced(&star, &sep);
    }

    #[test]
    fn separator_walks_the_tree() {
        // Start bag sits at the end of a long path.
        let g = graph::Graph::path(9);
        let bags: Vec<Vec<usize>> = (0..8).map(|i| vec![i, i + 1]).collect();
        let sep = separator_from_decomposition(&g, &PathDecomposition::new(bags).to_tree()).unwrap();
        assert_balanced(&g, &sep);
    }

    #[test]
    fn bounds() {
        let r = bounds_report(&BoundParams {
            k: Some(4),
            s: Some(16),
            ..Default::default()
        });
        let tw = &r.roots[0];
        assert_eq!(tw.floor, BigInt::from(15));
        assert_eq!(tw.value, 15.0);
        assert!(tw.admits(15) && !tw.admits(16));

        let r = bounds_report(&BoundParams {
            g: Some(0),
            m: Some(0),
            n: Some(12),
            ..Default::default()
        });
        let eq1 = r.roots.iter().find(|b| b.name == "treewidth_of_drawing").unwrap();
        assert_eq!(eq1.radicand, BigUint::from(72u32));
        assert_eq!(eq1.floor, BigInt::from(15));

        let r = bounds_report(&BoundParams {
            tw: Some(23),
            n: Some(24),
            ..Default::default()
        });
        assert_eq!(r.crossing_lower_bound, Some(BigRational::from_integer(0.into())));
    }
}
