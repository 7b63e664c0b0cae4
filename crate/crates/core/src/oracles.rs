//! Exact brute-force computations for small graphs. Every bound produced
//! elsewhere in the crate is checked against these on test instances.
//!
//! All routines work on 64-bit vertex masks, so no cap may exceed 64.

use std::collections::{BTreeSet, HashSet};

use crate::decomp::{elimination_decomposition, Bag, PathDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Vertex-count limits for each oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub treewidth: usize,
    pub pathwidth: usize,
    pub clique: usize,
    pub chromatic: usize,
    pub separator: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            treewidth: 14,
            pathwidth: 14,
            clique: 40,
            chromatic: 16,
            separator: 16,
        }
    }
}

const HARD_CAP: usize = 64;

fn check_cap(what: &str, g: &Graph, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what: format!("{what} oracle vertex count"),
            size: g.n() as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

fn masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect()
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Treewidth {
    pub width: isize,
    pub decomposition: TreeDecomposition,
}

/// Vertices outside `eliminated ∪ {v}` reachable from `v` through `eliminated`:
/// the neighbourhood `v` has when eliminated after `eliminated`.
fn elimination_neighbourhood(adj: &[u64], eliminated: u64, v: usize) -> u64 {
    let mut seen = 1u64 << v;
    let mut frontier = 1u64 << v;
    let mut out = 0u64;
    while frontier != 0 {
        let mut next = 0u64;
        for u in bits(frontier) {
            next |= adj[u];
        }
        next &= !seen;
        seen |= next;
        out |= next & !eliminated;
        frontier = next & eliminated;
    }
    out
}

/// Depth-first search over eliminated sets for an ordering in which every
/// vertex has at most `bound` later neighbours.
fn tw_search(adj: &[u64], all: u64, set: u64, bound: u32, dead: &mut HashSet<u64>, order: &mut Vec<usize>) -> bool {
    if set == all {
        return true;
    }
    if dead.contains(&set) {
        return false;
    }
    let rest = all & !set;
    // A vertex whose neighbourhood is already within the bound and forms a
    // clique with it can always go next.
    for v in bits(rest) {
        let q = elimination_neighbourhood(adj, set, v);
        if q.count_ones() <= bound && bits(q).all(|x| (adj[x] | (1 << x)) & q == q) {
            order.push(v);
            if tw_search(adj, all, set | (1 << v), bound, dead, order) {
                return true;
            }
            order.pop();
            dead.insert(set);
            return false;
        }
    }
    for v in bits(rest) {
        if elimination_neighbourhood(adj, set, v).count_ones() <= bound {
            order.push(v);
            if tw_search(adj, all, set | (1 << v), bound, dead, order) {
                return true;
            }
            order.pop();
        }
    }
    dead.insert(set);
    false
}

/// Exact treewidth by a memoised search over eliminated vertex subsets, with
/// an optimal tree decomposition as witness.
pub fn exact_treewidth(g: &Graph, cap: usize) -> Result<Treewidth> {
    check_cap("treewidth", g, cap)?;
    let n = g.n();
    if n == 0 {
        return Ok(Treewidth {
            width: -1,
            decomposition: TreeDecomposition::single(Bag::new()),
        });
    }
    let adj = masks(g);
    let all = full(n);
    for bound in 0..n as u32 {
        let mut dead = HashSet::new();
        let mut order = Vec::with_capacity(n);
        if tw_search(&adj, all, 0, bound, &mut dead, &mut order) {
            let decomposition = elimination_decomposition(g, &order);
            return Ok(Treewidth {
                width: bound as isize,
                decomposition,
            });
        }
    }
    Err(Error::InvariantBroken("treewidth search found no ordering".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pathwidth {
    pub width: isize,
    pub decomposition: PathDecomposition,
}

/// Members of `set` with a neighbour outside it.
fn boundary(adj: &[u64], set: u64) -> u64 {
    bits(set).filter(|&v| adj[v] & !set != 0).fold(0, |m, v| m | (1 << v))
}

fn pw_search(adj: &[u64], all: u64, set: u64, bound: u32, dead: &mut HashSet<u64>, order: &mut Vec<usize>) -> bool {
    if set == all {
        return true;
    }
    if dead.contains(&set) {
        return false;
    }
    let rest = all & !set;
    // Adding a vertex with no neighbours outside the prefix never grows the boundary.
    if let Some(v) = bits(rest).find(|&v| adj[v] & !(set | (1 << v)) == 0) {
        order.push(v);
        if pw_search(adj, all, set | (1 << v), bound, dead, order) {
            return true;
        }
        order.pop();
        dead.insert(set);
        return false;
    }
    for v in bits(rest) {
        let next = set | (1 << v);
        if boundary(adj, next).count_ones() <= bound {
            order.push(v);
            if pw_search(adj, all, next, bound, dead, order) {
                return true;
            }
            order.pop();
        }
    }
    dead.insert(set);
    false
}

/// Exact pathwidth as the vertex separation number, found by a memoised
/// search over prefixes; the witness bag for position `i` is the boundary of
/// the first `i - 1` vertices plus the `i`-th.
pub fn exact_pathwidth(g: &Graph, cap: usize) -> Result<Pathwidth> {
    check_cap("pathwidth", g, cap)?;
    let n = g.n();
    if n == 0 {
        return Ok(Pathwidth {
            width: -1,
            decomposition: PathDecomposition { bags: vec![Bag::new()] },
        });
    }
    let adj = masks(g);
    let all = full(n);
    for bound in 0..n as u32 {
        let mut dead = HashSet::new();
        let mut order = Vec::with_capacity(n);
        if pw_search(&adj, all, 0, bound, &mut dead, &mut order) {
            let mut bags = Vec::with_capacity(n);
            let mut prefix = 0u64;
            for &v in &order {
                let mut bag: Bag = bits(boundary(&adj, prefix)).collect();
                bag.insert(v);
                bags.push(bag);
                prefix |= 1 << v;
            }
            let width = bags.iter().map(Bag::len).max().unwrap_or(0) as isize - 1;
            return Ok(Pathwidth {
                width,
                decomposition: PathDecomposition { bags },
            });
        }
    }
    Err(Error::InvariantBroken("pathwidth search found no ordering".into()))
}

fn clique_expand(adj: &[u64], current: &mut Vec<usize>, mut candidates: u64, best: &mut Vec<usize>) {
    if candidates == 0 {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    while candidates != 0 {
        if current.len() + candidates.count_ones() as usize <= best.len() {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= !(1 << v);
        current.push(v);
        clique_expand(adj, current, candidates & adj[v], best);
        current.pop();
    }
}

/// Clique number by branch and bound, with a maximum clique as witness.
pub fn max_clique(g: &Graph, cap: usize) -> Result<(usize, Vec<Vertex>)> {
    check_cap("clique", g, cap)?;
    let adj = masks(g);
    let mut best = Vec::new();
    clique_expand(&adj, &mut Vec::new(), full(g.n()), &mut best);
    best.sort_unstable();
    Ok((best.len(), best))
}

fn colour_with(adj: &[u64], k: usize, colour: &mut [Option<usize>]) -> bool {
    // Most constrained uncoloured vertex first.
    let pick = (0..adj.len()).filter(|&v| colour[v].is_none()).max_by_key(|&v| {
        let used: BTreeSet<usize> = bits(adj[v]).filter_map(|w| colour[w]).collect();
        (used.len(), adj[v].count_ones(), std::cmp::Reverse(v))
    });
    let Some(v) = pick else { return true };
    let used: BTreeSet<usize> = bits(adj[v]).filter_map(|w| colour[w]).collect();
    let highest = colour.iter().flatten().max().map_or(0, |&c| c + 1);
    // Colours above the highest in use are interchangeable; try one of them.
    for c in (0..k.min(highest + 1)).filter(|c| !used.contains(c)) {
        colour[v] = Some(c);
        if colour_with(adj, k, colour) {
            return true;
        }
    }
    colour[v] = None;
    false
}

/// Chromatic number by backtracking, with a proper colouring as witness.
pub fn chromatic_number(g: &Graph, cap: usize) -> Result<(usize, Vec<usize>)> {
    check_cap("chromatic", g, cap)?;
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = masks(g);
    let (lower, _) = max_clique(g, HARD_CAP)?;
    for k in lower.max(1)..=g.n() {
        let mut colour = vec![None; g.n()];
        if colour_with(&adj, k, &mut colour) {
            return Ok((k, colour.into_iter().map(|c| c.unwrap_or(0)).collect()));
        }
    }
    Err(Error::InvariantBroken("no colouring found".into()))
}

/// True iff every component of `G - set` has at most `n/2` vertices.
pub fn is_separator(g: &Graph, set: &BTreeSet<Vertex>) -> bool {
    g.components_without(set).iter().all(|c| 2 * c.len() <= g.n())
}

/// Smallest separator (every component of `G - S` has at most `n/2`
/// vertices), by enumerating subsets in order of size.
pub fn min_separator_size(g: &Graph, cap: usize) -> Result<(usize, BTreeSet<Vertex>)> {
    check_cap("separator", g, cap)?;
    let n = g.n();
    for size in 0..=n {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            let set: BTreeSet<Vertex> = chosen.iter().copied().collect();
            if is_separator(g, &set) {
                return Ok((size, set));
            }
            // Next combination in lexicographic order.
            let mut i = size;
            while i > 0 && chosen[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            chosen[i - 1] += 1;
            for j in i..size {
                chosen[j] = chosen[j - 1] + 1;
            }
        }
    }
    Err(Error::InvariantBroken("the whole vertex set is always a separator".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::width;
    use crate::graph;

    const BIG: usize = 40;

    #[test]
    fn treewidth_examples() {
        let caps = Caps::default();
        let grid = graph::grid(3);
        let tw = exact_treewidth(&grid, caps.treewidth).unwrap();
        assert_eq!(tw.width, 3);
        tw.decomposition.validate(&grid).unwrap();
        assert_eq!(width(&tw.decomposition), 3);
        assert_eq!(exact_treewidth(&Graph::complete(5), 14).unwrap().width, 4);
        assert_eq!(exact_treewidth(&graph::complete_tripartite(2), 14).unwrap().width, 4);
        assert_eq!(exact_treewidth(&Graph::new(0), 14).unwrap().width, -1);
        assert_eq!(exact_treewidth(&Graph::new(3), 14).unwrap().width, 0);
    }

    #[test]
    fn treewidth_cap() {
        let err = exact_treewidth(&graph::grid(4), 14).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        assert_eq!(exact_treewidth(&graph::grid(4), 16).unwrap().width, 4);
    }

    #[test]
    fn pathwidth_examples() {
        let p6 = exact_pathwidth(&Graph::path(6), 14).unwrap();
        assert_eq!(p6.width, 1);
        p6.decomposition.validate(&Graph::path(6)).unwrap();
        assert_eq!(exact_pathwidth(&Graph::star(5), 14).unwrap().width, 1);
        let tree = Graph::complete_binary_tree(5);
        let pw = exact_pathwidth(&tree, BIG).unwrap();
        assert_eq!(pw.width, 2);
        pw.decomposition.validate(&tree).unwrap();
    }

    #[test]
    fn clique_examples() {
        assert_eq!(max_clique(&graph::complete_bipartite(3, 3), BIG).unwrap().0, 2);
        assert_eq!(max_clique(&graph::shift_graph(6).unwrap(), BIG).unwrap().0, 2);
        let (w, witness) = max_clique(&Graph::complete(4), BIG).unwrap();
        assert_eq!((w, witness), (4, vec![0, 1, 2, 3]));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&graph::shift_graph(4).unwrap(), 16).unwrap().0, 2);
        let h5 = graph::shift_graph(5).unwrap();
        let (chi, colouring) = chromatic_number(&h5, 16).unwrap();
        assert_eq!(chi, 3);
        for (u, v) in h5.edges() {
            assert_ne!(colouring[u], colouring[v]);
        }
        assert_eq!(chromatic_number(&Graph::complete(4), 16).unwrap().0, 4);
    }

    #[test]
    fn separator_examples() {
        assert_eq!(min_separator_size(&Graph::path(5), 16).unwrap().0, 1);
        assert_eq!(min_separator_size(&Graph::complete(5), 16).unwrap().0, 3);
        let two_triangles = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(min_separator_size(&two_triangles, 16).unwrap().0, 0);
    }
}
