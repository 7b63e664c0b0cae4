//! Open axis-aligned rectangles and boxes with exact rational coordinates,
//! hvo-alternating sequences, and the clique-hunting procedures on universal
//! 2-trees (rectangles) and 2d-trees (boxes).
//!
//! A rectangle `w` is said to contain the corner `c` of `v` when `w` contains
//! every point of `v` close enough to `c`. For the bottom-left corner that is
//! `w.x1 <= v.x1 < w.x2` and `w.y1 <= v.y1 < w.y2`. With this reading an
//! intersecting pair without corner containment is exactly one of h, v, o.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, BigRational};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::{Bag, PathDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, UniversalTwoTree, Vertex};

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn mid(a: &Q, b: &Q) -> Q {
    (a + b) / q(2)
}

fn max_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if a >= b {
        a
    } else {
        b
    }
}

fn min_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if a <= b {
        a
    } else {
        b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Listed by lowest x, then lowest y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corner {
    BottomLeft,
    TopLeft,
    BottomRight,
    TopRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::BottomLeft, Corner::TopLeft, Corner::BottomRight, Corner::TopRight];

    fn is_left(self) -> bool {
        matches!(self, Corner::BottomLeft | Corner::TopLeft)
    }

    fn is_bottom(self) -> bool {
        matches!(self, Corner::BottomLeft | Corner::BottomRight)
    }

    pub fn name(self) -> &'static str {
        match self {
            Corner::BottomLeft => "bottom-left",
            Corner::TopLeft => "top-left",
            Corner::BottomRight => "bottom-right",
            Corner::TopRight => "top-right",
        }
    }
}

/// The open rectangle `(x1, x2) x (y1, y2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x1: Q,
    pub y1: Q,
    pub x2: Q,
    pub y2: Q,
}

impl Rect {
    pub fn new(x1: Q, y1: Q, x2: Q, y2: Q) -> Result<Rect> {
        if x1 >= x2 || y1 >= y2 {
            return Err(Error::InvalidParameter(format!(
                "rectangle ({x1},{x2}) x ({y1},{y2}) is empty"
            )));
        }
        Ok(Rect { x1, y1, x2, y2 })
    }

    pub fn from_ints(x1: i64, y1: i64, x2: i64, y2: i64) -> Result<Rect> {
        Rect::new(q(x1), q(y1), q(x2), q(y2))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.x1 < p.x && p.x < self.x2 && self.y1 < p.y && p.y < self.y2
    }

    pub fn center(&self) -> Point {
        Point {
            x: mid(&self.x1, &self.x2),
            y: mid(&self.y1, &self.y2),
        }
    }

    pub fn corner(&self, c: Corner) -> Point {
        Point {
            x: if c.is_left() { self.x1.clone() } else { self.x2.clone() },
            y: if c.is_bottom() { self.y1.clone() } else { self.y2.clone() },
        }
    }

    pub fn meets(&self, other: &Rect) -> bool {
        self.x1 < other.x2 && other.x1 < self.x2 && self.y1 < other.y2 && other.y1 < self.y2
    }

    /// Open intersection; `None` when only boundaries touch or nothing does.
    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        if !self.meets(other) {
            return None;
        }
        Some(Rect {
            x1: max_q(&self.x1, &other.x1).clone(),
            y1: max_q(&self.y1, &other.y1).clone(),
            x2: min_q(&self.x2, &other.x2).clone(),
            y2: min_q(&self.y2, &other.y2).clone(),
        })
    }

    /// Whether `w` contains corner `c` of `self` (see the module docs).
    pub fn corner_held_by(&self, c: Corner, w: &Rect) -> bool {
        let x_ok = if c.is_left() {
            w.x1 <= self.x1 && self.x1 < w.x2
        } else {
            w.x1 < self.x2 && self.x2 <= w.x2
        };
        let y_ok = if c.is_bottom() {
            w.y1 <= self.y1 && self.y1 < w.y2
        } else {
            w.y1 < self.y2 && self.y2 <= w.y2
        };
        x_ok && y_ok
    }

    /// First corner of `self` that `w` contains.
    pub fn corner_held(&self, w: &Rect) -> Option<Corner> {
        Corner::ALL.into_iter().find(|&c| self.corner_held_by(c, w))
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})x({},{})", self.x1, self.x2, self.y1, self.y2)
    }
}

/// Common intersection of all `rects`; `None` for an empty list or empty result.
pub fn common_rect<'a>(rects: impl IntoIterator<Item = &'a Rect>) -> Option<Rect> {
    let mut it = rects.into_iter();
    let first = it.next()?.clone();
    it.try_fold(first, |acc, r| acc.intersect(r))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Helly {
    /// Centre of the common intersection.
    Point(Point),
    /// The first pair (by index) that does not intersect.
    Disjoint(usize, usize),
    Empty,
}

pub fn helly_point(rects: &[Rect]) -> Helly {
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            if !rects[i].meets(&rects[j]) {
                return Helly::Disjoint(i, j);
            }
        }
    }
    match common_rect(rects) {
        Some(r) => Helly::Point(r.center()),
        None => Helly::Empty,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairType {
    H,
    V,
    O,
}

impl PairType {
    pub fn name(self) -> &'static str {
        match self {
            PairType::H => "h",
            PairType::V => "v",
            PairType::O => "o",
        }
    }
}

/// h-pair: a vertical side of `v ∩ w` lies on the boundary of `v`; v-pair:
/// a horizontal one does; o-pair otherwise.
pub fn classify_pair(v: &Rect, w: &Rect) -> Result<PairType> {
    if !v.meets(w) {
        return Err(Error::EmptyIntersection);
    }
    if let Some(corner) = v.corner_held(w) {
        return Err(Error::CornerContained { corner });
    }
    if w.x1 <= v.x1 || w.x2 >= v.x2 {
        Ok(PairType::H)
    } else if w.y1 <= v.y1 || w.y2 >= v.y2 {
        Ok(PairType::V)
    } else {
        Ok(PairType::O)
    }
}

/// First failed condition of an hvo-alternating sequence. `index` is the
/// 1-based position `i` the condition is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HvoViolation {
    pub index: usize,
    pub condition: u8,
}

impl fmt::Display for HvoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.condition {
            1 => "does not meet the running intersection",
            2 => "contains a corner of the running intersection",
            _ => "repeats the pair type of its predecessor",
        };
        write!(f, "element {} {what}", self.index)
    }
}

pub fn is_hvo_alternating(seq: &[Rect]) -> std::result::Result<(), HvoViolation> {
    let Some(first) = seq.first() else { return Ok(()) };
    let mut running = first.clone();
    let mut previous: Option<PairType> = None;
    for (pos, v) in seq.iter().enumerate().skip(1) {
        let i = pos + 1;
        let kind = match classify_pair(&running, v) {
            Ok(kind) => kind,
            Err(Error::EmptyIntersection) => return Err(HvoViolation { index: i, condition: 1 }),
            Err(_) => return Err(HvoViolation { index: i, condition: 2 }),
        };
        if kind != PairType::O && previous == Some(kind) {
            return Err(HvoViolation { index: i - 1, condition: 3 });
        }
        previous = Some(kind);
        running = running.intersect(v).expect("classified pairs intersect");
    }
    Ok(())
}

/// `H` if `seq` is h-nesting with respect to `r`, `V` if v-nesting.
pub fn nesting_axis(seq: &[Rect], r: &Rect) -> Option<PairType> {
    [PairType::H, PairType::V].into_iter().find(|&axis| {
        !seq.is_empty()
            && seq.iter().enumerate().all(|(i, v)| {
                classify_pair(r, v).ok() == Some(axis)
                    && (i == 0
                        || r.intersect(&seq[i - 1])
                            .is_some_and(|base| classify_pair(&base, v).ok() == Some(axis)))
            })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestingWitness {
    pub axis: PairType,
    pub point: Point,
    /// Positions in the sequence of the members containing `point`.
    pub indices: Vec<usize>,
}

/// A point of `r` lying in at least half of a nesting sequence: the members
/// reaching the more popular side of `r` all contain the points of `r` near
/// that side.
pub fn nesting_witness(seq: &[Rect], r: &Rect) -> Result<NestingWitness> {
    let axis = nesting_axis(seq, r).ok_or(Error::NotNesting)?;
    let (low, high): (Vec<usize>, Vec<usize>) = match axis {
        PairType::H => (
            (0..seq.len()).filter(|&i| seq[i].x1 <= r.x1).collect(),
            (0..seq.len()).filter(|&i| seq[i].x2 >= r.x2).collect(),
        ),
        _ => (
            (0..seq.len()).filter(|&i| seq[i].y1 <= r.y1).collect(),
            (0..seq.len()).filter(|&i| seq[i].y2 >= r.y2).collect(),
        ),
    };
    let indices = if low.len() >= high.len() { low } else { high };
    let common = common_rect(std::iter::once(r).chain(indices.iter().map(|&i| &seq[i])))
        .ok_or_else(|| Error::InvariantBroken("nesting members share no point with the reference".into()))?;
    Ok(NestingWitness {
        axis,
        point: common.center(),
        indices,
    })
}

/// A point covered by the largest number of rectangles, with the covering
/// indices. Candidates are the cells of the grid through all coordinates.
pub fn max_coverage(rects: &[Rect]) -> Option<(Point, Vec<usize>)> {
    let xs: BTreeSet<&Q> = rects.iter().flat_map(|r| [&r.x1, &r.x2]).collect();
    let ys: BTreeSet<&Q> = rects.iter().flat_map(|r| [&r.y1, &r.y2]).collect();
    let xs: Vec<&Q> = xs.into_iter().collect();
    let ys: Vec<&Q> = ys.into_iter().collect();
    let mut best: Option<(Point, Vec<usize>)> = None;
    for xw in xs.windows(2) {
        let cx = mid(xw[0], xw[1]);
        let column: Vec<usize> = (0..rects.len()).filter(|&i| rects[i].x1 < cx && cx < rects[i].x2).collect();
        if best.as_ref().is_some_and(|(_, b)| b.len() >= column.len()) {
            continue;
        }
        for yw in ys.windows(2) {
            let cy = mid(yw[0], yw[1]);
            let here: Vec<usize> = column.iter().copied().filter(|&i| rects[i].y1 < cy && cy < rects[i].y2).collect();
            if best.as_ref().is_none_or(|(_, b)| here.len() > b.len()) {
                best = Some((Point { x: cx.clone(), y: cy }, here));
            }
        }
    }
    best
}

pub fn rect_graph(rects: &[Rect]) -> Graph {
    let mut g = Graph::new(rects.len());
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            if rects[i].meets(&rects[j]) {
                g.add_edge(i, j).expect("indices in range");
            }
        }
    }
    g
}

/// Vertex `v` occupying bags `a..=b` of `p1` and `c..=d` of `p2` becomes
/// `(a - 1/2, b + 1/2) x (c - 1/2, d + 1/2)`.
pub fn paths_to_rects(g: &Graph, p1: &PathDecomposition, p2: &PathDecomposition) -> Result<Vec<Rect>> {
    p1.validate(g)?;
    p2.validate(g)?;
    let span = |p: &PathDecomposition, v: Vertex| {
        let first = p.bags.iter().position(|b| b.contains(&v)).expect("validated");
        let last = p.bags.iter().rposition(|b| b.contains(&v)).expect("validated");
        (q(first as i64) - ratio(1, 2), q(last as i64) + ratio(1, 2))
    };
    g.vertices()
        .map(|v| {
            let (x1, x2) = span(p1, v);
            let (y1, y2) = span(p2, v);
            Rect::new(x1, y1, x2, y2)
        })
        .collect()
}

/// Sweeps each axis: one bag per slab between consecutive distinct
/// coordinates, holding the rectangles spanning it. Empty slabs are dropped.
pub fn rects_to_paths(rects: &[Rect]) -> (PathDecomposition, PathDecomposition) {
    let sweep = |lo: &dyn Fn(&Rect) -> &Q, hi: &dyn Fn(&Rect) -> &Q| {
        let coords: BTreeSet<&Q> = rects.iter().flat_map(|r| [lo(r), hi(r)]).collect();
        let coords: Vec<&Q> = coords.into_iter().collect();
        let bags: Vec<Bag> = coords
            .windows(2)
            .map(|w| (0..rects.len()).filter(|&i| lo(&rects[i]) <= w[0] && hi(&rects[i]) >= w[1]).collect::<Bag>())
            .filter(|b| !b.is_empty())
            .collect();
        PathDecomposition { bags }
    };
    (sweep(&|r| &r.x1, &|r| &r.x2), sweep(&|r| &r.y1, &|r| &r.y2))
}

/// An open box `prod (lo_j, hi_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrthoBox {
    pub lo: Vec<Q>,
    pub hi: Vec<Q>,
}

impl OrthoBox {
    pub fn new(lo: Vec<Q>, hi: Vec<Q>) -> Result<OrthoBox> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidParameter("box bounds must have the same positive dimension".into()));
        }
        if let Some(j) = (0..lo.len()).find(|&j| lo[j] >= hi[j]) {
            return Err(Error::InvalidParameter(format!("box is empty in coordinate {j}")));
        }
        Ok(OrthoBox { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn meets(&self, other: &OrthoBox) -> bool {
        self.dim() == other.dim() && (0..self.dim()).all(|j| self.lo[j] < other.hi[j] && other.lo[j] < self.hi[j])
    }

    pub fn intersect(&self, other: &OrthoBox) -> Option<OrthoBox> {
        self.meets(other).then(|| OrthoBox {
            lo: (0..self.dim()).map(|j| max_q(&self.lo[j], &other.lo[j]).clone()).collect(),
            hi: (0..self.dim()).map(|j| min_q(&self.hi[j], &other.hi[j]).clone()).collect(),
        })
    }

    pub fn contains(&self, p: &[Q]) -> bool {
        p.len() == self.dim() && (0..self.dim()).all(|j| self.lo[j] < p[j] && p[j] < self.hi[j])
    }

    pub fn center(&self) -> Vec<Q> {
        (0..self.dim()).map(|j| mid(&self.lo[j], &self.hi[j])).collect()
    }
}

pub fn common_box<'a>(boxes: impl IntoIterator<Item = &'a OrthoBox>) -> Option<OrthoBox> {
    let mut it = boxes.into_iter();
    let first = it.next()?.clone();
    it.try_fold(first, |acc, b| acc.intersect(b))
}

/// Each of the `2d` faces of the common box is credited to the lowest-index
/// box attaining it; returns the lowest-index box credited with none.
pub fn redundant_box(boxes: &[OrthoBox]) -> Option<usize> {
    let common = common_box(boxes)?;
    let mut credited = vec![false; boxes.len()];
    for j in 0..common.dim() {
        if let Some(i) = boxes.iter().position(|b| b.lo[j] == common.lo[j]) {
            credited[i] = true;
        }
        if let Some(i) = boxes.iter().position(|b| b.hi[j] == common.hi[j]) {
            credited[i] = true;
        }
    }
    credited.iter().position(|c| !c)
}

/// Shapes the clique procedures work with.
pub trait Shape: Clone {
    fn meets(&self, other: &Self) -> bool;
}

impl Shape for Rect {
    fn meets(&self, other: &Self) -> bool {
        Rect::meets(self, other)
    }
}

impl Shape for OrthoBox {
    fn meets(&self, other: &Self) -> bool {
        OrthoBox::meets(self, other)
    }
}

/// A vertex of the host intersection graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node<S> {
    pub token: u64,
    pub shape: S,
}

/// Supplies the children of a clique of tree vertices, each of which must
/// meet every parent.
pub trait ChildOracle<S> {
    fn children(&mut self, parents: &[&Node<S>], count: usize) -> Vec<Node<S>>;
}

fn request<S: Shape, O: ChildOracle<S> + ?Sized>(oracle: &mut O, parents: &[&Node<S>], count: usize) -> Result<Vec<Node<S>>> {
    let mut kids = oracle.children(parents, count);
    if kids.len() < count {
        return Err(Error::Exhausted {
            got: kids.len(),
            needed: count,
        });
    }
    kids.truncate(count);
    for kid in &kids {
        if let Some(parent) = parents.iter().position(|p| !p.shape.meets(&kid.shape)) {
            return Err(Error::OracleViolation { parent });
        }
    }
    Ok(kids)
}

const SCALES: [(i64, i64); 6] = [(1, 8), (1, 4), (1, 2), (1, 1), (2, 1), (4, 1)];

/// Random children with dyadic coordinates: a point is drawn on the 1/16 grid
/// of the parents' common box and each side is pushed out by a random
/// multiple of the box's extent.
#[derive(Debug, Clone)]
pub struct RandomOracle {
    rng: ChaCha8Rng,
    next_token: u64,
}

impl RandomOracle {
    pub fn new(seed: u64) -> Self {
        RandomOracle {
            rng: ChaCha8Rng::seed_from_u64(seed),
            next_token: 0,
        }
    }

    fn token(&mut self) -> u64 {
        self.next_token += 1;
        self.next_token - 1
    }

    fn inside(&mut self, lo: &Q, hi: &Q) -> Q {
        let j = self.rng.random_range(1..16);
        lo + (hi - lo) * ratio(j, 16)
    }

    fn extent(&mut self, size: &Q) -> Q {
        let (n, d) = SCALES[self.rng.random_range(0..SCALES.len())];
        size * ratio(n, d)
    }

    fn interval_around(&mut self, lo: &Q, hi: &Q) -> (Q, Q) {
        let p = self.inside(lo, hi);
        let size = hi - lo;
        let a = &p - self.extent(&size);
        let b = &p + self.extent(&size);
        (a, b)
    }

    /// `(0,1)^2` and a random rectangle meeting it.
    pub fn root_pair(&mut self) -> (Node<Rect>, Node<Rect>) {
        let r0 = Rect::from_ints(0, 0, 1, 1).expect("unit square");
        let r1 = self.rect_in(&r0);
        let t0 = self.token();
        let t1 = self.token();
        (Node { token: t0, shape: r0 }, Node { token: t1, shape: r1 })
    }

    /// `count` random `d`-boxes all containing the origin.
    pub fn root_boxes(&mut self, d: usize, count: usize) -> Vec<Node<OrthoBox>> {
        (0..count)
            .map(|_| {
                let lo = (0..d).map(|_| -self.extent(&q(1))).collect();
                let hi = (0..d).map(|_| self.extent(&q(1))).collect();
                let token = self.token();
                Node {
                    token,
                    shape: OrthoBox { lo, hi },
                }
            })
            .collect()
    }

    fn rect_in(&mut self, r: &Rect) -> Rect {
        let (x1, x2) = self.interval_around(&r.x1, &r.x2);
        let (y1, y2) = self.interval_around(&r.y1, &r.y2);
        Rect { x1, y1, x2, y2 }
    }
}

impl ChildOracle<Rect> for RandomOracle {
    fn children(&mut self, parents: &[&Node<Rect>], count: usize) -> Vec<Node<Rect>> {
        let Some(common) = common_rect(parents.iter().map(|p| &p.shape)) else {
            return Vec::new();
        };
        (0..count)
            .map(|_| {
                let shape = self.rect_in(&common);
                Node {
                    token: self.token(),
                    shape,
                }
            })
            .collect()
    }
}

impl ChildOracle<OrthoBox> for RandomOracle {
    fn children(&mut self, parents: &[&Node<OrthoBox>], count: usize) -> Vec<Node<OrthoBox>> {
        let Some(common) = common_box(parents.iter().map(|p| &p.shape)) else {
            return Vec::new();
        };
        (0..count)
            .map(|_| {
                let (lo, hi) = (0..common.dim())
                    .map(|j| self.interval_around(&common.lo[j], &common.hi[j]))
                    .unzip();
                Node {
                    token: self.token(),
                    shape: OrthoBox { lo, hi },
                }
            })
            .collect()
    }
}

/// Deterministic adversaries working on `R = ∩ parents`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adversary {
    /// Children form h-pairs with `R`, alternately reaching past its left
    /// and right sides, with vertical extent the middle half of `R`.
    StallH,
    /// The same with the axes exchanged.
    StallV,
    /// Child `j` contains corner `j mod 4` of `R`.
    Corner,
}

#[derive(Debug, Clone)]
pub struct AdversaryOracle {
    pub strategy: Adversary,
    next_token: u64,
}

impl AdversaryOracle {
    pub fn new(strategy: Adversary) -> Self {
        AdversaryOracle { strategy, next_token: 2 }
    }

    /// `(0,4)^2` and `(2,6) x (1,3)`.
    pub fn root_pair() -> (Node<Rect>, Node<Rect>) {
        (
            Node {
                token: 0,
                shape: Rect::from_ints(0, 0, 4, 4).expect("valid"),
            },
            Node {
                token: 1,
                shape: Rect::from_ints(2, 1, 6, 3).expect("valid"),
            },
        )
    }

    fn child(&self, r: &Rect, j: usize) -> Rect {
        let w = &r.x2 - &r.x1;
        let h = &r.y2 - &r.y1;
        let quarter = |s: &Q| s * ratio(1, 4);
        let half = |s: &Q| s * ratio(1, 2);
        match self.strategy {
            Adversary::StallH => {
                let (x1, x2) = if j.is_multiple_of(2) {
                    (&r.x1 - &w, &r.x1 + half(&w))
                } else {
                    (&r.x2 - half(&w), &r.x2 + &w)
                };
                Rect {
                    x1,
                    x2,
                    y1: &r.y1 + quarter(&h),
                    y2: &r.y2 - quarter(&h),
                }
            }
            Adversary::StallV => {
                let (y1, y2) = if j.is_multiple_of(2) {
                    (&r.y1 - &h, &r.y1 + half(&h))
                } else {
                    (&r.y2 - half(&h), &r.y2 + &h)
                };
                Rect {
                    x1: &r.x1 + quarter(&w),
                    x2: &r.x2 - quarter(&w),
                    y1,
                    y2,
                }
            }
            Adversary::Corner => {
                let c = r.corner(Corner::ALL[j % 4]);
                Rect {
                    x1: &c.x - quarter(&w),
                    x2: &c.x + quarter(&w),
                    y1: &c.y - quarter(&h),
                    y2: &c.y + quarter(&h),
                }
            }
        }
    }
}

impl ChildOracle<Rect> for AdversaryOracle {
    fn children(&mut self, parents: &[&Node<Rect>], count: usize) -> Vec<Node<Rect>> {
        let Some(common) = common_rect(parents.iter().map(|p| &p.shape)) else {
            return Vec::new();
        };
        (0..count)
            .map(|j| {
                self.next_token += 1;
                Node {
                    token: self.next_token - 1,
                    shape: self.child(&common, j),
                }
            })
            .collect()
    }
}

/// Walks a materialised universal 2-tree whose vertex `v` is realised by
/// `shapes[v]`; tokens are vertex ids.
#[derive(Debug, Clone)]
pub struct TreeWalkOracle {
    tree: UniversalTwoTree,
    shapes: Vec<Rect>,
}

impl TreeWalkOracle {
    pub fn new(tree: UniversalTwoTree, shapes: Vec<Rect>) -> Result<Self> {
        if shapes.len() != tree.graph().n() {
            return Err(Error::InvalidParameter(format!(
                "{} rectangles for a tree with {} vertices",
                shapes.len(),
                tree.graph().n()
            )));
        }
        if let Some((u, v)) = tree.graph().edges().find(|&(u, v)| !shapes[u].meets(&shapes[v])) {
            return Err(Error::InvalidParameter(format!("tree edge ({u},{v}) joins disjoint rectangles")));
        }
        Ok(TreeWalkOracle { tree, shapes })
    }

    pub fn root_pair(&self) -> Result<(Node<Rect>, Node<Rect>)> {
        let (a, b) = self
            .tree
            .root_edge()
            .ok_or_else(|| Error::InvalidParameter("the tree is empty".into()))?;
        Ok((self.node(a), self.node(b)))
    }

    fn node(&self, v: Vertex) -> Node<Rect> {
        Node {
            token: v as u64,
            shape: self.shapes[v].clone(),
        }
    }
}

impl ChildOracle<Rect> for TreeWalkOracle {
    fn children(&mut self, parents: &[&Node<Rect>], count: usize) -> Vec<Node<Rect>> {
        let [a, b] = parents else { return Vec::new() };
        let n = self.shapes.len() as u64;
        if a.token >= n || b.token >= n {
            return Vec::new();
        }
        self.tree
            .children(a.token as Vertex, b.token as Vertex)
            .iter()
            .take(count)
            .map(|&v| self.node(v))
            .collect()
    }
}

/// Realises `T_{h,d}` as a rectangle intersection graph (every tree edge
/// joins intersecting rectangles) by drawing each child from `oracle`.
pub fn realize_universal<O: ChildOracle<Rect>>(
    tree: &UniversalTwoTree,
    root: (Rect, Rect),
    oracle: &mut O,
) -> Result<Vec<Rect>> {
    let n = tree.graph().n();
    let mut shapes: Vec<Option<Rect>> = vec![None; n];
    if n == 0 {
        return Ok(Vec::new());
    }
    if !root.0.meets(&root.1) {
        return Err(Error::EmptyIntersection);
    }
    shapes[0] = Some(root.0);
    shapes[1] = Some(root.1);
    for ((u, v), kids) in tree.child_sets() {
        let pu = Node {
            token: u as u64,
            shape: shapes[u].clone().expect("parents come first"),
        };
        let pv = Node {
            token: v as u64,
            shape: shapes[v].clone().expect("parents come first"),
        };
        for (kid, node) in kids.iter().zip(request(oracle, &[&pu, &pv], kids.len())?) {
            shapes[*kid] = Some(node.shape);
        }
    }
    Ok(shapes.into_iter().map(|s| s.expect("every vertex realised")).collect())
}

/// Tree parameters: those the clique procedure consumes, and those in the
/// statement of the theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeParameters {
    pub branching: u64,
    pub height: u64,
    pub stated_height: i64,
    pub stated_branching: u64,
}

pub fn tree_parameters(k: usize) -> TreeParameters {
    let k = k as i64;
    TreeParameters {
        branching: (4 * k - 7).max(0) as u64,
        height: ((k - 1) * (k - 1)) as u64,
        stated_height: 4 * k - 7,
        stated_branching: (2 * k * k) as u64,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// `v_index` was appended.
    Success { level: usize, index: usize, token: u64 },
    /// `v_index` was replaced.
    Stall { level: usize, index: usize, token: u64 },
    /// Every child held a corner of the running intersection.
    Corner { level: usize, corner: Corner, holders: usize },
    /// The stall values of `v_index` nest.
    Nesting { index: usize, axis: PairType, covered: usize },
    /// The stall values of `v_index` do not nest but still share a point.
    Sweep { index: usize, covered: usize },
    /// The stall values of `v_index` do not nest and no point is covered by
    /// half of them; the last replacement forms an o-pair, so `v_index` can
    /// no longer stall.
    Deferred { index: usize, covered: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Trivial,
    Sequence,
    Corner,
    Nesting,
    Sweep,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::Trivial => "trivial",
            Termination::Sequence => "sequence",
            Termination::Corner => "corner",
            Termination::Nesting => "nesting",
            Termination::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectClique {
    pub members: Vec<Node<Rect>>,
    pub point: Point,
    /// Oracle levels consumed.
    pub levels: usize,
    pub termination: Termination,
    pub trace: Vec<TraceEvent>,
}

fn check_running_intersection(seq: &[Node<Rect>]) -> Result<()> {
    if seq.len() < 2 {
        return Ok(());
    }
    let all = common_rect(seq.iter().map(|n| &n.shape));
    let last = seq[seq.len() - 2].shape.intersect(&seq[seq.len() - 1].shape);
    if all != last {
        return Err(Error::InvariantBroken(
            "running intersection differs from the intersection of the last two".into(),
        ));
    }
    Ok(())
}

fn shapes(nodes: &[Node<Rect>]) -> Vec<Rect> {
    nodes.iter().map(|n| n.shape.clone()).collect()
}

/// Grows an hvo-alternating path down a universal 2-tree realised by
/// `oracle`, requesting `4k - 7` children per level, until it has `k`
/// rectangles with a common point. At most `(k - 1)^2` levels are used.
pub fn find_clique<O: ChildOracle<Rect> + ?Sized>(
    root: (Node<Rect>, Node<Rect>),
    oracle: &mut O,
    k: usize,
) -> Result<RectClique> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let (r0, r1) = root;
    let base = r0.shape.intersect(&r1.shape).ok_or(Error::EmptyIntersection)?;
    if k <= 2 {
        let mut members = vec![r0, r1];
        members.truncate(k);
        return Ok(RectClique {
            members,
            point: base.center(),
            levels: 0,
            termination: Termination::Trivial,
            trace: Vec::new(),
        });
    }
    let params = tree_parameters(k);
    let branching = params.branching as usize;
    let budget = params.height as usize;

    // seq[j] is v_{j+1}; stalls[j] is S_{j+1}, the values v_{j+1} has taken.
    let mut seq = vec![r0];
    let mut stalls: Vec<Vec<Node<Rect>>> = vec![vec![seq[0].clone()]];
    let mut deferred = vec![false; k + 1];
    let mut trace = Vec::new();
    let mut level = 0;

    let finish = |members: Vec<Node<Rect>>, point: Point, levels, termination, trace| {
        let clique = RectClique {
            members,
            point,
            levels,
            termination,
            trace,
        };
        verify_clique(&clique, k)?;
        Ok(clique)
    };

    loop {
        if level == budget {
            return Err(Error::InvariantBroken(format!("no clique within {budget} levels")));
        }
        level += 1;
        let i = seq.len();
        let prev = if i == 1 { &r1 } else { &seq[i - 2] };
        let kids = request(oracle, &[prev, &seq[i - 1]], branching)?;
        check_running_intersection(&seq)?;
        let running = common_rect(seq.iter().map(|n| &n.shape)).expect("hvo sequences intersect");

        let free = kids.iter().position(|c| running.corner_held(&c.shape).is_none());
        let Some(free) = free else {
            let counts = Corner::ALL.map(|c| kids.iter().filter(|w| running.corner_held_by(c, &w.shape)).count());
            let best = (0..4).max_by_key(|&j| (counts[j], std::cmp::Reverse(j))).expect("four corners");
            let corner = Corner::ALL[best];
            let holders: Vec<Node<Rect>> = kids
                .into_iter()
                .filter(|w| running.corner_held_by(corner, &w.shape))
                .take(k - 1)
                .collect();
            trace.push(TraceEvent::Corner {
                level,
                corner,
                holders: counts[best],
            });
            let common = common_rect(std::iter::once(&running).chain(holders.iter().map(|n| &n.shape)))
                .ok_or_else(|| Error::InvariantBroken("corner holders share no point".into()))?;
            let mut members = seq;
            members.extend(holders);
            let excess = members.len().saturating_sub(k);
            members.drain(..excess);
            return finish(members, common.center(), level, Termination::Corner, trace);
        };
        let v = kids.into_iter().nth(free).expect("index in range");
        let mut extended = shapes(&seq);
        extended.push(v.shape.clone());
        if is_hvo_alternating(&extended).is_ok() {
            trace.push(TraceEvent::Success {
                level,
                index: i + 1,
                token: v.token,
            });
            seq.push(v.clone());
            stalls.push(vec![v]);
            check_running_intersection(&seq)?;
            if seq.len() == k {
                let point = common_rect(seq.iter().map(|n| &n.shape)).expect("hvo sequences intersect").center();
                return finish(seq, point, level, Termination::Sequence, trace);
            }
            continue;
        }

        trace.push(TraceEvent::Stall {
            level,
            index: i,
            token: v.token,
        });
        seq[i - 1] = v.clone();
        stalls[i - 1].push(v);
        if let Err(violation) = is_hvo_alternating(&shapes(&seq)) {
            return Err(Error::InvariantBroken(format!("replacement broke the sequence: {violation}")));
        }
        check_running_intersection(&seq)?;
        let count = stalls[i - 1].len() - 1;
        if count < 2 * (k - i) || deferred[i] {
            continue;
        }
        let reference = common_rect(seq[..i - 1].iter().map(|n| &n.shape)).expect("prefix intersects");
        let values = shapes(&stalls[i - 1]);
        let needed = k - i + 1;
        match nesting_witness(&values, &reference) {
            Ok(w) => {
                trace.push(TraceEvent::Nesting {
                    index: i,
                    axis: w.axis,
                    covered: w.indices.len(),
                });
                let mut members: Vec<Node<Rect>> = seq[..i - 1].to_vec();
                members.extend(w.indices.iter().take(needed).map(|&j| stalls[i - 1][j].clone()));
                return finish(members, w.point, level, Termination::Nesting, trace);
            }
            Err(Error::NotNesting) => {
                let clipped: Vec<Rect> = values.iter().filter_map(|v| v.intersect(&reference)).collect();
                let indices: Vec<usize> = (0..values.len()).filter(|&j| values[j].meets(&reference)).collect();
                let (point, covering) = max_coverage(&clipped).unwrap_or((reference.center(), Vec::new()));
                if covering.len() >= needed {
                    trace.push(TraceEvent::Sweep {
                        index: i,
                        covered: covering.len(),
                    });
                    let mut members: Vec<Node<Rect>> = seq[..i - 1].to_vec();
                    members.extend(covering.iter().take(needed).map(|&j| stalls[i - 1][indices[j]].clone()));
                    return finish(members, point, level, Termination::Sweep, trace);
                }
                trace.push(TraceEvent::Deferred {
                    index: i,
                    covered: covering.len(),
                });
                deferred[i] = true;
            }
            Err(e) => return Err(e),
        }
    }
}

fn verify_clique(c: &RectClique, k: usize) -> Result<()> {
    if c.members.len() != k {
        return Err(Error::InvariantBroken(format!("{} members, expected {k}", c.members.len())));
    }
    if let Some(m) = c.members.iter().find(|m| !m.shape.contains(&c.point)) {
        return Err(Error::InvariantBroken(format!("{} does not contain {}", m.shape, c.point)));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxClique {
    pub members: Vec<Node<OrthoBox>>,
    pub point: Vec<Q>,
    pub rounds: usize,
}

/// Extends a `(2d+1)`-clique of boxes one oracle child at a time, keeping a
/// `2d`-subset with the same common intersection, until `k` boxes share a point.
pub fn box_find_clique<O: ChildOracle<OrthoBox> + ?Sized>(
    root: Vec<Node<OrthoBox>>,
    oracle: &mut O,
    k: usize,
    d: usize,
) -> Result<BoxClique> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidParameter("d and k must be positive".into()));
    }
    if root.len() != 2 * d + 1 {
        return Err(Error::InvalidParameter(format!("root clique needs {} boxes, got {}", 2 * d + 1, root.len())));
    }
    if root.iter().any(|b| b.shape.dim() != d) {
        return Err(Error::InvalidParameter(format!("root boxes must be {d}-dimensional")));
    }
    let common = common_box(root.iter().map(|n| &n.shape)).ok_or(Error::EmptyIntersection)?;
    if k <= 2 * d + 1 {
        let mut members = root;
        members.truncate(k);
        return Ok(BoxClique {
            members,
            point: common.center(),
            rounds: 0,
        });
    }
    let rounds = k - 2 * d - 1;
    let mut all = root;
    let mut kept: Vec<Node<OrthoBox>> = all.clone();
    drop_redundant(&mut kept)?;
    for _ in 0..rounds {
        let parents: Vec<&Node<OrthoBox>> = kept.iter().collect();
        let child = request(oracle, &parents, 1)?.remove(0);
        all.push(child.clone());
        kept.push(child);
        drop_redundant(&mut kept)?;
        let whole = common_box(all.iter().map(|n| &n.shape));
        if whole.is_none() || whole != common_box(kept.iter().map(|n| &n.shape)) {
            return Err(Error::InvariantBroken("kept boxes no longer determine the intersection".into()));
        }
    }
    let point = common_box(all.iter().map(|n| &n.shape)).expect("checked above").center();
    if all.iter().any(|n| !n.shape.contains(&point)) {
        return Err(Error::InvariantBroken("box clique point check failed".into()));
    }
    Ok(BoxClique {
        members: all,
        point,
        rounds,
    })
}

fn drop_redundant(kept: &mut Vec<Node<OrthoBox>>) -> Result<()> {
    let shapes: Vec<OrthoBox> = kept.iter().map(|n| n.shape.clone()).collect();
    let j = redundant_box(&shapes).ok_or_else(|| Error::InvariantBroken("no redundant box".into()))?;
    kept.remove(j);
    Ok(())
}
