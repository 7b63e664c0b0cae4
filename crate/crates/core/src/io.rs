//! JSON and DOT formats. Output is pretty-printed with sorted keys and a
//! trailing newline; parsers reject anything malformed without panicking.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Num, Zero};
use serde_json::{json, Map, Value};

use crate::decomp::{AnyDecomposition, Bag, Layering, PathDecomposition, TreeDecomposition, WeakPathDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, MAX_VERTICES};
use crate::planarize::{CurveArrangement, DrawnEdge, Drawing};
use crate::rects::{OrthoBox, Point, Rect, Q};

/// Longest accepted textual rational.
const MAX_NUMBER_LEN: usize = 512;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialise");
    s.push('\n');
    s
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(e.to_string()))
}

fn object<'a>(v: &'a Value, what: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let m = v.as_object().ok_or_else(|| perr(format!("{what} must be an object")))?;
    if let Some(k) = m.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(perr(format!("unexpected key `{k}` in {what}")));
    }
    Ok(m)
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| perr(format!("{what} lacks `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn uint(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| perr(format!("{what} must be a nonnegative integer")))
}

fn index(v: &Value, bound: usize, what: &str) -> Result<usize> {
    let x = uint(v, what)?;
    if x >= bound as u64 {
        return Err(perr(format!("{what} {x} out of range (< {bound})")));
    }
    Ok(x as usize)
}

fn pair(v: &Value, bound: usize, what: &str) -> Result<(usize, usize)> {
    match array(v, what)?.as_slice() {
        [a, b] => Ok((index(a, bound, what)?, index(b, bound, what)?)),
        _ => Err(perr(format!("{what} must have two entries"))),
    }
}

pub fn graph_to_value(g: &Graph) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(g.n()));
    m.insert("edges".into(), json!(g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>()));
    if let Some(labels) = g.labels() {
        m.insert("labels".into(), json!(labels));
    }
    Value::Object(m)
}

pub fn graph_from_value(v: &Value) -> Result<Graph> {
    let m = object(v, "graph", &["n", "edges", "labels"])?;
    let n = uint(field(m, "n", "graph")?, "n")?;
    if n > MAX_VERTICES as u64 {
        return Err(perr(format!("n = {n} exceeds the limit {MAX_VERTICES}")));
    }
    let n = n as usize;
    let mut g = Graph::new(n);
    for e in array(field(m, "edges", "graph")?, "edges")? {
        let (u, v) = pair(e, n, "edge endpoint")?;
        if u == v {
            return Err(perr(format!("self-loop at {u}")));
        }
        if g.has_edge(u, v) {
            return Err(perr(format!("duplicate edge ({u},{v})")));
        }
        g.add_edge(u, v)?;
    }
    if let Some(labels) = m.get("labels") {
        let labels = array(labels, "labels")?
            .iter()
            .map(|l| l.as_str().map(str::to_string).ok_or_else(|| perr("labels must be strings")))
            .collect::<Result<Vec<_>>>()?;
        g = g.with_labels(labels).map_err(|e| perr(e.to_string()))?;
    }
    Ok(g)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    graph_from_value(&parse_value(text)?)
}

fn bags_value(bags: &[Bag]) -> Value {
    json!(bags.iter().map(|b| b.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn decomposition_to_value(d: &AnyDecomposition) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(d.kind()));
    let bags = match d {
        AnyDecomposition::Tree(t) => {
            m.insert(
                "tree_edges".into(),
                json!(t.tree_edges.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()),
            );
            &t.bags
        }
        AnyDecomposition::Path(p) => &p.bags,
        AnyDecomposition::WeakPath(p) => &p.bags,
        AnyDecomposition::Layering(l) => &l.layers,
    };
    m.insert("bags".into(), bags_value(bags));
    Value::Object(m)
}

pub fn decomposition_from_value(v: &Value) -> Result<AnyDecomposition> {
    let m = object(v, "decomposition", &["kind", "bags", "tree_edges"])?;
    let kind = field(m, "kind", "decomposition")?
        .as_str()
        .ok_or_else(|| perr("kind must be a string"))?;
    let mut bags = Vec::new();
    for b in array(field(m, "bags", "decomposition")?, "bags")? {
        let mut bag = Bag::new();
        for x in array(b, "bag")? {
            let v = index(x, MAX_VERTICES, "bag vertex")?;
            if !bag.insert(v) {
                return Err(perr(format!("vertex {v} repeated in a bag")));
            }
        }
        bags.push(bag);
    }
    let edges = m.get("tree_edges");
    if kind != "tree" && edges.is_some() {
        return Err(perr(format!("a {kind} decomposition has no tree_edges")));
    }
    Ok(match kind {
        "tree" => {
            let tree_edges = array(field(m, "tree_edges", "tree decomposition")?, "tree_edges")?
                .iter()
                .map(|e| pair(e, bags.len(), "tree node"))
                .collect::<Result<Vec<_>>>()?;
            AnyDecomposition::Tree(TreeDecomposition { bags, tree_edges })
        }
        "path" => AnyDecomposition::Path(PathDecomposition { bags }),
        "weakpath" => AnyDecomposition::WeakPath(WeakPathDecomposition { bags }),
        "layering" => AnyDecomposition::Layering(Layering { layers: bags }),
        other => return Err(perr(format!("unknown decomposition kind `{other}`"))),
    })
}

pub fn parse_decomposition(text: &str) -> Result<AnyDecomposition> {
    decomposition_from_value(&parse_value(text)?)
}

pub fn tree_value(t: &TreeDecomposition) -> Value {
    decomposition_to_value(&AnyDecomposition::Tree(t.clone()))
}

pub fn path_value(p: &PathDecomposition) -> Value {
    decomposition_to_value(&AnyDecomposition::Path(p.clone()))
}

pub fn weak_value(p: &WeakPathDecomposition) -> Value {
    decomposition_to_value(&AnyDecomposition::WeakPath(p.clone()))
}

pub fn layering_value(l: &Layering) -> Value {
    decomposition_to_value(&AnyDecomposition::Layering(l.clone()))
}

/// A graph with any number of decompositions of it. A `report` key, as
/// written by the CLI, is accepted and ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub graph: Graph,
    pub decompositions: Vec<AnyDecomposition>,
}

pub fn bundle_to_value(b: &Bundle) -> Value {
    json!({
        "graph": graph_to_value(&b.graph),
        "decompositions": b.decompositions.iter().map(decomposition_to_value).collect::<Vec<_>>(),
    })
}

pub fn bundle_from_value(v: &Value) -> Result<Bundle> {
    let m = object(v, "bundle", &["graph", "decompositions", "report"])?;
    let graph = graph_from_value(field(m, "graph", "bundle")?)?;
    let decompositions = array(field(m, "decompositions", "bundle")?, "decompositions")?
        .iter()
        .map(decomposition_from_value)
        .collect::<Result<Vec<_>>>()?;
    Ok(Bundle { graph, decompositions })
}

pub fn parse_bundle(text: &str) -> Result<Bundle> {
    bundle_from_value(&parse_value(text)?)
}

fn crossing_id(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_u64() => Ok(n.to_string()),
        _ => Err(perr("crossing ids must be strings or nonnegative integers")),
    }
}

fn crossing_list(v: &Value) -> Result<Vec<String>> {
    array(v, "crossing list")?.iter().map(crossing_id).collect()
}

pub fn arrangement_to_value(a: &CurveArrangement) -> Value {
    let mut m = Map::new();
    m.insert("curves".into(), json!(a.curves));
    m.insert("genus".into(), json!(a.genus));
    if let Some(k) = a.cap {
        m.insert("k".into(), json!(k));
    }
    Value::Object(m)
}

pub fn arrangement_from_value(v: &Value) -> Result<CurveArrangement> {
    let m = object(v, "arrangement", &["curves", "genus", "k"])?;
    let curves = array(field(m, "curves", "arrangement")?, "curves")?
        .iter()
        .map(crossing_list)
        .collect::<Result<Vec<_>>>()?;
    if curves.len() > MAX_VERTICES {
        return Err(perr("too many curves"));
    }
    let genus = match m.get("genus") {
        Some(g) => uint(g, "genus")?,
        None => 0,
    };
    let cap = m.get("k").map(|k| uint(k, "k").map(|k| k as usize)).transpose()?;
    Ok(CurveArrangement { curves, genus, cap })
}

pub fn parse_arrangement(text: &str) -> Result<CurveArrangement> {
    arrangement_from_value(&parse_value(text)?)
}

pub fn drawing_to_value(d: &Drawing) -> Value {
    json!({
        "graph": graph_to_value(&d.graph),
        "genus": d.genus,
        "edges": d.edges.iter().map(|e| json!({
            "tail": e.tail,
            "head": e.head,
            "crossings": e.crossings,
        })).collect::<Vec<_>>(),
    })
}

pub fn drawing_from_value(v: &Value) -> Result<Drawing> {
    let m = object(v, "drawing", &["graph", "genus", "edges"])?;
    let graph = graph_from_value(field(m, "graph", "drawing")?)?;
    let genus = match m.get("genus") {
        Some(g) => uint(g, "genus")?,
        None => 0,
    };
    let n = graph.n();
    let edges = array(field(m, "edges", "drawing")?, "edges")?
        .iter()
        .map(|e| {
            let em = object(e, "drawn edge", &["tail", "head", "crossings"])?;
            Ok(DrawnEdge {
                tail: index(field(em, "tail", "drawn edge")?, n, "tail")?,
                head: index(field(em, "head", "drawn edge")?, n, "head")?,
                crossings: match em.get("crossings") {
                    Some(c) => crossing_list(c)?,
                    None => Vec::new(),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Drawing { graph, edges, genus })
}

pub fn parse_drawing(text: &str) -> Result<Drawing> {
    drawing_from_value(&parse_value(text)?)
}

/// Reads `"p/q"`, a decimal such as `"-1.25"`, or an integer.
pub fn parse_rational_str(s: &str) -> Result<Q> {
    let s = s.trim();
    if s.is_empty() || s.len() > MAX_NUMBER_LEN {
        return Err(perr("rational must have 1 to 512 characters"));
    }
    let int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(perr(format!("`{s}` is not a rational number")));
        }
        BigInt::from_str_radix(t.strip_prefix('+').unwrap_or(t), 10).map_err(|_| perr(format!("`{s}` is not a rational number")))
    };
    if let Some((num, den)) = s.split_once('/') {
        let den = int(den)?;
        if den.is_zero() {
            return Err(perr(format!("`{s}` has a zero denominator")));
        }
        return Ok(BigRational::new(int(num)?, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(perr(format!("`{s}` is not a decimal number")));
        }
        let negative = whole.starts_with('-');
        let whole = if whole == "-" || whole == "+" || whole.is_empty() {
            BigInt::zero()
        } else {
            int(whole)?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = BigRational::new(int(frac)?, scale);
        let magnitude = BigRational::from_integer(num::abs(whole)) + frac;
        return Ok(if negative { -magnitude } else { magnitude });
    }
    Ok(BigRational::from_integer(int(s)?))
}

/// A rational given as a string, a JSON integer, or `[num, den]`.
pub fn rational_from_value(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_rational_str(s),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => Ok(BigRational::from_integer(i.into())),
            (None, Some(u)) => Ok(BigRational::from_integer(u.into())),
            _ => Err(perr("non-integer JSON numbers are inexact; write them as strings")),
        },
        Value::Array(a) => match a.as_slice() {
            [num, den] => {
                let (num, den) = (
                    num.as_i64().ok_or_else(|| perr("numerator must be an integer"))?,
                    den.as_i64().ok_or_else(|| perr("denominator must be an integer"))?,
                );
                if den == 0 {
                    return Err(perr("zero denominator"));
                }
                Ok(BigRational::new(num.into(), den.into()))
            }
            _ => Err(perr("a rational pair must be [num, den]")),
        },
        _ => Err(perr("rational must be a string, integer or [num, den]")),
    }
}

pub fn rational_value(x: &Q) -> Value {
    json!(x.to_string())
}

pub fn point_value(p: &Point) -> Value {
    json!({"x": rational_value(&p.x), "y": rational_value(&p.y)})
}

pub fn rect_value(r: &Rect) -> Value {
    json!([&r.x1, &r.y1, &r.x2, &r.y2].iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

pub fn rect_from_value(v: &Value) -> Result<Rect> {
    match array(v, "rectangle")?.as_slice() {
        [x1, y1, x2, y2] => Rect::new(
            rational_from_value(x1)?,
            rational_from_value(y1)?,
            rational_from_value(x2)?,
            rational_from_value(y2)?,
        )
        .map_err(|e| perr(e.to_string())),
        _ => Err(perr("a rectangle is [x1, y1, x2, y2]")),
    }
}

pub fn rects_to_value(rects: &[Rect]) -> Value {
    json!({"rects": rects.iter().map(rect_value).collect::<Vec<_>>()})
}

pub fn rects_from_value(v: &Value) -> Result<Vec<Rect>> {
    let m = object(v, "rectangle family", &["rects"])?;
    array(field(m, "rects", "rectangle family")?, "rects")?
        .iter()
        .map(rect_from_value)
        .collect()
}

pub fn parse_rects(text: &str) -> Result<Vec<Rect>> {
    rects_from_value(&parse_value(text)?)
}

pub fn box_value(b: &OrthoBox) -> Value {
    json!({
        "lo": b.lo.iter().map(rational_value).collect::<Vec<_>>(),
        "hi": b.hi.iter().map(rational_value).collect::<Vec<_>>(),
    })
}

pub fn boxes_to_value(boxes: &[OrthoBox]) -> Value {
    json!({"boxes": boxes.iter().map(box_value).collect::<Vec<_>>()})
}

pub fn boxes_from_value(v: &Value) -> Result<Vec<OrthoBox>> {
    let m = object(v, "box family", &["boxes"])?;
    array(field(m, "boxes", "box family")?, "boxes")?
        .iter()
        .map(|b| {
            let bm = object(b, "box", &["lo", "hi"])?;
            let coords = |key: &str| -> Result<Vec<Q>> {
                array(field(bm, key, "box")?, key)?.iter().map(rational_from_value).collect()
            };
            OrthoBox::new(coords("lo")?, coords("hi")?).map_err(|e| perr(e.to_string()))
        })
        .collect()
}

pub fn parse_boxes(text: &str) -> Result<Vec<OrthoBox>> {
    boxes_from_value(&parse_value(text)?)
}

/// A rectangle realisation of a universal 2-tree, as read by the tree-walk oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub height: i64,
    pub branching: usize,
    pub rects: Vec<Rect>,
}

pub fn realization_to_value(r: &Realization) -> Value {
    json!({
        "height": r.height,
        "branching": r.branching,
        "rects": r.rects.iter().map(rect_value).collect::<Vec<_>>(),
    })
}

pub fn realization_from_value(v: &Value) -> Result<Realization> {
    let m = object(v, "realization", &["height", "branching", "rects"])?;
    let height = field(m, "height", "realization")?
        .as_i64()
        .ok_or_else(|| perr("height must be an integer"))?;
    let branching = uint(field(m, "branching", "realization")?, "branching")? as usize;
    let rects = array(field(m, "rects", "realization")?, "rects")?
        .iter()
        .map(rect_from_value)
        .collect::<Result<Vec<_>>>()?;
    Ok(Realization {
        height,
        branching,
        rects,
    })
}

pub fn parse_realization(text: &str) -> Result<Realization> {
    realization_from_value(&parse_value(text)?)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        match g.labels() {
            Some(l) => out.push_str(&format!("  {v} [label=\"{}\"];\n", dot_escape(&l[v]))),
            None => out.push_str(&format!("  {v};\n")),
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// Tree nodes labelled by their bags; paths and layerings become chains.
pub fn decomposition_to_dot(d: &AnyDecomposition) -> String {
    let (bags, edges): (&[Bag], Vec<(usize, usize)>) = match d {
        AnyDecomposition::Tree(t) => (&t.bags, t.tree_edges.clone()),
        AnyDecomposition::Path(p) => (&p.bags, chain(p.bags.len())),
        AnyDecomposition::WeakPath(p) => (&p.bags, chain(p.bags.len())),
        AnyDecomposition::Layering(l) => (&l.layers, chain(l.layers.len())),
    };
    let mut out = String::from("graph T {\n");
    for (x, bag) in bags.iter().enumerate() {
        let members: Vec<String> = bag.iter().map(Vertex::to_string).collect();
        out.push_str(&format!("  {x} [label=\"{{{}}}\"];\n", members.join(",")));
    }
    for (x, y) in edges {
        out.push_str(&format!("  {x} -- {y};\n"));
    }
    out.push_str("}\n");
    out
}

fn chain(len: usize) -> Vec<(usize, usize)> {
    (1..len).map(|i| (i - 1, i)).collect()
}

/// Vertex set as a sorted JSON array.
pub fn set_value(s: &BTreeSet<Vertex>) -> Value {
    json!(s.iter().copied().collect::<Vec<_>>())
}
