use std::collections::BTreeSet;
use std::io::Read;

use orthotree::compress::{bounds_report, compress, separator_from_decomposition, BoundParams};
use orthotree::constructions::{
    bipartite_star_pair, domino_from_layered, domino_report, grid_orthogonal_paths, knn_orthogonal_paths,
    subdivision_star_pair,
};
use orthotree::decomp::{layered_width, magnitude, orthogonality, width, AnyDecomposition, Bags};
use orthotree::graph::{self, Family, Graph, DEFAULT_TWO_TREE_CAP};
use orthotree::io::{self, Bundle};
use orthotree::oracles::{self, Caps};
use orthotree::planarize::{base_decomposition, lift_drawing, lift_string_layered, lift_string_path, BaseMode};
use orthotree::rects::{
    self, box_find_clique, classify_pair, find_clique, is_hvo_alternating, paths_to_rects, rect_graph,
    rects_to_paths, tree_parameters, Adversary, AdversaryOracle, ChildOracle, Node, RandomOracle, Rect,
    TraceEvent, TreeWalkOracle,
};
use orthotree::{Error, Result};
use serde_json::{json, Value};

use crate::{Base, BoxCmd, Cli, CliqueArgs, Command, Construct, Format, GenArgs, LiftKind, OracleKind, RectCmd};

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    let outcome = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    outcome.map_err(|e| Error::InvalidParameter(format!("cannot read `{path}`: {e}")))?;
    Ok(text)
}

fn read_graph(path: &str) -> Result<Graph> {
    io::parse_graph(&read_input(path)?)
}

fn read_decomposition(path: &str) -> Result<AnyDecomposition> {
    io::parse_decomposition(&read_input(path)?)
}

fn invalid(what: String, violation: orthotree::decomp::Violation) -> Error {
    Error::Validation { what, violation }
}

fn validate_all(g: &Graph, ds: &[AnyDecomposition]) -> Result<()> {
    for (i, d) in ds.iter().enumerate() {
        d.check(g).map_err(|v| invalid(format!("decomposition {i} ({})", d.kind()), v))?;
    }
    Ok(())
}

fn summary(d: &AnyDecomposition) -> Value {
    json!({
        "kind": d.kind(),
        "bags": d.bags().len(),
        "width": width(d),
        "magnitude": magnitude(d),
    })
}

/// A bundle plus a report object, or its DOT rendering.
fn bundle_out(cli: &Cli, graph: Graph, decompositions: Vec<AnyDecomposition>, report: Value) -> String {
    match cli.format {
        Format::Dot => {
            let mut out = io::graph_to_dot(&graph);
            for d in &decompositions {
                out.push_str(&io::decomposition_to_dot(d));
            }
            out
        }
        Format::Json => {
            let mut v = io::bundle_to_value(&Bundle { graph, decompositions });
            v["report"] = report;
            io::to_pretty(&v)
        }
    }
}

fn json_only(cli: &Cli, v: Value) -> Result<String> {
    if cli.format == Format::Dot {
        return Err(Error::InvalidParameter("this command has no DOT output".into()));
    }
    Ok(io::to_pretty(&v))
}

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Gen(args) => gen(cli, args),
        Command::Check { input, graph } => check(cli, input, graph.as_deref()),
        Command::Ortho { first, second, bound } => ortho(cli, first, second.as_deref(), *bound),
        Command::Construct { which } => construct(cli, which),
        Command::Compress { graph, tree, weakpath, k } => compress_cmd(cli, graph, tree, weakpath, *k),
        Command::Separator { graph, tree } => separator(cli, graph, tree),
        Command::Lift { what, input, base, cap } => lift(cli, *what, input, *base, *cap),
        Command::Bounds(b) => bounds(
            cli,
            BoundParams {
                k: b.k,
                s: b.s,
                n: b.n,
                g: b.g,
                m: b.m,
                tw: b.tw,
            },
        ),
        Command::Rect { which } => rect(cli, which),
        Command::Box { which } => match which {
            BoxCmd::Clique { d, k, seed, count } => box_clique(cli, *d, *k, *seed, *count),
        },
        Command::Oracle { which, graph, cap } => oracle(cli, *which, graph, *cap),
    }
}

fn gen(cli: &Cli, a: &GenArgs) -> Result<String> {
    let need = |name: &str, v: Option<i64>| v.ok_or_else(|| Error::InvalidParameter(format!("--{name} is required")));
    let need_u = |name: &str, v: Option<usize>| v.ok_or_else(|| Error::InvalidParameter(format!("--{name} is required")));
    let g = match a.family.as_str() {
        "shift" => {
            let n = need("n", a.n)?;
            graph::shift_graph(usize::try_from(n).map_err(|_| Error::InvalidParameter(format!("n = {n}")))?)?
        }
        "line-grid" => graph::gen_line_grid(need_u("q", a.q)?, need_u("r", a.r)?)?,
        "universal-2tree" => {
            graph::gen_universal_2tree(need("h", a.h)?, need_u("d", a.d)?, a.cap.unwrap_or(DEFAULT_TWO_TREE_CAP))?
                .graph()
                .clone()
        }
        name => {
            let family: Family = name.parse()?;
            let base = a.base.as_deref().map(read_graph).transpose()?;
            let params: Vec<i64> = match (a.n, a.a, a.b) {
                (Some(n), None, None) => vec![n],
                (None, Some(x), Some(y)) => vec![x, y],
                (None, Some(x), None) => vec![x],
                (None, None, None) => Vec::new(),
                _ => return Err(Error::InvalidParameter("give either --n or --a [--b]".into())),
            };
            graph::gen_classic(family, &params, base.as_ref())?
        }
    };
    Ok(match cli.format {
        Format::Dot => io::graph_to_dot(&g),
        Format::Json => io::to_pretty(&io::graph_to_value(&g)),
    })
}

fn check(cli: &Cli, input: &str, graph: Option<&str>) -> Result<String> {
    let bundle = match graph {
        Some(g) => Bundle {
            graph: read_graph(g)?,
            decompositions: vec![read_decomposition(input)?],
        },
        None => io::parse_bundle(&read_input(input)?)?,
    };
    validate_all(&bundle.graph, &bundle.decompositions)?;
    json_only(
        cli,
        json!({
            "valid": true,
            "n": bundle.graph.n(),
            "m": bundle.graph.m(),
            "decompositions": bundle.decompositions.iter().map(summary).collect::<Vec<_>>(),
        }),
    )
}

fn ortho(cli: &Cli, first: &str, second: Option<&str>, bound: Option<usize>) -> Result<String> {
    let (a, b) = match second {
        Some(second) => (read_decomposition(first)?, read_decomposition(second)?),
        None => {
            let bundle = io::parse_bundle(&read_input(first)?)?;
            validate_all(&bundle.graph, &bundle.decompositions)?;
            let mut ds = bundle.decompositions.into_iter();
            match (ds.next(), ds.next()) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::InvalidParameter("the bundle needs two decompositions".into())),
            }
        }
    };
    let c = orthogonality(&a, &b)?;
    if let Some(bound) = bound {
        if c > bound {
            return Err(Error::OrthogonalityExceeded { actual: c, bound });
        }
    }
    if cli.format == Format::Dot {
        return Err(Error::InvalidParameter("this command has no DOT output".into()));
    }
    Ok(format!("{c}\n"))
}

fn pair_report(a: &AnyDecomposition, b: &AnyDecomposition) -> Result<Value> {
    Ok(json!({
        "orthogonality": orthogonality(a, b)?,
        "first": summary(a),
        "second": summary(b),
    }))
}

fn construct(cli: &Cli, which: &Construct) -> Result<String> {
    let (g, a, b) = match which {
        Construct::GridPair { n } => {
            let (p, q) = grid_orthogonal_paths(*n)?;
            (graph::grid(*n), AnyDecomposition::Path(p), AnyDecomposition::Path(q))
        }
        Construct::KnnPair { n } => {
            let (p, q) = knn_orthogonal_paths(*n)?;
            (graph::complete_bipartite(*n, *n), AnyDecomposition::Path(p), AnyDecomposition::Path(q))
        }
        Construct::SubdivPair { n } => {
            let (s, t) = subdivision_star_pair(*n)?;
            (graph::subdivided_knn(*n), AnyDecomposition::Tree(s), AnyDecomposition::Tree(t))
        }
        Construct::StarPair { graph } => {
            let g = read_graph(graph)?;
            let (x, y) = g
                .bipartition()
                .ok_or_else(|| Error::InvalidGraph("the graph is not bipartite".into()))?;
            let (s, t) = bipartite_star_pair(&g, &x, &y)?;
            (g, AnyDecomposition::Tree(s), AnyDecomposition::Tree(t))
        }
        Construct::Domino { input } => return domino(cli, input),
    };
    let report = pair_report(&a, &b)?;
    Ok(bundle_out(cli, g, vec![a, b], report))
}

fn domino(cli: &Cli, input: &str) -> Result<String> {
    let bundle = io::parse_bundle(&read_input(input)?)?;
    validate_all(&bundle.graph, &bundle.decompositions)?;
    let tree = bundle
        .decompositions
        .iter()
        .find_map(|d| match d {
            AnyDecomposition::Tree(t) => Some(t.clone()),
            _ => None,
        })
        .ok_or_else(|| Error::InvalidParameter("the bundle has no tree decomposition".into()))?;
    let layering = bundle
        .decompositions
        .iter()
        .find_map(|d| match d {
            AnyDecomposition::Layering(l) => Some(l.clone()),
            _ => None,
        })
        .ok_or_else(|| Error::InvalidParameter("the bundle has no layering".into()))?;
    let p = domino_from_layered(&tree, &layering, &bundle.graph)?;
    let r = domino_report(&tree, &layering, &p)?;
    let report = json!({
        "layered_width": r.layered_width,
        "max_neighbourhood_width": r.max_neighbourhood_width,
        "bound": 3 * r.layered_width as isize - 1,
        "holds": r.holds(),
        "domino": orthotree::decomp::is_domino(&p),
    });
    Ok(bundle_out(cli, bundle.graph, vec![AnyDecomposition::Path(p)], report))
}

fn compress_cmd(cli: &Cli, graph: &str, tree: &str, weak: &str, k: usize) -> Result<String> {
    let g = read_graph(graph)?;
    let t = read_decomposition(tree)?;
    let w = read_decomposition(weak)?;
    validate_all(&g, &[t.clone(), w.clone()])?;
    let t = t
        .as_tree()
        .ok_or_else(|| Error::InvalidParameter("--tree must be a tree or path decomposition".into()))?;
    let w = w
        .as_weak_path()
        .ok_or_else(|| Error::InvalidParameter("--weakpath must be a path, weak path or layering".into()))?;
    let c = compress(&g, &t, &w, k)?;
    let s = magnitude(&w);
    let bound = bounds_report(&BoundParams {
        k: Some(k as u64),
        s: Some(s as u64),
        ..Default::default()
    })
    .roots
    .into_iter()
    .next()
    .expect("k and s are given");
    let report = json!({
        "k": k,
        "s": s,
        "t": c.t,
        "label": c.label,
        "deleted": io::set_value(&c.deleted),
        "width": width(&c.decomposition),
        "bound_floor": bound.floor.to_string(),
    });
    Ok(bundle_out(cli, g, vec![AnyDecomposition::Tree(c.decomposition)], report))
}

fn separator(cli: &Cli, graph: &str, tree: &str) -> Result<String> {
    let g = read_graph(graph)?;
    let t = read_decomposition(tree)?;
    validate_all(&g, std::slice::from_ref(&t))?;
    let t = t
        .as_tree()
        .ok_or_else(|| Error::InvalidParameter("--tree must be a tree or path decomposition".into()))?;
    let sep = separator_from_decomposition(&g, &t)?;
    let largest = g.components_without(&sep).iter().map(Vec::len).max().unwrap_or(0);
    json_only(
        cli,
        json!({
            "separator": io::set_value(&sep),
            "size": sep.len(),
            "width": width(&t),
            "largest_component": largest,
            "n": g.n(),
        }),
    )
}

fn base_mode(base: Base, cap: usize) -> BaseMode {
    match base {
        Base::Heuristic => BaseMode::Heuristic,
        Base::Exact => BaseMode::Exact { cap },
    }
}

fn lift(cli: &Cli, what: LiftKind, input: &str, base: Base, cap: usize) -> Result<String> {
    let text = read_input(input)?;
    let mode = base_mode(base, cap);
    match what {
        LiftKind::String => {
            let a = io::parse_arrangement(&text)?;
            let p = a.planarize()?;
            let (bt, bl) = base_decomposition(&p.gprime, mode, 0)?;
            let (tree, path) = lift_string_path(&a, &bt, &bl)?;
            let g = orthotree::planarize::string_graph(&a)?;
            let m = a.crossing_count();
            let mut report = json!({
                "curves": a.curves.len(),
                "crossings": m,
                "base_width": width(&bt),
                "base_layered_width": layered_width(&bt, &bl)?,
                "tree_width": width(&tree),
                "path_magnitude": magnitude(&path),
                "two_m": 2 * m,
                "orthogonality": orthogonality(&tree, &path)?,
            });
            let mut ds = vec![AnyDecomposition::Tree(tree), AnyDecomposition::Path(path)];
            if let Some(k) = a.cap {
                let (lt, layering) = lift_string_layered(&a, &bt, &bl, k)?;
                report["layered_width"] = json!(layered_width(&lt, &layering)?);
                ds.push(AnyDecomposition::Layering(layering));
            }
            validate_all(&g, &ds)?;
            Ok(bundle_out(cli, g, ds, report))
        }
        LiftKind::Drawing => {
            let d = io::parse_drawing(&text)?;
            let p = d.planarize()?;
            let (bt, bl) = base_decomposition(&p.gprime, mode, 0)?;
            let (tree, weak) = lift_drawing(&d, &bt, &bl)?;
            let (n, m) = (d.graph.n(), d.crossing_count());
            let report = json!({
                "n": n,
                "edges": d.graph.m(),
                "crossings": m,
                "base_width": width(&bt),
                "base_layered_width": layered_width(&bt, &bl)?,
                "tree_width": width(&tree),
                "weak_magnitude": magnitude(&weak),
                "two_m_plus_n": 2 * m + n,
                "orthogonality": orthogonality(&tree, &weak)?,
            });
            let ds = vec![AnyDecomposition::Tree(tree), AnyDecomposition::WeakPath(weak)];
            validate_all(&d.graph, &ds)?;
            Ok(bundle_out(cli, d.graph, ds, report))
        }
    }
}

fn bounds(cli: &Cli, params: BoundParams) -> Result<String> {
    let r = bounds_report(&params);
    let roots: Vec<Value> = r
        .roots
        .iter()
        .map(|b| {
            json!({
                "name": b.name,
                "formula": b.formula,
                "radicand": b.radicand.to_string(),
                "value": b.value,
                "floor": b.floor.to_string(),
            })
        })
        .collect();
    let mut v = json!({"bounds": roots});
    if let Some(x) = &r.crossing_lower_bound {
        v["crossing_lower_bound"] = io::rational_value(x);
    }
    json_only(cli, v)
}

fn read_rects(path: &str) -> Result<Vec<Rect>> {
    io::parse_rects(&read_input(path)?)
}

fn rect(cli: &Cli, which: &RectCmd) -> Result<String> {
    match which {
        RectCmd::Classify { input } => {
            let rs = read_rects(input)?;
            let mut pairs = Vec::new();
            for i in 0..rs.len() {
                for j in i + 1..rs.len() {
                    pairs.push(match classify_pair(&rs[i], &rs[j]) {
                        Ok(t) => json!({"i": i, "j": j, "type": t.name()}),
                        Err(Error::CornerContained { corner }) => {
                            json!({"i": i, "j": j, "type": "corner", "corner": corner.name()})
                        }
                        Err(_) => json!({"i": i, "j": j, "type": "disjoint"}),
                    });
                }
            }
            json_only(cli, json!({"pairs": pairs}))
        }
        RectCmd::Hvo { input } => {
            let rs = read_rects(input)?;
            let v = match is_hvo_alternating(&rs) {
                Ok(()) => json!({"alternating": true}),
                Err(e) => json!({
                    "alternating": false,
                    "violation": {"index": e.index, "condition": e.condition, "message": e.to_string()},
                }),
            };
            json_only(cli, v)
        }
        RectCmd::Clique(args) => rect_clique(cli, args),
        RectCmd::ToPaths { input } => {
            let rs = read_rects(input)?;
            let (p1, p2) = rects_to_paths(&rs);
            let g = rect_graph(&rs);
            let (a, b) = (AnyDecomposition::Path(p1), AnyDecomposition::Path(p2));
            let report = pair_report(&a, &b)?;
            Ok(bundle_out(cli, g, vec![a, b], report))
        }
        RectCmd::FromPaths { input } => {
            let bundle = io::parse_bundle(&read_input(input)?)?;
            validate_all(&bundle.graph, &bundle.decompositions)?;
            let paths: Vec<_> = bundle
                .decompositions
                .iter()
                .filter_map(|d| match d {
                    AnyDecomposition::Path(p) => Some(p),
                    _ => None,
                })
                .collect();
            let [p1, p2] = paths[..] else {
                return Err(Error::InvalidParameter("the bundle needs exactly two path decompositions".into()));
            };
            json_only(cli, io::rects_to_value(&paths_to_rects(&bundle.graph, p1, p2)?))
        }
        RectCmd::Realize { h, d, oracle, seed, cap } => {
            let tree = graph::gen_universal_2tree(*h, *d, cap.unwrap_or(DEFAULT_TWO_TREE_CAP))?;
            let mut o = named_oracle(oracle, *seed)?;
            let (a, b) = o.root_pair()?;
            let rects = rects::realize_universal(&tree, (a.shape, b.shape), &mut o)?;
            json_only(
                cli,
                io::realization_to_value(&io::Realization {
                    height: *h,
                    branching: *d,
                    rects,
                }),
            )
        }
    }
}

/// The oracles selectable with `--oracle`.
enum AnyOracle {
    Random(Box<RandomOracle>),
    Adversary(AdversaryOracle),
    Walk(Box<TreeWalkOracle>),
}

impl AnyOracle {
    fn root_pair(&mut self) -> Result<(Node<Rect>, Node<Rect>)> {
        match self {
            AnyOracle::Random(o) => Ok(o.root_pair()),
            AnyOracle::Adversary(_) => Ok(AdversaryOracle::root_pair()),
            AnyOracle::Walk(o) => o.root_pair(),
        }
    }
}

impl ChildOracle<Rect> for AnyOracle {
    fn children(&mut self, parents: &[&Node<Rect>], count: usize) -> Vec<Node<Rect>> {
        match self {
            AnyOracle::Random(o) => o.children(parents, count),
            AnyOracle::Adversary(o) => o.children(parents, count),
            AnyOracle::Walk(o) => o.children(parents, count),
        }
    }
}

fn named_oracle(name: &str, seed: u64) -> Result<AnyOracle> {
    Ok(match name {
        "random" => AnyOracle::Random(Box::new(RandomOracle::new(seed))),
        "stall-h" => AnyOracle::Adversary(AdversaryOracle::new(Adversary::StallH)),
        "stall-v" => AnyOracle::Adversary(AdversaryOracle::new(Adversary::StallV)),
        "corner" => AnyOracle::Adversary(AdversaryOracle::new(Adversary::Corner)),
        other => {
            let path = other
                .strip_prefix("file:")
                .ok_or_else(|| Error::InvalidParameter(format!("unknown oracle `{other}`")))?;
            let r = io::parse_realization(&read_input(path)?)?;
            let tree = graph::gen_universal_2tree(r.height, r.branching, DEFAULT_TWO_TREE_CAP)?;
            AnyOracle::Walk(Box::new(TreeWalkOracle::new(tree, r.rects)?))
        }
    })
}

fn trace_value(e: &TraceEvent) -> Value {
    match e {
        TraceEvent::Success { level, index, token } => {
            json!({"event": "success", "level": level, "index": index, "token": token})
        }
        TraceEvent::Stall { level, index, token } => {
            json!({"event": "stall", "level": level, "index": index, "token": token})
        }
        TraceEvent::Corner { level, corner, holders } => {
            json!({"event": "corner", "level": level, "corner": corner.name(), "holders": holders})
        }
        TraceEvent::Nesting { index, axis, covered } => {
            json!({"event": "nesting", "index": index, "axis": axis.name(), "covered": covered})
        }
        TraceEvent::Sweep { index, covered } => json!({"event": "sweep", "index": index, "covered": covered}),
        TraceEvent::Deferred { index, covered } => {
            json!({"event": "deferred", "index": index, "covered": covered})
        }
    }
}

fn one_rect_clique(oracle: &str, seed: u64, k: usize) -> Result<Value> {
    let mut o = named_oracle(oracle, seed)?;
    let root = o.root_pair()?;
    let c = find_clique(root, &mut o, k)?;
    let shapes: Vec<&Rect> = c.members.iter().map(|n| &n.shape).collect();
    let verified = shapes.len() == k && shapes.iter().all(|r| r.contains(&c.point));
    if !verified {
        return Err(Error::InvariantBroken("returned rectangles do not share the returned point".into()));
    }
    Ok(json!({
        "seed": seed,
        "members": c.members.iter().map(|n| json!({"token": n.token, "rect": io::rect_value(&n.shape)})).collect::<Vec<_>>(),
        "point": io::point_value(&c.point),
        "levels": c.levels,
        "termination": c.termination.name(),
        "trace": c.trace.iter().map(trace_value).collect::<Vec<_>>(),
        "verified": verified,
    }))
}

fn parameters(k: usize) -> Value {
    let p = tree_parameters(k);
    json!({
        "procedure": {"branching": p.branching, "height": p.height},
        "statement": {"branching": p.stated_branching, "height": p.stated_height},
    })
}

/// Runs `f` on each seed, spreading contiguous chunks over `jobs` threads.
/// Results come back in seed order.
fn par_map<R: Send>(seeds: Vec<u64>, jobs: usize, f: impl Fn(u64) -> R + Sync) -> Vec<R> {
    let jobs = jobs.clamp(1, seeds.len().max(1));
    let chunk = seeds.len().div_ceil(jobs).max(1);
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(|&x| f(x)).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

fn seeds(seed: u64, count: Option<u64>) -> Result<Vec<u64>> {
    let count = count.unwrap_or(1);
    if count == 0 {
        return Err(Error::InvalidParameter("--count must be positive".into()));
    }
    let end = seed
        .checked_add(count)
        .ok_or_else(|| Error::InvalidParameter("seed range overflows".into()))?;
    Ok((seed..end).collect())
}

fn rect_clique(cli: &Cli, a: &CliqueArgs) -> Result<String> {
    let runs = par_map(seeds(a.seed, a.count)?, cli.jobs, |s| one_rect_clique(&a.oracle, s, a.k))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut v = json!({"k": a.k, "oracle": a.oracle, "parameters": parameters(a.k)});
    match a.count {
        None => {
            let run = runs.into_iter().next().expect("one seed");
            for key in ["seed", "members", "point", "levels", "termination", "trace", "verified"] {
                v[key] = run[key].clone();
            }
        }
        Some(_) => v["runs"] = json!(runs),
    }
    json_only(cli, v)
}

fn box_clique(cli: &Cli, d: usize, k: usize, seed: u64, count: Option<u64>) -> Result<String> {
    let run = |s: u64| -> Result<Value> {
        let mut o = RandomOracle::new(s);
        let root = o.root_boxes(d, 2 * d + 1);
        let c = box_find_clique(root, &mut o, k, d)?;
        let verified = c.members.len() == k && c.members.iter().all(|n| n.shape.contains(&c.point));
        if !verified {
            return Err(Error::InvariantBroken("returned boxes do not share the returned point".into()));
        }
        Ok(json!({
            "seed": s,
            "members": c.members.iter().map(|n| json!({"token": n.token, "box": io::box_value(&n.shape)})).collect::<Vec<_>>(),
            "point": c.point.iter().map(io::rational_value).collect::<Vec<_>>(),
            "rounds": c.rounds,
            "verified": verified,
        }))
    };
    let runs = par_map(seeds(seed, count)?, cli.jobs, run)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut v = json!({"d": d, "k": k});
    match count {
        None => {
            let r = runs.into_iter().next().expect("one seed");
            for key in ["seed", "members", "point", "rounds", "verified"] {
                v[key] = r[key].clone();
            }
        }
        Some(_) => v["runs"] = json!(runs),
    }
    json_only(cli, v)
}

fn oracle(cli: &Cli, which: OracleKind, graph: &str, cap: Option<usize>) -> Result<String> {
    let g = read_graph(graph)?;
    let caps = Caps::default();
    let decomposition_out = |key: &str, w: isize, d: AnyDecomposition| match cli.format {
        Format::Dot => io::decomposition_to_dot(&d),
        Format::Json => io::to_pretty(&json!({key: w, "decomposition": io::decomposition_to_value(&d)})),
    };
    match which {
        OracleKind::Tw => {
            let t = oracles::exact_treewidth(&g, cap.unwrap_or(caps.treewidth))?;
            Ok(decomposition_out("treewidth", t.width, AnyDecomposition::Tree(t.decomposition)))
        }
        OracleKind::Pw => {
            let p = oracles::exact_pathwidth(&g, cap.unwrap_or(caps.pathwidth))?;
            Ok(decomposition_out("pathwidth", p.width, AnyDecomposition::Path(p.decomposition)))
        }
        OracleKind::Clique => {
            let (size, witness) = oracles::max_clique(&g, cap.unwrap_or(caps.clique))?;
            json_only(cli, json!({"clique_number": size, "witness": witness}))
        }
        OracleKind::Chi => {
            let (chi, colouring) = oracles::chromatic_number(&g, cap.unwrap_or(caps.chromatic))?;
            json_only(cli, json!({"chromatic_number": chi, "colouring": colouring}))
        }
        OracleKind::Sep => {
            let (size, set): (usize, BTreeSet<_>) = oracles::min_separator_size(&g, cap.unwrap_or(caps.separator))?;
            json_only(cli, json!({"separator_number": size, "separator": io::set_value(&set)}))
        }
    }
}
