//! The four subcommands. Each returns a [`Report`] plus any invariant
//! violations found while checking its own output.

use std::f64::consts::TAU;
use std::fs;
use std::io::{self, Read};
use std::path::Path;
use std::time::Instant;

use approx_veb::exact::{DescentStats, Name, VebSet};
use approx_veb::graph::{dijkstra_sssp, prim_mst, Graph, PqKind};
use approx_veb::hull::{OnlineHull, Point};
use approx_veb::word::{FixedPoint, WordConfig};
use approx_veb::ApproxVeb;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::input::{self, Event};
use crate::report::Report;
use crate::{BenchArgs, Cli, CliError, Command, GraphInput, HullArgs, SsspArgs, Structure};

/// Hull ring operations allowed per processed point.
pub const HULL_OPS_PER_POINT: u64 = 8;
/// Allowed distance from the maintained hull, in units of delta * diameter.
pub const HULL_COVERAGE: f64 = 4.0;

pub struct Outcome {
    pub report: Report,
    pub violations: Vec<String>,
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Mst(args) => mst(&args.graph),
        Command::Sssp(args) => sssp(args),
        Command::Hull(args) => hull(args),
        Command::Bench(args) => bench(args, cli.seed),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let read = if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map(|_| text)
    } else {
        fs::read_to_string(path)
    };
    read.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn pq_kind(epsilon: Option<f64>) -> PqKind {
    match epsilon {
        Some(epsilon) => PqKind::Approximate { epsilon },
        None => PqKind::Exact,
    }
}

fn describe(kind: PqKind) -> String {
    match kind {
        PqKind::Exact => "exact".into(),
        PqKind::Approximate { epsilon } => format!("approximate epsilon={epsilon}"),
    }
}

fn pq_fields(report: &mut Report, stats: DescentStats) {
    report.field("pq_passes", stats.passes);
    report.field("pq_descents", stats.descents);
    report.field("pq_max_descents", stats.max_descents);
}

/// The ratio a run is held to; 1 for the exact queue. `cap` is the largest
/// epsilon the algorithm honours as given.
fn allowed_ratio(kind: PqKind, cap: f64) -> f64 {
    match kind {
        PqKind::Exact => 1.0,
        PqKind::Approximate { epsilon } => 1.0 + epsilon.min(cap),
    }
}

fn mst(args: &GraphInput) -> Result<Outcome, CliError> {
    let file = input::parse_graph(&read_input(&args.input)?)?;
    let kind = pq_kind(args.epsilon);
    let g = Graph::undirected(file.n, file.edges.clone())?;
    let start = Instant::now();
    let result = prim_mst(&g, kind)?;
    let elapsed = start.elapsed();

    let mut report = Report::new(&["u", "v", "w"]);
    let mut violations = Vec::new();
    report.field("vertices", file.n);
    report.field("edges", file.edges.len());
    report.field("pq", describe(kind));
    report.field("total_weight", result.total_weight);
    if args.exact {
        let oracle = veb_oracles::kruskal_mst(file.n, &file.edges)
            .map_err(|e| CliError::Input(format!("graph is disconnected: vertex {} unreached", e.0)))?;
        let ratio = if oracle == 0 {
            1.0
        } else {
            result.total_weight as f64 / oracle as f64
        };
        report.field("oracle_weight", oracle);
        report.field("ratio", format!("{ratio:.6}"));
        if result.total_weight as f64 > allowed_ratio(kind, 1.0) * oracle as f64 * (1.0 + 1e-12) {
            violations.push(format!(
                "tree weight {} exceeds {} times the optimum {oracle}",
                result.total_weight,
                allowed_ratio(kind, 1.0)
            ));
        }
    }
    report.field("elapsed_ns", elapsed.as_nanos());
    pq_fields(&mut report, result.stats);
    for (u, v, w) in result.edges {
        report.row(vec![u.to_string(), v.to_string(), w.to_string()]);
    }
    Ok(Outcome { report, violations })
}

fn sssp(args: &SsspArgs) -> Result<Outcome, CliError> {
    let file = input::parse_graph(&read_input(&args.graph.input)?)?;
    let kind = pq_kind(args.graph.epsilon);
    let g = if args.directed {
        Graph::directed(file.n, file.edges.clone())?
    } else {
        Graph::undirected(file.n, file.edges.clone())?
    };
    let start = Instant::now();
    let result = dijkstra_sssp(&g, args.source, kind)?;
    let elapsed = start.elapsed();

    let oracle = args.graph.exact.then(|| {
        let mut arcs = file.edges.clone();
        if !args.directed {
            arcs.extend(file.edges.iter().map(|&(u, v, w)| (v, u, w)));
        }
        veb_oracles::dijkstra_heap(file.n, &arcs, args.source)
    });

    let mut report = Report::new(&["vertex", "dist", "oracle", "ratio"]);
    let mut violations = Vec::new();
    report.field("vertices", file.n);
    report.field("edges", file.edges.len());
    report.field("source", args.source);
    report.field("pq", describe(kind));
    report.field("reached", result.dist.iter().flatten().count());
    let mut worst: f64 = 1.0;
    let show = |d: Option<u64>| d.map_or("inf".to_string(), |d| d.to_string());
    for (v, &d) in result.dist.iter().enumerate() {
        let (oracle_col, ratio_col) = match &oracle {
            None => (String::new(), String::new()),
            Some(truth) => {
                let ratio = match (truth[v], d) {
                    (Some(0), Some(0)) | (None, None) => Some(1.0),
                    (Some(t), Some(d)) if t > 0 => Some(d as f64 / t as f64),
                    _ => None,
                };
                match ratio {
                    Some(r) if r >= 1.0 && r <= allowed_ratio(kind, 2.0) * (1.0 + 1e-12) => worst = worst.max(r),
                    _ => violations.push(format!(
                        "vertex {v}: distance {} against true {}",
                        show(d),
                        show(truth[v])
                    )),
                }
                let ratio = ratio.map_or("nan".to_string(), |r| format!("{r:.6}"));
                (show(truth[v]), ratio)
            }
        };
        report.row(vec![v.to_string(), show(d), oracle_col, ratio_col]);
    }
    if oracle.is_some() {
        report.field("worst_ratio", format!("{worst:.6}"));
    }
    report.field("elapsed_ns", elapsed.as_nanos());
    pq_fields(&mut report, result.stats);
    Ok(Outcome { report, violations })
}

fn hull(args: &HullArgs) -> Result<Outcome, CliError> {
    let events = input::parse_stream(&read_input(&args.input)?)?;
    let delta = match (args.delta, args.buckets) {
        (Some(d), _) => d,
        (None, Some(0)) => return Err(CliError::Input("--buckets must be positive".into())),
        (None, Some(n)) => TAU / f64::from(n),
        (None, None) => TAU / 1024.0,
    };
    let mut hull = OnlineHull::new(delta)?;

    let mut report = Report::new(&["kind", "x", "y", "inside"]);
    let mut violations = Vec::new();
    let mut points = Vec::new();
    let mut queries = 0;
    let start = Instant::now();
    for event in events {
        match event {
            Event::Point(p) => {
                hull.add_point(p)?;
                points.push((p.x, p.y));
            }
            Event::Query(q) => {
                queries += 1;
                let answer = match hull.contains(q) {
                    Ok(inside) => inside.to_string(),
                    Err(approx_veb::Error::HullNotInitialized) => "uninitialized".to_string(),
                    Err(e) => return Err(e.into()),
                };
                report.row(vec!["query".into(), q.x.to_string(), q.y.to_string(), answer]);
            }
        }
    }
    let elapsed = start.elapsed();
    let vertices: Vec<Point> = hull.vertices().unwrap_or_default();
    for v in &vertices {
        report.row(vec!["vertex".into(), v.x.to_string(), v.y.to_string(), String::new()]);
    }

    let stats = hull.stats();
    report.field("delta", delta);
    report.field("points", stats.points);
    report.field("queries", queries);
    report.field("initialized", hull.is_initialized());
    report.field("vertices", vertices.len());
    report.field("update_ops", stats.update_ops);
    let per_point = if stats.points == 0 {
        0.0
    } else {
        stats.update_ops as f64 / stats.points as f64
    };
    report.field("ops_per_point", format!("{per_point:.3}"));
    report.field("query_ops", stats.query_ops);
    report.field("inserted", stats.inserted);
    report.field("deleted", stats.deleted);
    report.field("discarded", stats.discarded);
    report.field("elapsed_ns", elapsed.as_nanos());
    if stats.update_ops > HULL_OPS_PER_POINT * stats.points {
        violations.push(format!(
            "{} ring operations for {} points exceeds {HULL_OPS_PER_POINT} per point",
            stats.update_ops, stats.points
        ));
    }
    if args.exact && hull.is_initialized() {
        let truth = veb_oracles::convex_hull(&points);
        let polygon: Vec<(i64, i64)> = vertices.iter().map(|p| (p.x, p.y)).collect();
        let scale = delta * veb_oracles::diameter(&truth);
        let gap = truth
            .iter()
            .map(|&p| veb_oracles::distance_to_polygon(&polygon, p))
            .fold(0.0, f64::max);
        let coverage = if scale > 0.0 { gap / scale } else { 0.0 };
        report.field("oracle_vertices", truth.len());
        report.field("coverage", format!("{coverage:.4}"));
        if coverage > HULL_COVERAGE {
            violations.push(format!("hull point {gap:.1} away, beyond {HULL_COVERAGE} delta * diameter"));
        }
        if let Some(v) = polygon.iter().find(|&&v| !veb_oracles::polygon_contains(&truth, v)) {
            violations.push(format!("vertex {v:?} lies outside the exact hull"));
        }
    }
    Ok(Outcome { report, violations })
}

enum Target {
    Exact(VebSet<()>),
    Approx(ApproxVeb<()>),
}

impl Target {
    fn insert(&mut self, x: FixedPoint) -> Name {
        match self {
            Target::Exact(s) => s.insert(x.int_part, x, ()),
            Target::Approx(s) => s.insert(x, ()),
        }
        .expect("bench keys are in range")
    }

    fn delete(&mut self, name: Name) {
        match self {
            Target::Exact(s) => s.delete(name),
            Target::Approx(s) => s.delete(name),
        }
        .expect("live name");
    }

    fn search(&self, x: FixedPoint) -> Option<Name> {
        match self {
            Target::Exact(s) => s.search(x.int_part),
            Target::Approx(s) => s.search(x),
        }
    }

    fn core(&self) -> &VebSet<()> {
        match self {
            Target::Exact(s) => s,
            Target::Approx(s) => s.exact(),
        }
    }
}

fn bench(args: &BenchArgs, seed: u64) -> Result<Outcome, CliError> {
    let bits = args.universe_bits;
    if !(1..=64).contains(&bits) {
        return Err(CliError::Input(format!("--universe-bits must be in 1..=64, got {bits}")));
    }
    // largest key; a 64-bit universe stops one short of 2^64
    let top = if bits == 64 { u64::MAX - 1 } else { (1u64 << bits) - 1 };
    let cfg = WordConfig::default();
    let (mut target, lowest) = match args.structure {
        Structure::Exact => (Target::Exact(VebSet::new(top + 1)?), 0),
        Structure::Mult => (
            Target::Approx(ApproxVeb::multiplicative(args.epsilon, FixedPoint::from_int(top.max(1)))?),
            1,
        ),
        Structure::Add => {
            let delta = FixedPoint::from_f64(args.delta, cfg)
                .ok_or_else(|| CliError::Input(format!("invalid --delta {}", args.delta)))?;
            (Target::Approx(ApproxVeb::additive(delta, FixedPoint::from_int(top))?), 0)
        }
    };
    let fractional = !matches!(args.structure, Structure::Exact);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let key = |rng: &mut ChaCha8Rng| {
        let int = rng.gen_range(lowest..=top.max(lowest));
        let frac = if fractional && int < top { rng.gen() } else { 0 };
        FixedPoint::new(int, frac)
    };

    // per op kind: count, nanoseconds, descents
    let mut totals = [(0u64, 0u128, 0u64); 3];
    let mut live: Vec<Name> = Vec::new();
    for _ in 0..args.ops {
        let roll = rng.gen_range(0..10);
        let x = key(&mut rng);
        let before = target.core().stats().descents;
        let start = Instant::now();
        let kind = match roll {
            0..=4 => {
                std::hint::black_box(target.search(x));
                0
            }
            8 | 9 if !live.is_empty() => {
                let name = live.swap_remove(rng.gen_range(0..live.len()));
                target.delete(name);
                2
            }
            _ => {
                live.push(target.insert(x));
                1
            }
        };
        let ns = start.elapsed().as_nanos();
        let slot = &mut totals[kind];
        slot.0 += 1;
        slot.1 += ns;
        slot.2 += target.core().stats().descents - before;
    }

    let structure = match args.structure {
        Structure::Exact => "exact",
        Structure::Mult => "mult",
        Structure::Add => "add",
    };
    let mut report = Report::new(&["structure", "universe_bits", "op", "count", "total_ns", "descents"]);
    for (op, (count, ns, descents)) in ["search", "insert", "delete"].iter().zip(totals) {
        if count > 0 {
            report.row(vec![
                structure.into(),
                bits.to_string(),
                op.to_string(),
                count.to_string(),
                ns.to_string(),
                descents.to_string(),
            ]);
        }
    }
    let core = target.core();
    report.field("seed", seed);
    report.field("ops", args.ops);
    report.field("reduced_universe", core.universe());
    report.field("tower_levels", core.tower_levels());
    let stats = core.stats();
    report.field("passes", stats.passes);
    let per_pass = if stats.passes == 0 {
        0.0
    } else {
        stats.descents as f64 / stats.passes as f64
    };
    report.field("mean_descents_per_pass", format!("{per_pass:.4}"));
    report.field("max_descents", stats.max_descents);
    report.field("final_len", core.len());
    Ok(Outcome {
        report,
        violations: Vec::new(),
    })
}
