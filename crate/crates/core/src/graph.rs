//! Prim's minimum spanning tree and Dijkstra's shortest paths over a
//! pluggable, possibly approximate, priority queue.
//!
//! With a queue whose `pop_min` may return an entry up to a factor `1 + e`
//! above the true minimum, Prim's algorithm yields a tree of weight at most
//! `(1 + e)` times optimal. Dijkstra's error compounds along a path, so it
//! runs its queue at `1 + epsilon / (2n)`; the product over at most `n`
//! scans stays below `e^(epsilon/2) <= 1 + epsilon` for `epsilon <= 2`.

use crate::approx::{ApproxPq, PriorityQueue};
use crate::error::{Error, Result};
use crate::exact::DescentStats;

/// A weighted graph on vertices `0..n`. Weights are at least 1.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
    adjacency: Vec<Vec<(usize, u64)>>,
    directed: bool,
}

impl Graph {
    /// Each edge is traversable both ways.
    pub fn undirected(n: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        Self::build(n, edges, false)
    }

    pub fn directed(n: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        Self::build(n, edges, true)
    }

    fn build(n: usize, edges: Vec<(usize, usize, u64)>, directed: bool) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { edge: i, vertex, n });
                }
            }
            if w == 0 {
                return Err(Error::ZeroWeight(i));
            }
            adjacency[u].push((v, w));
            if !directed {
                adjacency[v].push((u, w));
            }
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
            directed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adjacency[v]
    }

    pub fn max_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.2).max().unwrap_or(1)
    }
}

/// Which priority queue drives an algorithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PqKind {
    /// Exact integer priorities.
    Exact,
    /// Overall `(1 + epsilon)` approximation.
    Approximate { epsilon: f64 },
}

#[derive(Clone, Debug)]
pub struct MstResult {
    /// Tree edges `(parent, child, weight)` in the order they were added.
    pub edges: Vec<(usize, usize, u64)>,
    pub total_weight: u64,
    pub stats: DescentStats,
}

#[derive(Clone, Debug)]
pub struct SsspResult {
    /// `None` for vertices the source cannot reach.
    pub dist: Vec<Option<u64>>,
    pub parent: Vec<Option<usize>>,
    /// Vertices in the order they were scanned, source first.
    pub scan_order: Vec<usize>,
    pub stats: DescentStats,
}

/// Minimum spanning tree of an undirected, connected graph.
///
/// ```
/// use approx_veb::graph::{prim_mst, Graph, PqKind};
///
/// let g = Graph::undirected(3, vec![(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
/// assert_eq!(prim_mst(&g, PqKind::Exact).unwrap().total_weight, 3);
/// let approx = prim_mst(&g, PqKind::Approximate { epsilon: 1.0 }).unwrap();
/// assert!(approx.total_weight <= 2 * 3);
/// ```
pub fn prim_mst(g: &Graph, kind: PqKind) -> Result<MstResult> {
    let top = g.max_weight();
    let mut pq = match kind {
        PqKind::Exact => ApproxPq::exact(top)?,
        PqKind::Approximate { epsilon } => ApproxPq::multiplicative(epsilon, top)?,
    };
    let (edges, total_weight) = prim_mst_with(g, &mut pq)?;
    Ok(MstResult {
        edges,
        total_weight,
        stats: pq.stats(),
    })
}

/// Prim's algorithm over any [`PriorityQueue`], starting from vertex 0.
/// Decrease-key is a removal followed by a push.
#[allow(clippy::type_complexity)]
pub fn prim_mst_with<Q>(g: &Graph, pq: &mut Q) -> Result<(Vec<(usize, usize, u64)>, u64)>
where
    Q: PriorityQueue<usize>,
{
    let n = g.n();
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return Ok((tree, 0));
    }
    let mut in_tree = vec![false; n];
    // best known connecting edge into each fringe vertex
    let mut best: Vec<Option<(u64, usize, Q::Handle)>> = vec![None; n];
    let mut total = 0u64;

    let mut next = Some((0usize, None));
    while let Some((v, via)) = next {
        in_tree[v] = true;
        if let Some((u, w)) = via {
            tree.push((u, v, w));
            total += w;
        }
        for &(x, w) in g.neighbors(v) {
            if in_tree[x] {
                continue;
            }
            match best[x] {
                Some((old, _, _)) if old <= w => {}
                Some((_, _, handle)) => {
                    pq.remove(handle)?;
                    best[x] = Some((w, v, pq.push(w, x)?));
                }
                None => best[x] = Some((w, v, pq.push(w, x)?)),
            }
        }
        next = if pq.is_empty() {
            None
        } else {
            let (w, x) = pq.pop_min()?;
            let (_, u, _) = best[x].take().expect("queued vertex has an edge");
            Some((x, Some((u, w))))
        };
    }
    match in_tree.iter().position(|&t| !t) {
        Some(v) => Err(Error::Disconnected(v)),
        None => Ok((tree, total)),
    }
}

/// Single-source distances within a factor `1 + epsilon` (`0 < epsilon <= 2`).
///
/// ```
/// use approx_veb::graph::{dijkstra_sssp, Graph, PqKind};
///
/// let g = Graph::undirected(3, vec![(0, 1, 5), (1, 2, 7)]).unwrap();
/// let exact = dijkstra_sssp(&g, 0, PqKind::Exact).unwrap();
/// assert_eq!(exact.dist, vec![Some(0), Some(5), Some(12)]);
/// ```
pub fn dijkstra_sssp(g: &Graph, source: usize, kind: PqKind) -> Result<SsspResult> {
    let n = g.n();
    if source >= n {
        return Err(Error::SourceOutOfRange { vertex: source, n });
    }
    // no simple path is longer than (n - 1) edges
    let top = (n as u64)
        .checked_mul(g.max_weight())
        .ok_or(Error::UniverseTooLarge)?;
    let mut pq = match kind {
        PqKind::Exact => ApproxPq::exact(top)?,
        PqKind::Approximate { epsilon } => {
            if !(epsilon > 0.0 && epsilon <= 2.0) {
                return Err(Error::InvalidEpsilon(epsilon));
            }
            ApproxPq::multiplicative(epsilon / (2.0 * n as f64), top)?
        }
    };
    let mut result = dijkstra_sssp_with(g, source, &mut pq)?;
    result.stats = pq.stats();
    Ok(result)
}

/// Label-setting Dijkstra over any [`PriorityQueue`]: each vertex is scanned
/// once, when it leaves the queue, and its label is final from then on.
pub fn dijkstra_sssp_with<Q>(g: &Graph, source: usize, pq: &mut Q) -> Result<SsspResult>
where
    Q: PriorityQueue<usize>,
{
    let n = g.n();
    if source >= n {
        return Err(Error::SourceOutOfRange { vertex: source, n });
    }
    let mut dist: Vec<Option<u64>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut handle: Vec<Option<Q::Handle>> = vec![None; n];
    let mut scanned = vec![false; n];
    let mut scan_order = Vec::new();

    dist[source] = Some(0);
    let mut next = Some(source);
    while let Some(u) = next {
        scanned[u] = true;
        scan_order.push(u);
        let du = dist[u].expect("scanned vertices are labelled");
        for &(v, w) in g.neighbors(u) {
            if scanned[v] {
                continue;
            }
            let candidate = du + w;
            if dist[v].is_some_and(|d| d <= candidate) {
                continue;
            }
            if let Some(h) = handle[v].take() {
                pq.remove(h)?;
            }
            handle[v] = Some(pq.push(candidate, v)?);
            dist[v] = Some(candidate);
            parent[v] = Some(u);
        }
        next = if pq.is_empty() {
            None
        } else {
            let (_, v) = pq.pop_min()?;
            handle[v] = None;
            Some(v)
        };
    }
    Ok(SsspResult {
        dist,
        parent,
        scan_order,
        stats: DescentStats::default(),
    })
}
