//! Textbook graph algorithms over plain edge lists.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// A vertex that could not be reached from vertex 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unreached(pub usize);

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Kruskal's algorithm with union-find. Edges are undirected `(u, v, w)`.
pub fn kruskal_mst(n: usize, edges: &[(usize, usize, u64)]) -> Result<u64, Unreached> {
    let mut sorted: Vec<_> = edges.to_vec();
    sorted.sort_by_key(|&(_, _, w)| w);
    let mut parent: Vec<usize> = (0..n).collect();
    let mut total = 0;
    let mut joined = 0;
    for (u, v, w) in sorted {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            total += w;
            joined += 1;
        }
    }
    if n > 0 && joined + 1 != n {
        let root = find(&mut parent, 0);
        let lost = (0..n).find(|&v| find(&mut parent, v) != root).unwrap();
        return Err(Unreached(lost));
    }
    Ok(total)
}

/// Lazy-deletion binary-heap Prim from vertex 0.
pub fn prim_heap(n: usize, edges: &[(usize, usize, u64)]) -> Result<u64, Unreached> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in edges {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    let mut in_tree = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut total = 0;
    if n > 0 {
        heap.push(Reverse((0u64, 0usize)));
    }
    while let Some(Reverse((w, v))) = heap.pop() {
        if in_tree[v] {
            continue;
        }
        in_tree[v] = true;
        total += w;
        for &(t, wt) in &adj[v] {
            if !in_tree[t] {
                heap.push(Reverse((wt, t)));
            }
        }
    }
    match in_tree.iter().position(|&b| !b) {
        Some(v) => Err(Unreached(v)),
        None => Ok(total),
    }
}

/// Binary-heap Dijkstra over directed edges. `None` marks unreachable vertices.
pub fn dijkstra_heap(n: usize, edges: &[(usize, usize, u64)], source: usize) -> Vec<Option<u64>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in edges {
        adj[u].push((v, w));
    }
    let mut dist: Vec<Option<u64>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v].is_some_and(|best| d > best) {
            continue;
        }
        for &(t, w) in &adj[v] {
            let nd = d + w;
            if dist[t].is_none_or(|best| nd < best) {
                dist[t] = Some(nd);
                heap.push(Reverse((nd, t)));
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_mst() {
        let e = [(0, 1, 1), (1, 2, 2), (0, 2, 3)];
        assert_eq!(kruskal_mst(3, &e), Ok(3));
        assert_eq!(prim_heap(3, &e), Ok(3));
    }

    #[test]
    fn disconnected_reports_vertex() {
        let e = [(0, 1, 1)];
        assert_eq!(kruskal_mst(3, &e), Err(Unreached(2)));
        assert_eq!(prim_heap(3, &e), Err(Unreached(2)));
    }

    #[test]
    fn path_distances_sum() {
        let e = [(0, 1, 5), (1, 2, 7)];
        assert_eq!(dijkstra_heap(4, &e, 0), vec![Some(0), Some(5), Some(12), None]);
    }
}
