//! Network statistics: clustering, triangles, diameter, degree
//! distributions, and weight summaries.
//!
//! Clustering, triangles, and diameter are measured on the unweighted
//! simple graph underlying the network; weights only enter the weight
//! statistics and community detection.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GraphError, InGraph};

/// Clustering-related quantities computed in one pass.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringStats {
    /// Mean local clustering coefficient over all nodes (degree < 2
    /// contributes 0).
    pub avg_clustering_coefficient: f64,
    /// Global number of 3-cliques.
    pub triangle_count: u64,
    /// Transitivity: `3 * triangles / connected triples`, 0 when the graph
    /// has no connected triple.
    pub fraction_closed_triangles: f64,
}

/// Full statistics block for a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub avg_clustering_coefficient: f64,
    pub triangle_count: u64,
    pub fraction_closed_triangles: f64,
    pub diameter: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub avg_edge_weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongest_edge: Option<(String, String, u64)>,
}

/// Histogram of unweighted node degrees. In cumulative form the count at
/// degree `d` is the number of nodes with degree ≥ `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub entries: BTreeMap<usize, usize>,
    pub cumulative: bool,
}

/// Number of triangles through each node: for node `v`, edges among its
/// neighbors. Each neighbor pair's edge shows up in two intersection scans,
/// hence the halving.
fn triangles_at(g: &InGraph, v: usize) -> u64 {
    let nv = g.neighbors(v);
    if nv.len() < 2 {
        return 0;
    }
    let mut twice = 0u64;
    for &(u, _) in nv {
        twice += sorted_intersection_size(nv, g.neighbors(u));
    }
    twice / 2
}

fn sorted_intersection_size(a: &[(usize, u64)], b: &[(usize, u64)]) -> u64 {
    let mut count = 0u64;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Local clustering coefficient of one node.
pub fn local_clustering(g: &InGraph, v: usize) -> f64 {
    let d = g.degree(v) as u64;
    if d < 2 {
        return 0.0;
    }
    let t = triangles_at(g, v);
    2.0 * t as f64 / (d * (d - 1)) as f64
}

fn finish_clustering(g: &InGraph, per_node: &[u64]) -> ClusteringStats {
    let n = g.node_count();
    let mut cc_sum = 0.0;
    let mut triples = 0u64;
    let mut triangle_sum = 0u64;
    for (v, &t) in per_node.iter().enumerate() {
        let d = g.degree(v) as u64;
        if d >= 2 {
            cc_sum += 2.0 * t as f64 / (d * (d - 1)) as f64;
            triples += d * (d - 1) / 2;
        }
        triangle_sum += t;
    }
    let triangle_count = triangle_sum / 3;
    let fraction = if triples == 0 {
        0.0
    } else {
        3.0 * triangle_count as f64 / triples as f64
    };
    ClusteringStats {
        avg_clustering_coefficient: if n == 0 { 0.0 } else { cc_sum / n as f64 },
        triangle_count,
        fraction_closed_triangles: fraction,
    }
}

/// Average clustering coefficient, triangle count, and transitivity.
pub fn clustering_stats(g: &InGraph) -> ClusteringStats {
    #[cfg(feature = "parallel")]
    {
        clustering_stats_par(g)
    }
    #[cfg(not(feature = "parallel"))]
    {
        clustering_stats_seq(g)
    }
}

/// Single-threaded [`clustering_stats`].
pub fn clustering_stats_seq(g: &InGraph) -> ClusteringStats {
    let per_node: Vec<u64> = (0..g.node_count()).map(|v| triangles_at(g, v)).collect();
    finish_clustering(g, &per_node)
}

/// Rayon-parallel [`clustering_stats`]. Per-node triangle counts are exact
/// integers computed independently, so the reduction order cannot change
/// the result.
#[cfg(feature = "parallel")]
pub fn clustering_stats_par(g: &InGraph) -> ClusteringStats {
    use rayon::prelude::*;
    let per_node: Vec<u64> = (0..g.node_count())
        .into_par_iter()
        .map(|v| triangles_at(g, v))
        .collect();
    finish_clustering(g, &per_node)
}

/// BFS distances from `src`; `usize::MAX` marks unreachable nodes.
fn bfs_distances(g: &InGraph, src: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.node_count()];
    let mut queue = std::collections::VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Connected components; returns (component id per node, component count).
fn components(g: &InGraph) -> (Vec<usize>, usize) {
    let n = g.node_count();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = count;
        while let Some(u) = stack.pop() {
            for &(v, _) in g.neighbors(u) {
                if comp[v] == usize::MAX {
                    comp[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Node ids of the largest connected component, chosen by node count with
/// ties broken by the smallest contained node id.
fn largest_component(g: &InGraph) -> Vec<usize> {
    let (comp, count) = components(g);
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c] += 1;
    }
    // Component ids are assigned in ascending order of their smallest node,
    // so the first maximal size wins the tie.
    let best = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap();
    (0..g.node_count()).filter(|&v| comp[v] == best).collect()
}

/// Longest shortest path within the largest connected component.
pub fn diameter(g: &InGraph) -> Result<usize, GraphError> {
    #[cfg(feature = "parallel")]
    {
        diameter_par(g)
    }
    #[cfg(not(feature = "parallel"))]
    {
        diameter_seq(g)
    }
}

/// Single-threaded [`diameter`].
pub fn diameter_seq(g: &InGraph) -> Result<usize, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    let member = largest_component(g);
    Ok(member
        .iter()
        .map(|&src| eccentricity_within(g, src))
        .max()
        .unwrap_or(0))
}

/// Rayon-parallel [`diameter`]: one BFS per component node, max-reduced.
#[cfg(feature = "parallel")]
pub fn diameter_par(g: &InGraph) -> Result<usize, GraphError> {
    use rayon::prelude::*;
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    let member = largest_component(g);
    Ok(member
        .par_iter()
        .map(|&src| eccentricity_within(g, src))
        .max()
        .unwrap_or(0))
}

fn eccentricity_within(g: &InGraph, src: usize) -> usize {
    bfs_distances(g, src)
        .into_iter()
        .filter(|&d| d != usize::MAX)
        .max()
        .unwrap_or(0)
}

/// Arithmetic mean of weights over unordered edges.
pub fn avg_edge_weight(g: &InGraph) -> Result<f64, GraphError> {
    if g.edge_count() == 0 {
        return Err(GraphError::NoEdges);
    }
    Ok(g.total_weight() as f64 / g.edge_count() as f64)
}

/// Heaviest edge as `(name_u, name_v, weight)` with `name_u < name_v`;
/// weight ties resolve to the lexicographically smallest name pair.
pub fn strongest_edge(g: &InGraph) -> Option<(String, String, u64)> {
    g.edges()
        .map(|(u, v, w)| (g.name(u), g.name(v), w))
        .max_by(|a, b| a.2.cmp(&b.2).then_with(|| (b.0, b.1).cmp(&(a.0, a.1))))
        .map(|(u, v, w)| (u.to_string(), v.to_string(), w))
}

/// Histogram over unweighted degrees; cumulative form counts nodes with
/// degree ≥ d for every observed degree d.
pub fn degree_distribution(g: &InGraph, cumulative: bool) -> DegreeHistogram {
    let mut plain: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..g.node_count() {
        *plain.entry(g.degree(v)).or_insert(0) += 1;
    }
    if !cumulative {
        return DegreeHistogram {
            entries: plain,
            cumulative,
        };
    }
    let mut entries = BTreeMap::new();
    let mut seen = 0usize;
    for (&degree, &count) in plain.iter().rev() {
        seen += count;
        entries.insert(degree, seen);
    }
    DegreeHistogram { entries, cumulative }
}

/// Least-squares slope of `ln(count)` against `ln(degree)` over histogram
/// entries with `degree >= min_degree`. Returns `None` with fewer than two
/// usable points. A clearly negative slope on the tail is what a power-law
/// degree distribution looks like at this level of rigor; no formal fit is
/// attempted.
pub fn log_log_tail_slope(hist: &DegreeHistogram, min_degree: usize) -> Option<f64> {
    let points: Vec<(f64, f64)> = hist
        .entries
        .iter()
        .filter(|&(&d, &c)| d >= min_degree.max(1) && c > 0)
        .map(|(&d, &c)| ((d as f64).ln(), (c as f64).ln()))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Assemble the full [`StatsReport`]. On an edgeless graph the weight
/// fields are omitted rather than erroring.
pub fn stats_report(g: &InGraph) -> Result<StatsReport, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    let clustering = clustering_stats(g);
    Ok(StatsReport {
        node_count: g.node_count(),
        edge_count: g.edge_count(),
        avg_clustering_coefficient: clustering.avg_clustering_coefficient,
        triangle_count: clustering.triangle_count,
        fraction_closed_triangles: clustering.fraction_closed_triangles,
        diameter: diameter(g)?,
        avg_edge_weight: avg_edge_weight(g).ok(),
        strongest_edge: strongest_edge(g),
    })
}
