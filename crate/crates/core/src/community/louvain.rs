//! Weighted Louvain: local moving plus graph aggregation.
//!
//! Node visit order is shuffled with a seeded SplitMix64 Fisher-Yates, so a
//! given (graph, seed, resolution) always produces the same partition, on
//! any platform, with no RNG crate in the loop. Move gains are compared
//! through integer-exact scaled forms (`2m·w − γ·k·Σtot`), which keeps the
//! chosen moves, and therefore the final partition, invariant under
//! uniform weight scaling.

use std::collections::HashMap;

use super::{modularity, CommunityError, Partition};
use crate::graph::InGraph;

/// Modularity of the flattened partition after each aggregation level.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LouvainTrace {
    pub level_modularity: Vec<f64>,
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn shuffle(&mut self, slice: &mut [usize]) {
        for i in (1..slice.len()).rev() {
            let j = (self.next() % (i as u64 + 1)) as usize;
            slice.swap(i, j);
        }
    }
}

/// Working graph for one aggregation level. Self-loops carry twice the
/// intra weight of the collapsed community, so degrees stay the sums of
/// the original weighted degrees.
struct LevelGraph {
    /// adj[u] maps neighbor → weight; adj[u][u] is the self-loop.
    adj: Vec<HashMap<usize, u64>>,
    degree: Vec<u64>,
    two_m: u64,
}

impl LevelGraph {
    fn from_ingraph(g: &InGraph) -> Self {
        let n = g.node_count();
        let mut adj: Vec<HashMap<usize, u64>> = vec![HashMap::new(); n];
        for (u, row) in adj.iter_mut().enumerate() {
            for &(v, w) in g.neighbors(u) {
                row.insert(v, w);
            }
        }
        let degree: Vec<u64> = (0..n).map(|u| g.weighted_degree(u)).collect();
        LevelGraph {
            adj,
            degree,
            two_m: 2 * g.total_weight(),
        }
    }

    fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Collapse communities into single nodes. `assignment` must be dense.
    fn aggregate(&self, assignment: &[usize], community_count: usize) -> LevelGraph {
        let mut adj: Vec<HashMap<usize, u64>> = vec![HashMap::new(); community_count];
        let mut degree = vec![0u64; community_count];
        // Each u≠v edge is visited from both endpoints, so intra-community
        // weight lands on the new self-loop twice, which is the convention the
        // degree sums expect. A pre-existing self-loop already carries its
        // doubled weight and is visited once.
        for u in 0..self.node_count() {
            let cu = assignment[u];
            degree[cu] += self.degree[u];
            for (&v, &w) in &self.adj[u] {
                *adj[cu].entry(assignment[v]).or_insert(0) += w;
            }
        }
        LevelGraph {
            adj,
            degree,
            two_m: self.two_m,
        }
    }
}

/// One local-moving phase. Returns the dense community assignment and
/// whether any node moved.
fn one_level(
    graph: &LevelGraph,
    resolution: f64,
    rng: &mut SplitMix64,
) -> (Vec<usize>, usize, bool) {
    let n = graph.node_count();
    let mut community: Vec<usize> = (0..n).collect();
    let mut tot: Vec<u64> = graph.degree.clone();
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);

    let two_m = graph.two_m as f64;
    let mut moved_any = false;
    // Each accepted move strictly increases modularity, so the sweep loop
    // terminates; the cap is a guard against float-degenerate inputs.
    for _ in 0..128 {
        let mut moved_this_sweep = false;
        for &node in &order {
            let current = community[node];
            let k_node = graph.degree[node] as f64;
            // Edge weight from node to each neighboring community,
            // self-loops excluded (they follow the node wherever it goes).
            let mut to_comm: HashMap<usize, u64> = HashMap::new();
            for (&nb, &w) in &graph.adj[node] {
                if nb != node {
                    *to_comm.entry(community[nb]).or_insert(0) += w;
                }
            }
            let tot_current_without = (tot[current] - graph.degree[node]) as f64;
            let w_current = *to_comm.get(&current).unwrap_or(&0) as f64;
            // Scaled gain of staying: 2m·w(v→C\v) − γ·k_v·Σtot(C\v).
            let keep_score = two_m * w_current - resolution * k_node * tot_current_without;
            let mut best: Option<(usize, f64)> = None;
            for (&cand, &w) in &to_comm {
                if cand == current {
                    continue;
                }
                let score = two_m * w as f64 - resolution * k_node * tot[cand] as f64;
                let better = match best {
                    None => score > keep_score,
                    Some((best_id, best_score)) => {
                        score > best_score || (score == best_score && cand < best_id)
                    }
                };
                if better {
                    best = Some((cand, score));
                }
            }
            if let Some((target, _)) = best {
                tot[current] -= graph.degree[node];
                tot[target] += graph.degree[node];
                community[node] = target;
                moved_this_sweep = true;
                moved_any = true;
            }
        }
        if !moved_this_sweep {
            break;
        }
    }

    // Renumber densely by first appearance in node order.
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut dense = Vec::with_capacity(n);
    for &c in &community {
        let next = remap.len();
        dense.push(*remap.entry(c).or_insert(next));
    }
    let count = remap.len();
    (dense, count, moved_any)
}

/// Weighted Louvain community detection.
///
/// `resolution` is the γ of the gain formula (1.0 recovers classic
/// modularity); `seed` fixes the node visit order.
pub fn louvain_weighted(
    g: &InGraph,
    resolution: f64,
    seed: u64,
) -> Result<Partition, CommunityError> {
    louvain_weighted_with_trace(g, resolution, seed).map(|(p, _)| p)
}

/// [`louvain_weighted`] plus the modularity recorded after each level.
pub fn louvain_weighted_with_trace(
    g: &InGraph,
    resolution: f64,
    seed: u64,
) -> Result<(Partition, LouvainTrace), CommunityError> {
    if g.node_count() == 0 {
        return Err(CommunityError::EmptyGraph);
    }
    if g.edge_count() == 0 {
        return Err(CommunityError::NoEdges);
    }
    let mut rng = SplitMix64(seed);
    let mut level = LevelGraph::from_ingraph(g);
    // node_to_final[v] = community of original node v in the current level.
    let mut node_to_final: Vec<usize> = (0..g.node_count()).collect();
    let mut trace = LouvainTrace::default();

    loop {
        let (dense, count, moved) = one_level(&level, resolution, &mut rng);
        if !moved {
            break;
        }
        for slot in node_to_final.iter_mut() {
            *slot = dense[*slot];
        }
        trace
            .level_modularity
            .push(modularity(g, &Partition::from_assignment(&node_to_final))?);
        if count == level.node_count() {
            break;
        }
        level = level.aggregate(&dense, count);
    }

    Ok((Partition::from_assignment(&node_to_final), trace))
}
