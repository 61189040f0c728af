//! Seeded generators for synthetic corpora and benchmark graphs.
//!
//! Everything here runs on a self-contained SplitMix64 stream, so fixture
//! and benchmark inputs are reproducible across platforms and independent
//! of any RNG crate's evolution. Node names are zero-padded (`n0007`) so
//! lexicographic name order equals numeric order and generated node ids
//! line up with generator indices.

use std::collections::BTreeSet;

use crate::community::Partition;
use crate::corpus::RawRecipe;
use crate::extraction::Recipe;
use crate::graph::InGraph;

/// Small deterministic RNG (SplitMix64).
pub struct Rng64(u64);

impl Rng64 {
    pub fn new(seed: u64) -> Self {
        Rng64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)`; bound must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform float in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn shuffle(&mut self, slice: &mut [usize]) {
        for i in (1..slice.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            slice.swap(i, j);
        }
    }
}

fn node_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i:04}")).collect()
}

fn graph_from_pairs(n: usize, pairs: &[(usize, usize, u64)]) -> InGraph {
    let names = node_names(n);
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges: Vec<(&str, &str, u64)> = pairs
        .iter()
        .map(|&(u, v, w)| (name_refs[u], name_refs[v], w))
        .collect();
    InGraph::from_edges(&name_refs, &edges).expect("generator produced a valid graph")
}

/// Erdős–Rényi graph with unit weights.
pub fn er_graph(n: usize, p: f64, seed: u64) -> InGraph {
    er_weighted(n, p, 1, seed)
}

/// Erdős–Rényi graph with weights uniform in `1..=max_weight`.
pub fn er_weighted(n: usize, p: f64, max_weight: u64, seed: u64) -> InGraph {
    let mut rng = Rng64::new(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.chance(p) {
                pairs.push((u, v, 1 + rng.below(max_weight)));
            }
        }
    }
    graph_from_pairs(n, &pairs)
}

/// Connected graph: a random spanning tree plus `extra_edges` random
/// non-tree edges, weights uniform in `1..=max_weight`.
pub fn random_connected_graph(n: usize, extra_edges: usize, max_weight: u64, seed: u64) -> InGraph {
    assert!(n >= 1);
    let mut rng = Rng64::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut present: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut pairs = Vec::new();
    for i in 1..n {
        let u = order[i];
        let v = order[rng.below(i as u64) as usize];
        let key = (u.min(v), u.max(v));
        present.insert(key);
        pairs.push((key.0, key.1, 1 + rng.below(max_weight)));
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra_edges && attempts < extra_edges * 20 {
        attempts += 1;
        let u = rng.below(n as u64) as usize;
        let v = rng.below(n as u64) as usize;
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if present.insert(key) {
            pairs.push((key.0, key.1, 1 + rng.below(max_weight)));
            added += 1;
        }
    }
    graph_from_pairs(n, &pairs)
}

/// Two planted blocks of `block_size` nodes each: intra-block edges appear
/// with probability `p_in` and weight `w_in`, inter-block with `p_out` and
/// `w_out`. Returns the graph and the planted ground-truth partition.
pub fn planted_two_block(
    block_size: usize,
    p_in: f64,
    p_out: f64,
    w_in: u64,
    w_out: u64,
    seed: u64,
) -> (InGraph, Partition) {
    let n = 2 * block_size;
    let mut rng = Rng64::new(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let same = (u < block_size) == (v < block_size);
            let (p, w) = if same { (p_in, w_in) } else { (p_out, w_out) };
            if rng.chance(p) {
                pairs.push((u, v, w));
            }
        }
    }
    let truth: Vec<usize> = (0..n).map(|v| usize::from(v >= block_size)).collect();
    (graph_from_pairs(n, &pairs), Partition::from_assignment(&truth))
}

/// Preferential-attachment graph: each new node attaches `m` edges to
/// existing nodes sampled proportionally to degree, unit weights.
pub fn preferential_attachment(n: usize, m: usize, seed: u64) -> InGraph {
    assert!(n > m && m >= 1);
    let mut rng = Rng64::new(seed);
    // Repeated-endpoint list makes degree-proportional sampling trivial.
    let mut endpoints: Vec<usize> = Vec::new();
    let mut present: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut pairs = Vec::new();
    // Seed clique over the first m+1 nodes.
    for u in 0..=m {
        for v in (u + 1)..=m {
            pairs.push((u, v, 1));
            present.insert((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    for u in (m + 1)..n {
        let mut targets = BTreeSet::new();
        let mut guard = 0;
        while targets.len() < m && guard < 100 * m {
            guard += 1;
            let t = endpoints[rng.below(endpoints.len() as u64) as usize];
            if t != u {
                targets.insert(t);
            }
        }
        for &t in &targets {
            let key = (t.min(u), t.max(u));
            if present.insert(key) {
                pairs.push((key.0, key.1, 1));
                endpoints.push(t);
                endpoints.push(u);
            }
        }
    }
    graph_from_pairs(n, &pairs)
}

/// Random corpus for conservation and throughput tests: `n_recipes`
/// recipes drawing up to `max_ingredients` names from a `vocab`-sized pool.
/// Ingredient-set sizes are uniform in `0..=max_ingredients`.
pub fn random_corpus(n_recipes: usize, max_ingredients: usize, vocab: usize, seed: u64) -> Vec<Recipe> {
    let mut rng = Rng64::new(seed);
    (0..n_recipes)
        .map(|i| {
            let target = rng.below(max_ingredients as u64 + 1) as usize;
            let mut ingredients = BTreeSet::new();
            while ingredients.len() < target.min(vocab) {
                ingredients.insert(format!("ing{:04}", rng.below(vocab as u64)));
            }
            let lines: Vec<String> = ingredients.iter().cloned().collect();
            Recipe {
                raw: RawRecipe {
                    id: format!("r{i}"),
                    title: format!("synthetic {i}"),
                    cuisine: None,
                    category: None,
                    prep_time_minutes: None,
                    ingredient_lines: if lines.is_empty() {
                        vec!["placeholder".to_string()]
                    } else {
                        lines
                    },
                    instructions: None,
                },
                ingredients,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(er_weighted(30, 0.2, 5, 42), er_weighted(30, 0.2, 5, 42));
        assert_ne!(er_weighted(30, 0.2, 5, 42), er_weighted(30, 0.2, 5, 43));
    }

    #[test]
    fn connected_generator_is_connected() {
        for seed in 0..10 {
            let g = random_connected_graph(25, 10, 4, seed);
            assert_eq!(g.node_count(), 25);
            assert!(crate::graph::diameter(&g).is_ok());
            // Reachability from node 0 covers everything.
            let mut seen = [false; 25];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for &(v, _) in g.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            assert!(seen.iter().all(|&s| s), "seed {seed} not connected");
        }
    }

    #[test]
    fn planted_blocks_have_expected_shape() {
        let (g, truth) = planted_two_block(15, 0.8, 0.02, 5, 1, 7);
        assert_eq!(g.node_count(), 30);
        assert_eq!(truth.community_count(), 2);
        assert_eq!(truth.communities()[0].len(), 15);
    }

    #[test]
    fn preferential_attachment_grows_hubs() {
        let g = preferential_attachment(300, 3, 5);
        assert_eq!(g.node_count(), 300);
        let max_degree = (0..300).map(|v| g.degree(v)).max().unwrap();
        assert!(max_degree > 10, "max degree {max_degree}");
    }

    #[test]
    fn random_corpus_has_requested_size() {
        let corpus = random_corpus(50, 8, 40, 3);
        assert_eq!(corpus.len(), 50);
        assert!(corpus.iter().all(|r| r.ingredients.len() <= 8));
    }
}
