//! The weighted undirected ingredient co-occurrence network.
//!
//! Nodes are distinct ingredient names; an edge's weight counts the recipes
//! in which both endpoints appear together. Node ids are dense integers
//! assigned by lexicographic name order, which makes every downstream
//! computation independent of recipe order.

mod export;
mod overlap;
mod stats;

pub use export::{read_edge_tsv, to_dot, to_edge_tsv, to_graphml};
pub use overlap::overlap_regions;
pub use stats::{
    avg_edge_weight, clustering_stats, clustering_stats_seq, degree_distribution, diameter,
    diameter_seq, local_clustering, log_log_tail_slope, stats_report, strongest_edge,
    ClusteringStats, DegreeHistogram, StatsReport,
};
#[cfg(feature = "parallel")]
pub use stats::{clustering_stats_par, diameter_par};

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::extraction::Recipe;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("graph has no edges")]
    NoEdges,
    #[error("self-loop on '{name}' is not allowed")]
    SelfLoop { name: String },
    #[error("duplicate edge between '{u}' and '{v}'")]
    DuplicateEdge { u: String, v: String },
    #[error("edge weight between '{u}' and '{v}' must be >= 1")]
    ZeroWeight { u: String, v: String },
    #[error("unknown node name '{name}'")]
    UnknownName { name: String },
    #[error("overlap supports 2 to 6 sets, got {count}")]
    SetCount { count: usize },
    #[error("malformed edge list at line {line}: {message}")]
    ParseEdge { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Weighted undirected ingredient graph with a name ↔ id interner.
///
/// Invariants: no self-loops, weights ≥ 1, symmetric adjacency, node ids
/// `0..node_count` in lexicographic name order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// Per-node neighbor list `(neighbor id, weight)`, sorted by neighbor id.
    adj: Vec<Vec<(usize, u64)>>,
    edge_count: usize,
    total_weight: u64,
}

impl InGraph {
    /// Build a graph from an explicit node-name list plus weighted edges
    /// naming those nodes. Names are deduplicated and sorted; self-loops,
    /// zero weights, repeated pairs, and unknown endpoint names are errors.
    pub fn from_edges(names: &[&str], edges: &[(&str, &str, u64)]) -> Result<Self, GraphError> {
        let name_set: BTreeSet<&str> = names.iter().copied().collect();
        let sorted: Vec<String> = name_set.iter().map(|s| s.to_string()).collect();
        let index: HashMap<String, usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| GraphError::UnknownName {
                name: name.to_string(),
            })
        };
        let mut weights: HashMap<(usize, usize), u64> = HashMap::with_capacity(edges.len());
        for (u, v, w) in edges {
            let ui = lookup(u)?;
            let vi = lookup(v)?;
            if ui == vi {
                return Err(GraphError::SelfLoop { name: u.to_string() });
            }
            if *w == 0 {
                return Err(GraphError::ZeroWeight {
                    u: u.to_string(),
                    v: v.to_string(),
                });
            }
            let key = (ui.min(vi), ui.max(vi));
            if weights.insert(key, *w).is_some() {
                return Err(GraphError::DuplicateEdge {
                    u: u.to_string(),
                    v: v.to_string(),
                });
            }
        }
        Ok(Self::from_parts(sorted, index, &weights))
    }

    /// Internal assembly from sorted names and unordered-pair weights.
    fn from_parts(
        names: Vec<String>,
        index: HashMap<String, usize>,
        weights: &HashMap<(usize, usize), u64>,
    ) -> Self {
        let n = names.len();
        let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        let mut total_weight = 0u64;
        for (&(u, v), &w) in weights {
            adj[u].push((v, w));
            adj[v].push((u, w));
            total_weight += w;
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        InGraph {
            names,
            index,
            adj,
            edge_count: weights.len(),
            total_weight,
        }
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sum of weights over unordered edges.
    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Neighbors of `u` with weights, ascending by neighbor id.
    pub fn neighbors(&self, u: usize) -> &[(usize, u64)] {
        &self.adj[u]
    }

    /// Unweighted degree.
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Sum of incident edge weights.
    pub fn weighted_degree(&self, u: usize) -> u64 {
        self.adj[u].iter().map(|&(_, w)| w).sum()
    }

    /// Weight of the edge `{u, v}`, if present. Symmetric by construction.
    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        self.adj[u]
            .binary_search_by_key(&v, |&(n, _)| n)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    /// All unordered edges `(u, v, w)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| {
                list.iter()
                    .filter(move |&&(v, _)| u < v)
                    .map(move |&(v, w)| (u, v, w))
            })
    }

    /// Multiply every edge weight by `factor` (> 0). Structure, node ids,
    /// and edge ordering are unchanged.
    pub fn scale_weights(&self, factor: u64) -> Result<Self, GraphError> {
        if factor == 0 {
            return Err(GraphError::ZeroWeight {
                u: "*".into(),
                v: "*".into(),
            });
        }
        let mut scaled = self.clone();
        for list in &mut scaled.adj {
            for entry in list {
                entry.1 *= factor;
            }
        }
        scaled.total_weight *= factor;
        Ok(scaled)
    }

    /// Restrict the graph to the named nodes. Names absent from the graph
    /// are skipped; the second return value counts them.
    pub fn induced_subgraph(&self, keep: &BTreeSet<String>) -> (InGraph, usize) {
        let mut kept: Vec<usize> = Vec::new();
        let mut missing = 0usize;
        for name in keep {
            match self.node_id(name) {
                Some(id) => kept.push(id),
                None => missing += 1,
            }
        }
        kept.sort_unstable();
        let names: Vec<String> = kept.iter().map(|&id| self.names[id].clone()).collect();
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let old_to_new: HashMap<usize, usize> =
            kept.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut weights: HashMap<(usize, usize), u64> = HashMap::new();
        for (u, v, w) in self.edges() {
            if let (Some(&nu), Some(&nv)) = (old_to_new.get(&u), old_to_new.get(&v)) {
                weights.insert((nu.min(nv), nu.max(nv)), w);
            }
        }
        (Self::from_parts(names, index, &weights), missing)
    }
}

/// Build the co-occurrence network: one node per distinct ingredient, and
/// for each recipe every unordered ingredient pair gains +1 edge weight.
/// Recipes with fewer than two ingredients contribute nodes only.
pub fn build_network(recipes: &[Recipe]) -> InGraph {
    #[cfg(feature = "parallel")]
    {
        build_network_par(recipes)
    }
    #[cfg(not(feature = "parallel"))]
    {
        build_network_seq(recipes)
    }
}

fn intern_names(recipes: &[Recipe]) -> (Vec<String>, HashMap<String, usize>) {
    let mut set: BTreeSet<&str> = BTreeSet::new();
    for recipe in recipes {
        for name in &recipe.ingredients {
            set.insert(name);
        }
    }
    let names: Vec<String> = set.into_iter().map(str::to_string).collect();
    let index = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    (names, index)
}

fn recipe_pairs(recipe: &Recipe, index: &HashMap<String, usize>) -> Vec<(usize, usize)> {
    let ids: Vec<usize> = recipe.ingredients.iter().map(|n| index[n]).collect();
    let mut pairs = Vec::with_capacity(ids.len() * ids.len().saturating_sub(1) / 2);
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            pairs.push((u.min(v), u.max(v)));
        }
    }
    pairs
}

/// Single-threaded [`build_network`].
pub fn build_network_seq(recipes: &[Recipe]) -> InGraph {
    let (names, index) = intern_names(recipes);
    let mut weights: HashMap<(usize, usize), u64> = HashMap::new();
    for recipe in recipes {
        for pair in recipe_pairs(recipe, &index) {
            *weights.entry(pair).or_insert(0) += 1;
        }
    }
    InGraph::from_parts(names, index, &weights)
}

/// Rayon-parallel [`build_network`]. Per-recipe pair counts are folded into
/// thread-local maps and merged by commutative addition, so the result is
/// identical to the sequential build.
#[cfg(feature = "parallel")]
pub fn build_network_par(recipes: &[Recipe]) -> InGraph {
    use rayon::prelude::*;
    let (names, index) = intern_names(recipes);
    let weights = recipes
        .par_iter()
        .fold(
            HashMap::<(usize, usize), u64>::new,
            |mut acc, recipe| {
                for pair in recipe_pairs(recipe, &index) {
                    *acc.entry(pair).or_insert(0) += 1;
                }
                acc
            },
        )
        .reduce(HashMap::new, |a, b| {
            if a.len() < b.len() {
                reduce_into(b, a)
            } else {
                reduce_into(a, b)
            }
        });

    fn reduce_into(
        mut big: HashMap<(usize, usize), u64>,
        small: HashMap<(usize, usize), u64>,
    ) -> HashMap<(usize, usize), u64> {
        for (pair, count) in small {
            *big.entry(pair).or_insert(0) += count;
        }
        big
    }

    InGraph::from_parts(names, index, &weights)
}

/// Union of ingredient sets over recipes carrying exactly this category
/// label. An unknown label yields the empty set.
pub fn category_ingredients(recipes: &[Recipe], category: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for recipe in recipes {
        if recipe.raw.category.as_deref() == Some(category) {
            out.extend(recipe.ingredients.iter().cloned());
        }
    }
    out
}

/// Sorted list of distinct category labels present in the corpus.
pub fn category_labels(recipes: &[Recipe]) -> Vec<String> {
    let set: BTreeSet<&str> = recipes
        .iter()
        .filter_map(|r| r.raw.category.as_deref())
        .collect();
    set.into_iter().map(str::to_string).collect()
}
