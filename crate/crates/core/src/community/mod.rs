//! Community detection over the ingredient network and comparison of the
//! resulting partitions against recipe categories.

mod louvain;
mod modularity;
mod wabcd;

pub use louvain::{louvain_weighted, louvain_weighted_with_trace, LouvainTrace};
pub use modularity::modularity;
pub use wabcd::{wabcd, MergeRecord, PassRecord, PassTrace};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::graph::InGraph;

#[derive(Debug, Error)]
pub enum CommunityError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("graph has no edges")]
    NoEdges,
    #[error("partition covers {found} nodes but the graph has {expected}")]
    PartitionMismatch { expected: usize, found: usize },
    #[error("no category sets supplied")]
    NoCategories,
}

/// Total assignment of every node to exactly one community, with community
/// ids dense in `0..community_count` and every community non-empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    assignment: Vec<usize>,
    community_count: usize,
}

impl Partition {
    /// Normalize a raw per-node label vector: labels are renumbered densely
    /// in order of first appearance by ascending node id, which guarantees
    /// the partition invariants for any input labeling.
    pub fn from_assignment(raw: &[usize]) -> Partition {
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut assignment = Vec::with_capacity(raw.len());
        for &label in raw {
            let next = remap.len();
            let id = *remap.entry(label).or_insert(next);
            assignment.push(id);
        }
        Partition {
            assignment,
            community_count: remap.len(),
        }
    }

    /// Every node its own community.
    pub fn singletons(node_count: usize) -> Partition {
        Partition {
            assignment: (0..node_count).collect(),
            community_count: node_count,
        }
    }

    /// All nodes in one community (empty for the empty graph).
    pub fn one_community(node_count: usize) -> Partition {
        Partition {
            assignment: vec![0; node_count],
            community_count: if node_count == 0 { 0 } else { 1 },
        }
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Members per community, node ids ascending.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.community_count];
        for (node, &c) in self.assignment.iter().enumerate() {
            out[c].push(node);
        }
        out
    }

    /// Community sizes, descending, ties by community id.
    pub fn sizes_desc(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.communities().iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Two partitions are equivalent when they group the same nodes
    /// together, regardless of community numbering. Normalized numbering
    /// makes that plain equality.
    pub fn same_grouping(&self, other: &Partition) -> bool {
        Partition::from_assignment(&self.assignment) == Partition::from_assignment(&other.assignment)
    }

    /// JSON map community id → sorted member names.
    pub fn to_json(&self, g: &InGraph) -> String {
        let map: BTreeMap<usize, Vec<&str>> = self
            .communities()
            .iter()
            .enumerate()
            .map(|(c, members)| {
                let mut names: Vec<&str> = members.iter().map(|&v| g.name(v)).collect();
                names.sort_unstable();
                (c, names)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&map).expect("partition serialization");
        s.push('\n');
        s
    }

    /// TSV `name<TAB>community_id`, sorted by name.
    pub fn to_tsv(&self, g: &InGraph) -> String {
        let mut out = String::new();
        for (id, name) in g.names().iter().enumerate() {
            out.push_str(name);
            out.push('\t');
            out.push_str(&self.assignment[id].to_string());
            out.push('\n');
        }
        out
    }
}

fn check_partition(g: &InGraph, p: &Partition) -> Result<(), CommunityError> {
    if p.node_count() != g.node_count() {
        return Err(CommunityError::PartitionMismatch {
            expected: g.node_count(),
            found: p.node_count(),
        });
    }
    Ok(())
}

/// One community's best-matching category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityLabel {
    pub community: usize,
    pub size: usize,
    pub best_category: String,
    /// Overlap over community size, in [0, 1].
    pub score: f64,
}

/// Per-community category association table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityLabeling {
    pub per_community: Vec<CommunityLabel>,
}

/// Label every community with its best-associated category.
///
/// The association score of community `C` with category set `S` is
/// `|C ∩ S| / |C|`; the best label is the argmax with ties going to the
/// lexicographically smallest label.
pub fn label_communities(
    p: &Partition,
    category_sets: &[(String, BTreeSet<String>)],
    g: &InGraph,
) -> Result<CommunityLabeling, CommunityError> {
    if category_sets.is_empty() {
        return Err(CommunityError::NoCategories);
    }
    check_partition(g, p)?;
    let mut per_community = Vec::with_capacity(p.community_count());
    for (community, members) in p.communities().iter().enumerate() {
        let names: BTreeSet<&str> = members.iter().map(|&v| g.name(v)).collect();
        let mut best: Option<(&str, f64)> = None;
        let mut labels: Vec<&(String, BTreeSet<String>)> = category_sets.iter().collect();
        labels.sort_by(|a, b| a.0.cmp(&b.0));
        for (label, set) in labels {
            let hits = names.iter().filter(|n| set.contains(**n)).count();
            let score = hits as f64 / members.len() as f64;
            if best.map(|(_, s)| score > s).unwrap_or(true) {
                best = Some((label, score));
            }
        }
        let (best_category, score) = best.expect("category_sets checked non-empty");
        per_community.push(CommunityLabel {
            community,
            size: members.len(),
            best_category: best_category.to_string(),
            score,
        });
    }
    Ok(CommunityLabeling { per_community })
}

/// One algorithm's results inside a comparison report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmResult {
    pub name: String,
    pub community_count: usize,
    /// Community sizes, descending.
    pub sizes: Vec<usize>,
    pub modularity: f64,
    pub labeling: CommunityLabeling,
}

/// Side-by-side comparison of community detection runs, including the
/// row-per-community matrix of best category labels. For the matrix each
/// algorithm's communities are ranked by size (descending, ties by
/// community id), so row `C1` holds every algorithm's largest community.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub algorithms: Vec<AlgorithmResult>,
    pub matrix_columns: Vec<String>,
    pub matrix_rows: Vec<Vec<String>>,
}

/// Build the comparison report for several partitions over the same graph.
pub fn compare_partitions(
    results: &[(String, Partition)],
    category_sets: &[(String, BTreeSet<String>)],
    g: &InGraph,
) -> Result<CompareReport, CommunityError> {
    let mut algorithms = Vec::with_capacity(results.len());
    for (name, partition) in results {
        check_partition(g, partition)?;
        algorithms.push(AlgorithmResult {
            name: name.clone(),
            community_count: partition.community_count(),
            sizes: partition.sizes_desc(),
            modularity: modularity(g, partition)?,
            labeling: label_communities(partition, category_sets, g)?,
        });
    }
    let max_rows = algorithms
        .iter()
        .map(|a| a.community_count)
        .max()
        .unwrap_or(0);
    let mut matrix_rows = Vec::with_capacity(max_rows);
    // Rank each algorithm's communities by size for the row layout.
    let ranked: Vec<Vec<&CommunityLabel>> = algorithms
        .iter()
        .map(|a| {
            let mut rows: Vec<&CommunityLabel> = a.labeling.per_community.iter().collect();
            rows.sort_by(|x, y| y.size.cmp(&x.size).then(x.community.cmp(&y.community)));
            rows
        })
        .collect();
    for row in 0..max_rows {
        let mut cells = Vec::with_capacity(algorithms.len() + 1);
        cells.push(format!("C{}", row + 1));
        for ranks in &ranked {
            cells.push(match ranks.get(row) {
                Some(label) => label.best_category.clone(),
                None => "-".to_string(),
            });
        }
        matrix_rows.push(cells);
    }
    Ok(CompareReport {
        matrix_columns: algorithms.iter().map(|a| a.name.clone()).collect(),
        algorithms,
        matrix_rows,
    })
}

/// Plain-text rendering of the comparison matrix.
pub fn render_matrix(report: &CompareReport) -> String {
    let mut headers = vec![String::new()];
    headers.extend(report.matrix_columns.iter().cloned());
    let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
    for row in &report.matrix_rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let render_row = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = render_row(&headers);
    for row in &report.matrix_rows {
        out.push_str(&render_row(row));
    }
    out
}
