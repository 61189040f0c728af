//! Greedy community merging by maximal average inter-community edge weight.
//!
//! Every node starts as its own community. Each pass walks the surviving
//! communities in ascending id order; community `A` computes, for every
//! other unlocked community `B`, the average weight of the edges running
//! between them (sum over existing edges divided by their number, counted
//! afresh per candidate). `A` absorbs the `B` with the highest positive
//! average (ties to the smallest id), and both sides sit out the rest of
//! the pass. The run stops when a pass merges nothing, or when a pass's
//! best merge average drops strictly below the previous pass's best; such
//! a weaker pass is rolled back rather than kept, so the partition never
//! degrades to the lower-association level that triggered the stop.
//!
//! All average comparisons are exact (cross-multiplied integer ratios), so
//! the merge sequence is invariant under uniform weight scaling and fully
//! deterministic for a given graph.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{CommunityError, Partition};
use crate::graph::InGraph;

/// One merge: community `into` absorbed community `absorbed` on an average
/// inter-community weight of `weight_sum / edge_count`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeRecord {
    pub into: usize,
    pub absorbed: usize,
    pub weight_sum: u64,
    pub edge_count: u64,
    pub avg: f64,
}

/// Everything one pass did.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassRecord {
    pub pass: usize,
    pub merges: Vec<MergeRecord>,
    /// Highest merge average in the pass; absent when nothing merged.
    pub best_avg: Option<f64>,
    /// False only for a final pass undone by the falling-average stop rule.
    pub applied: bool,
}

/// Pass-by-pass log of a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PassTrace {
    pub passes: Vec<PassRecord>,
}

impl PassTrace {
    /// Serialize as JSONL, one pass per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for pass in &self.passes {
            out.push_str(&serde_json::to_string(pass).expect("trace serialization"));
            out.push('\n');
        }
        out
    }
}

/// Exact average as a ratio; weights ≥ 1 make any existing edge positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Ratio {
    sum: u64,
    count: u64,
}

impl Ratio {
    fn as_f64(self) -> f64 {
        self.sum as f64 / self.count as f64
    }

    fn cmp_exact(self, other: Ratio) -> std::cmp::Ordering {
        // a/b vs c/d  ==  a*d vs c*b with positive denominators.
        let left = self.sum as u128 * other.count as u128;
        let right = other.sum as u128 * self.count as u128;
        left.cmp(&right)
    }
}

#[derive(Clone)]
struct State {
    /// Node → root id of its community.
    member_of: Vec<usize>,
    /// Root id → members; empty for absorbed communities.
    members: Vec<Vec<usize>>,
    alive: Vec<bool>,
}

impl State {
    fn singletons(n: usize) -> State {
        State {
            member_of: (0..n).collect(),
            members: (0..n).map(|v| vec![v]).collect(),
            alive: vec![true; n],
        }
    }

    fn merge(&mut self, into: usize, absorbed: usize) {
        let moved = std::mem::take(&mut self.members[absorbed]);
        for &node in &moved {
            self.member_of[node] = into;
        }
        self.members[into].extend(moved);
        self.alive[absorbed] = false;
    }
}

/// Detect communities by repeated average-weight merging. Returns the
/// final partition together with the pass-by-pass trace.
pub fn wabcd(g: &InGraph) -> Result<(Partition, PassTrace), CommunityError> {
    let n = g.node_count();
    if n == 0 {
        return Err(CommunityError::EmptyGraph);
    }
    let mut state = State::singletons(n);
    let mut trace = PassTrace::default();
    let mut prev_best: Option<Ratio> = None;
    let mut pass_no = 0usize;

    loop {
        pass_no += 1;
        let snapshot = state.clone();
        let survivors: Vec<usize> = (0..n).filter(|&c| state.alive[c]).collect();
        let mut locked = vec![false; n];
        let mut merges: Vec<MergeRecord> = Vec::new();
        let mut pass_best: Option<Ratio> = None;

        for a in survivors {
            if !state.alive[a] || locked[a] {
                continue;
            }
            // Accumulate edge weight sums and counts toward every
            // neighboring community in one scan of A's member adjacency.
            let mut toward: HashMap<usize, Ratio> = HashMap::new();
            for &m in &state.members[a] {
                for &(nb, w) in g.neighbors(m) {
                    let c = state.member_of[nb];
                    if c == a || locked[c] {
                        continue;
                    }
                    let entry = toward.entry(c).or_insert(Ratio { sum: 0, count: 0 });
                    entry.sum += w;
                    entry.count += 1;
                }
            }
            let mut best: Option<(usize, Ratio)> = None;
            for (&candidate, &ratio) in &toward {
                let better = match best {
                    None => true,
                    Some((best_id, best_ratio)) => match ratio.cmp_exact(best_ratio) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Equal => candidate < best_id,
                        std::cmp::Ordering::Less => false,
                    },
                };
                if better {
                    best = Some((candidate, ratio));
                }
            }
            let Some((b, ratio)) = best else { continue };
            state.merge(a, b);
            locked[a] = true;
            locked[b] = true;
            merges.push(MergeRecord {
                into: a,
                absorbed: b,
                weight_sum: ratio.sum,
                edge_count: ratio.count,
                avg: ratio.as_f64(),
            });
            if pass_best
                .map(|pb| ratio.cmp_exact(pb) == std::cmp::Ordering::Greater)
                .unwrap_or(true)
            {
                pass_best = Some(ratio);
            }
        }

        if merges.is_empty() {
            trace.passes.push(PassRecord {
                pass: pass_no,
                merges,
                best_avg: None,
                applied: true,
            });
            break;
        }
        let best = pass_best.expect("non-empty merge list has a best average");
        let falling = prev_best
            .map(|pb| best.cmp_exact(pb) == std::cmp::Ordering::Less)
            .unwrap_or(false);
        if falling {
            state = snapshot;
            trace.passes.push(PassRecord {
                pass: pass_no,
                merges,
                best_avg: Some(best.as_f64()),
                applied: false,
            });
            break;
        }
        trace.passes.push(PassRecord {
            pass: pass_no,
            merges,
            best_avg: Some(best.as_f64()),
            applied: true,
        });
        prev_best = Some(best);
    }

    Ok((Partition::from_assignment(&state.member_of), trace))
}
