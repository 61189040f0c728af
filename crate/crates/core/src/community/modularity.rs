//! Weighted Newman modularity.

use super::{check_partition, CommunityError, Partition};
use crate::graph::InGraph;

/// Modularity of a partition:
///
/// `Q = (1/2m) Σ_{u,v same community} [A_uv − k_u k_v / 2m]`
///
/// with weighted degrees `k` and total edge weight `m`. Computed per
/// community from exact integer intra-weight and degree sums, which keeps
/// the one-community case at exactly 0. An edgeless graph has no
/// preference among partitions; its modularity is defined as 0.
pub fn modularity(g: &InGraph, p: &Partition) -> Result<f64, CommunityError> {
    check_partition(g, p)?;
    let two_m = 2 * g.total_weight();
    if two_m == 0 {
        return Ok(0.0);
    }
    let k = p.community_count();
    let mut intra = vec![0u64; k];
    let mut tot = vec![0u64; k];
    for v in 0..g.node_count() {
        tot[p.community_of(v)] += g.weighted_degree(v);
    }
    for (u, v, w) in g.edges() {
        if p.community_of(u) == p.community_of(v) {
            intra[p.community_of(u)] += w;
        }
    }
    let two_m = two_m as f64;
    let mut q = 0.0;
    for c in 0..k {
        let internal = 2.0 * intra[c] as f64 / two_m;
        let degree_frac = tot[c] as f64 / two_m;
        q += internal - degree_frac * degree_frac;
    }
    Ok(q)
}
