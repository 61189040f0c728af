//! Venn-style overlap counts across labeled ingredient sets.

use std::collections::BTreeSet;
use std::collections::BTreeMap;

use super::GraphError;

/// Maximum number of sets; beyond this the 2^k region space gets silly.
const MAX_SETS: usize = 6;

/// For every non-empty subset of labels, count the ingredients belonging to
/// exactly that subset of sets. Signatures are the member labels sorted and
/// joined by `&`; all `2^k - 1` regions appear, zero counts included, so
/// the counts always sum to the size of the union.
///
/// The counts are computed region by region with set algebra
/// (intersections minus the union of the complement) rather than by
/// tallying per-element membership vectors, which keeps this routine
/// independently checkable against an element-wise tally.
pub fn overlap_regions(
    sets: &[(String, BTreeSet<String>)],
) -> Result<BTreeMap<String, usize>, GraphError> {
    let k = sets.len();
    if !(2..=MAX_SETS).contains(&k) {
        return Err(GraphError::SetCount { count: k });
    }
    let mut regions = BTreeMap::new();
    for mask in 1u32..(1 << k) {
        let mut inside: Vec<usize> = Vec::new();
        let mut outside: Vec<usize> = Vec::new();
        for (i, _) in sets.iter().enumerate() {
            if mask & (1 << i) != 0 {
                inside.push(i);
            } else {
                outside.push(i);
            }
        }
        let mut region: BTreeSet<&String> = sets[inside[0]].1.iter().collect();
        for &i in &inside[1..] {
            region = region
                .intersection(&sets[i].1.iter().collect())
                .copied()
                .collect();
        }
        for &i in &outside {
            let other: BTreeSet<&String> = sets[i].1.iter().collect();
            region = region.difference(&other).copied().collect();
        }
        let mut labels: Vec<&str> = inside.iter().map(|&i| sets[i].0.as_str()).collect();
        labels.sort_unstable();
        regions.insert(labels.join("&"), region.len());
    }
    Ok(regions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_set_venn() {
        let sets = vec![
            ("A".to_string(), set(&["x", "y"])),
            ("B".to_string(), set(&["y", "z"])),
        ];
        let regions = overlap_regions(&sets).unwrap();
        assert_eq!(regions["A"], 1);
        assert_eq!(regions["B"], 1);
        assert_eq!(regions["A&B"], 1);
        assert_eq!(regions.len(), 3);
    }

    #[test]
    fn identical_sets_collapse_to_intersection() {
        let sets = vec![
            ("A".to_string(), set(&["x"])),
            ("B".to_string(), set(&["x"])),
        ];
        let regions = overlap_regions(&sets).unwrap();
        assert_eq!(regions["A&B"], 1);
        assert_eq!(regions["A"], 0);
        assert_eq!(regions["B"], 0);
    }

    #[test]
    fn set_count_limits() {
        let one = vec![("A".to_string(), set(&["x"]))];
        assert!(matches!(
            overlap_regions(&one),
            Err(GraphError::SetCount { count: 1 })
        ));
        let seven: Vec<(String, BTreeSet<String>)> = (0..7)
            .map(|i| (format!("S{i}"), set(&["x"])))
            .collect();
        assert!(matches!(
            overlap_regions(&seven),
            Err(GraphError::SetCount { count: 7 })
        ));
    }

    #[test]
    fn regions_sum_to_union_size() {
        let sets = vec![
            ("A".to_string(), set(&["a", "b", "c"])),
            ("B".to_string(), set(&["b", "c", "d"])),
            ("C".to_string(), set(&["c", "d", "e", "f"])),
        ];
        let regions = overlap_regions(&sets).unwrap();
        let total: usize = regions.values().sum();
        assert_eq!(total, 6);
        assert_eq!(regions.len(), 7);
        assert_eq!(regions["A&B&C"], 1); // just "c"
    }
}
