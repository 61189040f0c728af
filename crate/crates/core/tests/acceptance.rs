//! Acceptance suite: every criterion runs against an independent oracle
//! (brute-force enumeration, all-pairs BFS, naive double sums, hand-traced
//! fixtures) and prints one pass line. Run with `-- --nocapture` to see
//! them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;
use std::time::Instant;

use inn_core::community::{
    compare_partitions, louvain_weighted, modularity, wabcd, Partition, PassTrace,
};
use inn_core::corpus::{parse_recipe_file, summarize_corpus, CorpusFormat};
use inn_core::extraction::{
    extract_corpus, extract_ingredient, load_stopwords, score_extraction,
};
use inn_core::graph::{
    avg_edge_weight, build_network, clustering_stats, degree_distribution, diameter,
    local_clustering, log_log_tail_slope, overlap_regions, stats_report, InGraph,
};
use inn_core::synth::{
    self, er_graph, planted_two_block, preferential_attachment, random_connected_graph,
    random_corpus, Rng64,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn pass(name: &str) {
    println!("acceptance: {name} ... PASS");
}

// ---------------------------------------------------------------------
// Criterion: weight conservation on random synthetic corpora
// ---------------------------------------------------------------------

#[test]
fn weight_conservation_on_random_corpora() {
    let started = Instant::now();
    let mut rng = Rng64::new(0xC0FFEE);
    for case in 0..200u64 {
        let n_recipes = 1 + rng.below(1000) as usize;
        let corpus = random_corpus(n_recipes, 20, 150, case);
        let g = build_network(&corpus);
        let expected: u64 = corpus
            .iter()
            .map(|r| {
                let k = r.ingredients.len() as u64;
                k * k.saturating_sub(1) / 2
            })
            .sum();
        assert_eq!(
            g.total_weight(),
            expected,
            "conservation failed on corpus {case} with {n_recipes} recipes"
        );
        // Route independence: the running total kept during construction
        // equals a fresh sum over the adjacency, and the mean follows.
        let summed: u64 = g.edges().map(|(_, _, w)| w).sum();
        assert_eq!(g.total_weight(), summed, "corpus {case}");
        if g.edge_count() > 0 {
            let mean = avg_edge_weight(&g).unwrap();
            let direct = summed as f64 / g.edge_count() as f64;
            assert!((mean - direct).abs() <= 1e-9 * direct.max(1.0), "corpus {case}");
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "conservation battery took {elapsed:?}, budget is 10 s"
    );
    pass("weight-conservation (200 corpora, exact, < 10 s)");
}

// ---------------------------------------------------------------------
// Criterion: triangle/clustering oracle on Erdős–Rényi graphs
// ---------------------------------------------------------------------

struct BruteClustering {
    triangle_count: u64,
    per_node_cc: Vec<f64>,
    transitivity: f64,
}

/// O(n³) enumeration over all vertex triples plus per-node neighbor-pair
/// checks on an adjacency matrix.
#[allow(clippy::needless_range_loop)]
fn brute_clustering(g: &InGraph) -> BruteClustering {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, v, _) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut triangle_count = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            if !adj[i][j] {
                continue;
            }
            for k in (j + 1)..n {
                if adj[i][k] && adj[j][k] {
                    triangle_count += 1;
                }
            }
        }
    }
    let mut per_node_cc = Vec::with_capacity(n);
    let mut triples = 0u64;
    for v in 0..n {
        let neighbors: Vec<usize> = (0..n).filter(|&u| adj[v][u]).collect();
        let d = neighbors.len() as u64;
        if d < 2 {
            per_node_cc.push(0.0);
            continue;
        }
        triples += d * (d - 1) / 2;
        let mut closed = 0u64;
        for a in 0..neighbors.len() {
            for b in (a + 1)..neighbors.len() {
                if adj[neighbors[a]][neighbors[b]] {
                    closed += 1;
                }
            }
        }
        per_node_cc.push(2.0 * closed as f64 / (d * (d - 1)) as f64);
    }
    let transitivity = if triples == 0 {
        0.0
    } else {
        3.0 * triangle_count as f64 / triples as f64
    };
    BruteClustering {
        triangle_count,
        per_node_cc,
        transitivity,
    }
}

#[test]
fn triangle_and_clustering_match_brute_force() {
    let mut rng = Rng64::new(41);
    for case in 0..50u64 {
        let n = 10 + rng.below(191) as usize; // up to 200
        let p = if case % 2 == 0 { 0.05 } else { 0.2 };
        let g = er_graph(n, p, 1000 + case);
        let brute = brute_clustering(&g);
        let fast = clustering_stats(&g);
        assert_eq!(fast.triangle_count, brute.triangle_count, "case {case}");
        for v in 0..n {
            let got = local_clustering(&g, v);
            assert_eq!(got, brute.per_node_cc[v], "case {case}, node {v}");
        }
        assert!(
            (fast.fraction_closed_triangles - brute.transitivity).abs() <= 1e-12,
            "case {case}: transitivity {} vs {}",
            fast.fraction_closed_triangles,
            brute.transitivity
        );
    }
    pass("triangle/clustering oracle (50 ER graphs, exact + 1e-12)");
}

// ---------------------------------------------------------------------
// Criterion: diameter equals all-pairs BFS
// ---------------------------------------------------------------------

/// Independent all-pairs BFS diameter over the largest component (size,
/// then smallest contained node id).
fn brute_diameter(g: &InGraph) -> usize {
    let n = g.node_count();
    let mut comp = vec![usize::MAX; n];
    let mut comp_count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = comp_count;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in g.neighbors(u) {
                if comp[v] == usize::MAX {
                    comp[v] = comp_count;
                    queue.push_back(v);
                }
            }
        }
        comp_count += 1;
    }
    let mut sizes = vec![0usize; comp_count];
    for &c in &comp {
        sizes[c] += 1;
    }
    let mut best = 0;
    for c in 1..comp_count {
        if sizes[c] > sizes[best] {
            best = c;
        }
    }
    let members: Vec<usize> = (0..n).filter(|&v| comp[v] == best).collect();
    let mut diameter = 0usize;
    for &src in &members {
        let mut dist = vec![usize::MAX; n];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for &v in &members {
            diameter = diameter.max(dist[v]);
        }
    }
    diameter
}

#[test]
fn diameter_matches_all_pairs_bfs() {
    let p5 = InGraph::from_edges(
        &["a", "b", "c", "d", "e"],
        &[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "e", 1)],
    )
    .unwrap();
    assert_eq!(diameter(&p5).unwrap(), 4);
    let k4 = InGraph::from_edges(
        &["a", "b", "c", "d"],
        &[
            ("a", "b", 1),
            ("a", "c", 1),
            ("a", "d", 1),
            ("b", "c", 1),
            ("b", "d", 1),
            ("c", "d", 1),
        ],
    )
    .unwrap();
    assert_eq!(diameter(&k4).unwrap(), 1);

    let mut rng = Rng64::new(97);
    for case in 0..50u64 {
        let n = 5 + rng.below(96) as usize; // up to 100
        let extra = rng.below(2 * n as u64) as usize;
        let g = random_connected_graph(n, extra, 5, 300 + case);
        assert_eq!(
            diameter(&g).unwrap(),
            brute_diameter(&g),
            "case {case} (n = {n})"
        );
    }
    pass("diameter oracle (P5, K4, 50 random connected graphs)");
}

// ---------------------------------------------------------------------
// Criterion: modularity equals the naive double sum
// ---------------------------------------------------------------------

/// Textbook double sum over all ordered node pairs in the same community.
fn brute_modularity(g: &InGraph, p: &Partition) -> f64 {
    let two_m = (2 * g.total_weight()) as f64;
    if two_m == 0.0 {
        return 0.0;
    }
    let n = g.node_count();
    let mut q = 0.0;
    for u in 0..n {
        for v in 0..n {
            if p.community_of(u) != p.community_of(v) {
                continue;
            }
            let a_uv = g.weight(u, v).unwrap_or(0) as f64;
            let expected = g.weighted_degree(u) as f64 * g.weighted_degree(v) as f64 / two_m;
            q += a_uv - expected;
        }
    }
    q / two_m
}

fn random_partition(n: usize, rng: &mut Rng64) -> Partition {
    let k = 1 + rng.below(6) as usize;
    let raw: Vec<usize> = (0..n).map(|_| rng.below(k as u64) as usize).collect();
    Partition::from_assignment(&raw)
}

#[test]
fn modularity_matches_naive_double_sum() {
    let mut rng = Rng64::new(11);
    for case in 0..100u64 {
        let n = 4 + rng.below(57) as usize; // up to 60
        let g = synth::er_weighted(n, 0.15, 9, 500 + case);
        let p = random_partition(n, &mut rng);
        let fast = modularity(&g, &p).unwrap();
        let brute = brute_modularity(&g, &p);
        let tolerance = 1e-9 * brute.abs().max(1.0);
        assert!(
            (fast - brute).abs() <= tolerance,
            "case {case}: {fast} vs {brute}"
        );
        let one = modularity(&g, &Partition::one_community(n)).unwrap();
        assert_eq!(one, 0.0, "case {case}: one-community Q must be exactly 0");

        // All-singletons closed form: −Σ (k_v / 2m)².
        if g.total_weight() > 0 {
            let two_m = (2 * g.total_weight()) as f64;
            let expected: f64 = -(0..n)
                .map(|v| {
                    let k = g.weighted_degree(v) as f64;
                    (k / two_m) * (k / two_m)
                })
                .sum::<f64>();
            let singles = modularity(&g, &Partition::singletons(n)).unwrap();
            assert!(
                (singles - expected).abs() <= 1e-12,
                "case {case}: singleton Q {singles} vs closed form {expected}"
            );
        }
    }
    pass("modularity oracle (100 graphs, 1e-9 relative, Q(one) = 0, Q(singletons) closed form)");
}

// ---------------------------------------------------------------------
// Criterion: Louvain optimality at tiny scale + planted recovery
// ---------------------------------------------------------------------

/// Enumerate all set partitions of `n` elements via restricted growth
/// strings and return the best naive modularity.
#[allow(clippy::needless_range_loop)]
fn brute_best_modularity(g: &InGraph) -> f64 {
    let n = g.node_count();
    let mut best = f64::NEG_INFINITY;
    let mut labels = vec![0usize; n];
    loop {
        let p = Partition::from_assignment(&labels);
        best = best.max(brute_modularity(g, &p));
        // Next restricted growth string.
        let mut i = n as isize - 1;
        loop {
            if i <= 0 {
                return best;
            }
            let max_prefix = labels[..i as usize].iter().copied().max().unwrap();
            if labels[i as usize] <= max_prefix {
                labels[i as usize] += 1;
                for j in (i as usize + 1)..n {
                    labels[j] = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

#[test]
fn louvain_reaches_brute_force_optimum_on_tiny_graphs() {
    let mut instances = 0;
    let mut optimal = 0;
    for n in 4..=8usize {
        for seed in 0..8u64 {
            instances += 1;
            let g = random_connected_graph(n, n / 2, 9, 7_000 + n as u64 * 100 + seed);
            let best = brute_best_modularity(&g);
            let p = louvain_weighted(&g, 1.0, 9_000 + seed).unwrap();
            let achieved = brute_modularity(&g, &p);
            if achieved >= best - 1e-9 {
                optimal += 1;
            }
        }
    }
    assert!(instances >= 30, "only {instances} instances");
    let ratio = optimal as f64 / instances as f64;
    assert!(
        ratio >= 0.9,
        "Louvain optimal on {optimal}/{instances} tiny graphs ({ratio:.2})"
    );
    pass(&format!(
        "louvain tiny-scale optimality ({optimal}/{instances} ≥ 90%)"
    ));
}

#[test]
fn louvain_recovers_planted_blocks() {
    let mut hits = 0;
    for seed in 0..100u64 {
        let (g, truth) = planted_two_block(30, 0.6, 0.05, 5, 1, seed);
        let p = louvain_weighted(&g, 1.0, seed).unwrap();
        if p.same_grouping(&truth) {
            hits += 1;
        }
    }
    assert!(hits >= 95, "planted split recovered on only {hits}/100 seeds");
    pass(&format!("louvain planted-block recovery ({hits}/100 ≥ 95)"));
}

// ---------------------------------------------------------------------
// Criterion: WABCD trace fidelity on the hand-traced fixtures
// ---------------------------------------------------------------------

fn edgeless_graph() -> InGraph {
    InGraph::from_edges(&["a", "b", "c", "d"], &[]).unwrap()
}

fn heavy_pairs_graph() -> InGraph {
    InGraph::from_edges(&["a", "b", "c", "d"], &[("a", "b", 10), ("c", "d", 10)]).unwrap()
}

fn two_k5_graph() -> InGraph {
    let names: Vec<String> = (0..5)
        .map(|i| format!("a{i}"))
        .chain((0..5).map(|i| format!("b{i}")))
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut edges: Vec<(&str, &str, u64)> = Vec::new();
    for block in 0..2 {
        for i in 0..5 {
            for j in (i + 1)..5 {
                edges.push((refs[block * 5 + i], refs[block * 5 + j], 10));
            }
        }
    }
    edges.push((refs[0], refs[5], 1));
    InGraph::from_edges(&refs, &edges).unwrap()
}

fn assert_trace_matches_fixture(trace: &PassTrace, fixture_name: &str) {
    let expected = std::fs::read_to_string(fixture(fixture_name)).expect("fixture readable");
    let got = trace.to_jsonl();
    for (line_no, (got_line, want_line)) in got.lines().zip(expected.lines()).enumerate() {
        assert_eq!(
            got_line,
            want_line,
            "{fixture_name}: trace line {} differs",
            line_no + 1
        );
    }
    assert_eq!(
        got.lines().count(),
        expected.lines().count(),
        "{fixture_name}: pass count differs"
    );
}

/// Replay the trace merges over singleton state and assert the community
/// family stays a partition (total, disjoint) after every applied pass.
fn assert_partition_invariant(n: usize, trace: &PassTrace, final_partition: &Partition) {
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive = vec![true; n];
    for pass in &trace.passes {
        if !pass.applied {
            continue;
        }
        for merge in &pass.merges {
            assert!(alive[merge.into], "merge into dead community {}", merge.into);
            assert!(alive[merge.absorbed], "absorbing dead community {}", merge.absorbed);
            let moved = std::mem::take(&mut members[merge.absorbed]);
            members[merge.into].extend(moved);
            alive[merge.absorbed] = false;
        }
        let mut seen = vec![false; n];
        for (c, member) in members.iter().enumerate() {
            if alive[c] {
                for &v in member {
                    assert!(!seen[v], "node {v} in two communities");
                    seen[v] = true;
                }
            } else {
                assert!(member.is_empty());
            }
        }
        assert!(seen.iter().all(|&s| s), "partition lost a node");
    }
    let mut raw = vec![0usize; n];
    for (c, member) in members.iter().enumerate() {
        if alive[c] {
            for &v in member {
                raw[v] = c;
            }
        }
    }
    assert_eq!(&Partition::from_assignment(&raw), final_partition);
}

#[test]
fn wabcd_traces_match_hand_fixtures() {
    let cases: [(&str, InGraph, usize); 3] = [
        ("wabcd/edgeless.trace.jsonl", edgeless_graph(), 4),
        ("wabcd/heavy_pairs.trace.jsonl", heavy_pairs_graph(), 2),
        ("wabcd/two_k5.trace.jsonl", two_k5_graph(), 2),
    ];
    for (fixture_name, g, expected_communities) in cases {
        let (p, trace) = wabcd(&g).unwrap();
        assert_trace_matches_fixture(&trace, fixture_name);
        assert_partition_invariant(g.node_count(), &trace, &p);
        assert_eq!(p.community_count(), expected_communities, "{fixture_name}");
    }
    pass("wabcd trace fidelity (3 fixtures line-for-line + invariant)");
}

#[test]
fn wabcd_is_deterministic_under_reordering_and_scaling() {
    // Recipe reordering: same corpus, shuffled, must give the identical
    // graph and therefore the identical trace.
    let corpus = random_corpus(60, 8, 30, 77);
    let mut reversed = corpus.clone();
    reversed.reverse();
    let g1 = build_network(&corpus);
    let g2 = build_network(&reversed);
    assert_eq!(g1, g2);
    let (p1, t1) = wabcd(&g1).unwrap();
    let (p2, t2) = wabcd(&g2).unwrap();
    assert_eq!(p1, p2);
    assert_eq!(t1, t2);

    // Uniform weight scaling: merge sequence identical for w → 7w.
    let merge_seq = |t: &PassTrace| -> Vec<(usize, usize, bool)> {
        t.passes
            .iter()
            .flat_map(|p| p.merges.iter().map(move |m| (m.into, m.absorbed, p.applied)))
            .collect()
    };
    for g in [two_k5_graph(), heavy_pairs_graph(), g1] {
        let scaled = g.scale_weights(7).unwrap();
        let (p, t) = wabcd(&g).unwrap();
        let (ps, ts) = wabcd(&scaled).unwrap();
        assert_eq!(p, ps);
        assert_eq!(merge_seq(&t), merge_seq(&ts));
    }
    pass("wabcd determinism (recipe reorder + 7x weight scaling)");
}

// ---------------------------------------------------------------------
// Criterion: extraction accuracy harness on the bundled gold fixture
// ---------------------------------------------------------------------

#[derive(serde::Deserialize)]
struct GoldRecord {
    id: String,
    ingredients: Vec<String>,
    group: String,
}

#[derive(serde::Deserialize)]
struct ExpectedGroup {
    avg: f64,
    min: f64,
    max: f64,
}

#[derive(serde::Deserialize)]
struct ExpectedReport {
    per_recipe: Vec<(String, f64)>,
    per_group: BTreeMap<String, ExpectedGroup>,
}

#[test]
fn gold_fixture_accuracies_are_reproduced_exactly() {
    let corpus_bytes = std::fs::read(fixture("mini_corpus.jsonl")).unwrap();
    let recipes = parse_recipe_file(corpus_bytes.as_slice(), CorpusFormat::Jsonl).unwrap();
    let stopwords =
        load_stopwords(std::fs::read(fixture("stopwords.txt")).unwrap().as_slice()).unwrap();
    let (extracted, _) = extract_corpus(&recipes, &stopwords);

    let gold_text = std::fs::read_to_string(fixture("gold20.jsonl")).unwrap();
    let mut gold: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut grouping: BTreeMap<String, String> = BTreeMap::new();
    for line in gold_text.lines().filter(|l| !l.trim().is_empty()) {
        let record: GoldRecord = serde_json::from_str(line).unwrap();
        gold.insert(record.id.clone(), record.ingredients.into_iter().collect());
        grouping.insert(record.id, record.group);
    }
    assert_eq!(gold.len(), 20);

    let predicted: BTreeMap<String, BTreeSet<String>> = extracted
        .iter()
        .map(|r| (r.raw.id.clone(), r.ingredients.clone()))
        .collect();
    let report = score_extraction(&predicted, &gold, &grouping).unwrap();

    let expected: ExpectedReport =
        serde_json::from_str(&std::fs::read_to_string(fixture("gold20_expected.json")).unwrap())
            .unwrap();
    assert_eq!(report.per_recipe, expected.per_recipe);
    assert_eq!(report.per_group.len(), expected.per_group.len());
    for (label, want) in &expected.per_group {
        let got = &report.per_group[label];
        assert_eq!(got.avg, want.avg, "group {label} avg");
        assert_eq!(got.min, want.min, "group {label} min");
        assert_eq!(got.max, want.max, "group {label} max");
    }
    pass("extraction gold fixture (20 recipes, exact per-group stats)");
}

#[test]
fn extraction_properties_over_randomized_lines() {
    let stopwords =
        load_stopwords(std::fs::read(fixture("stopwords.txt")).unwrap().as_slice()).unwrap();
    let vocab = [
        "2", "1/2", "3.5", "2kg", "500g", "cup", "tbsp", "chopped", "fresh", "salt", "paneer",
        "wheat", "flour", "low-fat", "milk", "(optional)", "coriander,", "mint", "a", "of",
        "1.25", "masala", "tsp", "ghee", "to", "taste",
    ];
    let extra_words = ["paneer", "mint", "masala", "flour", "zzz"];
    let mut rng = Rng64::new(2024);
    for case in 0..1000 {
        let len = rng.below(9) as usize;
        let line: String = (0..len)
            .map(|_| vocab[rng.below(vocab.len() as u64) as usize])
            .collect::<Vec<_>>()
            .join(" ");

        // Idempotence: a produced name survives re-extraction unchanged.
        if let Some(name) = extract_ingredient(&line, &stopwords) {
            assert_eq!(
                extract_ingredient(&name, &stopwords),
                Some(name.clone()),
                "case {case}: line {line:?} -> {name:?} not idempotent"
            );
        }

        // Monotonicity: a larger stop-word set never lengthens the name.
        let extra = extra_words[rng.below(extra_words.len() as u64) as usize];
        let bigger = stopwords.with_word(extra).unwrap();
        let before = extract_ingredient(&line, &stopwords).map_or(0, |n| n.len());
        let after = extract_ingredient(&line, &bigger).map_or(0, |n| n.len());
        assert!(
            after <= before,
            "case {case}: adding {extra:?} lengthened {line:?}"
        );
    }
    pass("extraction properties (idempotence + monotone, 1000 lines)");
}

// ---------------------------------------------------------------------
// Criterion: overlap regions match the element-wise tally
// ---------------------------------------------------------------------

#[test]
fn overlap_regions_match_membership_tally() {
    let mut rng = Rng64::new(314);
    for case in 0..50 {
        let k = 2 + rng.below(4) as usize; // 2..=5 sets
        let universe: Vec<String> = (0..100).map(|i| format!("x{i:02}")).collect();
        let sets: Vec<(String, BTreeSet<String>)> = (0..k)
            .map(|i| {
                let members: BTreeSet<String> = universe
                    .iter()
                    .filter(|_| rng.chance(0.3))
                    .cloned()
                    .collect();
                (format!("S{i}"), members)
            })
            .collect();

        let regions = overlap_regions(&sets).unwrap();

        // Oracle: per-element membership vector tally.
        let mut tally: HashMap<String, usize> = HashMap::new();
        let union: BTreeSet<&String> = sets.iter().flat_map(|(_, s)| s.iter()).collect();
        for element in &union {
            let mut labels: Vec<&str> = sets
                .iter()
                .filter(|(_, s)| s.contains(*element))
                .map(|(l, _)| l.as_str())
                .collect();
            labels.sort_unstable();
            *tally.entry(labels.join("&")).or_insert(0) += 1;
        }
        for (signature, &count) in &regions {
            assert_eq!(
                count,
                tally.get(signature).copied().unwrap_or(0),
                "case {case}, region {signature}"
            );
        }
        assert_eq!(regions.len(), (1 << k) - 1, "case {case}: region count");
        let total: usize = regions.values().sum();
        assert_eq!(total, union.len(), "case {case}: counts must sum to union");
    }
    pass("overlap oracle (50 set families, exact + union sum)");
}

// ---------------------------------------------------------------------
// Criterion: performance sanity on a 2000-node, ~50k-edge network
// ---------------------------------------------------------------------

#[test]
fn pipeline_performance_sanity() {
    let started = Instant::now();
    let g = synth::er_weighted(2000, 0.025, 50, 1);
    assert!(
        (40_000..60_000).contains(&g.edge_count()),
        "edge count {} out of the ~50k band",
        g.edge_count()
    );
    let report = stats_report(&g).unwrap();
    assert!(report.avg_edge_weight.is_some());
    let _plain = degree_distribution(&g, false);
    let _cumulative = degree_distribution(&g, true);
    let (wp, _) = wabcd(&g).unwrap();
    let lp = louvain_weighted(&g, 1.0, 42).unwrap();
    assert!(wp.community_count() >= 1 && lp.community_count() >= 1);
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "pipeline took {elapsed:?}, budget is 60 s"
    );
    pass(&format!(
        "performance sanity (2000 nodes, {} edges, {:.2} s < 60 s)",
        g.edge_count(),
        elapsed.as_secs_f64()
    ));
}

// ---------------------------------------------------------------------
// Supporting spot checks used by the criteria above
// ---------------------------------------------------------------------

#[test]
fn mini_corpus_summary_matches_manifest() {
    let bytes = std::fs::read(fixture("mini_corpus.jsonl")).unwrap();
    let recipes = parse_recipe_file(bytes.as_slice(), CorpusFormat::Jsonl).unwrap();
    let summary = summarize_corpus(&recipes);
    let manifest: inn_core::corpus::CorpusSummary =
        serde_json::from_str(&std::fs::read_to_string(fixture("mini_corpus_manifest.json")).unwrap())
            .unwrap();
    assert_eq!(summary, manifest);
}

#[test]
fn preferential_attachment_tail_slope_is_negative() {
    let g = preferential_attachment(2000, 3, 13);
    let hist = degree_distribution(&g, false);
    let slope = log_log_tail_slope(&hist, 1).expect("enough tail points");
    assert!(slope < 0.0, "slope {slope} should be negative");
}

/// Corpus built so one ingredient block appears only in "Bread" recipes:
/// the community holding that block must come out labeled Bread.
#[test]
fn planted_category_block_gets_its_label() {
    let tokens = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"];
    let mut lines = String::new();
    for i in 0..6 {
        let bread: Vec<String> = (0..4)
            .map(|k| format!("\"loaf {}\"", tokens[(i + k) % 6]))
            .collect();
        lines.push_str(&format!(
            "{{\"id\":\"b{i}\",\"title\":\"B{i}\",\"category\":\"Bread\",\"ingredient_lines\":[{}]}}\n",
            bread.join(",")
        ));
        let dinner: Vec<String> = (0..4)
            .map(|k| format!("\"stew {}\"", tokens[(i + k) % 6]))
            .collect();
        lines.push_str(&format!(
            "{{\"id\":\"d{i}\",\"title\":\"D{i}\",\"category\":\"Dinner\",\"ingredient_lines\":[{}]}}\n",
            dinner.join(",")
        ));
    }
    let recipes = parse_recipe_file(lines.as_bytes(), CorpusFormat::Jsonl).unwrap();
    let stopwords = inn_core::extraction::StopWordSet::default();
    let (extracted, _) = extract_corpus(&recipes, &stopwords);
    let g = build_network(&extracted);

    let category_sets: Vec<(String, BTreeSet<String>)> = ["Bread", "Dinner"]
        .iter()
        .map(|l| (l.to_string(), inn_core::graph::category_ingredients(&extracted, l)))
        .collect();
    let p = louvain_weighted(&g, 1.0, 7).unwrap();
    let labeling = inn_core::community::label_communities(&p, &category_sets, &g).unwrap();
    let bread_node = g.node_id("loaf alpha").unwrap();
    let bread_community = p.community_of(bread_node);
    let row = &labeling.per_community[bread_community];
    assert_eq!(row.best_category, "Bread");
    assert_eq!(row.score, 1.0);
}

#[test]
fn compare_report_is_consistent_on_mini_corpus() {
    let bytes = std::fs::read(fixture("mini_corpus.jsonl")).unwrap();
    let recipes = parse_recipe_file(bytes.as_slice(), CorpusFormat::Jsonl).unwrap();
    let stopwords =
        load_stopwords(std::fs::read(fixture("stopwords.txt")).unwrap().as_slice()).unwrap();
    let (extracted, _) = extract_corpus(&recipes, &stopwords);
    let g = build_network(&extracted);
    assert!(avg_edge_weight(&g).is_ok());

    let labels = inn_core::graph::category_labels(&extracted);
    let category_sets: Vec<(String, BTreeSet<String>)> = labels
        .iter()
        .map(|l| (l.clone(), inn_core::graph::category_ingredients(&extracted, l)))
        .collect();
    let (wabcd_p, _) = wabcd(&g).unwrap();
    let louvain_p = louvain_weighted(&g, 1.0, 42).unwrap();
    let report = compare_partitions(
        &[
            ("wabcd".to_string(), wabcd_p),
            ("louvain".to_string(), louvain_p),
        ],
        &category_sets,
        &g,
    )
    .unwrap();
    assert_eq!(report.matrix_columns, vec!["wabcd", "louvain"]);
    let max_rows = report
        .algorithms
        .iter()
        .map(|a| a.community_count)
        .max()
        .unwrap();
    assert_eq!(report.matrix_rows.len(), max_rows);
    for algorithm in &report.algorithms {
        assert!(algorithm.modularity <= 1.0 && algorithm.modularity >= -0.5);
        for label in &algorithm.labeling.per_community {
            assert!((0.0..=1.0).contains(&label.score));
        }
    }
}
