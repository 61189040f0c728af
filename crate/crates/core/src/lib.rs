//! Build weighted ingredient co-occurrence networks from recipe corpora and
//! analyze them.
//!
//! The pipeline has four stages, one module each:
//!
//! * [`corpus`]: parse and validate recipe files (JSONL or CSV) into
//!   [`corpus::RawRecipe`] records and summarize them.
//! * [`extraction`]: normalize raw ingredient lines into clean ingredient
//!   names by dropping numeric tokens and domain stop words, and score the
//!   extraction against gold annotations.
//! * [`graph`]: build the co-occurrence network ([`graph::InGraph`]): one
//!   node per ingredient, one edge per co-occurring pair, edge weight equal
//!   to the number of recipes the pair shares. Statistics, degree
//!   distributions, category overlaps, subgraphs, and exports live here.
//! * [`community`]: detect ingredient communities with a greedy
//!   average-weight merger ([`community::wabcd`]) or weighted Louvain
//!   ([`community::louvain_weighted`]), score partitions by modularity, and
//!   label/compare them against recipe categories.
//!
//! [`synth`] provides seeded generators for synthetic corpora and benchmark
//! graphs.
//!
//! With the default `parallel` feature the hot loops (pair counting,
//! clustering coefficients, diameter, per-recipe extraction) run on rayon;
//! disabling it selects single-threaded fallbacks that produce identical
//! results.

pub mod community;
pub mod corpus;
pub mod extraction;
pub mod graph;
pub mod synth;

pub use community::{louvain_weighted, modularity, wabcd, Partition};
pub use corpus::{parse_recipe_file, summarize_corpus, CorpusFormat, RawRecipe};
pub use extraction::{extract_corpus, load_stopwords, Recipe, StopWordSet};
pub use graph::{build_network, InGraph};
