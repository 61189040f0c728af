//! Ingredient-name extraction: number removal and stop-word filtering.
//!
//! Raw lines like `"2 tbsp chopped coriander"` become clean names
//! (`"coriander"`) by tokenizing, splitting glued quantity-unit tokens
//! (`"2kg"`), dropping purely numeric tokens, and dropping stop words.
//! Stop-word matching is whole-token only, so a stop word `ice` never eats
//! into `rice`.
//!
//! Accuracy against gold annotations is recall-style: per recipe,
//! `|predicted ∩ gold| / |gold|` under exact normalized-string matching.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::{BufRead, BufReader, Read};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::RawRecipe;

/// Lowercase tokens removed from ingredient lines (units, quantities,
/// preparation words). Immutable after load and cheap to share.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopWordSet {
    words: HashSet<String>,
}

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("i/o error reading stop words: {0}")]
    Io(#[from] std::io::Error),
    #[error("stop word at line {line} contains whitespace: '{token}'")]
    WhitespaceToken { line: usize, token: String },
    #[error("gold id '{id}' missing from predictions")]
    MissingPrediction { id: String },
    #[error("gold ingredient set for '{id}' is empty")]
    EmptyGold { id: String },
}

impl StopWordSet {
    /// Build a set from arbitrary tokens, lowercasing each. Tokens with
    /// whitespace are rejected; duplicates collapse silently.
    pub fn from_words<I, S>(words: I) -> Result<Self, ExtractError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = HashSet::new();
        for (idx, word) in words.into_iter().enumerate() {
            let word = word.as_ref();
            if word.is_empty() {
                continue;
            }
            if word.chars().any(char::is_whitespace) {
                return Err(ExtractError::WhitespaceToken {
                    line: idx + 1,
                    token: word.to_string(),
                });
            }
            set.insert(word.to_lowercase());
        }
        Ok(StopWordSet { words: set })
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Copy of this set with one extra token. Empty input is a no-op.
    pub fn with_word(&self, word: &str) -> Result<Self, ExtractError> {
        let mut next = self.clone();
        if word.is_empty() {
            return Ok(next);
        }
        if word.chars().any(char::is_whitespace) {
            return Err(ExtractError::WhitespaceToken {
                line: 0,
                token: word.to_string(),
            });
        }
        next.words.insert(word.to_lowercase());
        Ok(next)
    }

    /// Sorted view, mainly for diagnostics.
    pub fn sorted(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.words.iter().map(String::as_str).collect();
        v.sort_unstable();
        v
    }
}

/// Load a stop-word file: UTF-8, one token per line, blank lines and `#`
/// comments ignored, tokens lowercased, duplicates collapsed.
pub fn load_stopwords<R: Read>(source: R) -> Result<StopWordSet, ExtractError> {
    let reader = BufReader::new(source);
    let mut words = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let token = line.trim();
        if token.is_empty() || token.starts_with('#') {
            continue;
        }
        if token.chars().any(char::is_whitespace) {
            return Err(ExtractError::WhitespaceToken {
                line: idx + 1,
                token: token.to_string(),
            });
        }
        words.insert(token.to_lowercase());
    }
    Ok(StopWordSet { words })
}

/// Characters besides whitespace that separate tokens.
const SEPARATORS: [char; 5] = [',', '(', ')', '-', '/'];

/// Lowercase and split a raw line into tokens. Splits on whitespace,
/// commas, parentheses, hyphens, and slashes; empty tokens are dropped.
pub fn tokenize(line: &str) -> Vec<String> {
    line.to_lowercase()
        .split(|c: char| c.is_whitespace() || SEPARATORS.contains(&c))
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Split a token at digit/letter boundaries so glued quantities separate
/// from units: `2kg` → `2`, `kg`; `b12` → `b`, `12`. Decimal points stay
/// attached to their digits.
fn split_digit_boundaries(token: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for c in token.chars() {
        if let Some(p) = prev {
            let boundary = (p.is_ascii_digit() && c.is_alphabetic())
                || (p.is_alphabetic() && c.is_ascii_digit());
            if boundary {
                parts.push(std::mem::take(&mut current));
            }
        }
        current.push(c);
        prev = Some(c);
    }
    if !current.is_empty() {
        parts.push(current);
    }
    parts
}

/// A token is numeric when every character is a digit or `.`, covering
/// integers and decimal forms. Fractions like `1/2` are already split by
/// the tokenizer.
fn is_numeric(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| c.is_ascii_digit() || c == '.')
}

/// Extract the ingredient name from one raw line, or `None` when every
/// token is numeric or a stop word.
pub fn extract_ingredient(line: &str, stopwords: &StopWordSet) -> Option<String> {
    let survivors: Vec<String> = tokenize(line)
        .iter()
        .flat_map(|t| split_digit_boundaries(t))
        .filter(|t| !is_numeric(t) && !stopwords.contains(t))
        .collect();
    if survivors.is_empty() {
        None
    } else {
        Some(survivors.join(" "))
    }
}

/// A recipe after ingredient normalization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    #[serde(flatten)]
    pub raw: RawRecipe,
    /// Normalized ingredient names: lowercase, single-space-separated,
    /// deduplicated.
    pub ingredients: BTreeSet<String>,
}

/// Why a log entry was recorded during extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogReason {
    /// A single line lost every token to the number/stop-word filters.
    AllTokensRemoved,
    /// A whole recipe ended up with no ingredients; it is kept but flagged.
    EmptyIngredientSet,
}

/// One dropped line (or emptied recipe) recorded during extraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub id: String,
    pub line: String,
    pub reason: LogReason,
}

/// Lines and recipes that produced no ingredient names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionLog {
    pub entries: Vec<LogEntry>,
}

impl ExtractionLog {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Ids of recipes whose ingredient set came out empty.
    pub fn flagged_recipes(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| e.reason == LogReason::EmptyIngredientSet)
            .map(|e| e.id.as_str())
            .collect()
    }
}

fn extract_one(recipe: &RawRecipe, stopwords: &StopWordSet) -> (Recipe, Vec<LogEntry>) {
    let mut ingredients = BTreeSet::new();
    let mut entries = Vec::new();
    for line in &recipe.ingredient_lines {
        match extract_ingredient(line, stopwords) {
            Some(name) => {
                ingredients.insert(name);
            }
            None => entries.push(LogEntry {
                id: recipe.id.clone(),
                line: line.clone(),
                reason: LogReason::AllTokensRemoved,
            }),
        }
    }
    if ingredients.is_empty() {
        entries.push(LogEntry {
            id: recipe.id.clone(),
            line: String::new(),
            reason: LogReason::EmptyIngredientSet,
        });
    }
    (
        Recipe {
            raw: recipe.clone(),
            ingredients,
        },
        entries,
    )
}

/// Normalize every recipe in the corpus. Recipes keep their input order;
/// log entries follow recipe order, then line order within a recipe.
pub fn extract_corpus(recipes: &[RawRecipe], stopwords: &StopWordSet) -> (Vec<Recipe>, ExtractionLog) {
    #[cfg(feature = "parallel")]
    {
        extract_corpus_par(recipes, stopwords)
    }
    #[cfg(not(feature = "parallel"))]
    {
        extract_corpus_seq(recipes, stopwords)
    }
}

/// Single-threaded [`extract_corpus`].
pub fn extract_corpus_seq(
    recipes: &[RawRecipe],
    stopwords: &StopWordSet,
) -> (Vec<Recipe>, ExtractionLog) {
    let per_recipe: Vec<(Recipe, Vec<LogEntry>)> = recipes
        .iter()
        .map(|r| extract_one(r, stopwords))
        .collect();
    merge_extractions(per_recipe)
}

/// Rayon-parallel [`extract_corpus`]; extraction is pure per recipe, so the
/// per-recipe results are computed independently and merged in input order.
#[cfg(feature = "parallel")]
pub fn extract_corpus_par(
    recipes: &[RawRecipe],
    stopwords: &StopWordSet,
) -> (Vec<Recipe>, ExtractionLog) {
    use rayon::prelude::*;
    let per_recipe: Vec<(Recipe, Vec<LogEntry>)> = recipes
        .par_iter()
        .map(|r| extract_one(r, stopwords))
        .collect();
    merge_extractions(per_recipe)
}

fn merge_extractions(per_recipe: Vec<(Recipe, Vec<LogEntry>)>) -> (Vec<Recipe>, ExtractionLog) {
    let mut recipes = Vec::with_capacity(per_recipe.len());
    let mut entries = Vec::new();
    for (recipe, mut recipe_entries) in per_recipe {
        recipes.push(recipe);
        entries.append(&mut recipe_entries);
    }
    (recipes, ExtractionLog { entries })
}

/// Per-group accuracy aggregates over the recipes in that group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupAccuracy {
    pub avg: f64,
    pub min: f64,
    pub max: f64,
}

/// Extraction accuracy per recipe and aggregated per group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    /// `(recipe id, accuracy)`, sorted by id.
    pub per_recipe: Vec<(String, f64)>,
    pub per_group: BTreeMap<String, GroupAccuracy>,
}

/// Group label used when a recipe id has no entry in the grouping map.
pub const UNGROUPED: &str = "unclassified";

/// Score predicted ingredient sets against gold annotations.
///
/// Accuracy per recipe is `|predicted ∩ gold| / |gold|`; group aggregates
/// are the arithmetic mean, min, and max over the group's recipes. Ids are
/// matched exactly; every gold id must be present in `predicted`.
pub fn score_extraction(
    predicted: &BTreeMap<String, BTreeSet<String>>,
    gold: &BTreeMap<String, BTreeSet<String>>,
    grouping: &BTreeMap<String, String>,
) -> Result<AccuracyReport, ExtractError> {
    let mut per_recipe = Vec::with_capacity(gold.len());
    let mut groups: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (id, gold_set) in gold {
        if gold_set.is_empty() {
            return Err(ExtractError::EmptyGold { id: id.clone() });
        }
        let predicted_set = predicted
            .get(id)
            .ok_or_else(|| ExtractError::MissingPrediction { id: id.clone() })?;
        let hits = predicted_set.intersection(gold_set).count();
        let accuracy = hits as f64 / gold_set.len() as f64;
        per_recipe.push((id.clone(), accuracy));
        let label = grouping.get(id).map(String::as_str).unwrap_or(UNGROUPED);
        groups.entry(label.to_string()).or_default().push(accuracy);
    }
    let per_group = groups
        .into_iter()
        .map(|(label, accs)| {
            let sum: f64 = accs.iter().sum();
            let min = accs.iter().copied().fold(f64::INFINITY, f64::min);
            let max = accs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (
                label,
                GroupAccuracy {
                    avg: sum / accs.len() as f64,
                    min,
                    max,
                },
            )
        })
        .collect();
    Ok(AccuracyReport {
        per_recipe,
        per_group,
    })
}
