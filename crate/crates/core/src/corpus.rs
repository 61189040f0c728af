//! Recipe corpus parsing, validation, and summary counts.
//!
//! Two on-disk formats are supported:
//!
//! * JSONL (canonical): one JSON object per line with keys `id`, `title`,
//!   `cuisine`, `category`, `prep_time_minutes`, `ingredient_lines`,
//!   `instructions`. Optional keys may be missing.
//! * CSV: header `id,title,cuisine,category,prep_time_minutes,
//!   ingredient_lines,instructions`, with the ingredient lines joined by
//!   `|` inside a single cell. Empty cells stand for absent optionals.

use std::collections::{BTreeMap, HashSet};
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One recipe record as parsed from the corpus, ingredient lines still raw.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecipe {
    pub id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cuisine: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prep_time_minutes: Option<u32>,
    pub ingredient_lines: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instructions: Option<String>,
}

/// Corpus-level counts. Recipes without a category land in
/// `unclassified_count`, so category counts plus unclassified always add up
/// to `recipe_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub recipe_count: usize,
    pub per_cuisine_counts: BTreeMap<String, usize>,
    pub per_category_counts: BTreeMap<String, usize>,
    pub unclassified_count: usize,
}

/// Input format of a recipe corpus file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Jsonl,
    Csv,
}

impl std::str::FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "csv" => Ok(CorpusFormat::Csv),
            other => Err(format!("unknown corpus format '{other}' (expected jsonl or csv)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("i/o error reading corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed record at line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("duplicate recipe id '{id}' at line {line}")]
    DuplicateId { id: String, line: usize },
    #[error("recipe '{id}' has no ingredient lines")]
    EmptyIngredients { id: String },
    #[error("unexpected CSV header: expected '{expected}', found '{found}'")]
    Header { expected: String, found: String },
}

const CSV_HEADER: [&str; 7] = [
    "id",
    "title",
    "cuisine",
    "category",
    "prep_time_minutes",
    "ingredient_lines",
    "instructions",
];

/// Parse a recipe corpus from a byte stream.
///
/// Returns one [`RawRecipe`] per logical record in input order. Malformed
/// records, duplicate ids, and recipes without ingredient lines are errors.
pub fn parse_recipe_file<R: Read>(
    source: R,
    format: CorpusFormat,
) -> Result<Vec<RawRecipe>, CorpusError> {
    let recipes = match format {
        CorpusFormat::Jsonl => parse_jsonl(source)?,
        CorpusFormat::Csv => parse_csv(source)?,
    };
    let mut seen: HashSet<&str> = HashSet::with_capacity(recipes.len());
    for (idx, recipe) in recipes.iter().enumerate() {
        let line = idx + 1;
        validate(recipe, line)?;
        if !seen.insert(&recipe.id) {
            return Err(CorpusError::DuplicateId {
                id: recipe.id.clone(),
                line,
            });
        }
    }
    Ok(recipes)
}

fn validate(recipe: &RawRecipe, line: usize) -> Result<(), CorpusError> {
    if recipe.id.is_empty() {
        return Err(CorpusError::Malformed {
            line,
            message: "recipe id is empty".into(),
        });
    }
    if recipe.ingredient_lines.is_empty() {
        return Err(CorpusError::EmptyIngredients {
            id: recipe.id.clone(),
        });
    }
    if recipe.ingredient_lines.iter().any(|l| l.is_empty()) {
        return Err(CorpusError::Malformed {
            line,
            message: format!("recipe '{}' has an empty ingredient line", recipe.id),
        });
    }
    for (field, value) in [("cuisine", &recipe.cuisine), ("category", &recipe.category)] {
        if value.as_deref() == Some("") {
            return Err(CorpusError::Malformed {
                line,
                message: format!("recipe '{}' has an empty {field} label", recipe.id),
            });
        }
    }
    Ok(())
}

fn parse_jsonl<R: Read>(source: R) -> Result<Vec<RawRecipe>, CorpusError> {
    let reader = BufReader::new(source);
    let mut recipes = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let recipe: RawRecipe =
            serde_json::from_str(&line).map_err(|e| CorpusError::Malformed {
                line: line_no,
                message: e.to_string(),
            })?;
        recipes.push(recipe);
    }
    Ok(recipes)
}

fn parse_csv<R: Read>(source: R) -> Result<Vec<RawRecipe>, CorpusError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(source);
    let header = reader
        .headers()
        .map_err(|e| CorpusError::Malformed {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    if header.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(CorpusError::Header {
            expected: CSV_HEADER.join(","),
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut recipes = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let line_no = idx + 2; // header occupies line 1
        let row = row.map_err(|e| CorpusError::Malformed {
            line: line_no,
            message: e.to_string(),
        })?;
        if row.len() != CSV_HEADER.len() {
            return Err(CorpusError::Malformed {
                line: line_no,
                message: format!("expected {} fields, found {}", CSV_HEADER.len(), row.len()),
            });
        }
        let opt = |s: &str| {
            if s.is_empty() {
                None
            } else {
                Some(s.to_string())
            }
        };
        let prep_time_minutes = match &row[4] {
            "" => None,
            value => Some(value.parse::<u32>().map_err(|_| CorpusError::Malformed {
                line: line_no,
                message: format!("invalid prep_time_minutes '{value}'"),
            })?),
        };
        let ingredient_lines: Vec<String> = if row[5].is_empty() {
            Vec::new()
        } else {
            row[5].split('|').map(str::to_string).collect()
        };
        recipes.push(RawRecipe {
            id: row[0].to_string(),
            title: row[1].to_string(),
            cuisine: opt(&row[2]),
            category: opt(&row[3]),
            prep_time_minutes,
            ingredient_lines,
            instructions: opt(&row[6]),
        });
    }
    Ok(recipes)
}

/// Serialize recipes back to JSONL, one compact object per line.
pub fn write_recipes_jsonl<W: Write>(out: &mut W, recipes: &[RawRecipe]) -> Result<(), CorpusError> {
    for recipe in recipes {
        serde_json::to_writer(&mut *out, recipe).map_err(std::io::Error::other)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Serialize recipes to the fixed-column CSV layout.
///
/// Ingredient lines are joined by `|`; a line containing `|` itself cannot
/// round-trip through this format, use JSONL for such corpora.
pub fn write_recipes_csv<W: Write>(out: &mut W, recipes: &[RawRecipe]) -> Result<(), CorpusError> {
    let mut writer = csv::Writer::from_writer(out);
    writer
        .write_record(CSV_HEADER)
        .map_err(|e| CorpusError::Malformed {
            line: 1,
            message: e.to_string(),
        })?;
    for (idx, recipe) in recipes.iter().enumerate() {
        let prep = recipe
            .prep_time_minutes
            .map(|m| m.to_string())
            .unwrap_or_default();
        writer
            .write_record([
                recipe.id.as_str(),
                recipe.title.as_str(),
                recipe.cuisine.as_deref().unwrap_or(""),
                recipe.category.as_deref().unwrap_or(""),
                prep.as_str(),
                recipe.ingredient_lines.join("|").as_str(),
                recipe.instructions.as_deref().unwrap_or(""),
            ])
            .map_err(|e| CorpusError::Malformed {
                line: idx + 2,
                message: e.to_string(),
            })?;
    }
    writer.flush()?;
    Ok(())
}

/// Count recipes per cuisine and per category. Order-insensitive.
pub fn summarize_corpus(recipes: &[RawRecipe]) -> CorpusSummary {
    let mut per_cuisine_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut per_category_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut unclassified_count = 0;
    for recipe in recipes {
        if let Some(cuisine) = &recipe.cuisine {
            *per_cuisine_counts.entry(cuisine.clone()).or_insert(0) += 1;
        }
        match &recipe.category {
            Some(category) => *per_category_counts.entry(category.clone()).or_insert(0) += 1,
            None => unclassified_count += 1,
        }
    }
    CorpusSummary {
        recipe_count: recipes.len(),
        per_cuisine_counts,
        per_category_counts,
        unclassified_count,
    }
}
