//! Output-directory plumbing: guarded writes, artifact readers, and the
//! input-hash provenance used for staleness warnings.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};

pub const RECIPES: &str = "recipes.jsonl";
pub const EXTRACTION_LOG: &str = "extraction_log.jsonl";
pub const CORPUS_SUMMARY: &str = "corpus_summary.json";
pub const PROVENANCE: &str = "provenance.json";

/// Write an artifact, refusing to clobber existing files unless forced.
pub fn write_artifact(out_dir: &Path, name: &str, content: &str, force: bool) -> Result<PathBuf> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let path = out_dir.join(name);
    if path.exists() && !force {
        bail!(
            "refusing to overwrite {}; pass --force to replace it",
            path.display()
        );
    }
    fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Hashes of the raw inputs an extraction run consumed. Later stages
/// compare these against the current files to spot stale artifacts.
pub fn provenance_json(input: &[u8], stopwords: &[u8]) -> String {
    let map = BTreeMap::from([
        ("input_sha256", sha256_hex(input)),
        ("stopwords_sha256", sha256_hex(stopwords)),
    ]);
    let mut s = serde_json::to_string_pretty(&map).expect("provenance serialization");
    s.push('\n');
    s
}

/// Warn when the recorded input hashes no longer match the files on disk.
pub fn check_staleness(
    out_dir: &Path,
    input: Option<&Path>,
    stopwords: Option<&Path>,
) -> Result<()> {
    let path = out_dir.join(PROVENANCE);
    if !path.exists() {
        return Ok(());
    }
    let recorded: BTreeMap<String, String> =
        serde_json::from_str(&fs::read_to_string(&path)?).context("parsing provenance.json")?;
    let check = |file: Option<&Path>, key: &str| -> Result<()> {
        if let (Some(file), Some(recorded_hash)) = (file, recorded.get(key)) {
            let current = sha256_hex(&fs::read(file)?);
            if &current != recorded_hash {
                eprintln!(
                    "warning: {} changed since extract ran; artifacts in {} may be stale",
                    file.display(),
                    out_dir.display()
                );
            }
        }
        Ok(())
    };
    check(input, "input_sha256")?;
    check(stopwords, "stopwords_sha256")?;
    Ok(())
}

/// Load the normalized recipes written by the extract stage.
pub fn read_recipes(out_dir: &Path) -> Result<Vec<inn_core::Recipe>> {
    let path = out_dir.join(RECIPES);
    let text = fs::read_to_string(&path).with_context(|| {
        format!(
            "reading {} (run the extract stage into this directory first)",
            path.display()
        )
    })?;
    let mut recipes = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let recipe: inn_core::Recipe = serde_json::from_str(line)
            .with_context(|| format!("parsing {} line {}", path.display(), idx + 1))?;
        recipes.push(recipe);
    }
    Ok(recipes)
}
