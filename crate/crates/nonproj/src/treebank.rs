//! CoNLL-U ingestion and corpus statistics.
//!
//! Only the ID and HEAD columns are consumed. Multiword-token ranges
//! (`3-4`) and empty nodes (`3.1`) are skipped. A structurally broken token
//! line (wrong column count) is a fatal parse error with its line number;
//! a sentence whose heads violate the tree invariants is excluded with a
//! report and does not abort the file, so coverage denominators stay
//! auditable.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::tree::{DepTree, Sentence};

#[derive(Debug, Error)]
pub enum ConlluError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {detail}")]
    Malformed { line: usize, detail: String },
}

/// A sentence dropped during reading, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exclusion {
    /// 1-based sentence index within the stream.
    pub sentence: usize,
    /// Line where the offending block starts.
    pub line: usize,
    pub reason: String,
}

/// Result of reading one CoNLL-U stream.
#[derive(Debug, Default)]
pub struct ReadOutcome {
    pub trees: Vec<(Sentence, DepTree)>,
    pub excluded: Vec<Exclusion>,
}

struct Block {
    start_line: usize,
    heads: Vec<Option<usize>>,
}

impl Block {
    fn finish(self, sentence_index: usize, out: &mut ReadOutcome) {
        let mut heads = Vec::with_capacity(self.heads.len());
        for (idx, h) in self.heads.into_iter().enumerate() {
            match h {
                Some(h) => heads.push(h),
                None => {
                    out.excluded.push(Exclusion {
                        sentence: sentence_index,
                        line: self.start_line,
                        reason: format!("token {} has no integer head", idx + 1),
                    });
                    return;
                }
            }
        }
        match DepTree::new(heads) {
            Ok(tree) => out.trees.push((tree.sentence(), tree)),
            Err(e) => out.excluded.push(Exclusion {
                sentence: sentence_index,
                line: self.start_line,
                reason: e.to_string(),
            }),
        }
    }
}

/// Reads CoNLL-U text into trees. See the module docs for the skipping and
/// exclusion policy.
pub fn read_conllu<R: BufRead>(reader: R) -> Result<ReadOutcome, ConlluError> {
    let mut out = ReadOutcome::default();
    let mut block: Option<Block> = None;
    let mut bad_block: Option<String> = None; // exclusion reason, sticky per block
    let mut sentence_index = 0usize;

    let flush = |block: &mut Option<Block>,
                 bad: &mut Option<String>,
                 sentence_index: &mut usize,
                 out: &mut ReadOutcome| {
        if let Some(b) = block.take() {
            *sentence_index += 1;
            match bad.take() {
                None => b.finish(*sentence_index, out),
                Some(reason) => out.excluded.push(Exclusion {
                    sentence: *sentence_index,
                    line: b.start_line,
                    reason,
                }),
            }
        } else {
            bad.take();
        }
    };

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.is_empty() {
            flush(&mut block, &mut bad_block, &mut sentence_index, &mut out);
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = trimmed.split('\t').collect();
        if cols.len() != 10 {
            return Err(ConlluError::Malformed {
                line: lineno,
                detail: format!("token line has {} columns, expected 10", cols.len()),
            });
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            continue; // multiword token range or empty node
        }
        let b = block.get_or_insert_with(|| Block {
            start_line: lineno,
            heads: Vec::new(),
        });
        if bad_block.is_some() {
            continue;
        }
        match id.parse::<usize>() {
            Ok(idv) if idv == b.heads.len() + 1 => {
                let head = cols[6].parse::<usize>().ok();
                b.heads.push(head);
            }
            Ok(idv) => {
                bad_block = Some(format!(
                    "token id {} out of sequence (expected {})",
                    idv,
                    b.heads.len() + 1
                ));
            }
            Err(_) => {
                bad_block = Some(format!("unparseable token id `{}`", id));
            }
        }
    }
    flush(&mut block, &mut bad_block, &mut sentence_index, &mut out);
    Ok(out)
}

pub fn read_conllu_file(path: &Path) -> Result<ReadOutcome, ConlluError> {
    read_conllu(BufReader::new(File::open(path)?))
}

/// Per-file sentence counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FileStats {
    pub total: u64,
    pub nonprojective: u64,
    pub excluded: u64,
}

impl FileStats {
    pub fn pct_nonprojective(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.nonprojective as f64 / self.total as f64
        }
    }
}

/// Corpus-level aggregation; one bad file does not abort the others.
#[derive(Debug, Default)]
pub struct CorpusStats {
    pub per_file: Vec<(PathBuf, FileStats)>,
    pub failures: Vec<(PathBuf, String)>,
}

impl CorpusStats {
    pub fn totals(&self) -> FileStats {
        let mut t = FileStats::default();
        for (_, s) in &self.per_file {
            t.total += s.total;
            t.nonprojective += s.nonprojective;
            t.excluded += s.excluded;
        }
        t
    }
}

fn file_stats(path: &Path) -> Result<FileStats, ConlluError> {
    let outcome = read_conllu_file(path)?;
    let nonprojective = outcome
        .trees
        .iter()
        .filter(|(_, t)| t.is_nonprojective())
        .count() as u64;
    Ok(FileStats {
        total: outcome.trees.len() as u64,
        nonprojective,
        excluded: outcome.excluded.len() as u64,
    })
}

/// Reads every file in parallel and merges results in input order.
pub fn corpus_stats(paths: &[PathBuf]) -> CorpusStats {
    let results: Vec<(PathBuf, Result<FileStats, ConlluError>)> = paths
        .par_iter()
        .map(|p| (p.clone(), file_stats(p)))
        .collect();
    let mut stats = CorpusStats::default();
    for (path, result) in results {
        match result {
            Ok(s) => stats.per_file.push((path, s)),
            Err(e) => stats.failures.push((path, e.to_string())),
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn token_line(id: &str, head: &str) -> String {
        format!("{id}\tform\tlemma\tUPOS\tXPOS\t_\t{head}\tdep\t_\t_")
    }

    #[test]
    fn reads_a_two_token_block() {
        let text = format!(
            "# comment\n{}\n{}\n\n",
            token_line("1", "2"),
            token_line("2", "0")
        );
        let out = read_conllu(Cursor::new(text)).unwrap();
        assert_eq!(out.trees.len(), 1);
        assert!(out.excluded.is_empty());
        let (sentence, tree) = &out.trees[0];
        assert_eq!(sentence.len(), 2);
        assert_eq!(tree, &DepTree::new(vec![2, 0]).unwrap());
    }

    #[test]
    fn skips_multiword_and_empty_node_lines() {
        let text = format!(
            "{}\n{}\n{}\n{}\n{}\n{}\n\n",
            token_line("1", "2"),
            token_line("2", "0"),
            token_line("3-4", "_"),
            token_line("3", "2"),
            token_line("4", "2"),
            token_line("4.1", "_"),
        );
        let out = read_conllu(Cursor::new(text)).unwrap();
        assert_eq!(out.trees.len(), 1);
        assert_eq!(out.trees[0].1, DepTree::new(vec![2, 0, 2, 2]).unwrap());
    }

    #[test]
    fn excludes_cycles_with_a_report() {
        let text = format!(
            "{}\n{}\n\n{}\n\n",
            token_line("1", "2"),
            token_line("2", "1"),
            token_line("1", "0"),
        );
        let out = read_conllu(Cursor::new(text)).unwrap();
        assert_eq!(out.trees.len(), 1);
        assert_eq!(out.excluded.len(), 1);
        assert_eq!(out.excluded[0].sentence, 1);
        assert!(out.excluded[0].reason.contains("cycle"));
    }

    #[test]
    fn excludes_missing_heads_and_bad_ids() {
        let text = format!(
            "{}\n\n{}\n\n",
            token_line("1", "_"),
            token_line("2", "0"), // out-of-sequence id
        );
        let out = read_conllu(Cursor::new(text)).unwrap();
        assert!(out.trees.is_empty());
        assert_eq!(out.excluded.len(), 2);
    }

    #[test]
    fn wrong_column_count_is_fatal_with_line_number() {
        let text = "1\tform\tmissing-columns\n";
        match read_conllu(Cursor::new(text)) {
            Err(ConlluError::Malformed { line: 1, .. }) => {}
            other => panic!("expected malformed-line error, got {:?}", other),
        }
    }

    #[test]
    fn empty_input_has_no_sentences() {
        let out = read_conllu(Cursor::new("")).unwrap();
        assert!(out.trees.is_empty());
        assert!(out.excluded.is_empty());
    }

    #[test]
    fn stats_compose_projective_and_crossing() {
        let projective = format!("{}\n{}\n\n", token_line("1", "0"), token_line("2", "1"));
        let crossing = format!(
            "{}\n{}\n{}\n{}\n\n",
            token_line("1", "3"),
            token_line("2", "4"),
            token_line("3", "0"),
            token_line("4", "3"),
        );
        let out = read_conllu(Cursor::new(format!("{projective}{crossing}"))).unwrap();
        let nonproj = out
            .trees
            .iter()
            .filter(|(_, t)| t.is_nonprojective())
            .count();
        assert_eq!((out.trees.len(), nonproj), (2, 1));
    }

    #[test]
    fn id_head_columns_round_trip() {
        let text = format!(
            "# sent_id = 1\n{}\n{}\n{}\n\n",
            token_line("1", "3"),
            token_line("2", "3"),
            token_line("3", "0"),
        );
        let out = read_conllu(Cursor::new(text)).unwrap();
        let tree = &out.trees[0].1;
        let rendered: Vec<(usize, usize)> =
            (1..=tree.len()).map(|m| (m, tree.head_of(m))).collect();
        assert_eq!(rendered, vec![(1, 3), (2, 3), (3, 0)]);
    }
}
