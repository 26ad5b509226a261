//! Arc scores for weighted exact inference.

use std::io::BufRead;

use thiserror::Error;

/// Arc scores `λ(head, modifier)` over `head ∈ 0..=n`, `modifier ∈ 1..=n`.
/// Unset pairs are `-∞` (arc disallowed); the root never takes a head and
/// self-arcs are never scored.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    n: usize,
    scores: Vec<f64>, // (n+1) x (n+1), row = head
}

impl ScoreMatrix {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a score matrix needs at least one token");
        ScoreMatrix {
            n,
            scores: vec![f64::NEG_INFINITY; (n + 1) * (n + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets `λ(head, modifier)`. Rejects out-of-range nodes, a root
    /// modifier, and self-arcs. Setting a pair twice keeps the last value.
    pub fn set(&mut self, head: usize, modifier: usize, score: f64) -> Result<(), ScoreFileError> {
        if head > self.n || modifier == 0 || modifier > self.n || head == modifier {
            return Err(ScoreFileError::BadArc {
                head,
                modifier,
                n: self.n,
            });
        }
        self.scores[head * (self.n + 1) + modifier] = score;
        Ok(())
    }

    /// `λ(head, modifier)`, `-∞` when unset or out of range.
    pub fn get(&self, head: usize, modifier: usize) -> f64 {
        if head > self.n || modifier == 0 || modifier > self.n {
            return f64::NEG_INFINITY;
        }
        self.scores[head * (self.n + 1) + modifier]
    }

    /// Fills every legal pair with `score`.
    pub fn fill(n: usize, score: f64) -> Self {
        let mut m = ScoreMatrix::new(n);
        for h in 0..=n {
            for md in 1..=n {
                if h != md {
                    m.set(h, md, score).expect("legal pair");
                }
            }
        }
        m
    }

    /// Reads the text format: optional `#` comment lines, then `n <int>`,
    /// then `h m s` triples. Unlisted pairs stay `-∞`.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self, ScoreFileError> {
        let mut matrix: Option<ScoreMatrix> = None;
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match &mut matrix {
                None => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(ScoreFileError::Parse {
                            line: lineno,
                            detail: "expected header `n <int>`".to_string(),
                        });
                    }
                    let n: usize = fields[1].parse().map_err(|_| ScoreFileError::Parse {
                        line: lineno,
                        detail: format!("bad token count `{}`", fields[1]),
                    })?;
                    if n < 1 {
                        return Err(ScoreFileError::Parse {
                            line: lineno,
                            detail: "token count must be at least 1".to_string(),
                        });
                    }
                    matrix = Some(ScoreMatrix::new(n));
                }
                Some(m) => {
                    if fields.len() != 3 {
                        return Err(ScoreFileError::Parse {
                            line: lineno,
                            detail: format!("expected `h m s`, got {} fields", fields.len()),
                        });
                    }
                    let parse_node = |s: &str| -> Result<usize, ScoreFileError> {
                        s.parse().map_err(|_| ScoreFileError::Parse {
                            line: lineno,
                            detail: format!("bad node id `{}`", s),
                        })
                    };
                    let h = parse_node(fields[0])?;
                    let md = parse_node(fields[1])?;
                    let s: f64 = fields[2].parse().map_err(|_| ScoreFileError::Parse {
                        line: lineno,
                        detail: format!("bad score `{}`", fields[2]),
                    })?;
                    m.set(h, md, s).map_err(|_| ScoreFileError::Parse {
                        line: lineno,
                        detail: format!("illegal arc ({}, {})", h, md),
                    })?;
                }
            }
        }
        matrix.ok_or(ScoreFileError::MissingHeader)
    }
}

#[derive(Debug, Error)]
pub enum ScoreFileError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error("score file has no `n <int>` header")]
    MissingHeader,
    #[error("illegal arc ({head}, {modifier}) for n = {n}")]
    BadArc {
        head: usize,
        modifier: usize,
        n: usize,
    },
}
