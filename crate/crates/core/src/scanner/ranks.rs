use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

pub const RANK_HEADER: &str = "p,h,rank";

/// Externally supplied `(p, h) → h-rank` data.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankTable {
    ranks: BTreeMap<(u64, u64), u32>,
}

impl RankTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: u64, h: u64, rank: u32) {
        self.ranks.insert((p, h), rank);
    }

    pub fn get(&self, p: u64, h: u64) -> Option<u32> {
        self.ranks.get(&(p, h)).copied()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Parses `p,h,rank` rows after a literal `p,h,rank` header. Blank lines
    /// are ignored; an empty input gives an empty table.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = RankTable::new();
        let mut seen_header = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if !seen_header {
                if line != RANK_HEADER {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected header `{RANK_HEADER}`, found `{line}`"),
                    });
                }
                seen_header = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            if fields.len() != 3 {
                return Err(bad(format!(
                    "expected 3 fields, found {}: `{line}`",
                    fields.len()
                )));
            }
            let p: u64 = fields[0]
                .parse()
                .map_err(|_| bad(format!("invalid p `{}`", fields[0])))?;
            let h: u64 = fields[1]
                .parse()
                .map_err(|_| bad(format!("invalid h `{}`", fields[1])))?;
            let rank: u32 = fields[2]
                .parse()
                .map_err(|_| bad(format!("invalid rank `{}`", fields[2])))?;
            table.insert(p, h, rank);
        }
        Ok(table)
    }
}

/// Loads a rank file; a missing file yields an empty table.
pub fn ingest_reference_ranks(path: &Path) -> Result<RankTable> {
    match std::fs::read_to_string(path) {
        Ok(text) => RankTable::parse(&text),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(RankTable::new()),
        Err(e) => Err(e.into()),
    }
}
