//! The `dg` text format.
//!
//! ```text
//! # comment lines start with '#'
//! dg 4
//! 0 1
//! 0 2
//! 3 0
//! ```
//!
//! The header `dg <n>` is the first non-comment line; every following
//! non-comment line is an arc `<u> <v>` (0-indexed, meaning `u -> v`).
//! Repeated arcs and digons are parse errors. Blank lines are skipped.

use super::OrientedGraph;
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

impl OrientedGraph {
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<OrientedGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let fields: Vec<&str> = line.split_ascii_whitespace().collect();
            match &mut graph {
                None => {
                    if fields.len() != 2 || fields[0] != "dg" {
                        return Err(err(format!("expected header `dg <n>`, found `{line}`")));
                    }
                    let n: usize = fields[1]
                        .parse()
                        .map_err(|_| err(format!("bad order `{}`", fields[1])))?;
                    graph = Some(OrientedGraph::empty(n).map_err(|e| err(e.to_string()))?);
                }
                Some(g) => {
                    if fields.len() != 2 {
                        return Err(err(format!("expected `<u> <v>`, found `{line}`")));
                    }
                    let u: usize = fields[0]
                        .parse()
                        .map_err(|_| err(format!("bad vertex `{}`", fields[0])))?;
                    let v: usize = fields[1]
                        .parse()
                        .map_err(|_| err(format!("bad vertex `{}`", fields[1])))?;
                    g.try_insert(u, v).map_err(|e| err(e.to_string()))?;
                }
            }
        }
        graph.ok_or(Error::Parse {
            line: 0,
            msg: "missing `dg <n>` header".into(),
        })
    }

    /// Canonical text: header then arcs in lexicographic order, `\n` line
    /// endings, no comments.
    pub fn to_text(&self) -> String {
        let mut s = format!("dg {}\n", self.n());
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = OrientedGraph::parse("# star\ndg 4\n0 1\n# mid\n0 2\n3 0\n").unwrap();
        assert_eq!(g.arcs(), vec![(0, 1), (0, 2), (3, 0)]);
        assert_eq!(g.to_text(), "dg 4\n0 1\n0 2\n3 0\n");
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = OrientedGraph::parse("dg 3\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = OrientedGraph::parse("dg 3\n0 1\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(OrientedGraph::parse("0 1\n").is_err());
        assert!(OrientedGraph::parse("# nothing\n").is_err());
        assert!(OrientedGraph::parse("dg 2\n0 5\n").is_err());
        assert!(OrientedGraph::parse("dg 2\n0 1 2\n").is_err());
    }
}
