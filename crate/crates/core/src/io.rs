//! Plain-text hypergraph files.
//!
//! ```text
//! # optional comments
//! 3 5 2
//! 0 1 2
//! 1 3 4
//! ```
//!
//! The header gives uniformity, vertex count and edge count. Each edge line
//! lists strictly increasing vertices.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::{ThreeGraph, UniformGraph, UniformGraphBuilder};

pub fn write_graph<const K: usize, W: Write>(g: &UniformGraph<K>, mut out: W) -> Result<()> {
    writeln!(out, "{K} {} {}", g.n(), g.edge_count())?;
    for e in g.edges() {
        let line: Vec<String> = e.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

pub fn graph_to_string<const K: usize>(g: &UniformGraph<K>) -> String {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("output is ASCII")
}

fn parse_fields(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("expected a non-negative integer, found {tok:?}"),
            })
        })
        .collect()
}

pub fn read_graph<const K: usize, R: BufRead>(input: R) -> Result<UniformGraph<K>> {
    let mut builder: Option<(UniformGraphBuilder<K>, usize, usize)> = None;
    let mut seen = 0usize;
    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields = parse_fields(content, lineno)?;
        let parse_err = |message: String| Error::Parse { line: lineno, message };
        match &mut builder {
            None => {
                let [k, n, m] = fields[..] else {
                    return Err(parse_err("header must be \"k n m\"".into()));
                };
                if k != K {
                    return Err(parse_err(format!("expected a {K}-graph, header says {k}")));
                }
                builder = Some((UniformGraphBuilder::new(n)?, n, m));
            }
            Some((b, n, m)) => {
                if fields.len() != K {
                    return Err(parse_err(format!("edge must have {K} vertices")));
                }
                if !fields.windows(2).all(|w| w[0] < w[1]) {
                    return Err(parse_err("edge vertices must be strictly increasing".into()));
                }
                if fields[K - 1] >= *n {
                    return Err(parse_err(format!("vertex {} out of range", fields[K - 1])));
                }
                seen += 1;
                if seen > *m {
                    return Err(parse_err(format!("more than the declared {m} edges")));
                }
                let mut e = [0usize; K];
                e.copy_from_slice(&fields);
                if !b.insert(e)? {
                    return Err(parse_err(format!("duplicate edge {e:?}")));
                }
            }
        }
    }
    let Some((b, _, m)) = builder else {
        return Err(Error::Parse {
            line: 0,
            message: "missing header".into(),
        });
    };
    if seen != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header declares {m} edges, found {seen}"),
        });
    }
    Ok(b.build())
}

pub fn read_three_graph(path: impl AsRef<Path>) -> Result<ThreeGraph> {
    let f = BufReader::new(File::open(path)?);
    read_graph::<3, _>(f).map(ThreeGraph::from)
}

pub fn write_three_graph(g: &ThreeGraph, path: impl AsRef<Path>) -> Result<()> {
    write_graph(g.as_uniform(), BufWriter::new(File::create(path)?))
}
