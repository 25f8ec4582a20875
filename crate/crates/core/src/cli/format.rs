//! Plain-text instance files.
//!
//! ```text
//! p hs <n> <m> <d> <k>
//! c free-form comment
//! 1 2 4
//! ...
//! ```
//!
//! Vertex indices are 1-based in files and 0-based in memory. Comment lines
//! (`c ...`) may appear anywhere and blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Instance, MIN_D};

struct Header {
    n: usize,
    m: usize,
    d: usize,
    k: i64,
}

fn parse_header(line: &str, lineno: usize) -> Result<Header> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 6 || tokens[0] != "p" || tokens[1] != "hs" {
        return Err(Error::format(
            lineno,
            format!("expected `p hs <n> <m> <d> <k>`, got `{line}`"),
        ));
    }
    let num = |i: usize, what: &str| -> Result<usize> {
        tokens[i]
            .parse()
            .map_err(|_| Error::format(lineno, format!("bad {what} `{}`", tokens[i])))
    };
    let k = tokens[5]
        .parse()
        .map_err(|_| Error::format(lineno, format!("bad k `{}`", tokens[5])))?;
    let header = Header {
        n: num(2, "n")?,
        m: num(3, "m")?,
        d: num(4, "d")?,
        k,
    };
    if header.d < MIN_D {
        return Err(Error::UnsupportedParameter(format!(
            "d={} at line {lineno}; the kernelizer requires d >= {MIN_D}",
            header.d
        )));
    }
    Ok(header)
}

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<Header> = None;
    let mut comments = Vec::new();
    let mut edges = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        last_line = lineno;
        if is_comment(line) {
            comments.push(line[1..].trim_start().to_owned());
            continue;
        }
        let Some(h) = &header else {
            header = Some(parse_header(line, lineno)?);
            continue;
        };
        if edges.len() == h.m {
            return Err(Error::format(lineno, format!("more than m={} edge lines", h.m)));
        }
        let mut vertices = Vec::new();
        for tok in line.split_whitespace() {
            let index: usize = tok
                .parse()
                .map_err(|_| Error::format(lineno, format!("bad vertex index `{tok}`")))?;
            if index == 0 || index > h.n {
                return Err(Error::format(
                    lineno,
                    format!("vertex index {index} outside [1, {}]", h.n),
                ));
            }
            vertices.push(index - 1);
        }
        let edge = Edge::new(vertices);
        if edge.len() > h.d {
            return Err(Error::format(
                lineno,
                format!("edge has {} distinct vertices, more than d={}", edge.len(), h.d),
            ));
        }
        edges.push(edge);
    }

    let Some(h) = header else {
        return Err(Error::format(None, "missing `p hs` header"));
    };
    if edges.len() != h.m {
        return Err(Error::format(
            last_line.max(1),
            format!("header promises {} edges, found {}", h.m, edges.len()),
        ));
    }
    Ok(Instance::from_edges(h.n, h.d, h.k, edges)?.with_comments(comments))
}

/// Canonical text: header, comments, then edges in lexicographic order with
/// dense 1-based indices.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "p hs {} {} {} {}", inst.n(), inst.m(), inst.d(), inst.k()).unwrap();
    for c in inst.comments() {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            writeln!(out, "c {c}").unwrap();
        }
    }
    for e in inst.edges() {
        let line: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}
