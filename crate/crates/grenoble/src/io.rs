use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertSet};
use crate::oracle::{CliqueWitness, Coloring};

/// Parse DIMACS edge format. Vertices are 1-based in the file and 0-based in
/// the graph. `c name <n>` comments set the graph name.
pub fn read_dimacs<R: BufRead>(reader: R) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut declared_edges = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut name: Option<String> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let parse_err = |msg: &str| Error::Parse {
            line: lineno,
            msg: msg.to_string(),
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("c") => {
                let rest: Vec<&str> = tokens.collect();
                if rest.first() == Some(&"name") && rest.len() >= 2 {
                    name = Some(rest[1..].join(" "));
                }
            }
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err("duplicate problem line"));
                }
                if tokens.next() != Some("edge") {
                    return Err(parse_err("problem line must be `p edge n m`"));
                }
                let nv: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("bad vertex count"))?;
                declared_edges = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("bad edge count"))?;
                n = Some(nv);
            }
            Some("e") => {
                let n = n.ok_or_else(|| parse_err("edge before problem line"))?;
                let u: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("bad edge endpoint"))?;
                let v: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("bad edge endpoint"))?;
                if u < 1 || v < 1 || u > n || v > n {
                    return Err(parse_err("edge endpoint out of range"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown line type `{other}`"),
                });
            }
            None => unreachable!(),
        }
    }
    let n = n.ok_or_else(|| Error::invalid("missing problem line"))?;
    if edges.len() != declared_edges {
        return Err(Error::invalid(format!(
            "problem line declares {declared_edges} edges, file has {}",
            edges.len()
        )));
    }
    let mut g = Graph::from_edges(n, &edges)?;
    if let Some(name) = name {
        g = g.with_name(name);
    }
    Ok(g)
}

/// Write DIMACS edge format. The graph must have dense ids `0..n`; graphs
/// produced by contraction must be re-packed by the caller first.
pub fn write_dimacs<W: Write>(g: &Graph, writer: &mut W) -> Result<()> {
    if !g.has_dense_ids() {
        return Err(Error::invalid(
            "DIMACS output requires dense vertex ids 0..n",
        ));
    }
    if let Some(name) = g.name() {
        writeln!(writer, "c name {name}")?;
    }
    let edges = g.edges();
    writeln!(writer, "p edge {} {}", g.vertex_count(), edges.len())?;
    for (u, v) in edges {
        writeln!(writer, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn read_dimacs_file(path: &std::path::Path) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    read_dimacs(std::io::BufReader::new(file))
}

pub fn write_dimacs_file(g: &Graph, path: &std::path::Path) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    write_dimacs(g, &mut file)
}

/// JSON form of a graph: explicit vertex list plus ascending edge list.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> GraphJson {
        GraphJson {
            name: g.name().map(str::to_string),
            vertices: g.vertices().to_vec(),
            edges: g.edges(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let verts: VertSet = VertSet::try_from(j.vertices).map_err(Error::invalid)?;
        let mut g = Graph::from_parts(verts, &j.edges)?;
        if let Some(name) = j.name {
            g = g.with_name(name);
        }
        Ok(g)
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphJson::from(g)).expect("graph serialization cannot fail")
}

pub fn graph_from_json(s: &str) -> Result<Graph> {
    let j: GraphJson =
        serde_json::from_str(s).map_err(|e| Error::invalid(format!("bad graph JSON: {e}")))?;
    Graph::try_from(j)
}

/// Canonical content hash: SHA-256 over the compact JSON encoding with the
/// name stripped, so renaming a graph does not change its identity.
pub fn canonical_hash(g: &Graph) -> String {
    let j = GraphJson {
        name: None,
        vertices: g.vertices().to_vec(),
        edges: g.edges(),
    };
    let bytes = serde_json::to_vec(&j).expect("graph serialization cannot fail");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Text form of a coloring plus clique certificate:
/// one `v <vertex> <color>` line per vertex, then `q <members...>`.
pub fn write_coloring<W: Write>(
    coloring: &Coloring,
    clique: &CliqueWitness,
    writer: &mut W,
) -> Result<()> {
    for (v, c) in coloring.iter() {
        writeln!(writer, "v {v} {c}")?;
    }
    let members: Vec<String> = clique.members().iter().map(|v| v.to_string()).collect();
    writeln!(writer, "q {}", members.join(" "))?;
    Ok(())
}

pub fn read_coloring<R: BufRead>(reader: R) -> Result<(Coloring, CliqueWitness)> {
    let mut assignment = std::collections::BTreeMap::new();
    let mut clique: Option<VertSet> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let parse_err = |msg: &str| Error::Parse {
            line: lineno,
            msg: msg.to_string(),
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let v: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("bad vertex"))?;
                let c: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err("bad color"))?;
                if assignment.insert(v, c).is_some() {
                    return Err(parse_err("vertex colored twice"));
                }
            }
            Some("q") => {
                if clique.is_some() {
                    return Err(parse_err("duplicate clique line"));
                }
                let members: Vec<usize> = tokens
                    .map(|t| t.parse().map_err(|_| parse_err("bad clique member")))
                    .collect::<std::result::Result<_, _>>()?;
                clique = Some(VertSet::try_from(members).map_err(Error::invalid)?);
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown line type `{other}`"),
                });
            }
            None => unreachable!(),
        }
    }
    let clique = clique.ok_or_else(|| Error::invalid("missing clique line"))?;
    Ok((
        Coloring::from_assignment(assignment)?,
        CliqueWitness::new(clique),
    ))
}
