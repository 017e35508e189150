//! Instance file formats shared by every subcommand.
//!
//! Partite instances: (a) JSON `{t, k, classSizes, edges: [["c1.v2", ...]]}`
//! with 1-based `c<i>.v<j>` vertex ids; (b) plain edge list with header
//! `t k n1 n2 ... nt` and one space-separated edge per line. General
//! (non-partite) `k`-graphs use the same grammar with an `n k` header and
//! 1-based integer vertex ids. Parsers reject illegal edges with line
//! numbers.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::hypergraph::{PartiteHypergraph, Vertex};
use crate::partition::GeneralHypergraph;

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct PartiteJson {
    t: usize,
    k: usize,
    class_sizes: Vec<u32>,
    edges: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneralJson {
    n: u32,
    k: usize,
    edges: Vec<Vec<u32>>,
}

/// Serialises a partite instance to the canonical JSON form (stable byte
/// output for a given instance).
pub fn partite_to_json(h: &PartiteHypergraph) -> String {
    let doc = PartiteJson {
        t: h.t(),
        k: h.k(),
        class_sizes: h.class_sizes().to_vec(),
        edges: h
            .edges()
            .iter()
            .map(|e| e.vertices().iter().map(|v| v.to_string()).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("instance JSON never fails")
}

pub fn partite_from_json(text: &str) -> Result<PartiteHypergraph, Error> {
    let doc: PartiteJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, edge) in doc.edges.iter().enumerate() {
        let mut verts = Vec::with_capacity(edge.len());
        for id in edge {
            verts.push(id.parse::<Vertex>().map_err(|msg| Error::Parse {
                // JSON carries no per-edge line info once parsed; report the
                // edge ordinal instead.
                line: i + 1,
                msg,
            })?);
        }
        edges.push(verts);
    }
    PartiteHypergraph::new(doc.t, doc.k, doc.class_sizes, edges)
}

/// Plain edge-list form: `t k n1 ... nt` header, then one edge per line.
pub fn partite_to_edgelist(h: &PartiteHypergraph) -> String {
    let mut out = format!("{} {}", h.t(), h.k());
    for s in h.class_sizes() {
        out.push(' ');
        out.push_str(&s.to_string());
    }
    out.push('\n');
    for e in h.edges() {
        let ids: Vec<String> = e.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn partite_from_edgelist(text: &str) -> Result<PartiteHypergraph, Error> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 {
        return Err(Error::Parse {
            line: 1,
            msg: "header must be `t k n1 ... nt`".into(),
        });
    }
    let t: usize = fields[0].parse().map_err(|_| Error::Parse {
        line: 1,
        msg: format!("bad t `{}`", fields[0]),
    })?;
    let k: usize = fields[1].parse().map_err(|_| Error::Parse {
        line: 1,
        msg: format!("bad k `{}`", fields[1]),
    })?;
    if fields.len() != 2 + t {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected {} class sizes, found {}", t, fields.len() - 2),
        });
    }
    let mut class_sizes = Vec::with_capacity(t);
    for f in &fields[2..] {
        class_sizes.push(f.parse::<u32>().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("bad class size `{f}`"),
        })?);
    }
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let mut verts = Vec::new();
        for id in line.split_whitespace() {
            verts.push(id.parse::<Vertex>().map_err(|msg| Error::Parse {
                line: lineno + 1,
                msg,
            })?);
        }
        edges.push(verts);
    }
    PartiteHypergraph::new(t, k, class_sizes, edges)
}

pub fn general_to_json(h: &GeneralHypergraph) -> String {
    let doc = GeneralJson {
        n: h.n(),
        k: h.k(),
        edges: h
            .edges()
            .iter()
            .map(|e| e.iter().map(|&v| v + 1).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("instance JSON never fails")
}

pub fn general_from_json(text: &str) -> Result<GeneralHypergraph, Error> {
    let doc: GeneralJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, e) in doc.edges.iter().enumerate() {
        edges.push(parse_general_edge(e, doc.n, i + 1)?);
    }
    GeneralHypergraph::new(doc.n, doc.k, edges)
}

/// General edge-list form: `n k` header, then 1-based integer ids.
pub fn general_to_edgelist(h: &GeneralHypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.k());
    for e in h.edges() {
        let ids: Vec<String> = e.iter().map(|&v| (v + 1).to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn general_from_edgelist(text: &str) -> Result<GeneralHypergraph, Error> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line: 1,
            msg: "header must be `n k`".into(),
        });
    }
    let n: u32 = fields[0].parse().map_err(|_| Error::Parse {
        line: 1,
        msg: format!("bad n `{}`", fields[0]),
    })?;
    let k: usize = fields[1].parse().map_err(|_| Error::Parse {
        line: 1,
        msg: format!("bad k `{}`", fields[1]),
    })?;
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let mut raw = Vec::new();
        for id in line.split_whitespace() {
            raw.push(id.parse::<u32>().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("bad vertex id `{id}`"),
            })?);
        }
        edges.push(parse_general_edge(&raw, n, lineno + 1)?);
    }
    GeneralHypergraph::new(n, k, edges)
}

fn parse_general_edge(raw: &[u32], n: u32, line: usize) -> Result<Vec<u32>, Error> {
    let mut edge = Vec::with_capacity(raw.len());
    for &id in raw {
        if id == 0 || id > n {
            return Err(Error::Parse {
                line,
                msg: format!("vertex id {id} outside 1..={n}"),
            });
        }
        edge.push(id - 1);
    }
    Ok(edge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::complete_partite;

    #[test]
    fn partite_json_round_trip() {
        let h = complete_partite(3, 2, 2).unwrap();
        let text = partite_to_json(&h);
        let back = partite_from_json(&text).unwrap();
        assert_eq!(back.edges(), h.edges());
        assert_eq!(back.class_sizes(), h.class_sizes());
    }

    #[test]
    fn partite_edgelist_round_trip() {
        let h = complete_partite(3, 2, 2).unwrap();
        let text = partite_to_edgelist(&h);
        assert!(text.starts_with("3 2 2 2 2\n"));
        let back = partite_from_edgelist(&text).unwrap();
        assert_eq!(back.edges(), h.edges());
    }

    #[test]
    fn illegal_edge_rejected_with_line() {
        let text = "3 2 2 2 2\nc1.v1 c1.v2\n";
        match partite_from_edgelist(text) {
            Err(Error::Invalid(report)) => assert!(!report.is_ok()),
            other => panic!("expected invalid-instance error, got {other:?}"),
        }
        let text = "3 2 2 2 2\nc1.v1 c9.vx\n";
        match partite_from_edgelist(text) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected parse error on line 2, got {other:?}"),
        }
    }

    #[test]
    fn general_round_trip_and_bounds() {
        let h = GeneralHypergraph::new(5, 3, vec![vec![0, 1, 2], vec![1, 2, 4]]).unwrap();
        let back = general_from_edgelist(&general_to_edgelist(&h)).unwrap();
        assert_eq!(back.edges(), h.edges());
        let back = general_from_json(&general_to_json(&h)).unwrap();
        assert_eq!(back.edges(), h.edges());

        assert!(matches!(
            general_from_edgelist("5 3\n1 2 9\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
