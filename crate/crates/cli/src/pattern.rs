//! Pattern specs: the built-in catalog (K_r, C_k, P_k) or a graph file.
//!
//! `K3`, `k_3`, `C4`, `P4` name catalog graphs (P_k has k vertices);
//! anything else is read as a path in the graph file format.

use anyhow::{bail, Context, Result};
use berge_core::graph::Graph;
use berge_core::io;

pub fn parse_pattern(spec: &str) -> Result<Graph> {
    if let Some(graph) = catalog(spec)? {
        return Ok(graph);
    }
    io::load_graph(spec).with_context(|| format!("reading pattern graph from {:?}", spec))
}

fn catalog(spec: &str) -> Result<Option<Graph>> {
    let s = spec.trim();
    let mut chars = s.chars();
    let family = match chars.next() {
        Some(c) => c.to_ascii_uppercase(),
        None => bail!("empty pattern spec"),
    };
    if !matches!(family, 'K' | 'C' | 'P') {
        return Ok(None);
    }
    let rest: &str = chars.as_str();
    let digits = rest.strip_prefix('_').unwrap_or(rest);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Ok(None);
    }
    let k: usize = digits.parse()?;
    let graph = match family {
        'K' => {
            if k == 0 {
                bail!("K_0 has no vertices");
            }
            Graph::complete(k)
        }
        'C' => Graph::cycle(k).with_context(|| format!("bad catalog pattern {:?}", s))?,
        'P' => Graph::path(k).with_context(|| format!("bad catalog pattern {:?}", s))?,
        _ => unreachable!(),
    };
    Ok(Some(graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names() {
        assert_eq!(parse_pattern("K3").unwrap().edge_count(), 3);
        assert_eq!(parse_pattern("K_4").unwrap().edge_count(), 6);
        assert_eq!(parse_pattern("k3").unwrap().edge_count(), 3);
        let c4 = parse_pattern("C4").unwrap();
        assert_eq!((c4.n(), c4.edge_count()), (4, 4));
        let p4 = parse_pattern("P4").unwrap();
        assert_eq!((p4.n(), p4.edge_count()), (4, 3));
    }

    #[test]
    fn bad_catalog_entries() {
        assert!(parse_pattern("C2").is_err());
        assert!(parse_pattern("K0").is_err());
        // not catalog shaped: treated as a missing file
        assert!(parse_pattern("Q5").is_err());
        assert!(parse_pattern("K3x").is_err());
    }

    #[test]
    fn file_fallback() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pattern.g");
        std::fs::write(&path, "n=3\n0 1\n1 2\n").unwrap();
        let g = parse_pattern(path.to_str().unwrap()).unwrap();
        assert_eq!(g.edge_count(), 2);
    }
}
