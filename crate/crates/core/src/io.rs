//! Line-oriented text formats.
//!
//! Every format is UTF-8, whitespace separated, with blank lines and lines
//! starting with `#` ignored. Node ids are 0-based.
//!
//! | file       | line            |
//! |------------|-----------------|
//! | edge list  | `u v`           |
//! | coords     | `x y` per node  |
//! | signal     | `value` per node|
//! | samples    | `node value`    |
//! | partition  | `node community`|
//!
//! An edge list may carry a `# nodes: N` header to fix the node count;
//! otherwise it is one more than the largest index seen.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::clustering::Partition;
use crate::error::{Error, Result};
use crate::gbf::SampleSet;
use crate::graph::{Graph, Point};
use crate::spectral::Signal;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let t = line.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, t))
    })
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn fields<T: FromStr, const K: usize>(path: &Path, line: usize, text: &str) -> Result<[T; K]> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != K {
        return Err(parse_error(
            path,
            line,
            format!("expected {K} fields, found {}", parts.len()),
        ));
    }
    let mut out = Vec::with_capacity(K);
    for p in parts {
        out.push(
            p.parse::<T>()
                .map_err(|_| parse_error(path, line, format!("cannot parse {p:?}")))?,
        );
    }
    out.try_into()
        .map_err(|_| parse_error(path, line, "field count"))
}

fn node_header(text: &str) -> Option<usize> {
    text.lines()
        .map(str::trim)
        .filter_map(|l| l.strip_prefix('#'))
        .find_map(|rest| {
            let rest = rest.trim().strip_prefix("nodes")?;
            rest.trim_start_matches(':').trim().parse().ok()
        })
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    let mut edges = Vec::new();
    let mut max_index = None;
    for (line, t) in data_lines(&text) {
        let [u, v] = fields::<usize, 2>(path, line, t)?;
        if u == v {
            return Err(parse_error(path, line, format!("loop edge at node {u}")));
        }
        max_index = max_index.max(Some(u.max(v)));
        edges.push((u, v));
    }
    let n = match (node_header(&text), max_index) {
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => return Err(parse_error(path, 0, "no edges and no `# nodes` header")),
    };
    Graph::new(n, edges)
}

pub fn read_coords(path: &Path) -> Result<Vec<Point>> {
    let text = read(path)?;
    data_lines(&text)
        .map(|(line, t)| fields::<f64, 2>(path, line, t))
        .collect()
}

/// Loads an edge list and, optionally, node coordinates.
pub fn load_graph(edge_path: &Path, coords_path: Option<&Path>) -> Result<Graph> {
    let g = read_edge_list(edge_path)?;
    match coords_path {
        Some(p) => g.with_coords(read_coords(p)?),
        None => Ok(g),
    }
}

pub fn write_edge_list(g: &Graph, path: &Path) -> Result<()> {
    let mut s = format!("# nodes: {}\n", g.node_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    write(path, &s)
}

pub fn write_coords(coords: &[Point], path: &Path) -> Result<()> {
    let mut s = String::new();
    for [x, y] in coords {
        let _ = writeln!(s, "{x:e} {y:e}");
    }
    write(path, &s)
}

pub fn read_signal(path: &Path) -> Result<Signal> {
    let text = read(path)?;
    let values = data_lines(&text)
        .map(|(line, t)| fields::<f64, 1>(path, line, t).map(|[v]| v))
        .collect::<Result<Vec<_>>>()?;
    Ok(Signal::from(values))
}

/// Values are written in shortest round-trip form, so a reload is bit-exact.
pub fn write_signal(signal: &Signal, path: &Path) -> Result<()> {
    let mut s = String::new();
    for v in signal.iter() {
        let _ = writeln!(s, "{v:e}");
    }
    write(path, &s)
}

pub fn read_samples(path: &Path, n: usize) -> Result<SampleSet> {
    let text = read(path)?;
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    for (line, t) in data_lines(&text) {
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(parse_error(path, line, "expected `node value`"));
        }
        let node: usize = parts[0]
            .parse()
            .map_err(|_| parse_error(path, line, format!("bad node id {:?}", parts[0])))?;
        let value: f64 = parts[1]
            .parse()
            .map_err(|_| parse_error(path, line, format!("bad value {:?}", parts[1])))?;
        nodes.push(node);
        values.push(value);
    }
    SampleSet::new(nodes, values, n)
}

pub fn write_samples(samples: &SampleSet, path: &Path) -> Result<()> {
    let mut s = String::new();
    for (w, v) in samples.nodes().iter().zip(samples.values()) {
        let _ = writeln!(s, "{w} {v:e}");
    }
    write(path, &s)
}

/// Reads a `node community` file; community ids are densified to `0..J`
/// in ascending order of the original ids.
pub fn import_partition(path: &Path, n: usize) -> Result<Partition> {
    let text = read(path)?;
    let mut labels: Vec<Option<usize>> = vec![None; n];
    for (line, t) in data_lines(&text) {
        let [node, community] = fields::<usize, 2>(path, line, t)?;
        if node >= n {
            return Err(Error::IndexOutOfRange { index: node, n });
        }
        if labels[node].replace(community).is_some() {
            return Err(Error::DuplicateNode(node));
        }
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or(Error::MissingNode(v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_labels(&labels))
}

pub fn write_partition(p: &Partition, path: &Path) -> Result<()> {
    let mut s = String::new();
    for (v, c) in p.labels().iter().enumerate() {
        let _ = writeln!(s, "{v} {c}");
    }
    write(path, &s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn edge_list_basics() {
        let dir = tempfile::tempdir().unwrap();
        let g = read_edge_list(&file(&dir, "p3", "0 1\n1 2")).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);

        let g = read_edge_list(&file(&dir, "c", "# a comment\n\n0 1\n# more\n1 2\n")).unwrap();
        assert_eq!(g.edge_count(), 2);

        let g = read_edge_list(&file(&dir, "h", "# nodes: 5\n0 1\n")).unwrap();
        assert_eq!(g.node_count(), 5);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let err = read_edge_list(&file(&dir, "bad", "0 1\n# c\n1 x\n")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = read_edge_list(&file(&dir, "loop", "0 0\n")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn coordinate_count_must_match() {
        let dir = tempfile::tempdir().unwrap();
        let edges = file(&dir, "e", "0 1\n1 2\n");
        let coords = file(&dir, "xy", "0 0\n1 0\n");
        assert!(matches!(
            load_graph(&edges, Some(&coords)),
            Err(Error::CoordCountMismatch {
                expected: 3,
                found: 2
            })
        ));
        let coords = file(&dir, "xy3", "# x y\n0 0\n1 0\n2.5 -1e-3\n");
        let g = load_graph(&edges, Some(&coords)).unwrap();
        assert_eq!(g.coords().unwrap()[2], [2.5, -1e-3]);
    }

    #[test]
    fn partition_import_contract() {
        let dir = tempfile::tempdir().unwrap();
        let p = import_partition(&file(&dir, "a", "0 0\n1 0\n2 1\n"), 3).unwrap();
        assert_eq!(p.labels(), &[0, 0, 1]);
        assert_eq!(p.community_count(), 2);

        let p = import_partition(&file(&dir, "b", "2 9\n0 5\n1 9\n"), 3).unwrap();
        assert_eq!(p.labels(), &[0, 1, 1]);

        assert!(matches!(
            import_partition(&file(&dir, "c", "0 0\n1 0\n"), 3),
            Err(Error::MissingNode(2))
        ));
        assert!(matches!(
            import_partition(&file(&dir, "d", "0 0\n1 0\n1 1\n2 0\n"), 3),
            Err(Error::DuplicateNode(1))
        ));
    }

    #[test]
    fn signal_reload_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sig");
        let s = Signal::from(vec![0.1, -1.0 / 3.0, 1e-300, 12345.678]);
        write_signal(&s, &p).unwrap();
        assert_eq!(read_signal(&p).unwrap(), s);
    }
}
