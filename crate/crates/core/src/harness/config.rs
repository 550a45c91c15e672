//! `key = value` experiment configuration.
//!
//! ```text
//! # 20x20 lattice, two built-in clusterers and one imported partition
//! generator = grid
//! rows = 20
//! cols = 20
//! method = greedy, spectral, AMIL
//! partition_file = amil.txt
//! jmin = 2
//! jmax = 12
//! N = 100
//! R = 4
//! eps = 0.001
//! s = 2
//! seed = 0
//! out = results.csv
//! ```
//!
//! `method` is a comma-separated list. `greedy`, `spectral` and `filtered`
//! are built in; any other label names an external partition, read from the
//! matching entry of the comma-separated `partition_file` list. Relative
//! paths resolve against the config file's directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::clustering::{ClusterMethod, DEFAULT_T_MAX};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Files {
        edges: PathBuf,
        coords: Option<PathBuf>,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    Geometric {
        n: usize,
        radius: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum MethodKind {
    Builtin(ClusterMethod),
    Import(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    pub label: String,
    pub kind: MethodKind,
}

impl MethodSpec {
    pub fn builtin(method: ClusterMethod) -> Self {
        Self {
            label: method.name().to_string(),
            kind: MethodKind::Builtin(method),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub methods: Vec<MethodSpec>,
    pub jmin: usize,
    /// `None` means up to [`DEFAULT_JMAX`], capped at the node count.
    pub jmax: Option<usize>,
    pub samples: usize,
    pub features: usize,
    pub t_max: usize,
    pub radius: usize,
    pub epsilon: f64,
    pub exponent: f64,
    pub signal_count: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// When false, `wall_time_ms` is written as 0 so reports are byte-reproducible.
    pub timing: bool,
}

pub const DEFAULT_JMAX: usize = 20;
pub const DEFAULT_FEATURES: usize = 2000;

impl ExperimentConfig {
    pub fn new(graph: GraphSource, methods: Vec<MethodSpec>, samples: usize) -> Self {
        Self {
            graph,
            methods,
            jmin: 1,
            jmax: None,
            samples,
            features: DEFAULT_FEATURES,
            t_max: DEFAULT_T_MAX,
            radius: 8,
            epsilon: 1e-3,
            exponent: 2.0,
            signal_count: 10,
            seed: 0,
            out: None,
            timing: true,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(Error::Config(format!("line {}: unknown key {k:?}", i + 1)));
            }
            if kv.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key {k:?}", i + 1)));
            }
        }
        let resolve = |p: &str| {
            let p = Path::new(p);
            if p.is_absolute() {
                p.to_path_buf()
            } else {
                base.join(p)
            }
        };
        let get = |k: &str| kv.get(k).map(String::as_str);
        fn num<T: std::str::FromStr>(k: &str, v: Option<&str>) -> Result<Option<T>> {
            v.map(|s| {
                s.parse()
                    .map_err(|_| Error::Config(format!("{k}: cannot parse {s:?}")))
            })
            .transpose()
        }
        let required = |k: &str| -> Result<&str> {
            get(k).ok_or_else(|| Error::Config(format!("missing key {k:?}")))
        };

        let graph = match (get("graph"), get("generator")) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("set either `graph` or `generator`, not both".into()))
            }
            (Some(edges), None) => GraphSource::Files {
                edges: resolve(edges),
                coords: get("coords").map(resolve),
            },
            (None, Some("grid")) => GraphSource::Grid {
                rows: num("rows", Some(required("rows")?))?.unwrap_or(0),
                cols: num("cols", Some(required("cols")?))?.unwrap_or(0),
            },
            (None, Some("geometric")) => GraphSource::Geometric {
                n: num("n", Some(required("n")?))?.unwrap_or(0),
                radius: num("radius", Some(required("radius")?))?.unwrap_or(0.0),
            },
            (None, Some(other)) => {
                return Err(Error::Config(format!("unknown generator {other:?}")))
            }
            (None, None) => return Err(Error::Config("missing `graph` or `generator`".into())),
        };

        let t_max = num("tmax", get("tmax"))?.unwrap_or(DEFAULT_T_MAX);
        let mut files = get("partition_file")
            .map(|s| s.split(',').map(|p| resolve(p.trim())).collect::<Vec<_>>())
            .unwrap_or_default()
            .into_iter();
        let mut methods = Vec::new();
        for label in required("method")?.split(',').map(str::trim) {
            if label.is_empty() {
                return Err(Error::Config("empty method label".into()));
            }
            let kind = match label.parse::<ClusterMethod>() {
                Ok(ClusterMethod::Filtered { .. }) => {
                    MethodKind::Builtin(ClusterMethod::Filtered { t_max })
                }
                Ok(m) => MethodKind::Builtin(m),
                Err(_) => MethodKind::Import(files.next().ok_or_else(|| {
                    Error::Config(format!("method {label:?} needs a partition_file entry"))
                })?),
            };
            methods.push(MethodSpec {
                label: label.to_string(),
                kind,
            });
        }
        if files.next().is_some() {
            return Err(Error::Config("more partition files than external methods".into()));
        }

        let mut cfg = ExperimentConfig::new(graph, methods, num("N", Some(required("N")?))?.unwrap_or(0));
        cfg.t_max = t_max;
        if let Some(v) = num("jmin", get("jmin"))? {
            cfg.jmin = v;
        }
        cfg.jmax = num("jmax", get("jmax"))?;
        if let Some(v) = num("k", get("k"))? {
            cfg.features = v;
        }
        if let Some(v) = num("R", get("R"))? {
            cfg.radius = v;
        }
        if let Some(v) = num("eps", get("eps"))? {
            cfg.epsilon = v;
        }
        if let Some(v) = num("s", get("s"))? {
            cfg.exponent = v;
        }
        if let Some(v) = num("signal_count", get("signal_count"))? {
            cfg.signal_count = v;
        }
        if let Some(v) = num("seed", get("seed"))? {
            cfg.seed = v;
        }
        cfg.out = get("out").map(resolve);
        cfg.timing = match get("timing") {
            None | Some("on") | Some("true") => true,
            Some("off") | Some("false") => false,
            Some(other) => return Err(Error::Config(format!("timing: expected on/off, got {other:?}"))),
        };
        cfg.validate_static()?;
        Ok(cfg)
    }

    /// Checks that do not need the graph.
    pub fn validate_static(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Config("no methods".into()));
        }
        if self.methods.iter().any(|m| m.label.contains(',')) {
            return Err(Error::Config("method labels may not contain commas".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("N must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::Config("eps must be positive".into()));
        }
        if self.jmin == 0 {
            return Err(Error::Config("jmin must be at least 1".into()));
        }
        if self.jmax.is_some_and(|j| j < self.jmin) {
            return Err(Error::Config("jmax must be at least jmin".into()));
        }
        if self.t_max == 0 || self.features == 0 {
            return Err(Error::Config("tmax and k must be at least 1".into()));
        }
        Ok(())
    }
}

const KEYS: &[&str] = &[
    "graph",
    "coords",
    "generator",
    "rows",
    "cols",
    "n",
    "radius",
    "method",
    "partition_file",
    "jmin",
    "jmax",
    "N",
    "k",
    "tmax",
    "R",
    "eps",
    "s",
    "signal_count",
    "seed",
    "out",
    "timing",
];
