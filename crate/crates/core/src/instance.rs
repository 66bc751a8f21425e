//! Instance families and their string descriptors.
//!
//! | descriptor                 | instance                                           |
//! |----------------------------|----------------------------------------------------|
//! | `cycle:R:LEN`              | linear `R`-uniform cycle on `LEN(R-1)` vertices    |
//! | `hypertree:R:M:SEED`       | random leaf-attached linear `R`-uniform hypertree  |
//! | `complete:N[:singletons]`  | all edges of size at least 2 (or 1) on `N` vertices |
//! | `theta:R:L1:L2`            | two internally disjoint paths between two anchors  |
//! | `join:P:INNER`             | `INNER ∨ K_P`                                      |
//! | `random:N:M:SEED`          | `M` distinct random edges of size 2..=4            |
//! | `edges:1-2-3,3-4`          | the listed edges                                   |
//! | `file:PATH`                | a text-format file                                 |

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::format::{parse_hypergraph, Labels};
use crate::hypergraph::{Hypergraph, VertexId};

const MAX_COMPLETE_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InstanceSpec {
    Cycle { r: usize, len: usize },
    Hypertree { r: usize, m: usize, seed: u64 },
    Complete { n: usize, singletons: bool },
    Theta { r: usize, len1: usize, len2: usize },
    Join { p: usize, inner: Box<InstanceSpec> },
    Random { n: usize, m: usize, seed: u64 },
    Edges(Vec<Vec<VertexId>>),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub hypergraph: Hypergraph,
    pub labels: Labels,
}

impl Instance {
    pub fn descriptor(&self) -> String {
        self.spec.to_string()
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn num<T: FromStr>(field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| invalid(format!("{what}: expected an integer, got {field:?}")))
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let fields: Vec<&str> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(':').collect()
        };
        let arity = |n: usize| -> Result<()> {
            if fields.len() == n {
                Ok(())
            } else {
                Err(invalid(format!("{name} takes {n} parameters: {s:?}")))
            }
        };
        match name {
            "cycle" => {
                arity(2)?;
                Ok(InstanceSpec::Cycle {
                    r: num(fields[0], "r")?,
                    len: num(fields[1], "len")?,
                })
            }
            "hypertree" => {
                arity(3)?;
                Ok(InstanceSpec::Hypertree {
                    r: num(fields[0], "r")?,
                    m: num(fields[1], "m")?,
                    seed: num(fields[2], "seed")?,
                })
            }
            "complete" => match fields.as_slice() {
                [n] => Ok(InstanceSpec::Complete {
                    n: num(n, "n")?,
                    singletons: false,
                }),
                [n, "singletons"] => Ok(InstanceSpec::Complete {
                    n: num(n, "n")?,
                    singletons: true,
                }),
                _ => Err(invalid(format!("complete takes N[:singletons]: {s:?}"))),
            },
            "theta" => {
                arity(3)?;
                Ok(InstanceSpec::Theta {
                    r: num(fields[0], "r")?,
                    len1: num(fields[1], "len1")?,
                    len2: num(fields[2], "len2")?,
                })
            }
            "join" => {
                let (p, inner) = rest
                    .split_once(':')
                    .ok_or_else(|| invalid(format!("join takes P:INNER: {s:?}")))?;
                Ok(InstanceSpec::Join {
                    p: num(p, "p")?,
                    inner: Box::new(inner.parse()?),
                })
            }
            "random" => {
                arity(3)?;
                Ok(InstanceSpec::Random {
                    n: num(fields[0], "n")?,
                    m: num(fields[1], "m")?,
                    seed: num(fields[2], "seed")?,
                })
            }
            "edges" => {
                let edges = rest
                    .split(',')
                    .filter(|e| !e.is_empty())
                    .map(|e| e.split('-').map(|v| num(v, "vertex")).collect())
                    .collect::<Result<Vec<Vec<VertexId>>>>()?;
                Ok(InstanceSpec::Edges(edges))
            }
            "file" if !rest.is_empty() => Ok(InstanceSpec::File(PathBuf::from(rest))),
            _ => Err(invalid(format!("unknown generator {s:?}"))),
        }
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::Cycle { r, len } => write!(f, "cycle:{r}:{len}"),
            InstanceSpec::Hypertree { r, m, seed } => write!(f, "hypertree:{r}:{m}:{seed}"),
            InstanceSpec::Complete { n, singletons } => {
                write!(
                    f,
                    "complete:{n}{}",
                    if *singletons { ":singletons" } else { "" }
                )
            }
            InstanceSpec::Theta { r, len1, len2 } => write!(f, "theta:{r}:{len1}:{len2}"),
            InstanceSpec::Join { p, inner } => write!(f, "join:{p}:{inner}"),
            InstanceSpec::Random { n, m, seed } => write!(f, "random:{n}:{m}:{seed}"),
            InstanceSpec::Edges(edges) => {
                let es: Vec<String> = edges
                    .iter()
                    .map(|e| {
                        e.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join("-")
                    })
                    .collect();
                write!(f, "edges:{}", es.join(","))
            }
            InstanceSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Linear uniform cycle: edge `i` holds vertices `i(r-1) ..= i(r-1) + r - 1`
/// modulo `len(r-1)`.
pub fn cycle(r: usize, len: usize) -> Result<Hypergraph> {
    if r < 2 || len < 2 || (r == 2 && len < 3) {
        return Err(invalid(
            "cycle needs r >= 2 and len >= 3 (len >= 2 when r >= 3)",
        ));
    }
    let n = len * (r - 1);
    let edges = (0..len).map(|i| (0..r).map(move |j| ((i * (r - 1) + j) % n) as VertexId));
    Hypergraph::new(0..n as VertexId, edges)
}

/// Starts from one edge and attaches each further edge at a uniformly
/// chosen existing vertex with `r - 1` fresh vertices.
pub fn hypertree(r: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    if r < 2 || m < 1 {
        return Err(invalid("hypertree needs r >= 2 and m >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<VertexId>> = vec![(0..r as VertexId).collect()];
    let mut next = r as VertexId;
    for _ in 1..m {
        let attach = rng.gen_range(0..next);
        let mut e = vec![attach];
        e.extend(next..next + r as VertexId - 1);
        next += r as VertexId - 1;
        edges.push(e);
    }
    Hypergraph::new(0..next, edges)
}

pub fn complete(n: usize, singletons: bool) -> Result<Hypergraph> {
    if n == 0 || n > MAX_COMPLETE_N {
        return Err(invalid(format!(
            "complete needs 1 <= n <= {MAX_COMPLETE_N}"
        )));
    }
    let min = if singletons { 1 } else { 2 };
    let edges = (1u32..1 << n)
        .filter(|s| s.count_ones() >= min)
        .map(|s| (0..n as VertexId).filter(move |&v| s >> v & 1 == 1));
    Hypergraph::with_singletons(0..n as VertexId, edges)
}

/// Two internally disjoint linear `r`-uniform paths of lengths `len1`,
/// `len2` between anchors `0` and `1`; together they are a cycle of length
/// `len1 + len2`, and every edge has `ℓ(e) = len1 + len2`.
pub fn theta(r: usize, len1: usize, len2: usize) -> Result<Hypergraph> {
    if r < 2 || len1 < 1 || len2 < 1 || (r == 2 && len1 + len2 < 3) {
        return Err(invalid(
            "theta needs r >= 2, both lengths >= 1 and a simple result",
        ));
    }
    let mut next: VertexId = 2;
    let mut edges = Vec::new();
    for len in [len1, len2] {
        let mut prev: VertexId = 0;
        for step in 0..len {
            let joint = if step + 1 == len {
                1
            } else {
                next += 1;
                next - 1
            };
            let mut e = vec![prev, joint];
            e.extend(next..next + r as VertexId - 2);
            next += r as VertexId - 2;
            edges.push(e);
            prev = joint;
        }
    }
    Hypergraph::new(0..next, edges)
}

/// `m` distinct edges of sizes `2..=min(n, 4)` on `n` vertices.
pub fn random(n: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    if n < 2 && m > 0 {
        return Err(invalid("random edges need n >= 2"));
    }
    let max_size = n.min(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<VertexId>> = Vec::new();
    let mut attempts = 0;
    while edges.len() < m {
        attempts += 1;
        if attempts > 1000 * (m + 1) {
            return Err(invalid(format!(
                "could not draw {m} distinct edges on {n} vertices"
            )));
        }
        let size = rng.gen_range(2..=max_size);
        let mut e: Vec<VertexId> = sample(&mut rng, n, size)
            .into_iter()
            .map(|v| v as VertexId)
            .collect();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(0..n as VertexId, edges)
}

impl InstanceSpec {
    pub fn generate(&self) -> Result<Instance> {
        self.generate_with(false)
    }

    /// As [`InstanceSpec::generate`]; `infer_vertices` applies to files.
    pub fn generate_with(&self, infer_vertices: bool) -> Result<Instance> {
        let (hypergraph, labels) = match self {
            InstanceSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                let parsed = parse_hypergraph(&text, infer_vertices)?;
                (parsed.hypergraph, parsed.labels)
            }
            other => {
                let h = other.build()?;
                let labels = Labels::numeric(&h);
                (h, labels)
            }
        };
        Ok(Instance {
            spec: self.clone(),
            hypergraph,
            labels,
        })
    }

    fn build(&self) -> Result<Hypergraph> {
        match self {
            InstanceSpec::Cycle { r, len } => cycle(*r, *len),
            InstanceSpec::Hypertree { r, m, seed } => hypertree(*r, *m, *seed),
            InstanceSpec::Complete { n, singletons } => complete(*n, *singletons),
            InstanceSpec::Theta { r, len1, len2 } => theta(*r, *len1, *len2),
            InstanceSpec::Join { p, inner } => inner.generate()?.hypergraph.join_clique(*p),
            InstanceSpec::Random { n, m, seed } => random(*n, *m, *seed),
            InstanceSpec::Edges(edges) => Hypergraph::from_edges(edges.clone()),
            InstanceSpec::File(_) => unreachable!("handled by generate"),
        }
    }
}
