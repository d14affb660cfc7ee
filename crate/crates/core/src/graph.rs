//! Simple connected graphs, the four test families, and the symmetric digraph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple connected graph on vertices `1..=n`.
///
/// Edges are stored as `(u, v)` with `u < v`, in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degree: Vec<usize>,
}

impl Graph {
    /// Builds and validates a graph from 1-based edge pairs.
    ///
    /// Rejects loops, repeated edges, out-of-range labels and disconnected input.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("graph has no vertices".into()));
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::Validation(format!(
                    "edge {a}-{b} out of range 1..={n}"
                )));
            }
            if a == b {
                return Err(Error::Validation(format!("loop at vertex {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::Validation(format!("multiple edge {a}-{b}")));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut degree = vec![0; n];
        for &(a, b) in &edges {
            degree[a - 1] += 1;
            degree[b - 1] += 1;
        }
        let g = Self { n, edges, degree };
        if !g.is_connected() {
            return Err(Error::Validation("graph is disconnected".into()));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree of the 1-based vertex `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.degree[v - 1]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    /// First Betti number `m - n + 1`.
    pub fn betti_number(&self) -> i64 {
        self.edge_count() as i64 - self.n as i64 + 1
    }

    pub fn min_degree(&self) -> usize {
        self.degree.iter().copied().min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a - 1].push(b - 1);
            adj[b - 1].push(a - 1);
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Serializes as an edge list accepted by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# n={} m={}\n", self.n, self.edge_count());
        for &(a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

/// Parses a line-oriented edge list: one `u v` pair per line, `#` comments,
/// blank lines ignored.
///
/// Labels may be arbitrary tokens; they are remapped to `1..=n` in order of
/// first appearance (numeric labels keep their numeric order when all labels
/// are integers).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected two vertex labels, found {}", parts.len()),
            });
        }
        raw.push((parts[0].to_string(), parts[1].to_string()));
    }
    if raw.is_empty() {
        return Err(Error::Validation("edge list is empty".into()));
    }

    let numeric = raw
        .iter()
        .all(|(a, b)| a.parse::<i64>().is_ok() && b.parse::<i64>().is_ok());
    let mut labels: BTreeMap<String, usize> = BTreeMap::new();
    if numeric {
        let mut values: Vec<i64> = raw
            .iter()
            .flat_map(|(a, b)| [a.parse().unwrap(), b.parse().unwrap()])
            .collect();
        values.sort_unstable();
        values.dedup();
        for (i, v) in values.iter().enumerate() {
            labels.insert(v.to_string(), i + 1);
        }
        // normalise spellings like "01"
        let canon = |s: &str| s.parse::<i64>().unwrap().to_string();
        raw = raw
            .into_iter()
            .map(|(a, b)| (canon(&a), canon(&b)))
            .collect();
    } else {
        for (a, b) in &raw {
            for l in [a, b] {
                let next = labels.len() + 1;
                labels.entry(l.clone()).or_insert(next);
            }
        }
    }
    let edges: Vec<(usize, usize)> = raw.iter().map(|(a, b)| (labels[a], labels[b])).collect();
    Graph::new(labels.len(), &edges)
}

/// The four graph families used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphFamily {
    Cycle { n: usize },
    Star { n: usize },
    Complete { n: usize },
    CompleteBipartite { n1: usize, n2: usize },
}

impl GraphFamily {
    pub fn generate(&self) -> Result<Graph> {
        generate_family(*self)
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Cycle { n } => write!(f, "cycle:{n}"),
            GraphFamily::Star { n } => write!(f, "star:{n}"),
            GraphFamily::Complete { n } => write!(f, "complete:{n}"),
            GraphFamily::CompleteBipartite { n1, n2 } => write!(f, "bipartite:{n1},{n2}"),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    /// Parses the `name:params` mini-grammar, e.g. `cycle:5`, `bipartite:2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("bad family spec {s:?}"));
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = params
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let family = match (name.trim(), nums.as_slice()) {
            ("cycle" | "C", [n]) => GraphFamily::Cycle { n: *n },
            ("star" | "S", [n]) => GraphFamily::Star { n: *n },
            ("complete" | "K", [n]) => GraphFamily::Complete { n: *n },
            ("bipartite" | "complete_bipartite" | "Kb", [a, b]) => {
                GraphFamily::CompleteBipartite { n1: *a, n2: *b }
            }
            _ => return Err(bad()),
        };
        Ok(family)
    }
}

/// Canonical labelled member of a family.
///
/// The star has vertex 1 as centre; the bipartite parts are `1..=n1` and
/// `n1+1..=n1+n2`.
pub fn generate_family(family: GraphFamily) -> Result<Graph> {
    let range = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Validation(format!("{family}: {what}")))
        }
    };
    match family {
        GraphFamily::Cycle { n } => {
            range(n >= 3, "cycle needs n >= 3")?;
            let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
            Graph::new(n, &edges)
        }
        GraphFamily::Star { n } => {
            range(n >= 2, "star needs n >= 2")?;
            let edges: Vec<_> = (2..=n).map(|i| (1, i)).collect();
            Graph::new(n, &edges)
        }
        GraphFamily::Complete { n } => {
            range(n >= 2, "complete graph needs n >= 2")?;
            let mut edges = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    edges.push((a, b));
                }
            }
            Graph::new(n, &edges)
        }
        GraphFamily::CompleteBipartite { n1, n2 } => {
            range(n1 >= 1 && n2 >= 1, "bipartite parts need n1, n2 >= 1")?;
            let mut edges = Vec::new();
            for a in 1..=n1 {
                for b in n1 + 1..=n1 + n2 {
                    edges.push((a, b));
                }
            }
            Graph::new(n1 + n2, &edges)
        }
    }
}

/// A random connected graph on `n` vertices: a random spanning tree plus each
/// remaining pair with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Validation("random graph needs n >= 2".into()));
    }
    let mut edges = BTreeSet::new();
    for v in 2..=n {
        let parent = rng.random_range(1..v);
        edges.insert((parent, v));
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if !edges.contains(&(a, b)) && rng.random_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::new(n, &edges)
}

/// An arc `(o(e), t(e))` of the symmetric digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub origin: usize,
    pub terminus: usize,
}

/// The 2m arcs of the symmetric digraph with the inverse-arc involution.
///
/// Arc `2k` is `(u, v)` and arc `2k + 1` is `(v, u)` for the k-th edge `u < v`,
/// so the inverse of arc `i` is `i ^ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcTable {
    arcs: Vec<Arc>,
}

impl ArcTable {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, i: usize) -> Arc {
        self.arcs[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        i ^ 1
    }

    pub fn origin(&self, i: usize) -> usize {
        self.arcs[i].origin
    }

    pub fn terminus(&self, i: usize) -> usize {
        self.arcs[i].terminus
    }

    /// Arcs leaving the head of arc `i`, excluding its inverse.
    pub fn non_backtracking_successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let t = self.terminus(i);
        let inv = self.inverse(i);
        (0..self.len()).filter(move |&j| j != inv && self.origin(j) == t)
    }
}

pub fn symmetric_digraph(g: &Graph) -> ArcTable {
    let arcs = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| {
            [
                Arc {
                    origin: u,
                    terminus: v,
                },
                Arc {
                    origin: v,
                    terminus: u,
                },
            ]
        })
        .collect();
    ArcTable { arcs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("1 2\n2 3\n3 1").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert!(g.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn parses_single_edge_with_comments() {
        let g = parse_edge_list("# K_{1,1}\n\n1 2  # only edge\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_edge_list("1 2\n3 4"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(parse_edge_list("1 1"), Err(Error::Validation(_))));
        assert!(matches!(
            parse_edge_list("1 2\n2 1"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            parse_edge_list("1 2 3"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("# nothing"),
            Err(Error::Validation(_))
        ));
        assert!(Graph::new(0, &[]).is_err());
    }

    #[test]
    fn remaps_sparse_labels() {
        let g = parse_edge_list("10 20\n20 30").unwrap();
        assert_eq!(g.edges(), &[(1, 2), (2, 3)]);
        let g = parse_edge_list("a b\nb c\nc a").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn family_counts() {
        let c5 = generate_family(GraphFamily::Cycle { n: 5 }).unwrap();
        assert_eq!((c5.vertex_count(), c5.edge_count()), (5, 5));
        assert!(c5.degrees().iter().all(|&d| d == 2));

        let s4 = generate_family(GraphFamily::Star { n: 4 }).unwrap();
        assert_eq!((s4.vertex_count(), s4.edge_count()), (4, 3));
        assert_eq!(s4.degrees(), &[3, 1, 1, 1]);

        let k23 = generate_family(GraphFamily::CompleteBipartite { n1: 2, n2: 3 }).unwrap();
        assert_eq!((k23.vertex_count(), k23.edge_count()), (5, 6));

        for n in 2..9 {
            let k = generate_family(GraphFamily::Complete { n }).unwrap();
            assert_eq!(k.edge_count(), n * (n - 1) / 2);
            let s = generate_family(GraphFamily::Star { n }).unwrap();
            assert_eq!(s.edge_count(), n - 1);
        }
    }

    #[test]
    fn family_ranges() {
        assert!(generate_family(GraphFamily::Cycle { n: 2 }).is_err());
        assert!(generate_family(GraphFamily::Star { n: 1 }).is_err());
        assert!(generate_family(GraphFamily::Complete { n: 1 }).is_err());
        assert!(generate_family(GraphFamily::CompleteBipartite { n1: 0, n2: 3 }).is_err());
    }

    #[test]
    fn family_spec_grammar() {
        assert_eq!(
            "cycle:5".parse::<GraphFamily>().unwrap(),
            GraphFamily::Cycle { n: 5 }
        );
        assert_eq!(
            "bipartite:2,3".parse::<GraphFamily>().unwrap(),
            GraphFamily::CompleteBipartite { n1: 2, n2: 3 }
        );
        assert!("wheel:5".parse::<GraphFamily>().is_err());
        assert!("cycle".parse::<GraphFamily>().is_err());
        let f = GraphFamily::Complete { n: 4 };
        assert_eq!(f.to_string().parse::<GraphFamily>().unwrap(), f);
    }

    #[test]
    fn digraph_ordering() {
        let k11 = generate_family(GraphFamily::CompleteBipartite { n1: 1, n2: 1 }).unwrap();
        let a = symmetric_digraph(&k11);
        assert_eq!(
            a.arcs(),
            &[
                Arc {
                    origin: 1,
                    terminus: 2
                },
                Arc {
                    origin: 2,
                    terminus: 1
                }
            ]
        );
        assert_eq!(a.inverse(0), 1);

        let c3 = generate_family(GraphFamily::Cycle { n: 3 }).unwrap();
        assert_eq!(symmetric_digraph(&c3).len(), 6);

        let s4 = generate_family(GraphFamily::Star { n: 4 }).unwrap();
        let a = symmetric_digraph(&s4);
        assert_eq!(a.len(), 6);
        assert!(a.arcs().iter().all(|e| e.origin == 1 || e.terminus == 1));
    }

    proptest! {
        #[test]
        fn inverse_is_fixed_point_free_involution(seed in any::<u64>(), n in 2usize..9) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected(&mut rng, n, 0.4).unwrap();
            let a = symmetric_digraph(&g);
            prop_assert_eq!(a.len(), 2 * g.edge_count());
            for i in 0..a.len() {
                let j = a.inverse(i);
                prop_assert_ne!(i, j);
                prop_assert_eq!(a.inverse(j), i);
                prop_assert_eq!(a.origin(j), a.terminus(i));
                prop_assert_eq!(a.terminus(j), a.origin(i));
            }
        }

        #[test]
        fn edge_list_round_trip(seed in any::<u64>(), n in 2usize..9) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected(&mut rng, n, 0.3).unwrap();
            let back = parse_edge_list(&g.to_edge_list()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
