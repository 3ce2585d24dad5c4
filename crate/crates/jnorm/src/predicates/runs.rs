//! The adjacency graph of special extreme points and runs through it.
//!
//! Adjacency does not depend on the radius, so the graph is symbolic. Over
//! the rationals it has two path components,
//!
//! ```text
//! s v_inf - s e2 - -s v_0 - -s v_1 - -s v_2 - ...
//! ```
//!
//! for `s = +-1`, each accumulating at `-s v_inf` without reaching it. Over
//! a non-archimedean field `v_inf` is not extreme and the components start
//! at `s e2`. A graph of depth `N` keeps chain vertices up to `v_N`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::run_pattern;
use crate::field::{BigInt, OrderedField, Rational};
use crate::geometry::{ExtremeKind, GeometryError, JSpace, Sign, VecD};

#[derive(Debug, Clone)]
pub struct AdjacencyGraph {
    depth: usize,
    nodes: Vec<ExtremeKind>,
    neighbours: Vec<Vec<usize>>,
    ids: BTreeMap<ExtremeKind, usize>,
    gaps: Vec<(usize, ExtremeKind)>,
}

impl AdjacencyGraph {
    pub fn new(depth: usize, archimedean: bool) -> AdjacencyGraph {
        let mut g = AdjacencyGraph {
            depth,
            nodes: Vec::new(),
            neighbours: Vec::new(),
            ids: BTreeMap::new(),
            gaps: Vec::new(),
        };
        for sign in [Sign::Plus, Sign::Minus] {
            let mut path = Vec::new();
            if archimedean {
                path.push(ExtremeKind::Limit { sign });
            }
            path.push(ExtremeKind::North { sign });
            path.extend((0..=depth).map(|k| ExtremeKind::ChainVertex { k, sign: sign.flip() }));
            let mut prev: Option<usize> = None;
            for kind in path {
                let id = g.nodes.len();
                g.nodes.push(kind);
                g.neighbours.push(Vec::new());
                g.ids.insert(kind, id);
                if let Some(p) = prev {
                    g.neighbours[p].push(id);
                    g.neighbours[id].push(p);
                }
                prev = Some(id);
            }
            g.gaps.push((prev.unwrap(), ExtremeKind::Limit { sign: sign.flip() }));
        }
        g
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn nodes(&self) -> &[ExtremeKind] {
        &self.nodes
    }

    pub fn id(&self, kind: &ExtremeKind) -> Option<usize> {
        self.ids.get(kind).copied()
    }

    pub fn neighbours(&self, id: usize) -> &[usize] {
        &self.neighbours[id]
    }

    /// Undirected edges, each once.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbours
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// The last node kept on each component and the limit it accumulates
    /// at, which the truncated graph cannot reach.
    pub fn gaps(&self) -> &[(usize, ExtremeKind)] {
        &self.gaps
    }

    /// All paths of `length` distinct nodes, in both directions.
    pub fn paths(&self, length: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for start in 0..self.nodes.len() {
            self.extend(vec![start], length, &mut out);
        }
        out
    }

    /// Paths of `length` distinct nodes beginning with the edge `a -> b`.
    pub fn paths_from_edge(&self, a: usize, b: usize, length: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.neighbours[a].contains(&b) {
            self.extend(vec![a, b], length, &mut out);
        }
        out
    }

    fn extend(&self, path: Vec<usize>, length: usize, out: &mut Vec<Vec<usize>>) {
        if path.len() == length {
            out.push(path);
            return;
        }
        let last = *path.last().unwrap();
        for &n in &self.neighbours[last] {
            if !path.contains(&n) {
                let mut next = path.clone();
                next.push(n);
                self.extend(next, length, out);
            }
        }
    }

    /// The node scaled to radius `r`.
    pub fn point<F: OrderedField>(&self, space: &JSpace, r: &F, id: usize) -> VecD<F> {
        self.nodes[id].unit_point::<F>(space.disc()).scale(r)
    }
}

/// A path of distinct adjacent special extreme points on `S_r` with the
/// exact distances between consecutive points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run<F> {
    pub nodes: Vec<ExtremeKind>,
    pub lengths: Vec<F>,
}

/// Every run of `length` nodes on `S_r` within the depth-`depth` graph.
pub fn enumerate_runs<F: OrderedField>(
    space: &JSpace,
    r: &F,
    length: usize,
    depth: usize,
) -> Result<Vec<Run<F>>, GeometryError> {
    if !r.is_positive() {
        return Err(GeometryError::NonPositiveRadius);
    }
    let graph = AdjacencyGraph::new(depth, F::DESC.archimedean);
    let points: Vec<VecD<F>> = (0..graph.nodes.len()).map(|id| graph.point(space, r, id)).collect();
    Ok(graph
        .paths(length.max(1))
        .into_iter()
        .map(|path| Run {
            nodes: path.iter().map(|&id| graph.nodes[id]).collect(),
            lengths: path.windows(2).map(|w| space.norm(&points[w[1]].sub(&points[w[0]]))).collect(),
        })
        .collect())
}

/// A run whose edge lengths follow the multiplication pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMatch {
    pub radius: Rational,
    pub run: Run<Rational>,
    pub triple: (Rational, Rational, Rational),
}

/// Decides `MGI` by brute force over a truncated graph.
///
/// A matching run starts with an edge of length 1, so its radius is
/// `1 / l` for the unit-sphere length `l` of that edge. Every such radius
/// is tried and every 6-run starting with a length-1 edge is checked
/// against the pattern.
#[derive(Debug, Clone)]
pub struct MgiOracle {
    depth: usize,
    matches: Vec<OracleMatch>,
    triples: BTreeSet<(Rational, Rational, Rational)>,
}

impl MgiOracle {
    pub fn build(space: &JSpace, depth: usize) -> MgiOracle {
        let graph = AdjacencyGraph::new(depth, true);
        let one = Rational::from_integer(BigInt::from(1));
        let unit: Vec<VecD<Rational>> = (0..graph.nodes.len()).map(|id| graph.point(space, &one, id)).collect();
        let mut length = BTreeMap::new();
        let mut by_length: BTreeMap<Rational, Vec<(usize, usize)>> = BTreeMap::new();
        for (a, b) in graph.edges() {
            let l = space.norm(&unit[b].sub(&unit[a]));
            length.insert((a, b), l.clone());
            length.insert((b, a), l.clone());
            by_length.entry(l).or_default().extend([(a, b), (b, a)]);
        }
        let mut matches = Vec::new();
        let mut triples = BTreeSet::new();
        for (l, edges) in &by_length {
            let radius = l.recip();
            for &(a, b) in edges {
                for path in graph.paths_from_edge(a, b, 6) {
                    let lengths: Vec<Rational> = path.windows(2).map(|w| &radius * &length[&(w[0], w[1])]).collect();
                    if let Some((x, y, z)) = run_pattern(&lengths) {
                        let triple = (x, y, z);
                        triples.insert(triple.clone());
                        matches.push(OracleMatch {
                            radius: radius.clone(),
                            run: Run {
                                nodes: path.iter().map(|&id| graph.nodes[id]).collect(),
                                lengths,
                            },
                            triple,
                        });
                    }
                }
            }
        }
        MgiOracle { depth, matches, triples }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn matches(&self) -> &[OracleMatch] {
        &self.matches
    }

    /// Every `(x, y, z)` realized within the depth.
    pub fn triples(&self) -> impl Iterator<Item = &(Rational, Rational, Rational)> {
        self.triples.iter()
    }

    /// Whether some run within the depth realizes `(x, y, z)`.
    pub fn holds(&self, x: &Rational, y: &Rational, z: &Rational) -> bool {
        self.triples.contains(&(x.clone(), y.clone(), z.clone()))
    }
}
