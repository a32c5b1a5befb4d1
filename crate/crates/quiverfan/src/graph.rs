//! Trees, Dynkin diagrams, orientations and root systems.
//!
//! A [`TreeGraph`] is an unoriented forest with small-integer vertex ids.
//! [`DynkinGraph`] classifies its components as `A`/`D`/`E` diagrams and
//! carries the exponent and Coxeter-number tables. A [`Quiver`] is a tree
//! together with a direction for every edge. [`RootVector`] is an integer
//! vector over the vertex set; positive roots are enumerated by closing the
//! simple roots under simple reflections.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Vertex = usize;

// ---------------------------------------------------------------------------
// TreeGraph
// ---------------------------------------------------------------------------

/// An unoriented forest. Vertices are kept sorted; edges keep their input
/// order (orientation masks and representation matrices index into it) but
/// each edge is normalized to `(min, max)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: BTreeMap<Vertex, Vec<Vertex>>,
}

impl TreeGraph {
    /// Builds a forest, rejecting duplicate vertices, self-loops, edges on
    /// missing vertices and cycles (which includes repeated edges).
    pub fn new(mut vertices: Vec<Vertex>, raw_edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("duplicate vertex id".into()));
        }
        let vertex_set: BTreeSet<Vertex> = vertices.iter().copied().collect();
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (a, b) in raw_edges {
            if a == b {
                return Err(Error::Parse(format!("self-loop at vertex {a}")));
            }
            if !vertex_set.contains(&a) || !vertex_set.contains(&b) {
                return Err(Error::Parse(format!(
                    "edge ({a},{b}) references a missing vertex"
                )));
            }
            edges.push((a.min(b), a.max(b)));
        }

        // Union-find cycle check: an edge inside an existing component
        // closes a cycle, so the result would not be a forest.
        let index: BTreeMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
            if ra == rb {
                return Err(Error::Parse(format!("edge ({a},{b}) creates a cycle")));
            }
            parent[ra] = rb;
        }

        let mut adjacency: BTreeMap<Vertex, Vec<Vertex>> =
            vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &edges {
            adjacency.get_mut(&a).unwrap().push(b);
            adjacency.get_mut(&b).unwrap().push(a);
        }
        for list in adjacency.values_mut() {
            list.sort_unstable();
        }
        Ok(TreeGraph {
            vertices,
            edges,
            adjacency,
        })
    }

    /// A path `1 — 2 — … — n`.
    pub fn path(n: usize) -> Self {
        let vertices = (1..=n).collect();
        let edges = (1..n).map(|i| (i, i + 1)).collect();
        TreeGraph::new(vertices, edges).expect("paths are forests")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.adjacency.contains_key(&v)
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adjacency.get(&v).map(|x| x.as_slice()).unwrap_or(&[])
    }

    pub fn are_adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut out = Vec::new();
        for &v in &self.vertices {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = vec![v];
            let mut stack = vec![v];
            seen.insert(v);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The component containing `v`.
    pub fn component_of(&self, v: Vertex) -> Vec<Vertex> {
        self.components()
            .into_iter()
            .find(|c| c.contains(&v))
            .unwrap_or_default()
    }

    /// Full subgraph on a vertex subset; edge order is inherited.
    pub fn induced(&self, subset: &BTreeSet<Vertex>) -> Result<Self> {
        for &v in subset {
            if !self.contains_vertex(v) {
                return Err(Error::Domain(format!("vertex {v} is not in the graph")));
            }
        }
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| subset.contains(v))
            .collect();
        let edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| subset.contains(&a) && subset.contains(&b))
            .collect();
        TreeGraph::new(vertices, edges)
    }
}

// ---------------------------------------------------------------------------
// Dynkin classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    D,
    E,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A => write!(f, "A"),
            DynkinType::D => write!(f, "D"),
            DynkinType::E => write!(f, "E"),
        }
    }
}

/// One irreducible component of a Dynkin forest, with its classical tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinComponent {
    pub ty: DynkinType,
    pub rank: usize,
    /// Component vertices in ascending order.
    pub vertices: Vec<Vertex>,
    pub exponents: Vec<u64>,
    pub coxeter_number: u64,
}

impl DynkinComponent {
    pub fn label(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }

    /// Number of positive roots, `n·h/2`.
    pub fn positive_root_count(&self) -> u64 {
        self.rank as u64 * self.coxeter_number / 2
    }
}

/// Classified ADE forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinGraph {
    graph: TreeGraph,
    pub components: Vec<DynkinComponent>,
}

fn exponent_table(ty: DynkinType, rank: usize) -> Vec<u64> {
    match ty {
        DynkinType::A => (1..=rank as u64).collect(),
        DynkinType::D => {
            let mut e: Vec<u64> = (0..rank as u64 - 1).map(|k| 2 * k + 1).collect();
            e.push(rank as u64 - 1);
            e.sort_unstable();
            e
        }
        DynkinType::E => match rank {
            6 => vec![1, 4, 5, 7, 8, 11],
            7 => vec![1, 5, 7, 9, 11, 13, 17],
            8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
            _ => unreachable!("E rank checked by caller"),
        },
    }
}

fn coxeter_table(ty: DynkinType, rank: usize) -> u64 {
    match ty {
        DynkinType::A => rank as u64 + 1,
        DynkinType::D => 2 * rank as u64 - 2,
        DynkinType::E => match rank {
            6 => 12,
            7 => 18,
            8 => 30,
            _ => unreachable!("E rank checked by caller"),
        },
    }
}

fn valid_pair(ty: DynkinType, rank: usize) -> bool {
    match ty {
        DynkinType::A => rank >= 1,
        DynkinType::D => rank >= 4,
        DynkinType::E => (6..=8).contains(&rank),
    }
}

/// Shape-only classification of one component. Returns its type and rank.
fn classify_component(graph: &TreeGraph, comp: &[Vertex]) -> Result<(DynkinType, usize)> {
    let n = comp.len();
    let inside = |v: Vertex| comp.binary_search(&v).is_ok();
    let deg = |v: Vertex| graph.neighbors(v).iter().filter(|&&w| inside(w)).count();
    let branch: Vec<Vertex> = comp.iter().copied().filter(|&v| deg(v) >= 3).collect();
    if comp.iter().any(|&v| deg(v) >= 4) || branch.len() >= 2 {
        return Err(Error::UnsupportedGraph(format!(
            "component {comp:?} is not an ADE diagram"
        )));
    }
    if branch.is_empty() {
        return Ok((DynkinType::A, n));
    }
    let center = branch[0];
    let mut arms: Vec<usize> = Vec::new();
    for &start in graph.neighbors(center) {
        if !inside(start) {
            continue;
        }
        let mut len = 1;
        let (mut prev, mut cur) = (center, start);
        while let Some(&next) = graph
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev && inside(w))
        {
            len += 1;
            prev = cur;
            cur = next;
        }
        arms.push(len);
    }
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, k] => Ok((DynkinType::D, k + 3)),
        [1, 2, 2] => Ok((DynkinType::E, 6)),
        [1, 2, 3] => Ok((DynkinType::E, 7)),
        [1, 2, 4] => Ok((DynkinType::E, 8)),
        _ => Err(Error::UnsupportedGraph(format!(
            "component {comp:?} has arm lengths {arms:?}"
        ))),
    }
}

/// Shape-only classification of every component; does not touch the tables.
pub(crate) fn classify_shapes(graph: &TreeGraph) -> Result<Vec<(DynkinType, usize, Vec<Vertex>)>> {
    graph
        .components()
        .into_iter()
        .map(|comp| classify_component(graph, &comp).map(|(ty, rank)| (ty, rank, comp)))
        .collect()
}

impl DynkinGraph {
    /// Classifies a forest and fills in the exponent/Coxeter tables. The
    /// tables are checked against the root system itself: the exponents of
    /// each component must sum to its number of positive roots.
    pub fn classify(graph: &TreeGraph) -> Result<Self> {
        let mut components = Vec::new();
        for (ty, rank, vertices) in classify_shapes(graph)? {
            let comp = DynkinComponent {
                ty,
                rank,
                exponents: exponent_table(ty, rank),
                coxeter_number: coxeter_table(ty, rank),
                vertices,
            };
            let sub = graph.induced(&comp.vertices.iter().copied().collect())?;
            let closure_count = positive_roots(&sub)?.len() as u64;
            let exp_sum: u64 = comp.exponents.iter().sum();
            if exp_sum != closure_count {
                return Err(Error::Internal(format!(
                    "exponent table of {} sums to {exp_sum}, but the component has {closure_count} positive roots",
                    comp.label()
                )));
            }
            components.push(comp);
        }
        Ok(DynkinGraph {
            graph: graph.clone(),
            components,
        })
    }

    pub fn graph(&self) -> &TreeGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.vertices.len()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn positive_root_count(&self) -> u64 {
        self.components
            .iter()
            .map(|c| c.positive_root_count())
            .sum()
    }

    pub fn label(&self) -> String {
        self.components
            .iter()
            .map(|c| c.label())
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// The standard labeled diagram for a (type, rank) pair:
/// `A_n` is the path `1—…—n`; `D_n` is the path `1—…—(n−2)` with both
/// `n−1` and `n` joined to `n−2`; `E_n` is the path `1—…—(n−1)` with `n`
/// joined to vertex `3`.
pub fn dynkin_graph(ty: DynkinType, rank: usize) -> Result<DynkinGraph> {
    if !valid_pair(ty, rank) {
        return Err(Error::Classification(format!(
            "{ty}{rank} is not a simply-laced Dynkin diagram"
        )));
    }
    let graph = match ty {
        DynkinType::A => TreeGraph::path(rank),
        DynkinType::D => {
            let mut edges: Vec<(Vertex, Vertex)> = (1..rank - 2).map(|i| (i, i + 1)).collect();
            edges.push((rank - 2, rank - 1));
            edges.push((rank - 2, rank));
            TreeGraph::new((1..=rank).collect(), edges)?
        }
        DynkinType::E => {
            let mut edges: Vec<(Vertex, Vertex)> = (1..rank - 1).map(|i| (i, i + 1)).collect();
            edges.push((3, rank));
            TreeGraph::new((1..=rank).collect(), edges)?
        }
    };
    DynkinGraph::classify(&graph)
}

/// Parses a label such as `A3`, `D4` or `E8`.
pub fn parse_dynkin_label(label: &str) -> Result<(DynkinType, usize)> {
    let mut chars = label.chars();
    let ty = match chars.next() {
        Some('A' | 'a') => DynkinType::A,
        Some('D' | 'd') => DynkinType::D,
        Some('E' | 'e') => DynkinType::E,
        _ => return Err(Error::Parse(format!("bad Dynkin label {label:?}"))),
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::Parse(format!("bad Dynkin label {label:?}")))?;
    if !valid_pair(ty, rank) {
        return Err(Error::Classification(format!(
            "{ty}{rank} is not a simply-laced Dynkin diagram"
        )));
    }
    Ok((ty, rank))
}

// ---------------------------------------------------------------------------
// RootVector
// ---------------------------------------------------------------------------

/// Integer vector over a vertex set: a (signed) dimension vector or a root.
/// Coordinates are stored densely over the vertex set; `Ord` compares
/// coordinates in ascending vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    coords: BTreeMap<Vertex, i64>,
}

impl RootVector {
    pub fn zero(vertices: &[Vertex]) -> Self {
        RootVector {
            coords: vertices.iter().map(|&v| (v, 0)).collect(),
        }
    }

    pub fn simple(vertices: &[Vertex], i: Vertex) -> Result<Self> {
        let mut r = RootVector::zero(vertices);
        if !r.coords.contains_key(&i) {
            return Err(Error::Domain(format!("vertex {i} is not in the graph")));
        }
        r.coords.insert(i, 1);
        Ok(r)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, i64)>) -> Self {
        RootVector {
            coords: pairs.into_iter().collect(),
        }
    }

    /// Coordinates `values` taken in ascending vertex order.
    pub fn from_values(vertices: &[Vertex], values: &[i64]) -> Result<Self> {
        if vertices.len() != values.len() {
            return Err(Error::Domain(format!(
                "expected {} coordinates, got {}",
                vertices.len(),
                values.len()
            )));
        }
        Ok(RootVector {
            coords: vertices
                .iter()
                .copied()
                .zip(values.iter().copied())
                .collect(),
        })
    }

    /// The multiplicity of the simple root at `i`.
    pub fn coeff(&self, i: Vertex) -> i64 {
        self.coords.get(&i).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: Vertex, value: i64) {
        assert!(self.coords.contains_key(&i), "vertex {i} not in vector");
        self.coords.insert(i, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
        self.coords.iter().map(|(&v, &c)| (v, c))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.coords.keys().copied()
    }

    pub fn values(&self) -> Vec<i64> {
        self.coords.values().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn height(&self) -> i64 {
        self.coords.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(|&c| c == 0)
    }

    /// Nonnegative and nonzero.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coords.values().all(|&c| c >= 0)
    }

    pub fn support(&self) -> Vec<Vertex> {
        self.iter()
            .filter(|&(_, c)| c != 0)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn same_vertex_set(&self, other: &RootVector) -> bool {
        self.coords.len() == other.coords.len()
            && self
                .coords
                .keys()
                .zip(other.coords.keys())
                .all(|(a, b)| a == b)
    }

    fn zip_with(&self, other: &RootVector, f: impl Fn(i64, i64) -> i64) -> RootVector {
        assert!(self.same_vertex_set(other), "vertex set mismatch");
        RootVector {
            coords: self
                .coords
                .iter()
                .map(|(&v, &a)| (v, f(a, other.coeff(v))))
                .collect(),
        }
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|(&v, &a)| (v, -a)).collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|(&v, &a)| (v, k * a)).collect(),
        }
    }

    /// Restriction to a subset of vertices (drops the other coordinates).
    pub fn restrict(&self, vertices: &[Vertex]) -> RootVector {
        RootVector {
            coords: vertices.iter().map(|&v| (v, self.coeff(v))).collect(),
        }
    }

    /// Zero-extension to a larger vertex set.
    pub fn extend(&self, vertices: &[Vertex]) -> RootVector {
        RootVector {
            coords: vertices.iter().map(|&v| (v, self.coeff(v))).collect(),
        }
    }

    /// Global root order: height first, then coordinates lexicographically
    /// in ascending vertex order.
    pub fn root_cmp(&self, other: &RootVector) -> std::cmp::Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.cmp(other))
    }

    /// Short display such as `a1+2a2`, `-a3` or `0`.
    pub fn label(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (v, c) in self.iter() {
            if c == 0 {
                continue;
            }
            if c > 0 && !out.is_empty() {
                out.push('+');
            }
            match c {
                1 => {}
                -1 => out.push('-'),
                _ => out.push_str(&c.to_string()),
            }
            out.push_str(&format!("a{v}"));
        }
        out
    }
}

/// Simple (Weyl) reflection of `γ` at a vertex: the coordinate at `i`
/// becomes `−γ_i + Σ_{j — i} γ_j`.
pub fn weyl_reflect(graph: &TreeGraph, i: Vertex, gamma: &RootVector) -> Result<RootVector> {
    if !graph.contains_vertex(i) {
        return Err(Error::Domain(format!("vertex {i} is not in the graph")));
    }
    let mut out = gamma.clone();
    let nbr_sum: i64 = graph.neighbors(i).iter().map(|&j| gamma.coeff(j)).sum();
    out.set(i, -gamma.coeff(i) + nbr_sum);
    Ok(out)
}

/// All positive roots of an ADE forest, sorted by the global root order.
pub fn positive_roots(graph: &TreeGraph) -> Result<Vec<RootVector>> {
    classify_shapes(graph)?;
    let vertices = graph.vertices();
    let mut set: BTreeSet<RootVector> = BTreeSet::new();
    let mut queue: Vec<RootVector> = Vec::new();
    for &v in vertices {
        let alpha = RootVector::simple(vertices, v)?;
        set.insert(alpha.clone());
        queue.push(alpha);
    }
    while let Some(gamma) = queue.pop() {
        for &i in vertices {
            let r = weyl_reflect(graph, i, &gamma)?;
            if r.is_positive() && set.insert(r.clone()) {
                queue.push(r);
            }
        }
    }
    let mut roots: Vec<RootVector> = set.into_iter().collect();
    roots.sort_by(|a, b| a.root_cmp(b));
    Ok(roots)
}

/// Positive roots followed by the negative simple roots, the ambient set of
/// all cluster combinatorics.
pub fn almost_positive_roots(graph: &TreeGraph) -> Result<Vec<RootVector>> {
    let mut roots = positive_roots(graph)?;
    for &v in graph.vertices() {
        roots.push(RootVector::simple(graph.vertices(), v)?.neg());
    }
    Ok(roots)
}

// ---------------------------------------------------------------------------
// Quiver
// ---------------------------------------------------------------------------

/// A tree with a direction per edge. `arrows[k]` is the `(source, target)`
/// orientation of `graph.edges()[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    graph: TreeGraph,
    arrows: Vec<(Vertex, Vertex)>,
}

impl Quiver {
    pub fn new(graph: TreeGraph, arrows: Vec<(Vertex, Vertex)>) -> Result<Self> {
        if arrows.len() != graph.edges().len() {
            return Err(Error::Parse(
                "orientation must cover every edge exactly once".into(),
            ));
        }
        for (&(a, b), &(s, t)) in graph.edges().iter().zip(&arrows) {
            if (s.min(t), s.max(t)) != (a, b) || s == t {
                return Err(Error::Parse(format!(
                    "arrow {s}->{t} does not orient edge ({a},{b})"
                )));
            }
        }
        Ok(Quiver { graph, arrows })
    }

    /// Orientation from a bitmask: bit `k` clear orients edge `k` from its
    /// smaller to its larger endpoint.
    pub fn from_orientation_mask(graph: &TreeGraph, mask: u64) -> Self {
        let arrows = graph
            .edges()
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| if mask >> k & 1 == 0 { (a, b) } else { (b, a) })
            .collect();
        Quiver {
            graph: graph.clone(),
            arrows,
        }
    }

    pub fn orientation_mask(&self) -> u64 {
        let mut mask = 0;
        for (k, (&(a, _), &(s, _))) in self.graph.edges().iter().zip(&self.arrows).enumerate() {
            if s != a {
                mask |= 1 << k;
            }
        }
        mask
    }

    pub fn graph(&self) -> &TreeGraph {
        &self.graph
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.graph.vertices()
    }

    pub fn arrows(&self) -> &[(Vertex, Vertex)] {
        &self.arrows
    }

    /// Indices of arrows with source `i`, in edge order.
    pub fn arrows_from(&self, i: Vertex) -> Vec<usize> {
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, &(s, _))| s == i)
            .map(|(k, _)| k)
            .collect()
    }

    /// Indices of arrows with target `i`, in edge order.
    pub fn arrows_into(&self, i: Vertex) -> Vec<usize> {
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, &(_, t))| t == i)
            .map(|(k, _)| k)
            .collect()
    }

    /// No incoming arrows. Isolated vertices are both sources and sinks.
    pub fn is_source(&self, i: Vertex) -> bool {
        self.graph.contains_vertex(i) && self.arrows_into(i).is_empty()
    }

    /// No outgoing arrows.
    pub fn is_sink(&self, i: Vertex) -> bool {
        self.graph.contains_vertex(i) && self.arrows_from(i).is_empty()
    }

    pub fn is_admissible(&self, i: Vertex) -> bool {
        self.graph.contains_vertex(i) && (self.is_source(i) || self.is_sink(i))
    }

    /// Reverses all arrows at a source or sink.
    pub fn reflect(&self, i: Vertex) -> Result<Quiver> {
        if !self.is_admissible(i) {
            return Err(Error::Admissibility(format!(
                "vertex {i} is neither a source nor a sink"
            )));
        }
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == i || t == i { (t, s) } else { (s, t) })
            .collect();
        Ok(Quiver {
            graph: self.graph.clone(),
            arrows,
        })
    }

    /// Reverses every arrow.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            graph: self.graph.clone(),
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// Orientation induced on a full subgraph.
    pub fn induced(&self, subset: &BTreeSet<Vertex>) -> Result<Quiver> {
        let graph = self.graph.induced(subset)?;
        let arrows = self
            .arrows
            .iter()
            .copied()
            .filter(|&(s, t)| subset.contains(&s) && subset.contains(&t))
            .collect();
        Quiver { graph, arrows }.validated()
    }

    fn validated(self) -> Result<Quiver> {
        Quiver::new(self.graph, self.arrows)
    }

    pub fn to_json_string(&self) -> String {
        let file = QuiverFile {
            vertices: self.graph.vertices().to_vec(),
            edges: self
                .arrows
                .iter()
                .map(|&(s, t)| QuiverFileEdge { from: s, to: t })
                .collect(),
            dynkin: DynkinGraph::classify(&self.graph)
                .ok()
                .filter(|d| d.is_irreducible())
                .map(|d| d.label()),
        };
        serde_json::to_string_pretty(&file).expect("quiver serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Quiver> {
        let file: QuiverFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let graph = TreeGraph::new(
            file.vertices,
            file.edges.iter().map(|e| (e.from, e.to)).collect(),
        )?;
        let quiver = Quiver::new(graph, file.edges.iter().map(|e| (e.from, e.to)).collect())?;
        if let Some(label) = file.dynkin {
            let (ty, rank) = parse_dynkin_label(&label)?;
            let classified = DynkinGraph::classify(quiver.graph())?;
            let matches = classified.components.len() == 1
                && classified.components[0].ty == ty
                && classified.components[0].rank == rank;
            if !matches {
                return Err(Error::Classification(format!(
                    "graph is {}, file declares {label}",
                    classified.label()
                )));
            }
        }
        Ok(quiver)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            let names: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
            return write!(f, "[{}]", names.join(" "));
        }
        let parts: Vec<String> = self
            .arrows
            .iter()
            .map(|&(s, t)| format!("{s}->{t}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverFileEdge {
    from: Vertex,
    to: Vertex,
}

#[derive(Serialize, Deserialize)]
struct QuiverFile {
    vertices: Vec<Vertex>,
    edges: Vec<QuiverFileEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dynkin: Option<String>,
}

/// Alternating orientation: 2-colors every component, smallest vertex in
/// the plus part, and orients each edge from plus to minus. Every plus
/// vertex is a source and every minus vertex a sink.
pub fn alternating_orientation(graph: &TreeGraph) -> (Quiver, BTreeSet<Vertex>, BTreeSet<Vertex>) {
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    for comp in graph.components() {
        let root = comp[0];
        let mut stack = vec![(root, true)];
        let mut seen = BTreeSet::new();
        seen.insert(root);
        while let Some((v, in_plus)) = stack.pop() {
            if in_plus {
                plus.insert(v);
            } else {
                minus.insert(v);
            }
            for &w in graph.neighbors(v) {
                if seen.insert(w) {
                    stack.push((w, !in_plus));
                }
            }
        }
    }
    let arrows = graph
        .edges()
        .iter()
        .map(|&(a, b)| if plus.contains(&a) { (a, b) } else { (b, a) })
        .collect();
    let quiver = Quiver {
        graph: graph.clone(),
        arrows,
    };
    (quiver, plus, minus)
}

/// All `2^edges` orientations, ordered by bitmask.
pub fn enumerate_orientations(graph: &TreeGraph) -> Vec<Quiver> {
    let e = graph.edges().len();
    assert!(e < 63, "too many edges to enumerate orientations");
    (0..1u64 << e)
        .map(|mask| Quiver::from_orientation_mask(graph, mask))
        .collect()
}

/// The homological Euler form `⟨d,e⟩ = Σ_i d_i e_i − Σ_{a:i→j} d_i e_j`.
pub fn euler_form(quiver: &Quiver, d: &RootVector, e: &RootVector) -> Result<i64> {
    let vertices = quiver.vertices();
    let ok = d.len() == vertices.len()
        && e.len() == vertices.len()
        && vertices
            .iter()
            .all(|&v| d.coords_contains(v) && e.coords_contains(v));
    if !ok {
        return Err(Error::Domain(
            "dimension vectors must be defined on the quiver's vertex set".into(),
        ));
    }
    let diag: i64 = vertices.iter().map(|&v| d.coeff(v) * e.coeff(v)).sum();
    let arrows: i64 = quiver
        .arrows()
        .iter()
        .map(|&(s, t)| d.coeff(s) * e.coeff(t))
        .sum();
    Ok(diag - arrows)
}

impl RootVector {
    fn coords_contains(&self, v: Vertex) -> bool {
        self.coords.contains_key(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> TreeGraph {
        TreeGraph::path(n)
    }

    fn dn(n: usize) -> TreeGraph {
        dynkin_graph(DynkinType::D, n).unwrap().graph().clone()
    }

    #[test]
    fn tree_validation_rejects_cycles_and_dangling_edges() {
        assert!(matches!(
            TreeGraph::new(vec![1, 2, 3], vec![(1, 2), (2, 3), (3, 1)]),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            TreeGraph::new(vec![1, 2], vec![(1, 3)]),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            TreeGraph::new(vec![1, 2], vec![(1, 2), (2, 1)]),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            TreeGraph::new(vec![1, 1], vec![]),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn dynkin_constructor_matches_spec_labels() {
        let a3 = dynkin_graph(DynkinType::A, 3).unwrap();
        assert_eq!(a3.graph().edges(), &[(1, 2), (2, 3)]);
        assert_eq!(a3.components[0].exponents, vec![1, 2, 3]);
        assert_eq!(a3.components[0].coxeter_number, 4);

        let a1 = dynkin_graph(DynkinType::A, 1).unwrap();
        assert_eq!(a1.components[0].exponents, vec![1]);
        assert_eq!(a1.components[0].coxeter_number, 2);

        let d4 = dynkin_graph(DynkinType::D, 4).unwrap();
        assert_eq!(d4.graph().edges(), &[(1, 2), (2, 3), (2, 4)]);
        assert_eq!(d4.components[0].exponents, vec![1, 3, 3, 5]);
        assert_eq!(d4.components[0].coxeter_number, 6);

        let e6 = dynkin_graph(DynkinType::E, 6).unwrap();
        assert_eq!(
            e6.graph().edges(),
            &[(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)]
        );

        assert!(matches!(
            dynkin_graph(DynkinType::D, 3),
            Err(Error::Classification(_))
        ));
        assert!(matches!(
            dynkin_graph(DynkinType::E, 9),
            Err(Error::Classification(_))
        ));
    }

    #[test]
    fn exponent_tables_sum_to_positive_root_counts() {
        // Closure oracle: |positive_roots| must equal Σ exponents.
        for (ty, rank) in [
            (DynkinType::A, 1),
            (DynkinType::A, 3),
            (DynkinType::A, 5),
            (DynkinType::D, 4),
            (DynkinType::D, 5),
            (DynkinType::E, 6),
        ] {
            let g = dynkin_graph(ty, rank).unwrap();
            let roots = positive_roots(g.graph()).unwrap();
            let exp_sum: u64 = g.components[0].exponents.iter().sum();
            assert_eq!(roots.len() as u64, exp_sum, "{ty}{rank}");
        }
    }

    #[test]
    fn positive_roots_small_cases() {
        let roots = positive_roots(&a(2)).unwrap();
        let vs = [1, 2];
        assert_eq!(
            roots,
            vec![
                RootVector::from_values(&vs, &[0, 1]).unwrap(),
                RootVector::from_values(&vs, &[1, 0]).unwrap(),
                RootVector::from_values(&vs, &[1, 1]).unwrap(),
            ]
        );
        assert_eq!(positive_roots(&a(1)).unwrap().len(), 1);
        assert_eq!(positive_roots(&dn(4)).unwrap().len(), 12);
        assert_eq!(positive_roots(&dn(5)).unwrap().len(), 20);
    }

    #[test]
    fn root_counts_match_classical_formulas() {
        for n in 1..=6 {
            assert_eq!(
                positive_roots(&a(n)).unwrap().len(),
                n * (n + 1) / 2,
                "A{n}"
            );
        }
        for n in 4..=6 {
            assert_eq!(positive_roots(&dn(n)).unwrap().len(), n * (n - 1), "D{n}");
        }
        let e6 = dynkin_graph(DynkinType::E, 6).unwrap();
        assert_eq!(positive_roots(e6.graph()).unwrap().len(), 36);
    }

    #[test]
    fn every_root_has_connected_support() {
        for graph in [a(4), dn(4)] {
            for root in positive_roots(&graph).unwrap() {
                let support: BTreeSet<Vertex> = root.support().into_iter().collect();
                let sub = graph.induced(&support).unwrap();
                assert_eq!(sub.components().len(), 1, "{root:?}");
            }
        }
    }

    #[test]
    fn non_dynkin_trees_are_rejected() {
        // Star with four leaves: the affine D4 shape.
        let star =
            TreeGraph::new(vec![0, 1, 2, 3, 4], vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(matches!(
            positive_roots(&star),
            Err(Error::UnsupportedGraph(_))
        ));
    }

    #[test]
    fn euler_form_examples() {
        let graph = a(2);
        let q = Quiver::from_orientation_mask(&graph, 0); // 1->2
        let a1 = RootVector::simple(&[1, 2], 1).unwrap();
        let a2 = RootVector::simple(&[1, 2], 2).unwrap();
        assert_eq!(euler_form(&q, &a1, &a2).unwrap(), -1);
        assert_eq!(euler_form(&q, &a2, &a1).unwrap(), 0);
        assert_eq!(euler_form(&q, &a1, &a1).unwrap(), 1);
        assert_eq!(euler_form(&q, &a2, &a2).unwrap(), 1);

        let bad = RootVector::simple(&[1, 2, 3], 1).unwrap();
        assert!(matches!(euler_form(&q, &bad, &a2), Err(Error::Domain(_))));
    }

    #[test]
    fn euler_form_positive_on_roots() {
        for graph in [a(4), dn(4)] {
            for q in enumerate_orientations(&graph) {
                for root in positive_roots(&graph).unwrap() {
                    assert!(euler_form(&q, &root, &root).unwrap() >= 1);
                }
            }
        }
    }

    #[test]
    fn reflect_orientation_examples() {
        let graph = a(2);
        let q = Quiver::from_orientation_mask(&graph, 0); // 1->2
        let r = q.reflect(1).unwrap();
        assert_eq!(r.arrows(), &[(2, 1)]);
        assert_eq!(r.reflect(1).unwrap(), q);

        let a3 = a(3);
        let alt = alternating_orientation(&a3).0; // 1->2<-3
        let at2 = alt.reflect(2).unwrap();
        assert_eq!(at2.arrows(), &[(2, 1), (2, 3)]);

        let equi = Quiver::from_orientation_mask(&a3, 0); // 1->2->3
        assert!(matches!(equi.reflect(2), Err(Error::Admissibility(_))));
    }

    #[test]
    fn alternating_orientation_examples() {
        let (q, plus, minus) = alternating_orientation(&a(3));
        assert_eq!(q.arrows(), &[(1, 2), (3, 2)]);
        assert_eq!(plus.iter().copied().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(minus.iter().copied().collect::<Vec<_>>(), vec![2]);
        for &v in &[1usize, 3] {
            assert!(q.is_source(v));
        }
        assert!(q.is_sink(2));

        let (q1, plus1, _) = alternating_orientation(&a(1));
        assert!(q1.arrows().is_empty());
        assert!(plus1.contains(&1));

        let (q2, plus2, minus2) = alternating_orientation(&a(2));
        assert_eq!(q2.arrows(), &[(1, 2)]);
        assert!(plus2.contains(&1) && minus2.contains(&2));
    }

    #[test]
    fn orientation_enumeration_counts() {
        assert_eq!(enumerate_orientations(&a(2)).len(), 2);
        assert_eq!(enumerate_orientations(&a(3)).len(), 4);
        assert_eq!(enumerate_orientations(&dn(4)).len(), 8);
    }

    #[test]
    fn orientations_connected_by_admissible_reflections() {
        // Any two orientations of one tree are linked by source/sink flips.
        for graph in [a(3), a(4), dn(4)] {
            let all = enumerate_orientations(&graph);
            let start = all[0].clone();
            let mut seen: BTreeSet<u64> = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(q) = stack.pop() {
                if !seen.insert(q.orientation_mask()) {
                    continue;
                }
                for &v in graph.vertices() {
                    if q.is_admissible(v) {
                        stack.push(q.reflect(v).unwrap());
                    }
                }
            }
            assert_eq!(seen.len(), all.len());
        }
    }

    #[test]
    fn quiver_json_round_trip_and_validation() {
        let (q, _, _) = alternating_orientation(&a(3));
        let text = q.to_json_string();
        let back = Quiver::from_json_str(&text).unwrap();
        assert_eq!(back, q);

        let cyclic = r#"{"vertices":[1,2,3],"edges":[{"from":1,"to":2},{"from":2,"to":3},{"from":3,"to":1}]}"#;
        assert!(Quiver::from_json_str(cyclic).is_err());
        let dangling = r#"{"vertices":[1,2],"edges":[{"from":1,"to":5}]}"#;
        assert!(Quiver::from_json_str(dangling).is_err());
        let mislabeled = r#"{"vertices":[1,2],"edges":[{"from":1,"to":2}],"dynkin":"A3"}"#;
        assert!(Quiver::from_json_str(mislabeled).is_err());
    }

    #[test]
    fn weyl_reflection_is_an_involution() {
        let graph = dn(4);
        let gamma = RootVector::from_values(graph.vertices(), &[3, -2, 5, 1]).unwrap();
        for &i in graph.vertices() {
            let twice = weyl_reflect(&graph, i, &weyl_reflect(&graph, i, &gamma).unwrap()).unwrap();
            assert_eq!(twice, gamma);
        }
    }

    #[test]
    fn root_order_is_by_height_then_lex() {
        let roots = positive_roots(&a(3)).unwrap();
        let heights: Vec<i64> = roots.iter().map(|r| r.height()).collect();
        let mut sorted = heights.clone();
        sorted.sort_unstable();
        assert_eq!(heights, sorted);
        assert_eq!(roots.last().unwrap().values(), vec![1, 1, 1]);
    }

    #[test]
    fn labels_render_compactly() {
        let vs = [1, 2, 3];
        let theta = RootVector::from_values(&vs, &[1, 2, 1]).unwrap();
        assert_eq!(theta.label(), "a1+2a2+a3");
        let neg = RootVector::simple(&vs, 3).unwrap().neg();
        assert_eq!(neg.label(), "-a3");
        assert_eq!(RootVector::zero(&vs).label(), "0");
    }
}
