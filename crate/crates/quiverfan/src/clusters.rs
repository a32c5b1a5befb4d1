//! Compatible sets, clusters, cluster expansion and the fan checks.
//!
//! A [`ClusterContext`] fixes a quiver and precomputes the compatibility
//! degree between all almost positive roots. Clusters are the maximal
//! pairwise-compatible subsets; they are enumerated as maximal cliques
//! without assuming purity, so "every cluster has `n` elements" remains an
//! honest theorem check rather than a search invariant.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{almost_positive_roots, positive_roots, Quiver, RootVector};
use crate::linalg::{QMat, Rat};
use crate::rep::IndecTable;
use crate::{Error, Result};

/// Default seed for sampling-based fan checks.
pub const DEFAULT_SEED: u64 = 0x5EED;

// ---------------------------------------------------------------------------
// ClusterContext
// ---------------------------------------------------------------------------

/// A quiver together with its almost positive roots (positives first, in
/// the global root order, then the negative simples) and the full
/// compatibility-degree table.
#[derive(Debug)]
pub struct ClusterContext {
    quiver: Quiver,
    roots: Vec<RootVector>,
    n_positive: usize,
    rank: usize,
    compat: Vec<Vec<usize>>,
    clusters: OnceLock<Vec<Vec<usize>>>,
}

impl ClusterContext {
    pub fn new(quiver: &Quiver) -> Result<Self> {
        let table = IndecTable::new(quiver)?;
        Self::from_table(&table)
    }

    /// Builds the degree table from a prebuilt indecomposable table. The
    /// degree of two positive roots is `ext(α,β) + ext(β,α)`; a negative
    /// simple pairs with `β` in the truncated coefficient `max([β:α_i],0)`
    /// and two negative simples never pair. These are exactly the
    /// dimensions of the pairing on decorated indecomposables.
    pub fn from_table(table: &IndecTable) -> Result<Self> {
        let quiver = table.quiver().clone();
        let positives = positive_roots(quiver.graph())?;
        let n_positive = positives.len();
        let rank = quiver.vertices().len();
        let roots = almost_positive_roots(quiver.graph())?;

        let total = roots.len();
        let mut compat = vec![vec![0usize; total]; total];
        for (s, row) in compat.iter_mut().enumerate().take(n_positive) {
            for (t, slot) in row.iter_mut().enumerate().take(n_positive) {
                if s == t {
                    continue;
                }
                *slot = table.ext(s, t)? + table.ext(t, s)?;
            }
        }
        for (k, root) in roots.iter().enumerate().skip(n_positive) {
            let i = root.support()[0];
            for t in 0..total {
                if k == t {
                    continue;
                }
                let degree = roots[t].coeff(i).max(0) as usize;
                compat[k][t] = degree;
                compat[t][k] = degree;
            }
        }
        Ok(ClusterContext {
            quiver,
            roots,
            n_positive,
            rank,
            compat,
            clusters: OnceLock::new(),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Almost positive roots: positives in root order, then the negative
    /// simples in vertex order.
    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_count(&self) -> usize {
        self.n_positive
    }

    pub fn root_index(&self, root: &RootVector) -> Option<usize> {
        self.roots.iter().position(|r| r == root)
    }

    pub fn degree_by_index(&self, a: usize, b: usize) -> usize {
        self.compat[a][b]
    }

    pub fn degree(&self, alpha: &RootVector, beta: &RootVector) -> Result<usize> {
        let (a, b) = (
            self.root_index(alpha).ok_or_else(|| {
                Error::Domain(format!("{} is not almost positive", alpha.label()))
            })?,
            self.root_index(beta)
                .ok_or_else(|| Error::Domain(format!("{} is not almost positive", beta.label())))?,
        );
        Ok(self.compat[a][b])
    }

    fn compatible(&self, a: usize, b: usize) -> bool {
        a == b || self.compat[a][b] == 0
    }

    /// All clusters (maximal compatible subsets), as sorted index lists in
    /// lexicographic order. Computed once, then cached.
    pub fn clusters(&self) -> &[Vec<usize>] {
        self.clusters.get_or_init(|| {
            let total = self.roots.len();
            let mut out = Vec::new();
            let mut current = Vec::new();
            let candidates: Vec<usize> = (0..total).collect();
            self.extend_cliques(&mut current, &candidates, &[], &mut out);
            out
        })
    }

    /// Ordered Bron–Kerbosch: `candidates` may still be added, `excluded`
    /// are compatible with the current set but already explored, so a leaf
    /// with both empty is a maximal clique.
    fn extend_cliques(
        &self,
        current: &mut Vec<usize>,
        candidates: &[usize],
        excluded: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if candidates.is_empty() && excluded.is_empty() {
            out.push(current.clone());
            return;
        }
        let mut excluded: Vec<usize> = excluded.to_vec();
        for (k, &v) in candidates.iter().enumerate() {
            let next_candidates: Vec<usize> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&w| self.compatible(v, w))
                .collect();
            let next_excluded: Vec<usize> = excluded
                .iter()
                .copied()
                .filter(|&w| self.compatible(v, w))
                .collect();
            current.push(v);
            self.extend_cliques(current, &next_candidates, &next_excluded, out);
            current.pop();
            excluded.push(v);
        }
    }

    /// Clusters as root vectors.
    pub fn cluster_roots(&self, cluster: &[usize]) -> Vec<RootVector> {
        cluster.iter().map(|&k| self.roots[k].clone()).collect()
    }

    /// Negative support of a cluster: the vertices whose negative simple
    /// root it contains.
    pub fn negative_support(&self, cluster: &[usize]) -> BTreeSet<usize> {
        cluster
            .iter()
            .filter(|&&k| k >= self.n_positive)
            .map(|&k| self.roots[k].support()[0])
            .collect()
    }

    /// The determinant of the square matrix with the cluster's roots as
    /// columns (coordinates in ascending vertex order). Only meaningful
    /// for clusters of full rank size.
    pub fn cluster_det(&self, cluster: &[usize]) -> Result<i64> {
        if cluster.len() != self.rank {
            return Err(Error::Domain(
                "determinant needs a full-size cluster".into(),
            ));
        }
        let m = QMat::from_fn(self.rank, self.rank, |r, c| {
            Rat::from_integer(self.roots[cluster[c]].values()[r])
        });
        let det = m.det();
        if !det.is_integer() {
            return Err(Error::Internal("non-integer determinant".into()));
        }
        Ok(*det.numer())
    }

    /// Positive clusters, computed two ways: by filtering the full cluster
    /// list to empty negative support, and independently by enumerating
    /// maximal compatible sets among the positive roots only. The two
    /// routes must agree.
    pub fn positive_clusters(&self) -> Result<Vec<Vec<usize>>> {
        let filtered: Vec<Vec<usize>> = self
            .clusters()
            .iter()
            .filter(|c| c.iter().all(|&k| k < self.n_positive))
            .cloned()
            .collect();

        let mut direct = Vec::new();
        let mut current = Vec::new();
        let candidates: Vec<usize> = (0..self.n_positive).collect();
        self.extend_cliques(&mut current, &candidates, &[], &mut direct);

        if filtered != direct {
            return Err(Error::Internal(
                "maximal positive compatible sets disagree with positive clusters".into(),
            ));
        }
        Ok(filtered)
    }

    /// The unique expansion of a lattice vector as a nonnegative integer
    /// combination of a compatible set: every cluster whose cone contains
    /// `γ` is found by solving the square system exactly, and the support
    /// carrying positive multiplicity must be the same in all of them.
    pub fn expand(&self, gamma: &RootVector) -> Result<ClusterExpansion> {
        let vertices = self.quiver.vertices();
        if gamma.len() != vertices.len()
            || !vertices.iter().all(|&v| gamma.iter().any(|(w, _)| w == v))
        {
            return Err(Error::Domain(
                "vector must be defined on the quiver's vertex set".into(),
            ));
        }
        let rhs: Vec<Rat> = gamma
            .values()
            .iter()
            .map(|&x| Rat::from_integer(x))
            .collect();
        let mut accepted: Option<(Vec<usize>, Vec<i64>)> = None;
        let mut accepting = 0usize;
        for cluster in self.clusters() {
            if cluster.len() != self.rank {
                continue;
            }
            let m = QMat::from_fn(self.rank, self.rank, |r, c| {
                Rat::from_integer(self.roots[cluster[c]].values()[r])
            });
            let Some(solution) = m.solve(&rhs) else {
                continue;
            };
            if solution.iter().any(|x| !x.is_integer()) {
                return Err(Error::Internal(
                    "non-integer solution over a cluster basis".into(),
                ));
            }
            let coeffs: Vec<i64> = solution.iter().map(|x| *x.numer()).collect();
            if coeffs.iter().any(|&c| c < 0) {
                continue;
            }
            accepting += 1;
            let support: Vec<usize> = cluster
                .iter()
                .zip(&coeffs)
                .filter(|(_, &c)| c > 0)
                .map(|(&k, _)| k)
                .collect();
            let mults: Vec<i64> = coeffs.iter().copied().filter(|&c| c > 0).collect();
            match &accepted {
                None => accepted = Some((support, mults)),
                Some((prev_support, prev_mults)) => {
                    if prev_support != &support || prev_mults != &mults {
                        return Err(Error::Internal(format!(
                            "two accepting clusters disagree on the expansion of {}",
                            gamma.label()
                        )));
                    }
                }
            }
        }
        let Some((support, mults)) = accepted else {
            return Err(Error::Internal(format!(
                "no cluster cone contains {}; the fan is not complete",
                gamma.label()
            )));
        };
        Ok(ClusterExpansion {
            gamma: gamma.clone(),
            terms: support
                .iter()
                .zip(&mults)
                .map(|(&k, &m)| (self.roots[k].clone(), m as u64))
                .collect(),
            accepting_clusters: accepting,
        })
    }

    /// Smoothness, purity and sampled completeness in one report.
    pub fn verify_fan(&self, samples: usize, seed: u64) -> FanReport {
        let mut failures = Vec::new();
        let clusters = self.clusters();
        let mut purity_ok = true;
        let mut smooth_ok = true;
        for cluster in clusters {
            if cluster.len() != self.rank {
                purity_ok = false;
                failures.push(format!(
                    "cluster {:?} has size {}, expected {}",
                    cluster,
                    cluster.len(),
                    self.rank
                ));
                continue;
            }
            match self.cluster_det(cluster) {
                Ok(d) if d.abs() == 1 => {}
                Ok(d) => {
                    smooth_ok = false;
                    failures.push(format!("cluster {cluster:?} has determinant {d}"));
                }
                Err(e) => {
                    smooth_ok = false;
                    failures.push(format!("cluster {cluster:?}: {e}"));
                }
            }
        }

        let mut completeness_ok = true;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vertices = self.quiver.vertices().to_vec();
        for _ in 0..samples {
            let vals: Vec<i64> = vertices.iter().map(|_| rng.gen_range(-10..=10)).collect();
            let gamma = RootVector::from_values(&vertices, &vals).expect("lengths match");
            if let Err(e) = self.expand(&gamma) {
                completeness_ok = false;
                failures.push(format!("{e}"));
                if failures.len() > 32 {
                    break;
                }
            }
        }

        FanReport {
            quiver: self.quiver.to_string(),
            rank: self.rank,
            cluster_count: clusters.len(),
            purity_ok,
            smooth_ok,
            samples,
            seed,
            completeness_ok,
            failures,
        }
    }

    /// Fan export: rank, root coordinates (ascending vertex order) and
    /// clusters as indices into the root list.
    pub fn fan_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.rank,
            "roots": self.roots.iter().map(|r| r.values()).collect::<Vec<_>>(),
            "clusters": self.clusters(),
        })
    }
}

/// The unique cluster expansion of a lattice vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterExpansion {
    pub gamma: RootVector,
    /// Roots with their positive multiplicities.
    pub terms: Vec<(RootVector, u64)>,
    /// How many cluster cones accepted the vector (faces are shared).
    pub accepting_clusters: usize,
}

impl ClusterExpansion {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "gamma": self.gamma.values(),
            "terms": self
                .terms
                .iter()
                .map(|(root, mult)| serde_json::json!({
                    "root": root.values(),
                    "label": root.label(),
                    "multiplicity": mult,
                }))
                .collect::<Vec<_>>(),
        })
    }

    /// Reassembles the vector from the expansion.
    pub fn total(&self, vertices: &[usize]) -> RootVector {
        let mut acc = RootVector::zero(vertices);
        for (root, mult) in &self.terms {
            acc = acc.add(&root.scaled(*mult as i64));
        }
        acc
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FanReport {
    pub quiver: String,
    pub rank: usize,
    pub cluster_count: usize,
    pub purity_ok: bool,
    pub smooth_ok: bool,
    pub samples: usize,
    pub seed: u64,
    pub completeness_ok: bool,
    pub failures: Vec<String>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.purity_ok && self.smooth_ok && self.completeness_ok
    }
}

// ---------------------------------------------------------------------------
// Free-function forms
// ---------------------------------------------------------------------------

pub fn enumerate_clusters(quiver: &Quiver) -> Result<Vec<Vec<RootVector>>> {
    let ctx = ClusterContext::new(quiver)?;
    Ok(ctx
        .clusters()
        .iter()
        .map(|c| ctx.cluster_roots(c))
        .collect())
}

pub fn positive_clusters(quiver: &Quiver) -> Result<Vec<Vec<RootVector>>> {
    let ctx = ClusterContext::new(quiver)?;
    let clusters = ctx.positive_clusters()?;
    Ok(clusters.iter().map(|c| ctx.cluster_roots(c)).collect())
}

pub fn cluster_expansion(quiver: &Quiver, gamma: &RootVector) -> Result<ClusterExpansion> {
    ClusterContext::new(quiver)?.expand(gamma)
}

pub fn verify_fan(quiver: &Quiver, samples: usize, seed: u64) -> Result<FanReport> {
    Ok(ClusterContext::new(quiver)?.verify_fan(samples, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        alternating_orientation, dynkin_graph, enumerate_orientations, DynkinType, TreeGraph,
        Vertex,
    };

    fn rv(vals: &[i64]) -> RootVector {
        let vertices: Vec<Vertex> = (1..=vals.len()).collect();
        RootVector::from_values(&vertices, vals).unwrap()
    }

    fn ctx(q: &Quiver) -> ClusterContext {
        ClusterContext::new(q).unwrap()
    }

    #[test]
    fn a1_has_two_singleton_clusters() {
        let q = Quiver::from_orientation_mask(&TreeGraph::path(1), 0);
        let c = ctx(&q);
        let clusters = c.clusters();
        assert_eq!(clusters.len(), 2);
        assert!(clusters.iter().all(|cl| cl.len() == 1));
    }

    /// Brute-force oracle: all subsets of the almost positive roots,
    /// filtered to pairwise compatibility, kept if maximal.
    fn brute_force_clusters(c: &ClusterContext) -> Vec<Vec<usize>> {
        let total = c.roots().len();
        assert!(total <= 20, "oracle is exponential");
        let compatible = |a: usize, b: usize| c.degree_by_index(a, b) == 0;
        let mut sets: Vec<Vec<usize>> = Vec::new();
        'subsets: for mask in 0u32..1 << total {
            let members: Vec<usize> = (0..total).filter(|&k| mask >> k & 1 == 1).collect();
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    if !compatible(members[i], members[j]) {
                        continue 'subsets;
                    }
                }
            }
            let extendable = (0..total)
                .any(|v| !members.contains(&v) && members.iter().all(|&m| compatible(m, v)));
            if !extendable {
                sets.push(members);
            }
        }
        sets.sort();
        sets
    }

    #[test]
    fn cluster_counts_match_brute_force_on_a2_and_a3() {
        for graph in [TreeGraph::path(2), TreeGraph::path(3)] {
            for q in enumerate_orientations(&graph) {
                let c = ctx(&q);
                let fast: Vec<Vec<usize>> = c.clusters().to_vec();
                assert_eq!(fast, brute_force_clusters(&c), "{q}");
            }
        }
    }

    #[test]
    fn cluster_counts_for_small_types() {
        // Cluster numbers: A2 = 5, A3 = 14, D4 = 50.
        for q in enumerate_orientations(&TreeGraph::path(2)) {
            assert_eq!(ctx(&q).clusters().len(), 5);
        }
        for q in enumerate_orientations(&TreeGraph::path(3)) {
            assert_eq!(ctx(&q).clusters().len(), 14);
        }
        let d4 = dynkin_graph(DynkinType::D, 4).unwrap();
        let q = alternating_orientation(d4.graph()).0;
        assert_eq!(ctx(&q).clusters().len(), 50);
    }

    #[test]
    fn positive_cluster_counts_for_small_types() {
        for q in enumerate_orientations(&TreeGraph::path(2)) {
            assert_eq!(ctx(&q).positive_clusters().unwrap().len(), 2);
        }
        for q in enumerate_orientations(&TreeGraph::path(3)) {
            assert_eq!(ctx(&q).positive_clusters().unwrap().len(), 5);
        }
        let d4 = dynkin_graph(DynkinType::D, 4).unwrap();
        for q in enumerate_orientations(d4.graph()) {
            assert_eq!(ctx(&q).positive_clusters().unwrap().len(), 20);
        }
    }

    #[test]
    fn purity_and_unimodularity_hold_on_small_types() {
        for graph in [
            TreeGraph::path(3),
            dynkin_graph(DynkinType::D, 4).unwrap().graph().clone(),
        ] {
            for q in enumerate_orientations(&graph) {
                let c = ctx(&q);
                for cluster in c.clusters() {
                    assert_eq!(cluster.len(), c.rank());
                    assert_eq!(c.cluster_det(cluster).unwrap().abs(), 1);
                }
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let a2 = Quiver::from_orientation_mask(&TreeGraph::path(2), 0); // 1->2
        let c = ctx(&a2);

        let zero = c.expand(&rv(&[0, 0])).unwrap();
        assert!(zero.terms.is_empty());
        // The zero vector sits in every cluster cone.
        assert_eq!(zero.accepting_clusters, c.clusters().len());

        let negatives = c.expand(&rv(&[-1, -1])).unwrap();
        assert_eq!(negatives.terms, vec![(rv(&[-1, 0]), 1), (rv(&[0, -1]), 1)]);

        let mixed = c.expand(&rv(&[1, 2])).unwrap();
        assert_eq!(mixed.terms, vec![(rv(&[0, 1]), 1), (rv(&[1, 1]), 1)]);

        assert!(matches!(c.expand(&rv(&[1, 2, 3])), Err(Error::Domain(_))));
    }

    #[test]
    fn expansion_reassembles_and_has_truncated_negative_part() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let graph = TreeGraph::path(3);
        for q in enumerate_orientations(&graph) {
            let c = ctx(&q);
            for _ in 0..200 {
                let vals: Vec<i64> = (0..3).map(|_| rng.gen_range(-10..=10)).collect();
                let gamma = rv(&vals);
                let expansion = c.expand(&gamma).unwrap();
                assert_eq!(expansion.total(&[1, 2, 3]), gamma);
                for &v in graph.vertices() {
                    let neg = RootVector::simple(graph.vertices(), v).unwrap().neg();
                    let mult = expansion
                        .terms
                        .iter()
                        .find(|(r, _)| r == &neg)
                        .map(|(_, m)| *m as i64)
                        .unwrap_or(0);
                    assert_eq!(mult, (-gamma.coeff(v)).max(0));
                }
                // Positive part has the truncated dimension vector.
                let mut positive_sum = RootVector::zero(graph.vertices());
                for (root, mult) in &expansion.terms {
                    if root.is_positive() {
                        positive_sum = positive_sum.add(&root.scaled(*mult as i64));
                    }
                }
                for &v in graph.vertices() {
                    assert_eq!(positive_sum.coeff(v), gamma.coeff(v).max(0));
                }
            }
        }
    }

    #[test]
    fn fan_reports_pass_on_small_types() {
        for graph in [TreeGraph::path(2), TreeGraph::path(3)] {
            for q in enumerate_orientations(&graph) {
                let report = ctx(&q).verify_fan(250, DEFAULT_SEED);
                assert!(report.passed(), "{report:?}");
            }
        }
    }

    #[test]
    fn reduction_by_negative_support_matches_subsystems() {
        // Clusters with negative support J correspond to positive clusters
        // of the induced subquiver on the complement.
        let graph = TreeGraph::path(3);
        for q in enumerate_orientations(&graph) {
            let c = ctx(&q);
            let all_vertices: BTreeSet<Vertex> = graph.vertices().iter().copied().collect();
            for j_mask in 0u32..1 << 3 {
                let j: BTreeSet<Vertex> = graph
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| j_mask >> k & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                let complement: BTreeSet<Vertex> = all_vertices.difference(&j).copied().collect();
                let with_support: Vec<Vec<RootVector>> = c
                    .clusters()
                    .iter()
                    .filter(|cl| c.negative_support(cl) == j)
                    .map(|cl| {
                        cl.iter()
                            .map(|&k| c.roots()[k].clone())
                            .filter(|r| r.is_positive())
                            .collect()
                    })
                    .collect();

                let sub = q.induced(&complement).unwrap();
                let sub_positive = ClusterContext::new(&sub).unwrap();
                let sub_clusters = sub_positive.positive_clusters().unwrap();
                assert_eq!(with_support.len(), sub_clusters.len(), "J={j:?} over {q}");

                // The bijection is literally "drop the negatives": compare
                // the root sets after restricting coordinates.
                let sub_vertices: Vec<Vertex> = complement.iter().copied().collect();
                let mut lhs: Vec<Vec<RootVector>> = with_support
                    .iter()
                    .map(|cl| cl.iter().map(|r| r.restrict(&sub_vertices)).collect())
                    .collect();
                let mut rhs: Vec<Vec<RootVector>> = sub_clusters
                    .iter()
                    .map(|cl| sub_positive.cluster_roots(cl))
                    .collect();
                for side in [&mut lhs, &mut rhs] {
                    for cl in side.iter_mut() {
                        cl.sort();
                    }
                    side.sort();
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn degree_table_matches_the_decorated_pairing() {
        // The context assembles degrees from the Ext table; the definition
        // pairs decorated indecomposables. Both routes must agree.
        use crate::decorated::compatibility_degree;
        let graphs = [
            TreeGraph::path(3),
            dynkin_graph(DynkinType::D, 4).unwrap().graph().clone(),
        ];
        for graph in graphs {
            let q = alternating_orientation(&graph).0;
            let c = ctx(&q);
            for a in c.roots() {
                for b in c.roots() {
                    assert_eq!(
                        c.degree(a, b).unwrap(),
                        compatibility_degree(&q, a, b).unwrap(),
                        "({}, {}) over {}",
                        a.label(),
                        b.label(),
                        q
                    );
                }
            }
        }
    }

    #[test]
    fn fan_json_shape() {
        let q = alternating_orientation(&TreeGraph::path(2)).0;
        let json = ctx(&q).fan_json();
        assert_eq!(json["rank"], 2);
        assert_eq!(json["roots"].as_array().unwrap().len(), 5);
        assert_eq!(json["clusters"].as_array().unwrap().len(), 5);
    }
}
