//! Counting Ext-free sets: f-vectors, Möbius inversion over vertex
//! subsets, orientation invariance, the exponent product formula for the
//! number of maximal positive sets, and isomorphism of the positive
//! complexes.
//!
//! Ext-freeness is a pairwise condition, so every complex here is the
//! clique complex of a compatibility graph; faces are counted by
//! backtracking without materializing them.

use std::collections::BTreeSet;

use num::rational::Ratio;
use serde::Serialize;

use crate::clusters::ClusterContext;
use crate::graph::{enumerate_orientations, DynkinGraph, Quiver, RootVector, Vertex};
use crate::{Error, Result};

/// Largest rank enumerated without the explicit override.
pub const DEFAULT_RANK_CAP: usize = 6;

fn check_cap(rank: usize, large: bool) -> Result<()> {
    if rank > DEFAULT_RANK_CAP && !large {
        return Err(Error::Resource(format!(
            "rank {rank} exceeds the default cap {DEFAULT_RANK_CAP}; pass the large flag to enumerate anyway"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// f-vectors
// ---------------------------------------------------------------------------

/// Face counts by cardinality; entry `k` is the number of compatible sets
/// of size `k`, so entry 0 is always 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVector {
    pub counts: Vec<u64>,
}

impl FVector {
    pub fn top(&self) -> u64 {
        self.counts.last().copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Counts all cliques of the graph `compatible` on `total` vertices,
/// restricted to vertices below `limit`, bucketed by size.
fn count_cliques(limit: usize, compatible: &dyn Fn(usize, usize) -> bool, counts: &mut Vec<u64>) {
    fn extend(
        members: &mut Vec<usize>,
        candidates: &[usize],
        compatible: &dyn Fn(usize, usize) -> bool,
        counts: &mut Vec<u64>,
    ) {
        if counts.len() == members.len() {
            counts.push(0);
        }
        counts[members.len()] += 1;
        for (k, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&w| compatible(v, w))
                .collect();
            members.push(v);
            extend(members, &next, compatible, counts);
            members.pop();
        }
    }
    let all: Vec<usize> = (0..limit).collect();
    extend(&mut Vec::new(), &all, compatible, counts);
}

/// Number of Ext-free sets (equivalently, positive compatible subsets) of
/// each cardinality.
pub fn f_plus_vector(quiver: &Quiver, large: bool) -> Result<FVector> {
    check_cap(quiver.vertices().len(), large)?;
    let ctx = ClusterContext::new(quiver)?;
    let mut counts = Vec::new();
    count_cliques(
        ctx.positive_count(),
        &|a, b| ctx.degree_by_index(a, b) == 0,
        &mut counts,
    );
    Ok(FVector { counts })
}

/// Number of compatible subsets of each cardinality among the almost
/// positive roots supported on `j`, under the induced orientation.
pub fn full_f_vector(quiver: &Quiver, j: &BTreeSet<Vertex>) -> Result<FVector> {
    for &v in j {
        if !quiver.graph().contains_vertex(v) {
            return Err(Error::Domain(format!("vertex {v} is not in the quiver")));
        }
    }
    let sub = quiver.induced(j)?;
    let ctx = ClusterContext::new(&sub)?;
    let mut counts = Vec::new();
    count_cliques(
        ctx.roots().len(),
        &|a, b| ctx.degree_by_index(a, b) == 0,
        &mut counts,
    );
    Ok(FVector { counts })
}

// ---------------------------------------------------------------------------
// Möbius inversion
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct MoebiusReport {
    pub quiver: String,
    pub rank: usize,
    pub relation_checked: usize,
    pub inversion_checked: usize,
    pub violations: Vec<String>,
}

impl MoebiusReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn subsets(vertices: &[Vertex]) -> Vec<BTreeSet<Vertex>> {
    (0u32..1 << vertices.len())
        .map(|mask| {
            vertices
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Verifies, for every pair `(k, J)`, the convolution
/// `f(k,J) = Σ_{K ⊆ J, |K| ≤ k} f⁺(k−|K|, J−K)`
/// and its Möbius inverse
/// `f⁺(k,J) = Σ_{K ⊆ J} (−1)^{|J−K|} f(k−|J−K|, K)`
/// over the poset `(l,K) ≤ (k,J) ⇔ K ⊆ J, k−l = |J−K|`.
pub fn moebius_consistency(quiver: &Quiver, large: bool) -> Result<MoebiusReport> {
    let vertices = quiver.vertices().to_vec();
    check_cap(vertices.len(), large)?;
    let all_subsets = subsets(&vertices);
    let mut full: Vec<FVector> = Vec::with_capacity(all_subsets.len());
    let mut plus: Vec<FVector> = Vec::with_capacity(all_subsets.len());
    for j in &all_subsets {
        full.push(full_f_vector(quiver, j)?);
        let sub = quiver.induced(j)?;
        let ctx = ClusterContext::new(&sub)?;
        let mut counts = Vec::new();
        count_cliques(
            ctx.positive_count(),
            &|a, b| ctx.degree_by_index(a, b) == 0,
            &mut counts,
        );
        plus.push(FVector { counts });
    }
    let index_of = |j: &BTreeSet<Vertex>| all_subsets.iter().position(|s| s == j).unwrap();
    let get = |table: &[FVector], j: usize, k: i64| -> i64 {
        if k < 0 {
            return 0;
        }
        table[j].counts.get(k as usize).copied().unwrap_or(0) as i64
    };

    let mut report = MoebiusReport {
        quiver: quiver.to_string(),
        rank: vertices.len(),
        relation_checked: 0,
        inversion_checked: 0,
        violations: Vec::new(),
    };
    for (j_idx, j) in all_subsets.iter().enumerate() {
        let sub_subsets = subsets(&j.iter().copied().collect::<Vec<_>>());
        for k in 0..=j.len() as i64 {
            // f(k,J) = Σ_{K ⊆ J, |K| ≤ k} f⁺(k−|K|, J−K)
            let mut sum = 0;
            for kk in &sub_subsets {
                if kk.len() as i64 > k {
                    continue;
                }
                let rest: BTreeSet<Vertex> = j.difference(kk).copied().collect();
                sum += get(&plus, index_of(&rest), k - kk.len() as i64);
            }
            report.relation_checked += 1;
            let lhs = get(&full, j_idx, k);
            if lhs != sum {
                report.violations.push(format!(
                    "relation fails at (k={k}, J={j:?}): f = {lhs}, convolution = {sum}"
                ));
            }

            // Inversion: f⁺(k,J) = Σ_{K ⊆ J} (−1)^{|J−K|} f(k−|J−K|, K)
            let mut inv = 0;
            for kk in &sub_subsets {
                let dropped = (j.len() - kk.len()) as i64;
                let sign = if dropped % 2 == 0 { 1 } else { -1 };
                inv += sign * get(&full, index_of(kk), k - dropped);
            }
            report.inversion_checked += 1;
            let direct = get(&plus, j_idx, k);
            if direct != inv {
                report.violations.push(format!(
                    "inversion fails at (k={k}, J={j:?}): f⁺ = {direct}, inverse = {inv}"
                ));
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Orientation invariance and the product formula
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub graph: String,
    pub orientations: usize,
    pub invariant: bool,
    pub f_plus: FVector,
    pub violations: Vec<String>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.invariant
    }
}

/// Computes the positive f-vector for every orientation and checks they
/// all agree.
pub fn orientation_invariance(graph: &DynkinGraph, large: bool) -> Result<InvarianceReport> {
    check_cap(graph.rank(), large)?;
    let orientations = enumerate_orientations(graph.graph());
    let mut common: Option<FVector> = None;
    let mut violations = Vec::new();
    for q in &orientations {
        let f = f_plus_vector(q, large)?;
        match &common {
            None => common = Some(f),
            Some(expected) => {
                if &f != expected {
                    violations.push(format!(
                        "{q}: f⁺ = {:?}, expected {:?}",
                        f.counts, expected.counts
                    ));
                }
            }
        }
    }
    let f_plus = common.unwrap_or(FVector { counts: vec![1] });
    Ok(InvarianceReport {
        graph: graph.label(),
        orientations: orientations.len(),
        invariant: violations.is_empty(),
        f_plus,
        violations,
    })
}

/// The number of maximal positive compatible sets of an irreducible
/// diagram: `Π_i (e_i + h − 1) / (e_i + 1)` over the exponents, with the
/// Coxeter number `h`. The product is evaluated exactly and must come out
/// integral.
pub fn positive_cluster_count(graph: &DynkinGraph) -> Result<u64> {
    if !graph.is_irreducible() {
        return Err(Error::Domain(
            "the product formula is stated for irreducible diagrams".into(),
        ));
    }
    let comp = &graph.components[0];
    let h = comp.coxeter_number;
    let mut product = Ratio::<u128>::from_integer(1);
    for &e in &comp.exponents {
        product *= Ratio::new((e + h - 1) as u128, (e + 1) as u128);
    }
    if !product.is_integer() {
        return Err(Error::Internal(format!(
            "exponent product {product} is not an integer"
        )));
    }
    Ok(*product.numer() as u64)
}

// ---------------------------------------------------------------------------
// Complex isomorphism
// ---------------------------------------------------------------------------

/// Positive complex of a quiver: compatibility adjacency over positive
/// roots, plus its facets.
struct PositiveComplex {
    roots: Vec<RootVector>,
    adjacent: Vec<Vec<bool>>,
    facets: BTreeSet<Vec<usize>>,
}

fn positive_complex(quiver: &Quiver) -> Result<PositiveComplex> {
    let ctx = ClusterContext::new(quiver)?;
    let count = ctx.positive_count();
    let adjacent: Vec<Vec<bool>> = (0..count)
        .map(|a| {
            (0..count)
                .map(|b| a != b && ctx.degree_by_index(a, b) == 0)
                .collect()
        })
        .collect();
    let facets: BTreeSet<Vec<usize>> = ctx.positive_clusters()?.into_iter().collect();
    Ok(PositiveComplex {
        roots: ctx.roots()[..count].to_vec(),
        adjacent,
        facets,
    })
}

/// Decides whether the positive complexes of two orientations of one
/// graph are isomorphic, by backtracking over vertex bijections with
/// degree pruning and a final facet-set comparison. The complexes are
/// clique complexes, so edge preservation already decides the question;
/// the facet check keeps the comparison at the level of whole complexes.
pub fn complex_isomorphic(q1: &Quiver, q2: &Quiver) -> Result<bool> {
    if q1.graph() != q2.graph() {
        return Err(Error::Domain("orientations of one graph expected".into()));
    }
    if q1.vertices().len() > 4 {
        return Err(Error::Resource(
            "complex isomorphism search is limited to rank at most 4".into(),
        ));
    }
    let c1 = positive_complex(q1)?;
    let c2 = positive_complex(q2)?;
    let n = c1.roots.len();
    if n != c2.roots.len() {
        return Ok(false);
    }
    let degree = |c: &PositiveComplex, v: usize| c.adjacent[v].iter().filter(|&&x| x).count();
    let facet_degree =
        |c: &PositiveComplex, v: usize| c.facets.iter().filter(|f| f.contains(&v)).count();
    let mut deg1: Vec<(usize, usize)> = (0..n)
        .map(|v| (degree(&c1, v), facet_degree(&c1, v)))
        .collect();
    let mut deg2: Vec<(usize, usize)> = (0..n)
        .map(|v| (degree(&c2, v), facet_degree(&c2, v)))
        .collect();
    {
        let mut s1 = deg1.clone();
        let mut s2 = deg2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return Ok(false);
        }
    }
    deg1.truncate(n);
    deg2.truncate(n);

    fn search(
        c1: &PositiveComplex,
        c2: &PositiveComplex,
        deg1: &[(usize, usize)],
        deg2: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let v = map.len();
        if v == c1.roots.len() {
            let mapped: BTreeSet<Vec<usize>> = c1
                .facets
                .iter()
                .map(|f| {
                    let mut g: Vec<usize> = f.iter().map(|&x| map[x]).collect();
                    g.sort_unstable();
                    g
                })
                .collect();
            return mapped == c2.facets;
        }
        for w in 0..c2.roots.len() {
            if used[w] || deg1[v] != deg2[w] {
                continue;
            }
            if (0..v).any(|u| c1.adjacent[v][u] != c2.adjacent[w][map[u]]) {
                continue;
            }
            map.push(w);
            used[w] = true;
            if search(c1, c2, deg1, deg2, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }

    let mut map = Vec::new();
    let mut used = vec![false; n];
    Ok(search(&c1, &c2, &deg1, &deg2, &mut map, &mut used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{alternating_orientation, dynkin_graph, DynkinType, TreeGraph};

    fn a3_gamma0() -> Quiver {
        alternating_orientation(&TreeGraph::path(3)).0
    }

    fn a3_gamma1() -> Quiver {
        Quiver::from_orientation_mask(&TreeGraph::path(3), 0)
    }

    #[test]
    fn f_plus_examples() {
        let a1 = Quiver::from_orientation_mask(&TreeGraph::path(1), 0);
        assert_eq!(f_plus_vector(&a1, false).unwrap().counts, vec![1, 1]);

        for q in enumerate_orientations(&TreeGraph::path(2)) {
            assert_eq!(f_plus_vector(&q, false).unwrap().counts, vec![1, 3, 2]);
        }
        for q in enumerate_orientations(&TreeGraph::path(3)) {
            assert_eq!(f_plus_vector(&q, false).unwrap().counts, vec![1, 6, 10, 5]);
        }
    }

    #[test]
    fn full_f_examples() {
        let a2 = Quiver::from_orientation_mask(&TreeGraph::path(2), 0);
        let all: BTreeSet<Vertex> = [1, 2].into_iter().collect();
        assert_eq!(full_f_vector(&a2, &all).unwrap().counts, vec![1, 5, 5]);

        assert_eq!(
            full_f_vector(&a2, &BTreeSet::new()).unwrap().counts,
            vec![1]
        );

        let q3 = a3_gamma0();
        let ends: BTreeSet<Vertex> = [1, 3].into_iter().collect();
        assert_eq!(full_f_vector(&q3, &ends).unwrap().counts, vec![1, 4, 4]);

        assert!(matches!(
            full_f_vector(&a2, &[7].into_iter().collect()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn full_f_vector_is_orientation_invariant() {
        // The full f-vector over the almost positive roots (not just the
        // positive one) agrees across orientations, entry by entry.
        for graph in [
            TreeGraph::path(3),
            dynkin_graph(DynkinType::D, 4).unwrap().graph().clone(),
        ] {
            let all: BTreeSet<Vertex> = graph.vertices().iter().copied().collect();
            let mut seen: Option<Vec<u64>> = None;
            for q in enumerate_orientations(&graph) {
                let counts = full_f_vector(&q, &all).unwrap().counts;
                match &seen {
                    None => seen = Some(counts),
                    Some(expected) => assert_eq!(&counts, expected, "{q}"),
                }
            }
        }
    }

    #[test]
    fn moebius_relation_examples() {
        // A2, k = 2, J = I: 5 = 2 + 1 + 1 + 1.
        let a2 = Quiver::from_orientation_mask(&TreeGraph::path(2), 0);
        let report = moebius_consistency(&a2, false).unwrap();
        assert!(report.passed(), "{:?}", report.violations);

        let a1 = Quiver::from_orientation_mask(&TreeGraph::path(1), 0);
        assert!(moebius_consistency(&a1, false).unwrap().passed());

        for q in enumerate_orientations(&TreeGraph::path(3)) {
            let report = moebius_consistency(&q, false).unwrap();
            assert!(report.passed(), "{q}: {:?}", report.violations);
        }
    }

    #[test]
    fn orientation_invariance_examples() {
        let a3 = dynkin_graph(DynkinType::A, 3).unwrap();
        let report = orientation_invariance(&a3, false).unwrap();
        assert!(report.passed());
        assert_eq!(report.orientations, 4);
        assert_eq!(report.f_plus.counts, vec![1, 6, 10, 5]);

        let d4 = dynkin_graph(DynkinType::D, 4).unwrap();
        let report = orientation_invariance(&d4, false).unwrap();
        assert!(report.passed());
        assert_eq!(report.orientations, 8);
        assert_eq!(report.f_plus.top(), 20);
    }

    #[test]
    fn product_formula_examples() {
        let count = |ty, rank| positive_cluster_count(&dynkin_graph(ty, rank).unwrap()).unwrap();
        assert_eq!(count(DynkinType::A, 1), 1);
        assert_eq!(count(DynkinType::A, 2), 2);
        assert_eq!(count(DynkinType::A, 3), 5);
        assert_eq!(count(DynkinType::A, 4), 14);
        assert_eq!(count(DynkinType::D, 4), 20);
        assert_eq!(count(DynkinType::D, 5), 77);
        assert_eq!(count(DynkinType::E, 6), 418);
        assert_eq!(count(DynkinType::E, 7), 2431);
        assert_eq!(count(DynkinType::E, 8), 17342);
    }

    #[test]
    fn corrupted_exponent_table_is_caught() {
        // Fault injection: a corrupted Coxeter number slips past the
        // exponent-sum self-check but must break the product formula
        // against the enumerated count.
        let mut a3 = dynkin_graph(DynkinType::A, 3).unwrap();
        a3.components[0].coxeter_number = 6;
        let formula = positive_cluster_count(&a3).unwrap();
        assert_eq!(formula, 14);
        let enumerated = orientation_invariance(&a3, false).unwrap().f_plus.top();
        assert_ne!(formula, enumerated);

        // A corrupted exponent list is typically caught even earlier: the
        // product stops being integral.
        let mut bad = dynkin_graph(DynkinType::A, 3).unwrap();
        bad.components[0].exponents = vec![1, 1, 4];
        assert!(matches!(
            positive_cluster_count(&bad),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn figure_one_complexes() {
        // Both A3 positive complexes have 6 vertices, 10 edges and 5
        // triangles, but differ on two specific edges and are not
        // isomorphic: the long root has compatibility degree 4 in the
        // alternating complex and 5 in the equioriented one.
        let g0 = a3_gamma0();
        let g1 = a3_gamma1();
        assert_eq!(f_plus_vector(&g0, false).unwrap().counts, vec![1, 6, 10, 5]);
        assert_eq!(f_plus_vector(&g1, false).unwrap().counts, vec![1, 6, 10, 5]);

        let c0 = positive_complex(&g0).unwrap();
        let c1 = positive_complex(&g1).unwrap();
        let idx = |c: &PositiveComplex, vals: &[i64]| {
            let root = RootVector::from_values(&[1, 2, 3], vals).unwrap();
            c.roots.iter().position(|r| r == &root).unwrap()
        };
        // Edge {a1+a2, a2+a3} lives in the alternating complex only.
        assert!(c0.adjacent[idx(&c0, &[1, 1, 0])][idx(&c0, &[0, 1, 1])]);
        assert!(!c1.adjacent[idx(&c1, &[1, 1, 0])][idx(&c1, &[0, 1, 1])]);
        // Edge {a2, a1+a2+a3} lives in the equioriented complex only.
        assert!(!c0.adjacent[idx(&c0, &[0, 1, 0])][idx(&c0, &[1, 1, 1])]);
        assert!(c1.adjacent[idx(&c1, &[0, 1, 0])][idx(&c1, &[1, 1, 1])]);
        // Degrees of the long root.
        let long0 = idx(&c0, &[1, 1, 1]);
        let long1 = idx(&c1, &[1, 1, 1]);
        assert_eq!(c0.adjacent[long0].iter().filter(|&&x| x).count(), 4);
        assert_eq!(c1.adjacent[long1].iter().filter(|&&x| x).count(), 5);

        assert!(!complex_isomorphic(&g0, &g1).unwrap());
        assert!(complex_isomorphic(&g0, &g0).unwrap());
        assert!(complex_isomorphic(&g0, &g0.opposite()).unwrap());
    }

    #[test]
    fn rank_cap_is_enforced() {
        let e7 = dynkin_graph(DynkinType::E, 7).unwrap();
        let q = alternating_orientation(e7.graph()).0;
        assert!(matches!(f_plus_vector(&q, false), Err(Error::Resource(_))));
        let d5 = dynkin_graph(DynkinType::D, 5).unwrap();
        let q5 = alternating_orientation(d5.graph()).0;
        assert!(matches!(
            complex_isomorphic(&q5, &q5),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn formula_matches_enumeration_through_rank_five() {
        for (ty, rank) in [
            (DynkinType::A, 2),
            (DynkinType::A, 3),
            (DynkinType::A, 4),
            (DynkinType::D, 4),
        ] {
            let graph = dynkin_graph(ty, rank).unwrap();
            let formula = positive_cluster_count(&graph).unwrap();
            let enumerated = orientation_invariance(&graph, false).unwrap().f_plus.top();
            assert_eq!(formula, enumerated, "{ty}{rank}");
        }
    }
}
