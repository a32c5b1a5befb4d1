//! The one-shot verification suite.
//!
//! Runs every structural identity the crate is built on, over a
//! configurable family of Dynkin graphs with all their orientations:
//! representation-theoretic identities, the decorated reflection
//! theorems, cluster/fan properties, groupoid word laws and the census
//! counts. Deterministic for a fixed configuration and seed.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::clusters::ClusterContext;
use crate::decorated::{
    decorated_of_root, e_dim, extended_reflect, reflection_hypothesis, sigma, tau, DecoratedRep,
    Sign,
};
use crate::graph::{
    almost_positive_roots, dynkin_graph, enumerate_orientations, euler_form, DynkinGraph,
    DynkinType, Quiver, RootVector, Vertex,
};
use crate::groupoid::{
    apply_word, check_lemmas, classify_loops, normal_form, word_action_on_roots, Letter, Word,
};
use crate::rep::{classical_reflect, ext_dim, hom_dim, IndecTable, Representation};
use crate::{census, Error, Result};

// ---------------------------------------------------------------------------
// Configuration and report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckGroup {
    Rep,
    Decorated,
    Clusters,
    Groupoid,
    Census,
}

impl CheckGroup {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "rep" => Ok(CheckGroup::Rep),
            "decorated" => Ok(CheckGroup::Decorated),
            "clusters" => Ok(CheckGroup::Clusters),
            "groupoid" => Ok(CheckGroup::Groupoid),
            "census" => Ok(CheckGroup::Census),
            _ => Err(Error::Parse(format!(
                "unknown check group {text:?}; expected rep, decorated, clusters, groupoid or census"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub graphs: Vec<(DynkinType, usize)>,
    pub seed: u64,
    /// Lattice vectors sampled per orientation for expansion checks.
    pub fan_samples: usize,
    /// Random direct sums per orientation for the reflection checks.
    pub random_sums: usize,
    /// Length bound for the loop classification.
    pub loop_len: usize,
    /// Length bound for the word-lemma sweep (plain enumeration).
    pub lemma_len: usize,
    /// Check groups to run; `None` runs everything.
    pub checks: Option<BTreeSet<CheckGroup>>,
    pub jobs: usize,
    pub large: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            graphs: vec![
                (DynkinType::A, 1),
                (DynkinType::A, 2),
                (DynkinType::A, 3),
                (DynkinType::A, 4),
                (DynkinType::D, 4),
            ],
            seed: crate::clusters::DEFAULT_SEED,
            fan_samples: 200,
            random_sums: 200,
            loop_len: 12,
            lemma_len: 10,
            checks: None,
            jobs: 1,
            large: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub scope: String,
    pub passed: bool,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Wall time; excluded from serialized reports so that output is
    /// byte-identical across runs.
    #[serde(skip)]
    pub wall_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub graphs: Vec<String>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.passed
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

// ---------------------------------------------------------------------------
// Precomputed scope
// ---------------------------------------------------------------------------

struct OrientationData {
    quiver: Quiver,
    table: IndecTable,
    ctx: ClusterContext,
}

struct GraphScope {
    graph: DynkinGraph,
    orientations: Vec<OrientationData>,
}

impl GraphScope {
    fn by_mask(&self, mask: u64) -> &OrientationData {
        self.orientations
            .iter()
            .find(|o| o.quiver.orientation_mask() == mask)
            .expect("every orientation is in scope")
    }
}

fn build_scope(cfg: &VerifyConfig) -> Result<Vec<GraphScope>> {
    cfg.graphs
        .iter()
        .map(|&(ty, rank)| {
            let graph = dynkin_graph(ty, rank)?;
            let orientations: Vec<OrientationData> = enumerate_orientations(graph.graph())
                .into_par_iter()
                .map(|quiver| {
                    let table = IndecTable::new(&quiver)?;
                    let ctx = ClusterContext::from_table(&table)?;
                    Ok(OrientationData { quiver, table, ctx })
                })
                .collect::<Result<_>>()?;
            Ok(GraphScope {
                graph,
                orientations,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

struct Failures {
    examples: Vec<String>,
    count: u64,
}

impl Failures {
    fn new() -> Self {
        Failures {
            examples: Vec::new(),
            count: 0,
        }
    }

    fn push(&mut self, message: String) {
        self.count += 1;
        if self.examples.len() < 8 {
            self.examples.push(message);
        }
    }

    fn merge(&mut self, other: Failures) {
        let examples = other.examples.len() as u64;
        for e in other.examples {
            self.push(e);
        }
        self.count += other.count.saturating_sub(examples);
    }

    fn into_result(
        self,
        name: &str,
        scope: String,
        details: String,
        start: Instant,
    ) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            scope,
            passed: self.count == 0,
            details: if self.count == 0 {
                details
            } else {
                format!("{details}; {} failures", self.count)
            },
            counterexample: self.examples.first().cloned(),
            wall_ms: start.elapsed().as_millis(),
        }
    }
}

fn scope_label(scopes: &[GraphScope]) -> String {
    scopes
        .iter()
        .map(|s| {
            format!(
                "{} ({} orientations)",
                s.graph.label(),
                s.orientations.len()
            )
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Deterministic random decorated sum: a few indecomposable summands and
/// a sprinkling of decorations.
fn random_decorated_sum(data: &OrientationData, rng: &mut ChaCha8Rng) -> Result<DecoratedRep> {
    let table = &data.table;
    let mut plus = Representation::zero(&data.quiver);
    for _ in 0..rng.gen_range(0..=3) {
        let k = rng.gen_range(0..table.reps().len());
        plus = plus.direct_sum(&table.reps()[k])?;
    }
    let mut minus = std::collections::BTreeMap::new();
    for &v in data.quiver.vertices() {
        if rng.gen_bool(0.3) {
            minus.insert(v, rng.gen_range(1..=2usize));
        }
    }
    DecoratedRep::new(plus, minus)
}

// ---------------------------------------------------------------------------
// Representation checks
// ---------------------------------------------------------------------------

fn check_euler_and_exactness(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut pairs = 0u64;
    for scope in scopes {
        for data in &scope.orientations {
            let reps = data.table.reps();
            for (s, m) in reps.iter().enumerate() {
                for (t, n) in reps.iter().enumerate() {
                    pairs += 1;
                    let hom = data.table.hom(s, t) as i64;
                    let ext = match data.table.ext(s, t) {
                        Ok(e) => e as i64,
                        Err(e) => {
                            failures.push(format!("{e}"));
                            continue;
                        }
                    };
                    let euler = euler_form(&data.quiver, m.dims(), n.dims()).expect("same quiver");
                    if hom - ext != euler {
                        failures.push(format!(
                            "hom − ext ≠ euler at ({}, {}) over {}",
                            m.dims().label(),
                            n.dims().label(),
                            data.quiver
                        ));
                    }
                }
            }
            // Four-term exactness at every admissible vertex.
            for &i in data.quiver.vertices() {
                let ei = Representation::simple(&data.quiver, i).expect("vertex in quiver");
                for m in reps {
                    if data.quiver.is_source(i) {
                        let out: i64 = data
                            .quiver
                            .arrows_from(i)
                            .iter()
                            .map(|&k| m.dim_at(data.quiver.arrows()[k].1) as i64)
                            .sum();
                        let lhs = hom_dim(&ei, m).unwrap() as i64 - m.dim_at(i) as i64 + out
                            - ext_dim(&ei, m).unwrap() as i64;
                        if lhs != 0 {
                            failures.push(format!(
                                "source exactness fails at vertex {i}, module {} over {}",
                                m.dims().label(),
                                data.quiver
                            ));
                        }
                    }
                    if data.quiver.is_sink(i) {
                        let inn: i64 = data
                            .quiver
                            .arrows_into(i)
                            .iter()
                            .map(|&k| m.dim_at(data.quiver.arrows()[k].0) as i64)
                            .sum();
                        let lhs = hom_dim(m, &ei).unwrap() as i64 - m.dim_at(i) as i64 + inn
                            - ext_dim(m, &ei).unwrap() as i64;
                        if lhs != 0 {
                            failures.push(format!(
                                "sink exactness fails at vertex {i}, module {} over {}",
                                m.dims().label(),
                                data.quiver
                            ));
                        }
                    }
                }
            }
        }
    }
    failures.into_result(
        "euler-identity-and-exactness",
        scope_label(scopes),
        format!("{pairs} indecomposable pairs"),
        start,
    )
}

fn check_rigidity(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        for data in &scope.orientations {
            for (s, m) in data.table.reps().iter().enumerate() {
                count += 1;
                if data.table.hom(s, s) != 1 {
                    failures.push(format!(
                        "End of {} over {} is not one-dimensional",
                        m.dims().label(),
                        data.quiver
                    ));
                }
                if data.table.ext(s, s).unwrap_or(usize::MAX) != 0 {
                    failures.push(format!(
                        "{} over {} has self-extensions",
                        m.dims().label(),
                        data.quiver
                    ));
                }
            }
        }
    }
    failures.into_result(
        "rigidity",
        scope_label(scopes),
        format!("{count} indecomposables"),
        start,
    )
}

fn check_reflection_dimensions(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let graph = scope.graph.graph();
        for data in &scope.orientations {
            for &i in graph.vertices() {
                if !data.quiver.is_admissible(i) {
                    continue;
                }
                let simple = RootVector::simple(graph.vertices(), i).expect("vertex");
                for (alpha, rep) in data.table.roots().iter().zip(data.table.reps()) {
                    if alpha == &simple {
                        continue;
                    }
                    count += 1;
                    let reflected = classical_reflect(rep, i).expect("admissible");
                    let expected = crate::graph::weyl_reflect(graph, i, alpha).expect("vertex");
                    if reflected.dims() != &expected {
                        failures.push(format!(
                            "dims(S_{i} {}) ≠ s_{i} over {}",
                            alpha.label(),
                            data.quiver
                        ));
                        continue;
                    }
                    let back = classical_reflect(&reflected, i).expect("admissible");
                    let same = data
                        .table
                        .decompose(&back)
                        .map(|d| d == data.table.decompose(rep).unwrap())
                        .unwrap_or(false);
                    if !same {
                        failures.push(format!(
                            "S_{i} S_{i} {} is not isomorphic to the original over {}",
                            alpha.label(),
                            data.quiver
                        ));
                    }
                }
            }
        }
    }
    failures.into_result(
        "reflection-dimensions",
        scope_label(scopes),
        format!("{count} reflections"),
        start,
    )
}

fn check_additivity(scopes: &[GraphScope], cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xadd);
    let mut count = 0u64;
    for scope in scopes {
        for data in &scope.orientations {
            let reps = data.table.reps();
            if reps.is_empty() {
                continue;
            }
            for _ in 0..cfg.random_sums.min(40) {
                let a = rng.gen_range(0..reps.len());
                let b = rng.gen_range(0..reps.len());
                let c = rng.gen_range(0..reps.len());
                let sum = reps[a].direct_sum(&reps[b]).expect("same quiver");
                count += 1;
                let hom_ok =
                    hom_dim(&sum, &reps[c]).unwrap() == data.table.hom(a, c) + data.table.hom(b, c);
                let ext_ok = ext_dim(&reps[c], &sum).unwrap()
                    == data.table.ext(c, a).unwrap() + data.table.ext(c, b).unwrap();
                if !hom_ok || !ext_ok {
                    failures.push(format!(
                        "additivity fails for summands {a},{b} against {c} over {}",
                        data.quiver
                    ));
                }
            }
        }
    }
    failures.into_result(
        "hom-ext-additivity",
        scope_label(scopes),
        format!("{count} random sums"),
        start,
    )
}

// ---------------------------------------------------------------------------
// Decorated checks
// ---------------------------------------------------------------------------

fn check_sdim_section(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let roots = almost_positive_roots(scope.graph.graph()).expect("Dynkin");
        for data in &scope.orientations {
            let mut seen = BTreeSet::new();
            for alpha in &roots {
                count += 1;
                let dec = decorated_of_root(&data.quiver, alpha).expect("almost positive");
                if &dec.sdim() != alpha {
                    failures.push(format!(
                        "sdim(U_{}) differs over {}",
                        alpha.label(),
                        data.quiver
                    ));
                }
                let class = dec.iso_class_with(&data.table).expect("decomposable");
                if !seen.insert(format!("{class:?}")) {
                    failures.push(format!(
                        "two roots share an isomorphism class over {}",
                        data.quiver
                    ));
                }
            }
        }
    }
    failures.into_result(
        "sdim-section",
        scope_label(scopes),
        format!("{count} decorated indecomposables"),
        start,
    )
}

fn check_sdim_reflection(scopes: &[GraphScope], cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5d13);
    let mut count = 0u64;
    for scope in scopes {
        let graph = scope.graph.graph();
        let roots = almost_positive_roots(graph).expect("Dynkin");
        for data in &scope.orientations {
            let admissible: Vec<Vertex> = graph
                .vertices()
                .iter()
                .copied()
                .filter(|&v| data.quiver.is_admissible(v))
                .collect();
            for &i in &admissible {
                for alpha in &roots {
                    count += 1;
                    let m = decorated_of_root(&data.quiver, alpha).expect("almost positive");
                    let lhs = extended_reflect(&m, i).expect("admissible").sdim();
                    let rhs = sigma(graph, i, alpha).expect("vertex");
                    if lhs != rhs {
                        failures.push(format!(
                            "sdim(Σ_{i} U_{}) ≠ σ_{i} over {}",
                            alpha.label(),
                            data.quiver
                        ));
                    }
                }
            }
            for _ in 0..cfg.random_sums {
                let m = match random_decorated_sum(data, &mut rng) {
                    Ok(m) => m,
                    Err(e) => {
                        failures.push(format!("{e}"));
                        continue;
                    }
                };
                for &i in &admissible {
                    if !reflection_hypothesis(&m, i) {
                        continue;
                    }
                    count += 1;
                    let lhs = extended_reflect(&m, i).expect("admissible").sdim();
                    let rhs = sigma(graph, i, &m.sdim()).expect("vertex");
                    if lhs != rhs {
                        failures.push(format!(
                            "sdim tracking fails on a random sum at vertex {i} over {}",
                            data.quiver
                        ));
                    }
                }
            }
        }
    }
    failures.into_result(
        "sdim-reflection",
        scope_label(scopes),
        format!("{count} reflections (indecomposables and filtered random sums)"),
        start,
    )
}

fn check_double_reflection(scopes: &[GraphScope], cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5152);
    let mut count = 0u64;
    for scope in scopes {
        let graph = scope.graph.graph();
        let roots = almost_positive_roots(graph).expect("Dynkin");
        for data in &scope.orientations {
            let admissible: Vec<Vertex> = graph
                .vertices()
                .iter()
                .copied()
                .filter(|&v| data.quiver.is_admissible(v))
                .collect();
            let mut targets: Vec<DecoratedRep> = roots
                .iter()
                .map(|a| decorated_of_root(&data.quiver, a).expect("almost positive"))
                .collect();
            for _ in 0..cfg.random_sums / 4 {
                match random_decorated_sum(data, &mut rng) {
                    Ok(m) => targets.push(m),
                    Err(e) => failures.push(format!("{e}")),
                }
            }
            for m in &targets {
                for &i in &admissible {
                    count += 1;
                    let twice = extended_reflect(&extended_reflect(m, i).expect("admissible"), i)
                        .expect("admissible");
                    let same = twice
                        .iso_class_with(&data.table)
                        .and_then(|a| m.iso_class_with(&data.table).map(|b| a == b))
                        .unwrap_or(false);
                    if !same {
                        failures.push(format!(
                            "Σ_{i}² changes the isomorphism class of sdim {} over {}",
                            m.sdim().label(),
                            data.quiver
                        ));
                    }
                }
            }
        }
    }
    failures.into_result(
        "double-reflection",
        scope_label(scopes),
        format!("{count} double reflections"),
        start,
    )
}

fn check_pairing_reflection(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let graph = scope.graph.graph();
        let roots = almost_positive_roots(graph).expect("Dynkin");
        for data in &scope.orientations {
            let decs: Vec<DecoratedRep> = roots
                .iter()
                .map(|a| decorated_of_root(&data.quiver, a).expect("almost positive"))
                .collect();
            let admissible: Vec<Vertex> = graph
                .vertices()
                .iter()
                .copied()
                .filter(|&v| data.quiver.is_admissible(v))
                .collect();
            let results: Vec<Failures> = admissible
                .par_iter()
                .map(|&i| {
                    let mut local = Failures::new();
                    let reflected: Vec<DecoratedRep> = decs
                        .iter()
                        .map(|m| extended_reflect(m, i).expect("admissible"))
                        .collect();
                    for (s, m) in decs.iter().enumerate() {
                        for (t, n) in decs.iter().enumerate() {
                            let before = data.ctx.degree_by_index(
                                data.ctx.root_index(&roots[s]).unwrap(),
                                data.ctx.root_index(&roots[t]).unwrap(),
                            );
                            debug_assert_eq!(before, e_dim(m, n).unwrap());
                            let after = e_dim(&reflected[s], &reflected[t]).unwrap();
                            if before != after {
                                local.push(format!(
                                    "pairing changes under Σ_{i} at ({}, {}) over {}",
                                    roots[s].label(),
                                    roots[t].label(),
                                    data.quiver
                                ));
                            }
                        }
                    }
                    local
                })
                .collect();
            for local in results {
                failures.merge(local);
            }
            count += admissible.len() as u64 * (roots.len() * roots.len()) as u64;
        }
    }
    failures.into_result(
        "pairing-reflection",
        scope_label(scopes),
        format!("{count} ordered pairs through admissible reflections"),
        start,
    )
}

fn check_degree_reflection(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let graph = scope.graph.graph();
        let roots = almost_positive_roots(graph).expect("Dynkin");
        for data in &scope.orientations {
            for &i in graph.vertices() {
                if !data.quiver.is_admissible(i) {
                    continue;
                }
                let reflected = scope.by_mask(
                    data.quiver
                        .reflect(i)
                        .expect("admissible")
                        .orientation_mask(),
                );
                for a in &roots {
                    for b in &roots {
                        count += 1;
                        let before = data.ctx.degree(a, b).expect("almost positive");
                        let sa = sigma(graph, i, a).expect("vertex");
                        let sb = sigma(graph, i, b).expect("vertex");
                        let after = reflected.ctx.degree(&sa, &sb).expect("almost positive");
                        if before != after {
                            failures.push(format!(
                                "(σ_{i}{} ‖ σ_{i}{}) ≠ ({} ‖ {}) over {}",
                                a.label(),
                                b.label(),
                                a.label(),
                                b.label(),
                                data.quiver
                            ));
                        }
                    }
                }
            }
        }
    }
    failures.into_result(
        "degree-reflection",
        scope_label(scopes),
        format!("{count} root pairs"),
        start,
    )
}

fn check_degree_duality(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let roots = almost_positive_roots(scope.graph.graph()).expect("Dynkin");
        for data in &scope.orientations {
            let opposite = scope.by_mask(data.quiver.opposite().orientation_mask());
            for a in &roots {
                for b in &roots {
                    count += 1;
                    if data.ctx.degree(a, b).unwrap() != opposite.ctx.degree(a, b).unwrap() {
                        failures.push(format!(
                            "degree differs between {} and its opposite at ({}, {})",
                            data.quiver,
                            a.label(),
                            b.label()
                        ));
                    }
                }
            }
        }
    }
    failures.into_result(
        "degree-duality",
        scope_label(scopes),
        format!("{count} root pairs"),
        start,
    )
}

fn check_degree_subsystems(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let graph = scope.graph.graph();
        let vertices = graph.vertices().to_vec();
        if vertices.len() > 4 {
            continue;
        }
        for data in &scope.orientations {
            for mask in 0u32..1 << vertices.len() {
                let j: BTreeSet<Vertex> = vertices
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                if j.is_empty() {
                    continue;
                }
                let sub = data.quiver.induced(&j).expect("subset");
                let sub_ctx = ClusterContext::new(&sub).expect("Dynkin");
                let sub_vertices: Vec<Vertex> = j.iter().copied().collect();
                for a in sub_ctx.roots() {
                    for b in sub_ctx.roots() {
                        count += 1;
                        let big_a = a.extend(&vertices);
                        let big_b = b.extend(&vertices);
                        let inner = sub_ctx.degree(a, b).unwrap();
                        let outer = data.ctx.degree(&big_a, &big_b).unwrap();
                        if inner != outer {
                            failures.push(format!(
                                "degree changes when restricting to J={sub_vertices:?} over {}",
                                data.quiver
                            ));
                        }
                    }
                }
            }
        }
    }
    failures.into_result(
        "degree-subsystems",
        scope_label(scopes),
        format!("{count} pairs over vertex subsets"),
        start,
    )
}

fn check_alternating_degrees(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let graph = scope.graph.graph();
        let (gamma0, _, _) = crate::graph::alternating_orientation(graph);
        let data = scope
            .orientations
            .iter()
            .find(|o| o.quiver == gamma0)
            .expect("alternating orientation is enumerated");
        let roots = almost_positive_roots(graph).expect("Dynkin");
        // Truncated-coefficient law for negative simples.
        for &i in graph.vertices() {
            let neg = RootVector::simple(graph.vertices(), i)
                .expect("vertex")
                .neg();
            for beta in &roots {
                count += 1;
                let lhs = data.ctx.degree(&neg, beta).unwrap() as i64;
                if lhs != beta.coeff(i).max(0) {
                    failures.push(format!(
                        "(−a{i} ‖ {}) = {lhs} instead of the truncated coefficient",
                        beta.label()
                    ));
                }
            }
        }
        // Invariance under both piecewise-linear involutions.
        for sign in [Sign::Plus, Sign::Minus] {
            for a in &roots {
                for b in &roots {
                    count += 1;
                    let ta = tau(graph, sign, a).unwrap();
                    let tb = tau(graph, sign, b).unwrap();
                    if data.ctx.degree(&ta, &tb).unwrap() != data.ctx.degree(a, b).unwrap() {
                        failures.push(format!(
                            "τ invariance fails at ({}, {}) on {}",
                            a.label(),
                            b.label(),
                            gamma0
                        ));
                    }
                }
            }
        }
    }
    failures.into_result(
        "alternating-degrees",
        scope_label(scopes),
        format!("{count} assertions on alternating quivers"),
        start,
    )
}

// ---------------------------------------------------------------------------
// Cluster checks
// ---------------------------------------------------------------------------

fn check_purity_smoothness(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut clusters = 0u64;
    for scope in scopes {
        for data in &scope.orientations {
            let report = data.ctx.verify_fan(0, 0);
            clusters += report.cluster_count as u64;
            if !report.purity_ok || !report.smooth_ok {
                for f in &report.failures {
                    failures.push(format!("{}: {f}", data.quiver));
                }
            }
            if let Err(e) = data.ctx.positive_clusters() {
                failures.push(format!("{}: {e}", data.quiver));
            }
        }
    }
    failures.into_result(
        "purity-smoothness",
        scope_label(scopes),
        format!("{clusters} clusters"),
        start,
    )
}

fn check_negative_support_reduction(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let vertices = scope.graph.graph().vertices().to_vec();
        for data in &scope.orientations {
            for mask in 0u32..1 << vertices.len() {
                let j: BTreeSet<Vertex> = vertices
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                let complement: BTreeSet<Vertex> = vertices
                    .iter()
                    .copied()
                    .filter(|v| !j.contains(v))
                    .collect();
                let with_support = data
                    .ctx
                    .clusters()
                    .iter()
                    .filter(|c| data.ctx.negative_support(c) == j)
                    .count();
                let sub = data.quiver.induced(&complement).expect("subset");
                let sub_ctx = ClusterContext::new(&sub).expect("Dynkin");
                let positive = match sub_ctx.positive_clusters() {
                    Ok(p) => p.len(),
                    Err(e) => {
                        failures.push(format!("{e}"));
                        continue;
                    }
                };
                count += 1;
                if with_support != positive {
                    failures.push(format!(
                        "{} clusters with negative support {j:?} vs {positive} positive clusters of the complement over {}",
                        with_support, data.quiver
                    ));
                }
            }
        }
    }
    failures.into_result(
        "negative-support-reduction",
        scope_label(scopes),
        format!("{count} vertex subsets"),
        start,
    )
}

fn check_expansion_sampling(scopes: &[GraphScope], cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let vertices = scope.graph.graph().vertices().to_vec();
        for data in &scope.orientations {
            let mut rng = ChaCha8Rng::seed_from_u64(
                cfg.seed
                    ^ data
                        .quiver
                        .orientation_mask()
                        .wrapping_mul(0x9E3779B97F4A7C15),
            );
            for _ in 0..cfg.fan_samples {
                count += 1;
                let vals: Vec<i64> = vertices.iter().map(|_| rng.gen_range(-10..=10)).collect();
                let gamma = RootVector::from_values(&vertices, &vals).expect("lengths match");
                match data.ctx.expand(&gamma) {
                    Err(e) => failures.push(format!("{}: {e}", data.quiver)),
                    Ok(expansion) => {
                        if expansion.total(&vertices) != gamma {
                            failures.push(format!(
                                "expansion of {} does not reassemble over {}",
                                gamma.label(),
                                data.quiver
                            ));
                        }
                        for &v in &vertices {
                            let neg = RootVector::simple(&vertices, v).unwrap().neg();
                            let mult = expansion
                                .terms
                                .iter()
                                .find(|(r, _)| r == &neg)
                                .map(|(_, m)| *m as i64)
                                .unwrap_or(0);
                            if mult != (-gamma.coeff(v)).max(0) {
                                failures.push(format!(
                                    "negative multiplicity law fails for {} over {}",
                                    gamma.label(),
                                    data.quiver
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    failures.into_result(
        "expansion-sampling",
        scope_label(scopes),
        format!("{count} sampled lattice vectors, seed {}", cfg.seed),
        start,
    )
}

fn check_fan_reflection(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let graph = scope.graph.graph();
        for data in &scope.orientations {
            for &i in graph.vertices() {
                if !data.quiver.is_admissible(i) {
                    continue;
                }
                count += 1;
                let reflected = scope.by_mask(
                    data.quiver
                        .reflect(i)
                        .expect("admissible")
                        .orientation_mask(),
                );
                let mapped: BTreeSet<Vec<RootVector>> = data
                    .ctx
                    .clusters()
                    .iter()
                    .map(|c| {
                        let mut roots: Vec<RootVector> = c
                            .iter()
                            .map(|&k| sigma(graph, i, &data.ctx.roots()[k]).expect("vertex"))
                            .collect();
                        roots.sort();
                        roots
                    })
                    .collect();
                let expected: BTreeSet<Vec<RootVector>> = reflected
                    .ctx
                    .clusters()
                    .iter()
                    .map(|c| {
                        let mut roots = reflected.ctx.cluster_roots(c);
                        roots.sort();
                        roots
                    })
                    .collect();
                if mapped != expected {
                    failures.push(format!(
                        "σ_{i} does not carry the clusters of {} onto those of {}",
                        data.quiver, reflected.quiver
                    ));
                }
            }
        }
    }
    failures.into_result(
        "fan-reflection",
        scope_label(scopes),
        format!("{count} admissible reflections"),
        start,
    )
}

// ---------------------------------------------------------------------------
// Groupoid checks
// ---------------------------------------------------------------------------

fn check_relation_soundness(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        let graph = scope.graph.graph();
        for data in &scope.orientations {
            let q = &data.quiver;
            let admissible: Vec<Vertex> = graph
                .vertices()
                .iter()
                .copied()
                .filter(|&v| q.is_admissible(v))
                .collect();
            let identity_action = |word: &Word| -> bool {
                word_action_on_roots(word)
                    .map(|a| a.perm.iter().enumerate().all(|(k, &v)| k == v))
                    .unwrap_or(false)
            };
            for &i in &admissible {
                // R1: Σ_i² is an identity loop with identity action.
                count += 1;
                let w = Word::sigmas(q.clone(), &[i, i]);
                if apply_word(&w).ok().as_ref() != Some(q) || !identity_action(&w) {
                    failures.push(format!("Σ_{i}² misbehaves on {q}"));
                }
                // R4: D Σ_i = Σ_i D.
                count += 1;
                let dw = Word::new(q.clone(), vec![Letter::Dual, Letter::Sigma(i)]);
                let wd = Word::new(q.clone(), vec![Letter::Sigma(i), Letter::Dual]);
                let same_end = apply_word(&dw).ok() == apply_word(&wd).ok();
                let same_action = word_action_on_roots(&dw).map(|a| a.perm).ok()
                    == word_action_on_roots(&wd).map(|a| a.perm).ok();
                let same_nf = normal_form(&dw).ok() == normal_form(&wd).ok();
                if !same_end || !same_action || !same_nf {
                    failures.push(format!("duality does not commute with Σ_{i} on {q}"));
                }
                // R2: unlinked admissible vertices commute.
                for &j in &admissible {
                    if j <= i || graph.are_adjacent(i, j) {
                        continue;
                    }
                    count += 1;
                    let ij = Word::sigmas(q.clone(), &[i, j]);
                    let ji = Word::sigmas(q.clone(), &[j, i]);
                    let ok = apply_word(&ij).ok() == apply_word(&ji).ok()
                        && word_action_on_roots(&ij).map(|a| a.perm).ok()
                            == word_action_on_roots(&ji).map(|a| a.perm).ok()
                        && normal_form(&ij).ok() == normal_form(&ji).ok();
                    if !ok {
                        failures.push(format!("Σ_{i} and Σ_{j} fail to commute on {q}"));
                    }
                }
            }
            // R3: D² = 1.
            count += 1;
            let dd = Word::new(q.clone(), vec![Letter::Dual, Letter::Dual]);
            if apply_word(&dd).ok().as_ref() != Some(q)
                || !normal_form(&dd).map(|nf| nf.is_identity()).unwrap_or(false)
            {
                failures.push(format!("D² is not the identity on {q}"));
            }
        }
    }
    failures.into_result(
        "relation-soundness",
        scope_label(scopes),
        format!("{count} relation instances"),
        start,
    )
}

fn check_loop_classification(scopes: &[GraphScope], cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut loops = 0u64;
    for scope in scopes {
        match classify_loops(scope.graph.graph(), cfg.loop_len) {
            Err(e) => failures.push(format!("{e}")),
            Ok(report) => {
                loops += report.loops_by_k.values().sum::<u64>();
                for v in &report.violations {
                    failures.push(format!("{}: {v}", scope.graph.label()));
                }
            }
        }
    }
    failures.into_result(
        "loop-classification",
        scope_label(scopes),
        format!("{loops} loops up to length {}", cfg.loop_len),
        start,
    )
}

fn check_word_lemmas(scopes: &[GraphScope], cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut words = 0u64;
    for scope in scopes {
        let report = check_lemmas(scope.graph.graph(), cfg.lemma_len, cfg.lemma_len.min(8));
        words += report.words_checked;
        for v in &report.violations {
            failures.push(format!("{}: {v}", scope.graph.label()));
        }
    }
    failures.into_result(
        "word-lemmas",
        scope_label(scopes),
        format!("{words} words up to length {}", cfg.lemma_len),
        start,
    )
}

fn check_action_preserves_degrees(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut count = 0u64;
    for scope in scopes {
        for data in &scope.orientations {
            // All applicable words of length at most three.
            let mut words: Vec<Vec<Vertex>> = vec![Vec::new()];
            crate::groupoid::walk_words(&data.quiver, 3, &mut |letters, _| {
                if !letters.is_empty() {
                    words.push(letters.to_vec());
                }
            });
            for letters in words {
                let word = Word::sigmas(data.quiver.clone(), &letters);
                let end = apply_word(&word).expect("applicable");
                let end_data = scope.by_mask(end.orientation_mask());
                let action = word_action_on_roots(&word).expect("applicable");
                count += 1;
                let roots = &action.roots;
                for a in 0..roots.len() {
                    for b in 0..roots.len() {
                        let before = data.ctx.degree(&roots[a], &roots[b]).unwrap();
                        let after = end_data
                            .ctx
                            .degree(&roots[action.perm[a]], &roots[action.perm[b]])
                            .unwrap();
                        if before != after {
                            failures.push(format!(
                                "action of {letters:?} from {} breaks degrees at ({}, {})",
                                data.quiver,
                                roots[a].label(),
                                roots[b].label()
                            ));
                        }
                    }
                }
            }
        }
    }
    failures.into_result(
        "action-preserves-degrees",
        scope_label(scopes),
        format!("{count} words of length at most 3"),
        start,
    )
}

// ---------------------------------------------------------------------------
// Census checks
// ---------------------------------------------------------------------------

fn check_moebius(scopes: &[GraphScope], cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut relations = 0usize;
    for scope in scopes {
        for data in &scope.orientations {
            match census::moebius_consistency(&data.quiver, cfg.large) {
                Err(e) => failures.push(format!("{}: {e}", data.quiver)),
                Ok(report) => {
                    relations += report.relation_checked + report.inversion_checked;
                    for v in &report.violations {
                        failures.push(format!("{}: {v}", data.quiver));
                    }
                }
            }
        }
    }
    failures.into_result(
        "moebius-inversion",
        scope_label(scopes),
        format!("{relations} convolution/inversion identities"),
        start,
    )
}

fn check_orientation_invariance(scopes: &[GraphScope], cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut details = Vec::new();
    for scope in scopes {
        match census::orientation_invariance(&scope.graph, cfg.large) {
            Err(e) => failures.push(format!("{}: {e}", scope.graph.label())),
            Ok(report) => {
                if !report.passed() {
                    for v in &report.violations {
                        failures.push(format!("{}: {v}", scope.graph.label()));
                    }
                }
                details.push(format!(
                    "{}: {:?}",
                    scope.graph.label(),
                    report.f_plus.counts
                ));
            }
        }
    }
    failures.into_result(
        "orientation-invariance",
        scope_label(scopes),
        details.join("; "),
        start,
    )
}

fn check_count_formula(scopes: &[GraphScope], cfg: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let mut details = Vec::new();
    for scope in scopes {
        if !scope.graph.is_irreducible() {
            continue;
        }
        let formula = match census::positive_cluster_count(&scope.graph) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("{}: {e}", scope.graph.label()));
                continue;
            }
        };
        match census::orientation_invariance(&scope.graph, cfg.large) {
            Err(e) => failures.push(format!("{}: {e}", scope.graph.label())),
            Ok(report) => {
                if report.f_plus.top() != formula {
                    failures.push(format!(
                        "{}: formula {formula} vs enumeration {}",
                        scope.graph.label(),
                        report.f_plus.top()
                    ));
                }
                details.push(format!("{} = {formula}", scope.graph.label()));
            }
        }
    }
    failures.into_result(
        "count-formula",
        scope_label(scopes),
        details.join("; "),
        start,
    )
}

fn check_figure_complexes(scopes: &[GraphScope]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Failures::new();
    let has_a3 = scopes
        .iter()
        .any(|s| s.graph.is_irreducible() && s.graph.label() == "A3");
    if has_a3 {
        let a3 = crate::graph::TreeGraph::path(3);
        let gamma0 = crate::graph::alternating_orientation(&a3).0;
        let gamma1 = Quiver::from_orientation_mask(&a3, 0);
        for q in [&gamma0, &gamma1] {
            match census::f_plus_vector(q, false) {
                Ok(f) if f.counts == vec![1, 6, 10, 5] => {}
                Ok(f) => failures.push(format!("{q}: f⁺ = {:?}", f.counts)),
                Err(e) => failures.push(format!("{e}")),
            }
        }
        let pair = |vals: &[i64]| RootVector::from_values(&[1, 2, 3], vals).unwrap();
        let ctx0 = ClusterContext::new(&gamma0).unwrap();
        let ctx1 = ClusterContext::new(&gamma1).unwrap();
        let deg0 = ctx0.degree(&pair(&[1, 1, 0]), &pair(&[0, 1, 1])).unwrap();
        let deg1 = ctx1.degree(&pair(&[1, 1, 0]), &pair(&[0, 1, 1])).unwrap();
        let deg0b = ctx0.degree(&pair(&[0, 1, 0]), &pair(&[1, 1, 1])).unwrap();
        let deg1b = ctx1.degree(&pair(&[0, 1, 0]), &pair(&[1, 1, 1])).unwrap();
        if !(deg0 == 0 && deg1 > 0 && deg0b > 0 && deg1b == 0) {
            failures.push(format!(
                "edge pattern wrong: ({deg0}, {deg1}, {deg0b}, {deg1b})"
            ));
        }
        match census::complex_isomorphic(&gamma0, &gamma1) {
            Ok(false) => {}
            Ok(true) => failures.push("the two complexes compare isomorphic".into()),
            Err(e) => failures.push(format!("{e}")),
        }
        match census::complex_isomorphic(&gamma0, &gamma0.opposite()) {
            Ok(true) => {}
            Ok(false) => failures.push("a complex is not isomorphic to its opposite".into()),
            Err(e) => failures.push(format!("{e}")),
        }
    }
    failures.into_result(
        "figure-complexes",
        if has_a3 {
            "A3".into()
        } else {
            "skipped (A3 not in scope)".into()
        },
        "alternating vs equioriented positive complexes".into(),
        start,
    )
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

/// Runs the configured checks in a fixed order and collects one result
/// per check.
pub fn run_verify_suite(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(if cfg.jobs == 0 { 1 } else { cfg.jobs })
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| run_checks(cfg))
}

fn run_checks(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let scopes = build_scope(cfg)?;
    let enabled = |group: CheckGroup| {
        cfg.checks
            .as_ref()
            .map(|set| set.contains(&group))
            .unwrap_or(true)
    };

    let mut checks = Vec::new();
    if enabled(CheckGroup::Rep) {
        checks.push(check_euler_and_exactness(&scopes));
        checks.push(check_rigidity(&scopes));
        checks.push(check_reflection_dimensions(&scopes));
        checks.push(check_additivity(&scopes, cfg));
    }
    if enabled(CheckGroup::Decorated) {
        checks.push(check_sdim_section(&scopes));
        checks.push(check_sdim_reflection(&scopes, cfg));
        checks.push(check_double_reflection(&scopes, cfg));
        checks.push(check_pairing_reflection(&scopes));
        checks.push(check_degree_reflection(&scopes));
        checks.push(check_degree_duality(&scopes));
        checks.push(check_degree_subsystems(&scopes));
        checks.push(check_alternating_degrees(&scopes));
    }
    if enabled(CheckGroup::Clusters) {
        checks.push(check_purity_smoothness(&scopes));
        checks.push(check_negative_support_reduction(&scopes));
        checks.push(check_expansion_sampling(&scopes, cfg));
        checks.push(check_fan_reflection(&scopes));
    }
    if enabled(CheckGroup::Groupoid) {
        checks.push(check_relation_soundness(&scopes));
        checks.push(check_loop_classification(&scopes, cfg));
        checks.push(check_word_lemmas(&scopes, cfg));
        checks.push(check_action_preserves_degrees(&scopes));
    }
    if enabled(CheckGroup::Census) {
        checks.push(check_moebius(&scopes, cfg));
        checks.push(check_orientation_invariance(&scopes, cfg));
        checks.push(check_count_formula(&scopes, cfg));
        checks.push(check_figure_complexes(&scopes));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        seed: cfg.seed,
        graphs: scopes.iter().map(|s| s.graph.label()).collect(),
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scope_suite_passes() {
        let cfg = VerifyConfig {
            graphs: vec![(DynkinType::A, 1), (DynkinType::A, 2), (DynkinType::A, 3)],
            fan_samples: 40,
            random_sums: 30,
            loop_len: 8,
            lemma_len: 7,
            ..VerifyConfig::default()
        };
        let report = run_verify_suite(&cfg).unwrap();
        for check in &report.checks {
            assert!(check.passed, "{}: {:?}", check.name, check.counterexample);
        }
        assert!(report.all_passed());
        assert_eq!(report.checks.len(), 24);
    }

    #[test]
    fn filtered_suite_runs_only_requested_groups() {
        let cfg = VerifyConfig {
            graphs: vec![(DynkinType::A, 2)],
            checks: Some([CheckGroup::Census].into_iter().collect()),
            ..VerifyConfig::default()
        };
        let report = run_verify_suite(&cfg).unwrap();
        assert_eq!(report.checks.len(), 4);
        assert!(report.all_passed());
    }

    #[test]
    fn check_group_parsing() {
        assert_eq!(CheckGroup::parse("rep").unwrap(), CheckGroup::Rep);
        assert!(CheckGroup::parse("nonsense").is_err());
    }

    #[test]
    fn report_json_is_deterministic_and_time_free() {
        let cfg = VerifyConfig {
            graphs: vec![(DynkinType::A, 2)],
            checks: Some([CheckGroup::Clusters].into_iter().collect()),
            fan_samples: 20,
            ..VerifyConfig::default()
        };
        let a = run_verify_suite(&cfg).unwrap().to_json_string();
        let b = run_verify_suite(&cfg).unwrap().to_json_string();
        assert_eq!(a, b);
        assert!(!a.contains("wall_ms"));
    }
}
