//! Quiver representations over exact rationals.
//!
//! A [`Representation`] assigns a dimension to every vertex and a rational
//! matrix to every arrow. Hom dimensions are nullspace dimensions of the
//! intertwiner system `f_j ∘ M_a = N_a ∘ f_i`; Ext dimensions follow from
//! the Euler form, which is exact for path algebras of trees.
//!
//! Indecomposables are constructed by walking a positive root down to a
//! simple root with admissible sink reflections and pulling the simple
//! back through source-side reflection functors; the result certifies
//! itself by `dim End = 1`.

use std::collections::BTreeMap;

use num::Zero;

use crate::graph::{euler_form, positive_roots, weyl_reflect, Quiver, RootVector, Vertex};
use crate::linalg::{QMat, Rat};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Representation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    dims: RootVector,
    /// One matrix per arrow, in arrow order; arrow `a: i → j` carries a
    /// `dim_j × dim_i` matrix.
    matrices: Vec<QMat>,
}

impl Representation {
    pub fn new(quiver: Quiver, dims: RootVector, matrices: Vec<QMat>) -> Result<Self> {
        let vertices = quiver.vertices().to_vec();
        let ok_vertices = dims.len() == vertices.len()
            && vertices.iter().all(|&v| dims.iter().any(|(w, _)| w == v));
        if !ok_vertices || dims.iter().any(|(_, d)| d < 0) {
            return Err(Error::Domain(
                "dimension vector must be nonnegative on the quiver's vertex set".into(),
            ));
        }
        if matrices.len() != quiver.arrows().len() {
            return Err(Error::Domain("one matrix per arrow required".into()));
        }
        for (&(s, t), m) in quiver.arrows().iter().zip(&matrices) {
            if m.rows() != dims.coeff(t) as usize || m.cols() != dims.coeff(s) as usize {
                return Err(Error::Domain(format!(
                    "arrow {s}->{t} carries a {}x{} matrix, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims.coeff(t),
                    dims.coeff(s)
                )));
            }
        }
        Ok(Representation {
            quiver,
            dims,
            matrices,
        })
    }

    pub fn zero(quiver: &Quiver) -> Self {
        let dims = RootVector::zero(quiver.vertices());
        let matrices = quiver.arrows().iter().map(|_| QMat::zeros(0, 0)).collect();
        Representation {
            quiver: quiver.clone(),
            dims,
            matrices,
        }
    }

    /// The simple representation at `i`: one dimension there, zero maps.
    pub fn simple(quiver: &Quiver, i: Vertex) -> Result<Self> {
        let dims = RootVector::simple(quiver.vertices(), i)?;
        let matrices = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| QMat::zeros(dims.coeff(t) as usize, dims.coeff(s) as usize))
            .collect();
        Ok(Representation {
            quiver: quiver.clone(),
            dims,
            matrices,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &RootVector {
        &self.dims
    }

    pub fn dim_at(&self, i: Vertex) -> usize {
        self.dims.coeff(i) as usize
    }

    pub fn matrix(&self, arrow: usize) -> &QMat {
        &self.matrices[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.height() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    /// Blockwise direct sum: at every vertex the summand spaces are
    /// concatenated in argument order.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.quiver != other.quiver {
            return Err(Error::Domain("direct sum requires a common quiver".into()));
        }
        let dims = self.dims.add(&other.dims);
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| QMat::block_diag(&[a, b]))
            .collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            dims,
            matrices,
        })
    }

    pub fn direct_sum_all(quiver: &Quiver, parts: &[Representation]) -> Result<Representation> {
        let mut acc = Representation::zero(quiver);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Transposes every matrix; lives over the opposite quiver.
    pub fn dual(&self) -> Representation {
        Representation {
            quiver: self.quiver.opposite(),
            dims: self.dims.clone(),
            matrices: self.matrices.iter().map(|m| m.transpose()).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Hom and Ext
// ---------------------------------------------------------------------------

/// Offsets of each `f_i` block inside the flattened unknown vector.
fn unknown_offsets(m: &Representation, n: &Representation) -> (BTreeMap<Vertex, usize>, usize) {
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for &v in m.quiver.vertices() {
        offsets.insert(v, total);
        total += m.dim_at(v) * n.dim_at(v);
    }
    (offsets, total)
}

/// The linear system on `(f_i)` expressing `f_j ∘ M_a = N_a ∘ f_i` for all
/// arrows. `dim Hom` is its nullity.
fn morphism_system(m: &Representation, n: &Representation) -> QMat {
    let (offsets, unknowns) = unknown_offsets(m, n);
    let total_rows: usize = m
        .quiver
        .arrows()
        .iter()
        .map(|&(s, t)| n.dim_at(t) * m.dim_at(s))
        .sum();
    let mut sys = QMat::zeros(total_rows, unknowns);
    let mut row0 = 0;
    for (k, &(s, t)) in m.quiver.arrows().iter().enumerate() {
        let ma = m.matrix(k);
        let na = n.matrix(k);
        let (ms, nt) = (m.dim_at(s), n.dim_at(t));
        let (mt, ns) = (m.dim_at(t), n.dim_at(s));
        // Constraint (r, c) for r < n_t, c < m_s:
        //   Σ_u (f_t)[r][u] · M_a[u][c]  −  Σ_w N_a[r][w] · (f_s)[w][c] = 0
        for r in 0..nt {
            for c in 0..ms {
                let row = row0 + r * ms + c;
                for u in 0..mt {
                    let coeff = ma.get(u, c);
                    if !coeff.is_zero() {
                        let col = offsets[&t] + r * mt + u;
                        sys.set(row, col, sys.get(row, col) + coeff);
                    }
                }
                for w in 0..ns {
                    let coeff = na.get(r, w);
                    if !coeff.is_zero() {
                        let col = offsets[&s] + w * ms + c;
                        sys.set(row, col, sys.get(row, col) - coeff);
                    }
                }
            }
        }
        row0 += nt * ms;
    }
    sys
}

/// `dim Hom(M, N)` by exact Gaussian elimination on the morphism system.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    if m.quiver != n.quiver {
        return Err(Error::Domain(
            "Hom requires both representations over one quiver".into(),
        ));
    }
    let (_, unknowns) = unknown_offsets(m, n);
    Ok(unknowns - morphism_system(m, n).rank())
}

/// `dim Ext¹(M, N) = dim Hom(M, N) − ⟨dim M, dim N⟩`, the hereditary
/// identity for path algebras of trees.
pub fn ext_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let hom = hom_dim(m, n)? as i64;
    let euler = euler_form(&m.quiver, &m.dims, &n.dims)?;
    let ext = hom - euler;
    if ext < 0 {
        return Err(Error::Internal(format!(
            "negative Ext dimension {ext} for dims {:?} / {:?}",
            m.dims, n.dims
        )));
    }
    Ok(ext as usize)
}

// ---------------------------------------------------------------------------
// Classical reflection functors
// ---------------------------------------------------------------------------

/// Stacked map `M_i → ⊕_{a:i→j} M_j` over the arrows out of a source `i`,
/// with the target blocks in arrow order.
fn source_stack(m: &Representation, i: Vertex) -> (QMat, Vec<usize>) {
    let arrows = m.quiver.arrows_from(i);
    let blocks: Vec<&QMat> = arrows.iter().map(|&k| m.matrix(k)).collect();
    let stacked = if blocks.is_empty() {
        QMat::zeros(0, m.dim_at(i))
    } else {
        QMat::vstack(&blocks)
    };
    (stacked, arrows)
}

/// The reflection functor at a source (cokernel form) or sink (kernel
/// form). Bases of kernels and cokernels come from the reduced row echelon
/// form, so the output is deterministic.
pub fn classical_reflect(m: &Representation, i: Vertex) -> Result<Representation> {
    let q = &m.quiver;
    if !q.is_admissible(i) {
        return Err(Error::Admissibility(format!(
            "vertex {i} is neither a source nor a sink"
        )));
    }
    let reflected = q.reflect(i)?;
    if q.is_source(i) {
        let (stacked, arrows) = source_stack(m, i);
        let pi = stacked.coker_projection();
        let new_dim_i = pi.rows();

        let mut dims = m.dims.clone();
        dims.set(i, new_dim_i as i64);
        let mut matrices: Vec<QMat> = m.matrices.clone();
        // In the reflected quiver, every former arrow i→j is now j→i and
        // carries (inclusion of M_j into the stack) followed by π.
        let mut offset = 0;
        for &k in &arrows {
            let (_, j) = q.arrows()[k];
            let dj = m.dim_at(j);
            let mut incl = QMat::zeros(stacked.rows(), dj);
            for r in 0..dj {
                incl.set(offset + r, r, Rat::from_integer(1));
            }
            matrices[k] = pi.mul(&incl);
            offset += dj;
        }
        Representation::new(reflected, dims, matrices)
    } else {
        // Sink: kernel of ⊕_{a:j→i} M_a : ⊕ M_j → M_i.
        let arrows = q.arrows_into(i);
        let blocks: Vec<&QMat> = arrows.iter().map(|&k| m.matrix(k)).collect();
        let stacked = if blocks.is_empty() {
            QMat::zeros(m.dim_at(i), 0)
        } else {
            QMat::hstack(&blocks)
        };
        let kappa = stacked.kernel_basis();
        let new_dim_i = kappa.cols();

        let mut dims = m.dims.clone();
        dims.set(i, new_dim_i as i64);
        let mut matrices: Vec<QMat> = m.matrices.clone();
        let mut offset = 0;
        for &k in &arrows {
            let (j, _) = q.arrows()[k];
            let dj = m.dim_at(j);
            let mut proj = QMat::zeros(dj, kappa.rows());
            for r in 0..dj {
                proj.set(r, offset + r, Rat::from_integer(1));
            }
            matrices[k] = proj.mul(&kappa);
            offset += dj;
        }
        Representation::new(reflected, dims, matrices)
    }
}

// ---------------------------------------------------------------------------
// Indecomposables
// ---------------------------------------------------------------------------

/// The smallest sink of `q` within the given component.
fn smallest_sink(q: &Quiver, component: &[Vertex]) -> Vertex {
    component
        .iter()
        .copied()
        .find(|&v| q.is_sink(v))
        .expect("every orientation of a finite tree has a sink")
}

/// The indecomposable representation with dimension vector a given
/// positive root. Reflecting at the smallest sink repeatedly drives the
/// root to a simple root (iterated sink reflections realize a Coxeter
/// transformation, which eventually makes any positive root negative, and
/// the step before the sign change passes through the simple root at the
/// reflecting vertex); the simple is then pulled back through source-side
/// reflection functors.
pub fn indecomposable_rep(q: &Quiver, alpha: &RootVector) -> Result<Representation> {
    let roots = positive_roots(q.graph())?;
    if !roots.contains(alpha) {
        return Err(Error::Domain(format!(
            "{} is not a positive root of the underlying graph",
            alpha.label()
        )));
    }
    let support = alpha.support();
    let component = q.graph().component_of(support[0]);

    let mut cur_q = q.clone();
    let mut cur_a = alpha.clone();
    let mut trail: Vec<(Quiver, Vertex)> = Vec::new();
    loop {
        let i = smallest_sink(&cur_q, &component);
        let simple = RootVector::simple(q.vertices(), i)?;
        if cur_a == simple {
            let mut rep = Representation::simple(&cur_q, i)?;
            // Walk back: after reflecting forward at sink i over Γ, the
            // vertex is a source of s_iΓ, and the source-side functor
            // returns to Γ.
            for (prev_q, v) in trail.iter().rev() {
                rep = classical_reflect(&rep, *v)?;
                debug_assert_eq!(rep.quiver(), prev_q);
            }
            debug_assert_eq!(rep.dims(), alpha);
            return Ok(rep);
        }
        cur_a = weyl_reflect(q.graph(), i, &cur_a)?;
        if !cur_a.is_positive() {
            return Err(Error::Internal(format!(
                "sink walk left the positive roots at {}",
                cur_a.label()
            )));
        }
        trail.push((cur_q.clone(), i));
        cur_q = cur_q.reflect(i)?;
    }
}

// ---------------------------------------------------------------------------
// Indecomposable tables and Krull–Schmidt decomposition
// ---------------------------------------------------------------------------

/// All indecomposables of one quiver plus their Hom-dimension table,
/// topologically ordered so that Hom flows forward.
#[derive(Debug, Clone)]
pub struct IndecTable {
    quiver: Quiver,
    roots: Vec<RootVector>,
    reps: Vec<Representation>,
    hom: Vec<Vec<usize>>,
    /// Indices into `roots` in Hom order: `hom[order[s]][order[t]] = 0`
    /// whenever s > t and the roots differ.
    order: Vec<usize>,
}

impl IndecTable {
    pub fn new(q: &Quiver) -> Result<Self> {
        let roots = positive_roots(q.graph())?;
        let reps: Vec<Representation> = roots
            .iter()
            .map(|alpha| indecomposable_rep(q, alpha))
            .collect::<Result<_>>()?;
        let count = roots.len();
        let mut hom = vec![vec![0usize; count]; count];
        for s in 0..count {
            for t in 0..count {
                hom[s][t] = hom_dim(&reps[s], &reps[t])?;
            }
        }
        let order = hom_topo_order(&hom)?;
        Ok(IndecTable {
            quiver: q.clone(),
            roots,
            reps,
            hom,
            order,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn reps(&self) -> &[Representation] {
        &self.reps
    }

    pub fn rep_of(&self, alpha: &RootVector) -> Option<&Representation> {
        self.index_of(alpha).map(|k| &self.reps[k])
    }

    pub fn index_of(&self, alpha: &RootVector) -> Option<usize> {
        self.roots.iter().position(|r| r == alpha)
    }

    pub fn hom(&self, s: usize, t: usize) -> usize {
        self.hom[s][t]
    }

    pub fn ext(&self, s: usize, t: usize) -> Result<usize> {
        let euler = euler_form(&self.quiver, &self.roots[s], &self.roots[t])?;
        let ext = self.hom[s][t] as i64 - euler;
        if ext < 0 {
            return Err(Error::Internal("negative Ext dimension in table".into()));
        }
        Ok(ext as usize)
    }

    /// Krull–Schmidt multiplicities of `m`: solves
    /// `dim Hom(M, U_β) = Σ_α m_α · dim Hom(U_α, U_β)` along the Hom
    /// order, where the coefficient matrix is unitriangular.
    pub fn decompose(&self, m: &Representation) -> Result<BTreeMap<RootVector, usize>> {
        if m.quiver() != &self.quiver {
            return Err(Error::Domain(
                "representation lives over a different quiver".into(),
            ));
        }
        let mut mult = vec![0i64; self.roots.len()];
        for pos in 0..self.order.len() {
            let t = self.order[pos];
            let target = hom_dim(m, &self.reps[t])? as i64;
            let mut acc = 0i64;
            for &s in &self.order[..pos] {
                acc += mult[s] * self.hom[s][t] as i64;
            }
            debug_assert_eq!(self.hom[t][t], 1, "indecomposables must have trivial End");
            mult[t] = target - acc;
            if mult[t] < 0 {
                return Err(Error::Internal(
                    "negative multiplicity in decomposition".into(),
                ));
            }
        }
        // The multiplicities must reassemble the dimension vector.
        let mut total = RootVector::zero(self.quiver.vertices());
        for (k, &c) in mult.iter().enumerate() {
            if c > 0 {
                total = total.add(&self.roots[k].scaled(c));
            }
        }
        if &total != m.dims() {
            return Err(Error::Internal(
                "decomposition does not reassemble the dimension vector".into(),
            ));
        }
        Ok(self
            .roots
            .iter()
            .zip(&mult)
            .filter(|(_, &c)| c > 0)
            .map(|(r, &c)| (r.clone(), c as usize))
            .collect())
    }
}

/// Topological order of the Hom-nonvanishing digraph (edge `s → t` when
/// `Hom(U_s, U_t) ≠ 0`, `s ≠ t`). Dynkin path algebras are directed, so
/// the digraph is acyclic; smallest index wins ties.
fn hom_topo_order(hom: &[Vec<usize>]) -> Result<Vec<usize>> {
    let count = hom.len();
    let mut indeg = vec![0usize; count];
    for (s, row) in hom.iter().enumerate() {
        for (t, &entry) in row.iter().enumerate() {
            if s != t && entry > 0 {
                indeg[t] += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(count);
    let mut taken = vec![false; count];
    for _ in 0..count {
        let Some(next) = (0..count).find(|&k| !taken[k] && indeg[k] == 0) else {
            return Err(Error::Internal("Hom digraph has a cycle".into()));
        };
        taken[next] = true;
        order.push(next);
        for t in 0..count {
            if t != next && !taken[t] && hom[next][t] > 0 {
                indeg[t] -= 1;
            }
        }
    }
    Ok(order)
}

/// One-shot decomposition; builds the table for `m`'s quiver.
pub fn decompose(m: &Representation) -> Result<BTreeMap<RootVector, usize>> {
    IndecTable::new(m.quiver())?.decompose(m)
}
