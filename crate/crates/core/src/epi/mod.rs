//! Ring epimorphisms `f: A → B` attached to partial silting modules.
//!
//! `B = End(M̄)` where `M̄ = M_A / τ_{T1}(M_A)` and `M_A` comes from the
//! Bongartz completion. The product on `B` is composition `x·y = x∘y`.

mod checks;
mod homological;
mod thm2;
mod torsion;

pub use checks::{bireflective_witness, reflection, reflection_witness, sigma_tensor_is_iso};
pub use homological::{brick_criterion, is_homological, BrickReport, HomologicalVerdict};
pub use thm2::{thm2_report, ThmTwoReport};
pub use torsion::{torsion_closure, torsion_classes, torsion_reduction_check, ReductionReport};

use crate::algebra::{opposite_algebra, AlgTable, AlgebraData};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Matrix};
use crate::rep::{end_radical, quotient, regular_module, tensor_dim, tor_dim, trace, ModMap, ProjectivePresentation, Representation};
use crate::silting::{bongartz_completion, perp_members, Completion, Members};
use crate::Config;

#[derive(Clone, Debug)]
pub struct RingEpi {
    pub sigma: ProjectivePresentation,
    pub completion: Completion,
    pub t1: Representation,
    /// `M_A / τ_{T1}(M_A)`, which is `B` as a right `A`-module.
    pub m_bar: Representation,
    /// The projection `M_A → M̄`.
    pub q: ModMap,
    /// `ψ_A: A → M̄`.
    pub psi: ModMap,
    pub b: AlgTable,
    /// Basis of `B` as endomorphisms of `M̄`.
    pub b_basis: Vec<ModMap>,
    /// Column `i` holds `f` of the `i`-th basis element of `A`.
    pub f: Matrix,
    pub b_right: Representation,
    /// `B` as a left `A`-module, i.e. a representation of `A^op`.
    pub b_left: Representation,
    /// Basis of `Ker f` inside `A`.
    pub kernel: Matrix,
    /// Catalog members of the bireflective class `Hom(σ, X)` bijective.
    pub perp: Members,
}

/// Coordinates of a module element stored vertex by vertex.
fn stack(parts: &[Vec<u32>]) -> Vec<u32> {
    parts.iter().flatten().copied().collect()
}

pub fn build_epi(alg: &AlgebraData, cat: &Catalog, t1: &Representation, sigma: &ProjectivePresentation, cfg: &Config) -> Result<RingEpi> {
    let f_field = alg.field();
    let n = alg.n_vertices();
    let completion = bongartz_completion(alg, cat, t1, sigma, cfg)?;
    let m = &completion.m_a.target;
    let (_, tr_incl) = trace(alg, t1, m);
    let (m_bar, q) = quotient(alg, m, &tr_incl.blocks);
    cfg.check_dim(m_bar.total_dim())?;
    let psi = q.compose(&completion.m_a.map);
    let (reg, labels) = regular_module(alg);
    // ψ(1): the idempotent e_w sits at vertex w.
    let m0: Vec<Vec<u32>> = (0..n)
        .map(|w| {
            let mut e = vec![0; reg.dims[w]];
            if let Some(k) = labels[w].iter().position(|&b| b == alg.idempotents[w]) {
                e[k] = 1;
            }
            psi.blocks[w].mul_vec(&e)
        })
        .collect();
    let (b, _, b_basis) = end_radical(alg, &m_bar);
    let d = m_bar.total_dim();
    let ev_cols: Vec<Vec<u32>> = b_basis
        .iter()
        .map(|delta| stack(&(0..n).map(|v| delta.blocks[v].mul_vec(&m0[v])).collect::<Vec<_>>()))
        .collect();
    let ev = Matrix::from_columns(f_field, d, &ev_cols);
    if ev.rank() != d || b_basis.len() != d {
        return Err(Error::Invariant(format!(
            "evaluation End(M̄) → M̄ is not bijective (dim End = {}, dim M̄ = {d})",
            b_basis.len()
        )));
    }
    let ev_inv = ev.inverse().ok_or_else(|| Error::Invariant("evaluation map not invertible".into()))?;
    let offs = m_bar.offsets();
    let f_cols: Vec<Vec<u32>> = (0..alg.dim())
        .map(|i| {
            let w = alg.basis[i].source;
            let k = labels[w].iter().position(|&x| x == i).expect("basis element in regular module");
            let mut img = vec![0; d];
            let col = psi.blocks[w].column(k);
            img[offs[w]..offs[w] + m_bar.dims[w]].copy_from_slice(&col);
            ev_inv.mul_vec(&img)
        })
        .collect();
    let f = Matrix::from_columns(f_field, d, &f_cols);
    let kernel = f.kernel();
    let b_left = left_structure(alg, &b, &f)?;
    let perp = perp_members(alg, cat, sigma);
    Ok(RingEpi {
        sigma: sigma.clone(),
        completion,
        t1: t1.clone(),
        b_right: m_bar.clone(),
        m_bar,
        q,
        psi,
        b,
        b_basis,
        f,
        b_left,
        kernel,
        perp,
    })
}

/// `B` as a left `A`-module: vertex `v` carries `f(e_v) B`, arrow `a` acts by
/// left multiplication with `f(a)`.
fn left_structure(alg: &AlgebraData, b: &AlgTable, f: &Matrix) -> Result<Representation> {
    let op = opposite_algebra(alg);
    let n = alg.n_vertices();
    let fe = |i: usize| f.column(i);
    let spaces: Vec<Matrix> = (0..n).map(|v| b.left_matrix(&fe(alg.idempotents[v])).image()).collect();
    let coords: Vec<Coordinates> = spaces.iter().map(|s| Coordinates::new(s.clone())).collect();
    let dims: Vec<usize> = spaces.iter().map(|s| s.cols()).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, ar)| {
            let la = b.left_matrix(&fe(alg.arrow_basis[a]));
            let cols: Vec<Vec<u32>> = spaces[ar.source].columns().iter().map(|x| coords[ar.target].coords(&la.mul_vec(x))).collect();
            Matrix::from_columns(alg.field(), dims[ar.target], &cols)
        })
        .collect();
    Representation::new(&op, dims, maps)
}

impl RingEpi {
    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel.cols() == 0
    }

    pub fn is_surjective(&self) -> bool {
        self.f.rank() == self.dim_b()
    }

    /// `f` respects units and products on all pairs of basis elements.
    pub fn is_ring_hom(&self, alg: &AlgebraData) -> bool {
        let fc = |i: usize| self.f.column(i);
        let unit: Vec<u32> = {
            let mut u = vec![0; alg.dim()];
            for &e in &alg.idempotents {
                u[e] = 1;
            }
            self.f.mul_vec(&u)
        };
        if unit != self.b.unit() {
            return false;
        }
        (0..alg.dim()).all(|i| {
            (0..alg.dim()).all(|j| {
                let mut prod = vec![0; alg.dim()];
                for &(k, c) in alg.mult(i, j) {
                    prod[k] = c;
                }
                self.f.mul_vec(&prod) == self.b.mul(&fc(i), &fc(j))
            })
        })
    }
}

/// Ring-epimorphism certificate: `B ⊗_A B → B` is onto (1 ⊗ b ↦ b), so it
/// is bijective exactly when the dimensions agree.
pub fn verify_ring_epi(alg: &AlgebraData, e: &RingEpi) -> bool {
    tensor_dim(alg, &e.b_right, &e.b_left) == e.dim_b()
}

pub fn tor1_vanishes(alg: &AlgebraData, e: &RingEpi) -> bool {
    tor_dim(alg, &e.b_right, &e.b_left, 1) == 0
}

/// Number of simples of the basic algebra of `B`, its dimension, and the
/// total dimensions of `Ext^1` and `Ext^2` between its simples.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MoritaShape {
    pub simples: usize,
    pub dim: usize,
    pub ext1: usize,
    pub ext2: usize,
}

pub fn morita_shape(b: &AlgTable, cfg: &Config) -> Result<MoritaShape> {
    let mut rng = cfg.rng();
    let basic = crate::algebra::basic_algebra(b, &mut rng, cfg.iso_trials)?;
    let pres = basic.presentation()?;
    let n = pres.n_vertices();
    let simples: Vec<Representation> = (0..n).map(|v| crate::rep::simple(&pres, v)).collect();
    let mut ext1 = 0;
    let mut ext2 = 0;
    for x in &simples {
        for y in &simples {
            ext1 += crate::rep::ext_dim(&pres, x, y, 1);
            ext2 += crate::rep::ext_dim(&pres, x, y, 2);
        }
    }
    Ok(MoritaShape {
        simples: basic.simples,
        dim: basic.table.dim(),
        ext1,
        ext2,
    })
}
