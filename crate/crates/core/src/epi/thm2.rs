//! `End(T)/I ≅ B` for the non-basic completion `T = T1 ⊕ M_A`, where `I`
//! consists of the endomorphisms factoring through `Add(T1)`.

use serde::Serialize;

use super::RingEpi;
use crate::algebra::AlgebraData;
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::linalg::{intersect, Matrix};
use crate::rep::{hom_basis, projections, ModMap, Representation};
use crate::Config;

#[derive(Clone, Debug, Serialize)]
pub struct ThmTwoReport {
    pub t: String,
    pub end_dim: usize,
    pub ideal_dim: usize,
    pub b_dim: usize,
    pub p_rank: usize,
    pub p_surjective: bool,
    pub ker_p_equals_i: bool,
    pub i_squared_equals_i: bool,
    pub p_multiplicative: bool,
}

impl ThmTwoReport {
    pub fn passed(&self) -> bool {
        self.p_surjective && self.ker_p_equals_i && self.i_squared_equals_i && self.p_multiplicative && self.end_dim == self.ideal_dim + self.b_dim
    }
}

fn combine(basis: &[ModMap], c: &[u32], src: &Representation) -> ModMap {
    let mut acc = ModMap::zero(src, src);
    for (b, &k) in basis.iter().zip(c) {
        if k != 0 {
            acc = acc.add(&b.scale(k));
        }
    }
    acc
}

pub fn thm2_report(alg: &AlgebraData, cat: &Catalog, epi: &RingEpi, _cfg: &Config) -> Result<ThmTwoReport> {
    let fd = alg.field();
    let comp = &epi.completion;
    let t1 = cat.direct_sum(alg, &comp.t1_mult);
    let m = &comp.m_a.target;
    let parts = [t1.clone(), m.clone()];
    let t = Representation::sum_of(alg, &parts);
    let proj = projections(&parts);
    let incl_m = ModMap {
        blocks: proj[1].blocks.iter().map(|b| b.transpose()).collect(),
    };
    let end = hom_basis(alg, &t, &t);
    let width: usize = t.dims.iter().map(|d| d * d).sum();
    let end_mat = Matrix::from_columns(fd, width, &end.iter().map(|h| h.flatten()).collect::<Vec<_>>());
    let coords = crate::linalg::Coordinates::new(end_mat.clone());
    // I: maps through each indecomposable summand of T1.
    let mut through: Vec<Vec<u32>> = Vec::new();
    for (i, &k) in comp.t1_mult.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let x = cat.module(i);
        let out = hom_basis(alg, &t, x);
        let back = hom_basis(alg, x, &t);
        for g in &back {
            for h in &out {
                through.push(coords.coords(&g.compose(h).flatten()));
            }
        }
    }
    let ideal = if through.is_empty() {
        Matrix::zeros(fd, end.len(), 0)
    } else {
        Matrix::from_columns(fd, end.len(), &through).image()
    };
    // p(γ) = ev⁻¹(q(γ_MM(φ(1)))), the M-corner passed to M̄.
    let n = alg.n_vertices();
    let (reg, labels) = crate::rep::regular_module(alg);
    let one: Vec<Vec<u32>> = (0..n)
        .map(|w| {
            let mut e = vec![0; reg.dims[w]];
            if let Some(k) = labels[w].iter().position(|&b| b == alg.idempotents[w]) {
                e[k] = 1;
            }
            comp.m_a.map.blocks[w].mul_vec(&e)
        })
        .collect();
    let q = &epi.q;
    let b_dim = epi.dim_b();
    let ev = Matrix::from_columns(
        fd,
        epi.m_bar.total_dim(),
        &epi
            .b_basis
            .iter()
            .map(|delta| {
                (0..n)
                    .flat_map(|v| {
                        let m0 = q.blocks[v].mul_vec(&one[v]);
                        delta.blocks[v].mul_vec(&m0)
                    })
                    .collect()
            })
            .collect::<Vec<_>>(),
    );
    let ev_inv = if b_dim == 0 { Matrix::zeros(fd, 0, 0) } else { ev.inverse().ok_or_else(|| Error::Invariant("evaluation map not invertible".into()))? };
    let p_of = |g: &ModMap| -> Vec<u32> {
        let corner = proj[1].compose(g).compose(&incl_m);
        let img: Vec<u32> = (0..n)
            .flat_map(|v| q.blocks[v].mul_vec(&corner.blocks[v].mul_vec(&one[v])))
            .collect();
        if b_dim == 0 {
            vec![]
        } else {
            ev_inv.mul_vec(&img)
        }
    };
    let p_cols: Vec<Vec<u32>> = end.iter().map(&p_of).collect();
    let p = Matrix::from_columns(fd, b_dim, &p_cols);
    let p_rank = p.rank();
    let ker = p.kernel();
    let ker_p_equals_i = ker.cols() == ideal.cols() && intersect(&ker, &ideal).cols() == ideal.cols();
    let ideal_maps: Vec<ModMap> = ideal.columns().iter().map(|c| combine(&end, c, &t)).collect();
    let mut sq: Vec<Vec<u32>> = Vec::new();
    for x in &ideal_maps {
        for y in &ideal_maps {
            sq.push(coords.coords(&x.compose(y).flatten()));
        }
    }
    let sq_rank = if sq.is_empty() { 0 } else { Matrix::from_columns(fd, end.len(), &sq).rank() };
    let p_multiplicative = end.iter().zip(&p_cols).all(|(x, px)| {
        end.iter()
            .zip(&p_cols)
            .all(|(y, py)| p_of(&x.compose(y)) == epi.b.mul(px, py))
    });
    let report = ThmTwoReport {
        t: cat.format_sum(&comp.t_mult),
        end_dim: end.len(),
        ideal_dim: ideal.cols(),
        b_dim,
        p_rank,
        p_surjective: p_rank == b_dim,
        ker_p_equals_i,
        i_squared_equals_i: sq_rank == ideal.cols(),
        p_multiplicative,
    };
    if !report.passed() {
        return Err(Error::Invariant(format!("End(T)/I ≇ B: {report:?}")));
    }
    Ok(report)
}
