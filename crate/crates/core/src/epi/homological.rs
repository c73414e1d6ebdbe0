//! `Tor_i(B, B)` along a projective resolution of `B_A`, and the brick test.

use serde::Serialize;

use super::RingEpi;
use crate::algebra::AlgebraData;
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::linalg::{intersect, Matrix};
use crate::rep::{
    ext_dim, hom_dim, is_isomorphic, is_projective, proj_dimension, regular_module, syzygy, tor_dim, trace, PdResult,
    Representation,
};
use crate::Config;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HomologicalVerdict {
    /// Every `Tor_i` vanishes: the resolution ends, repeats, or `A` is hereditary.
    Homological { checked: usize },
    /// `Tor_1..Tor_bound` vanish but nothing certifies the rest.
    HomologicalUpTo { bound: usize },
    NotHomological { degree: usize, dim: usize },
}

impl HomologicalVerdict {
    pub fn is_homological(&self) -> bool {
        matches!(self, HomologicalVerdict::Homological { .. })
    }
}

/// `Tor_i(B, B) = Tor_1(Ω^{i-1} B, B)`. Stops early when a syzygy is zero,
/// projective, or isomorphic to an earlier one.
pub fn is_homological(alg: &AlgebraData, epi: &RingEpi, bound: usize, hereditary: bool, cfg: &Config) -> Result<HomologicalVerdict> {
    let mut seen: Vec<Representation> = Vec::new();
    let mut x = epi.b_right.clone();
    for i in 1..=bound {
        if x.is_zero() || is_projective(alg, &x) {
            return Ok(HomologicalVerdict::Homological { checked: i - 1 });
        }
        let t = tor_dim(alg, &x, &epi.b_left, 1);
        if t != 0 {
            return Ok(HomologicalVerdict::NotHomological { degree: i, dim: t });
        }
        if hereditary {
            return Ok(HomologicalVerdict::Homological { checked: i });
        }
        for y in &seen {
            if y.dims == x.dims && is_isomorphic(alg, y, &x, cfg, None)? {
                return Ok(HomologicalVerdict::Homological { checked: i });
            }
        }
        seen.push(x.clone());
        x = syzygy(alg, &x).0;
        cfg.check_dim(x.total_dim())?;
    }
    Ok(HomologicalVerdict::HomologicalUpTo { bound })
}

#[derive(Clone, Debug, Serialize)]
pub struct BrickReport {
    pub kernel_dims: Vec<usize>,
    pub kernel_name: String,
    /// `Some(n)` when `τ_{T1}(A) ≅ T1^n`.
    pub n: Option<usize>,
    pub homological: bool,
    pub pd_b: PdResult,
    pub injective: bool,
    /// `τ_{T1}(A)` and `Ker f` agree as subspaces of `A`.
    pub kernel_matches_f: bool,
}

pub fn brick_criterion(alg: &AlgebraData, cat: &Catalog, epi: &RingEpi, cfg: &Config) -> Result<BrickReport> {
    let t1 = &epi.t1;
    if hom_dim(alg, t1, t1) != 1 {
        return Err(Error::Hypothesis("T1 is not a brick".into()));
    }
    if is_projective(alg, t1) {
        return Err(Error::Hypothesis("T1 is projective".into()));
    }
    match proj_dimension(alg, t1, cfg.homological_bound, cfg)? {
        PdResult::Finite { pd } if pd <= 1 => {}
        _ => return Err(Error::Hypothesis("pd T1 > 1".into())),
    }
    if ext_dim(alg, t1, t1, 1) != 0 {
        return Err(Error::Hypothesis("T1 has self-extensions".into()));
    }
    let (reg, labels) = regular_module(alg);
    let (k, incl) = trace(alg, t1, &reg);
    // Subspace of A spanned by the trace, through the regular-module labels.
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for w in 0..alg.n_vertices() {
        for c in incl.blocks[w].columns() {
            let mut v = vec![0; alg.dim()];
            for (pos, &b) in labels[w].iter().enumerate() {
                v[b] = c[pos];
            }
            cols.push(v);
        }
    }
    let tr = Matrix::from_columns(alg.field(), alg.dim(), &cols);
    let kernel_matches_f = tr.cols() == epi.kernel.cols() && intersect(&tr, &epi.kernel).cols() == tr.cols();
    let d1 = t1.total_dim();
    let n = if k.is_zero() {
        Some(0)
    } else if k.total_dim() % d1 == 0 {
        let n = k.total_dim() / d1;
        let pow = t1.power(alg, n);
        (pow.dims == k.dims && is_isomorphic(alg, &pow, &k, cfg, Some(&cat.modules()))?).then_some(n)
    } else {
        None
    };
    let kernel_name = if k.is_zero() { "0".into() } else { cat.format_sum(&cat.decompose(alg, &k, cfg)?) };
    Ok(BrickReport {
        kernel_dims: k.dims.clone(),
        kernel_name,
        homological: n.is_some(),
        pd_b: proj_dimension(alg, &epi.b_right, cfg.homological_bound, cfg)?,
        injective: k.is_zero(),
        n,
        kernel_matches_f,
    })
}
