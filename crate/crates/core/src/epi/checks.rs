//! Property checks on a constructed epimorphism, run over catalog members.

use rand::Rng;

use super::RingEpi;
use crate::algebra::{opposite_algebra, AlgebraData};
use crate::catalog::Catalog;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::rep::{cokernel, hom_basis, hom_dim, kernel, tensor_dim, ModMap, Representation};
use crate::silting::{extension_samples, minimal_left_approximation, Approximation};
use crate::Config;

/// `σ ⊗_A B` is an isomorphism (killed summands must vanish after tensoring).
pub fn sigma_tensor_is_iso(alg: &AlgebraData, epi: &RingEpi) -> bool {
    let op = opposite_algebra(alg);
    let m = epi.sigma.tensor_matrix(&op, &epi.b_left);
    m.is_square() && m.rank() == m.rows()
}

/// The `𝒴`-reflection of `X` as a minimal left approximation by the
/// bireflective members.
pub fn reflection(alg: &AlgebraData, cat: &Catalog, epi: &RingEpi, x: &Representation) -> Approximation {
    let parts: Vec<usize> = (0..cat.len()).filter(|&i| epi.perp[i]).collect();
    minimal_left_approximation(alg, cat, x, &parts)
}

/// First catalog module whose reflection fails: wrong size against
/// `X ⊗_A B`, or `Hom(ψ_X, Y)` not bijective for some member `Y`.
pub fn reflection_witness(alg: &AlgebraData, cat: &Catalog, epi: &RingEpi) -> Option<String> {
    let f = alg.field();
    for i in 0..cat.len() {
        let x = cat.module(i);
        let r = reflection(alg, cat, epi, x);
        if r.target.total_dim() != tensor_dim(alg, x, &epi.b_left) {
            return Some(format!("reflection of {} has the wrong dimension", cat.name(i)));
        }
        for j in (0..cat.len()).filter(|&j| epi.perp[j]) {
            let y = cat.module(j);
            let hr = hom_basis(alg, &r.target, y);
            if hr.len() != hom_dim(alg, x, y) {
                return Some(format!("Hom(ψ_{}, {}) is not bijective", cat.name(i), cat.name(j)));
            }
            if hr.is_empty() {
                continue;
            }
            let width: usize = x.dims.iter().zip(&y.dims).map(|(a, b)| a * b).sum();
            let pulled = Matrix::from_columns(f, width, &hr.iter().map(|g| g.compose(&r.map).flatten()).collect::<Vec<_>>());
            if pulled.rank() != hr.len() {
                return Some(format!("Hom(ψ_{}, {}) is not injective", cat.name(i), cat.name(j)));
            }
        }
    }
    None
}

fn sample_maps(basis: &[ModMap], x: &Representation, y: &Representation, cfg: &Config) -> Vec<ModMap> {
    let mut out = basis.to_vec();
    if basis.len() > 1 {
        let mut rng = cfg.rng();
        let p = x.field().p();
        let mut acc = ModMap::zero(x, y);
        for b in basis {
            acc = acc.add(&b.scale(rng.gen_range(1..p)));
        }
        out.push(acc);
    }
    out
}

/// Closure of the bireflective members under kernels, cokernels and
/// extensions, on basis maps plus a random combination.
pub fn bireflective_witness(alg: &AlgebraData, cat: &Catalog, epi: &RingEpi, cfg: &Config) -> Result<Option<String>> {
    let members: Vec<usize> = (0..cat.len()).filter(|&i| epi.perp[i]).collect();
    let inside = |m: &Representation| -> Result<bool> {
        let mult = cat.decompose(alg, m, cfg)?;
        Ok((0..cat.len()).all(|j| mult[j] == 0 || epi.perp[j]))
    };
    for &i in &members {
        for &j in &members {
            let (x, y) = (cat.module(i), cat.module(j));
            for h in sample_maps(&hom_basis(alg, x, y), x, y, cfg) {
                if !inside(&kernel(alg, &h, x).0)? {
                    return Ok(Some(format!("kernel of a map {} → {} leaves the class", cat.name(i), cat.name(j))));
                }
                if !inside(&cokernel(alg, &h, y).0)? {
                    return Ok(Some(format!("cokernel of a map {} → {} leaves the class", cat.name(i), cat.name(j))));
                }
            }
            for e in extension_samples(alg, x, y, cfg) {
                if !inside(&e)? {
                    return Ok(Some(format!("extension of {} by {} leaves the class", cat.name(i), cat.name(j))));
                }
            }
        }
    }
    Ok(None)
}
