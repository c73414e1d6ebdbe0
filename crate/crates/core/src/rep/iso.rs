//! Endomorphism rings, indecomposability and isomorphism testing.

use rand::Rng;
use serde::Serialize;

use super::homological::hom_coordinates;
use super::{hom_basis, hom_dim, image, ModMap, Representation};
use crate::algebra::{AlgTable, AlgebraData};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Config;

/// `End(M)` as a structure-constant algebra over `hom_basis(M, M)`, with
/// product `x·y = x∘y`, its radical (as coordinate columns) and the basis.
pub fn end_radical(alg: &AlgebraData, m: &Representation) -> (AlgTable, Matrix, Vec<ModMap>) {
    let f = m.field();
    let basis = hom_basis(alg, m, m);
    let d = basis.len();
    let coords = hom_coordinates(&basis, m.dims.iter().map(|d| d * d).sum(), f);
    let unit = coords.coords(&ModMap::identity(m).flatten());
    let table = AlgTable::from_products(f, d, unit, |i, j| coords.coords(&basis[i].compose(&basis[j]).flatten()));
    // Trace form on M. Nondegenerate on the top because dim M < p.
    let gram = Matrix::from_fn(f, d, d, |i, j| {
        basis[i]
            .blocks
            .iter()
            .zip(&basis[j].blocks)
            .fold(0, |acc, (x, y)| f.add(acc, x.mul(y).trace()))
    });
    (table, gram.kernel(), basis)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Indecomposability {
    Yes,
    No,
    /// `End(M)` has a top bigger than `K` that no trial managed to split.
    NotSplit,
}

fn end_idempotents(alg: &AlgebraData, m: &Representation, cfg: &Config) -> Result<(Vec<(Vec<u32>, bool)>, Vec<ModMap>)> {
    cfg.check_dim(m.total_dim())?;
    let (table, _, basis) = end_radical(alg, m);
    let mut rng = cfg.rng();
    let idem = table.primitive_idempotents(&mut rng, cfg.iso_trials)?;
    Ok((idem, basis))
}

pub fn indecomposable_verdict(alg: &AlgebraData, m: &Representation, cfg: &Config) -> Result<Indecomposability> {
    if m.is_zero() {
        return Ok(Indecomposability::No);
    }
    let (idem, _) = end_idempotents(alg, m, cfg)?;
    Ok(match idem.as_slice() {
        [(_, true)] => Indecomposability::Yes,
        [(_, false)] => Indecomposability::NotSplit,
        _ => Indecomposability::No,
    })
}

fn combine(basis: &[ModMap], c: &[u32], src: &Representation, tgt: &Representation) -> ModMap {
    let mut acc = ModMap::zero(src, tgt);
    for (b, &x) in basis.iter().zip(c) {
        if x != 0 {
            acc = acc.add(&b.scale(x));
        }
    }
    acc
}

/// Summands `e M` for a complete set of primitive idempotents of `End(M)`.
pub fn decompose_by_splitting(alg: &AlgebraData, m: &Representation, cfg: &Config) -> Result<Vec<(Representation, Indecomposability)>> {
    if m.is_zero() {
        return Ok(vec![]);
    }
    let (idem, basis) = end_idempotents(alg, m, cfg)?;
    Ok(idem
        .iter()
        .map(|(e, local)| {
            let map = combine(&basis, e, m, m);
            let verdict = if *local { Indecomposability::Yes } else { Indecomposability::NotSplit };
            (image(alg, &map, m).0, verdict)
        })
        .collect())
}

/// Some basis pair `f: M → N`, `g: N → M` with `g∘f` not nilpotent. For
/// local `End(M)` this is exactly when `M` is a summand of `N`.
pub(crate) fn summand_pair(alg: &AlgebraData, m: &Representation, n: &Representation) -> bool {
    let fs = hom_basis(alg, m, n);
    let gs = hom_basis(alg, n, m);
    fs.iter().any(|f| gs.iter().any(|g| !is_nilpotent(&g.compose(f))))
}

fn is_nilpotent(x: &ModMap) -> bool {
    // Nilpotent iff some power vanishes; the total dimension bounds the index.
    let d: usize = x.blocks.iter().map(|b| b.rows()).sum();
    x.pow(d.max(1) as u64).is_zero()
}

/// Decides `M ≅ N`. The catalog, when given, must list every indecomposable
/// up to isomorphism; it is only used when splitting is inconclusive.
pub fn is_isomorphic(alg: &AlgebraData, m: &Representation, n: &Representation, cfg: &Config, catalog: Option<&[Representation]>) -> Result<bool> {
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let e = hom_dim(alg, m, m);
    if hom_dim(alg, n, n) != e || hom_dim(alg, m, n) != e || hom_dim(alg, n, m) != e {
        return Ok(false);
    }
    let fs = hom_basis(alg, m, n);
    let mut rng = cfg.rng();
    let p = m.field().p();
    for _ in 0..cfg.iso_trials {
        let c: Vec<u32> = (0..fs.len()).map(|_| rng.gen_range(0..p)).collect();
        if combine(&fs, &c, m, n).is_iso() {
            return Ok(true);
        }
    }
    // Match indecomposable summands when every one of them is certified local.
    let ms = decompose_by_splitting(alg, m, cfg)?;
    let ns = decompose_by_splitting(alg, n, cfg)?;
    let all_local = ms.iter().chain(&ns).all(|(_, v)| *v == Indecomposability::Yes);
    if all_local {
        if ms.len() != ns.len() {
            return Ok(false);
        }
        let mut used = vec![false; ns.len()];
        for (x, _) in &ms {
            let hit = ns
                .iter()
                .enumerate()
                .find(|(j, (y, _))| !used[*j] && x.dims == y.dims && summand_pair(alg, x, y));
            match hit {
                Some((j, _)) => used[j] = true,
                None => return Ok(false),
            }
        }
        return Ok(true);
    }
    if let Some(cat) = catalog {
        return Ok(cat.iter().all(|x| hom_dim(alg, x, m) == hom_dim(alg, x, n)));
    }
    Err(Error::Inconclusive(format!(
        "isomorphism of modules with dimension vector {:?} not decided",
        m.dims
    )))
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::super::*;
    use super::*;

    #[test]
    fn verdicts() {
        let cfg = Config::default();
        let a = alg(FIVE_VERTEX);
        for v in 0..5 {
            assert_eq!(indecomposable_verdict(&a, &projective(&a, v), &cfg).unwrap(), Indecomposability::Yes);
            assert_eq!(indecomposable_verdict(&a, &injective(&a, v), &cfg).unwrap(), Indecomposability::Yes);
        }
        let s = simple(&a, 0).direct_sum(&simple(&a, 0));
        assert_eq!(indecomposable_verdict(&a, &s, &cfg).unwrap(), Indecomposability::No);
        let parts = decompose_by_splitting(&a, &projective(&a, 0).direct_sum(&simple(&a, 4)), &cfg).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(|(x, _)| x.total_dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 4]);
    }

    #[test]
    fn isomorphism() {
        let cfg = Config::default();
        let a = alg(FIVE_VERTEX);
        // P1 ≅ I4 share the dimension vector (1,1,1,1,0)
        assert!(is_isomorphic(&a, &projective(&a, 0), &injective(&a, 3), &cfg, None).unwrap());
        assert!(!is_isomorphic(&a, &projective(&a, 1), &injective(&a, 1), &cfg, None).unwrap());
        let d = alg(DUAL_NUMBERS);
        let s2 = simple(&d, 0).direct_sum(&simple(&d, 0));
        assert!(!is_isomorphic(&d, &s2, &projective(&d, 0), &cfg, None).unwrap());
    }

    #[test]
    fn end_radical_of_local() {
        let d = alg(DUAL_NUMBERS);
        let (t, rad, _) = end_radical(&d, &projective(&d, 0));
        assert_eq!((t.dim(), rad.cols()), (2, 1));
    }
}
