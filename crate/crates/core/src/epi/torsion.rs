//! Torsion classes between `Gen(T1)` and `Gen(T)` against torsion classes
//! of `mod B`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::{reflection, RingEpi};
use crate::algebra::AlgebraData;
use crate::catalog::Catalog;
use crate::error::Result;
use crate::rep::{hom_dim, quotient, trace};
use crate::silting::{gen_members, Members};
use crate::Config;

/// Smallest torsion class inside `universe` containing `seed`, as
/// `⊥(seed^∘)` computed from the catalog hom table.
pub fn torsion_closure(cat: &Catalog, universe: &[bool], seed: &[bool]) -> Members {
    let n = cat.len();
    let perp: Vec<usize> = (0..n).filter(|&y| universe[y] && (0..n).all(|x| !seed[x] || cat.hom(x, y) == 0)).collect();
    (0..n).map(|x| universe[x] && perp.iter().all(|&y| cat.hom(x, y) == 0)).collect()
}

/// All torsion classes `𝒯` of the universe with `base ⊆ 𝒯 ⊆ top`,
/// reached by adding one indecomposable at a time.
pub fn torsion_classes(cat: &Catalog, universe: &[bool], base: &[bool], top: &[bool]) -> Vec<Members> {
    let start = torsion_closure(cat, universe, base);
    let within = |c: &[bool]| c.iter().zip(top).all(|(a, b)| !a || *b);
    if !within(&start) {
        return vec![];
    }
    let mut seen: HashSet<Members> = HashSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(c) = queue.pop_front() {
        for x in 0..cat.len() {
            if c[x] || !top[x] {
                continue;
            }
            let mut s = c.clone();
            s[x] = true;
            let next = torsion_closure(cat, universe, &s);
            if within(&next) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Members> = seen.into_iter().collect();
    out.sort_by_key(|c| (c.iter().filter(|&&b| b).count(), c.iter().map(|&b| !b).collect::<Vec<_>>()));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub interval: Vec<Vec<String>>,
    pub b_classes: Vec<Vec<String>>,
    pub bijective: bool,
    /// `𝒯 ∩ T1^∘` agrees with the class generated by the reflections.
    pub reflection_agrees: bool,
    pub witness: Option<String>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.reflection_agrees && self.witness.is_none()
    }
}

pub fn torsion_reduction_check(alg: &AlgebraData, cat: &Catalog, epi: &RingEpi, cfg: &Config) -> Result<ReductionReport> {
    let n = cat.len();
    let all = vec![true; n];
    let t = cat.direct_sum(alg, &epi.completion.t_mult);
    let gen_t1 = gen_members(alg, cat, &epi.t1);
    let gen_t = gen_members(alg, cat, &t);
    let t1_zero: Members = cat.members(|y| hom_dim(alg, &epi.t1, y) == 0);
    let interval = torsion_classes(cat, &all, &gen_t1, &gen_t);
    let b_classes = torsion_classes(cat, &epi.perp, &vec![false; n], &epi.perp);
    let forward = |c: &Members| -> Members { (0..n).map(|x| c[x] && t1_zero[x]).collect() };
    // Summands of X / τ_{T1}(X), used by the inverse map.
    let mut torsion_free_parts: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    for x in 0..n {
        let m = cat.module(x);
        let (_, incl) = trace(alg, &epi.t1, m);
        let q = quotient(alg, m, &incl.blocks).0;
        let mult = cat.decompose(alg, &q, cfg)?;
        torsion_free_parts.push((0..n).filter(|&j| mult[j] > 0).collect());
    }
    let backward = |g: &Members| -> Members { (0..n).map(|x| torsion_free_parts[x].iter().all(|&j| g[j])).collect() };
    let mut witness = None;
    let images: Vec<Members> = interval.iter().map(forward).collect();
    let image_set: HashSet<&Members> = images.iter().collect();
    let b_set: HashSet<&Members> = b_classes.iter().collect();
    let mut bijective = image_set.len() == interval.len() && image_set == b_set;
    for (c, img) in interval.iter().zip(&images) {
        if &backward(img) != c {
            bijective = false;
            witness.get_or_insert_with(|| format!("G(F(𝒯)) ≠ 𝒯 for 𝒯 = {:?}", cat.names(c)));
        }
    }
    for g in &b_classes {
        if &forward(&backward(g)) != g {
            bijective = false;
            witness.get_or_insert_with(|| format!("F(G(𝒢)) ≠ 𝒢 for 𝒢 = {:?}", cat.names(g)));
        }
    }
    let mut reflection_agrees = true;
    let refl: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let r = reflection(alg, cat, epi, cat.module(x));
            (0..n).filter(|&j| r.target_mult[j] > 0).collect()
        })
        .collect();
    for (c, img) in interval.iter().zip(&images) {
        let mut seed = vec![false; n];
        for x in (0..n).filter(|&x| c[x]) {
            for &j in &refl[x] {
                seed[j] = true;
            }
        }
        if &torsion_closure(cat, &epi.perp, &seed) != img {
            reflection_agrees = false;
            witness.get_or_insert_with(|| format!("𝒯 ⊗ B differs from 𝒯 ∩ T1^∘ for 𝒯 = {:?}", cat.names(c)));
        }
    }
    Ok(ReductionReport {
        interval: interval.iter().map(|c| cat.names(c)).collect(),
        b_classes: b_classes.iter().map(|c| cat.names(c)).collect(),
        bijective,
        reflection_agrees,
        witness,
    })
}
