//! Right modules as quiver representations.
//!
//! For an arrow `a: s → t` the action is a `dims[s] × dims[t]` matrix taking
//! the vertex-`t` space to the vertex-`s` space. A written word `a1*…*ak`
//! acts as `ρ(ak)⋯ρ(a1)`.

mod ar;
mod file;
mod homological;
pub(crate) mod iso;

use serde::Serialize;

pub use ar::{dual, tau, tau_inv};
pub use file::{format_module, parse_modules};
pub use homological::{
    cosyzygy, ext_basis, map_from_projectives, ext_dim, extension_middle, is_projective, minimal_presentation, proj_dimension, projective_cover,
    radical, radical_power, socle, syzygy, tensor_dim, tor_dim, trace, Cover, Ext1, PdResult, ProjectivePresentation,
};
pub use iso::{decompose_by_splitting, end_radical, indecomposable_verdict, is_isomorphic, Indecomposability};

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::linalg::{complement_basis, Coordinates, Field, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    field: Field,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardKind {
    Projective,
    Injective,
    Simple,
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(alg: &AlgebraData, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let r = Representation {
            field: alg.field(),
            dims,
            maps,
        };
        r.validate(alg)?;
        Ok(r)
    }

    pub(crate) fn new_unchecked(field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Representation { field, dims, maps }
    }

    pub fn zero(alg: &AlgebraData) -> Self {
        let n = alg.n_vertices();
        let maps = alg.arrows.iter().map(|_| Matrix::zeros(alg.field(), 0, 0)).collect();
        Representation {
            field: alg.field(),
            dims: vec![0; n],
            maps,
        }
    }

    pub fn validate(&self, alg: &AlgebraData) -> Result<()> {
        if self.dims.len() != alg.n_vertices() || self.maps.len() != alg.arrows.len() {
            return Err(Error::InvalidModule("vertex or arrow count does not match the algebra".into()));
        }
        for (a, (m, ar)) in self.maps.iter().zip(&alg.arrows).enumerate() {
            if m.shape() != (self.dims[ar.source], self.dims[ar.target]) {
                return Err(Error::InvalidModule(format!(
                    "map for arrow `{}` has shape {:?}, expected {:?}",
                    alg.arrows[a].name,
                    m.shape(),
                    (self.dims[ar.source], self.dims[ar.target])
                )));
            }
        }
        for (k, r) in alg.relations.iter().enumerate() {
            let w0 = &r.terms[0].1;
            let tgt = alg.arrows[w0[0]].target;
            let src = alg.arrows[*w0.last().unwrap()].source;
            let mut acc = Matrix::zeros(self.field, self.dims[src], self.dims[tgt]);
            for (c, w) in &r.terms {
                acc.axpy(*c, &self.word_action(alg, w, tgt));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation {} does not vanish", k + 1)));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Action of a written word; `at` is used only for the empty word.
    pub fn word_action(&self, alg: &AlgebraData, word: &[usize], at: usize) -> Matrix {
        let mut acc = match word.first() {
            Some(&a) => Matrix::identity(self.field, self.dims[alg.arrows[a].target]),
            None => return Matrix::identity(self.field, self.dims[at]),
        };
        for &a in word {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Action of the `i`-th basis element: `M_target → M_source`.
    pub fn basis_action(&self, alg: &AlgebraData, i: usize) -> Matrix {
        let b = &alg.basis[i];
        self.word_action(alg, &b.arrows, b.source)
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.dims.len() + 1);
        let mut acc = 0;
        for &d in &self.dims {
            o.push(acc);
            acc += d;
        }
        o.push(acc);
        o
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| Matrix::block_diag(self.field, &[a, b])).collect();
        Representation {
            field: self.field,
            dims,
            maps,
        }
    }

    pub fn sum_of(alg: &AlgebraData, parts: &[Representation]) -> Representation {
        parts.iter().fold(Representation::zero(alg), |acc, p| acc.direct_sum(p))
    }

    pub fn power(&self, alg: &AlgebraData, n: usize) -> Representation {
        Representation::sum_of(alg, &vec![self.clone(); n])
    }

    pub fn dim_vector(&self) -> &[usize] {
        &self.dims
    }
}

/// Projections `⊕ parts → parts[i]`.
pub fn projections(parts: &[Representation]) -> Vec<ModMap> {
    let n = parts.first().map_or(0, |p| p.dims.len());
    let totals: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let mut off = vec![0; n];
    parts
        .iter()
        .map(|p| {
            let blocks = (0..n)
                .map(|v| {
                    let mut m = Matrix::zeros(p.field, p.dims[v], totals[v]);
                    m.set_block(0, off[v], &Matrix::identity(p.field, p.dims[v]));
                    off[v] += p.dims[v];
                    m
                })
                .collect();
            ModMap { blocks }
        })
        .collect()
}

/// Inclusions `parts[i] → ⊕ parts`.
pub fn inclusions(parts: &[Representation]) -> Vec<ModMap> {
    projections(parts)
        .into_iter()
        .map(|p| ModMap {
            blocks: p.blocks.iter().map(|b| b.transpose()).collect(),
        })
        .collect()
}

/// A homomorphism as per-vertex blocks `source_v → target_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMap {
    pub blocks: Vec<Matrix>,
}

impl ModMap {
    pub fn zero(src: &Representation, tgt: &Representation) -> Self {
        ModMap {
            blocks: src.dims.iter().zip(&tgt.dims).map(|(&s, &t)| Matrix::zeros(src.field, t, s)).collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        ModMap {
            blocks: m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect(),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModMap) -> ModMap {
        ModMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        ModMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> ModMap {
        ModMap {
            blocks: self.blocks.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows())
    }

    /// Checks that every arrow square commutes.
    pub fn is_hom(&self, alg: &AlgebraData, src: &Representation, tgt: &Representation) -> bool {
        alg.arrows.iter().enumerate().all(|(a, ar)| {
            tgt.maps[a].mul(&self.blocks[ar.target]) == self.blocks[ar.source].mul(&src.maps[a])
        })
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn from_flat(src: &Representation, tgt: &Representation, v: &[u32]) -> ModMap {
        let mut off = 0;
        let blocks = src
            .dims
            .iter()
            .zip(&tgt.dims)
            .map(|(&s, &t)| {
                let m = Matrix::from_vec(src.field, t, s, v[off..off + s * t].to_vec());
                off += s * t;
                m
            })
            .collect();
        ModMap { blocks }
    }

    /// Block-row map `⊕ X_i → Y` from components.
    pub fn hstack(parts: &[&ModMap]) -> ModMap {
        let n = parts[0].blocks.len();
        ModMap {
            blocks: (0..n)
                .map(|v| parts[1..].iter().fold(parts[0].blocks[v].clone(), |acc, p| acc.hstack(&p.blocks[v])))
                .collect(),
        }
    }

    /// Block-column map `X → ⊕ Y_i` from components.
    pub fn vstack(parts: &[&ModMap]) -> ModMap {
        let n = parts[0].blocks.len();
        ModMap {
            blocks: (0..n)
                .map(|v| parts[1..].iter().fold(parts[0].blocks[v].clone(), |acc, p| acc.vstack(&p.blocks[v])))
                .collect(),
        }
    }

    pub fn pow(&self, e: u64) -> ModMap {
        ModMap {
            blocks: self.blocks.iter().map(|b| b.pow(e)).collect(),
        }
    }
}

/// Submodule spanned by per-vertex column spaces (assumed closed), with its inclusion.
pub fn submodule(alg: &AlgebraData, m: &Representation, spaces: &[Matrix]) -> (Representation, ModMap) {
    let f = m.field;
    let spaces: Vec<Matrix> = spaces.iter().map(|s| if s.cols() == 0 { s.clone() } else { s.image() }).collect();
    let coords: Vec<Coordinates> = spaces.iter().map(|s| Coordinates::new(s.clone())).collect();
    let dims: Vec<usize> = spaces.iter().map(|s| s.cols()).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, ar)| {
            let img = m.maps[a].mul(&spaces[ar.target]);
            let cols: Vec<Vec<u32>> = img.columns().iter().map(|c| coords[ar.source].coords(c)).collect();
            Matrix::from_columns(f, dims[ar.source], &cols)
        })
        .collect();
    let sub = Representation::new_unchecked(f, dims, maps);
    (sub, ModMap { blocks: spaces })
}

/// Quotient by per-vertex subspaces (assumed closed), with the projection.
pub fn quotient(alg: &AlgebraData, m: &Representation, spaces: &[Matrix]) -> (Representation, ModMap) {
    let f = m.field;
    let mut projs = Vec::new();
    let mut sections = Vec::new();
    for (v, s) in spaces.iter().enumerate() {
        let s = if s.cols() == 0 { s.clone() } else { s.image() };
        let comp = complement_basis(&s, m.dims[v]);
        let inv = s.hstack(&comp).inverse().expect("complement completes a basis");
        projs.push(inv.submatrix(s.cols()..m.dims[v], 0..m.dims[v]));
        sections.push(comp);
    }
    let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, ar)| projs[ar.source].mul(&m.maps[a]).mul(&sections[ar.target]))
        .collect();
    (Representation::new_unchecked(f, dims, maps), ModMap { blocks: projs })
}

pub fn kernel(alg: &AlgebraData, f: &ModMap, src: &Representation) -> (Representation, ModMap) {
    let spaces: Vec<Matrix> = f.blocks.iter().map(|b| b.kernel()).collect();
    submodule(alg, src, &spaces)
}

pub fn image(alg: &AlgebraData, f: &ModMap, tgt: &Representation) -> (Representation, ModMap) {
    let spaces: Vec<Matrix> = f.blocks.iter().map(|b| b.image()).collect();
    submodule(alg, tgt, &spaces)
}

pub fn cokernel(alg: &AlgebraData, f: &ModMap, tgt: &Representation) -> (Representation, ModMap) {
    let spaces: Vec<Matrix> = f.blocks.iter().map(|b| b.image()).collect();
    quotient(alg, tgt, &spaces)
}

/// Linear system for intertwiners `M → N`; unknowns are the flattened blocks.
fn hom_system(alg: &AlgebraData, m: &Representation, n: &Representation) -> Matrix {
    let f = m.field;
    let mut off = vec![0usize; m.dims.len() + 1];
    for v in 0..m.dims.len() {
        off[v + 1] = off[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = off[m.dims.len()];
    let rows: usize = alg.arrows.iter().map(|ar| n.dims[ar.source] * m.dims[ar.target]).sum();
    let mut sys = Matrix::zeros(f, rows, unknowns);
    let mut r0 = 0;
    for (a, ar) in alg.arrows.iter().enumerate() {
        let (s, t) = (ar.source, ar.target);
        let (rn, rm) = (&n.maps[a], &m.maps[a]);
        // (ρ_N f_t − f_s ρ_M)[i, j] = 0 for i < N_s, j < M_t
        for i in 0..n.dims[s] {
            for j in 0..m.dims[t] {
                let row = r0 + i * m.dims[t] + j;
                for k in 0..n.dims[t] {
                    let c = rn.get(i, k);
                    if c != 0 {
                        let col = off[t] + k * m.dims[t] + j;
                        sys.set(row, col, f.add(sys.get(row, col), c));
                    }
                }
                for k in 0..m.dims[s] {
                    let c = rm.get(k, j);
                    if c != 0 {
                        let col = off[s] + i * m.dims[s] + k;
                        sys.set(row, col, f.sub(sys.get(row, col), c));
                    }
                }
            }
        }
        r0 += n.dims[s] * m.dims[t];
    }
    sys
}

pub fn hom_basis(alg: &AlgebraData, m: &Representation, n: &Representation) -> Vec<ModMap> {
    let k = hom_system(alg, m, n).kernel();
    k.columns().iter().map(|c| ModMap::from_flat(m, n, c)).collect()
}

pub fn hom_dim(alg: &AlgebraData, m: &Representation, n: &Representation) -> usize {
    let sys = hom_system(alg, m, n);
    sys.cols() - sys.rank()
}

/// `P_v = e_v A`; the vertex-`w` space has basis `e_v A e_w`.
pub fn projective(alg: &AlgebraData, v: usize) -> Representation {
    let f = alg.field();
    let n = alg.n_vertices();
    let dims: Vec<usize> = (0..n).map(|w| alg.corner(v, w).len()).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, ar)| {
            // y ↦ y * a from (P_v)_t to (P_v)_s
            let rows = alg.corner(v, ar.source);
            let cols = alg.corner(v, ar.target);
            let ab = alg.arrow_basis[a];
            Matrix::from_fn(f, rows.len(), cols.len(), |i, j| {
                alg.mult(cols[j], ab).iter().find(|(k, _)| *k == rows[i]).map_or(0, |x| x.1)
            })
        })
        .collect();
    Representation::new_unchecked(f, dims, maps)
}

/// `D(A e_v)`: the vertex-`w` space is dual to `e_w A e_v`.
pub fn injective(alg: &AlgebraData, v: usize) -> Representation {
    let f = alg.field();
    let n = alg.n_vertices();
    let dims: Vec<usize> = (0..n).map(|w| alg.corner(w, v).len()).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, ar)| {
            // transpose of y ↦ a * y : e_s A e_v → e_t A e_v
            let rows = alg.corner(ar.source, v);
            let cols = alg.corner(ar.target, v);
            let ab = alg.arrow_basis[a];
            Matrix::from_fn(f, rows.len(), cols.len(), |i, j| {
                alg.mult(ab, rows[i]).iter().find(|(k, _)| *k == cols[j]).map_or(0, |x| x.1)
            })
        })
        .collect();
    Representation::new_unchecked(f, dims, maps)
}

pub fn simple(alg: &AlgebraData, v: usize) -> Representation {
    let f = alg.field();
    let dims: Vec<usize> = (0..alg.n_vertices()).map(|w| (w == v) as usize).collect();
    let maps = alg
        .arrows
        .iter()
        .map(|ar| Matrix::zeros(f, dims[ar.source], dims[ar.target]))
        .collect();
    Representation::new_unchecked(f, dims, maps)
}

pub fn standard_module(alg: &AlgebraData, kind: StandardKind, v: usize) -> Representation {
    match kind {
        StandardKind::Projective => projective(alg, v),
        StandardKind::Injective => injective(alg, v),
        StandardKind::Simple => simple(alg, v),
    }
}

/// `A_A = ⊕_v P_v`, together with the algebra basis index of every
/// coordinate at every vertex.
pub fn regular_module(alg: &AlgebraData) -> (Representation, Vec<Vec<usize>>) {
    let n = alg.n_vertices();
    let parts: Vec<Representation> = (0..n).map(|v| projective(alg, v)).collect();
    let labels = (0..n)
        .map(|w| (0..n).flat_map(|v| alg.corner(v, w).iter().copied()).collect())
        .collect();
    (Representation::sum_of(alg, &parts), labels)
}

/// Left module `A e_v` seen as a right module over the opposite algebra.
pub fn left_projective(op: &AlgebraData, v: usize) -> Representation {
    projective(op, v)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{load_algebra, opposite_algebra};
    use proptest::prelude::*;

    pub const TWO_VERTEX: &str = "vertices 1 2\narrow α 1 2\narrow β 2 1\nrelation α*β*α\nrelation β*α*β\n";
    pub const FIVE_VERTEX: &str = "vertices 1 2 3 4 5\narrow α 2 1\narrow β 4 2\narrow γ 3 1\n\
        arrow δ 4 3\narrow ε 5 3\nrelation α*β - γ*δ\nrelation γ*ε\n";
    pub const A2: &str = "vertices 1 2\narrow a 2 1\n";
    pub const DUAL_NUMBERS: &str = "vertices v\narrow x v v\nrelation x*x\n";

    pub fn alg(t: &str) -> AlgebraData {
        load_algebra(t, None, 64).unwrap()
    }

    #[test]
    fn standard_dimension_vectors() {
        let a = alg(TWO_VERTEX);
        assert_eq!(projective(&a, 0).dims, vec![2, 1]);
        assert_eq!(simple(&a, 1).dims, vec![0, 1]);
        let b = alg(FIVE_VERTEX);
        assert_eq!(projective(&b, 0).dims, vec![1, 1, 1, 1, 0]);
        assert_eq!(injective(&b, 0).dims, vec![1, 0, 0, 0, 0]);
        assert_eq!(injective(&b, 3).dims, vec![1, 1, 1, 1, 0]);
        for t in [TWO_VERTEX, FIVE_VERTEX, A2, DUAL_NUMBERS] {
            let a = alg(t);
            for v in 0..a.n_vertices() {
                projective(&a, v).validate(&a).unwrap();
                injective(&a, v).validate(&a).unwrap();
            }
        }
    }

    #[test]
    fn hom_examples() {
        let a = alg(TWO_VERTEX);
        let s1 = simple(&a, 0);
        let s2 = simple(&a, 1);
        let p1 = projective(&a, 0);
        assert_eq!(hom_dim(&a, &s1, &p1), 1);
        assert_eq!(hom_dim(&a, &s1, &s2), 0);
        for m in hom_basis(&a, &p1, &p1) {
            assert!(m.is_hom(&a, &p1, &p1));
        }
    }

    #[test]
    fn relation_violation_rejected() {
        let a = alg(DUAL_NUMBERS);
        let f = a.field();
        let bad = Representation::new(&a, vec![2], vec![Matrix::from_rows(f, &[vec![0, 1], vec![1, 0]])]);
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
        let ok = Representation::new(&a, vec![2], vec![Matrix::from_rows(f, &[vec![0, 1], vec![0, 0]])]);
        assert!(ok.is_ok());
    }

    #[test]
    fn injective_is_dual_of_left_projective() {
        let a = alg(FIVE_VERTEX);
        let op = opposite_algebra(&a);
        for v in 0..a.n_vertices() {
            let i = injective(&a, v);
            let d = dual(&left_projective(&op, v));
            assert!(is_isomorphic(&a, &i, &d, &crate::Config::default(), None).unwrap());
        }
    }

    fn arb_module(a: AlgebraData) -> impl Strategy<Value = Representation> {
        // Random quotients of sums of projectives stay valid modules.
        let n = a.n_vertices();
        (proptest::collection::vec(0usize..2, n), any::<u64>()).prop_map(move |(mult, seed)| {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let parts: Vec<Representation> = mult
                .iter()
                .enumerate()
                .flat_map(|(v, &k)| std::iter::repeat_n(projective(&a, v), k))
                .collect();
            let m = Representation::sum_of(&a, &parts);
            if m.is_zero() {
                return m;
            }
            // quotient by the submodule generated by a random element at a random vertex
            let v = rng.gen_range(0..n);
            if m.dims[v] == 0 {
                return m;
            }
            let x: Vec<u32> = (0..m.dims[v]).map(|_| rng.gen_range(0..a.field().p())).collect();
            let spaces: Vec<Matrix> = (0..n)
                .map(|w| {
                    let cols: Vec<Vec<u32>> = a.corner(v, w).iter().map(|&b| m.basis_action(&a, b).mul_vec(&x)).collect();
                    Matrix::from_columns(a.field(), m.dims[w], &cols)
                })
                .collect();
            quotient(&a, &m, &spaces).0
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn yoneda(m in arb_module(alg(FIVE_VERTEX))) {
            let a = alg(FIVE_VERTEX);
            m.validate(&a).unwrap();
            for v in 0..a.n_vertices() {
                prop_assert_eq!(hom_dim(&a, &projective(&a, v), &m), m.dims[v]);
            }
        }

        #[test]
        fn composition_associative(m in arb_module(alg(TWO_VERTEX))) {
            let a = alg(TWO_VERTEX);
            let ends = hom_basis(&a, &m, &m);
            let id = ModMap::identity(&m);
            for x in ends.iter().take(3) {
                prop_assert_eq!(&x.compose(&id), x);
                prop_assert_eq!(&id.compose(x), x);
                for y in ends.iter().take(3) {
                    for z in ends.iter().take(3) {
                        prop_assert_eq!(x.compose(y).compose(z), x.compose(&y.compose(z)));
                    }
                }
            }
        }
    }
}
