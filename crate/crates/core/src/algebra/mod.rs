//! Finite-dimensional quotients of path algebras with an explicit path basis.

mod parse;
pub mod table;

use std::collections::{HashMap, HashSet};

use serde::Serialize;

pub use parse::{parse_spec, Arrow, QuiverSpec, Relation};
pub use table::{basic_algebra, AlgTable, BasicAlgebra};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use parse::word_ends;

/// A basis path. `arrows` is in written order (function order), empty for
/// the idempotent at `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PathWord {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl PathWord {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

type Sparse = Vec<(usize, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Relations every module must satisfy.
    pub relations: Vec<Relation>,
    pub basis: Vec<PathWord>,
    mult: Vec<Sparse>,
    pub idempotents: Vec<usize>,
    pub arrow_basis: Vec<usize>,
    /// Smallest `L` with all paths of length `L` zero.
    pub loewy_bound: usize,
    /// `corner[t][s]` lists basis indices of `e_t A e_s`.
    corner: Vec<Vec<Vec<usize>>>,
}

impl AlgebraData {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Structure constants of `b_i * b_j`.
    pub fn mult(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.mult[i * self.dim() + j]
    }

    /// Basis indices of paths from `source` to `target`.
    pub fn corner(&self, target: usize, source: usize) -> &[usize] {
        &self.corner[target][source]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in self.mult(i, j) {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<u32> {
        let mut u = vec![0; self.dim()];
        for &e in &self.idempotents {
            u[e] = 1;
        }
        u
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// The element given by a written word (product of arrows).
    pub fn word_element(&self, word: &[usize]) -> Vec<u32> {
        let Some((&last, rest)) = word.split_last() else {
            return self.unit();
        };
        let mut acc = self.basis_vector(self.arrow_basis[last]);
        for &a in rest.iter().rev() {
            acc = self.mul(&self.basis_vector(self.arrow_basis[a]), &acc);
        }
        acc
    }

    pub fn relation_element(&self, r: &Relation) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (c, w) in &r.terms {
            for (o, x) in out.iter_mut().zip(self.word_element(w)) {
                *o = f.add(*o, f.mul(*c, x));
            }
        }
        out
    }

    /// Left multiplication by `x` as a `dim × dim` matrix.
    pub fn left_mult_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn right_mult_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn basis_label(&self, i: usize) -> String {
        let b = &self.basis[i];
        if b.arrows.is_empty() {
            format!("e{}", self.vertices[b.source])
        } else {
            b.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// Assembles an algebra from a path basis and structure constants.
    pub(crate) fn from_parts(
        field: Field,
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
        basis: Vec<PathWord>,
        mult: Vec<Sparse>,
    ) -> Self {
        let n = vertices.len();
        let idempotents = (0..n)
            .map(|v| basis.iter().position(|b| b.arrows.is_empty() && b.source == v).expect("idempotent"))
            .collect();
        let arrow_basis = (0..arrows.len())
            .map(|a| basis.iter().position(|b| b.arrows == [a]).expect("arrow in basis"))
            .collect();
        let loewy_bound = basis.iter().map(|b| b.len()).max().unwrap_or(0) + 1;
        let mut corner = vec![vec![Vec::new(); n]; n];
        for (i, b) in basis.iter().enumerate() {
            corner[b.target][b.source].push(i);
        }
        AlgebraData {
            field,
            vertices,
            arrows,
            relations,
            basis,
            mult,
            idempotents,
            arrow_basis,
            loewy_bound,
            corner,
        }
    }
}

/// Computes a path basis of `KQ/I` by reducing each length-graded piece.
///
/// Relations are homogeneous, so the ideal is graded and `A_L` is the span
/// of length-`L` paths modulo `span{u r v}`. Paths containing a monomial
/// already known to vanish are dropped before reduction.
pub fn build_algebra(spec: &QuiverSpec, length_bound: usize) -> Result<AlgebraData> {
    let f = spec.field;
    let n = spec.vertices.len();
    let arrows = &spec.arrows;

    let mut basis: Vec<PathWord> = (0..n)
        .map(|v| PathWord {
            source: v,
            target: v,
            arrows: vec![],
        })
        .collect();
    // Normal forms of every tracked nonzero-candidate path, in basis indices.
    let mut nf: HashMap<Vec<usize>, Sparse> = HashMap::new();
    // alive[L]: paths of length L not known to vanish as monomials.
    let mut alive: Vec<Vec<Vec<usize>>> = vec![vec![]];

    let mut length = 1;
    loop {
        let candidates: Vec<Vec<usize>> = if length == 1 {
            (0..arrows.len()).map(|a| vec![a]).collect()
        } else {
            let prev: HashSet<&[usize]> = alive[length - 1].iter().map(|w| &w[..]).collect();
            let mut c = Vec::new();
            for w in &alive[length - 1] {
                let t = arrows[w[0]].target;
                for (a, ar) in arrows.iter().enumerate() {
                    if ar.source != t {
                        continue;
                    }
                    let mut nw = Vec::with_capacity(length);
                    nw.push(a);
                    nw.extend_from_slice(w);
                    if prev.contains(&nw[..length - 1]) {
                        c.push(nw);
                    }
                }
            }
            c
        };
        if candidates.is_empty() {
            break;
        }
        if length > length_bound {
            return Err(Error::InfiniteDimensional(length_bound));
        }
        // Larger words first, so the pivots land on them and smaller words survive.
        let mut order = candidates.clone();
        order.sort_by(|a, b| b.cmp(a));
        let col: HashMap<&Vec<usize>, usize> = order.iter().enumerate().map(|(i, w)| (w, i)).collect();

        let mut gens: Vec<Vec<u32>> = Vec::new();
        for r in &spec.relations {
            let rl = r.terms[0].1.len();
            if rl > length {
                continue;
            }
            let (rs, rt) = word_ends(arrows, &r.terms[0].1).expect("validated relation");
            for ul in 0..=(length - rl) {
                let vl = length - rl - ul;
                let us = paths_with_ends(&alive, arrows, ul, Some(rt), None);
                let vs = paths_with_ends(&alive, arrows, vl, None, Some(rs));
                for u in &us {
                    for v in &vs {
                        let mut row = vec![0u32; order.len()];
                        let mut any = false;
                        for (c, w) in &r.terms {
                            let mut word = u.clone();
                            word.extend_from_slice(w);
                            word.extend_from_slice(v);
                            if let Some(&j) = col.get(&word) {
                                row[j] = f.add(row[j], *c);
                                any = true;
                            }
                        }
                        if any {
                            gens.push(row);
                        }
                    }
                }
            }
        }
        let m = Matrix::from_vec(f, gens.len(), order.len(), gens.concat());
        let rr = m.rref();
        let pivot_set: HashSet<usize> = rr.pivots.iter().copied().collect();
        let free: Vec<usize> = (0..order.len()).filter(|c| !pivot_set.contains(c)).collect();

        // Basis in increasing word order within the length.
        let mut free_sorted = free.clone();
        free_sorted.sort_by(|&a, &b| order[a].cmp(&order[b]));
        let mut basis_of_col = HashMap::new();
        for &c in &free_sorted {
            let (s, t) = word_ends(arrows, &order[c]).expect("composable");
            basis_of_col.insert(c, basis.len());
            basis.push(PathWord {
                source: s,
                target: t,
                arrows: order[c].clone(),
            });
        }
        let mut next_alive = Vec::new();
        for (c, w) in order.iter().enumerate() {
            let form: Sparse = if let Some(&b) = basis_of_col.get(&c) {
                vec![(b, 1)]
            } else {
                let r = rr.pivots.iter().position(|&p| p == c).expect("pivot");
                free_sorted
                    .iter()
                    .filter_map(|&fc| {
                        let v = rr.reduced.get(r, fc);
                        (v != 0).then(|| (basis_of_col[&fc], f.neg(v)))
                    })
                    .collect()
            };
            if !form.is_empty() {
                next_alive.push(w.clone());
                nf.insert(w.clone(), form);
            }
        }
        next_alive.sort();
        alive.push(next_alive);
        if free.is_empty() {
            break;
        }
        length += 1;
    }

    let dim = basis.len();
    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let (bi, bj) = (&basis[i], &basis[j]);
            if bi.source != bj.target {
                continue;
            }
            mult[i * dim + j] = if bi.arrows.is_empty() {
                vec![(j, 1)]
            } else if bj.arrows.is_empty() {
                vec![(i, 1)]
            } else {
                let mut w = bi.arrows.clone();
                w.extend_from_slice(&bj.arrows);
                nf.get(&w).cloned().unwrap_or_default()
            };
        }
    }
    Ok(AlgebraData::from_parts(
        f,
        spec.vertices.clone(),
        spec.arrows.clone(),
        spec.relations.clone(),
        basis,
        mult,
    ))
}

fn paths_with_ends(
    alive: &[Vec<Vec<usize>>],
    arrows: &[Arrow],
    len: usize,
    source: Option<usize>,
    target: Option<usize>,
) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    alive[len]
        .iter()
        .filter(|w| {
            let (s, t) = word_ends(arrows, w).expect("composable");
            target.is_none_or(|x| x == t) && source.is_none_or(|x| x == s)
        })
        .cloned()
        .collect()
}

/// Parses and builds in one step.
pub fn load_algebra(text: &str, field: Option<Field>, length_bound: usize) -> Result<AlgebraData> {
    build_algebra(&parse_spec(text, field)?, length_bound)
}

/// Same vertices and arrow names, arrows reversed, words reversed and
/// multiplication transposed. Applying it twice returns the input.
pub fn opposite_algebra(a: &AlgebraData) -> AlgebraData {
    let dim = a.dim();
    let arrows = a
        .arrows
        .iter()
        .map(|ar| Arrow {
            name: ar.name.clone(),
            source: ar.target,
            target: ar.source,
        })
        .collect();
    let rev = |w: &Vec<usize>| w.iter().rev().copied().collect::<Vec<_>>();
    let relations = a
        .relations
        .iter()
        .map(|r| Relation {
            terms: r.terms.iter().map(|(c, w)| (*c, rev(w))).collect(),
        })
        .collect();
    let basis = a
        .basis
        .iter()
        .map(|b| PathWord {
            source: b.target,
            target: b.source,
            arrows: rev(&b.arrows),
        })
        .collect();
    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            mult[i * dim + j] = a.mult(j, i).to_vec();
        }
    }
    AlgebraData::from_parts(a.field, a.vertices.clone(), arrows, relations, basis, mult)
}

/// True iff the quiver is acyclic and no path is killed by the relations.
pub fn check_hereditary(a: &AlgebraData) -> bool {
    let n = a.n_vertices();
    // Kahn's algorithm for acyclicity, then count paths along a topological order.
    let mut indeg = vec![0usize; n];
    for ar in &a.arrows {
        indeg[ar.target] += 1;
    }
    let mut order = Vec::new();
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = stack.pop() {
        order.push(v);
        for ar in a.arrows.iter().filter(|ar| ar.source == v) {
            indeg[ar.target] -= 1;
            if indeg[ar.target] == 0 {
                stack.push(ar.target);
            }
        }
    }
    if order.len() < n {
        return false;
    }
    // paths[v] = number of paths starting at v
    let mut paths = vec![1usize; n];
    for &v in order.iter().rev() {
        for ar in a.arrows.iter().filter(|ar| ar.source == v) {
            paths[v] += paths[ar.target];
        }
    }
    paths.iter().sum::<usize>() == a.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TWO_VERTEX: &str = "vertices 1 2\narrow α 1 2\narrow β 2 1\nrelation α*β*α\nrelation β*α*β\n";
    pub(crate) const FIVE_VERTEX: &str = "vertices 1 2 3 4 5\narrow α 2 1\narrow β 4 2\narrow γ 3 1\n\
        arrow δ 4 3\narrow ε 5 3\nrelation α*β - γ*δ\nrelation γ*ε\n";

    fn alg(t: &str) -> AlgebraData {
        load_algebra(t, None, 64).unwrap()
    }

    fn labels(a: &AlgebraData) -> Vec<String> {
        (0..a.dim()).map(|i| a.basis_label(i)).collect()
    }

    #[test]
    fn two_vertex_basis() {
        let a = alg(TWO_VERTEX);
        assert_eq!(labels(&a), vec!["e1", "e2", "α", "β", "α*β", "β*α"]);
        assert!(!check_hereditary(&a));
    }

    #[test]
    fn five_vertex_dimension() {
        let a = alg(FIVE_VERTEX);
        assert_eq!(a.dim(), 11);
        assert_eq!(a.basis.iter().filter(|b| b.len() == 2).count(), 1);
    }

    #[test]
    fn dual_numbers() {
        let a = alg("vertices v\narrow x v v\nrelation x*x\n");
        assert_eq!(a.dim(), 2);
        assert_eq!(opposite_algebra(&a), a);
    }

    #[test]
    fn free_loop_is_infinite() {
        let r = load_algebra("vertices v\narrow x v v\n", None, 10);
        assert!(matches!(r, Err(Error::InfiniteDimensional(10))));
    }

    #[test]
    fn opposite_is_involution() {
        for t in [TWO_VERTEX, FIVE_VERTEX] {
            let a = alg(t);
            let op = opposite_algebra(&a);
            assert_eq!(op.dim(), a.dim());
            assert_eq!(opposite_algebra(&op), a);
        }
        let a = alg(TWO_VERTEX);
        let op = opposite_algebra(&a);
        assert_eq!((op.arrows[0].source, op.arrows[0].target), (1, 0));
    }

    #[test]
    fn hereditary_examples() {
        assert!(check_hereditary(&alg("vertices 1 2\narrow a 2 1\n")));
        assert!(check_hereditary(&alg("vertices 1 2\narrow a 1 2\narrow b 1 2\n")));
        assert!(check_hereditary(&alg("vertices 1\n")));
    }

    fn check_axioms(a: &AlgebraData) {
        let d = a.dim();
        let e: Vec<Vec<u32>> = (0..d).map(|i| a.basis_vector(i)).collect();
        for i in 0..d {
            for j in 0..d {
                let ij = a.mul(&e[i], &e[j]);
                for k in 0..d {
                    assert_eq!(a.mul(&ij, &e[k]), a.mul(&e[i], &a.mul(&e[j], &e[k])));
                }
            }
            assert_eq!(a.mul(&a.unit(), &e[i]), e[i]);
            assert_eq!(a.mul(&e[i], &a.unit()), e[i]);
        }
        for r in &a.relations {
            assert!(a.relation_element(r).iter().all(|&x| x == 0));
        }
        let total: usize = (0..a.n_vertices()).map(|v| (0..a.n_vertices()).map(|w| a.corner(v, w).len()).sum::<usize>()).sum();
        assert_eq!(total, d);
    }

    #[test]
    fn associativity_unit_relations() {
        for t in [TWO_VERTEX, FIVE_VERTEX, "vertices v\narrow x v v\nrelation x*x\n"] {
            let a = alg(t);
            check_axioms(&a);
            check_axioms(&opposite_algebra(&a));
        }
    }
}
