//! Algebras given only by structure constants: endomorphism rings and the
//! targets of ring epimorphisms.

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{AlgebraData, Arrow, PathWord, Relation};
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, Field, Matrix};

/// `lmul[i]` is left multiplication by the `i`-th basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgTable {
    field: Field,
    lmul: Vec<Matrix>,
    unit: Vec<u32>,
}

impl AlgTable {
    pub fn new(field: Field, lmul: Vec<Matrix>, unit: Vec<u32>) -> Self {
        let d = unit.len();
        assert!(lmul.len() == d && lmul.iter().all(|m| m.shape() == (d, d)));
        AlgTable { field, lmul, unit }
    }

    /// From a product function on basis indices returning coordinates.
    pub fn from_products(field: Field, dim: usize, unit: Vec<u32>, prod: impl Fn(usize, usize) -> Vec<u32>) -> Self {
        let lmul = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<u32>> = (0..dim).map(|j| prod(i, j)).collect();
                Matrix::from_columns(field, dim, &cols)
            })
            .collect();
        AlgTable::new(field, lmul, unit)
    }

    pub fn zero(field: Field) -> Self {
        AlgTable::new(field, vec![], vec![])
    }

    pub fn from_algebra(a: &AlgebraData) -> Self {
        let d = a.dim();
        AlgTable::from_products(a.field(), d, a.unit(), |i, j| {
            let mut v = vec![0; d];
            for &(k, c) in a.mult(i, j) {
                v[k] = c;
            }
            v
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn left_matrix(&self, x: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.dim());
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m.axpy(c, &self.lmul[i]);
            }
        }
        m
    }

    pub fn right_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.left_matrix(x).mul_vec(y)
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.lmul[i].get(k, j)
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.left_matrix(&self.mul(&self.basis_vector(i), &self.basis_vector(j))) == self.lmul[i].mul(&self.lmul[j])))
    }

    pub fn is_unit(&self) -> bool {
        self.left_matrix(&self.unit) == Matrix::identity(self.field, self.dim()) && self.right_matrix(&self.unit) == Matrix::identity(self.field, self.dim())
    }

    /// Kernel of the trace form `(x, y) ↦ Tr(L_{xy})`. Equals the Jacobson
    /// radical when the characteristic exceeds the dimension.
    pub fn radical(&self) -> Result<Matrix> {
        let d = self.dim();
        if d >= self.field.p() as usize {
            return Err(Error::DimensionBound {
                got: d,
                bound: self.field.p() as usize - 1,
            });
        }
        let g = Matrix::from_fn(self.field, d, d, |i, j| self.lmul[i].mul(&self.lmul[j]).trace());
        Ok(g.kernel())
    }

    pub fn center(&self) -> Matrix {
        let d = self.dim();
        // x ↦ (x b_j − b_j x)_j stacked
        let f = self.field;
        let mut rows = Matrix::zeros(f, d * d, d);
        for j in 0..d {
            let bj = self.basis_vector(j);
            let diff = self.right_matrix(&bj).sub(&self.left_matrix(&bj));
            rows.set_block(j * d, 0, &diff);
        }
        rows.kernel()
    }

    /// Basis of the subspace `x B y` for elements `x`, `y`.
    pub fn corner(&self, x: &[u32], y: &[u32]) -> Matrix {
        self.left_matrix(x).mul(&self.right_matrix(y)).image()
    }

    /// Subalgebra `e B e` in coordinates of its own basis, with the basis
    /// columns used.
    pub fn corner_algebra(&self, e: &[u32]) -> (AlgTable, Matrix) {
        let basis = self.corner(e, e);
        let coords = Coordinates::new(basis.clone());
        let k = basis.cols();
        let cols = basis.columns();
        let t = AlgTable::from_products(self.field, k, coords.coords(e), |i, j| coords.coords(&self.mul(&cols[i], &cols[j])));
        (t, basis)
    }

    fn is_nilpotent(&self, x: &[u32]) -> bool {
        self.left_matrix(x).is_nilpotent()
    }

    /// Complete set of orthogonal idempotents summing to 1, each either
    /// local (`e B e / rad` one-dimensional) or not split after `trials`
    /// attempts. Returns `(idempotent, local)` pairs.
    pub fn primitive_idempotents(&self, rng: &mut ChaCha8Rng, trials: usize) -> Result<Vec<(Vec<u32>, bool)>> {
        let mut out = Vec::new();
        let mut stack = vec![self.unit.clone()];
        if self.dim() == 0 {
            return Ok(out);
        }
        while let Some(e) = stack.pop() {
            let (corner, _) = self.corner_algebra(&e);
            let top = corner.dim() - corner.radical()?.cols();
            if top == 1 {
                out.push((e, true));
                continue;
            }
            match self.split_idempotent(&e, rng, trials) {
                Some((a, b)) => {
                    stack.push(b);
                    stack.push(a);
                }
                None => out.push((e, false)),
            }
        }
        Ok(out)
    }

    /// Tries to write `e = a + b` with `a`, `b` nonzero orthogonal idempotents.
    fn split_idempotent(&self, e: &[u32], rng: &mut ChaCha8Rng, trials: usize) -> Option<(Vec<u32>, Vec<u32>)> {
        let f = self.field;
        let d = self.dim();
        let ebe = self.corner(e, e);
        let eb = self.left_matrix(e).image();
        if ebe.cols() == 0 {
            return None;
        }
        let half = ((f.p() - 1) / 2) as u64;
        for t in 0..trials.max(1) * 4 {
            let coeffs: Vec<u32> = (0..ebe.cols()).map(|_| rng.gen_range(0..f.p())).collect();
            let x = ebe.mul_vec(&coeffs);
            let delta = if t % 4 == 0 { 0 } else { rng.gen_range(0..f.p()) };
            let shifted = add_scaled(f, &x, e, f.neg(delta));
            // Alternate between the raw shift and the quadratic-character map.
            let y = if t % 2 == 0 {
                shifted
            } else {
                let mut pw = self.power(&shifted, e, half);
                for (p, &ee) in pw.iter_mut().zip(e) {
                    *p = f.sub(*p, ee);
                }
                pw
            };
            let u = self.left_matrix(&y).pow(d as u64);
            let img = u.mul(&eb).image();
            let ker_in_eb = {
                let k = u.mul(&eb).kernel();
                eb.mul(&k)
            };
            if img.cols() == 0 || ker_in_eb.cols() == 0 {
                continue;
            }
            let split = ker_in_eb.hstack(&img);
            let sol = split.solve(e).ok().flatten()?;
            let kc = ker_in_eb.cols();
            let a = img.mul_vec(&sol[kc..]);
            let b = add_scaled(f, e, &a, f.neg(1));
            if a.iter().all(|&v| v == 0) || b.iter().all(|&v| v == 0) {
                continue;
            }
            return Some((a, b));
        }
        None
    }

    /// `x^n` inside the corner with unit `e`.
    fn power(&self, x: &[u32], e: &[u32], mut n: u64) -> Vec<u32> {
        let mut base = x.to_vec();
        let mut r = e.to_vec();
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        r
    }

    /// `e B ≅ e' B` for local idempotents: some `x ∈ eBe'`, `y ∈ e'Be` has
    /// `xy` invertible in `eBe`, i.e. not nilpotent.
    pub fn idempotents_equivalent(&self, e: &[u32], e2: &[u32]) -> bool {
        let xs = self.corner(e, e2).columns();
        let ys = self.corner(e2, e).columns();
        xs.iter().any(|x| ys.iter().any(|y| !self.is_nilpotent(&self.mul(x, y))))
    }

    pub fn to_text(&self) -> String {
        let f = self.field;
        let mut s = String::new();
        let _ = writeln!(s, "field {}", f.p());
        let _ = writeln!(s, "table {}", self.dim());
        let _ = writeln!(s, "unit = {}", format_combination(&self.unit));
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let v = self.lmul[i].column(j);
                if v.iter().any(|&c| c != 0) {
                    let _ = writeln!(s, "mult {} {} = {}", i, j, format_combination(&v));
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut field = None;
        let mut dim = None;
        let mut unit = None;
        let mut prods: Vec<(usize, usize, Vec<(u32, usize)>)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::parse(ln + 1, 1, m.to_string());
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("field") => {
                    let p = toks.next().and_then(|t| t.parse().ok()).ok_or_else(|| err("bad field"))?;
                    field = Some(Field::new(p)?);
                }
                Some("table") => dim = Some(toks.next().and_then(|t| t.parse::<usize>().ok()).ok_or_else(|| err("bad dimension"))?),
                Some("unit") => {
                    let rhs = line.split_once('=').ok_or_else(|| err("expected `unit = ...`"))?.1;
                    unit = Some(parse_combination(rhs).ok_or_else(|| err("bad combination"))?);
                }
                Some("mult") => {
                    let (lhs, rhs) = line.split_once('=').ok_or_else(|| err("expected `mult i j = ...`"))?;
                    let ij: Vec<usize> = lhs.split_whitespace().skip(1).filter_map(|t| t.parse().ok()).collect();
                    let [i, j] = ij[..] else { return Err(err("expected two indices")) };
                    prods.push((i, j, parse_combination(rhs).ok_or_else(|| err("bad combination"))?));
                }
                _ => return Err(err("unknown keyword")),
            }
        }
        let field = field.ok_or_else(|| Error::parse(1, 1, "missing field"))?;
        let d = dim.ok_or_else(|| Error::parse(1, 1, "missing table"))?;
        let mut lmul = vec![Matrix::zeros(field, d, d); d];
        for (i, j, comb) in prods {
            for (c, k) in comb {
                if i >= d || j >= d || k >= d {
                    return Err(Error::Dimension(format!("index out of range in mult {i} {j}")));
                }
                lmul[i].set(k, j, c);
            }
        }
        let mut u = vec![0; d];
        for (c, k) in unit.unwrap_or_default() {
            if k >= d {
                return Err(Error::Dimension("unit index out of range".into()));
            }
            u[k] = c % field.p();
        }
        Ok(AlgTable::new(field, lmul, u))
    }
}

fn add_scaled(f: Field, x: &[u32], y: &[u32], c: u32) -> Vec<u32> {
    x.iter().zip(y).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect()
}

fn format_combination(v: &[u32]) -> String {
    let terms: Vec<String> = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| format!("{c}*{k}")).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn parse_combination(s: &str) -> Option<Vec<(u32, usize)>> {
    let s = s.trim();
    if s == "0" {
        return Some(vec![]);
    }
    s.split('+')
        .map(|t| {
            let (c, k) = t.trim().split_once('*')?;
            Some((c.trim().parse().ok()?, k.trim().parse().ok()?))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct BasicAlgebra {
    pub table: AlgTable,
    pub simples: usize,
    /// One local idempotent per isoclass of indecomposable projective, in
    /// coordinates of the basic table.
    pub idempotents: Vec<Vec<u32>>,
    /// Whether every primitive idempotent found had a one-dimensional top.
    pub split: bool,
}

/// Keeps one indecomposable projective per isomorphism class and returns
/// the endomorphism ring of their sum.
pub fn basic_algebra(b: &AlgTable, rng: &mut ChaCha8Rng, trials: usize) -> Result<BasicAlgebra> {
    let f = b.field();
    if b.dim() == 0 {
        return Ok(BasicAlgebra {
            table: b.clone(),
            simples: 0,
            idempotents: vec![],
            split: true,
        });
    }
    let prim = b.primitive_idempotents(rng, trials)?;
    let split = prim.iter().all(|(_, l)| *l);
    let mut reps: Vec<Vec<u32>> = Vec::new();
    for (e, _) in prim {
        if !reps.iter().any(|r| b.idempotents_equivalent(r, &e)) {
            reps.push(e);
        }
    }
    let mut e = vec![0; b.dim()];
    for r in &reps {
        e = add_scaled(f, &e, r, 1);
    }
    let (table, basis) = b.corner_algebra(&e);
    let coords = Coordinates::new(basis);
    let idempotents = reps.iter().map(|r| coords.coords(r)).collect();
    Ok(BasicAlgebra {
        table,
        simples: reps.len(),
        idempotents,
        split,
    })
}

impl BasicAlgebra {
    /// A quiver presentation: arrows `s → t` lift a basis of
    /// `e_t (J/J²) e_s`, and the path basis is chosen greedily by length.
    /// Requires split local idempotents.
    pub fn presentation(&self) -> Result<AlgebraData> {
        if !self.split {
            return Err(Error::Hypothesis("basic algebra has a non-split simple".into()));
        }
        let t = &self.table;
        let f = t.field();
        let n = self.simples;
        let d = t.dim();
        let rad = t.radical()?;
        let rad2 = {
            let cols = rad.columns();
            let mut prods = Vec::new();
            for x in &cols {
                for y in &cols {
                    prods.push(t.mul(x, y));
                }
            }
            if prods.is_empty() {
                Matrix::zeros(f, d, 0)
            } else {
                Matrix::from_columns(f, d, &prods).image()
            }
        };
        let es = &self.idempotents;
        let mut arrows = Vec::new();
        let mut arrow_elems: Vec<Vec<u32>> = Vec::new();
        for s in 0..n {
            for tv in 0..n {
                // e_t J e_s and e_t J² e_s
                let proj = t.left_matrix(&es[tv]).mul(&t.right_matrix(&es[s]));
                let j_st = proj.mul(&rad).image();
                let j2_st = if rad2.cols() == 0 { rad2.clone() } else { proj.mul(&rad2).image() };
                let comp = crate::linalg::relative_complement(&j2_st, &j_st);
                for (k, c) in comp.columns().into_iter().enumerate() {
                    arrows.push(Arrow {
                        name: format!("a{}_{}_{}", s + 1, tv + 1, k + 1),
                        source: s,
                        target: tv,
                    });
                    arrow_elems.push(c);
                }
            }
        }
        // Greedy path basis.
        let mut words: Vec<PathWord> = (0..n).map(|v| PathWord { source: v, target: v, arrows: vec![] }).collect();
        let mut elems: Vec<Vec<u32>> = es.clone();
        let mut span = Matrix::from_columns(f, d, &elems);
        let mut frontier: Vec<usize> = (0..n).collect();
        while span.cols() < d {
            let mut next = Vec::new();
            for &bi in &frontier {
                for (a, ar) in arrows.iter().enumerate() {
                    if ar.source != words[bi].target {
                        continue;
                    }
                    let el = t.mul(&arrow_elems[a], &elems[bi]);
                    let cand = span.hstack(&Matrix::column_vector(f, &el));
                    if cand.rank() > span.cols() {
                        span = cand;
                        let mut w = vec![a];
                        w.extend_from_slice(&words[bi].arrows);
                        words.push(PathWord {
                            source: words[bi].source,
                            target: ar.target,
                            arrows: w,
                        });
                        elems.push(el);
                        next.push(words.len() - 1);
                    }
                }
            }
            if next.is_empty() {
                return Err(Error::Invariant("arrows do not generate the radical".into()));
            }
            frontier = next;
        }
        let coords = Coordinates::new(span);
        let sparse = |v: Vec<u32>| -> Vec<(usize, u32)> { v.into_iter().enumerate().filter(|(_, c)| *c != 0).collect() };
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                mult[i * d + j] = sparse(coords.coords(&t.mul(&elems[i], &elems[j])));
            }
        }
        // Structure relations: a * b equals its expansion whenever a * b is not itself a basis word.
        let mut relations = Vec::new();
        for (a, ar) in arrows.iter().enumerate() {
            for (bi, w) in words.iter().enumerate() {
                if ar.source != w.target || w.arrows.is_empty() {
                    continue;
                }
                let mut word = vec![a];
                word.extend_from_slice(&w.arrows);
                if words.iter().any(|x| x.arrows == word) {
                    continue;
                }
                let mut terms = vec![(1u32, word)];
                for (k, c) in sparse(coords.coords(&t.mul(&arrow_elems[a], &elems[bi]))) {
                    terms.push((f.neg(c), words[k].arrows.clone()));
                }
                relations.push(Relation { terms });
            }
        }
        let vertices = (1..=n).map(|v| v.to_string()).collect();
        Ok(AlgebraData::from_parts(f, vertices, arrows, relations, words, mult))
    }
}
