//! Catalogs of indecomposable modules over representation-finite algebras.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{opposite_algebra, AlgebraData};
use crate::error::{Error, Result};
use crate::par;
use crate::rep::{
    cosyzygy, decompose_by_splitting, ext_dim, hom_dim, injective, is_isomorphic, projective, quotient, radical,
    radical_power, simple, socle, submodule, syzygy, tau, tau_inv, Indecomposability, Representation,
};
use crate::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Nakayama,
    Knitting,
    Closure,
    Explicit,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nakayama" => Ok(Strategy::Nakayama),
            "knitting" => Ok(Strategy::Knitting),
            "closure" => Ok(Strategy::Closure),
            "explicit" => Ok(Strategy::Explicit),
            _ => Err(Error::Config(format!("unknown catalog strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Closed under τ, τ⁻, Ω, Ω⁻ and containing simples, projectives, injectives.
    VerifiedClosure,
    /// Listed by hand; the closure check failed or was cut short.
    Declared,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub module: Representation,
    pub end_dim: usize,
}

#[derive(Debug)]
pub struct Catalog {
    pub entries: Vec<Entry>,
    pub strategy: Strategy,
    pub certificate: Certificate,
    /// False when saturation hit the bound.
    pub complete: bool,
    hom: Vec<Vec<usize>>,
    ext: OnceLock<Vec<Vec<usize>>>,
}

fn indecomposable_parts(alg: &AlgebraData, m: &Representation, cfg: &Config) -> Result<Vec<Representation>> {
    let parts = decompose_by_splitting(alg, m, cfg)?;
    parts
        .into_iter()
        .map(|(x, v)| match v {
            Indecomposability::Yes => Ok(x),
            _ => Err(Error::Inconclusive(format!("summand with dimension vector {:?} not split", x.dims))),
        })
        .collect()
}

/// Both sides must be indecomposable with split local endomorphism rings.
fn same_indecomposable(alg: &AlgebraData, x: &Representation, y: &Representation) -> bool {
    x.dims == y.dims && crate::rep::iso::summand_pair(alg, x, y)
}

fn find_in(alg: &AlgebraData, list: &[Representation], x: &Representation) -> Option<usize> {
    list.iter().position(|y| same_indecomposable(alg, x, y))
}

type Op = fn(&AlgebraData, &AlgebraData, &Representation) -> Representation;

fn op_tau(a: &AlgebraData, _: &AlgebraData, m: &Representation) -> Representation {
    tau(a, m)
}
fn op_tau_inv(_: &AlgebraData, op: &AlgebraData, m: &Representation) -> Representation {
    tau_inv(op, m)
}
fn op_syzygy(a: &AlgebraData, _: &AlgebraData, m: &Representation) -> Representation {
    syzygy(a, m).0
}
fn op_cosyzygy(_: &AlgebraData, op: &AlgebraData, m: &Representation) -> Representation {
    cosyzygy(op, m)
}
fn op_radical(a: &AlgebraData, _: &AlgebraData, m: &Representation) -> Representation {
    submodule(a, m, &radical(a, m)).0
}
fn op_mod_socle(a: &AlgebraData, _: &AlgebraData, m: &Representation) -> Representation {
    quotient(a, m, &socle(a, m)).0
}

const TRANSLATES: [Op; 4] = [op_tau, op_tau_inv, op_syzygy, op_cosyzygy];
const ALL_OPS: [Op; 6] = [op_tau, op_tau_inv, op_syzygy, op_cosyzygy, op_radical, op_mod_socle];

fn standard_seeds(alg: &AlgebraData) -> Vec<Representation> {
    let n = alg.n_vertices();
    let mut out: Vec<Representation> = (0..n).map(|v| projective(alg, v)).collect();
    out.extend((0..n).map(|v| injective(alg, v)));
    out.extend((0..n).map(|v| simple(alg, v)));
    out
}

struct Saturation<'a> {
    alg: &'a AlgebraData,
    op: &'a AlgebraData,
    cfg: &'a Config,
    found: Vec<Representation>,
}

impl Saturation<'_> {
    fn add(&mut self, m: &Representation) -> Result<()> {
        if m.is_zero() {
            return Ok(());
        }
        for x in indecomposable_parts(self.alg, m, self.cfg)? {
            if find_in(self.alg, &self.found, &x).is_none() {
                self.found.push(x);
            }
        }
        Ok(())
    }

    /// Applies `ops` to every entry from `start` on until nothing new appears.
    /// Returns false if the bound was hit first.
    fn run(&mut self, ops: &[Op], start: usize) -> Result<bool> {
        let mut i = start;
        while i < self.found.len() {
            if self.found.len() > self.cfg.catalog_bound {
                return Ok(false);
            }
            let x = self.found[i].clone();
            for f in ops {
                let y = f(self.alg, self.op, &x);
                self.add(&y)?;
            }
            i += 1;
        }
        Ok(true)
    }
}

fn is_nakayama(alg: &AlgebraData) -> bool {
    (0..alg.n_vertices()).all(|v| {
        alg.arrows.iter().filter(|a| a.source == v).count() <= 1 && alg.arrows.iter().filter(|a| a.target == v).count() <= 1
    })
}

pub fn build_catalog(alg: &AlgebraData, strategy: Strategy, cfg: &Config) -> Result<Catalog> {
    let op = opposite_algebra(alg);
    let mut sat = Saturation {
        alg,
        op: &op,
        cfg,
        found: Vec::new(),
    };
    let complete = match strategy {
        Strategy::Nakayama => {
            if !is_nakayama(alg) {
                return Err(Error::Hypothesis("quiver is not of Nakayama type".into()));
            }
            for v in 0..alg.n_vertices() {
                let p = projective(alg, v);
                for k in 1.. {
                    let q = quotient(alg, &p, &radical_power(alg, &p, k)).0;
                    sat.add(&q)?;
                    if q.total_dim() == p.total_dim() {
                        break;
                    }
                }
            }
            true
        }
        Strategy::Knitting => {
            for v in 0..alg.n_vertices() {
                sat.add(&projective(alg, v))?;
                sat.add(&injective(alg, v))?;
            }
            sat.run(&[op_tau, op_tau_inv], 0)? && {
                for s in standard_seeds(alg) {
                    sat.add(&s)?;
                }
                sat.run(&TRANSLATES, 0)?
            }
        }
        Strategy::Closure => {
            for s in standard_seeds(alg) {
                sat.add(&s)?;
            }
            sat.run(&ALL_OPS, 0)?
        }
        Strategy::Explicit => return Err(Error::Config("explicit catalogs are loaded with Catalog::from_modules".into())),
    };
    let mut found = sat.found;
    found.sort_by(|x, y| (x.total_dim(), &x.dims).cmp(&(y.total_dim(), &y.dims)));
    let mut cat = Catalog::assemble(alg, found, strategy, cfg);
    cat.complete = complete;
    cat.certificate = if complete && cat.closure_witness(alg, &op, cfg)?.is_none() {
        Certificate::VerifiedClosure
    } else {
        Certificate::Declared
    };
    Ok(cat)
}

impl Catalog {
    fn assemble(alg: &AlgebraData, modules: Vec<Representation>, strategy: Strategy, cfg: &Config) -> Catalog {
        let n = modules.len();
        let flat = par::map_range(n * n, |k| hom_dim(alg, &modules[k / n], &modules[k % n]));
        let hom: Vec<Vec<usize>> = flat.chunks(n.max(1)).map(|r| r.to_vec()).take(n).collect();
        let entries = modules
            .into_iter()
            .enumerate()
            .map(|(i, m)| Entry {
                name: standard_name(alg, &m, cfg),
                end_dim: hom[i][i],
                module: m,
            })
            .collect();
        Catalog {
            entries,
            strategy,
            certificate: Certificate::Declared,
            complete: true,
            hom,
            ext: OnceLock::new(),
        }
    }

    /// Loads a user-supplied list, checking indecomposability, pairwise
    /// non-isomorphism and closure.
    pub fn from_modules(alg: &AlgebraData, named: Vec<(String, Representation)>, cfg: &Config) -> Result<Catalog> {
        let mut modules: Vec<Representation> = Vec::new();
        for (name, m) in &named {
            if crate::rep::indecomposable_verdict(alg, m, cfg)? != Indecomposability::Yes {
                return Err(Error::InvalidModule(format!("catalog entry `{name}` is not indecomposable")));
            }
            if let Some(j) = find_in(alg, &modules, m) {
                return Err(Error::InvalidModule(format!("catalog entries `{}` and `{name}` are isomorphic", named[j].0)));
            }
            modules.push(m.clone());
        }
        let op = opposite_algebra(alg);
        let mut cat = Catalog::assemble(alg, modules, Strategy::Explicit, cfg);
        for (e, (name, _)) in cat.entries.iter_mut().zip(named) {
            e.name = name;
        }
        let witness = cat.closure_witness(alg, &op, cfg)?;
        cat.complete = witness.is_none();
        cat.certificate = if cat.complete { Certificate::VerifiedClosure } else { Certificate::Declared };
        Ok(cat)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn module(&self, i: usize) -> &Representation {
        &self.entries[i].module
    }

    pub fn name(&self, i: usize) -> &str {
        &self.entries[i].name
    }

    pub fn modules(&self) -> Vec<Representation> {
        self.entries.iter().map(|e| e.module.clone()).collect()
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    /// `dim Hom(X_i, X_j)`.
    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    /// `dim Ext^1(X_i, X_j)`, computed once for the whole catalog.
    pub fn ext1(&self, alg: &AlgebraData, i: usize, j: usize) -> usize {
        self.ext.get_or_init(|| {
            let n = self.len();
            let flat = par::map_range(n * n, |k| ext_dim(alg, self.module(k / n), self.module(k % n), 1));
            flat.chunks(n.max(1)).map(|r| r.to_vec()).take(n).collect()
        })[i][j]
    }

    /// Renames entries by dimension vector, e.g. to match a figure.
    pub fn rename(&mut self, names: &HashMap<Vec<usize>, String>) {
        for e in &mut self.entries {
            if let Some(n) = names.get(&e.module.dims) {
                e.name = n.clone();
            }
        }
    }

    pub fn names(&self, members: &[bool]) -> Vec<String> {
        members.iter().zip(&self.entries).filter(|(m, _)| **m).map(|(_, e)| e.name.clone()).collect()
    }

    pub fn members(&self, pred: impl Fn(&Representation) -> bool + Sync + Send) -> Vec<bool> {
        par::map(&self.entries, |e| pred(&e.module))
    }

    /// Index of an indecomposable module.
    pub fn find(&self, alg: &AlgebraData, x: &Representation) -> Option<usize> {
        self.entries.iter().position(|e| same_indecomposable(alg, x, &e.module))
    }

    /// Multiplicities of catalog entries in `M`, from `dim Hom(M, Y)` for
    /// all entries `Y`, certified by an explicit isomorphism.
    pub fn decompose(&self, alg: &AlgebraData, m: &Representation, cfg: &Config) -> Result<Vec<usize>> {
        let n = self.len();
        let f = m.field();
        if m.is_zero() {
            return Ok(vec![0; n]);
        }
        let rhs: Vec<u32> = par::map_range(n, |y| hom_dim(alg, m, self.module(y)) as u32);
        let h = crate::linalg::Matrix::from_fn(f, n, n, |y, x| (self.hom[x][y] as u32) % f.p());
        let by_counting = if h.rank() == n {
            h.solve(&rhs)?.filter(|sol| sol.iter().all(|&c| (c as usize) <= m.total_dim())).map(|sol| sol.iter().map(|&c| c as usize).collect::<Vec<_>>())
        } else {
            None
        };
        let mult = match by_counting {
            Some(v) => v,
            None => {
                let mut v = vec![0; n];
                for x in indecomposable_parts(alg, m, cfg)? {
                    let i = self
                        .find(alg, &x)
                        .ok_or_else(|| Error::CatalogIncomplete(format!("summand with dimension vector {:?} not in catalog", x.dims)))?;
                    v[i] += 1;
                }
                v
            }
        };
        let rebuilt = self.direct_sum(alg, &mult);
        if !is_isomorphic(alg, m, &rebuilt, cfg, None)? {
            return Err(Error::CatalogIncomplete(format!(
                "module with dimension vector {:?} does not decompose over the catalog",
                m.dims
            )));
        }
        Ok(mult)
    }

    pub fn direct_sum(&self, alg: &AlgebraData, mult: &[usize]) -> Representation {
        let parts: Vec<Representation> = mult
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(self.module(i).clone(), k))
            .collect();
        Representation::sum_of(alg, &parts)
    }

    /// Renders a multiplicity vector as `S1 ⊕ P1^2`.
    pub fn format_sum(&self, mult: &[usize]) -> String {
        let parts: Vec<String> = mult
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { self.name(i).to_string() } else { format!("{}^{}", self.name(i), k) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }

    /// A description of the first closure failure, if any.
    pub fn closure_witness(&self, alg: &AlgebraData, op: &AlgebraData, cfg: &Config) -> Result<Option<String>> {
        for s in standard_seeds(alg) {
            if self.find(alg, &s).is_none() {
                return Ok(Some(format!("missing standard module with dimension vector {:?}", s.dims)));
            }
        }
        let names = ["τ", "τ⁻", "Ω", "Ω⁻"];
        for e in &self.entries {
            for (f, label) in TRANSLATES.iter().zip(names) {
                let y = f(alg, op, &e.module);
                if y.is_zero() {
                    continue;
                }
                for x in indecomposable_parts(alg, &y, cfg)? {
                    if self.find(alg, &x).is_none() {
                        return Ok(Some(format!("{label}({}) has a summand {:?} outside the catalog", e.name, x.dims)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Index of `τ X_i`, or `None` for projectives.
    pub fn tau_index(&self, alg: &AlgebraData, i: usize) -> Option<usize> {
        let t = tau(alg, self.module(i));
        if t.is_zero() {
            None
        } else {
            self.find(alg, &t)
        }
    }
}

fn standard_name(alg: &AlgebraData, m: &Representation, cfg: &Config) -> String {
    let n = alg.n_vertices();
    let same = |y: &Representation| y.dims == m.dims && is_isomorphic(alg, m, y, cfg, None).unwrap_or(false);
    for v in 0..n {
        if same(&projective(alg, v)) {
            return format!("P{}", alg.vertices[v]);
        }
    }
    for v in 0..n {
        if same(&injective(alg, v)) {
            return format!("I{}", alg.vertices[v]);
        }
    }
    for v in 0..n {
        if same(&simple(alg, v)) {
            return format!("S{}", alg.vertices[v]);
        }
    }
    for v in 0..n {
        let p = projective(alg, v);
        for k in 2.. {
            let q = quotient(alg, &p, &radical_power(alg, &p, k)).0;
            if q.total_dim() == p.total_dim() {
                break;
            }
            if same(&q) {
                return format!("P{}/rad{}", alg.vertices[v], k);
            }
        }
    }
    let d: Vec<String> = m.dims.iter().map(|x| x.to_string()).collect();
    format!("M[{}]", d.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::tests::{alg, A2, FIVE_VERTEX, TWO_VERTEX};

    #[test]
    fn two_vertex_nakayama() {
        let cfg = Config::default();
        let a = alg(TWO_VERTEX);
        let c = build_catalog(&a, Strategy::Nakayama, &cfg).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.certificate, Certificate::VerifiedClosure);
        let mut names: Vec<&str> = c.entries.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        assert_eq!(names, vec!["P1", "P1/rad2", "P2", "P2/rad2", "S1", "S2"]);
        let cl = build_catalog(&a, Strategy::Closure, &cfg).unwrap();
        assert_eq!(cl.len(), 6);
    }

    #[test]
    fn five_vertex_has_fifteen() {
        let cfg = Config::default();
        let a = alg(FIVE_VERTEX);
        let c = build_catalog(&a, Strategy::Closure, &cfg).unwrap();
        assert_eq!(c.len(), 15);
        assert_eq!(c.certificate, Certificate::VerifiedClosure);
        let k = build_catalog(&a, Strategy::Knitting, &cfg).unwrap();
        assert_eq!(k.len(), 15);
        assert!(build_catalog(&a, Strategy::Nakayama, &cfg).is_err());
    }

    #[test]
    fn decompose_regular_and_quotient() {
        let cfg = Config::default();
        let a = alg(TWO_VERTEX);
        let c = build_catalog(&a, Strategy::Nakayama, &cfg).unwrap();
        let reg = projective(&a, 0).direct_sum(&projective(&a, 1));
        let m = c.decompose(&a, &reg, &cfg).unwrap();
        assert_eq!(c.format_sum(&m), "P2 ⊕ P1");
        let p2 = projective(&a, 0).power(&a, 2);
        let (_, incl) = crate::rep::trace(&a, &simple(&a, 0), &p2);
        let q = quotient(&a, &p2, &incl.blocks).0;
        let m = c.decompose(&a, &q, &cfg).unwrap();
        assert_eq!(c.format_sum(&m), "P1/rad2^2");
    }

    #[test]
    fn a2_and_explicit() {
        let cfg = Config::default();
        let a = alg(A2);
        let c = build_catalog(&a, Strategy::Knitting, &cfg).unwrap();
        assert_eq!(c.len(), 3);
        let named: Vec<(String, Representation)> = c.entries.iter().map(|e| (e.name.clone(), e.module.clone())).collect();
        let e = Catalog::from_modules(&a, named[..2].to_vec(), &cfg).unwrap();
        assert!(!e.complete);
        let e = Catalog::from_modules(&a, named, &cfg).unwrap();
        assert_eq!(e.certificate, Certificate::VerifiedClosure);
    }
}
