//! Bundled regression scenarios. Each scenario is a TOML file naming an
//! algebra file, the pipeline to run and a list of expected values, each
//! tagged `PUBLISHED` (published value) or `DERIVED` (frozen computed value).

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{check_hereditary, load_algebra, AlgebraData};
use crate::catalog::{build_catalog, Catalog, Strategy};
use crate::epi::{
    bireflective_witness, brick_criterion, build_epi, is_homological, morita_shape, reflection_witness,
    sigma_tensor_is_iso, thm2_report, tor1_vanishes, torsion_reduction_check, verify_ring_epi, HomologicalVerdict,
    RingEpi,
};
use crate::error::{Error, Result};
use crate::hereditary::{
    abelian_part_witness, approximation_witness, build_epi_lattice, d_sigma_matches_gen, enumerate_wide,
    hereditary_witness, kronecker_slice, triangle_check,
};
use crate::rep::{ext_dim, minimal_presentation, PdResult};
use crate::silting::{d_sigma_members, torsion_witness};
use crate::{par, Config};

const FILES: &[(&str, &str)] = &[
    ("two_vertex.toml", include_str!("../scenarios/two_vertex.toml")),
    ("five_vertex_case1.toml", include_str!("../scenarios/five_vertex_case1.toml")),
    ("five_vertex_case2.toml", include_str!("../scenarios/five_vertex_case2.toml")),
    ("a2.toml", include_str!("../scenarios/a2.toml")),
    ("a3.toml", include_str!("../scenarios/a3.toml")),
    ("kronecker_slice.toml", include_str!("../scenarios/kronecker_slice.toml")),
];

const ALGEBRAS: &[(&str, &str)] = &[
    ("two_vertex.alg", include_str!("../scenarios/two_vertex.alg")),
    ("five_vertex.alg", include_str!("../scenarios/five_vertex.alg")),
    ("a2.alg", include_str!("../scenarios/a2.alg")),
    ("a3.alg", include_str!("../scenarios/a3.alg")),
    ("kronecker.alg", include_str!("../scenarios/kronecker.alg")),
];

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Partial,
    Hereditary,
    Kronecker,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    #[default]
    Eq,
    Le,
    Ge,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub expect: toml::Value,
    #[serde(default)]
    pub op: Op,
    pub tag: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub algebra: String,
    pub kind: Kind,
    pub catalog: String,
    pub partial: Option<String>,
    pub bound: Option<usize>,
    #[serde(default)]
    pub names: BTreeMap<String, Vec<usize>>,
    #[serde(rename = "check", default)]
    pub checks: Vec<Expectation>,
}

impl Scenario {
    pub fn algebra_text(&self) -> Result<&'static str> {
        algebra_file(&self.algebra)
    }
}

pub fn algebra_file(name: &str) -> Result<&'static str> {
    ALGEBRAS
        .iter()
        .find(|(f, _)| *f == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Unknown(format!("bundled algebra `{name}`")))
}

pub fn scenarios() -> Result<Vec<Scenario>> {
    FILES
        .iter()
        .map(|(file, text)| toml::from_str(text).map_err(|e| Error::Config(format!("{file}: {e}"))))
        .collect()
}

pub fn scenario_names() -> Vec<String> {
    scenarios().map(|s| s.into_iter().map(|s| s.name).collect()).unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub rows: Vec<CheckRow>,
    pub exit_status: i32,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn render(&self) -> String {
        let mut s = format!("scenario {}\n", self.scenario);
        for r in &self.rows {
            let mark = if r.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("  {mark} [{}] {}: expected {}, got {}\n", r.tag, r.check, r.expected, r.actual));
        }
        s.push_str(&format!("  {}\n", if self.passed() { "ok" } else { "FAILED" }));
        s
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(render).collect::<Vec<_>>().join(", ")),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// Lists compare as multisets; scalars exactly, or by `op` for integers.
fn compare(expect: &Value, actual: &Value, op: Op) -> bool {
    match (expect, actual, op) {
        (Value::Array(a), Value::Array(b), Op::Eq) => {
            let mut a: Vec<String> = a.iter().map(render).collect();
            let mut b: Vec<String> = b.iter().map(render).collect();
            a.sort();
            b.sort();
            a == b
        }
        (_, _, Op::Eq) => render(expect) == render(actual),
        (e, a, op) => match (e.as_i64(), a.as_i64()) {
            (Some(e), Some(a)) => {
                if op == Op::Le {
                    a <= e
                } else {
                    a >= e
                }
            }
            _ => false,
        },
    }
}

struct Context {
    alg: AlgebraData,
    cat: Option<Catalog>,
}

fn load(sc: &Scenario, cfg: &Config) -> Result<Context> {
    let alg = load_algebra(sc.algebra_text()?, Some(cfg.field), cfg.length_bound)?;
    let strategy: Strategy = sc.catalog.parse()?;
    let cat = if strategy == Strategy::Explicit {
        None
    } else {
        let mut c = build_catalog(&alg, strategy, cfg)?;
        let names: HashMap<Vec<usize>, String> = sc.names.iter().map(|(n, d)| (d.clone(), n.clone())).collect();
        c.rename(&names);
        Some(c)
    };
    Ok(Context { alg, cat })
}

fn property_values(alg: &AlgebraData, cat: &Catalog, epi: &RingEpi, cfg: &Config, out: &mut BTreeMap<String, Value>) -> Result<()> {
    out.insert("property:bireflective".into(), json!(bireflective_witness(alg, cat, epi, cfg)?.is_none()));
    out.insert("property:reflection".into(), json!(reflection_witness(alg, cat, epi).is_none()));
    out.insert("property:sigma_tensor_iso".into(), json!(sigma_tensor_is_iso(alg, epi)));
    out.insert("property:tor1_vanishes".into(), json!(tor1_vanishes(alg, epi)));
    out.insert("property:ring_epi".into(), json!(verify_ring_epi(alg, epi)));
    let d = d_sigma_members(alg, cat, &epi.sigma);
    out.insert("property:d_sigma_torsion".into(), json!(torsion_witness(alg, cat, &d, cfg)?.is_none()));
    let m = &epi.completion.m_a;
    out.insert("property:approximation_minimal".into(), json!(m.minimal && m.approximating));
    Ok(())
}

fn partial_values(sc: &Scenario, ctx: &Context, cfg: &Config) -> Result<BTreeMap<String, Value>> {
    let (alg, cat) = (&ctx.alg, ctx.cat.as_ref().expect("partial scenarios build a catalog"));
    let name = sc.partial.as_deref().ok_or_else(|| Error::Config("partial scenario needs `partial`".into()))?;
    let t1 = cat.module(cat.index_of_name(name).ok_or_else(|| Error::Unknown(name.into()))?).clone();
    let sigma = minimal_presentation(alg, &t1);
    let epi = build_epi(alg, cat, &t1, &sigma, cfg)?;
    let hereditary = check_hereditary(alg);
    let mut v = BTreeMap::new();
    v.insert("algebra_dim".into(), json!(alg.dim()));
    v.insert("hereditary".into(), json!(hereditary));
    v.insert("catalog_size".into(), json!(cat.len()));
    let s = sigma.summary(alg);
    v.insert("sigma".into(), json!(format!("{} → {}", join_or_zero(&s.p), join_or_zero(&s.q))));
    v.insert("d_sigma".into(), json!(cat.names(&epi.completion.d_sigma)));
    v.insert("completion".into(), json!(cat.format_sum(&epi.completion.t_mult)));
    v.insert("perp".into(), json!(cat.names(&epi.perp)));
    v.insert("b_dim".into(), json!(epi.dim_b()));
    v.insert("b_radical_dim".into(), json!(epi.b.radical()?.cols()));
    v.insert("b_center_dim".into(), json!(epi.b.center().cols()));
    v.insert("injective".into(), json!(epi.is_injective()));
    let t2 = thm2_report(alg, cat, &epi, cfg)?;
    v.insert("thm2_end_dim".into(), json!(t2.end_dim));
    v.insert("thm2_ideal_dim".into(), json!(t2.ideal_dim));
    v.insert("thm2_passed".into(), json!(t2.passed()));
    let h = is_homological(alg, &epi, cfg.homological_bound, hereditary, cfg)?;
    v.insert("homological".into(), json!(h.is_homological()));
    let degree = match h {
        HomologicalVerdict::NotHomological { degree, .. } => json!(degree),
        _ => Value::Null,
    };
    v.insert("witness_degree".into(), degree);
    if let Ok(b) = brick_criterion(alg, cat, &epi, cfg) {
        v.insert("kernel".into(), json!(b.kernel_name));
        v.insert("kernel_power".into(), b.n.map_or(Value::Null, |n| json!(n)));
        v.insert("kernel_matches_f".into(), json!(b.kernel_matches_f));
        let pd = match b.pd_b {
            PdResult::Finite { pd } => json!(pd),
            PdResult::Infinite { .. } => json!("infinite"),
            PdResult::AtLeast { bound } => json!(format!(">= {bound}")),
        };
        v.insert("pd_b".into(), pd);
    }
    let shape = morita_shape(&epi.b, cfg)?;
    v.insert("basic_simples".into(), json!(shape.simples));
    v.insert("basic_dim".into(), json!(shape.dim));
    v.insert("basic_ext1".into(), json!(shape.ext1));
    v.insert("basic_ext2".into(), json!(shape.ext2));
    let red = torsion_reduction_check(alg, cat, &epi, cfg)?;
    v.insert("torsion_interval".into(), json!(red.interval.len()));
    v.insert("torsion_b_classes".into(), json!(red.b_classes.len()));
    v.insert("torsion_passed".into(), json!(red.passed()));
    for e in &sc.checks {
        if let Some(rest) = e.key.strip_prefix("ext") {
            let parts: Vec<&str> = rest.split(':').collect();
            if let [deg, x, y] = parts[..] {
                let deg: usize = deg.parse().map_err(|_| Error::Config(format!("bad check key `{}`", e.key)))?;
                let m = |n: &str| cat.index_of_name(n).map(|i| cat.module(i)).ok_or_else(|| Error::Unknown(n.into()));
                v.insert(e.key.clone(), json!(ext_dim(alg, m(x)?, m(y)?, deg)));
            }
        }
    }
    property_values(alg, cat, &epi, cfg, &mut v)?;
    Ok(v)
}

fn join_or_zero(v: &[String]) -> String {
    if v.is_empty() {
        "0".into()
    } else {
        v.join(" ⊕ ")
    }
}

fn hereditary_values(ctx: &Context, cfg: &Config) -> Result<BTreeMap<String, Value>> {
    let (alg, cat) = (&ctx.alg, ctx.cat.as_ref().expect("hereditary scenarios build a catalog"));
    let mut v = BTreeMap::new();
    v.insert("algebra_dim".into(), json!(alg.dim()));
    v.insert("catalog_size".into(), json!(cat.len()));
    let tri = triangle_check(alg, cat, cfg)?;
    v.insert("support_tilting".into(), json!(tri.support_tilting));
    v.insert("wide".into(), json!(enumerate_wide(alg, cat, cfg)?.len()));
    v.insert("epiclasses".into(), json!(tri.epis));
    v.insert("tilting".into(), json!(tri.tilting));
    v.insert("injective_epis".into(), json!(tri.injective));
    v.insert("triangle".into(), json!(tri.passed()));
    let lat = build_epi_lattice(alg, cat, cfg)?;
    v.insert("lattice".into(), json!(lat.axiom_witness().is_none()));
    v.insert("euler_ar".into(), json!(hereditary_witness(alg, cat)?.is_none()));
    let mut props: BTreeMap<String, bool> = BTreeMap::new();
    for node in &lat.nodes {
        let mut one = BTreeMap::new();
        property_values(alg, cat, &node.epi, cfg, &mut one)?;
        one.insert("property:abelian_part".into(), json!(abelian_part_witness(alg, cat, node, cfg)?.is_none()));
        one.insert("property:proj_x_is_t0".into(), json!(approximation_witness(alg, cat, node).is_none()));
        one.insert("property:d_sigma_is_gen".into(), json!(d_sigma_matches_gen(alg, cat, node)));
        for (k, x) in one {
            let e = props.entry(k).or_insert(true);
            *e &= x == json!(true);
        }
    }
    for (k, x) in props {
        v.insert(k, json!(x));
    }
    Ok(v)
}

fn kronecker_values(sc: &Scenario, ctx: &Context, cfg: &Config) -> Result<BTreeMap<String, Value>> {
    let rows = kronecker_slice(&ctx.alg, sc.bound.unwrap_or(4), cfg)?;
    let mut v = BTreeMap::new();
    let (p, q): (Vec<_>, Vec<_>) = rows.iter().partition(|r| r.silting.starts_with('P'));
    v.insert("hom_dims".into(), json!(p.iter().map(|r| r.hom_dim).collect::<Vec<_>>()));
    v.insert("q_hom_dims".into(), json!(q.iter().map(|r| r.hom_dim).collect::<Vec<_>>()));
    v.insert("generators".into(), json!(rows.iter().map(|r| r.generator.clone()).collect::<Vec<_>>()));
    v.insert("rows_passed".into(), json!(rows.iter().all(|r| r.passed)));
    Ok(v)
}

/// Computed values for a scenario, keyed like its checks.
pub fn scenario_values(sc: &Scenario, cfg: &Config) -> Result<BTreeMap<String, Value>> {
    let ctx = load(sc, cfg)?;
    match sc.kind {
        Kind::Partial => partial_values(sc, &ctx, cfg),
        Kind::Hereditary => hereditary_values(&ctx, cfg),
        Kind::Kronecker => kronecker_values(sc, &ctx, cfg),
    }
}

pub fn evaluate(sc: &Scenario, cfg: &Config) -> Result<ScenarioReport> {
    let values = scenario_values(sc, cfg)?;
    let mut rows = Vec::new();
    for e in &sc.checks {
        let expect = serde_json::to_value(&e.expect).map_err(|x| Error::Config(x.to_string()))?;
        let actual = values.get(&e.key).cloned();
        let sign = match e.op {
            Op::Eq => "",
            Op::Le => "≤ ",
            Op::Ge => "≥ ",
        };
        rows.push(CheckRow {
            check: e.key.clone(),
            expected: format!("{sign}{}", render(&expect)),
            actual: actual.as_ref().map_or("missing".into(), render),
            pass: actual.as_ref().is_some_and(|a| compare(&expect, a, e.op)),
            tag: e.tag.clone(),
        });
    }
    // Property suites run on every scenario.
    for (k, a) in values.iter().filter(|(k, _)| k.starts_with("property:")) {
        rows.push(CheckRow {
            check: k.clone(),
            expected: "true".into(),
            actual: render(a),
            pass: *a == json!(true),
            tag: "DERIVED".into(),
        });
    }
    let exit_status = if rows.iter().all(|r| r.pass) { 0 } else { 1 };
    Ok(ScenarioReport { scenario: sc.name.clone(), rows, exit_status })
}

pub fn run_scenario(name: &str, cfg: &Config) -> Result<ScenarioReport> {
    let sc = scenarios()?
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Unknown(format!("scenario `{name}`; known: {}", scenario_names().join(", "))))?;
    evaluate(&sc, cfg)
}

/// Runs every bundled scenario concurrently; reports come back in file order.
pub fn run_all(cfg: &Config) -> Result<Vec<ScenarioReport>> {
    let all = scenarios()?;
    par::map(&all, |sc| evaluate(sc, cfg)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn files_parse() {
        let s = scenarios().unwrap();
        assert_eq!(s.len(), 6);
        for sc in &s {
            assert!(sc.algebra_text().is_ok());
            assert!(sc.checks.iter().all(|c| c.tag == "PUBLISHED" || c.tag == "DERIVED"));
        }
    }

    #[test]
    fn comparison_rules() {
        assert!(compare(&json!(["b", "a"]), &json!(["a", "b"]), Op::Eq));
        assert!(compare(&json!(6), &json!(3), Op::Le));
        assert!(!compare(&json!(1), &json!(0), Op::Ge));
        assert!(compare(&json!("none"), &Value::Null, Op::Eq));
    }

    #[test]
    fn two_vertex_passes() {
        let r = run_scenario("two-vertex", &Config::default()).unwrap();
        assert!(r.passed(), "{}", r.render());
    }
}
