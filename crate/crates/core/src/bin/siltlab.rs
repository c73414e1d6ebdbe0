use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use siltlab::algebra::{check_hereditary, load_algebra, AlgebraData};
use siltlab::catalog::{build_catalog, Catalog, Strategy};
use siltlab::epi::{
    bireflective_witness, brick_criterion, build_epi, is_homological, morita_shape, reflection_witness,
    sigma_tensor_is_iso, thm2_report, tor1_vanishes, torsion_reduction_check, verify_ring_epi, RingEpi,
};
use siltlab::hereditary::{
    build_epi_lattice, enumerate_support_tilting, enumerate_wide, kronecker_slice, label, triangle_check,
};
use siltlab::rep::{minimal_presentation, parse_modules, Representation};
use siltlab::silting::{bongartz_completion, is_silting, minimal_left_approximation, Verdict};
use siltlab::{scenario, Config, Error};

#[derive(Parser)]
#[command(name = "siltlab", version, about = "Partial silting modules, ring epimorphisms and support tilting lattices")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Prime modulus of the coefficient field.
    #[arg(long, global = true, value_name = "P")]
    field: Option<u32>,
    /// Degree bound for homological checks, or slice length for `kronecker`.
    #[arg(long, global = true, value_name = "N")]
    bound: Option<usize>,
    /// Seed for randomised isomorphism and idempotent searches.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra file and report its dimension.
    CheckAlgebra { file: PathBuf },
    /// List the indecomposable modules.
    Catalog(CatalogArgs),
    #[command(subcommand)]
    Silting(SiltingCmd),
    #[command(subcommand)]
    Epi(EpiCmd),
    #[command(subcommand)]
    Hereditary(HereditaryCmd),
    #[command(subcommand)]
    Scenario(ScenarioCmd),
}

#[derive(Args, Clone)]
struct CatalogArgs {
    file: PathBuf,
    /// nakayama, knitting, closure or explicit.
    #[arg(long, default_value = "closure")]
    strategy: String,
    /// Modules for the explicit strategy (module file format).
    #[arg(long, value_name = "FILE")]
    modules: Option<PathBuf>,
    /// Rename the entry with a dimension vector, e.g. `M2=0,0,1,1,0`.
    #[arg(long = "name", value_name = "NAME=DIMS")]
    names: Vec<String>,
}

#[derive(Args, Clone)]
struct PartialArgs {
    #[command(flatten)]
    catalog: CatalogArgs,
    /// Catalog name of the partial silting module `T_1`.
    #[arg(long, value_name = "NAME", required_unless_present = "partial_file")]
    partial: Option<String>,
    /// Read `T_1` from a module file instead (first module).
    #[arg(long, value_name = "FILE")]
    partial_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SiltingCmd {
    /// Classify a module as partial silting, silting or tilting.
    Check {
        #[command(flatten)]
        catalog: CatalogArgs,
        /// Catalog names of the summands.
        #[arg(long = "module", value_name = "NAME", required = true)]
        module: Vec<String>,
    },
    /// Bongartz completion of a partial silting module.
    Bongartz(PartialArgs),
    /// Minimal left approximation of one catalog module by others.
    Approx {
        #[command(flatten)]
        catalog: CatalogArgs,
        #[arg(long, value_name = "NAME")]
        target: String,
        #[arg(long = "into", value_name = "NAME", required = true)]
        into: Vec<String>,
    },
}

#[derive(Subcommand)]
enum EpiCmd {
    /// Construct the ring epimorphism of a partial silting module.
    Build {
        #[command(flatten)]
        args: PartialArgs,
        /// Write B as a multiplication table.
        #[arg(long, value_name = "FILE")]
        dump_algebra: Option<PathBuf>,
    },
    /// Ring-epimorphism, reflection and bireflectivity checks.
    Verify(PartialArgs),
    /// B against End(T)/I.
    Thm2(PartialArgs),
    /// Whether Tor_i(B, B) vanishes.
    Homological(PartialArgs),
    /// Kernel-is-a-power-of-a-brick criterion.
    Brick(PartialArgs),
    /// Torsion classes in the interval against those of B.
    ReduceTorsion(PartialArgs),
}

#[derive(Subcommand)]
enum HereditaryCmd {
    SupportTilting(CatalogArgs),
    Wide(CatalogArgs),
    Triangle(CatalogArgs),
    Lattice {
        #[command(flatten)]
        catalog: CatalogArgs,
        /// Write the Hasse diagram in DOT format.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    Kronecker { file: PathBuf },
}

#[derive(Subcommand)]
enum ScenarioCmd {
    List,
    /// Run one bundled scenario, or `all`.
    Run { name: String },
}

/// Text and JSON renderings plus whether every verdict held.
struct Out {
    text: String,
    json: Value,
    ok: bool,
}

type Res<T> = std::result::Result<T, Error>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialise"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Invariant(_) => 3,
                Error::Hypothesis(_) | Error::NotHereditary(_) | Error::Inconclusive(_) | Error::CatalogIncomplete(_) => 1,
                _ => 2,
            })
        }
    }
}

fn config(g: &Global) -> Res<Config> {
    let mut cfg = Config::from_env()?;
    if let Some(p) = g.field {
        cfg = cfg.with_prime(p)?;
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(b) = g.bound {
        cfg.homological_bound = b;
    }
    Ok(cfg)
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn algebra(path: &Path, cfg: &Config) -> Res<AlgebraData> {
    load_algebra(&read(path)?, Some(cfg.field), cfg.length_bound)
}

fn catalog(args: &CatalogArgs, cfg: &Config) -> Res<(AlgebraData, Catalog)> {
    let alg = algebra(&args.file, cfg)?;
    let strategy: Strategy = args.strategy.parse()?;
    let mut cat = if strategy == Strategy::Explicit {
        let path = args.modules.as_ref().ok_or_else(|| Error::Config("explicit catalogs need --modules".into()))?;
        Catalog::from_modules(&alg, parse_modules(&alg, &read(path)?)?, cfg)?
    } else {
        build_catalog(&alg, strategy, cfg)?
    };
    let mut names = HashMap::new();
    for n in &args.names {
        let (name, dims) = n.split_once('=').ok_or_else(|| Error::Config(format!("expected NAME=DIMS, got `{n}`")))?;
        let dims: Vec<usize> = dims
            .split(',')
            .map(|d| d.trim().parse().map_err(|_| Error::Config(format!("bad dimension vector in `{n}`"))))
            .collect::<Res<_>>()?;
        names.insert(dims, name.to_string());
    }
    cat.rename(&names);
    Ok((alg, cat))
}

fn lookup(cat: &Catalog, name: &str) -> Res<usize> {
    cat.index_of_name(name).ok_or_else(|| Error::Unknown(format!("module `{name}` is not in the catalog")))
}

fn partial(args: &PartialArgs, cfg: &Config) -> Res<(AlgebraData, Catalog, Representation)> {
    let (alg, cat) = catalog(&args.catalog, cfg)?;
    let t1 = match (&args.partial, &args.partial_file) {
        (_, Some(path)) => parse_modules(&alg, &read(path)?)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Config("module file is empty".into()))?
            .1,
        (Some(n), None) => cat.module(lookup(&cat, n)?).clone(),
        (None, None) => unreachable!("clap requires one of --partial and --partial-file"),
    };
    Ok((alg, cat, t1))
}

fn epi_for(args: &PartialArgs, cfg: &Config) -> Res<(AlgebraData, Catalog, RingEpi)> {
    let (alg, cat, t1) = partial(args, cfg)?;
    let sigma = minimal_presentation(&alg, &t1);
    let e = build_epi(&alg, &cat, &t1, &sigma, cfg)?;
    Ok((alg, cat, e))
}

fn lines(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

fn run(cli: &Cli) -> Res<Out> {
    let cfg = config(&cli.global)?;
    match &cli.command {
        Command::CheckAlgebra { file } => {
            let a = algebra(file, &cfg)?;
            let h = check_hereditary(&a);
            Ok(Out {
                text: lines(&[
                    ("dimension", a.dim().to_string()),
                    ("vertices", a.n_vertices().to_string()),
                    ("arrows", a.arrows.len().to_string()),
                    ("hereditary", h.to_string()),
                ]),
                json: json!({"dimension": a.dim(), "vertices": a.vertices, "arrows": a.arrows.len(), "hereditary": h}),
                ok: true,
            })
        }
        Command::Catalog(args) => {
            let (_, cat) = catalog(args, &cfg)?;
            let mut text = format!("{} indecomposables ({:?}, complete: {})\n", cat.len(), cat.certificate, cat.complete);
            let mut rows = Vec::new();
            for e in &cat.entries {
                text.push_str(&format!("{:<12} {:?} end {}\n", e.name, e.module.dims, e.end_dim));
                rows.push(json!({"name": e.name, "dims": e.module.dims, "end_dim": e.end_dim}));
            }
            Ok(Out {
                text,
                json: json!({"size": cat.len(), "complete": cat.complete, "certificate": format!("{:?}", cat.certificate), "entries": rows}),
                ok: true,
            })
        }
        Command::Silting(cmd) => silting(cmd, &cfg),
        Command::Epi(cmd) => epi(cmd, &cfg),
        Command::Hereditary(cmd) => hereditary(cmd, &cli.global, &cfg),
        Command::Scenario(cmd) => scenarios(cmd, &cfg),
    }
}

fn silting(cmd: &SiltingCmd, cfg: &Config) -> Res<Out> {
    match cmd {
        SiltingCmd::Check { catalog: c, module } => {
            let (alg, cat) = catalog(c, cfg)?;
            let mut mult = vec![0; cat.len()];
            for n in module {
                mult[lookup(&cat, n)?] += 1;
            }
            let t = cat.direct_sum(&alg, &mult);
            let cert = is_silting(&alg, &cat, &t);
            let s = cert.sigma.summary(&alg);
            let mut text = lines(&[
                ("module", cat.format_sum(&mult)),
                ("verdict", format!("{:?}", cert.verdict)),
                ("presentation", format!("{} → {}", s.p.join(" ⊕ "), s.q.join(" ⊕ "))),
                ("killed", s.killed.join(" ⊕ ")),
            ]);
            if let Some(w) = &cert.witness {
                text.push_str(&format!("witness: {w}\n"));
            }
            Ok(Out {
                text,
                json: json!({"module": cat.format_sum(&mult), "verdict": cert.verdict, "presentation": s, "witness": cert.witness}),
                ok: cert.verdict != Verdict::None,
            })
        }
        SiltingCmd::Bongartz(args) => {
            let (alg, cat, t1) = partial(args, cfg)?;
            let sigma = minimal_presentation(&alg, &t1);
            let c = bongartz_completion(&alg, &cat, &t1, &sigma, cfg)?;
            let t = cat.format_sum(&c.t_mult);
            let m_a = cat.format_sum(&c.m_a.target_mult);
            Ok(Out {
                text: lines(&[
                    ("D_sigma", cat.names(&c.d_sigma).join(", ")),
                    ("Ext-projectives", cat.names(&c.basic).join(", ")),
                    ("M_A", m_a.clone()),
                    ("T", t.clone()),
                    ("minimal", c.m_a.minimal.to_string()),
                ]),
                json: json!({"d_sigma": cat.names(&c.d_sigma), "ext_projectives": cat.names(&c.basic), "m_a": m_a, "t": t, "minimal": c.m_a.minimal}),
                ok: c.m_a.minimal && c.m_a.approximating,
            })
        }
        SiltingCmd::Approx { catalog: c, target, into } => {
            let (alg, cat) = catalog(c, cfg)?;
            let x = cat.module(lookup(&cat, target)?).clone();
            let parts: Vec<usize> = into.iter().map(|n| lookup(&cat, n)).collect::<Res<_>>()?;
            let ap = minimal_left_approximation(&alg, &cat, &x, &parts);
            let tgt = cat.format_sum(&ap.target_mult);
            Ok(Out {
                text: lines(&[
                    ("approximation", format!("{target} → {tgt}")),
                    ("approximating", ap.approximating.to_string()),
                    ("minimal", ap.minimal.to_string()),
                ]),
                json: json!({"source": target, "target": tgt, "approximating": ap.approximating, "minimal": ap.minimal}),
                ok: ap.approximating && ap.minimal,
            })
        }
    }
}

fn epi(cmd: &EpiCmd, cfg: &Config) -> Res<Out> {
    match cmd {
        EpiCmd::Build { args, dump_algebra } => {
            let (alg, cat, e) = epi_for(args, cfg)?;
            if let Some(path) = dump_algebra {
                std::fs::write(path, e.b.to_text())?;
            }
            let s = e.sigma.summary(&alg);
            let shape = morita_shape(&e.b, cfg)?;
            let kernel = e.kernel.cols();
            Ok(Out {
                text: lines(&[
                    ("sigma", format!("{} → {}", s.p.join(" ⊕ "), s.q.join(" ⊕ "))),
                    ("T", cat.format_sum(&e.completion.t_mult)),
                    ("perpendicular", cat.names(&e.perp).join(", ")),
                    ("dim B", e.dim_b().to_string()),
                    ("dim ker f", kernel.to_string()),
                    ("injective", e.is_injective().to_string()),
                    ("basic simples", shape.simples.to_string()),
                    ("basic dim", shape.dim.to_string()),
                ]),
                json: json!({
                    "sigma": s,
                    "t": cat.format_sum(&e.completion.t_mult),
                    "perpendicular": cat.names(&e.perp),
                    "dim_b": e.dim_b(),
                    "kernel_dim": kernel,
                    "injective": e.is_injective(),
                    "basic": {"simples": shape.simples, "dim": shape.dim, "ext1": shape.ext1, "ext2": shape.ext2},
                }),
                ok: true,
            })
        }
        EpiCmd::Verify(args) => {
            let (alg, cat, e) = epi_for(args, cfg)?;
            let checks = [
                ("ring epimorphism", verify_ring_epi(&alg, &e)),
                ("Tor_1(B, B) = 0", tor1_vanishes(&alg, &e)),
                ("σ ⊗ B isomorphism", sigma_tensor_is_iso(&alg, &e)),
                ("reflection", reflection_witness(&alg, &cat, &e).is_none()),
                ("bireflective", bireflective_witness(&alg, &cat, &e, cfg)?.is_none()),
            ];
            let text = checks.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
            let json: serde_json::Map<String, Value> = checks.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            Ok(Out { text, json: Value::Object(json), ok: checks.iter().all(|c| c.1) })
        }
        EpiCmd::Thm2(args) => {
            let (alg, cat, e) = epi_for(args, cfg)?;
            let r = thm2_report(&alg, &cat, &e, cfg)?;
            Ok(Out {
                text: lines(&[
                    ("T", r.t.clone()),
                    ("dims", format!("{}/{}/{}", r.end_dim, r.ideal_dim, r.b_dim)),
                    ("p surjective", r.p_surjective.to_string()),
                    ("ker p = I", r.ker_p_equals_i.to_string()),
                    ("I²=I", r.i_squared_equals_i.to_string()),
                    ("p multiplicative", r.p_multiplicative.to_string()),
                ]),
                ok: r.passed(),
                json: serde_json::to_value(&r).expect("report serialises"),
            })
        }
        EpiCmd::Homological(args) => {
            let (alg, _, e) = epi_for(args, cfg)?;
            let v = is_homological(&alg, &e, cfg.homological_bound, check_hereditary(&alg), cfg)?;
            Ok(Out { text: format!("{v:?}\n"), json: serde_json::to_value(&v).expect("verdict serialises"), ok: true })
        }
        EpiCmd::Brick(args) => {
            let (alg, cat, e) = epi_for(args, cfg)?;
            let b = brick_criterion(&alg, &cat, &e, cfg)?;
            Ok(Out {
                text: lines(&[
                    ("kernel", b.kernel_name.clone()),
                    ("power", b.n.map_or("none".into(), |n| n.to_string())),
                    ("homological", b.homological.to_string()),
                    ("pd B", format!("{:?}", b.pd_b)),
                    ("injective", b.injective.to_string()),
                ]),
                ok: b.kernel_matches_f,
                json: serde_json::to_value(&b).expect("report serialises"),
            })
        }
        EpiCmd::ReduceTorsion(args) => {
            let (alg, cat, e) = epi_for(args, cfg)?;
            let r = torsion_reduction_check(&alg, &cat, &e, cfg)?;
            let fmt = |v: &[Vec<String>]| v.iter().map(|c| format!("{{{}}}", c.join(", "))).collect::<Vec<_>>().join(" ");
            let mut text = lines(&[
                ("interval", format!("{} classes {}", r.interval.len(), fmt(&r.interval))),
                ("B", format!("{} classes {}", r.b_classes.len(), fmt(&r.b_classes))),
                ("bijective", r.bijective.to_string()),
                ("reflection agrees", r.reflection_agrees.to_string()),
            ]);
            if let Some(w) = &r.witness {
                text.push_str(&format!("witness: {w}\n"));
            }
            Ok(Out { text, ok: r.passed(), json: serde_json::to_value(&r).expect("report serialises") })
        }
    }
}

fn hereditary(cmd: &HereditaryCmd, g: &Global, cfg: &Config) -> Res<Out> {
    match cmd {
        HereditaryCmd::SupportTilting(c) => {
            let (alg, cat) = catalog(c, cfg)?;
            let all = enumerate_support_tilting(&alg, &cat)?;
            let labels: Vec<String> = all.iter().map(|m| label(&cat, m)).collect();
            Ok(Out { text: format!("{} support tilting modules\n{}\n", labels.len(), labels.join("\n")), json: json!(labels), ok: true })
        }
        HereditaryCmd::Wide(c) => {
            let (alg, cat) = catalog(c, cfg)?;
            let all = enumerate_wide(&alg, &cat, cfg)?;
            let labels: Vec<Vec<String>> = all.iter().map(|m| cat.names(m)).collect();
            let text = labels.iter().map(|l| format!("{{{}}}\n", l.join(", "))).collect::<String>();
            Ok(Out { text: format!("{} wide subcategories\n{text}", labels.len()), json: json!(labels), ok: true })
        }
        HereditaryCmd::Triangle(c) => {
            let (alg, cat) = catalog(c, cfg)?;
            let r = triangle_check(&alg, &cat, cfg)?;
            let mut text = lines(&[
                ("support tilting", r.support_tilting.to_string()),
                ("wide", r.wide.to_string()),
                ("epiclasses", r.epis.to_string()),
                ("tilting", r.tilting.to_string()),
                ("injective epis", r.injective.to_string()),
                ("round trips", r.round_trips.to_string()),
            ]);
            for f in &r.failures {
                text.push_str(&format!("failure: {f}\n"));
            }
            Ok(Out { text, ok: r.passed(), json: serde_json::to_value(&r).expect("report serialises") })
        }
        HereditaryCmd::Lattice { catalog: c, dot } => {
            let (alg, cat) = catalog(c, cfg)?;
            let lat = build_epi_lattice(&alg, &cat, cfg)?;
            if let Some(path) = dot {
                std::fs::write(path, lat.to_dot(&cat))?;
            }
            let nodes: Vec<Value> = lat
                .nodes
                .iter()
                .map(|n| json!({"silting": label(&cat, &n.silting), "wide": cat.names(&n.wide), "dim_b": n.epi.dim_b(), "injective": n.injective}))
                .collect();
            let mut text = format!("{} epiclasses\n", lat.nodes.len());
            for (i, n) in lat.nodes.iter().enumerate() {
                text.push_str(&format!("n{i}: T = {}, W = {{{}}}, dim B = {}\n", label(&cat, &n.silting), cat.names(&n.wide).join(", "), n.epi.dim_b()));
            }
            for (i, j) in &lat.hasse {
                text.push_str(&format!("n{i} > n{j}\n"));
            }
            Ok(Out { text, json: json!({"nodes": nodes, "hasse": lat.hasse}), ok: lat.axiom_witness().is_none() })
        }
        HereditaryCmd::Kronecker { file } => {
            let alg = algebra(file, cfg)?;
            let rows = kronecker_slice(&alg, g.bound.unwrap_or(4), cfg)?;
            let text = rows
                .iter()
                .map(|r| format!("{:<10} hom {}  generator {:<4} {}\n", r.silting, r.hom_dim, r.generator, if r.passed { "ok" } else { "FAIL" }))
                .collect();
            Ok(Out { text, ok: rows.iter().all(|r| r.passed), json: serde_json::to_value(&rows).expect("rows serialise") })
        }
    }
}

fn scenarios(cmd: &ScenarioCmd, cfg: &Config) -> Res<Out> {
    match cmd {
        ScenarioCmd::List => {
            let all = scenario::scenarios()?;
            let text = all.iter().map(|s| format!("{:<20} {}\n", s.name, s.description)).collect();
            Ok(Out { text, json: json!(all.iter().map(|s| &s.name).collect::<Vec<_>>()), ok: true })
        }
        ScenarioCmd::Run { name } => {
            let reports = if name == "all" { scenario::run_all(cfg)? } else { vec![scenario::run_scenario(name, cfg)?] };
            Ok(Out {
                text: reports.iter().map(|r| r.render()).collect(),
                ok: reports.iter().all(|r| r.passed()),
                json: serde_json::to_value(&reports).expect("reports serialise"),
            })
        }
    }
}
