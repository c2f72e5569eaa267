//! `fgc`: load, transform, analyse and render framed convex projective
//! structures given in Fock-Goncharov coordinates.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fgcoords::coords::CoordVector;
use fgcoords::corpus;
use fgcoords::develop::{conic_residual, convexity_check, develop_with, emit_svg, DevelopOptions, SvgOptions};
use fgcoords::holonomy::{
    classify_end, constraint_rank, eigenvalue_exponents, is_finite_area, is_teichmuller, monodromy_of_path,
    peripheral_exponents, peripheral_monomials,
};
use fgcoords::io;
use fgcoords::poisson::{
    casimir_check, compatibility_residual, fg_bracket, fg_bracket_at, poisson_rank, AnnotatedCurvePair, Bracket,
    Coordinate, EpsilonTable, FlipPullback, Monomial, Observable, RandomObservable, TraceObservable,
};
use fgcoords::surface::{parse_slot_label, slot_label, DualPath};
use fgcoords::IdealTriangulation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "fgc", version, about = "Fock-Goncharov coordinates on punctured surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Tolerance override for numerical checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Combinatorics of a surface or coordinate file (or a builtin name).
    Info { input: String },
    /// Peripheral monomials and end types, finite-area and Teichmuller tests.
    Classify { coords: String },
    /// Exact monodromy of curves; peripheral curves when no file is given.
    Holonomy {
        coords: String,
        #[arg(long)]
        curves: Option<PathBuf>,
        /// Only this curve from the file.
        #[arg(long)]
        curve: Option<String>,
    },
    /// Flip the edge through side `t.k`.
    Flip {
        coords: String,
        #[arg(long)]
        edge: String,
        /// Keep the library numbering instead of the canonical one.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coordinates of the dual structure.
    Dualize {
        coords: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coordinates for the opposite orientation.
    Reverse {
        coords: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Develop to a given depth, check convexity and the conic fit, draw SVG.
    Develop {
        coords: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Largest depth accepted.
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
        #[arg(long, default_value_t = 0)]
        seed_triangle: usize,
        #[arg(long)]
        flag_lines: bool,
        /// SVG output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bracket of two observables: `t0`, `e0.1`, `X0`, `Y0`, or `tr:NAME`.
    Bracket {
        coords: String,
        f: String,
        g: String,
        #[arg(long)]
        curves: Option<PathBuf>,
    },
    /// Rank of the bracket and of the peripheral Casimirs.
    Rank { coords: String },
    /// Run a verification suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// Surface, coordinate file or builtin name; defaults to S11.
        #[arg(long)]
        surface: Option<String>,
        /// Annotated curve pair file for `compatibility`.
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Write the bundled surfaces, presets, curves and curve pairs.
    Examples {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Jacobi,
    FlipInvariance,
    Compatibility,
    Casimirs,
}

/// Human-readable lines plus the machine-readable block.
struct Report {
    lines: Vec<String>,
    json: Value,
    pass: bool,
}

impl Report {
    fn new(lines: Vec<String>, json: Value) -> Self {
        Report { lines, json, pass: true }
    }

    fn emit(&self, format: Format) {
        use std::io::Write;
        let block = serde_json::to_string_pretty(&self.json).expect("serializable");
        let mut out = std::io::stdout().lock();
        // a closed pipe downstream is not an error worth reporting
        let _ = (|| -> std::io::Result<()> {
            if format == Format::Text {
                for l in &self.lines {
                    writeln!(out, "{l}")?;
                }
                writeln!(out, "--- json ---")?;
            }
            writeln!(out, "{block}")
        })();
    }
}

fn q(x: &num::BigRational) -> String {
    io::format_rational(x)
}

/// `NAME:PRESET` picks a bundled preset; anything else is a file.
fn load_coords(arg: &str) -> Result<CoordVector> {
    if let Some((name, preset)) = arg.split_once(':') {
        if let Some(ns) = corpus::surfaces().into_iter().find(|s| s.name == name) {
            return corpus::presets(&ns)
                .into_iter()
                .find(|(p, _)| *p == preset)
                .map(|(_, c)| c)
                .ok_or_else(|| anyhow!("surface {name} has no preset `{preset}`"));
        }
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {arg}"))?;
    io::parse_coords(&text, path.parent()).with_context(|| format!("{arg}"))
}

fn load_surface(arg: &str) -> Result<IdealTriangulation> {
    if let Some(ns) = corpus::surfaces().into_iter().find(|s| s.name == arg) {
        return Ok(ns.tri);
    }
    if arg.contains(':') && !Path::new(arg).exists() {
        return Ok(load_coords(arg)?.triangulation().clone());
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {arg}"))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| anyhow!("{arg}: line {} column {}: {e}", e.line(), e.column()))?;
    if v.get("surface").is_some() {
        Ok(io::parse_coords(&text, path.parent()).with_context(|| arg.to_string())?.triangulation().clone())
    } else {
        io::parse_surface(&text).with_context(|| arg.to_string())
    }
}

fn load_curves(tr: &IdealTriangulation, path: &Path) -> Result<Vec<(String, DualPath)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    io::parse_curves(tr, &text).with_context(|| path.display().to_string())
}

fn write_or_print(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_info(input: &str) -> Result<Report> {
    let tr = load_surface(input)?;
    let mut lines = vec![
        format!("genus {}, punctures {}, euler characteristic {}", tr.genus(), tr.punctures(), tr.euler_characteristic()),
        format!("{} triangles, {} edges, {} oriented edges", tr.n_triangles(), tr.n_slots() / 2, tr.n_slots()),
        format!("distinct faces: {}", tr.validate_distinct_faces()),
    ];
    let mut verts = Vec::new();
    for v in 0..tr.n_vertices() {
        let link = tr.vertex_link(v)?;
        lines.push(format!("vertex {v}: valence {}", link.len()));
        verts.push(json!({ "vertex": v, "valence": link.len() }));
    }
    let self_glued: Vec<String> = tr.edges().into_iter().filter(|&s| tr.is_self_glued(s)).map(slot_label).collect();
    if !self_glued.is_empty() {
        lines.push(format!("self-glued edges: {}", self_glued.join(", ")));
    }
    let json = json!({
        "genus": tr.genus(),
        "punctures": tr.punctures(),
        "triangles": tr.n_triangles(),
        "edges": tr.n_slots() / 2,
        "distinct_faces": tr.validate_distinct_faces(),
        "vertices": verts,
        "self_glued": self_glued,
    });
    Ok(Report::new(lines, json))
}

fn cmd_classify(arg: &str) -> Result<Report> {
    let c = load_coords(arg)?;
    let tr = c.triangulation();
    let mut lines = Vec::new();
    let mut ends = Vec::new();
    for v in 0..tr.n_vertices() {
        let m = peripheral_monomials(&c, v)?;
        let e = classify_end(&m);
        lines.push(format!("vertex {v}: X = {}, Y = {}, {}", q(&m.x), q(&m.y), e.name()));
        ends.push(json!({ "vertex": v, "X": q(&m.x), "Y": q(&m.y), "end": e.name() }));
    }
    let (fa, te) = (is_finite_area(&c), is_teichmuller(&c));
    lines.push(format!("finite area: {fa}"));
    lines.push(format!("teichmuller: {te}"));
    Ok(Report::new(lines, json!({ "ends": ends, "finite_area": fa, "teichmuller": te })))
}

fn mat_json(m: &fgcoords::mat3::Mat3<num::BigRational>) -> Value {
    json!(m.0.iter().map(|r| r.iter().map(q).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn cmd_holonomy(arg: &str, curves: &Option<PathBuf>, only: &Option<String>) -> Result<Report> {
    let c = load_coords(arg)?;
    let tr = c.triangulation();
    let mut list: Vec<(String, DualPath, bool)> = match curves {
        Some(p) => load_curves(tr, p)?.into_iter().map(|(n, p)| (n, p, false)).collect(),
        None => (0..tr.n_vertices())
            .map(|v| Ok((format!("peripheral{v}"), tr.peripheral_path(v)?, true)))
            .collect::<Result<_>>()?,
    };
    if let Some(name) = only {
        list.retain(|(n, _, _)| n == name);
        if list.is_empty() {
            bail!("no curve named `{name}`");
        }
    }
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for (name, path, peripheral) in &list {
        let m = monodromy_of_path(&c, path)?;
        let (j1, j2) = m.j_invariants();
        let lower = m.is_lower_triangular();
        let upper = m.is_upper_triangular();
        lines.push(format!("{name}: {}", if path.is_empty() { "empty path".into() } else { path.to_tokens(tr) }));
        for r in &m.entries.0 {
            lines.push(format!("  [{}]", r.iter().map(q).collect::<Vec<_>>().join(", ")));
        }
        lines.push(format!("  det {}, j = ({}, {})", q(&m.det), q(&j1), q(&j2)));
        let mut entry = json!({
            "name": name,
            "path": path.to_tokens(tr),
            "matrix": mat_json(&m.entries),
            "det": q(&m.det),
            "j": [q(&j1), q(&j2)],
            "lower_triangular": lower,
            "upper_triangular": upper,
        });
        if *peripheral || lower || upper {
            let cubes = m.diagonal_cubes();
            lines.push(format!(
                "  triangular ({}), diagonal cubes {}",
                if lower && upper { "diagonal" } else if lower { "lower" } else if upper { "upper" } else { "no" },
                cubes.iter().map(q).collect::<Vec<_>>().join(", ")
            ));
            entry["diagonal_cubes"] = json!(cubes.iter().map(q).collect::<Vec<_>>());
        }
        if *peripheral {
            let v: usize = name.trim_start_matches("peripheral").parse().expect("own name");
            let (a, b, cc) = eigenvalue_exponents(&peripheral_monomials(&c, v)?);
            entry["eigenvalue_cubes"] = json!([q(&a), q(&b), q(&cc)]);
        }
        out.push(entry);
    }
    Ok(Report::new(lines, json!({ "curves": out })))
}

fn cmd_flip(arg: &str, edge: &str, raw: bool, out: &Option<PathBuf>, format: Format) -> Result<()> {
    let c = load_coords(arg)?;
    let s = parse_slot_label(edge)
        .filter(|&s| s < c.triangulation().n_slots())
        .ok_or_else(|| anyhow!("`--edge`: bad side label `{edge}`"))?;
    let (f, r) = c.flip(s)?;
    let (f, back) = if raw {
        (f, r.d13)
    } else {
        let rl = f.canonical_relabeling();
        (f.relabel(&rl), rl.map[r.d13])
    };
    write_or_print(&io::serialize_coords(&f), out)?;
    if out.is_some() {
        let rep = Report::new(
            vec![format!("flipped {edge}; flip {} to undo", slot_label(back))],
            json!({ "flipped": edge, "back_edge": slot_label(back) }),
        );
        rep.emit(format);
    } else {
        eprintln!("flip {} to undo", slot_label(back));
    }
    Ok(())
}

fn cmd_transform(arg: &str, out: &Option<PathBuf>, dual: bool) -> Result<()> {
    let c = load_coords(arg)?;
    let d = if dual { c.dualize()? } else { c.reverse_orientation() };
    write_or_print(&io::serialize_coords(&d), out)
}

fn cmd_develop(
    arg: &str,
    depth: usize,
    max_depth: usize,
    seed_triangle: usize,
    flag_lines: bool,
    out: &Option<PathBuf>,
) -> Result<Report> {
    let c = load_coords(arg)?;
    let opts = DevelopOptions { max_depth, seed_triangle, ..Default::default() };
    let t = develop_with(&c, depth, &opts)?;
    let convex = convexity_check(&t)?;
    let conic = conic_residual(&t).ok();
    let mut lines = vec![
        format!("depth {depth}: {} tiles, {} vertices", t.tiles.len(), t.used_vertex_ids().len()),
        format!("ratios reproduced: {}", t.ratios_match(&c)),
        format!("convex: {convex}"),
    ];
    match conic {
        Some(r) => lines.push(format!("conic residual: {r:.3e}")),
        None => lines.push("conic residual: needs at least 6 vertices".into()),
    }
    if let Some(p) = out {
        let (svg, warnings) = emit_svg(&t, &SvgOptions { draw_flag_lines: flag_lines, ..Default::default() });
        for w in &warnings {
            lines.push(format!("warning: {w}"));
        }
        std::fs::write(p, svg).with_context(|| format!("cannot write {}", p.display()))?;
        lines.push(format!("wrote {}", p.display()));
    }
    let json = json!({
        "depth": depth,
        "tiles": t.tiles.len(),
        "vertices": t.used_vertex_ids().len(),
        "convex": convex,
        "conic_residual": conic,
    });
    Ok(Report::new(lines, json))
}

enum Obs {
    Coord(usize),
    Mono(Vec<i64>),
    Trace(TraceObservable),
}

impl Observable for Obs {
    fn eval<F: fgcoords::field::Real>(&self, q: &[F]) -> F {
        match self {
            Obs::Coord(i) => Coordinate(*i).eval(q),
            Obs::Mono(a) => Monomial(a.clone()).eval(q),
            Obs::Trace(t) => t.eval(q),
        }
    }
}

fn parse_obs(c: &CoordVector, curves: &[(String, DualPath)], s: &str) -> Result<Obs> {
    let tr = c.triangulation();
    let n = tr.n_triangles();
    if let Some(name) = s.strip_prefix("tr:") {
        let p = curves.iter().find(|(k, _)| k == name).ok_or_else(|| anyhow!("no curve named `{name}`"))?;
        return Ok(Obs::Trace(TraceObservable::new(tr, &p.1)?));
    }
    if let Some(t) = s.strip_prefix('t').and_then(|x| x.parse::<usize>().ok()) {
        if t < n {
            return Ok(Obs::Coord(t));
        }
    }
    if let Some(e) = s.strip_prefix('e').and_then(parse_slot_label) {
        if e < tr.n_slots() {
            return Ok(Obs::Coord(n + e));
        }
    }
    for (prefix, pick_y) in [('X', false), ('Y', true)] {
        if let Some(v) = s.strip_prefix(prefix).and_then(|x| x.parse::<usize>().ok()) {
            if v < tr.n_vertices() {
                let (x, y) = peripheral_exponents(tr, v)?;
                return Ok(Obs::Mono(if pick_y { y } else { x }));
            }
        }
    }
    bail!("unknown observable `{s}`; use t<i>, e<t.k>, X<v>, Y<v> or tr:<curve>")
}

fn cmd_bracket(arg: &str, f: &str, g: &str, curves: &Option<PathBuf>) -> Result<Report> {
    let c = load_coords(arg)?;
    let tr = c.triangulation();
    let list = match curves {
        Some(p) => load_curves(tr, p)?,
        None => Vec::new(),
    };
    let eps = EpsilonTable::amalgamated(tr);
    let (a, b) = (parse_obs(&c, &list, f)?, parse_obs(&c, &list, g)?);
    let value = fg_bracket(&eps, &a, &b, &c);
    let mut lines = vec![format!("{{{f}, {g}}} = {value:.12e}")];
    let mut json = json!({ "f": f, "g": g, "value": value });
    if let (Obs::Coord(i), Obs::Coord(j)) = (&a, &b) {
        let exact = eps.coordinate_bracket(*i, *j, c.values());
        lines.push(format!("exact: {}", q(&exact)));
        json["exact"] = json!(q(&exact));
    }
    Ok(Report::new(lines, json))
}

fn cmd_rank(arg: &str) -> Result<Report> {
    let c = load_coords(arg)?;
    let tr = c.triangulation();
    let r = poisson_rank(&c);
    let mut rows = Vec::new();
    for v in 0..tr.n_vertices() {
        let (x, y) = peripheral_exponents(tr, v)?;
        rows.push(x);
        rows.push(y);
    }
    let cas = constraint_rank(&rows);
    let lines = vec![
        format!("coordinates: {}", c.len()),
        format!("bracket rank: {r}"),
        format!("independent peripheral Casimirs: {cas}"),
    ];
    Ok(Report::new(lines, json!({ "coordinates": c.len(), "rank": r, "casimirs": cas })))
}

fn check_jacobi(tr: &IdealTriangulation, samples: usize, seed: u64, tol: f64) -> Result<Report> {
    let eps = EpsilonTable::amalgamated(tr);
    let n = eps.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut anti, mut jac): (f64, f64) = (0.0, 0.0);
    for _ in 0..samples {
        let q = CoordVector::random(tr.clone(), &mut rng).to_f64();
        let f = RandomObservable::sample(&mut rng, n);
        let g = RandomObservable::sample(&mut rng, n);
        let h = RandomObservable::sample(&mut rng, n);
        anti = anti.max((fg_bracket_at(&eps, &f, &g, &q) + fg_bracket_at(&eps, &g, &f, &q)).abs());
        let br = |a: &RandomObservable, b: &RandomObservable, c: &RandomObservable| {
            fg_bracket_at(&eps, a, &Bracket { eps: &eps, f: b, g: c }, &q)
        };
        let terms = [br(&f, &g, &h), br(&g, &h, &f), br(&h, &f, &g)];
        let scale = 1.0 + terms.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        jac = jac.max(terms.iter().sum::<f64>().abs() / scale);
    }
    let pass = anti < tol && jac < tol;
    let mut rep = Report::new(
        vec![
            format!("{samples} random triples, seed {seed}"),
            format!("max antisymmetry residual {anti:.3e}"),
            format!("max Jacobi residual {jac:.3e}"),
        ],
        json!({ "suite": "jacobi", "samples": samples, "seed": seed, "antisymmetry": anti, "jacobi": jac, "tol": tol }),
    );
    rep.pass = pass;
    Ok(rep)
}

fn check_flip_invariance(tr: &IdealTriangulation, samples: usize, seed: u64, tol: f64) -> Result<Report> {
    let eps = EpsilonTable::amalgamated(tr);
    let n = eps.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<usize> = tr.edges().into_iter().filter(|&e| !tr.is_self_glued(e)).collect();
    if edges.is_empty() {
        bail!("no flippable edge");
    }
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let c = CoordVector::random(tr.clone(), &mut rng);
        let (f, rl) = c.flip(edges[i % edges.len()])?;
        let eps2 = EpsilonTable::amalgamated(f.triangulation());
        let a = RandomObservable::sample(&mut rng, n);
        let b = RandomObservable::sample(&mut rng, n);
        let after = fg_bracket(&eps2, &a, &b, &f);
        let pa = FlipPullback { old: tr.clone(), relabel: rl.clone(), obs: a };
        let pb = FlipPullback { old: tr.clone(), relabel: rl, obs: b };
        let before = fg_bracket(&eps, &pa, &pb, &c);
        worst = worst.max((after - before).abs() / (1.0 + after.abs()));
    }
    let mut rep = Report::new(
        vec![format!("{samples} samples, seed {seed}"), format!("max relative flip residual {worst:.3e}")],
        json!({ "suite": "flip-invariance", "samples": samples, "seed": seed, "residual": worst, "tol": tol }),
    );
    rep.pass = worst < tol;
    Ok(rep)
}

fn check_compatibility(
    tr: &IdealTriangulation,
    pair: &Option<PathBuf>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Report> {
    let pairs: Vec<(String, AnnotatedCurvePair)> = match pair {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            vec![(p.display().to_string(), io::parse_pair(tr, &text).with_context(|| p.display().to_string())?)]
        }
        None => {
            if *tr != corpus::s11().tri {
                bail!("bundled curve pairs live on S11; pass --pair for other surfaces");
            }
            corpus::s11_pairs().into_iter().map(|(n, p)| (n.to_string(), p)).collect()
        }
    };
    let eps = EpsilonTable::amalgamated(tr);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = vec![format!("{samples} samples per pair, seed {seed}")];
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, p) in &pairs {
        let mut m: f64 = 0.0;
        for _ in 0..samples {
            let c = CoordVector::random(tr.clone(), &mut rng);
            m = m.max(compatibility_residual(&eps, p, &c)?);
        }
        worst = worst.max(m);
        lines.push(format!("{name}: {} intersections, max residual {m:.3e}", p.intersections.len()));
        out.push(json!({ "pair": name, "intersections": p.intersections.len(), "residual": m }));
    }
    let mut rep =
        Report::new(lines, json!({ "suite": "compatibility", "seed": seed, "pairs": out, "residual": worst, "tol": tol }));
    rep.pass = worst < tol;
    Ok(rep)
}

fn check_casimirs(tr: &IdealTriangulation) -> Result<Report> {
    let eps = EpsilonTable::amalgamated(tr);
    let mut lines = Vec::new();
    let mut out = Vec::new();
    let mut pass = true;
    for v in 0..tr.n_vertices() {
        let (x, y) = peripheral_exponents(tr, v)?;
        let (cx, cy) = (casimir_check(&eps, &x), casimir_check(&eps, &y));
        pass &= cx && cy;
        lines.push(format!("vertex {v}: X Casimir {cx}, Y Casimir {cy}"));
        out.push(json!({ "vertex": v, "X": cx, "Y": cy }));
    }
    let mut rep = Report::new(lines, json!({ "suite": "casimirs", "vertices": out }));
    rep.pass = pass;
    Ok(rep)
}

fn cmd_examples(dir: &Path) -> Result<Report> {
    let mut written = Vec::new();
    let mut put = |rel: String, text: String| -> Result<()> {
        let p = dir.join(&rel);
        if let Some(parent) = p.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(&p, text).with_context(|| format!("cannot write {}", p.display()))?;
        written.push(rel);
        Ok(())
    };
    for ns in corpus::surfaces() {
        let lower = ns.name.to_lowercase();
        put(format!("surfaces/{lower}.json"), io::serialize_surface(&ns.tri))?;
        for (preset, c) in corpus::presets(&ns) {
            put(format!("coords/{lower}-{preset}.json"), io::serialize_coords(&c))?;
        }
    }
    let s11 = corpus::s11();
    let curves: Vec<(String, DualPath)> = corpus::s11_curves().into_iter().map(|(n, p)| (n.to_string(), p)).collect();
    put("curves/s11.json".into(), io::serialize_curves(&s11.tri, &curves))?;
    for (name, p) in corpus::s11_pairs() {
        put(format!("pairs/s11-{name}.json"), io::serialize_pair(&s11.tri, &p))?;
    }
    let lines = written.iter().map(|w| format!("wrote {w}")).collect();
    Ok(Report::new(lines, json!({ "written": written })))
}

fn run(cli: &Cli) -> Result<bool> {
    let report = match &cli.command {
        Command::Info { input } => cmd_info(input)?,
        Command::Classify { coords } => cmd_classify(coords)?,
        Command::Holonomy { coords, curves, curve } => cmd_holonomy(coords, curves, curve)?,
        Command::Flip { coords, edge, raw, out } => {
            cmd_flip(coords, edge, *raw, out, cli.format)?;
            return Ok(true);
        }
        Command::Dualize { coords, out } => {
            cmd_transform(coords, out, true)?;
            return Ok(true);
        }
        Command::Reverse { coords, out } => {
            cmd_transform(coords, out, false)?;
            return Ok(true);
        }
        Command::Develop { coords, depth, max_depth, seed_triangle, flag_lines, out } => {
            cmd_develop(coords, *depth, *max_depth, *seed_triangle, *flag_lines, out)?
        }
        Command::Bracket { coords, f, g, curves } => cmd_bracket(coords, f, g, curves)?,
        Command::Rank { coords } => cmd_rank(coords)?,
        Command::Check { suite, surface, pair, samples } => {
            let tr = load_surface(surface.as_deref().unwrap_or("S11"))?;
            if let Some(t) = cli.tol {
                if !(t > 0.0) {
                    bail!("`--tol` must be positive");
                }
            }
            let mut rep = match suite {
                Suite::Jacobi => check_jacobi(&tr, *samples, cli.seed, cli.tol.unwrap_or(1e-8))?,
                Suite::FlipInvariance => check_flip_invariance(&tr, *samples, cli.seed, cli.tol.unwrap_or(1e-9))?,
                Suite::Compatibility => check_compatibility(&tr, pair, (*samples).min(10), cli.seed, cli.tol.unwrap_or(1e-8))?,
                Suite::Casimirs => check_casimirs(&tr)?,
            };
            rep.lines.push(if rep.pass { "PASS".into() } else { "FAIL".into() });
            rep.json["pass"] = json!(rep.pass);
            rep
        }
        Command::Examples { out } => cmd_examples(out)?,
    };
    report.emit(cli.format);
    Ok(report.pass)
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
