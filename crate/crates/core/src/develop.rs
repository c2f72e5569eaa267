//! A finite piece of the developing map: the tessellation of the convex
//! domain by flag triangles, grown breadth-first from a seed triangle.

use crate::coords::CoordVector;
use crate::error::{Error, Result};
use crate::field::to_f64;
use crate::flags::{
    extend_unchecked, map_between_triangles, quadruple_ratio, reconstruct_triangle, triple_ratio, Flag, ProjLine,
    ProjPoint,
};
use crate::mat3::{cross, det3, dot, Mat3};
use crate::surface::{slot, tri, DualPath};
use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

type Q = BigRational;

/// Bounds on the exact computation.
#[derive(Clone, Debug)]
pub struct DevelopOptions {
    pub max_depth: usize,
    pub max_bits: u64,
    /// Surface triangle used as the seed tile.
    pub seed_triangle: usize,
}

impl Default for DevelopOptions {
    fn default() -> Self {
        DevelopOptions { max_depth: 6, max_bits: 4096, seed_triangle: 0 }
    }
}

/// A lifted triangle with flags at its three corners.
#[derive(Clone, Debug)]
pub struct Tile {
    /// Underlying surface triangle.
    pub triangle: usize,
    /// Flags at corners 0, 1, 2 of the surface triangle.
    pub flags: [Flag; 3],
    /// Ids of the developed vertices at corners 0, 1, 2.
    pub vertex_ids: [usize; 3],
    pub depth: usize,
}

/// Two tiles glued along a lifted edge: side `side_a` of tile `a` is
/// side `side_b` of tile `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Adjacency {
    pub a: usize,
    pub side_a: usize,
    pub b: usize,
    pub side_b: usize,
}

#[derive(Clone, Debug)]
pub struct Tessellation {
    pub tiles: Vec<Tile>,
    pub adjacency: Vec<Adjacency>,
    /// Developed ideal vertices by id, as primitive integer triples with z > 0.
    pub points: Vec<[Q; 3]>,
}

fn primitive(v: &[Q; 3], positive_last: bool) -> [Q; 3] {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.clone();
    }
    let lead = if positive_last {
        ints[2].clone()
    } else {
        ints.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(BigInt::one)
    };
    if lead.is_negative() {
        g = -g;
    }
    let r: Vec<Q> = ints.into_iter().map(|x| Q::from_integer(x / g.clone())).collect();
    [r[0].clone(), r[1].clone(), r[2].clone()]
}

fn bits(v: &[Q; 3]) -> u64 {
    v.iter().map(|x| x.numer().bits().max(x.denom().bits())).max().unwrap_or(0)
}

fn normalize(f: Flag, max_bits: u64) -> Result<Flag> {
    if f.point.0[2].is_zero() {
        return Err(Error::PatchOverflow);
    }
    let p = primitive(&f.point.0, true);
    let l = primitive(&f.line.0, false);
    if bits(&p).max(bits(&l)) > max_bits {
        return Err(Error::DepthLimitExceeded(format!("coordinates exceed {max_bits} bits")));
    }
    Ok(Flag { point: ProjPoint(p), line: ProjLine(l) })
}

/// Flag across side `k` of a tile, for the neighbouring surface triangle.
fn neighbour_flags(c: &CoordVector, tile: &Tile, k: usize, max_bits: u64) -> Result<(usize, usize, [Flag; 3])> {
    let tr = c.triangulation();
    let s = slot(tile.triangle, k);
    let p = tr.partner(s);
    let (tail, head, opp) = (&tile.flags[k], &tile.flags[(k + 1) % 3], &tile.flags[(k + 2) % 3]);
    let new = extend_unchecked(tail, head, opp, c.edge(s), c.edge(p), c.triangle(tri(p)))?;
    let new = normalize(new, max_bits)?;
    let kp = p % 3;
    let mut fl: [Option<Flag>; 3] = [None, None, None];
    fl[kp] = Some(head.clone());
    fl[(kp + 1) % 3] = Some(tail.clone());
    fl[(kp + 2) % 3] = Some(new);
    Ok((tri(p), kp, fl.map(|x| x.unwrap())))
}

/// Breadth-first development to the given depth.
pub fn develop(c: &CoordVector, depth: usize) -> Result<Tessellation> {
    develop_with(c, depth, &DevelopOptions::default())
}

pub fn develop_with(c: &CoordVector, depth: usize, opts: &DevelopOptions) -> Result<Tessellation> {
    if depth > opts.max_depth {
        return Err(Error::DepthLimitExceeded(format!(
            "requested depth {depth} is above the cap {}; raise it explicitly to continue",
            opts.max_depth
        )));
    }
    let tr = c.triangulation();
    let t0 = opts.seed_triangle;
    if t0 >= tr.n_triangles() {
        return Err(Error::InvalidIndex(t0));
    }
    let seed = reconstruct_triangle(c.triangle(t0))?;
    let mut tess = Tessellation { tiles: Vec::new(), adjacency: Vec::new(), points: Vec::new() };
    for f in &seed {
        tess.points.push(f.point.0.clone());
    }
    tess.tiles.push(Tile { triangle: t0, flags: seed, vertex_ids: [0, 1, 2], depth: 0 });
    // (tile, side it was entered through)
    let mut queue = VecDeque::from([(0usize, None::<usize>)]);
    while let Some((ti, entered)) = queue.pop_front() {
        if tess.tiles[ti].depth == depth {
            continue;
        }
        for k in 0..3 {
            if Some(k) == entered {
                continue;
            }
            let tile = tess.tiles[ti].clone();
            let (nt, kp, flags) = neighbour_flags(c, &tile, k, opts.max_bits)?;
            let id = tess.points.len();
            tess.points.push(flags[(kp + 2) % 3].point.0.clone());
            let mut ids = [0; 3];
            ids[kp] = tile.vertex_ids[(k + 1) % 3];
            ids[(kp + 1) % 3] = tile.vertex_ids[k];
            ids[(kp + 2) % 3] = id;
            let ni = tess.tiles.len();
            tess.tiles.push(Tile { triangle: nt, flags, vertex_ids: ids, depth: tile.depth + 1 });
            tess.adjacency.push(Adjacency { a: ti, side_a: k, b: ni, side_b: kp });
            queue.push_back((ni, Some(kp)));
        }
    }
    Ok(tess)
}

impl Tessellation {
    /// Recompute every triple ratio and both edge ratios on every interior
    /// edge, and compare with `c`.
    pub fn ratios_match(&self, c: &CoordVector) -> bool {
        let tr = c.triangulation();
        for t in &self.tiles {
            match triple_ratio(&t.flags[0], &t.flags[1], &t.flags[2]) {
                Ok(v) if &v == c.triangle(t.triangle) => {}
                _ => return false,
            }
        }
        for a in &self.adjacency {
            let (ta, tb) = (&self.tiles[a.a], &self.tiles[a.b]);
            let s = slot(ta.triangle, a.side_a);
            let p = tr.partner(s);
            if slot(tb.triangle, a.side_b) != p {
                return false;
            }
            let ka = a.side_a;
            let kb = a.side_b;
            // e(s) = quad(tail, far vertex across s, head, opposite in own tile)
            let es = quadruple_ratio(&ta.flags[ka], &tb.flags[(kb + 2) % 3], &ta.flags[(ka + 1) % 3], &ta.flags[(ka + 2) % 3]);
            let ep = quadruple_ratio(&tb.flags[kb], &ta.flags[(ka + 2) % 3], &tb.flags[(kb + 1) % 3], &tb.flags[(kb + 2) % 3]);
            match (es, ep) {
                (Ok(x), Ok(y)) if &x == c.edge(s) && &y == c.edge(p) => {}
                _ => return false,
            }
        }
        true
    }

    /// Tiles at depth at most `d`.
    pub fn truncated(&self, d: usize) -> Tessellation {
        let keep: Vec<usize> = (0..self.tiles.len()).filter(|&i| self.tiles[i].depth <= d).collect();
        let mut index = HashMap::new();
        for (new, &old) in keep.iter().enumerate() {
            index.insert(old, new);
        }
        Tessellation {
            tiles: keep.iter().map(|&i| self.tiles[i].clone()).collect(),
            adjacency: self
                .adjacency
                .iter()
                .filter_map(|a| Some(Adjacency { a: *index.get(&a.a)?, side_a: a.side_a, b: *index.get(&a.b)?, side_b: a.side_b }))
                .collect(),
            points: self.points.clone(),
        }
    }

    /// Distinct developed vertices actually used by tiles.
    pub fn used_vertex_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.tiles.iter().flat_map(|t| t.vertex_ids).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Affine coordinates of a developed vertex in the patch z = 1.
    pub fn affine(&self, id: usize) -> (f64, f64) {
        let p = &self.points[id];
        (to_f64(&(p[0].clone() / p[2].clone())), to_f64(&(p[1].clone() / p[2].clone())))
    }
}

/// Convexity of the developed region: every tile positively oriented,
/// neighbours on opposite sides of their common edge, and the outer
/// boundary a strictly convex polygon winding once.
pub fn convexity_check(t: &Tessellation) -> Result<bool> {
    for p in &t.points {
        if !p[2].is_positive() {
            return Err(Error::PatchOverflow);
        }
    }
    let pt = |id: usize| &t.points[id];
    for tile in &t.tiles {
        let [a, b, c] = tile.vertex_ids;
        if !det3(pt(a), pt(b), pt(c)).is_positive() {
            return Ok(false);
        }
    }
    let mut interior = std::collections::HashSet::new();
    for adj in &t.adjacency {
        let ta = &t.tiles[adj.a];
        let tb = &t.tiles[adj.b];
        let u = ta.vertex_ids[adj.side_a];
        let w = ta.vertex_ids[(adj.side_a + 1) % 3];
        let line = cross(pt(u), pt(w));
        let x = dot(&line, pt(ta.vertex_ids[(adj.side_a + 2) % 3]));
        let y = dot(&line, pt(tb.vertex_ids[(adj.side_b + 2) % 3]));
        if !(x.is_positive() && y.is_negative()) {
            return Ok(false);
        }
        interior.insert((adj.a, adj.side_a));
        interior.insert((adj.b, adj.side_b));
    }
    // boundary edges in tile orientation: id -> next id
    let mut succ: HashMap<usize, usize> = HashMap::new();
    for (i, tile) in t.tiles.iter().enumerate() {
        for k in 0..3 {
            if !interior.contains(&(i, k)) {
                let (u, w) = (tile.vertex_ids[k], tile.vertex_ids[(k + 1) % 3]);
                if succ.insert(u, w).is_some() {
                    return Ok(false);
                }
            }
        }
    }
    let start = *succ.keys().min().expect("nonempty boundary");
    let mut cycle = vec![start];
    let mut cur = succ[&start];
    while cur != start {
        if cycle.len() > succ.len() {
            return Ok(false);
        }
        cycle.push(cur);
        cur = match succ.get(&cur) {
            Some(&n) => n,
            None => return Ok(false),
        };
    }
    if cycle.len() != succ.len() {
        return Ok(false);
    }
    let m = cycle.len();
    let mut turning = 0.0;
    for i in 0..m {
        let (a, b, c) = (cycle[i], cycle[(i + 1) % m], cycle[(i + 2) % m]);
        if !det3(pt(a), pt(b), pt(c)).is_positive() {
            return Ok(false);
        }
        let (pa, pb, pc) = (t.affine(a), t.affine(b), t.affine(c));
        let d1 = (pb.0 - pa.0, pb.1 - pa.1);
        let d2 = (pc.0 - pb.0, pc.1 - pb.1);
        turning += (d1.0 * d2.1 - d1.1 * d2.0).atan2(d1.0 * d2.0 + d1.1 * d2.1);
    }
    Ok((turning - std::f64::consts::TAU).abs() < 1e-6)
}

/// Scale-free residual of the best conic through all developed vertices:
/// ratio of smallest to largest singular value of the row-normalised
/// Veronese matrix.
pub fn conic_residual(t: &Tessellation) -> Result<f64> {
    let ids = t.used_vertex_ids();
    if ids.len() < 6 {
        return Err(Error::TooFewVertices(ids.len()));
    }
    let rows: Vec<[f64; 6]> = ids
        .iter()
        .map(|&i| {
            let (x, y) = t.affine(i);
            let r = [x * x, x * y, y * y, x, y, 1.0];
            let n = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            r.map(|v| v / n)
        })
        .collect();
    let m = nalgebra::DMatrix::from_fn(rows.len(), 6, |i, j| rows[i][j]);
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    Ok(if max == 0.0 { 0.0 } else { min / max })
}

/// Drawing options for [`emit_svg`].
#[derive(Clone, Debug)]
pub struct SvgOptions {
    pub width: f64,
    pub height: f64,
    pub stroke_width: f64,
    pub fill: String,
    pub stroke: String,
    /// Also draw the circumscribed triangle cut out by each tile's lines.
    pub draw_flag_lines: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 800.0,
            height: 800.0,
            stroke_width: 1.0,
            fill: "#dde8f5".into(),
            stroke: "#1f3b5c".into(),
            draw_flag_lines: false,
        }
    }
}

/// SVG document, one polygon per tile in tile order, plus warnings.
pub fn emit_svg(t: &Tessellation, opts: &SvgOptions) -> (String, Vec<String>) {
    let mut warnings = Vec::new();
    let mut o = opts.clone();
    if !(o.width > 0.0 && o.height > 0.0 && o.width.is_finite() && o.height.is_finite()) {
        warnings.push(format!("viewport {}x{} is degenerate; using 800x800", o.width, o.height));
        o.width = 800.0;
        o.height = 800.0;
    }
    let ids = t.used_vertex_ids();
    let pts: Vec<(f64, f64)> = ids.iter().map(|&i| t.affine(i)).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let margin = 0.05 * o.width.min(o.height);
    let scale = (o.width.min(o.height) - 2.0 * margin) / span;
    let map = |x: f64, y: f64| (margin + (x - x0) * scale, o.height - margin - (y - y0) * scale);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = o.width,
        h = o.height
    );
    let _ = writeln!(
        s,
        r#"<g fill="{}" stroke="{}" stroke-width="{}" stroke-linejoin="round">"#,
        o.fill, o.stroke, o.stroke_width
    );
    for tile in &t.tiles {
        let coords: Vec<String> = tile
            .vertex_ids
            .iter()
            .map(|&i| {
                let (x, y) = t.affine(i);
                let (px, py) = map(x, y);
                format!("{px:.4},{py:.4}")
            })
            .collect();
        let _ = writeln!(s, r#"<polygon data-triangle="{}" data-depth="{}" points="{}"/>"#, tile.triangle, tile.depth, coords.join(" "));
    }
    let _ = writeln!(s, "</g>");
    if o.draw_flag_lines {
        let _ = writeln!(s, r#"<g fill="none" stroke="{}" stroke-width="{}" stroke-opacity="0.4">"#, o.stroke, o.stroke_width * 0.5);
        for tile in &t.tiles {
            let l = |i: usize| &tile.flags[i].line.0;
            let corners = [cross(l(0), l(1)), cross(l(1), l(2)), cross(l(2), l(0))];
            if corners.iter().any(|c| c[2].is_zero()) {
                continue;
            }
            let d: Vec<String> = corners
                .iter()
                .map(|c| {
                    let (px, py) = map(to_f64(&(c[0].clone() / c[2].clone())), to_f64(&(c[1].clone() / c[2].clone())));
                    format!("{px:.4},{py:.4}")
                })
                .collect();
            let _ = writeln!(s, r#"<path d="M {} L {} L {} Z"/>"#, d[0], d[1], d[2]);
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</svg>");
    (s, warnings)
}

/// Holonomy of a closed path obtained by developing along it: the
/// projective map from the starting tile to the tile reached after going
/// once around.
pub fn develop_along_path(c: &CoordVector, path: &DualPath) -> Result<Mat3<Q>> {
    if !path.closed || path.is_empty() {
        return Ok(Mat3::identity());
    }
    let t0 = tri(path.exits[0]);
    let start = reconstruct_triangle(c.triangle(t0))?;
    let mut tile = Tile { triangle: t0, flags: start.clone(), vertex_ids: [0, 1, 2], depth: 0 };
    for &s in &path.exits {
        if tri(s) != tile.triangle {
            return Err(Error::InconsistentPath("path leaves the current triangle".into()));
        }
        let (nt, _, flags) = neighbour_flags(c, &tile, s % 3, u64::MAX)?;
        tile = Tile { triangle: nt, flags, vertex_ids: [0, 1, 2], depth: 0 };
    }
    map_between_triangles(&start, &tile.flags).ok_or(Error::DegenerateConfiguration)
}
