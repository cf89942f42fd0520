//! Serialization: JSON for every domain type plus OFF import/export for
//! 3-polytopes.  Writers print floats with 17 significant digits in a fixed
//! key order, so identical values serialize to identical bytes and every
//! writer's output round-trips through the matching reader bit-compatibly.

use serde::Deserialize;

use crate::decomposition::HomogeneousDecomposition;
use crate::error::{GeomError, GeomResult};
use crate::geom::vector::cross3;
use crate::geom::{complement_basis, Polytope, Vector};
use crate::harness::SuiteReport;
use crate::measures::{Arc3, ArcMeasure3D, DiscreteSphereMeasure, SphereAtom};
use crate::operators::{Kernel, KernelPair, Zonotope};
use crate::solver::SolveReport;

/// Formats a finite float with 17 significant digits (`d.16e±x`), enough to
/// round-trip any f64 exactly and stable across runs.
pub fn fmt_float(x: f64) -> String {
    assert!(x.is_finite(), "refusing to serialize non-finite float");
    format!("{x:.16e}")
}

fn push_vector(out: &mut String, v: &Vector) {
    out.push('[');
    for (i, c) in v.coords().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&fmt_float(*c));
    }
    out.push(']');
}

fn parse_error(context: &str, err: impl std::fmt::Display) -> GeomError {
    GeomError::Parse(format!("{context}: {err}"))
}

fn vector_from(dim: usize, coords: &[f64], what: &str) -> GeomResult<Vector> {
    if coords.len() != dim {
        return Err(GeomError::Parse(format!(
            "{what} has {} coordinates, expected {dim}",
            coords.len()
        )));
    }
    Vector::new(coords)
}

// ---------------------------------------------------------------------------
// Polytope JSON: {"dim": n, "vertices": [[x, ...], ...]}
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct PolytopeDto {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

pub fn polytope_to_json(p: &Polytope) -> String {
    let mut out = String::new();
    out.push_str("{\"dim\":");
    out.push_str(&p.ambient().to_string());
    out.push_str(",\"vertices\":[");
    for (i, v) in p.vertices().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        push_vector(&mut out, v);
    }
    out.push_str("]}");
    out
}

/// Reads a polytope; facets are always recomputed by a fresh hull.
pub fn polytope_from_json(text: &str) -> GeomResult<Polytope> {
    let dto: PolytopeDto =
        serde_json::from_str(text).map_err(|e| parse_error("polytope JSON", e))?;
    if dto.vertices.is_empty() {
        return Err(GeomError::Parse("polytope JSON has no vertices".into()));
    }
    let vertices = dto
        .vertices
        .iter()
        .map(|c| vector_from(dto.dim, c, "vertex"))
        .collect::<GeomResult<Vec<_>>>()?;
    Polytope::hull(&vertices)
}

// ---------------------------------------------------------------------------
// Measure JSON: {"dim": n, "atoms": [{"u": [...], "w": x}, ...]}
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct AtomDto {
    u: Vec<f64>,
    w: f64,
}

#[derive(Deserialize)]
struct MeasureDto {
    dim: usize,
    atoms: Vec<AtomDto>,
}

pub fn measure_to_json(m: &DiscreteSphereMeasure) -> String {
    let mut out = String::new();
    out.push_str("{\"dim\":");
    out.push_str(&m.dim().to_string());
    out.push_str(",\"atoms\":[");
    for (i, atom) in m.atoms().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"u\":");
        push_vector(&mut out, &atom.direction);
        out.push_str(",\"w\":");
        out.push_str(&fmt_float(atom.weight));
        out.push('}');
    }
    out.push_str("]}");
    out
}

/// Reads a measure.  Already-canonical atoms (unit directions, positive
/// weights) are kept bit-for-bit; anything else goes through the
/// canonicalizing constructor, which normalizes and merges.
pub fn measure_from_json(text: &str) -> GeomResult<DiscreteSphereMeasure> {
    let dto: MeasureDto =
        serde_json::from_str(text).map_err(|e| parse_error("measure JSON", e))?;
    let raw = dto
        .atoms
        .iter()
        .map(|a| Ok((vector_from(dto.dim, &a.u, "atom direction")?, a.w)))
        .collect::<GeomResult<Vec<_>>>()?;
    let verbatim = raw
        .iter()
        .map(|&(direction, weight)| SphereAtom { direction, weight })
        .collect();
    DiscreteSphereMeasure::from_canonical_atoms(dto.dim, verbatim)
        .or_else(|_| DiscreteSphereMeasure::new(dto.dim, &raw))
}

// ---------------------------------------------------------------------------
// Arc measure JSON: {"arcs": [{"a": [...], "b": [...], "d": x}, ...]}
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ArcDto {
    a: Vec<f64>,
    b: Vec<f64>,
    d: f64,
}

#[derive(Deserialize)]
struct ArcsDto {
    arcs: Vec<ArcDto>,
}

pub fn arc_measure_to_json(m: &ArcMeasure3D) -> String {
    let mut out = String::new();
    out.push_str("{\"arcs\":[");
    for (i, arc) in m.arcs().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"a\":");
        push_vector(&mut out, &arc.start);
        out.push_str(",\"b\":");
        push_vector(&mut out, &arc.end);
        out.push_str(",\"d\":");
        out.push_str(&fmt_float(arc.density));
        out.push('}');
    }
    out.push_str("]}");
    out
}

/// Reads an arc measure; canonical arcs (unit endpoints) reload
/// bit-for-bit, others are normalized by the constructor.
pub fn arc_measure_from_json(text: &str) -> GeomResult<ArcMeasure3D> {
    let dto: ArcsDto =
        serde_json::from_str(text).map_err(|e| parse_error("arc measure JSON", e))?;
    let arcs = dto
        .arcs
        .iter()
        .map(|a| {
            Ok(Arc3 {
                start: vector_from(3, &a.a, "arc start")?,
                end: vector_from(3, &a.b, "arc end")?,
                density: a.d,
            })
        })
        .collect::<GeomResult<Vec<_>>>()?;
    ArcMeasure3D::from_canonical_arcs(arcs.clone()).or_else(|_| ArcMeasure3D::new(arcs))
}

// ---------------------------------------------------------------------------
// Zonotope JSON: {"dim": n, "center": [...], "generators": [[...], ...]}
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ZonotopeDto {
    dim: usize,
    center: Option<Vec<f64>>,
    generators: Vec<Vec<f64>>,
}

pub fn zonotope_to_json(z: &Zonotope) -> String {
    let mut out = String::new();
    out.push_str("{\"dim\":");
    out.push_str(&z.dim().to_string());
    out.push_str(",\"center\":");
    push_vector(&mut out, z.center());
    out.push_str(",\"generators\":[");
    for (i, g) in z.generators().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        push_vector(&mut out, g);
    }
    out.push_str("]}");
    out
}

/// Reads a zonotope; a missing `center` means the origin.  Canonical
/// generator lists (sign-fixed, sorted, nonparallel) reload bit-for-bit,
/// others are canonicalized by the constructor.
pub fn zonotope_from_json(text: &str) -> GeomResult<Zonotope> {
    let dto: ZonotopeDto =
        serde_json::from_str(text).map_err(|e| parse_error("zonotope JSON", e))?;
    let center = match &dto.center {
        Some(c) => vector_from(dto.dim, c, "zonotope center")?,
        None => Vector::zero(dto.dim),
    };
    let generators = dto
        .generators
        .iter()
        .map(|g| vector_from(dto.dim, g, "generator"))
        .collect::<GeomResult<Vec<_>>>()?;
    Zonotope::from_canonical_parts(center, generators.clone())
        .or_else(|_| Zonotope::new(center, &generators))
}

// ---------------------------------------------------------------------------
// Kernel JSON: {"name": "projection"} or {"cheb_p": [...], "cheb_q": [...]}
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct KernelDto {
    name: Option<String>,
    cheb_p: Option<Vec<f64>>,
    cheb_q: Option<Vec<f64>>,
}

/// Reads a kernel pair, either by name (`projection`, `zero`) or as values
/// of the even part `p` and odd part `q` at Chebyshev–Lobatto nodes; a
/// missing table means that part is zero.  Parity is validated.
pub fn kernel_pair_from_json(text: &str) -> GeomResult<KernelPair> {
    let dto: KernelDto =
        serde_json::from_str(text).map_err(|e| parse_error("kernel JSON", e))?;
    match (&dto.name, &dto.cheb_p, &dto.cheb_q) {
        (Some(name), None, None) => match name.as_str() {
            "projection" => Ok(KernelPair::projection()),
            "zero" => KernelPair::new(Kernel::zero(), Kernel::zero()),
            other => Err(GeomError::Parse(format!(
                "unknown kernel name {other:?} (expected projection or zero)"
            ))),
        },
        (None, p, q) => {
            if p.is_none() && q.is_none() {
                return Err(GeomError::Parse(
                    "kernel JSON needs a name or Chebyshev tables".into(),
                ));
            }
            let p = match p {
                Some(values) => Kernel::from_chebyshev_values(values.clone())?,
                None => Kernel::zero(),
            };
            let q = match q {
                Some(values) => Kernel::from_chebyshev_values(values.clone())?,
                None => Kernel::zero(),
            };
            KernelPair::new(p, q)
        }
        _ => Err(GeomError::Parse(
            "kernel JSON mixes a name with Chebyshev tables".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// OFF import/export (ambient dimension 3 only)
// ---------------------------------------------------------------------------

/// Writes a full-dimensional 3-polytope in OFF format: vertices verbatim,
/// one face per facet with vertices ordered counter-clockwise as seen from
/// outside.
pub fn polytope_to_off(p: &Polytope) -> GeomResult<String> {
    if p.ambient() != 3 {
        return Err(GeomError::Dimension("OFF export needs ambient R^3".into()));
    }
    if p.dim() != 3 {
        return Err(GeomError::LowerDimensional(
            "OFF export needs a full-dimensional polytope".into(),
        ));
    }
    let facets = p.facets_required()?;
    let vertices = p.vertices();
    let edges = vertices.len() + facets.len() - 2;
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} {}\n", vertices.len(), facets.len(), edges));
    for v in vertices {
        let c = v.coords();
        out.push_str(&format!(
            "{} {} {}\n",
            fmt_float(c[0]),
            fmt_float(c[1]),
            fmt_float(c[2])
        ));
    }
    for f in facets {
        // Order the facet's vertices by angle around its centroid, in a
        // tangent frame oriented so the walk is counter-clockwise when the
        // outward normal points at the viewer.
        let mut basis = complement_basis(&f.normal);
        if cross3(&basis[0], &basis[1]).dot(&f.normal) < 0.0 {
            basis.swap(0, 1);
        }
        let mut centroid = Vector::zero(3);
        for &i in &f.vertex_indices {
            centroid += vertices[i];
        }
        let centroid = centroid * (1.0 / f.vertex_indices.len() as f64);
        let mut ring: Vec<(f64, usize)> = f
            .vertex_indices
            .iter()
            .map(|&i| {
                let r = vertices[i] - centroid;
                (r.dot(&basis[1]).atan2(r.dot(&basis[0])), i)
            })
            .collect();
        ring.sort_by(|x, y| x.partial_cmp(y).expect("finite angles"));
        out.push_str(&ring.len().to_string());
        for (_, i) in ring {
            out.push(' ');
            out.push_str(&i.to_string());
        }
        out.push('\n');
    }
    Ok(out)
}

/// Reads an OFF file (exactly as written by [`polytope_to_off`], plus `#`
/// comments and blank lines); faces are ignored and the polytope is rebuilt
/// as the hull of the vertex list.
pub fn polytope_from_off(text: &str) -> GeomResult<Polytope> {
    let tokens: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .collect();
    let mut pos = if tokens.first() == Some(&"OFF") { 1 } else { 0 };
    let next = |what: &str, pos: &mut usize| -> GeomResult<&str> {
        let tok = tokens
            .get(*pos)
            .ok_or_else(|| GeomError::Parse(format!("OFF file ended before {what}")))?;
        *pos += 1;
        Ok(tok)
    };
    let nv = next("vertex count", &mut pos)?
        .parse::<usize>()
        .map_err(|e| parse_error("vertex count", e))?;
    let _nf = next("face count", &mut pos)?
        .parse::<usize>()
        .map_err(|e| parse_error("face count", e))?;
    let _ne = next("edge count", &mut pos)?
        .parse::<usize>()
        .map_err(|e| parse_error("edge count", e))?;
    if nv == 0 {
        return Err(GeomError::Parse("OFF file has no vertices".into()));
    }
    let mut vertices = Vec::with_capacity(nv);
    for k in 0..nv {
        let mut c = [0.0f64; 3];
        for slot in &mut c {
            *slot = next(&format!("vertex {k}"), &mut pos)?
                .parse::<f64>()
                .map_err(|e| parse_error("vertex coordinate", e))?;
        }
        vertices.push(Vector::new(&c)?);
    }
    Polytope::hull(&vertices)
}

// ---------------------------------------------------------------------------
// Report JSON (write-only): solver, decomposition, suite
// ---------------------------------------------------------------------------

pub fn solve_report_to_json(r: &SolveReport) -> String {
    let mut out = String::new();
    out.push_str("{\"converged\":");
    out.push_str(if r.converged { "true" } else { "false" });
    out.push_str(",\"iterations\":");
    out.push_str(&r.iterations.to_string());
    out.push_str(",\"final_residual\":");
    out.push_str(&fmt_float(r.final_residual));
    out.push_str(",\"polytope\":");
    out.push_str(&polytope_to_json(&r.polytope));
    out.push('}');
    out
}

/// Degree-indexed decomposition report:
/// `{"ambient": n, "degrees": {"j": {"norm": …, "sublinear": …,
/// "max_violation": …, "homogeneous": …}, …}, "reconstruction_residual": …}`.
pub fn decomposition_report_to_json(d: &HomogeneousDecomposition) -> String {
    let n = d.coefficients().degree();
    let mut out = String::new();
    out.push_str("{\"ambient\":");
    out.push_str(&d.ambient().to_string());
    out.push_str(",\"degrees\":{");
    for j in 0..=n {
        if j > 0 {
            out.push(',');
        }
        let sub = d.sublinearity(j);
        out.push_str(&format!("\"{j}\":{{\"norm\":"));
        out.push_str(&fmt_float(d.component_norm(j)));
        out.push_str(",\"sublinear\":");
        out.push_str(if sub.is_support_function { "true" } else { "false" });
        out.push_str(",\"max_violation\":");
        out.push_str(&fmt_float(sub.max_violation));
        out.push_str(",\"homogeneous\":");
        out.push_str(if d.positively_homogeneous(j) { "true" } else { "false" });
        out.push('}');
    }
    out.push_str("},\"reconstruction_residual\":");
    out.push_str(&fmt_float(d.reconstruction_residual()));
    out.push('}');
    out
}

pub fn suite_report_to_json(r: &SuiteReport) -> String {
    let mut out = String::new();
    out.push_str("{\"seed\":");
    out.push_str(&r.seed.to_string());
    out.push_str(",\"passed\":");
    out.push_str(if r.passed() { "true" } else { "false" });
    out.push_str(",\"total_failures\":");
    out.push_str(&r.total_failures().to_string());
    out.push_str(",\"operators\":[");
    for (i, op) in r.reports.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"operator\":");
        out.push_str(&serde_json::to_string(&op.operator).expect("string encodes"));
        out.push_str(",\"passed\":");
        out.push_str(if op.passed() { "true" } else { "false" });
        out.push_str(",\"axioms\":[");
        for (k, ax) in op.axioms.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str("{\"axiom\":");
            out.push_str(&serde_json::to_string(&ax.axiom).expect("string encodes"));
            out.push_str(",\"trials\":");
            out.push_str(&ax.trials.to_string());
            out.push_str(",\"tolerance\":");
            out.push_str(&fmt_float(ax.tolerance));
            out.push_str(",\"max_residual\":");
            out.push_str(&fmt_float(ax.max_residual));
            out.push_str(",\"passed\":");
            out.push_str(if ax.passed() { "true" } else { "false" });
            out.push_str(",\"failures\":[");
            for (m, f) in ax.failures.iter().enumerate() {
                if m > 0 {
                    out.push(',');
                }
                out.push_str("{\"seed\":");
                out.push_str(&f.seed.to_string());
                out.push_str(",\"residual\":");
                out.push_str(&fmt_float(f.residual));
                out.push('}');
            }
            out.push_str("]}");
        }
        out.push_str("]}");
    }
    out.push_str("]}");
    out
}
