//! JSON input and output. Exact rationals are "p/q" strings, real
//! algebraic numbers carry their minimal polynomial and an isolating
//! interval, and object keys come out sorted.

use hyperflex_exact::{format_scalar, parse_scalar, IsolatedRoot, Scalar, UniPoly};
use serde_json::{json, Map, Value};

use crate::curve::{Branch, CurvePoint, Divisor, DivisorTerm, HyperellipticCurve, XCoord};
use crate::error::{Error, Result};
use crate::inflection::InflectionReport;
use crate::patchwork::{assemble_family, EllipticPiece, NuFunction, PatchworkFamily, Subdivision};
use crate::specialize::{
    CompatibilityReport, EllipticInflection, LibraryEntry, LowerBoundInstance, MarkedWeights, RegenerationReport,
};
use crate::sweep::{SampleRecord, SweepResult};
use crate::tropical::{
    ComplexDivisor, EdgeShape, InflectionSpecialization, MetrizedComplex, SkeletonVertex, TropicalPlaneCurve,
};

pub fn scalar(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

pub fn poly(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar).collect())
}

fn root(r: &IsolatedRoot) -> Value {
    match r.exact_value() {
        Some(v) => scalar(v),
        None => {
            let (lo, hi) = r.interval();
            json!({ "minpoly": poly(r.square_free_factor()), "interval": [scalar(lo), scalar(hi)] })
        }
    }
}

fn branch(b: Branch) -> &'static str {
    match b {
        Branch::Zero => "0",
        Branch::Plus => "+",
        Branch::Minus => "-",
    }
}

fn x_coord(x: &XCoord) -> Value {
    match x {
        XCoord::Rational(v) => scalar(v),
        XCoord::Real(r) => root(r),
        XCoord::NonReal { factor, count } => json!({ "minpoly": poly(factor), "nonreal": count }),
    }
}

pub fn point(p: &CurvePoint) -> Value {
    match p {
        CurvePoint::Infinity => Value::String("inf".into()),
        CurvePoint::Affine { x, branch: b } => json!({ "x": x_coord(x), "branch": branch(*b) }),
    }
}

fn term(t: &DivisorTerm, branches: usize) -> Value {
    let mut m = Map::new();
    m.insert("mult".into(), json!(t.multiplicity));
    m.insert("count".into(), json!(t.count));
    m.insert("real".into(), json!(t.real));
    m.insert("component".into(), json!(t.component));
    m.insert("branches".into(), json!(branches));
    match &t.point {
        CurvePoint::Infinity => {
            m.insert("x".into(), Value::String("inf".into()));
        }
        CurvePoint::Affine { x, .. } => match x {
            XCoord::Rational(v) => {
                m.insert("x".into(), scalar(v));
            }
            XCoord::Real(r) => {
                if let Some(v) = r.exact_value() {
                    m.insert("x".into(), scalar(v));
                } else {
                    let (lo, hi) = r.interval();
                    m.insert("minpoly".into(), poly(r.square_free_factor()));
                    m.insert("interval".into(), json!([scalar(lo), scalar(hi)]));
                }
            }
            XCoord::NonReal { factor, .. } => {
                m.insert("minpoly".into(), poly(factor));
            }
        },
    }
    Value::Object(m)
}

/// Terms one by one.
pub fn divisor(d: &Divisor) -> Value {
    Value::Array(d.terms().iter().map(|t| term(t, 1)).collect())
}

/// The S part: the two points over each x-coordinate as one entry.
fn paired_divisor(d: &Divisor) -> Value {
    Value::Array(d.terms().chunks(2).map(|c| term(&c[0], c.len())).collect())
}

pub fn inflection_report(curve: &HyperellipticCurve, r: &InflectionReport) -> Value {
    let (_, n, a) = curve.topological_type();
    json!({
        "genus": r.genus,
        "f": poly(curve.f()),
        "rank": r.rank,
        "degree": r.degree,
        "real_components": n,
        "topology": { "genus": curve.genus(), "components": n, "separating": a == 0 },
        "total_degree": r.total_degree,
        "expected_degree": r.expected_degree,
        "real_degree": r.real_degree,
        "real_point_count": r.real_point_count,
        "per_component": r.per_component,
        "per_component_points": r.per_component_points,
        "infinity_weight": r.infinity_weight,
        "m_infinity": r.m_infinity,
        "wronskian": {
            "scale": scalar(&r.wronskian.scale),
            "numerator": poly(r.wronskian.q.numerator()),
            "denominator": poly(r.wronskian.q.denominator()),
            "y_power": r.wronskian.y_power,
        },
        "ramification": r.ramification.iter().map(|w| json!({
            "factor": poly(&w.factor),
            "order": w.order,
            "weight": w.weight,
            "real_roots": w.real_roots,
        })).collect::<Vec<_>>(),
        "r_part": divisor(&r.r_part),
        "s_part": paired_divisor(&r.s_part),
        "s_numerator": poly(&r.s_numerator),
        "vanishing_checks": r.vanishing_checks.iter().map(|v| json!({
            "point": point(&v.point),
            "orders": v.orders,
            "weight": v.weight,
        })).collect::<Vec<_>>(),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::InvalidInput(format!("missing field {key:?}")))
}

fn scalar_field(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(parse_scalar(s)?),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::InvalidInput(format!("expected a rational string, got {v}"))),
    }
}

/// `{ "genus": g, "f_coeffs": ["0", "-1", …] }`, lowest degree first.
pub fn parse_curve(v: &Value) -> Result<HyperellipticCurve> {
    let coeffs = field(v, "f_coeffs")?
        .as_array()
        .ok_or_else(|| Error::InvalidInput("f_coeffs must be an array".into()))?
        .iter()
        .map(scalar_field)
        .collect::<Result<Vec<_>>>()?;
    let curve = HyperellipticCurve::new(UniPoly::new(coeffs))?;
    if let Some(g) = v.get("genus") {
        if g.as_u64() != Some(curve.genus() as u64) {
            return Err(Error::InvalidInput(format!("genus {g} does not match deg f = {}", curve.f().deg())));
        }
    }
    Ok(curve)
}

pub fn curve_json(curve: &HyperellipticCurve) -> Value {
    json!({ "genus": curve.genus(), "f_coeffs": poly(curve.f()) })
}

fn parse_piece(v: &Value) -> Result<EllipticPiece> {
    let a = scalar_field(field(v, "a")?)?;
    if let Some(roots) = v.get("roots") {
        let r = roots
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| Error::InvalidInput("roots must hold two rationals".into()))?;
        return EllipticPiece::from_roots(a, scalar_field(&r[0])?, scalar_field(&r[1])?);
    }
    EllipticPiece::new(a, scalar_field(field(v, "sum")?)?, scalar_field(field(v, "product")?)?)
}

fn parse_nu(v: &Value, g: usize) -> Result<NuFunction> {
    let obj = v.as_object().ok_or_else(|| Error::InvalidInput("nu must be an object".into()))?;
    let mut values = vec![None; 2 * g + 1];
    for (key, val) in obj {
        let i: usize = key.parse().map_err(|_| Error::InvalidInput(format!("bad nu index {key:?}")))?;
        if i == 0 || i > 2 * g + 1 {
            return Err(Error::OutOfRange(i));
        }
        values[i - 1] = match val {
            Value::Null => None,
            Value::String(s) if s == "inf" => None,
            Value::Number(n) if n.is_i64() => Some(n.as_i64().unwrap()),
            _ => return Err(Error::InvalidInput(format!("bad nu value {val}"))),
        };
    }
    NuFunction::new(values)
}

/// `{ "genus": g, "pieces": [{ "a": …, "roots": [x1, x2] } or { "a", "sum", "product" }], "nu": {…} }`.
pub fn parse_family(v: &Value) -> Result<PatchworkFamily> {
    let pieces = field(v, "pieces")?
        .as_array()
        .ok_or_else(|| Error::InvalidInput("pieces must be an array".into()))?
        .iter()
        .map(parse_piece)
        .collect::<Result<Vec<_>>>()?;
    if let Some(g) = v.get("genus") {
        if g.as_u64() != Some(pieces.len() as u64) {
            return Err(Error::InvalidInput(format!("genus {g} but {} pieces", pieces.len())));
        }
    }
    let nu = v.get("nu").map(|n| parse_nu(n, pieces.len())).transpose()?;
    assemble_family(&pieces, nu)
}

fn piece_json(p: &EllipticPiece) -> Value {
    match p.rational_roots() {
        Some((x1, x2)) => json!({ "a": scalar(&p.a), "roots": [scalar(&x1), scalar(&x2)] }),
        None => json!({ "a": scalar(&p.a), "sum": scalar(&p.sum), "product": scalar(&p.product) }),
    }
}

pub fn family_json(fam: &PatchworkFamily) -> Value {
    let mut nu = Map::new();
    for i in 1..=2 * fam.genus + 1 {
        nu.insert(i.to_string(), json!(fam.nu.get(i)));
    }
    json!({
        "genus": fam.genus,
        "pieces": fam.pieces.iter().map(piece_json).collect::<Vec<_>>(),
        "nu": nu,
    })
}

pub fn subdivision_json(s: &Subdivision) -> Value {
    json!({
        "faces": s.faces.iter().map(|f| json!({
            "vertices": f.vertices.iter().map(|v| [v.0, v.1]).collect::<Vec<_>>(),
            "certificate": f.certificate.iter().map(scalar).collect::<Vec<_>>(),
            "interior_points": f.interior_points,
        })).collect::<Vec<_>>(),
        "edges": s.edges.iter().map(|e| json!({
            "ends": e.ends.iter().map(|v| [v.0, v.1]).collect::<Vec<_>>(),
            "lattice_length": e.lattice_length,
            "faces": e.faces,
        })).collect::<Vec<_>>(),
    })
}

pub fn patchwork_json(fam: &PatchworkFamily, sub: &Subdivision) -> Value {
    json!({
        "family": family_json(fam),
        "coefficients": fam.coeffs.iter().map(scalar).collect::<Vec<_>>(),
        "subdivision": subdivision_json(sub),
        "real_pieces": fam.real_pieces(),
        "predicted_components": fam.predicted_components(),
    })
}

pub fn tropical_json(t: &TropicalPlaneCurve) -> Value {
    json!({
        "vertices": t.vertices.iter().map(|v| [scalar(&v.0), scalar(&v.1)]).collect::<Vec<_>>(),
        "edges": t.edges.iter().map(|e| {
            let mut m = Map::new();
            match e.shape {
                EdgeShape::Bounded { from, to } => {
                    m.insert("from".into(), json!(from));
                    m.insert("to".into(), json!(to));
                }
                EdgeShape::Ray { from, .. } => {
                    m.insert("from".into(), json!(from));
                }
            }
            m.insert("direction".into(), json!([e.direction.0, e.direction.1]));
            m.insert("weight".into(), json!(e.weight));
            m.insert("dual".into(), json!(e.dual.iter().map(|v| [v.0, v.1]).collect::<Vec<_>>()));
            m.insert("length".into(), e.length.as_ref().map(scalar).unwrap_or(Value::Null));
            Value::Object(m)
        }).collect::<Vec<_>>(),
        "balancing": t.balancing().iter().map(|b| [b.0, b.1]).collect::<Vec<_>>(),
    })
}

fn vertex(v: &SkeletonVertex) -> Value {
    Value::String(v.to_string())
}

pub fn skeleton_json(s: &MetrizedComplex) -> Value {
    json!({
        "genus": s.genus,
        "vertices": s.vertices.iter().map(vertex).collect::<Vec<_>>(),
        "edges": s.edges.iter().map(|e| json!({
            "label": e.label,
            "ends": [vertex(&e.ends[0]), vertex(&e.ends[1])],
            "length": e.length.as_ref().map(scalar).unwrap_or(Value::String("inf".into())),
        })).collect::<Vec<_>>(),
        "curves": s.curves.iter().map(|c| json!({
            "vertex": c.vertex,
            "equation": poly(&c.equation()),
            "marked": c.marked.iter().map(|(p, v)| json!({ "point": p.to_string(), "neighbor": vertex(v) })).collect::<Vec<_>>(),
            "attachments": c.attachments().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn complex_divisor_json(d: &ComplexDivisor) -> Value {
    let mut graph = Map::new();
    for (v, w) in &d.graph {
        graph.insert(v.to_string(), json!(w));
    }
    json!({
        "degree": d.degree(),
        "real_degree": d.real_degree,
        "graph": graph,
        "curves": d.curves.iter().enumerate().map(|(i, c)| {
            let mut marked = Map::new();
            for (p, w) in &c.marked {
                marked.insert(p.to_string(), json!(w));
            }
            json!({
                "vertex": i + 1,
                "marked": marked,
                "interior": c.interior.iter().map(|p| json!({
                    "minpoly": poly(&p.factor),
                    "mult": p.multiplicity,
                    "points": p.points,
                    "real_points": p.real_points,
                })).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    })
}

pub fn specialization_json(s: &InflectionSpecialization) -> Value {
    json!({
        "cluster_degree": s.cluster_degree,
        "clusters": s.clusters.iter().map(|c| json!({
            "vertex": c.vertex,
            "valuation": [scalar(&c.valuation.0), scalar(&c.valuation.1)],
            "edge_polynomial": poly(&c.edge_polynomial),
            "interior": poly(&c.interior),
        })).collect::<Vec<_>>(),
        "divisor": complex_divisor_json(&s.divisor),
    })
}

fn weights_json(w: &MarkedWeights) -> Value {
    json!({ "zero": w.zero, "infinity": w.infinity, "alpha": w.alpha })
}

pub fn elliptic_json(e: &EllipticInflection) -> Value {
    json!({
        "j": e.j,
        "weights": weights_json(&e.marked.weights),
        "zero_orders": e.marked.zero_orders,
        "infinity_orders": e.marked.infinity_orders,
        "total_degree": e.report.total_degree,
        "real_degree": e.real_degree(),
        "interior_degree": e.interior_degree,
        "interior_real_degree": e.interior_real_degree,
        "s_numerator": poly(&e.report.s_numerator),
    })
}

pub fn compatibility_json(c: &CompatibilityReport) -> Value {
    json!({
        "holds": c.holds,
        "target": c.target,
        "rows": c.rows.iter().map(|r| json!({
            "j": r.j,
            "infinity_orders": r.infinity_orders,
            "zero_orders": r.zero_orders,
            "sums": r.sums,
        })).collect::<Vec<_>>(),
    })
}

fn record_json(r: &SampleRecord) -> Value {
    json!({
        "components": r.components,
        "total_degree": r.total_degree,
        "real_degree": r.real_degree,
        "per_component": r.per_component,
        "real_points": r.real_points,
        "s_real_degree": r.s_real_degree,
    })
}

pub fn sweep_json(s: &SweepResult) -> Value {
    json!({
        "k": s.k,
        "expected_total": s.expected_total,
        "predicted_components": s.predicted_components,
        "scale_floor": s.scale_floor,
        "threshold": s.threshold.as_ref().map(root),
        "stabilized": s.stabilized,
        "stable_index": s.stable_index,
        "stable_value": s.stable_value.as_ref().map(record_json),
        "stable_epsilon": s.stable_index.map(|i| scalar(&s.samples[i].epsilon)),
        "samples": s.samples.iter().map(|x| json!({
            "halvings": x.halvings,
            "epsilon": scalar(&x.epsilon),
            "below_threshold": x.below_threshold,
            "record": x.record.as_ref().map(record_json),
        })).collect::<Vec<_>>(),
    })
}

pub fn regeneration_json(fam: &PatchworkFamily, r: &RegenerationReport) -> Value {
    let (lhs, elliptic, corr) = r.complex_identity;
    json!({
        "family": family_json(fam),
        "k": r.k,
        "pieces": r.pieces.iter().map(elliptic_json).collect::<Vec<_>>(),
        "real": {
            "elliptic_sum": r.pieces.iter().map(EllipticInflection::real_degree).sum::<i64>(),
            "correction": r.correction,
            "predicted": r.predicted_real_degree,
            "measured": r.measured_real_degree,
            "holds": r.real_holds(),
        },
        "complex": { "lhs": lhs, "elliptic_sum": elliptic, "correction": corr, "holds": r.complex_holds() },
        "epsilon": r.sweep.stable_index.map(|i| scalar(&r.sweep.samples[i].epsilon)),
        "sweep": sweep_json(&r.sweep),
    })
}

pub fn library_json(lib: &[LibraryEntry]) -> Value {
    Value::Array(
        lib.iter()
            .map(|e| json!({ "piece": piece_json(&e.piece), "real_type": e.real_type, "s_real": e.s_real }))
            .collect(),
    )
}

pub fn lower_bound_json(g: usize, k: usize, b: &LowerBoundInstance) -> Value {
    json!({
        "genus": g,
        "k": k,
        "n": b.n,
        "targets": [b.targets.0, b.targets.1],
        "family": family_json(&b.family),
        "predicted": b.predicted,
        "achieved": b.achieved,
        "holds": b.holds(),
        "epsilon": b.sweep.stable_index.map(|i| scalar(&b.sweep.samples[i].epsilon)),
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
