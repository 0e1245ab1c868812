//! JSON report builders and the plain-text rendering layer. All rationals
//! are emitted as exact "p/q" strings; integers stay JSON numbers while they
//! fit in 64 bits and fall back to decimal strings beyond that.

use num_traits::ToPrimitive;
use parapic::covers::{BuildingData, CharacterSubgroup};
use parapic::parabolic::{BoundaryDecomposition, BoundaryRealization, TorsionOrder};
use parapic::polytope::{HalfOpenPolytope, Rel};
use parapic::quasipoly::QuasiPolynomial;
use parapic::rat::{format_rat, Int, Rat};
use parapic::strata::StrataTable;
use serde_json::{json, Map, Value};

pub fn json_int(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn json_int_vec(xs: &[Int]) -> Value {
    Value::Array(xs.iter().map(json_int).collect())
}

pub fn json_rat(x: &Rat) -> Value {
    json!(format_rat(x))
}

pub fn json_rat_vec(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(json_rat).collect())
}

pub fn polytope_value(p: &HalfOpenPolytope) -> Value {
    let constraints: Vec<Value> = p
        .constraints()
        .iter()
        .map(|c| {
            json!({
                "a": json_rat_vec(&c.a),
                "rel": match c.rel { Rel::Le => "le", Rel::Lt => "lt", Rel::Eq => "eq" },
                "b": json_rat(&c.b),
            })
        })
        .collect();
    json!({ "dim": p.dim(), "constraints": constraints })
}

fn realization_value(x: &BoundaryRealization) -> Value {
    json!({
        "bundle": json_int_vec(&x.bundle),
        "alpha": json_rat_vec(&x.alpha),
    })
}

pub fn quasipoly_value(qp: &QuasiPolynomial) -> Value {
    let polys: Vec<Value> = qp
        .polys()
        .iter()
        .map(|p| Value::Array(p.coeffs().iter().map(json_rat).collect()))
        .collect();
    json!({
        "period": qp.period(),
        "symbolic_exponent": qp.torus_exponent(),
        "polynomials": polys,
    })
}

pub fn decompose_report(variety: &str, b: &BoundaryDecomposition) -> Value {
    let polytopes: Vec<Value> = b
        .entries
        .iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert("id".into(), json!(e.id));
            m.insert("base_class".into(), json_int_vec(&e.base_class));
            if let Some(floors) = &e.floors {
                m.insert("floors".into(), json_int_vec(floors));
            }
            m.insert("polytope".into(), polytope_value(&e.polytope));
            if let Some(rep) = &e.representative {
                let mut r = realization_value(&rep.realization)
                    .as_object()
                    .unwrap()
                    .clone();
                r.insert(
                    "torsion_order".into(),
                    match rep.torsion_order {
                        TorsionOrder::Finite(n) => json!(n),
                        TorsionOrder::Infinite => json!("infinite"),
                    },
                );
                m.insert("representative".into(), Value::Object(r));
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "command": "decompose",
        "variety": variety,
        "components": b.ambient,
        "refined": b.refined,
        "polytopes": polytopes,
    })
}

pub fn strata_report(variety: &str, t: &StrataTable) -> Value {
    let hq: Vec<Value> = t
        .hq_by_polytope
        .iter()
        .map(|(id, values)| json!({ "id": id, "values": values }))
        .collect();
    let strata: Vec<Value> = t
        .entries
        .iter()
        .map(|((q, i), records)| {
            let ids: Vec<&str> = records.iter().map(|r| r.polytope_id.as_str()).collect();
            json!({ "q": q, "i": i, "polytopes": ids })
        })
        .collect();
    json!({
        "command": "strata",
        "variety": variety,
        "qmax": t.qmax,
        "polytopes": t.decomposition.entries.iter().map(|e| e.id.as_str()).collect::<Vec<_>>(),
        "hq": hq,
        "strata": strata,
    })
}

pub fn cover_report(
    variety: &str,
    g: &CharacterSubgroup,
    bd: &BuildingData,
    pushforward_base: &[Vec<Int>],
    pushforward_resolution: &[Vec<Int>],
    hodge: &[u64],
    riemann_hurwitz: Option<(Int, bool)>,
) -> Value {
    let characters: Vec<Value> = g.elements.iter().map(realization_value).collect();
    let eps: Vec<Value> = (0..g.order())
        .flat_map(|c1| {
            (0..g.order()).map(move |c2| (c1, c2))
        })
        .map(|(c1, c2)| {
            json!({
                "chi": c1,
                "chi_prime": c2,
                "eps": bd.eps[c1][c2],
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("command".into(), json!("cover"));
    m.insert("variety".into(), json!(variety));
    m.insert("order".into(), json!(g.order()));
    m.insert("invariant_factors".into(), json_int_vec(&g.invariant_factors));
    m.insert("characters".into(), Value::Array(characters));
    m.insert(
        "building_data".into(),
        json!({
            "inertia": json_int_vec(&bd.inertia),
            "iota": bd.iota.iter().map(|row| json_int_vec(row)).collect::<Vec<_>>(),
            "eps": eps,
        }),
    );
    m.insert(
        "pushforward".into(),
        json!({
            "base": pushforward_base.iter().map(|c| json_int_vec(c)).collect::<Vec<_>>(),
            "resolution": pushforward_resolution.iter().map(|c| json_int_vec(c)).collect::<Vec<_>>(),
        }),
    );
    m.insert("hodge".into(), json!(hodge));
    if let Some((genus, ok)) = riemann_hurwitz {
        m.insert(
            "riemann_hurwitz".into(),
            json!({ "genus": json_int(&genus), "check": if ok { "OK" } else { "MISMATCH" } }),
        );
    }
    Value::Object(m)
}

/// Plain-text rendering: a generic walk over the JSON model.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            if items.iter().all(|i| !matches!(i, Value::Object(_) | Value::Array(_))) {
                let row: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{pad}[{}]\n", row.join(", ")));
            } else {
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&format!("{pad}- [{i}]\n"));
                    render_into(item, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
