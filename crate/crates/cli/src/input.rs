//! JSON problem descriptions: exact rationals as "p/q" strings or integers,
//! varieties P2 / P1 with line or point divisors, optional subgroup
//! generators, and the shared polytope schema.

use parapic::geometry::{CurveModel, CurvePointSpec, GeometryInput, LineArrangement, ResolvedGeometry};
use parapic::parabolic::BoundaryRealization;
use parapic::polytope::{Constraint, HalfOpenPolytope, Rel};
use parapic::rat::{parse_rat, Rat};
use serde_json::Value;

use crate::CliError;

pub fn parse_number(v: &Value, what: &str) -> Result<Rat, CliError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(i.into()))
            } else {
                Err(CliError::Parse(format!(
                    "{what}: only exact integers or \"p/q\" strings are accepted, got {n}"
                )))
            }
        }
        Value::String(s) => parse_rat(s)
            .ok_or_else(|| CliError::Parse(format!("{what}: malformed rational {s:?}"))),
        other => Err(CliError::Parse(format!("{what}: expected a number, got {other}"))),
    }
}

pub struct ProblemSpec {
    pub geometry: ResolvedGeometry,
    pub subgroup_generators: Vec<BoundaryRealization>,
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec, CliError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| CliError::Parse("problem description must be a JSON object".into()))?;
    let variety = obj
        .get("variety")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Parse("missing \"variety\" (\"P2\" or \"P1\")".into()))?;
    let divisor = obj
        .get("divisor")
        .and_then(Value::as_object)
        .ok_or_else(|| CliError::Parse("missing \"divisor\" object".into()))?;

    let input = match variety {
        "P2" => {
            let lines = divisor
                .get("lines")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::Parse("P2 divisor needs a \"lines\" array".into()))?;
            let mut parsed = Vec::with_capacity(lines.len());
            for (i, line) in lines.iter().enumerate() {
                let coords = line
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or_else(|| CliError::Parse(format!("line {i} must be [a, b, c]")))?;
                let mut triple = [Rat::from_integer(0.into()), Rat::from_integer(0.into()), Rat::from_integer(0.into())];
                for (j, c) in coords.iter().enumerate() {
                    triple[j] = parse_number(c, &format!("line {i} coefficient {j}"))?;
                }
                parsed.push(triple);
            }
            GeometryInput::Lines(LineArrangement::new(parsed).map_err(CliError::from)?)
        }
        "P1" => {
            let points = divisor
                .get("points")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::Parse("P1 divisor needs a \"points\" array".into()))?;
            let mut parsed = Vec::with_capacity(points.len());
            for (i, p) in points.iter().enumerate() {
                if p.as_str() == Some("inf") {
                    parsed.push(CurvePointSpec::Infinity);
                } else {
                    parsed.push(CurvePointSpec::Finite(parse_number(p, &format!("point {i}"))?));
                }
            }
            GeometryInput::Curve(CurveModel::new(parsed).map_err(CliError::from)?)
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown variety {other:?}; supported: \"P2\", \"P1\""
            )))
        }
    };
    let geometry = ResolvedGeometry::new(input).map_err(CliError::from)?;

    let mut subgroup_generators = Vec::new();
    if let Some(gens) = obj.get("subgroup") {
        let arr = gens
            .as_array()
            .ok_or_else(|| CliError::Parse("\"subgroup\" must be an array of generators".into()))?;
        for (i, gen) in arr.iter().enumerate() {
            let gobj = gen
                .as_object()
                .ok_or_else(|| CliError::Parse(format!("generator {i} must be an object")))?;
            let degree = gobj
                .get("bundle_degree")
                .ok_or_else(|| CliError::Parse(format!("generator {i}: missing \"bundle_degree\"")))?;
            let degree = parse_number(degree, &format!("generator {i} bundle_degree"))?;
            if !degree.is_integer() {
                return Err(CliError::Parse(format!(
                    "generator {i}: bundle_degree must be an integer"
                )));
            }
            let alpha_v = gobj
                .get("alpha")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::Parse(format!("generator {i}: missing \"alpha\" array")))?;
            let mut alpha = Vec::with_capacity(alpha_v.len());
            for (j, a) in alpha_v.iter().enumerate() {
                alpha.push(parse_number(a, &format!("generator {i} alpha[{j}]"))?);
            }
            let real = BoundaryRealization::new(
                &geometry.divisors,
                vec![degree.to_integer()],
                vec![],
                alpha,
            )
            .map_err(CliError::from)?;
            subgroup_generators.push(real);
        }
    }
    Ok(ProblemSpec { geometry, subgroup_generators })
}

/// Shared polytope schema:
/// {"dim": n, "constraints": [{"a": [...], "rel": "le"|"lt"|"eq", "b": ...}]}
pub fn parse_polytope(text: &str) -> Result<HalfOpenPolytope, CliError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    polytope_from_value(&root)
}

pub fn polytope_from_value(root: &Value) -> Result<HalfOpenPolytope, CliError> {
    let obj = root
        .as_object()
        .ok_or_else(|| CliError::Parse("polytope must be a JSON object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Parse("missing \"dim\"".into()))? as usize;
    let cons = obj
        .get("constraints")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Parse("missing \"constraints\" array".into()))?;
    let mut parsed = Vec::with_capacity(cons.len());
    for (i, c) in cons.iter().enumerate() {
        let cobj = c
            .as_object()
            .ok_or_else(|| CliError::Parse(format!("constraint {i} must be an object")))?;
        let avals = cobj
            .get("a")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Parse(format!("constraint {i}: missing \"a\"")))?;
        if avals.len() != dim {
            return Err(CliError::Parse(format!(
                "constraint {i}: coefficient arity {} does not match dim {dim}",
                avals.len()
            )));
        }
        let mut a = Vec::with_capacity(dim);
        for (j, v) in avals.iter().enumerate() {
            a.push(parse_number(v, &format!("constraint {i} a[{j}]"))?);
        }
        let rel = match cobj.get("rel").and_then(Value::as_str) {
            Some("le") => Rel::Le,
            Some("lt") => Rel::Lt,
            Some("eq") => Rel::Eq,
            other => {
                return Err(CliError::Parse(format!(
                    "constraint {i}: rel must be \"le\", \"lt\" or \"eq\", got {other:?}"
                )))
            }
        };
        let b = cobj
            .get("b")
            .ok_or_else(|| CliError::Parse(format!("constraint {i}: missing \"b\"")))?;
        let b = parse_number(b, &format!("constraint {i} b"))?;
        parsed.push(Constraint::new(a, rel, b));
    }
    HalfOpenPolytope::new(dim, parsed).map_err(CliError::from)
}
