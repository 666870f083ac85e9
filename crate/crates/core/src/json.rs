//! JSON wire formats. Every rational is a decimal-free string like "3" or
//! "-5/7"; integer vectors are plain JSON arrays. Writers iterate ordered
//! containers, so output for a given value is byte-identical across runs.

use num::{BigInt, BigRational};
use serde_json::{json, Map, Value};

use crate::balance::{DefectVector, WeightFunction};
use crate::fanbundle::{BundleDescriptor, CurveClassData, DivisorClass, Fan1Skeleton, Ray};
use crate::newton::{Edge, Ends, TropicalCurve};
use crate::puiseux::PuiseuxSeries;
use crate::troppoly::{LaurentPolynomialK, TropicalPolynomial};
use crate::{Error, Result};

pub fn rational_to_string(x: &BigRational) -> String {
    x.to_string()
}

/// Parses "p" or "p/q" with nonzero q.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::invalid("rational", format!("cannot parse {s:?}"));
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(Error::invalid("rational", "zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

fn as_object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::invalid(field, "expected an object"))
}

fn get<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| Error::invalid(key, "missing field"))
}

fn as_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::invalid(field, "expected an array"))
}

fn as_usize(v: &Value, field: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::invalid(field, "expected a nonnegative integer"))
}

fn as_i64(v: &Value, field: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::invalid(field, "expected an integer"))
}

fn as_u64(v: &Value, field: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::invalid(field, "expected a nonnegative integer"))
}

fn as_str<'a>(v: &'a Value, field: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::invalid(field, "expected a string"))
}

fn i64_vec(v: &Value, field: &str) -> Result<Vec<i64>> {
    as_array(v, field)?.iter().map(|x| as_i64(x, field)).collect()
}

fn rational_at(v: &Value, field: &str) -> Result<BigRational> {
    parse_rational(as_str(v, field)?)
}

pub fn series_to_value(s: &PuiseuxSeries) -> Value {
    Value::Array(
        s.terms()
            .map(|(exp, coeff)| {
                json!({
                    "exp": rational_to_string(exp),
                    "coeff": rational_to_string(coeff),
                })
            })
            .collect(),
    )
}

pub fn series_from_value(v: &Value) -> Result<PuiseuxSeries> {
    let terms = as_array(v, "series")?
        .iter()
        .map(|t| {
            let m = as_object(t, "series")?;
            Ok((rational_at(get(m, "exp")?, "exp")?, rational_at(get(m, "coeff")?, "coeff")?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PuiseuxSeries::from_terms(terms))
}

pub fn laurent_to_value(f: &LaurentPolynomialK) -> Value {
    json!({
        "vars": f.dimension(),
        "terms": f
            .terms()
            .map(|(exp, coeff)| json!({"exponent": exp, "coeff": series_to_value(coeff)}))
            .collect::<Vec<_>>(),
    })
}

pub fn laurent_from_value(v: &Value) -> Result<LaurentPolynomialK> {
    let m = as_object(v, "polynomial")?;
    let n = as_usize(get(m, "vars")?, "vars")?;
    let terms = as_array(get(m, "terms")?, "terms")?
        .iter()
        .map(|t| {
            let m = as_object(t, "terms")?;
            Ok((
                i64_vec(get(m, "exponent")?, "exponent")?,
                series_from_value(get(m, "coeff")?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    LaurentPolynomialK::new(n, terms)
}

pub fn troppoly_to_value(g: &TropicalPolynomial) -> Value {
    json!({
        "vars": g.dimension(),
        "pieces": g
            .pieces()
            .iter()
            .map(|p| json!({"a": p.exponent, "c": rational_to_string(&p.constant)}))
            .collect::<Vec<_>>(),
    })
}

pub fn troppoly_from_value(v: &Value) -> Result<TropicalPolynomial> {
    let m = as_object(v, "tropical polynomial")?;
    let n = as_usize(get(m, "vars")?, "vars")?;
    let pieces = as_array(get(m, "pieces")?, "pieces")?
        .iter()
        .map(|p| {
            let m = as_object(p, "pieces")?;
            Ok((i64_vec(get(m, "a")?, "a")?, rational_at(get(m, "c")?, "c")?))
        })
        .collect::<Result<Vec<_>>>()?;
    TropicalPolynomial::new(n, pieces)
}

pub fn curve_to_value(c: &TropicalCurve) -> Value {
    json!({
        "n": c.dimension(),
        "vertices": c
            .vertices()
            .iter()
            .map(|v| v.iter().map(rational_to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "edges": c
            .edges()
            .iter()
            .map(|e| {
                let ends = match e.ends {
                    Ends::Ray(v) => vec![v],
                    Ends::Bounded(a, b) => vec![a, b],
                };
                json!({"ends": ends, "dir": e.direction, "weight": e.weight})
            })
            .collect::<Vec<_>>(),
    })
}

pub fn curve_from_value(v: &Value) -> Result<TropicalCurve> {
    let m = as_object(v, "curve")?;
    let n = as_usize(get(m, "n")?, "n")?;
    let vertices = as_array(get(m, "vertices")?, "vertices")?
        .iter()
        .map(|vertex| {
            as_array(vertex, "vertices")?
                .iter()
                .map(|x| rational_at(x, "vertices"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = as_array(get(m, "edges")?, "edges")?
        .iter()
        .map(|e| {
            let m = as_object(e, "edges")?;
            let ends = as_array(get(m, "ends")?, "ends")?
                .iter()
                .map(|x| as_usize(x, "ends"))
                .collect::<Result<Vec<_>>>()?;
            let ends = match ends.as_slice() {
                [v] => Ends::Ray(*v),
                [a, b] => Ends::Bounded(*a, *b),
                _ => return Err(Error::invalid("ends", "expected one or two vertex indices")),
            };
            Ok(Edge {
                ends,
                direction: i64_vec(get(m, "dir")?, "dir")?,
                weight: as_u64(get(m, "weight")?, "weight")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TropicalCurve::new(n, vertices, edges)
}

pub fn bundle_to_value(b: &BundleDescriptor) -> Value {
    json!({
        "n": b.torus_rank(),
        "picard_rank": b.picard_rank(),
        "chern": b.chern_classes(),
    })
}

pub fn bundle_from_value(v: &Value) -> Result<BundleDescriptor> {
    let m = as_object(v, "bundle")?;
    let n = as_usize(get(m, "n")?, "n")?;
    let r = as_usize(get(m, "picard_rank")?, "picard_rank")?;
    let chern = as_array(get(m, "chern")?, "chern")?
        .iter()
        .map(|c| i64_vec(c, "chern"))
        .collect::<Result<Vec<_>>>()?;
    BundleDescriptor::new(n, r, chern)
}

pub fn fan_to_value(f: &Fan1Skeleton) -> Value {
    json!({
        "n": f.dimension(),
        "rays": f.rays().iter().map(|r| r.coords()).collect::<Vec<_>>(),
    })
}

pub fn fan_from_value(v: &Value) -> Result<Fan1Skeleton> {
    let m = as_object(v, "fan")?;
    let n = as_usize(get(m, "n")?, "n")?;
    let rays = as_array(get(m, "rays")?, "rays")?
        .iter()
        .map(|r| Ray::new(i64_vec(r, "rays")?))
        .collect::<Result<Vec<_>>>()?;
    Fan1Skeleton::new(n, rays)
}

pub fn divisor_to_value(d: &DivisorClass) -> Value {
    json!({
        "horiz": d
            .horizontal()
            .map(|(ray, coef)| json!({"ray": ray.coords(), "coef": coef}))
            .collect::<Vec<_>>(),
        "base": d.base(),
    })
}

pub fn divisor_from_value(v: &Value) -> Result<DivisorClass> {
    let m = as_object(v, "divisor")?;
    let horiz = as_array(get(m, "horiz")?, "horiz")?
        .iter()
        .map(|t| {
            let m = as_object(t, "horiz")?;
            Ok((
                Ray::new(i64_vec(get(m, "ray")?, "ray")?)?,
                as_i64(get(m, "coef")?, "coef")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let base = i64_vec(get(m, "base")?, "base")?;
    Ok(DivisorClass::new(horiz, base))
}

pub fn weights_to_value(w: &WeightFunction) -> Value {
    json!({
        "weights": w
            .entries()
            .iter()
            .map(|(ray, w)| json!({"ray": ray.coords(), "w": w}))
            .collect::<Vec<_>>(),
    })
}

pub fn weights_from_value(v: &Value) -> Result<WeightFunction> {
    let m = as_object(v, "weights")?;
    let entries = as_array(get(m, "weights")?, "weights")?
        .iter()
        .map(|t| {
            let m = as_object(t, "weights")?;
            Ok((
                Ray::new(i64_vec(get(m, "ray")?, "ray")?)?,
                as_u64(get(m, "w")?, "w")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightFunction::new(entries))
}

pub fn beta_from_value(v: &Value) -> Result<CurveClassData> {
    Ok(CurveClassData::new(i64_vec(v, "beta")?))
}

pub fn defect_to_value(d: &DefectVector) -> Value {
    json!({"balanced": d.balanced(), "defect": d.coords()})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::dual_tropicalization;
    use crate::troppoly::tropicalize;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationals_round_trip() {
        for s in ["3", "-5/7", "0", "22/7", "-4"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&x), s);
        }
        assert_eq!(rational_to_string(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(rational_to_string(&parse_rational("1/-2").unwrap()), "-1/2");
        for s in ["1/0", "x", "0.5", "1/", "/2", ""] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn series_round_trips() {
        let s = PuiseuxSeries::from_terms(vec![(q(1, 2), q(3, 1)), (q(2, 1), q(-1, 5))]);
        assert_eq!(series_from_value(&series_to_value(&s)).unwrap(), s);
        let text = serde_json::to_string(&series_to_value(&s)).unwrap();
        assert_eq!(
            text,
            r#"[{"coeff":"3","exp":"1/2"},{"coeff":"-1/5","exp":"2"}]"#
        );
    }

    #[test]
    fn laurent_parses_and_tropicalizes() {
        let text = r#"{
            "vars": 2,
            "terms": [
                {"exponent": [2, 0], "coeff": [{"exp": "0", "coeff": "1"}]},
                {"exponent": [0, 1], "coeff": [{"exp": "0", "coeff": "1"}]},
                {"exponent": [0, 0], "coeff": [{"exp": "0", "coeff": "-1"}]}
            ]
        }"#;
        let v: Value = serde_json::from_str(text).unwrap();
        let f = laurent_from_value(&v).unwrap();
        let g = tropicalize(&f).unwrap();
        assert_eq!(g.pieces().len(), 3);
        assert_eq!(laurent_from_value(&laurent_to_value(&f)).unwrap(), f);
    }

    #[test]
    fn troppoly_round_trips() {
        let g = TropicalPolynomial::new(
            2,
            vec![(vec![2, 0], q(0, 1)), (vec![0, 1], q(-1, 2))],
        )
        .unwrap();
        assert_eq!(troppoly_from_value(&troppoly_to_value(&g)).unwrap(), g);
    }

    #[test]
    fn curve_round_trips_and_is_deterministic() {
        let f = LaurentPolynomialK::new(
            2,
            vec![
                (vec![1, 0], PuiseuxSeries::constant(q(1, 1))),
                (vec![0, 1], PuiseuxSeries::constant(q(1, 1))),
                (vec![1, 1], PuiseuxSeries::constant(q(1, 1))),
                (vec![0, 0], PuiseuxSeries::term(q(1, 1), q(1, 1))),
            ],
        )
        .unwrap();
        let curve = dual_tropicalization(&f).unwrap();
        let value = curve_to_value(&curve);
        assert_eq!(curve_from_value(&value).unwrap(), curve);
        assert_eq!(
            serde_json::to_string(&value).unwrap(),
            serde_json::to_string(&curve_to_value(&curve)).unwrap()
        );
    }

    #[test]
    fn fan_bundle_divisor_weights_round_trip() {
        let fan = Fan1Skeleton::new(
            2,
            vec![
                Ray::new(vec![1, 0]).unwrap(),
                Ray::new(vec![0, 1]).unwrap(),
                Ray::new(vec![-1, -1]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(fan_from_value(&fan_to_value(&fan)).unwrap(), fan);

        let bundle = BundleDescriptor::new(2, 2, vec![vec![1, 0], vec![-2, 3]]).unwrap();
        assert_eq!(bundle_from_value(&bundle_to_value(&bundle)).unwrap(), bundle);

        let divisor = DivisorClass::new(
            vec![(Ray::new(vec![1, 0]).unwrap(), 2), (Ray::new(vec![0, 1]).unwrap(), -1)],
            vec![0, 4],
        );
        assert_eq!(divisor_from_value(&divisor_to_value(&divisor)).unwrap(), divisor);

        let weights = WeightFunction::new(vec![
            (Ray::new(vec![1, 0]).unwrap(), 3),
            (Ray::new(vec![-1, -1]).unwrap(), 0),
        ]);
        assert_eq!(weights_from_value(&weights_to_value(&weights)).unwrap(), weights);
    }

    #[test]
    fn defect_serializes_balanced_flag() {
        let balanced = DefectVector::new(vec![0, 0]);
        assert_eq!(
            serde_json::to_string(&defect_to_value(&balanced)).unwrap(),
            r#"{"balanced":true,"defect":[0,0]}"#
        );
        let off = DefectVector::new(vec![1, -2]);
        assert_eq!(
            serde_json::to_string(&defect_to_value(&off)).unwrap(),
            r#"{"balanced":false,"defect":[1,-2]}"#
        );
    }

    #[test]
    fn parse_errors_name_the_field() {
        let v: Value = serde_json::from_str(r#"{"n": 2, "rays": [[2, 4]]}"#).unwrap();
        assert!(fan_from_value(&v).is_err());
        let v: Value = serde_json::from_str(r#"{"n": 2}"#).unwrap();
        match fan_from_value(&v).unwrap_err() {
            Error::Invalid { field, .. } => assert_eq!(field, "rays"),
            other => panic!("unexpected error {other:?}"),
        }
        let v: Value = serde_json::from_str(r#"{"vars": 2, "terms": [{"exponent": [0, 0], "coeff": [{"exp": "1/0", "coeff": "1"}]}]}"#).unwrap();
        assert!(laurent_from_value(&v).is_err());
    }
}
