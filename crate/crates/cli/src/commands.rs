//! One function per subcommand, each producing a JSON document.

use ectk_core::closedform::{
    card_ec, card_lambda, card_ncyclic, limit_proportional, p_ec, p_lambda, p_ncyclic, prob_ec_uniform,
    prob_ncyclic_uniform, to_f64, within_stated_domain,
};
use ectk_core::domain::partitions;
use ectk_core::matrixtree::{forest_weight_closed, laplacian_submatrix, sym_det};
use ectk_core::oracle::{enumerate_forests, sample_tuples, tracks_weights};
use ectk_core::{CycleType, Error, ExactRational, NChoiceSet, Polynomial, Result, Shape};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::json::{polynomial_to_json, rational_to_json};
use crate::parallel::parallel_census;

/// Which class of tuples a count or polynomial refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    Constant,
    Cycle(usize),
    Type(CycleType),
}

impl ClassSpec {
    pub fn from_flags(n: Option<usize>, lambda: Option<&str>) -> Result<Self> {
        match (n, lambda) {
            (Some(_), Some(_)) => Err(Error::Parse("give at most one of --N and --lambda".into())),
            (Some(0), None) => Err(Error::Domain("N must be at least 1".into())),
            (Some(n), None) => Ok(ClassSpec::Cycle(n)),
            (None, Some(l)) => Ok(ClassSpec::Type(l.parse()?)),
            (None, None) => Ok(ClassSpec::Constant),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ClassSpec::Constant => "EC".into(),
            ClassSpec::Cycle(n) => format!("EC(N={n})"),
            ClassSpec::Type(l) => format!("EC(lambda={l})"),
        }
    }
}

pub fn card(shape: &Shape, class: &ClassSpec) -> Result<Value> {
    let count = match class {
        ClassSpec::Constant => card_ec(shape),
        ClassSpec::Cycle(n) => card_ncyclic(shape, *n)?,
        ClassSpec::Type(l) => card_lambda(shape, l),
    };
    Ok(json!({
        "shape": shape.to_string(),
        "class": class.label(),
        "count": count.to_string(),
    }))
}

pub fn class_polynomial(shape: &Shape, class: &ClassSpec) -> Result<Polynomial> {
    match class {
        ClassSpec::Constant => Ok(p_ec(shape)),
        ClassSpec::Cycle(n) => p_ncyclic(shape, *n),
        ClassSpec::Type(l) => p_lambda(shape, l),
    }
}

pub fn poly(shape: &Shape, class: &ClassSpec) -> Result<Value> {
    let p = class_polynomial(shape, class)?;
    Ok(json!({
        "shape": shape.to_string(),
        "class": class.label(),
        "degree": p.degree(),
        "term_count": p.len(),
        "polynomial": polynomial_to_json(&p),
    }))
}

fn rational_report(q: &ExactRational) -> Value {
    json!({ "exact": rational_to_json(q), "decimal": to_f64(q) })
}

/// Exact uniform probability, or the proportional limit when `limit` is set.
pub fn prob(n: Option<usize>, k: Option<usize>, cycle: Option<usize>, limit: Option<u64>) -> Result<Value> {
    if let Some(c) = limit {
        let cycle = cycle.unwrap_or(1);
        let l = limit_proportional(c, cycle as u64)?;
        return Ok(json!({
            "c": c,
            "N": cycle,
            "limit": l.value,
            "pair_exponent": l.pair_exponent,
            "tail_exponent": l.tail_exponent,
            "expression": format!(
                "(1/{cycle}) * exp({}) * (1 - exp({}))",
                l.pair_exponent, l.tail_exponent
            ),
        }));
    }
    let (Some(n), Some(k)) = (n, k) else {
        return Err(Error::Parse("prob needs --n and --k (or --limit)".into()));
    };
    match cycle {
        None => {
            let q = prob_ec_uniform(n, k)?;
            let mut out = json!({ "n": n, "k": k, "class": "EC" });
            merge(&mut out, rational_report(&q));
            Ok(out)
        }
        Some(cycle) => {
            let q = prob_ncyclic_uniform(n, k, cycle)?;
            let mut out = json!({
                "n": n,
                "k": k,
                "N": cycle,
                "class": ClassSpec::Cycle(cycle).label(),
                "within_stated_domain": within_stated_domain(n, cycle),
            });
            merge(&mut out, rational_report(&q));
            Ok(out)
        }
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

/// Cycle types that can occur on `shape`, in the order of [`partitions`].
pub fn possible_types(shape: &Shape) -> Vec<CycleType> {
    (1..=shape.min_size()).flat_map(partitions).collect()
}

pub fn census(cfg: &RunConfig, shape: &Shape, weights: bool) -> Result<Value> {
    let with_weights = weights && tracks_weights(shape);
    let c = parallel_census(shape, cfg.enumeration_cap, cfg.workers, with_weights)?;
    let mut types = Map::new();
    for lambda in possible_types(shape) {
        let mut entry = json!({ "count": c.count(&lambda).to_string() });
        if let Some(w) = c.weight_sum(&lambda) {
            merge(&mut entry, json!({ "weight_sum": polynomial_to_json(&w) }));
        }
        types.insert(lambda.to_string(), entry);
    }
    Ok(json!({
        "shape": shape.to_string(),
        "total": c.total_count().to_string(),
        "weights": with_weights,
        "types": types,
    }))
}

pub fn sample(cfg: &RunConfig, shape: &Shape, trials: u64) -> Result<Value> {
    let s = sample_tuples(shape, trials, cfg.seed)?;
    let total = ExactRational::from_integer(BigInt::from(shape.total_tuples()));
    let mut types = Map::new();
    for lambda in possible_types(shape) {
        let hits = s.hits.get(&lambda).copied().unwrap_or(0);
        let frequency = s.frequency(&lambda);
        let expected = ExactRational::from_integer(BigInt::from(card_lambda(shape, &lambda))) / &total;
        let expected_f = to_f64(&expected);
        types.insert(
            lambda.to_string(),
            json!({
                "hits": hits,
                "frequency": frequency,
                "expected": rational_to_json(&expected),
                "expected_decimal": expected_f,
                "abs_deviation": (frequency - expected_f).abs(),
            }),
        );
    }
    Ok(json!({
        "shape": shape.to_string(),
        "trials": trials,
        "seed": cfg.seed,
        "types": types,
    }))
}

pub fn forest_det(cfg: &RunConfig, shape: &Shape, u_text: &str) -> Result<Value> {
    let u = NChoiceSet::parse(shape, u_text)?;
    let det = sym_det(&laplacian_submatrix(shape, &u), cfg.det_cap)?;
    let closed = forest_weight_closed(shape, &u, cfg.det_cap)?;
    let (enumeration, skipped) = match enumerate_forests(shape, &u, cfg.enumeration_cap) {
        Ok(f) => (Some(f), None),
        Err(e @ Error::CapExceeded { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let equal = det == closed && enumeration.as_ref().is_none_or(|f| f.weight_sum == det);
    Ok(json!({
        "shape": shape.to_string(),
        "U": u.to_string(),
        "N": u.n(),
        "non_roots": u.complement_size(shape),
        "determinant": polynomial_to_json(&det),
        "closed_form": polynomial_to_json(&closed),
        "enumeration": enumeration.as_ref().map(|f| polynomial_to_json(&f.weight_sum)),
        "forest_count": enumeration.as_ref().map(|f| f.count.to_string()),
        "enumeration_skipped": skipped,
        "equal": equal,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json::polynomial_from_json;

    fn shape(s: &str) -> Shape {
        s.parse().unwrap()
    }

    #[test]
    fn class_flags() {
        assert_eq!(ClassSpec::from_flags(None, None).unwrap(), ClassSpec::Constant);
        assert_eq!(ClassSpec::from_flags(Some(2), None).unwrap(), ClassSpec::Cycle(2));
        assert!(matches!(ClassSpec::from_flags(Some(2), Some("2")), Err(Error::Parse(_))));
        assert!(matches!(ClassSpec::from_flags(None, Some("2+x")), Err(Error::Parse(_))));
    }

    #[test]
    fn card_examples() {
        assert_eq!(card(&shape("2,2"), &ClassSpec::Constant).unwrap()["count"], "12");
        assert_eq!(card(&shape("2,2,2"), &ClassSpec::Constant).unwrap()["count"], "56");
        assert_eq!(card(&shape("3"), &ClassSpec::Cycle(3)).unwrap()["count"], "2");
    }

    #[test]
    fn poly_examples() {
        let out = poly(&shape("1,1"), &ClassSpec::Constant).unwrap();
        assert_eq!(out["term_count"], 1);
        assert_eq!(
            out["polynomial"],
            json!({"terms":[{"exps":{"x[1][1]":1,"x[2][1]":1},"coeff":"1"}]})
        );
        let out = poly(&shape("2,2"), &ClassSpec::Constant).unwrap();
        assert_eq!(out["term_count"], 8);
        assert_eq!(polynomial_from_json(&out["polynomial"]).unwrap(), p_ec(&shape("2,2")));
        assert!(matches!(poly(&shape("2,3"), &ClassSpec::Cycle(3)), Err(Error::Domain(_))));
    }

    #[test]
    fn prob_examples() {
        let out = prob(Some(2), Some(2), None, None).unwrap();
        assert_eq!(out["exact"], json!({"num":"3","den":"4"}));
        let out = prob(Some(5), Some(1), None, None).unwrap();
        assert_eq!(out["exact"], json!({"num":"1","den":"5"}));
        let out = prob(None, None, Some(1), Some(1)).unwrap();
        assert!((out["limit"].as_f64().unwrap() - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
        let out = prob(Some(3), Some(1), Some(3), None).unwrap();
        assert_eq!(out["within_stated_domain"], false);
        assert!(matches!(prob(Some(3), None, None, None), Err(Error::Parse(_))));
    }

    #[test]
    fn census_lists_every_possible_type() {
        let cfg = RunConfig::default();
        let out = census(&cfg, &shape("2,2"), true).unwrap();
        assert_eq!(out["types"]["1"]["count"], "12");
        assert_eq!(out["types"]["2"]["count"], "2");
        assert_eq!(out["types"]["1+1"]["count"], "2");
        let out = census(&cfg, &shape("1,1"), true).unwrap();
        assert_eq!(out["types"], json!({"1": {"count": "1", "weight_sum": {"terms":[{"exps":{"x[1][1]":1,"x[2][1]":1},"coeff":"1"}]}}}));
        let out = census(&cfg, &shape("3"), false).unwrap();
        assert_eq!(out["total"], "27");
        assert!(out["types"]["1"].get("weight_sum").is_none());
    }

    #[test]
    fn forest_det_examples() {
        let cfg = RunConfig::default();
        let out = forest_det(&cfg, &shape("2,2"), "1;1").unwrap();
        assert_eq!(out["equal"], true);
        let out = forest_det(&cfg, &shape("1,1"), "1;1").unwrap();
        assert_eq!(polynomial_from_json(&out["determinant"]).unwrap(), Polynomial::one());
        assert_eq!(out["equal"], true);
        let out = forest_det(&cfg, &shape("3,3"), "1,2;1,2").unwrap();
        assert_eq!(out["equal"], true);
        let tight = RunConfig { det_cap: 1, ..RunConfig::default() };
        assert!(matches!(forest_det(&tight, &shape("3,3"), "1;1"), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn sample_is_close_and_deterministic() {
        let cfg = RunConfig { seed: 1, ..RunConfig::default() };
        let a = sample(&cfg, &shape("2,2"), 10_000).unwrap();
        assert!((a["types"]["1"]["frequency"].as_f64().unwrap() - 0.75).abs() < 0.05);
        assert_eq!(a, sample(&cfg, &shape("2,2"), 10_000).unwrap());
    }
}
