//! JSON encodings of polynomials, rationals and tuples. Big integers are
//! always written as decimal strings.

use std::collections::BTreeMap;

use ectk_core::{Error, ExactRational, KTuple, Monomial, Polynomial, Result, VarId};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

/// `{"terms":[{"exps":{"x[i][j]":e,...},"coeff":"<decimal>"}]}`, terms in
/// canonical monomial order.
pub fn polynomial_to_json(p: &Polynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            let exps: Map<String, Value> = m
                .iter()
                .map(|(v, e)| (v.to_string(), Value::from(e)))
                .collect();
            json!({ "exps": exps, "coeff": c.to_string() })
        })
        .collect();
    json!({ "terms": terms })
}

fn parse_var(name: &str) -> Result<VarId> {
    let bad = || Error::Parse(format!("variable name {name:?} is not of the form x[i][j]"));
    let inner = name
        .strip_prefix("x[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(bad)?;
    let (i, j) = inner.split_once("][").ok_or_else(bad)?;
    let i: usize = i.parse().map_err(|_| bad())?;
    let j: usize = j.parse().map_err(|_| bad())?;
    if i == 0 || j == 0 {
        return Err(bad());
    }
    Ok(VarId::new(i, j))
}

/// Inverse of [`polynomial_to_json`]. Repeated monomials are summed.
pub fn polynomial_from_json(value: &Value) -> Result<Polynomial> {
    let terms = value
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("polynomial JSON needs a \"terms\" array".into()))?;
    let mut p = Polynomial::zero();
    for term in terms {
        let exps = term
            .get("exps")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("term needs an \"exps\" object".into()))?;
        let coeff = term
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("term needs a decimal-string \"coeff\"".into()))?;
        let coeff: BigInt = coeff
            .parse()
            .map_err(|_| Error::Parse(format!("coefficient {coeff:?} is not a decimal integer")))?;
        let mut powers = BTreeMap::new();
        for (name, e) in exps {
            let e = e
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| Error::Parse(format!("exponent of {name} is not a small non-negative integer")))?;
            *powers.entry(parse_var(name)?).or_insert(0) += e;
        }
        p.add_term(Monomial::from_exponents(powers), coeff);
    }
    Ok(p)
}

pub fn rational_to_json(q: &ExactRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

/// Tuple maps as 1-based target lists, one per component.
pub fn tuple_to_json(t: &KTuple) -> Value {
    Value::from(
        t.maps()
            .map(|m| m.iter().map(|&v| v + 1).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, j: usize) -> Polynomial {
        Polynomial::var(VarId::new(i, j))
    }

    #[test]
    fn round_trip() {
        let p = &(&x(1, 1) * &x(2, 12)).pow(3) - &x(1, 2).scale(&BigInt::from(7));
        let big = Polynomial::constant(BigInt::from(10).pow(40));
        for q in [Polynomial::zero(), Polynomial::one(), p.clone(), &p + &big] {
            assert_eq!(polynomial_from_json(&polynomial_to_json(&q)).unwrap(), q);
        }
    }

    #[test]
    fn encoding() {
        let p = &x(1, 1) * &x(2, 1);
        assert_eq!(
            polynomial_to_json(&p),
            json!({"terms":[{"exps":{"x[1][1]":1,"x[2][1]":1},"coeff":"1"}]})
        );
        assert_eq!(polynomial_to_json(&Polynomial::zero()), json!({"terms":[]}));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            json!({}),
            json!({"terms":[{"exps":{"y[1][1]":1},"coeff":"1"}]}),
            json!({"terms":[{"exps":{"x[0][1]":1},"coeff":"1"}]}),
            json!({"terms":[{"exps":{"x[1][1]":1},"coeff":1}]}),
            json!({"terms":[{"exps":{"x[1][1]":-1},"coeff":"1"}]}),
        ] {
            assert!(matches!(polynomial_from_json(&bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn rationals() {
        let q = ExactRational::new(6.into(), (-8).into());
        assert_eq!(rational_to_json(&q), json!({"num":"-3","den":"4"}));
    }
}
