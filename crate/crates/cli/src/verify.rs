//! Oracle-versus-formula checks on a single shape.

use ectk_core::closedform::{
    card_ec, card_lambda, card_ncyclic, p_ec, p_lambda, p_ncyclic, prob_ec_uniform, prob_ncyclic_uniform,
    recursion_mn2,
};
use ectk_core::domain::{factorial, partitions};
use ectk_core::matrixtree::{forest_weight_closed, laplacian_submatrix, sym_det};
use ectk_core::oracle::{
    all_tuples_polynomial, enumerate_cycles, enumerate_forests, tracks_weights, verify_decomposition, Census,
    CycleFilter,
};
use ectk_core::{CycleType, ExactRational, NChoiceSet, Polynomial, Result, Shape};
use num_bigint::{BigInt, BigUint};
use num_traits::Pow;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::json::tuple_to_json;
use crate::parallel::parallel_census;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Census,
    Matrixtree,
    Decomposition,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Census => "census",
            Suite::Matrixtree => "matrixtree",
            Suite::Decomposition => "decomposition",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Counterexample or mismatch description, present on failure.
    pub detail: Option<Value>,
}

impl Check {
    fn to_json(&self) -> Value {
        let mut v = json!({ "name": self.name, "pass": self.pass });
        if let Some(d) = &self.detail {
            v["detail"] = d.clone();
        }
        v
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn equal_counts(&mut self, name: impl Into<String>, formula: &BigUint, oracle: &BigUint) {
        let pass = formula == oracle;
        self.0.push(Check {
            name: name.into(),
            pass,
            detail: (!pass).then(|| json!({ "formula": formula.to_string(), "oracle": oracle.to_string() })),
        });
    }

    fn equal_polys(&mut self, name: impl Into<String>, formula: &Polynomial, oracle: &Polynomial) {
        let pass = formula == oracle;
        let detail = (!pass).then(|| {
            let diff = formula - oracle;
            let (m, _) = diff.terms().next().expect("nonzero difference");
            json!({
                "monomial": m.to_string(),
                "formula_coeff": formula.coeff(m).to_string(),
                "oracle_coeff": oracle.coeff(m).to_string(),
            })
        });
        self.0.push(Check { name: name.into(), pass, detail });
    }

    fn flag(&mut self, name: impl Into<String>, pass: bool, detail: impl FnOnce() -> Value) {
        let detail = (!pass).then(detail);
        self.0.push(Check { name: name.into(), pass, detail });
    }
}

/// Runs `suite` on `shape`. Errors (caps, domain) abort the run; check
/// failures are reported in the returned list.
pub fn run(cfg: &RunConfig, shape: &Shape, suite: Suite) -> Result<Vec<Check>> {
    let mut checks = Checks::default();
    let census = match suite {
        Suite::All | Suite::Census | Suite::Decomposition => {
            Some(parallel_census(shape, cfg.enumeration_cap, cfg.workers, tracks_weights(shape))?)
        }
        Suite::Matrixtree => None,
    };
    if matches!(suite, Suite::All | Suite::Census) {
        census_checks(shape, census.as_ref().expect("census computed"), &mut checks)?;
    }
    if matches!(suite, Suite::All | Suite::Matrixtree) {
        matrixtree_checks(cfg, shape, &mut checks)?;
    }
    if matches!(suite, Suite::All | Suite::Decomposition) {
        decomposition_checks(cfg, shape, census.as_ref().expect("census computed"), &mut checks)?;
    }
    Ok(checks.0)
}

pub fn report(shape: &Shape, suite: Suite, checks: &[Check]) -> Value {
    let failed = checks.iter().filter(|c| !c.pass).count();
    json!({
        "shape": shape.to_string(),
        "suite": suite.name(),
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        "passed": checks.len() - failed,
        "failed": failed,
        "pass": failed == 0,
    })
}

fn census_checks(shape: &Shape, census: &Census, checks: &mut Checks) -> Result<()> {
    let total = shape.total_tuples();
    checks.equal_counts("census total = number of tuples", &total, &census.total_count());
    checks.equal_counts("card_ec", &card_ec(shape), &census.count(&CycleType::single(1)));
    let mut by_type_sum = BigUint::from(0u32);
    for n in 1..=shape.min_size() {
        match card_ncyclic(shape, n) {
            Ok(c) => checks.equal_counts(format!("card_ncyclic N={n}"), &c, &census.count(&CycleType::single(n))),
            Err(e) => checks.flag(format!("card_ncyclic N={n}"), false, || json!(e.to_string())),
        }
        for lambda in partitions(n) {
            let c = card_lambda(shape, &lambda);
            checks.equal_counts(format!("card_lambda {lambda}"), &c, &census.count(&lambda));
            by_type_sum += c;
        }
    }
    checks.equal_counts("sum of card_lambda = number of tuples", &by_type_sum, &total);

    if census.has_weights() {
        let all = all_tuples_polynomial(shape);
        let census_sum = census
            .by_type()
            .values()
            .fold(Polynomial::zero(), |acc, e| &acc + e.weight_sum.as_ref().expect("weights tracked"));
        checks.equal_polys("census weight sums add up", &all, &census_sum);
        let weight = |l: &CycleType| census.weight_sum(l).expect("weights tracked");
        checks.equal_polys("P_ec", &p_ec(shape), &weight(&CycleType::single(1)));
        let mut poly_sum = Polynomial::zero();
        for n in 1..=shape.min_size() {
            checks.equal_polys(format!("P_ncyclic N={n}"), &p_ncyclic(shape, n)?, &weight(&CycleType::single(n)));
            for lambda in partitions(n) {
                let p = p_lambda(shape, &lambda)?;
                checks.equal_polys(format!("P_lambda {lambda}"), &p, &weight(&lambda));
                poly_sum += &p;
            }
        }
        checks.equal_polys("sum of P_lambda = all tuples", &poly_sum, &all);
    }

    if let Some(n) = shape.uniform_size() {
        let k = shape.k();
        let total = ExactRational::from_integer(BigInt::from(total));
        let fraction = |c: BigUint| ExactRational::from_integer(BigInt::from(c)) / &total;
        let ec = fraction(census.count(&CycleType::single(1)));
        let formula = prob_ec_uniform(n, k)?;
        checks.flag("prob_ec_uniform", formula == ec, || {
            json!({ "formula": formula.to_string(), "oracle": ec.to_string() })
        });
        for cycle in 1..=n {
            let oracle = fraction(census.count(&CycleType::single(cycle)));
            let formula = prob_ncyclic_uniform(n, k, cycle)?;
            checks.flag(format!("prob_ncyclic_uniform N={cycle}"), formula == oracle, || {
                json!({ "formula": formula.to_string(), "oracle": oracle.to_string() })
            });
        }
    }

    if let [m, n, 2] = *shape.sizes() {
        checks.equal_counts("recursion (m,n,2)", &recursion_mn2(m, n)?, &census.count(&CycleType::single(1)));
    }
    Ok(())
}

fn matrixtree_checks(cfg: &RunConfig, shape: &Shape, checks: &mut Checks) -> Result<()> {
    for n in 1..=shape.min_size() {
        for u in NChoiceSet::all(shape, n) {
            let det = sym_det(&laplacian_submatrix(shape, &u), cfg.det_cap)?;
            let closed = forest_weight_closed(shape, &u, cfg.det_cap)?;
            let forests = enumerate_forests(shape, &u, cfg.enumeration_cap)?;
            checks.equal_polys(format!("det L(U) = closed form, U={u}"), &closed, &det);
            checks.equal_polys(format!("det L(U) = forest weight, U={u}"), &det, &forests.weight_sum);
        }
    }
    Ok(())
}

fn decomposition_checks(cfg: &RunConfig, shape: &Shape, census: &Census, checks: &mut Checks) -> Result<()> {
    let k = shape.k();
    for n in 1..=shape.min_size() {
        let mut single = BigUint::from(0u32);
        for (idx, u) in NChoiceSet::all(shape, n).into_iter().enumerate() {
            let r = verify_decomposition(shape, &u, cfg.enumeration_cap)?;
            let product = &r.cyclic_subgraphs * &r.forests;
            checks.flag(format!("decomposition bijection U={u}"), r.holds() && r.class_size == product, || {
                json!({
                    "injective": r.injective,
                    "parts_valid": r.parts_valid,
                    "surjective": r.surjective,
                    "weights_factor": r.weights_factor,
                    "class_size": r.class_size.to_string(),
                    "cycles_times_forests": product.to_string(),
                    "counterexample": r.counterexample.as_ref().map(tuple_to_json),
                })
            });
            single += &r.single_cycle_class_size;

            // cycle counts depend only on N, so one choice set suffices
            if idx == 0 {
                let nf = factorial(n);
                let all: BigUint = Pow::pow(&nf, k);
                checks.equal_counts(format!("cyclic subgraphs N={n}"), &all, &r.cyclic_subgraphs);
                let one = enumerate_cycles(shape, &u, &CycleFilter::SingleCycle, cfg.enumeration_cap)?;
                checks.equal_counts(format!("single cycles N={n}"), &(&all / BigUint::from(n)), &one);
                for lambda in partitions(n) {
                    let got = enumerate_cycles(shape, &u, &CycleFilter::Type(lambda.clone()), cfg.enumeration_cap)?;
                    let expected = &all * lambda.class_size() / &nf;
                    checks.equal_counts(format!("cycles of type {lambda}"), &expected, &got);
                }
            }
        }
        checks.equal_counts(
            format!("single-cycle classes cover EC(N), N={n}"),
            &single,
            &census.count(&CycleType::single(n)),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shapes_pass_every_suite() {
        let cfg = RunConfig::default();
        for s in ["2,2", "2,3", "2,2,2", "3", "1,1", "2,2,2,1"] {
            let shape: Shape = s.parse().unwrap();
            let checks = run(&cfg, &shape, Suite::All).unwrap();
            let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
            assert!(failed.is_empty(), "shape {s}: {failed:?}");
            assert!(checks.len() > 5);
        }
    }

    #[test]
    fn reports_mismatch_detail() {
        let mut checks = Checks::default();
        let one = Polynomial::one();
        checks.equal_polys("p", &one, &Polynomial::zero());
        checks.equal_counts("c", &BigUint::from(1u32), &BigUint::from(2u32));
        let shape: Shape = "2".parse().unwrap();
        let r = report(&shape, Suite::Census, &checks.0);
        assert_eq!(r["pass"], false);
        assert_eq!(r["failed"], 2);
        assert_eq!(r["checks"][0]["detail"]["formula_coeff"], "1");
        assert_eq!(r["checks"][1]["detail"]["oracle"], "2");
    }

    #[test]
    fn caps_abort() {
        let cfg = RunConfig { enumeration_cap: 10, ..RunConfig::default() };
        let shape: Shape = "2,3".parse().unwrap();
        assert!(matches!(run(&cfg, &shape, Suite::Census), Err(ectk_core::Error::CapExceeded { .. })));
    }
}
