//! Closed forms for the eventually constant, eventually N-cyclic and
//! eventually lambda-cyclic classes: generating polynomials, cardinalities,
//! exact probabilities and the proportional-scaling limit.
//!
//! Exponents of the form `n_{i-1} - (N+1)` go negative exactly when some
//! component has size `N`. In that case every product of `e_{N+1}` vanishes
//! and the polynomial is built from the non-negative form
//! `prod_i e_1(X_i)^{n_{i-1}-N} e_N(X_i)` instead.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::domain::{binomial, factorial, CycleType, Shape};
use crate::error::{Error, Result};
use crate::polyring::{e1, e_sym, Polynomial};

/// Reduced fraction of big integers with positive denominator.
pub type ExactRational = BigRational;

fn int(n: usize) -> BigInt {
    BigInt::from(n)
}

/// `n^e` for a possibly negative exponent.
fn rational_pow(n: usize, e: i64) -> ExactRational {
    let base = ExactRational::from_integer(int(n));
    if e >= 0 {
        Pow::pow(base, e as u64)
    } else {
        Pow::pow(base.recip(), e.unsigned_abs())
    }
}

fn product(polys: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    polys
        .into_iter()
        .fold(Polynomial::one(), |acc, p| &acc * &p)
}

fn e_j(shape: &Shape, i: usize, j: usize) -> Polynomial {
    e_sym(shape, i + 1, &[], j).expect("component in range")
}

/// Generating polynomial of the eventually constant tuples,
/// `prod_i e_1(X_i)^{n_{i-1}-2} (prod_j e_1(X_j)^2 - 2^k prod_j e_2(X_j))`,
/// or `prod_i e_1(X_i)^{n_{i-1}}` when some `n_i = 1`.
pub fn p_ec(shape: &Shape) -> Polynomial {
    let k = shape.k();
    if shape.min_size() == 1 {
        return product((0..k).map(|i| e1(shape, i + 1).pow(shape.size(shape.prev(i)) as u32)));
    }
    let prefactor = product((0..k).map(|i| e1(shape, i + 1).pow((shape.size(shape.prev(i)) - 2) as u32)));
    let squares = product((0..k).map(|i| e1(shape, i + 1).pow(2)));
    let pairs = product((0..k).map(|i| e_j(shape, i, 2)));
    let bracket = &squares - &pairs.scale(&Pow::pow(BigInt::from(2), k));
    &prefactor * &bracket
}

/// Common factor of `P_N` and `P_lambda` once the cycle count is stripped:
/// `prod_i e_1(X_i)^{n_{i-1}-(N+1)} (prod_j e_1(X_j) e_N(X_j) - (N+1)^k prod_j e_{N+1}(X_j))`.
fn cyclic_core(shape: &Shape, n: usize) -> Polynomial {
    let k = shape.k();
    if shape.min_size() == n {
        return product((0..k).map(|i| {
            &e1(shape, i + 1).pow((shape.size(shape.prev(i)) - n) as u32) * &e_j(shape, i, n)
        }));
    }
    let prefactor = product((0..k).map(|i| e1(shape, i + 1).pow((shape.size(shape.prev(i)) - n - 1) as u32)));
    let lead = product((0..k).map(|i| &e1(shape, i + 1) * &e_j(shape, i, n)));
    let tail = product((0..k).map(|i| e_j(shape, i, n + 1)));
    let bracket = &lead - &tail.scale(&Pow::pow(int(n + 1), k));
    &prefactor * &bracket
}

fn check_cycle_size(shape: &Shape, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("cycle size N must be at least 1"));
    }
    if n > shape.min_size() {
        return Err(Error::domain(alloc::format!(
            "N = {n} exceeds the smallest component ({}) of shape {shape}; no N-choice set exists",
            shape.min_size()
        )));
    }
    Ok(())
}

/// Generating polynomial of the eventually `N`-cyclic tuples. Errors when
/// `N` is 0 or exceeds `min n_i`.
pub fn p_ncyclic(shape: &Shape, n: usize) -> Result<Polynomial> {
    check_cycle_size(shape, n)?;
    // (N!)^k / N = (N!)^{k-1} (N-1)!
    let coeff: BigUint = Pow::pow(factorial(n), shape.k() - 1) * factorial(n - 1);
    Ok(cyclic_core(shape, n).scale(&BigInt::from(coeff)))
}

/// Generating polynomial of the eventually `lambda`-cyclic tuples.
pub fn p_lambda(shape: &Shape, lambda: &CycleType) -> Result<Polynomial> {
    let n = lambda.size();
    check_cycle_size(shape, n)?;
    // (N!)^k / z_lambda = (N!)^{k-1} * #(permutations of type lambda)
    let coeff: BigUint = Pow::pow(factorial(n), shape.k() - 1) * lambda.class_size();
    Ok(cyclic_core(shape, n).scale(&BigInt::from(coeff)))
}

/// `#EC = prod_i n_i^{n_{i-1}-1} (prod_j n_j - prod_j (n_j - 1))`.
pub fn card_ec(shape: &Shape) -> BigUint {
    let k = shape.k();
    let prefactor: BigUint = (0..k)
        .map(|i| Pow::pow(BigUint::from(shape.size(i)), shape.size(shape.prev(i)) - 1))
        .product();
    let all: BigUint = shape.sizes().iter().map(|&n| BigUint::from(n)).product();
    let none: BigUint = shape.sizes().iter().map(|&n| BigUint::from(n - 1)).product();
    prefactor * (all - none)
}

fn difference_term(shape: &Shape, n: usize) -> ExactRational {
    let all: BigInt = shape.sizes().iter().map(|&m| int(m)).product();
    let rest: BigInt = shape.sizes().iter().map(|&m| int(m - n)).product();
    ExactRational::from_integer(all - rest)
}

/// `#EC(N)` in the choice-set form
/// `prod_i C(n_i, N) * (N!)^k / N * prod_i n_i^{n_{i-1}-(N+1)} * (prod n_j - prod (n_j - N))`.
/// Zero when `N > min n_i`.
pub fn card_ncyclic_geometric(shape: &Shape, n: usize) -> ExactRational {
    if n == 0 || n > shape.min_size() {
        return ExactRational::zero();
    }
    let k = shape.k();
    let choice_sets: BigUint = shape.sizes().iter().map(|&m| binomial(m, n)).product();
    let cycles = ExactRational::new(BigInt::from(Pow::pow(factorial(n), k)), int(n));
    let forests: ExactRational = (0..k)
        .map(|i| rational_pow(shape.size(i), shape.size(shape.prev(i)) as i64 - n as i64 - 1))
        .product();
    ExactRational::from_integer(BigInt::from(choice_sets)) * cycles * forests * difference_term(shape, n)
}

/// `#EC(N)` in the falling-factorial form
/// `(1/N) prod_i n_i^{n_{i-1}-N} (n_i-1)!/(n_i-N)! (prod n_j - prod (n_j - N))`.
/// Zero when `N > min n_i`.
pub fn card_ncyclic_algebraic(shape: &Shape, n: usize) -> ExactRational {
    if n == 0 || n > shape.min_size() {
        return ExactRational::zero();
    }
    let k = shape.k();
    let factors: BigInt = (0..k)
        .map(|i| {
            let m = shape.size(i);
            let power = Pow::pow(BigUint::from(m), shape.size(shape.prev(i)) - n);
            BigInt::from(power * (factorial(m - 1) / factorial(m - n)))
        })
        .product();
    ExactRational::new(factors, int(n)) * difference_term(shape, n)
}

fn to_count(value: ExactRational, what: &str) -> Result<BigUint> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::InvariantViolation(alloc::format!(
            "{what} evaluated to the non-count {value}"
        )));
    }
    Ok(value.to_integer().to_biguint().expect("non-negative"))
}

/// `#EC(N)`. Computes both printed forms and fails with
/// [`Error::InvariantViolation`] if they disagree. Zero when `N > min n_i`.
pub fn card_ncyclic(shape: &Shape, n: usize) -> Result<BigUint> {
    let geometric = card_ncyclic_geometric(shape, n);
    let algebraic = card_ncyclic_algebraic(shape, n);
    if geometric != algebraic {
        return Err(Error::InvariantViolation(alloc::format!(
            "#EC({n}) on shape {shape}: choice-set form {geometric} != falling-factorial form {algebraic}"
        )));
    }
    to_count(geometric, "#EC(N)")
}

/// `#EC(lambda) = (1/z_lambda) prod_i n_i^{n_{i-1}-(N+1)} n_i!/(n_i-N)! (prod n_j - prod (n_j - N))`
/// with `z_lambda = prod_l l^{m_l} m_l!`. Zero when `|lambda| > min n_i`.
pub fn card_lambda(shape: &Shape, lambda: &CycleType) -> BigUint {
    let n = lambda.size();
    if n > shape.min_size() {
        return BigUint::zero();
    }
    let k = shape.k();
    let factors: ExactRational = (0..k)
        .map(|i| {
            let m = shape.size(i);
            rational_pow(m, shape.size(shape.prev(i)) as i64 - n as i64 - 1)
                * ExactRational::from_integer(BigInt::from(factorial(m) / factorial(m - n)))
        })
        .product();
    let value = factors * difference_term(shape, n)
        / ExactRational::from_integer(BigInt::from(lambda.centralizer_order()));
    to_count(value, "#EC(lambda)").expect("#EC(lambda) is a non-negative integer")
}

/// Probability that a uniform k-tuple on `k` sets of size `n` is eventually
/// constant: `1 - (1 - 1/n)^k`.
pub fn prob_ec_uniform(n: usize, k: usize) -> Result<ExactRational> {
    if n == 0 || k == 0 {
        return Err(Error::domain("n and k must be at least 1"));
    }
    let q = ExactRational::one() - ExactRational::new(BigInt::one(), int(n));
    Ok(ExactRational::one() - Pow::pow(q, k))
}

/// Probability that a uniform k-tuple on `k` sets of size `n` is eventually
/// `N`-cyclic:
/// `(1/N) n^{-k(N-1)} ((n-1)!/(n-N)!)^k (1 - (1 - N/n)^k)`. Zero when `N > n`.
///
/// The formula is also evaluated at `n = N`; see [`within_stated_domain`].
pub fn prob_ncyclic_uniform(n: usize, k: usize, cycle: usize) -> Result<ExactRational> {
    if n == 0 || k == 0 || cycle == 0 {
        return Err(Error::domain("n, k and N must be at least 1"));
    }
    if cycle > n {
        return Ok(ExactRational::zero());
    }
    let falling = ExactRational::from_integer(BigInt::from(factorial(n - 1) / factorial(n - cycle)));
    let scaled = falling * rational_pow(n, -(cycle as i64 - 1));
    let q = ExactRational::one() - ExactRational::new(int(cycle), int(n));
    let tail = ExactRational::one() - Pow::pow(q, k);
    Ok(Pow::pow(scaled, k) * tail / ExactRational::from_integer(int(cycle)))
}

/// Whether `(n, N)` lies in the range `n >= N + 1` for which the uniform
/// N-cyclic probability was derived.
pub fn within_stated_domain(n: usize, cycle: usize) -> bool {
    n > cycle
}

/// `lim_{n -> inf} p_{cn,N}(n) = (1/N) e^{-c C(N,2)} (1 - e^{-cN})`, with the
/// integer exponents kept for exact reporting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProportionalLimit {
    pub c: u64,
    pub cycle: u64,
    /// `-c N (N-1) / 2`
    pub pair_exponent: i64,
    /// `-c N`
    pub tail_exponent: i64,
    pub value: f64,
}

pub fn limit_proportional(c: u64, cycle: u64) -> Result<ProportionalLimit> {
    if c == 0 || cycle == 0 {
        return Err(Error::domain("c and N must be at least 1"));
    }
    let pair_exponent = -((c * cycle * (cycle - 1) / 2) as i64);
    let tail_exponent = -((c * cycle) as i64);
    let value =
        libm::exp(pair_exponent as f64) * (1.0 - libm::exp(tail_exponent as f64)) / cycle as f64;
    Ok(ProportionalLimit {
        c,
        cycle,
        pair_exponent,
        tail_exponent,
        value,
    })
}

/// Eventually constant count on shape `(m, n, 2)` obtained by subtracting
/// from all `2^n n^m m^2` triples the ones with two 3-cycles and the ones
/// with a 6-cycle, each counted through the split of `X_1`, `X_2` by which
/// vertex of `X_3` they feed.
pub fn recursion_mn2(m: usize, n: usize) -> Result<BigUint> {
    if m == 0 || n == 0 {
        return Err(Error::domain("m and n must be at least 1"));
    }
    let total = BigInt::from(Pow::pow(BigUint::from(2u32), n) * Pow::pow(BigUint::from(n), m) * BigUint::from(m * m));
    let mut two_cycles = BigInt::zero();
    let mut six_cycles = BigInt::zero();
    for a in 1..m {
        for b in 1..n {
            let choose = BigInt::from(binomial(m, a) * binomial(n, b));
            let left = Shape::new(Vec::from([a, b, 1])).expect("positive sizes");
            let right = Shape::new(Vec::from([m - a, n - b, 1])).expect("positive sizes");
            two_cycles += &choose * BigInt::from(card_ec(&left) * card_ec(&right));
            let boxed = int(a) * BigInt::from(Pow::pow(BigUint::from(b), a));
            let circled = int(m - a) * BigInt::from(Pow::pow(BigUint::from(n - b), m - a));
            six_cycles += choose * boxed * circled;
        }
    }
    let value = total - two_cycles - six_cycles;
    value
        .to_biguint()
        .ok_or_else(|| Error::InvariantViolation(alloc::format!("negative (m,n,2) count {value}")))
}

/// Decimal approximation of an exact rational (for reporting only).
pub fn to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
