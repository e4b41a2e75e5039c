//! Brute-force ground truth.
//!
//! Everything here enumerates explicitly: all k-tuples of a shape, all
//! rooted in-forests, all cyclic subgraphs on a choice set. These are the
//! reference values the closed forms and the determinant are checked against.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{self, CycleType, KTuple, NChoiceSet, Scratch, Shape};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, VarId};

/// Default bound on the number of tuples (or edge assignments) enumerated.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Census weight sums are kept only up to this total degree `sum n_i`.
pub const WEIGHT_DEGREE_LIMIT: usize = 24;

fn check_cap(what: &'static str, required: &BigUint, cap: u64) -> Result<u64> {
    match required.to_u64() {
        Some(r) if r <= cap => Ok(r),
        _ => Err(Error::CapExceeded {
            what,
            required: required.clone(),
            cap: BigUint::from(cap),
        }),
    }
}

/// Radix of every flat target position: vertex `v` of `X_i` chooses among
/// the `n_{i+1}` vertices of the next component.
fn radices(shape: &Shape) -> Vec<usize> {
    (0..shape.k())
        .flat_map(|i| core::iter::repeat_n(shape.size(shape.next(i)), shape.size(i)))
        .collect()
}

/// Advances a mixed-radix counter (least significant digit first).
/// Returns false on wrap-around.
fn increment(digits: &mut [usize], radices: &[usize]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radices) {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

fn decode(mut index: u64, digits: &mut [usize], radices: &[usize]) {
    for (d, &r) in digits.iter_mut().zip(radices) {
        *d = (index % r as u64) as usize;
        index /= r as u64;
    }
}

/// Iterator over every k-tuple of a shape, in mixed-radix counter order with
/// the first vertex of `X_1` as the least significant digit.
pub struct TupleIter {
    current: KTuple,
    radices: Vec<usize>,
    remaining: u64,
}

impl Iterator for TupleIter {
    type Item = KTuple;

    fn next(&mut self) -> Option<KTuple> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current.clone();
        increment(self.current.flat_mut(), &self.radices);
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// All tuples of `shape`; refuses when there are more than `cap`.
pub fn enumerate_tuples(shape: &Shape, cap: u64) -> Result<TupleIter> {
    let total = check_cap("tuple enumeration", &shape.total_tuples(), cap)?;
    Ok(TupleIter {
        current: KTuple::first(shape),
        radices: radices(shape),
        remaining: total,
    })
}

/// Count and (optional) weight sum of the tuples of one cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub count: BigUint,
    pub weight_sum: Option<Polynomial>,
}

/// Tuples of a shape grouped by cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    shape: Shape,
    with_weights: bool,
    by_type: BTreeMap<CycleType, CensusEntry>,
}

impl Census {
    pub fn empty(shape: &Shape, with_weights: bool) -> Self {
        Census {
            shape: shape.clone(),
            with_weights,
            by_type: BTreeMap::new(),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn has_weights(&self) -> bool {
        self.with_weights
    }

    /// Observed cycle types only; absent types have count zero.
    pub fn by_type(&self) -> &BTreeMap<CycleType, CensusEntry> {
        &self.by_type
    }

    pub fn count(&self, lambda: &CycleType) -> BigUint {
        self.by_type
            .get(lambda)
            .map(|e| e.count.clone())
            .unwrap_or_default()
    }

    /// Weight sum for `lambda`, zero when unobserved; `None` if weights were
    /// not tracked.
    pub fn weight_sum(&self, lambda: &CycleType) -> Option<Polynomial> {
        if !self.with_weights {
            return None;
        }
        Some(
            self.by_type
                .get(lambda)
                .and_then(|e| e.weight_sum.clone())
                .unwrap_or_default(),
        )
    }

    pub fn total_count(&self) -> BigUint {
        self.by_type.values().map(|e| &e.count).sum()
    }

    /// Order-independent merge of two shard censuses of the same shape.
    pub fn merge(mut self, other: Census) -> Census {
        assert_eq!(self.shape, other.shape, "merging censuses of different shapes");
        assert_eq!(self.with_weights, other.with_weights);
        for (lambda, entry) in other.by_type {
            match self.by_type.get_mut(&lambda) {
                None => {
                    self.by_type.insert(lambda, entry);
                }
                Some(mine) => {
                    mine.count += entry.count;
                    if let (Some(a), Some(b)) = (mine.weight_sum.as_mut(), entry.weight_sum.as_ref()) {
                        *a += b;
                    }
                }
            }
        }
        self
    }
}

/// Whether [`census`] keeps weight sums for `shape`.
pub fn tracks_weights(shape: &Shape) -> bool {
    shape.total_vertices() <= WEIGHT_DEGREE_LIMIT
}

/// Classifies every tuple of `shape`.
pub fn census(shape: &Shape, cap: u64) -> Result<Census> {
    let total = check_cap("census", &shape.total_tuples(), cap)?;
    Ok(census_shard(shape, 0, total, tracks_weights(shape)))
}

#[derive(Default)]
struct ShardEntry {
    count: u64,
    // in-degree vector (flat vertex order) -> multiplicity
    weights: BTreeMap<Vec<u32>, u64>,
}

/// Census of the tuples with index in `start..end` (counter order of
/// [`enumerate_tuples`]). No cap is applied; callers bound the range.
pub fn census_shard(shape: &Shape, start: u64, end: u64, with_weights: bool) -> Census {
    let radices = radices(shape);
    let mut tuple = KTuple::first(shape);
    decode(start, tuple.flat_mut(), &radices);

    // flat index of vertex 0 of each component
    let mut vertex_offset = vec![0usize; shape.k()];
    for i in 1..shape.k() {
        vertex_offset[i] = vertex_offset[i - 1] + shape.size(i - 1);
    }
    let target_offset: Vec<usize> = radices
        .iter()
        .enumerate()
        .map(|(pos, _)| {
            let comp = component_of(shape, pos);
            vertex_offset[shape.next(comp)]
        })
        .collect();

    let mut scratch = Scratch::default();
    let mut parts = Vec::new();
    let mut indegree = vec![0u32; shape.total_vertices()];
    let mut acc: BTreeMap<Vec<usize>, ShardEntry> = BTreeMap::new();

    for _ in start..end {
        scratch.classify_into(shape, &tuple, &mut parts);
        if !acc.contains_key(parts.as_slice()) {
            acc.insert(parts.clone(), ShardEntry::default());
        }
        let entry = acc.get_mut(parts.as_slice()).expect("inserted above");
        entry.count += 1;
        if with_weights {
            indegree.iter_mut().for_each(|d| *d = 0);
            for (pos, &t) in tuple.flat().iter().enumerate() {
                indegree[target_offset[pos] + t] += 1;
            }
            match entry.weights.get_mut(indegree.as_slice()) {
                Some(m) => *m += 1,
                None => {
                    entry.weights.insert(indegree.clone(), 1);
                }
            }
        }
        increment(tuple.flat_mut(), &radices);
    }

    let vars: Vec<VarId> = (0..shape.k()).flat_map(|i| shape.component_vars(i)).collect();
    let by_type = acc
        .into_iter()
        .map(|(parts, e)| {
            let weight_sum = with_weights.then(|| {
                Polynomial::from_terms(e.weights.into_iter().map(|(deg, m)| {
                    (
                        Monomial::from_exponents(vars.iter().copied().zip(deg)),
                        BigInt::from(m),
                    )
                }))
            });
            (
                CycleType::from_sorted_parts(&parts),
                CensusEntry {
                    count: BigUint::from(e.count),
                    weight_sum,
                },
            )
        })
        .collect();
    Census {
        shape: shape.clone(),
        with_weights,
        by_type,
    }
}

fn component_of(shape: &Shape, flat_pos: usize) -> usize {
    let mut acc = 0;
    for i in 0..shape.k() {
        acc += shape.size(i);
        if flat_pos < acc {
            return i;
        }
    }
    unreachable!("flat position {flat_pos} beyond shape {shape}")
}

/// Count and weight sum of the spanning in-forests rooted at `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestSum {
    pub count: BigUint,
    pub weight_sum: Polynomial,
}

/// Non-root vertices `(component, index)` of `X \ U`, components in order.
fn non_roots(shape: &Shape, u: &NChoiceSet) -> Vec<(usize, usize)> {
    (0..shape.k())
        .flat_map(|i| u.complement(shape, i).into_iter().map(move |v| (i, v)))
        .collect()
}

/// Whether every trail from a non-root reaches `U`. `succ[j]` is the target
/// of non-root `j` as `(component, index)`; `position` maps a vertex back to
/// its non-root slot, or `None` for roots.
fn all_trails_reach_roots(
    succ: &[(usize, usize)],
    position: &impl Fn(usize, usize) -> Option<usize>,
    state: &mut [u8],
) -> bool {
    // 0 = unknown, 1 = on current trail, 2 = known to reach a root
    state.iter_mut().for_each(|s| *s = 0);
    let mut trail = Vec::new();
    for start in 0..succ.len() {
        if state[start] == 2 {
            continue;
        }
        trail.clear();
        let mut j = start;
        loop {
            if state[j] == 1 {
                return false;
            }
            if state[j] == 2 {
                break;
            }
            state[j] = 1;
            trail.push(j);
            let (c, v) = succ[j];
            match position(c, v) {
                None => break,
                Some(next) => j = next,
            }
        }
        for &t in &trail {
            state[t] = 2;
        }
    }
    true
}

/// Enumerates every assignment of one outgoing edge per vertex of `X \ U`
/// (into the next component) and keeps the in-forests rooted at `U`.
pub fn enumerate_forests(shape: &Shape, u: &NChoiceSet, cap: u64) -> Result<ForestSum> {
    let nodes = non_roots(shape, u);
    let radix: Vec<usize> = nodes.iter().map(|&(i, _)| shape.size(shape.next(i))).collect();
    let required: BigUint = radix.iter().map(|&r| BigUint::from(r)).product();
    check_cap("forest enumeration", &required, cap)?;

    let mut slot: Vec<Vec<Option<usize>>> = (0..shape.k()).map(|i| vec![None; shape.size(i)]).collect();
    for (j, &(i, v)) in nodes.iter().enumerate() {
        slot[i][v] = Some(j);
    }
    let position = |c: usize, v: usize| slot[c][v];

    let vars: Vec<VarId> = (0..shape.k()).flat_map(|i| shape.component_vars(i)).collect();
    let mut vertex_offset = vec![0usize; shape.k()];
    for i in 1..shape.k() {
        vertex_offset[i] = vertex_offset[i - 1] + shape.size(i - 1);
    }

    let mut digits = vec![0usize; nodes.len()];
    let mut succ = vec![(0usize, 0usize); nodes.len()];
    let mut state = vec![0u8; nodes.len()];
    let mut indegree = vec![0u32; vars.len()];
    let mut weights: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut count = 0u64;
    loop {
        for (j, &(i, _)) in nodes.iter().enumerate() {
            succ[j] = (shape.next(i), digits[j]);
        }
        if all_trails_reach_roots(&succ, &position, &mut state) {
            count += 1;
            indegree.iter_mut().for_each(|d| *d = 0);
            for &(c, v) in &succ {
                indegree[vertex_offset[c] + v] += 1;
            }
            *weights.entry(indegree.clone()).or_insert(0) += 1;
        }
        if !increment(&mut digits, &radix) {
            break;
        }
    }
    let weight_sum = Polynomial::from_terms(weights.into_iter().map(|(deg, m)| {
        (
            Monomial::from_exponents(vars.iter().copied().zip(deg)),
            BigInt::from(m),
        )
    }));
    Ok(ForestSum {
        count: BigUint::from(count),
        weight_sum,
    })
}

/// Which cyclic subgraphs on a choice set to count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleFilter {
    /// Every k-tuple of bijections `U_i -> U_{i+1}`.
    Any,
    /// Single `N`-cycles.
    SingleCycle,
    /// Composite of the given cycle type.
    Type(CycleType),
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Counts k-tuples of bijections `f_i : U_i -> U_{i+1}` whose composite on
/// `U_1` matches `filter`.
pub fn enumerate_cycles(shape: &Shape, u: &NChoiceSet, filter: &CycleFilter, cap: u64) -> Result<BigUint> {
    let n = u.n();
    if u.k() != shape.k() {
        return Err(Error::domain("choice set does not match the shape"));
    }
    if let CycleFilter::Type(lambda) = filter {
        if lambda.size() != n {
            return Err(Error::domain(alloc::format!(
                "cycle type {lambda} has size {}, choice set has N = {n}",
                lambda.size()
            )));
        }
    }
    let required = Pow::pow(domain::factorial(n), shape.k());
    check_cap("cycle enumeration", &required, cap)?;

    // Bijections U_i -> U_{i+1} are permutations of the N positions, since
    // both sides are listed in sorted order.
    let perms = permutations(n);
    let mut digits = vec![0usize; shape.k()];
    let radix = vec![perms.len(); shape.k()];
    let mut count = 0u64;
    let mut comp = vec![0usize; n];
    loop {
        for (p, slot) in comp.iter_mut().enumerate() {
            let mut x = p;
            for &d in &digits {
                x = perms[d][x];
            }
            *slot = x;
        }
        let keep = match filter {
            CycleFilter::Any => true,
            CycleFilter::SingleCycle => domain::permutation_cycle_type(&comp).is_single_cycle(),
            CycleFilter::Type(lambda) => &domain::permutation_cycle_type(&comp) == lambda,
        };
        if keep {
            count += 1;
        }
        if !increment(&mut digits, &radix) {
            break;
        }
    }
    Ok(BigUint::from(count))
}

/// Outcome of checking that `D -> (C(D), D_U)` is a weight-preserving
/// bijection from the tuples with cyclic vertex set `U` onto
/// (cyclic subgraphs on `U`) x (in-forests rooted at `U`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    /// `|D_U|`: tuples whose cyclic part has vertex set `U`.
    pub class_size: BigUint,
    /// Tuples in the class whose cyclic part is a single cycle.
    pub single_cycle_class_size: BigUint,
    /// `|C_U|`, enumerated.
    pub cyclic_subgraphs: BigUint,
    /// `|F_U|`, enumerated.
    pub forests: BigUint,
    /// Distinct tuples give distinct pairs.
    pub injective: bool,
    /// Every `C(D)` is a cyclic subgraph on `U` and every `D_U` an in-forest
    /// rooted at `U`.
    pub parts_valid: bool,
    /// The image has `|C_U| * |F_U|` elements.
    pub surjective: bool,
    /// `w(D) = w(C(D)) w(D_U)` for every tuple in the class.
    pub weights_factor: bool,
    /// First tuple that broke a check.
    pub counterexample: Option<KTuple>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.injective && self.parts_valid && self.surjective && self.weights_factor
    }
}

/// Exhaustively checks the cyclic/forest decomposition on one choice set.
pub fn verify_decomposition(shape: &Shape, u: &NChoiceSet, cap: u64) -> Result<DecompositionReport> {
    let tuples = enumerate_tuples(shape, cap)?;
    let cyclic_subgraphs = enumerate_cycles(shape, u, &CycleFilter::Any, cap)?;
    let forests = enumerate_forests(shape, u, cap)?.count;

    let nodes = non_roots(shape, u);
    let mut slot: Vec<Vec<Option<usize>>> = (0..shape.k()).map(|i| vec![None; shape.size(i)]).collect();
    for (j, &(i, v)) in nodes.iter().enumerate() {
        slot[i][v] = Some(j);
    }
    let position = |c: usize, v: usize| slot[c][v];
    let mut state = vec![0u8; nodes.len()];
    let cycle_weight = u.monomial();

    let mut pairs: BTreeSet<(Vec<Vec<usize>>, Vec<usize>)> = BTreeSet::new();
    let mut report = DecompositionReport {
        class_size: BigUint::zero(),
        single_cycle_class_size: BigUint::zero(),
        cyclic_subgraphs,
        forests,
        injective: true,
        parts_valid: true,
        surjective: true,
        weights_factor: true,
        counterexample: None,
    };
    let fail = |report: &mut DecompositionReport, t: &KTuple| {
        if report.counterexample.is_none() {
            report.counterexample = Some(t.clone());
        }
    };

    for t in tuples {
        if &domain::cyclic_part_vertices(shape, &t) != u {
            continue;
        }
        report.class_size += 1u32;
        if domain::classify(shape, &t).is_single_cycle() {
            report.single_cycle_class_size += 1u32;
        }

        // C(D): restrictions to U; positions within U_{i+1}
        let mut cyc = Vec::with_capacity(shape.k());
        let mut cyc_ok = true;
        for i in 0..shape.k() {
            let next = shape.next(i);
            let mut image: Vec<usize> = Vec::with_capacity(u.n());
            for &v in u.part(i) {
                match u.part(next).binary_search(&t.map(i)[v]) {
                    Ok(p) => image.push(p),
                    Err(_) => cyc_ok = false,
                }
            }
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            cyc_ok &= sorted.len() == u.n();
            cyc.push(image);
        }

        // D_U: edges out of the non-roots
        let forest: Vec<usize> = nodes.iter().map(|&(i, v)| t.map(i)[v]).collect();
        let succ: Vec<(usize, usize)> = nodes
            .iter()
            .zip(&forest)
            .map(|(&(i, _), &w)| (shape.next(i), w))
            .collect();
        let forest_ok = all_trails_reach_roots(&succ, &position, &mut state);
        if !(cyc_ok && forest_ok) {
            report.parts_valid = false;
            fail(&mut report, &t);
        }

        let forest_weight =
            Monomial::from_vars(succ.iter().map(|&(c, w)| VarId::new(c + 1, w + 1)));
        if domain::weight(shape, &t) != cycle_weight.mul(&forest_weight) {
            report.weights_factor = false;
            fail(&mut report, &t);
        }

        if !pairs.insert((cyc, forest)) {
            report.injective = false;
            fail(&mut report, &t);
        }
    }
    let image = BigUint::from(pairs.len());
    report.surjective = image == &report.cyclic_subgraphs * &report.forests;
    Ok(report)
}

/// Empirical cycle-type frequencies from uniformly drawn tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleCensus {
    pub seed: u64,
    pub trials: u64,
    pub hits: BTreeMap<CycleType, u64>,
}

impl SampleCensus {
    pub fn frequency(&self, lambda: &CycleType) -> f64 {
        self.hits.get(lambda).copied().unwrap_or(0) as f64 / self.trials as f64
    }

    pub fn frequencies(&self) -> BTreeMap<CycleType, f64> {
        self.hits
            .iter()
            .map(|(l, &h)| (l.clone(), h as f64 / self.trials as f64))
            .collect()
    }
}

/// Draws `trials` uniform tuples from a ChaCha8 stream seeded with `seed`.
/// Output depends only on `(shape, trials, seed)`.
pub fn sample_tuples(shape: &Shape, trials: u64, seed: u64) -> Result<SampleCensus> {
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    let radices = radices(shape);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tuple = KTuple::first(shape);
    let mut scratch = Scratch::default();
    let mut parts = Vec::new();
    let mut hits: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for _ in 0..trials {
        for (d, &r) in tuple.flat_mut().iter_mut().zip(&radices) {
            *d = rng.gen_range(0..r);
        }
        scratch.classify_into(shape, &tuple, &mut parts);
        match hits.get_mut(parts.as_slice()) {
            Some(h) => *h += 1,
            None => {
                hits.insert(parts.clone(), 1);
            }
        }
    }
    Ok(SampleCensus {
        seed,
        trials,
        hits: hits
            .into_iter()
            .map(|(p, h)| (CycleType::from_sorted_parts(&p), h))
            .collect(),
    })
}

/// `prod_i e_1(X_i)^{n_{i-1}}`, the weight sum over all tuples.
pub fn all_tuples_polynomial(shape: &Shape) -> Polynomial {
    (0..shape.k())
        .map(|i| crate::polyring::e1(shape, i + 1).pow(shape.size(shape.prev(i)) as u32))
        .fold(Polynomial::one(), |acc, p| &acc * &p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn shape(sizes: &[usize]) -> Shape {
        Shape::new(sizes.to_vec()).unwrap()
    }

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn x(i: usize, j: usize) -> Polynomial {
        Polynomial::var(VarId::new(i, j))
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(enumerate_tuples(&shape(&[1, 1]), 100).unwrap().count(), 1);
        assert_eq!(enumerate_tuples(&shape(&[2, 2]), 100).unwrap().count(), 16);
        assert_eq!(enumerate_tuples(&shape(&[2, 3]), 100).unwrap().count(), 72);
    }

    #[test]
    fn tuples_distinct_and_valid() {
        let s = shape(&[2, 3, 1]);
        let all: Vec<KTuple> = enumerate_tuples(&s, 1000).unwrap().collect();
        let set: BTreeSet<KTuple> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for t in &all {
            let maps: Vec<Vec<usize>> = t.maps().map(<[usize]>::to_vec).collect();
            assert!(KTuple::new(&s, maps).is_ok());
        }
    }

    #[test]
    fn cap_refusal_reports_total() {
        match enumerate_tuples(&shape(&[3, 3]), 100) {
            Err(Error::CapExceeded { required, .. }) => assert_eq!(required, BigUint::from(729u32)),
            other => panic!("expected refusal, got {:?}", other.map(|_| ())),
        }
        assert!(matches!(census(&shape(&[10, 10]), DEFAULT_ENUMERATION_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn census_pairs() {
        let c = census(&shape(&[2, 2]), 100).unwrap();
        assert_eq!(c.count(&ct("1")), BigUint::from(12u32));
        // 4 bijective pairs: the composite is the identity for 2, the swap for 2
        assert_eq!(c.count(&ct("2")), BigUint::from(2u32));
        assert_eq!(c.count(&ct("1+1")), BigUint::from(2u32));
        assert_eq!(c.total_count(), BigUint::from(16u32));
        for k in 1..=5 {
            let c = census(&Shape::uniform(1, k).unwrap(), 100).unwrap();
            assert_eq!(c.count(&ct("1")), BigUint::one());
        }
    }

    #[test]
    fn census_weight_identity() {
        for s in [shape(&[2, 2]), shape(&[2, 3]), shape(&[3]), shape(&[2, 1, 2])] {
            let c = census(&s, 10_000).unwrap();
            let mut total = Polynomial::zero();
            for e in c.by_type().values() {
                total += e.weight_sum.as_ref().unwrap();
            }
            assert_eq!(total, all_tuples_polynomial(&s), "shape {s}");
            assert_eq!(c.total_count(), s.total_tuples());
        }
    }

    #[test]
    fn shards_merge_to_full_census() {
        let s = shape(&[2, 3, 2]);
        let full = census(&s, 10_000).unwrap();
        let total = s.total_tuples().to_u64().unwrap();
        let cuts = [0, 1, 50, 51, 200, total];
        let merged = cuts
            .windows(2)
            .map(|w| census_shard(&s, w[0], w[1], true))
            .fold(Census::empty(&s, true), Census::merge);
        assert_eq!(merged, full);
    }

    #[test]
    fn forests_examples() {
        let s = shape(&[2, 2]);
        let u = NChoiceSet::parse(&s, "1;1").unwrap();
        let f = enumerate_forests(&s, &u, 100).unwrap();
        let expected = &(&(&x(1, 1) * &x(2, 1)) + &(&x(1, 2) * &x(2, 1))) + &(&x(1, 1) * &x(2, 2));
        assert_eq!(f.weight_sum, expected);
        assert_eq!(f.count, BigUint::from(3u32));

        let s = shape(&[1, 1]);
        let u = NChoiceSet::parse(&s, "1;1").unwrap();
        assert_eq!(enumerate_forests(&s, &u, 100).unwrap().weight_sum, Polynomial::one());

        let s = shape(&[2, 2]);
        let u = NChoiceSet::parse(&s, "1,2;1,2").unwrap();
        assert_eq!(enumerate_forests(&s, &u, 100).unwrap().weight_sum, Polynomial::one());
    }

    #[test]
    fn forests_k1_exclude_self_loops() {
        let s = shape(&[2]);
        let u = NChoiceSet::parse(&s, "1").unwrap();
        assert_eq!(enumerate_forests(&s, &u, 100).unwrap().weight_sum, x(1, 1));
    }

    #[test]
    fn cycle_examples() {
        let s = shape(&[3, 3]);
        let u1 = NChoiceSet::parse(&s, "2;3").unwrap();
        assert_eq!(enumerate_cycles(&s, &u1, &CycleFilter::SingleCycle, 100).unwrap(), BigUint::one());
        let u2 = NChoiceSet::parse(&s, "1,2;2,3").unwrap();
        assert_eq!(enumerate_cycles(&s, &u2, &CycleFilter::SingleCycle, 100).unwrap(), BigUint::from(2u32));

        let s = shape(&[3]);
        let u = NChoiceSet::parse(&s, "1,2,3").unwrap();
        let n = enumerate_cycles(&s, &u, &CycleFilter::Type(ct("2+1")), 100).unwrap();
        assert_eq!(n, BigUint::from(3u32));
        assert!(enumerate_cycles(&s, &u, &CycleFilter::Type(ct("2")), 100).is_err());
    }

    #[test]
    fn permutations_lexicographic() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn decomposition_examples() {
        let s = shape(&[2, 2]);
        let r = verify_decomposition(&s, &NChoiceSet::parse(&s, "1;1").unwrap(), 100).unwrap();
        assert!(r.holds());
        assert_eq!(r.class_size, BigUint::from(3u32));
        assert_eq!(r.cyclic_subgraphs, BigUint::one());
        assert_eq!(r.forests, BigUint::from(3u32));

        let s1 = shape(&[1, 1]);
        let r = verify_decomposition(&s1, &NChoiceSet::parse(&s1, "1;1").unwrap(), 100).unwrap();
        assert!(r.holds());
        assert_eq!(r.class_size, BigUint::one());

        let r = verify_decomposition(&s, &NChoiceSet::parse(&s, "1,2;1,2").unwrap(), 100).unwrap();
        assert!(r.holds());
        assert_eq!(r.class_size, BigUint::from(4u32));
        assert_eq!(r.class_size, r.cyclic_subgraphs);
        assert_eq!(r.single_cycle_class_size, BigUint::from(2u32));
    }

    #[test]
    fn sampling_is_deterministic() {
        let s = shape(&[2, 2]);
        let a = sample_tuples(&s, 10_000, 1).unwrap();
        let b = sample_tuples(&s, 10_000, 1).unwrap();
        assert_eq!(a, b);
        assert!((a.frequency(&ct("1")) - 0.75).abs() < 0.05);
        let total: f64 = a.frequencies().values().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(sample_tuples(&s, 0, 1).is_err());
    }

    #[test]
    fn sampling_large_shape() {
        let s = shape(&[10, 10]);
        let r = sample_tuples(&s, 100_000, 7).unwrap();
        assert!((r.frequency(&ct("1")) - 0.19).abs() < 0.01);
    }
}
