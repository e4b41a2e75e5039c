//! Shapes, k-tuples of functions, and their classification by cycle type.
//!
//! Vertices are numbered per component. Internally every index is 0-based;
//! text forms and [`VarId`]s are 1-based.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, VarId};

/// Component sizes `(n_1, ..., n_k)` of the cyclic arrangement
/// `X_1 -> X_2 -> ... -> X_k -> X_1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    sizes: Vec<usize>,
}

impl Shape {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::domain("a shape needs at least one component"));
        }
        if sizes.contains(&0) {
            return Err(Error::domain("component sizes must be positive"));
        }
        Ok(Shape { sizes })
    }

    /// All `k` components of size `n`.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        Self::new(vec![n; k])
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    /// Size of component `i` (0-based).
    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Index of the component after `i`, mod `k`.
    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.k()
    }

    /// Index of the component before `i`, mod `k`.
    pub fn prev(&self, i: usize) -> usize {
        (i + self.k() - 1) % self.k()
    }

    pub fn min_size(&self) -> usize {
        *self.sizes.iter().min().expect("nonempty")
    }

    pub fn total_vertices(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `Some(n)` when every component has size `n`.
    pub fn uniform_size(&self) -> Option<usize> {
        let n = self.sizes[0];
        self.sizes.iter().all(|&m| m == n).then_some(n)
    }

    /// Number of k-tuples: `prod_i n_{i+1}^{n_i}`.
    pub fn total_tuples(&self) -> BigUint {
        (0..self.k())
            .map(|i| Pow::pow(BigUint::from(self.size(self.next(i))), self.size(i)))
            .product()
    }

    /// All variables of component `i` (0-based), in index order.
    pub fn component_vars(&self, i: usize) -> Vec<VarId> {
        (1..=self.size(i)).map(|j| VarId::new(i + 1, j)).collect()
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sizes = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(alloc::format!("bad component size {part:?} in shape {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Shape::new(sizes).map_err(|e| Error::parse(alloc::format!("{s:?}: {e}")))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, size) in self.sizes.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{size}")?;
        }
        Ok(())
    }
}

/// One function per component, `f_i : X_i -> X_{i+1}`.
///
/// Targets are stored 0-based in one flat buffer, component after component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KTuple {
    targets: Vec<usize>,
    offsets: Vec<usize>,
}

impl KTuple {
    /// Builds a tuple from 0-based target arrays, one per component.
    pub fn new(shape: &Shape, maps: Vec<Vec<usize>>) -> Result<Self> {
        if maps.len() != shape.k() {
            return Err(Error::domain(alloc::format!(
                "expected {} maps, got {}",
                shape.k(),
                maps.len()
            )));
        }
        for (i, map) in maps.iter().enumerate() {
            if map.len() != shape.size(i) {
                return Err(Error::domain(alloc::format!(
                    "map {} has length {}, component has size {}",
                    i + 1,
                    map.len(),
                    shape.size(i)
                )));
            }
            let bound = shape.size(shape.next(i));
            if let Some(&bad) = map.iter().find(|&&t| t >= bound) {
                return Err(Error::domain(alloc::format!(
                    "map {} sends a vertex to {}, target component has size {bound}",
                    i + 1,
                    bad + 1
                )));
            }
        }
        let mut tuple = KTuple::first(shape);
        tuple.targets = maps.into_iter().flatten().collect();
        Ok(tuple)
    }

    /// Builds a tuple from 1-based target arrays.
    pub fn from_one_based(shape: &Shape, maps: Vec<Vec<usize>>) -> Result<Self> {
        let maps = maps
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|t| t.checked_sub(1).ok_or_else(|| Error::domain("targets are 1-based")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(shape, maps)
    }

    /// The tuple whose every map is constant at the first vertex.
    pub(crate) fn first(shape: &Shape) -> Self {
        let mut offsets = Vec::with_capacity(shape.k() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &n in shape.sizes() {
            acc += n;
            offsets.push(acc);
        }
        KTuple {
            targets: vec![0; acc],
            offsets,
        }
    }

    pub fn k(&self) -> usize {
        self.offsets.len() - 1
    }

    /// `f_i` as a 0-based target array.
    pub fn map(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn maps(&self) -> impl Iterator<Item = &[usize]> {
        (0..self.k()).map(|i| self.map(i))
    }

    /// All targets, component after component.
    pub(crate) fn flat(&self) -> &[usize] {
        &self.targets
    }

    pub(crate) fn flat_mut(&mut self) -> &mut [usize] {
        &mut self.targets
    }
}

/// Integer partition recording the cycle lengths of a permutation, stored
/// weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::domain("a cycle type needs positive parts"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    /// The single-cycle type `(n)`.
    pub fn single(n: usize) -> Self {
        assert!(n > 0, "cycle length must be positive");
        CycleType { parts: vec![n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `N = |lambda|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_single_cycle(&self) -> bool {
        self.parts.len() == 1
    }

    /// `l -> m_l`.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `prod_l l^{m_l} m_l!`, the centralizer order of a permutation of this type.
    pub fn centralizer_order(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .map(|(l, m)| Pow::pow(BigUint::from(l), m) * factorial(m))
            .product()
    }

    /// Number of permutations of an `N`-set with this cycle type.
    pub fn class_size(&self) -> BigUint {
        factorial(self.size()) / self.centralizer_order()
    }
}

impl Borrow<[usize]> for CycleType {
    fn borrow(&self) -> &[usize] {
        &self.parts
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split('+')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(alloc::format!("bad part {p:?} in cycle type {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CycleType::new(parts).map_err(|e| Error::parse(alloc::format!("{s:?}: {e}")))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, p) in self.parts.iter().enumerate() {
            if n > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// All partitions of `n`, largest first part first: `(3), (2,1), (1,1,1)`.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Subsets `U_i` of each component, all of the same cardinality `N >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NChoiceSet {
    parts: Vec<Vec<usize>>,
}

impl NChoiceSet {
    /// Builds a choice set from 0-based index lists.
    pub fn new(shape: &Shape, mut parts: Vec<Vec<usize>>) -> Result<Self> {
        if parts.len() != shape.k() {
            return Err(Error::domain(alloc::format!(
                "choice set has {} parts, shape has {} components",
                parts.len(),
                shape.k()
            )));
        }
        for (i, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            part.dedup();
            if part.last().is_some_and(|&v| v >= shape.size(i)) {
                return Err(Error::domain(alloc::format!(
                    "choice set part {} leaves component of size {}",
                    i + 1,
                    shape.size(i)
                )));
            }
        }
        let n = parts[0].len();
        if n == 0 {
            return Err(Error::domain("choice set parts must be nonempty"));
        }
        if parts.iter().any(|p| p.len() != n) {
            return Err(Error::domain("choice set parts must have equal cardinality"));
        }
        Ok(NChoiceSet { parts })
    }

    pub fn from_one_based(shape: &Shape, parts: Vec<Vec<usize>>) -> Result<Self> {
        let parts = parts
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|v| v.checked_sub(1).ok_or_else(|| Error::domain("indices are 1-based")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(shape, parts)
    }

    /// Parses `1,2;1,3` (1-based indices, components separated by `;`).
    pub fn parse(shape: &Shape, s: &str) -> Result<Self> {
        let parts = s
            .split(';')
            .map(|part| {
                part.split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::parse(alloc::format!("bad index {v:?} in choice set {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_based(shape, parts)
    }

    /// Every N-choice set of `shape`, in lexicographic order.
    pub fn all(shape: &Shape, n: usize) -> Vec<NChoiceSet> {
        if n == 0 || n > shape.min_size() {
            return Vec::new();
        }
        let per_component: Vec<Vec<Vec<usize>>> =
            shape.sizes().iter().map(|&m| combinations(m, n)).collect();
        let mut out = vec![Vec::new()];
        for choices in &per_component {
            let mut next = Vec::with_capacity(out.len() * choices.len());
            for prefix in &out {
                for c in choices {
                    let mut p: Vec<Vec<usize>> = prefix.clone();
                    p.push(c.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(|parts| NChoiceSet { parts }).collect()
    }

    /// `N`, the common part size.
    pub fn n(&self) -> usize {
        self.parts[0].len()
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// `U_i` as sorted 0-based indices.
    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn contains(&self, i: usize, v: usize) -> bool {
        self.parts[i].binary_search(&v).is_ok()
    }

    /// Vertices of `X_i \ U_i`, 0-based.
    pub fn complement(&self, shape: &Shape, i: usize) -> Vec<usize> {
        (0..shape.size(i)).filter(|&v| !self.contains(i, v)).collect()
    }

    /// `|X \ U|`.
    pub fn complement_size(&self, shape: &Shape) -> usize {
        shape.total_vertices() - self.k() * self.n()
    }

    /// `prod_{u in U} x_u`.
    pub fn monomial(&self) -> Monomial {
        Monomial::from_vars(
            self.parts
                .iter()
                .enumerate()
                .flat_map(|(i, p)| p.iter().map(move |&v| VarId::new(i + 1, v + 1))),
        )
    }
}

impl fmt::Display for NChoiceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (n, v) in part.iter().enumerate() {
                if n > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", v + 1)?;
            }
        }
        Ok(())
    }
}

/// `n!`
pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product::<BigUint>().max(BigUint::one())
}

/// `C(n, r)`
pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::default();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// All `r`-subsets of `0..n` as sorted vectors, in lexicographic order.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..=(n - (r - cur.len())) {
            cur.push(v);
            go(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        go(0, n, r, &mut Vec::new(), &mut out);
    }
    out
}

/// `f_k ... f_1` as a 0-based endomorphism of `X_1`.
pub fn composite(shape: &Shape, t: &KTuple) -> Vec<usize> {
    let mut endo = Vec::with_capacity(shape.size(0));
    composite_into(t, &mut endo, shape.size(0));
    endo
}

fn composite_into(t: &KTuple, endo: &mut Vec<usize>, n1: usize) {
    endo.clear();
    for v in 0..n1 {
        let mut x = v;
        for map in t.maps() {
            x = map[x];
        }
        endo.push(x);
    }
}

/// Eventual image `h^m(X_1)` of an endomorphism, as sorted 0-based indices.
///
/// Iterates image-taking until the image stops shrinking, which takes at most
/// `n` rounds.
pub fn stable_image(endo: &[usize]) -> Vec<usize> {
    let mut scratch = Scratch::default();
    scratch.stabilize(endo);
    (0..endo.len()).filter(|&v| scratch.current[v]).collect()
}

/// Cycle type of the permutation `endo` induces on its stable image.
pub fn classify(shape: &Shape, t: &KTuple) -> CycleType {
    let mut scratch = Scratch::default();
    let mut parts = Vec::new();
    scratch.classify_into(shape, t, &mut parts);
    CycleType { parts }
}

/// `w(f) = prod_i prod_{v in X_i} x_{f_i(v)}`.
pub fn weight(shape: &Shape, t: &KTuple) -> Monomial {
    Monomial::from_vars((0..shape.k()).flat_map(|i| {
        let target = shape.next(i) + 1;
        t.map(i).iter().map(move |&v| VarId::new(target, v + 1))
    }))
}

/// Vertex set of the cyclic part of the tuple's functional digraph:
/// `U_1` is the stable image of the composite and `U_{i+1} = f_i(U_i)`.
pub fn cyclic_part_vertices(shape: &Shape, t: &KTuple) -> NChoiceSet {
    let endo = composite(shape, t);
    let mut parts = Vec::with_capacity(shape.k());
    parts.push(stable_image(&endo));
    for i in 0..shape.k() - 1 {
        let mut next: Vec<usize> = parts[i].iter().map(|&v| t.map(i)[v]).collect();
        next.sort_unstable();
        next.dedup();
        parts.push(next);
    }
    NChoiceSet::new(shape, parts).expect("successive images of a stable set are equinumerous")
}

/// Cycle type of a permutation given as a 0-based array.
pub fn permutation_cycle_type(perm: &[usize]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        parts.push(len);
    }
    CycleType::new(parts).unwrap_or_else(|_| CycleType { parts: Vec::new() })
}

/// Reusable buffers for classifying many tuples without reallocating.
#[derive(Default)]
pub(crate) struct Scratch {
    endo: Vec<usize>,
    current: Vec<bool>,
    next: Vec<bool>,
    seen: Vec<bool>,
}

impl Scratch {
    /// Leaves the stable image of `endo` in `self.current`; returns its size.
    fn stabilize(&mut self, endo: &[usize]) -> usize {
        let n = endo.len();
        self.current.clear();
        self.current.resize(n, true);
        let mut size = n;
        loop {
            self.next.clear();
            self.next.resize(n, false);
            let mut next_size = 0;
            for (&live, &w) in self.current.iter().zip(endo) {
                if live && !self.next[w] {
                    self.next[w] = true;
                    next_size += 1;
                }
            }
            core::mem::swap(&mut self.current, &mut self.next);
            if next_size == size {
                return size;
            }
            size = next_size;
        }
    }

    /// Writes the cycle type of `t` into `parts`, weakly decreasing.
    pub(crate) fn classify_into(&mut self, shape: &Shape, t: &KTuple, parts: &mut Vec<usize>) {
        let mut endo = core::mem::take(&mut self.endo);
        composite_into(t, &mut endo, shape.size(0));
        self.stabilize(&endo);
        let n = endo.len();
        self.seen.clear();
        self.seen.resize(n, false);
        parts.clear();
        for start in 0..n {
            if !self.current[start] || self.seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !self.seen[v] {
                self.seen[v] = true;
                v = endo[v];
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        self.endo = endo;
    }
}

impl CycleType {
    /// Builds from parts already known to be positive and weakly decreasing.
    pub(crate) fn from_sorted_parts(parts: &[usize]) -> Self {
        CycleType {
            parts: parts.to_owned(),
        }
    }
}
