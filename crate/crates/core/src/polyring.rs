//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! Variables are the vertices of a [`Shape`]: `x[i][j]` is vertex `j` of
//! component `i`, both 1-based. A [`Monomial`] is a sorted exponent vector
//! with no zero entries and a [`Polynomial`] maps monomials to nonzero
//! coefficients, so structural equality is mathematical equality.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::closedform::ExactRational;
use crate::domain::Shape;
use crate::error::{Error, Result};

/// Vertex variable `x[component][index]`, 1-based on both axes.
///
/// Ordered lexicographically by `(component, index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub component: usize,
    pub index: usize,
}

impl VarId {
    pub const fn new(component: usize, index: usize) -> Self {
        VarId { component, index }
    }

    /// Checks that the variable names a vertex of `shape`.
    pub fn check(&self, shape: &Shape) -> Result<()> {
        if self.component == 0 || self.component > shape.k() {
            return Err(Error::domain(alloc::format!(
                "component {} outside 1..={}",
                self.component,
                shape.k()
            )));
        }
        let n = shape.size(self.component - 1);
        if self.index == 0 || self.index > n {
            return Err(Error::domain(alloc::format!(
                "index {} outside 1..={} in component {}",
                self.index,
                n,
                self.component
            )));
        }
        Ok(())
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{}][{}]", self.component, self.index)
    }
}

/// Product of variables, stored as `(variable, exponent)` pairs sorted by
/// variable with every exponent positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging
    /// repeated variables and dropping zero exponents.
    pub fn from_exponents<I: IntoIterator<Item = (VarId, u32)>>(iter: I) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in iter {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            exps: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    /// Product of the given variables, with multiplicity.
    pub fn from_vars<I: IntoIterator<Item = VarId>>(vars: I) -> Self {
        Self::from_exponents(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    /// Renames variables; `f` need not be injective.
    pub fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> Monomial {
        Monomial::from_exponents(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (n, &(v, e)) in self.exps.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients.
///
/// The zero polynomial has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_monomial(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Self::from_monomial(Monomial::var(v), 1)
    }

    pub fn from_monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Sums the given terms, combining equal monomials.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c.into());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// True when every term has the same total degree (vacuously for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// `self^e` by repeated squaring; `p^0 = 1` for every `p`, including zero.
    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value under `assignment`; every occurring variable must be bound.
    pub fn evaluate(&self, assignment: &BTreeMap<VarId, ExactRational>) -> Result<ExactRational> {
        let mut total = ExactRational::zero();
        for (m, c) in &self.terms {
            let mut term = ExactRational::from_integer(c.clone());
            for (v, e) in m.iter() {
                let value = assignment.get(&v).ok_or_else(|| {
                    Error::domain(alloc::format!("no value assigned to {v}"))
                })?;
                term *= Pow::pow(value, e);
            }
            total += term;
        }
        Ok(total)
    }

    /// Value with every variable set to 1, i.e. the coefficient sum.
    pub fn evaluate_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Renames variables and recombines terms.
    pub fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::from_monomial(m, 1)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Polynomial::zero();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

/// `j`-th elementary symmetric polynomial in the given variables.
///
/// Repeated variables are treated as distinct positions.
pub fn elementary_symmetric(vars: &[VarId], j: usize) -> Polynomial {
    if j > vars.len() {
        return Polynomial::zero();
    }
    // es[t] = e_t of the variables seen so far
    let mut es: Vec<Polynomial> = vec![Polynomial::zero(); j + 1];
    es[0] = Polynomial::one();
    for (seen, &v) in vars.iter().enumerate() {
        let x = Monomial::var(v);
        for t in (1..=j.min(seen + 1)).rev() {
            let lifted = es[t - 1].mul_monomial(&x);
            es[t] += &lifted;
        }
    }
    es.swap_remove(j)
}

/// `e_j(X_component \ excluded)`; `component` and `excluded` are 1-based.
pub fn e_sym(shape: &Shape, component: usize, excluded: &[usize], j: usize) -> Result<Polynomial> {
    if component == 0 || component > shape.k() {
        return Err(Error::domain(alloc::format!(
            "component {component} outside 1..={}",
            shape.k()
        )));
    }
    let n = shape.size(component - 1);
    if let Some(&bad) = excluded.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::domain(alloc::format!(
            "excluded index {bad} outside 1..={n}"
        )));
    }
    let vars: Vec<VarId> = (1..=n)
        .filter(|v| !excluded.contains(v))
        .map(|v| VarId::new(component, v))
        .collect();
    Ok(elementary_symmetric(&vars, j))
}

/// `e_1(X_component)`, 1-based component; panics on an invalid component.
pub(crate) fn e1(shape: &Shape, component: usize) -> Polynomial {
    e_sym(shape, component, &[], 1).expect("component in range")
}
