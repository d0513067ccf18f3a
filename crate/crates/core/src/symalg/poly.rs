use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Rat;
use crate::{Error, Result};

/// Exponent vector: slot 0 is `ζ`, slot `i` (1-based) is `y_i`.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// with `ζ` as the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n + 1])
    }

    pub fn new(zeta: u32, y: &[u32]) -> Self {
        let mut e = Vec::with_capacity(y.len() + 1);
        e.push(zeta);
        e.extend_from_slice(y);
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len() - 1
    }

    pub fn zeta(&self) -> u32 {
        self.0[0]
    }

    /// Exponents of `y_1..y_n`.
    pub fn y(&self) -> &[u32] {
        &self.0[1..]
    }

    pub fn y_degree(&self) -> u32 {
        self.y().iter().sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn degree(&self, measure: DegreeMeasure) -> u32 {
        match measure {
            DegreeMeasure::Total => self.total_degree(),
            DegreeMeasure::Y => self.y_degree(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which degree a truncation bound applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMeasure {
    /// All variables, `ζ` included.
    Total,
    /// Only the Chern roots `y_i`.
    Y,
}

/// Sparse polynomial in `ζ, y_1..y_n` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        Self::term(Monomial::one(n), c)
    }

    /// Single term `c * m`.
    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut p = MPoly::zero(m.arity());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The Chern root `y_i`, `1 <= i <= n`.
    pub fn y(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "root index {i} outside 1..={n}");
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self::term(Monomial::new(0, &e), Rat::one())
    }

    pub fn zeta(n: usize) -> Self {
        Self::term(Monomial::new(1, &vec![0; n]), Rat::one())
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Result<Self> {
        let mut p = MPoly::zero(n);
        for (m, c) in terms {
            if m.arity() != n {
                return Err(Error::ArityMismatch {
                    left: n,
                    right: m.arity(),
                });
            }
            p.accumulate(m, c);
        }
        Ok(p)
    }

    /// Number of `y` variables.
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest `y`-degree among the terms, `None` for the zero polynomial.
    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::y_degree).max()
    }

    pub fn zeta_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::zeta).max()
    }

    fn check_arity(&self, other: &MPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn accumulate(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &MPoly) -> Result<()> {
        self.check_arity(other)?;
        for (m, c) in &other.terms {
            self.accumulate(m.clone(), c.clone());
        }
        Ok(())
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.n);
        }
        MPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.mul_capped(other, None, DegreeMeasure::Total)
    }

    /// Product with every term of degree (under `measure`) above `cap`
    /// dropped. Equal to the exact product followed by truncation.
    pub fn mul_capped(&self, other: &MPoly, cap: Option<u32>, measure: DegreeMeasure) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = MPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            let da = ma.degree(measure);
            if cap.is_some_and(|k| da > k) {
                continue;
            }
            for (mb, cb) in &other.terms {
                if cap.is_some_and(|k| da + mb.degree(measure) > k) {
                    continue;
                }
                out.accumulate(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `self^k`, truncated at `cap` under `measure`.
    pub fn pow_capped(&self, k: u32, cap: Option<u32>, measure: DegreeMeasure) -> MPoly {
        let mut acc = MPoly::one(self.n);
        for _ in 0..k {
            acc = acc
                .mul_capped(self, cap, measure)
                .expect("same arity by construction");
        }
        acc
    }

    /// Drops every term whose degree under `measure` exceeds `cap`.
    pub fn truncate(&self, cap: u32, measure: DegreeMeasure) -> MPoly {
        MPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(measure) <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms of `y`-degree exactly `deg`.
    pub fn y_homogeneous_part(&self, deg: u32) -> MPoly {
        MPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.y_degree() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `y_i -> y_{perm[i-1]}`; `perm` is a 1-based permutation of
    /// `1..=n`.
    pub fn permute_y(&self, perm: &[usize]) -> Result<MPoly> {
        if perm.len() != self.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p == 0 || p > self.n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::usage(format!("{perm:?} is not a permutation of 1..={}", self.n)));
            }
        }
        let mut out = MPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut y = vec![0; self.n];
            for (i, &e) in m.y().iter().enumerate() {
                y[perm[i] - 1] += e;
            }
            out.accumulate(Monomial::new(m.zeta(), &y), c.clone());
        }
        Ok(out)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}
