use std::collections::BTreeMap;

use num_traits::Zero;

use super::poly::{DegreeMeasure, MPoly};
use super::Rat;
use crate::{Error, Result};

/// Finite Laurent polynomial in `α` whose coefficients are [`MPoly`]s in
/// `ζ, y_1..y_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaSeries {
    n: usize,
    coeffs: BTreeMap<i64, MPoly>,
}

impl AlphaSeries {
    pub fn zero(n: usize) -> Self {
        AlphaSeries {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(0, MPoly::one(n))
    }

    /// `α^exp * p`.
    pub fn from_poly(exp: i64, p: MPoly) -> Self {
        let mut s = AlphaSeries::zero(p.arity());
        if !p.is_zero() {
            s.coeffs.insert(exp, p);
        }
        s
    }

    /// `c * α^exp`.
    pub fn alpha_power(n: usize, exp: i64, c: Rat) -> Self {
        Self::from_poly(exp, MPoly::constant(n, c))
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(α-exponent, coefficient)` pairs in ascending exponent order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, &MPoly)> {
        self.coeffs.iter().map(|(&k, p)| (k, p))
    }

    pub fn coeff(&self, exp: i64) -> MPoly {
        self.coeffs.get(&exp).cloned().unwrap_or_else(|| MPoly::zero(self.n))
    }

    fn check_arity(&self, other: &AlphaSeries) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn insert_sum(&mut self, exp: i64, p: MPoly) -> Result<()> {
        if p.is_zero() {
            return Ok(());
        }
        match self.coeffs.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&p)?;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &AlphaSeries) -> Result<AlphaSeries> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (&k, p) in &other.coeffs {
            out.insert_sum(k, p.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> AlphaSeries {
        if c.is_zero() {
            return AlphaSeries::zero(self.n);
        }
        AlphaSeries {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(&k, p)| (k, p.scale(c))).collect(),
        }
    }

    /// Convolution over `α`-exponents; every coefficient product drops terms
    /// of `y`-degree above `ydeg_cap`. `ζ`-degrees are never truncated.
    pub fn mul(&self, other: &AlphaSeries, ydeg_cap: u32) -> Result<AlphaSeries> {
        self.check_arity(other)?;
        let mut out = AlphaSeries::zero(self.n);
        for (&ka, pa) in &self.coeffs {
            for (&kb, pb) in &other.coeffs {
                let prod = pa.mul_capped(pb, Some(ydeg_cap), DegreeMeasure::Y)?;
                out.insert_sum(ka + kb, prod)?;
            }
        }
        Ok(out)
    }

    /// Exact product, no truncation.
    pub fn mul_exact(&self, other: &AlphaSeries) -> Result<AlphaSeries> {
        self.check_arity(other)?;
        let mut out = AlphaSeries::zero(self.n);
        for (&ka, pa) in &self.coeffs {
            for (&kb, pb) in &other.coeffs {
                out.insert_sum(ka + kb, pa.mul(pb)?)?;
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient, dropping the ones that vanish.
    pub fn map_coeffs(&self, mut f: impl FnMut(&MPoly) -> Result<MPoly>) -> Result<AlphaSeries> {
        let mut out = AlphaSeries::zero(self.n);
        for (&k, p) in &self.coeffs {
            out.insert_sum(k, f(p)?)?;
        }
        Ok(out)
    }

    pub fn truncate_y(&self, cap: u32) -> AlphaSeries {
        self.map_coeffs(|p| Ok(p.truncate(cap, DegreeMeasure::Y)))
            .expect("truncation preserves arity")
    }

    pub fn permute_y(&self, perm: &[usize]) -> Result<AlphaSeries> {
        self.map_coeffs(|p| p.permute_y(perm))
    }

    /// Largest `y`-degree among all coefficients.
    pub fn y_degree(&self) -> Option<u32> {
        self.coeffs.values().filter_map(MPoly::y_degree).max()
    }
}
