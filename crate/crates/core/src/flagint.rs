//! Integration over partial flag manifolds `Fl_{m_1, m_1+m_2, ...}(C^n)`.
//!
//! Top-degree integrals of polynomials in the Chern roots are evaluated as
//! a sum over the torus-fixed points (cosets of the Young subgroup of the
//! block sizes): at the coset `σ` the root `y_i` becomes `λ_{σ(i)}` and the
//! tangent weights contribute `Π_{block(i) < block(j)} (λ_{σ(j)} - λ_{σ(i)})`
//! to the denominator. With that orientation `∫_{Fl(3)} y_1^2 y_2 = -1`.
//!
//! Roots inside one block are only defined up to permutation, so a monomial
//! that is not symmetric within its blocks is integrated as its average over
//! within-block permutations.

use std::collections::HashMap;
use std::sync::RwLock;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::partitions::FixedComponent;
use crate::symalg::{rat_int, AlphaSeries, MPoly, Monomial, Rat};
use crate::{Error, Result};

/// Block sizes of a partial flag manifold; all positive, summing to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagType {
    n: usize,
    blocks: Vec<usize>,
}

impl FlagType {
    /// Zero blocks are dropped.
    pub fn new(n: usize, blocks: Vec<usize>) -> Result<Self> {
        let blocks: Vec<usize> = blocks.into_iter().filter(|&b| b > 0).collect();
        let total: usize = blocks.iter().sum();
        if total != n {
            return Err(Error::usage(format!("block sizes {blocks:?} do not sum to n={n}")));
        }
        Ok(FlagType { n, blocks })
    }

    /// Complete flags in `C^n`.
    pub fn complete(n: usize) -> Self {
        FlagType { n, blocks: vec![1; n] }
    }

    pub fn of_component(c: &FixedComponent) -> Self {
        FlagType::new(c.n(), c.flag_blocks()).expect("flag blocks sum to n")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// `Σ_{I<J} m_I m_J`.
    pub fn dimension(&self) -> usize {
        let mut dim = 0;
        let mut before = 0;
        for &b in &self.blocks {
            dim += before * b;
            before += b;
        }
        dim
    }

    /// 0-based block index of each root `y_1..y_n`.
    pub fn block_of_root(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(k, &b)| std::iter::repeat(k).take(b))
            .collect()
    }

    /// Ranges of root positions (0-based) making up each block.
    fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|&b| {
                let r = start..start + b;
                start += b;
                r
            })
            .collect()
    }

    /// One representative per coset: `λ`-indices increasing inside each block.
    pub fn cosets(&self) -> Vec<CosetPoint> {
        fn rec(blocks: &[usize], free: Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<CosetPoint>) {
            let Some((&b, rest)) = blocks.split_first() else {
                out.push(CosetPoint {
                    assignment: prefix.clone(),
                });
                return;
            };
            for chosen in free.iter().copied().combinations(b) {
                let remaining = free.iter().copied().filter(|x| !chosen.contains(x)).collect();
                let len = prefix.len();
                prefix.extend_from_slice(&chosen);
                rec(rest, remaining, prefix, out);
                prefix.truncate(len);
            }
        }
        let mut out = Vec::new();
        rec(&self.blocks, (0..self.n).collect(), &mut Vec::with_capacity(self.n), &mut out);
        out
    }
}

/// A torus-fixed point: root `y_{i+1}` is sent to `λ_{assignment[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetPoint {
    pub assignment: Vec<usize>,
}

/// Which generic tuple `λ` the coset sum is evaluated at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lambda {
    /// `0, 1, 3, 7, 15, ...` (`2^k - 1`).
    Primary,
    /// `1, 2, 5, 11, 23, ...`.
    Secondary,
    /// Caller-supplied distinct integers.
    Explicit(Vec<i64>),
}

impl Lambda {
    pub fn explicit(values: Vec<i64>) -> Result<Self> {
        if values.iter().duplicates().next().is_some() {
            return Err(Error::usage(format!("lambda tuple {values:?} has repeated entries")));
        }
        Ok(Lambda::Explicit(values))
    }

    pub fn values(&self, n: usize) -> Result<Vec<Rat>> {
        let v: Vec<i64> = match self {
            Lambda::Primary => (0..n as u32).map(|k| (1i64 << k) - 1).collect(),
            Lambda::Secondary => {
                let mut v = vec![1i64, 2];
                while v.len() < n {
                    let last = *v.last().unwrap();
                    v.push(2 * last + 1);
                }
                v.truncate(n);
                v
            }
            Lambda::Explicit(v) => {
                if v.len() < n {
                    return Err(Error::usage(format!(
                        "lambda tuple has {} entries but n = {n}",
                        v.len()
                    )));
                }
                v[..n].to_vec()
            }
        };
        Ok(v.into_iter().map(rat_int).collect())
    }
}

/// Coset-sum integrator with a per-(flag type, monomial) memo table.
#[derive(Debug)]
pub struct FlagIntegrator {
    lambda: Lambda,
    memo: RwLock<HashMap<(FlagType, Vec<u32>), Rat>>,
}

impl Default for FlagIntegrator {
    fn default() -> Self {
        Self::new(Lambda::Primary)
    }
}

impl FlagIntegrator {
    pub fn new(lambda: Lambda) -> Self {
        FlagIntegrator {
            lambda,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    /// `∫_{ft} Π y_i^{e_i}`; zero unless the degree equals `dim ft`.
    pub fn integrate_monomial(&self, ft: &FlagType, exponents: &[u32]) -> Result<Rat> {
        if exponents.len() != ft.n {
            return Err(Error::ArityMismatch {
                left: ft.n,
                right: exponents.len(),
            });
        }
        let degree: usize = exponents.iter().map(|&e| e as usize).sum();
        if degree != ft.dimension() {
            return Ok(Rat::zero());
        }
        let key = (ft.clone(), exponents.to_vec());
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let lambda = self.lambda.values(ft.n)?;
        let value = coset_sum(ft, exponents, &lambda);
        self.memo.write().expect("memo lock").insert(key, value.clone());
        Ok(value)
    }

    /// Integrates every `y`-monomial of `f`, keeping `α`-exponents and
    /// `ζ`-powers.
    pub fn integrate_poly(&self, ft: &FlagType, f: &AlphaSeries) -> Result<AlphaSeries> {
        if f.arity() != ft.n {
            return Err(Error::ArityMismatch {
                left: ft.n,
                right: f.arity(),
            });
        }
        let dim = ft.dimension() as u32;
        let zeros = vec![0; ft.n];
        f.map_coeffs(|p| self.integrate_coefficient(ft, p, dim, &zeros))
    }

    fn integrate_coefficient(&self, ft: &FlagType, p: &MPoly, dim: u32, zeros: &[u32]) -> Result<MPoly> {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            if m.y_degree() != dim {
                continue;
            }
            let v = self.integrate_monomial(ft, m.y())?;
            if !v.is_zero() {
                terms.push((Monomial::new(m.zeta(), zeros), c * v));
            }
        }
        MPoly::from_terms(ft.n, terms)
    }
}

fn coset_sum(ft: &FlagType, exponents: &[u32], lambda: &[Rat]) -> Rat {
    let block_of = ft.block_of_root();
    let ranges = ft.block_ranges();
    let mut total = Rat::zero();
    for point in ft.cosets() {
        let sigma = &point.assignment;
        let mut denom = Rat::one();
        for i in 0..ft.n {
            for j in i + 1..ft.n {
                if block_of[i] < block_of[j] {
                    denom *= &lambda[sigma[j]] - &lambda[sigma[i]];
                }
            }
        }
        let mut numer = Rat::one();
        for range in &ranges {
            numer *= symmetrized_block(&exponents[range.clone()], &sigma[range.clone()], lambda);
            if numer.is_zero() {
                break;
            }
        }
        if !numer.is_zero() {
            total += numer / denom;
        }
    }
    total
}

/// Average over orderings of the block's `λ` values of `Π λ^{e}`.
fn symmetrized_block(exponents: &[u32], indices: &[usize], lambda: &[Rat]) -> Rat {
    let eval = |order: &[usize]| -> Rat {
        order
            .iter()
            .zip(exponents)
            .map(|(&k, &e)| num_traits::pow(lambda[k].clone(), e as usize))
            .product()
    };
    if exponents.windows(2).all(|w| w[0] == w[1]) {
        return eval(indices);
    }
    let mut sum = Rat::zero();
    let mut count = 0i64;
    for order in indices.iter().copied().permutations(indices.len()) {
        sum += eval(&order);
        count += 1;
    }
    sum / rat_int(count)
}
