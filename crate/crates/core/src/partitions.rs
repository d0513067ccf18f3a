//! Partition sequences, admissible pairs and the fixed-point components
//! they label.
//!
//! Sequences are kept weakly *increasing* (`α_1 <= ... <= α_r`), which is
//! the order the weight interval formulas are written in.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Weakly increasing sequence of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct PartitionSeq(Vec<u32>);

impl PartitionSeq {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::usage(format!(
                "sequence {parts:?} is not weakly increasing"
            )));
        }
        Ok(PartitionSeq(parts))
    }

    /// Sorts ascending; the flag reports whether the input had to be
    /// reordered.
    pub fn from_unsorted(mut parts: Vec<u32>) -> (Self, bool) {
        let sorted = parts.windows(2).all(|w| w[0] <= w[1]);
        parts.sort_unstable();
        (PartitionSeq(parts), !sorted)
    }

    pub fn zeros(len: usize) -> Self {
        PartitionSeq(vec![0; len])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn runs(&self) -> RunEncoding {
        runs(self)
    }

    pub fn conjugate(&self, len: usize) -> PartitionSeq {
        conjugate(self, len)
    }
}

impl TryFrom<Vec<u32>> for PartitionSeq {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        PartitionSeq::new(v)
    }
}

impl From<PartitionSeq> for Vec<u32> {
    fn from(p: PartitionSeq) -> Self {
        p.0
    }
}

impl std::fmt::Display for PartitionSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// Run-length encoding `(a_I, m_I)` of a weakly increasing sequence; values
/// strictly increase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunEncoding {
    pub runs: Vec<(u32, usize)>,
}

impl RunEncoding {
    pub fn values(&self) -> impl Iterator<Item = u32> + '_ {
        self.runs.iter().map(|&(a, _)| a)
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = usize> + '_ {
        self.runs.iter().map(|&(_, m)| m)
    }

    /// `Σ_{I<J} m_I m_J`, the dimension of the flag of subspaces cut out
    /// by the runs inside an `r`-dimensional space.
    pub fn cross_pairs(&self) -> usize {
        let total: usize = self.multiplicities().sum();
        let squares: usize = self.multiplicities().map(|m| m * m).sum();
        (total * total - squares) / 2
    }
}

pub fn runs(seq: &PartitionSeq) -> RunEncoding {
    let mut out: Vec<(u32, usize)> = Vec::new();
    for &p in seq.parts() {
        match out.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    RunEncoding { runs: out }
}

/// Column lengths of the Young diagram of `seq`, weakly increasing and
/// left-padded with zeros to `len` (or to the number of columns, if larger).
pub fn conjugate(seq: &PartitionSeq, len: usize) -> PartitionSeq {
    let cols = seq.largest();
    let mut out: Vec<u32> = (1..=cols)
        .rev()
        .map(|k| seq.parts().iter().filter(|&&p| p >= k).count() as u32)
        .collect();
    if out.len() < len {
        let mut padded = vec![0; len - out.len()];
        padded.append(&mut out);
        out = padded;
    }
    PartitionSeq(out)
}

fn check_nr(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::usage(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    Ok(())
}

/// Hilbert polynomial `P(t) = (n-r) t + d + (n-r)` as `(slope, constant)`.
pub fn hilbert_poly(n: usize, r: usize, d: u64) -> Result<(u64, u64)> {
    check_nr(n, r)?;
    let k = (n - r) as u64;
    Ok((k, d + k))
}

/// Dimension `dn + (n-r)r` of the Quot scheme.
pub fn quot_dim(n: usize, r: usize, d: u64) -> Result<u64> {
    check_nr(n, r)?;
    Ok(d * n as u64 + ((n - r) * r) as u64)
}

/// All weakly increasing length-`len` sequences of non-negative integers
/// summing to `total`, in lexicographic order.
pub fn partitions_into(total: u64, len: usize) -> Vec<PartitionSeq> {
    fn rec(remaining: u64, slots: usize, min: u64, prefix: &mut Vec<u32>, out: &mut Vec<PartitionSeq>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(PartitionSeq(prefix.clone()));
            }
            return;
        }
        if slots == 1 {
            if remaining >= min {
                prefix.push(remaining as u32);
                out.push(PartitionSeq(prefix.clone()));
                prefix.pop();
            }
            return;
        }
        // every later part is at least `v`
        let mut v = min;
        while v * slots as u64 <= remaining {
            prefix.push(v as u32);
            rec(remaining - v, slots - 1, v, prefix, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(PartitionSeq(Vec::new()));
        }
        return out;
    }
    rec(total, len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

/// All admissible pairs `(α; β)` of length-`r` sequences with
/// `Σα + Σβ = d`, sorted lexicographically by `(α, β)`.
pub fn admissible_pairs(r: usize, d: u64) -> Vec<(PartitionSeq, PartitionSeq)> {
    let mut out = Vec::new();
    for k in 0..=d {
        let betas = partitions_into(d - k, r);
        for a in partitions_into(k, r) {
            for b in &betas {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out.sort();
    out
}

/// An `S^1`-fixed component `F_{α;β}` of the Quot scheme of degree
/// `Σα + Σβ` for maps into `Gr_r(C^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedComponent {
    alpha: PartitionSeq,
    beta: PartitionSeq,
    n: usize,
}

impl FixedComponent {
    pub fn new(alpha: PartitionSeq, beta: PartitionSeq, n: usize) -> Result<Self> {
        let r = alpha.len();
        check_nr(n, r)?;
        if beta.len() != r {
            return Err(Error::usage(format!(
                "alpha has length {r} but beta has length {}",
                beta.len()
            )));
        }
        Ok(FixedComponent { alpha, beta, n })
    }

    /// The component `F_{α;0,...,0}`.
    pub fn distinguished(alpha: PartitionSeq, n: usize) -> Result<Self> {
        let r = alpha.len();
        Self::new(alpha, PartitionSeq::zeros(r), n)
    }

    pub fn alpha(&self) -> &PartitionSeq {
        &self.alpha
    }

    pub fn beta(&self) -> &PartitionSeq {
        &self.beta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.alpha.len()
    }

    pub fn degree(&self) -> u64 {
        self.alpha.sum() + self.beta.sum()
    }

    pub fn is_distinguished(&self) -> bool {
        self.beta.is_zero()
    }

    pub fn alpha_runs(&self) -> RunEncoding {
        runs(&self.alpha)
    }

    pub fn beta_runs(&self) -> RunEncoding {
        runs(&self.beta)
    }

    pub fn dimension(&self) -> usize {
        component_dimension(self)
    }

    /// Block sizes `(m_1, ..., m_k, n-r)` of the flag manifold on the `α`
    /// side; a zero trailing block (`r = n`) is dropped.
    pub fn flag_blocks(&self) -> Vec<usize> {
        let mut blocks: Vec<usize> = self.alpha_runs().multiplicities().collect();
        if self.n > self.r() {
            blocks.push(self.n - self.r());
        }
        blocks
    }

    /// Codimension `quot_dim - dim` of the component.
    pub fn codimension(&self) -> usize {
        let total = quot_dim(self.n, self.r(), self.degree()).expect("validated at construction");
        total as usize - self.dimension()
    }

    /// Label such as `F[0,3;0,0]`.
    pub fn label(&self) -> String {
        format!("F[{};{}]", self.alpha, self.beta)
    }

    pub fn record(&self) -> ComponentRecord {
        ComponentRecord {
            alpha: self.alpha.parts().to_vec(),
            beta: self.beta.parts().to_vec(),
            n: self.n,
            r: self.r(),
            dim: self.dimension(),
            flag_blocks: self.flag_blocks(),
        }
    }
}

/// JSON form of a [`FixedComponent`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub n: usize,
    pub r: usize,
    pub dim: usize,
    pub flag_blocks: Vec<usize>,
}

/// `(n-r)r + Σ_{I<J} m_I m_J + Σ_{I<J} n_I n_J` over the runs of `α` and
/// `β`.
pub fn component_dimension(c: &FixedComponent) -> usize {
    (c.n - c.r()) * c.r() + c.alpha_runs().cross_pairs() + c.beta_runs().cross_pairs()
}

/// Components with `β = 0` and `Σα = d`, one per partition of `d` into at
/// most `r` parts.
pub fn distinguished_components(n: usize, r: usize, d: u64) -> Result<Vec<FixedComponent>> {
    check_nr(n, r)?;
    partitions_into(d, r)
        .into_iter()
        .map(|a| FixedComponent::distinguished(a, n))
        .collect()
}

/// Every fixed component of degree `d`, in admissible-pair order.
pub fn all_components(n: usize, r: usize, d: u64) -> Result<Vec<FixedComponent>> {
    check_nr(n, r)?;
    admissible_pairs(r, d)
        .into_iter()
        .map(|(a, b)| FixedComponent::new(a, b, n))
        .collect()
}
