//! `S^1`-weights of the tangent space of the Quot scheme at a fixed point.
//!
//! The tangent weights split into three pieces: `Wt1` from the torsion of
//! the quotient at `0`, `Wt2` from the torsion at `∞`, and `Wt3` from the
//! `n - r` free directions. Zero weights are kept so that the multiplicity
//! of `0` can be compared with the component dimension.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::partitions::{quot_dim, FixedComponent, PartitionSeq};
use crate::{Error, Result};

/// Integer weights with positive multiplicities. Serializes as a JSON
/// object with numerically sorted string keys.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightMultiset(BTreeMap<i64, u64>);

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut m = Self::new();
        for (w, k) in pairs {
            m.insert(w, k);
        }
        m
    }

    pub fn insert(&mut self, w: i64, mult: u64) {
        if mult > 0 {
            *self.0.entry(w).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, w: i64) -> u64 {
        self.0.get(&w).copied().unwrap_or(0)
    }

    pub fn cardinality(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(weight, multiplicity)` in ascending weight order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&w, &m)| (w, m))
    }

    pub fn union(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.insert(w, m);
        }
        out
    }

    pub fn negate(&self) -> WeightMultiset {
        Self::from_pairs(self.iter().map(|(w, m)| (-w, m)))
    }

    pub fn nonzero_part(&self) -> WeightMultiset {
        Self::from_pairs(self.iter().filter(|&(w, _)| w != 0))
    }

    pub fn scaled(&self, k: u64) -> WeightMultiset {
        Self::from_pairs(self.iter().map(|(w, m)| (w, m * k)))
    }

    /// `8(-4a), 10(-3a), ...`-style listing.
    pub fn to_plain(&self) -> String {
        let items: Vec<String> = self.iter().map(|(w, m)| format!("{m}({})", weight_term(w, "a"))).collect();
        format!("{{{}}}", items.join(", "))
    }

    pub fn to_latex(&self) -> String {
        let items: Vec<String> = self
            .iter()
            .map(|(w, m)| format!("{m}({})", weight_term(w, "\\alpha")))
            .collect();
        format!("\\{{{}\\}}", items.join(",\\, "))
    }
}

fn weight_term(w: i64, alpha: &str) -> String {
    match w {
        0 => "0".to_string(),
        1 => alpha.to_string(),
        -1 => format!("-{alpha}"),
        w => format!("{w}{alpha}"),
    }
}

/// `⊔_{i,j} ((α_j - α_i, α_j] ∩ Z)`.
pub fn wt1(alpha: &PartitionSeq) -> WeightMultiset {
    let a = alpha.parts();
    let mut out = WeightMultiset::new();
    for &ai in a {
        for &aj in a {
            let (ai, aj) = (ai as i64, aj as i64);
            for w in (aj - ai + 1)..=aj {
                out.insert(w, 1);
            }
        }
    }
    out
}

/// `⊔_{i,j} ([-β_j, β_i - β_j) ∩ Z)`.
pub fn wt2(beta: &PartitionSeq) -> WeightMultiset {
    let b = beta.parts();
    let mut out = WeightMultiset::new();
    for &bi in b {
        for &bj in b {
            let (bi, bj) = (bi as i64, bj as i64);
            for w in -bj..(bi - bj) {
                out.insert(w, 1);
            }
        }
    }
    out
}

/// `(n - r)` copies of `⊔_i ([-β_{π(i)}, α_i] ∩ Z)`.
///
/// `matching` is a 0-based permutation `π` of `0..r`; `None` pairs `α_i`
/// with `β_i`. The multiset does not depend on the choice.
pub fn wt3(alpha: &PartitionSeq, beta: &PartitionSeq, n: usize, matching: Option<&[usize]>) -> Result<WeightMultiset> {
    let r = alpha.len();
    if beta.len() != r {
        return Err(Error::usage(format!("alpha has length {r}, beta has length {}", beta.len())));
    }
    if r == 0 || r > n {
        return Err(Error::usage(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    let identity: Vec<usize> = (0..r).collect();
    let perm = matching.unwrap_or(&identity);
    let mut seen = vec![false; r];
    if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::usage(format!("{perm:?} is not a permutation of 0..{r}")));
    }
    let mut once = WeightMultiset::new();
    for (i, &ai) in alpha.parts().iter().enumerate() {
        let lo = -(beta.parts()[perm[i]] as i64);
        for w in lo..=ai as i64 {
            once.insert(w, 1);
        }
    }
    Ok(once.scaled((n - r) as u64))
}

/// The three weight subsystems of one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystem {
    pub wt1: WeightMultiset,
    pub wt2: WeightMultiset,
    pub wt3: WeightMultiset,
}

impl WeightSystem {
    pub fn total(&self) -> WeightMultiset {
        self.wt1.union(&self.wt2).union(&self.wt3)
    }
}

pub fn full_weight_system(c: &FixedComponent) -> WeightSystem {
    WeightSystem {
        wt1: wt1(c.alpha()),
        wt2: wt2(c.beta()),
        wt3: wt3(c.alpha(), c.beta(), c.n(), None).expect("component already validated"),
    }
}

/// Nonzero part of `Wt1` via the generating-function substitution.
///
/// The Young diagram of `α` gives the monomial `A1 = Π_k q_{-k}^{c_k}` with
/// `c_k` the conjugate partition (number of parts `>= k`). Each part value
/// `j` occurring `m` times contributes `A1` with every index shifted by
/// `j + 1`, raised to the `m`-th power. After setting `q_0 = 1` the exponent
/// of `q_w` is the multiplicity of weight `w`.
pub fn wt1_via_generating_function(alpha: &PartitionSeq) -> WeightMultiset {
    let cols = alpha.largest() as usize;
    let conj = alpha.conjugate(cols);
    // conj is ascending, so q_{-k} takes the k-th largest column count
    let a1: Vec<(i64, u64)> = (1..=cols)
        .map(|k| (-(k as i64), conj.parts()[cols - k] as u64))
        .filter(|&(_, e)| e > 0)
        .collect();

    let mut monomial: BTreeMap<i64, u64> = BTreeMap::new();
    for (j, m) in alpha.runs().runs {
        let shift = j as i64 + 1;
        for &(idx, e) in &a1 {
            *monomial.entry(idx + shift).or_insert(0) += e * m as u64;
        }
    }
    monomial.remove(&0);
    WeightMultiset::from_pairs(monomial)
}

/// Whether the multiplicity of `0` among all tangent weights equals the
/// component dimension.
pub fn zero_multiplicity_check(c: &FixedComponent) -> bool {
    full_weight_system(c).total().multiplicity(0) == c.dimension() as u64
}

/// Whether the weight count equals `dn + (n-r)r`.
pub fn cardinality_check(c: &FixedComponent) -> bool {
    let expected = quot_dim(c.n(), c.r(), c.degree()).expect("component already validated");
    full_weight_system(c).total().cardinality() == expected
}
