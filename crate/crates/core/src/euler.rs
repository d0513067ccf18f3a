//! `C^×`-equivariant Euler class of the normal bundle to a distinguished
//! component, as a product of linear forms `-wα + y_i - y_j`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::partitions::{FixedComponent, PartitionSeq};
use crate::symalg::{rat_int, AlphaSeries, DegreeMeasure, MPoly, Rat, Style};
use crate::{Error, Result};

/// The linear form `-wα + y_i - y_j`; `i == j` gives the pure `-wα`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EulerFactor {
    pub w: i64,
    pub i: usize,
    pub j: usize,
}

impl EulerFactor {
    /// `y_i - y_j` over `n` roots.
    fn root_difference(&self, n: usize) -> MPoly {
        if self.i == self.j {
            MPoly::zero(n)
        } else {
            MPoly::y(n, self.i).sub(&MPoly::y(n, self.j)).expect("same arity")
        }
    }

    pub fn as_series(&self, n: usize) -> AlphaSeries {
        AlphaSeries::alpha_power(n, 1, rat_int(-self.w))
            .add(&AlphaSeries::from_poly(0, self.root_difference(n)))
            .expect("same arity")
    }

    pub fn render(&self, style: Style) -> String {
        let (alpha, root) = match style {
            Style::Plain => ("a", "y"),
            Style::Latex => ("\\alpha", "y_"),
        };
        let y = |k: usize| format!("{root}{k}");
        let coeff = match -self.w {
            1 => alpha.to_string(),
            -1 => format!("-{alpha}"),
            c => format!("{c}{alpha}"),
        };
        if self.i == self.j {
            format!("({coeff})")
        } else {
            format!("({coeff}+{}-{})", y(self.i), y(self.j))
        }
    }
}

/// Factors of the normal Euler class of `F_{α;0}` in `Gr_r(C^n)`,
/// ordered by descending weight, then row, then column.
pub fn euler_factors(alpha: &PartitionSeq, n: usize) -> Result<Vec<EulerFactor>> {
    let r = alpha.len();
    if r == 0 || r > n {
        return Err(Error::usage(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    let a: Vec<i64> = alpha.parts().iter().map(|&p| p as i64).collect();
    let mut out = Vec::new();
    for i in 1..=r {
        for j in 1..=r {
            for w in (a[j - 1] - a[i - 1] + 1)..=a[j - 1] {
                if w != 0 {
                    out.push(EulerFactor { w, i, j });
                }
            }
        }
    }
    for i in r + 1..=n {
        for (j, &aj) in a.iter().enumerate() {
            for w in 1..=aj {
                out.push(EulerFactor { w, i, j: j + 1 });
            }
        }
    }
    out.sort_by(|x, y| y.w.cmp(&x.w).then(x.i.cmp(&y.i)).then(x.j.cmp(&y.j)));
    Ok(out)
}

/// Euler factors of a component, rejecting `β != 0`.
pub fn component_euler_factors(c: &FixedComponent) -> Result<Vec<EulerFactor>> {
    if !c.is_distinguished() {
        return Err(Error::usage(format!(
            "Euler factors are only available for distinguished components (beta = 0), got {}",
            c.label()
        )));
    }
    euler_factors(c.alpha(), c.n())
}

/// Expanded product of the factors.
pub fn euler_class(factors: &[EulerFactor], n: usize) -> AlphaSeries {
    factors.iter().fold(AlphaSeries::one(n), |acc, f| {
        acc.mul_exact(&f.as_series(n)).expect("same arity")
    })
}

/// `1 / Π(-wα + L)` expanded in `L / α`, keeping `y`-degree `<= ydeg_cap`.
///
/// Each factor contributes `Σ_m (-1)^m L^m / (-wα)^{m+1}`, so a term of
/// `y`-degree `m` in the result sits at `α^{-(#factors + m)}`.
pub fn inverse_series(factors: &[EulerFactor], n: usize, ydeg_cap: u32) -> Result<AlphaSeries> {
    let mut acc = AlphaSeries::one(n);
    for f in factors {
        if f.w == 0 {
            return Err(Error::invariant(format!(
                "zero weight in normal direction ({}, {}) cannot be inverted",
                f.i, f.j
            )));
        }
        let diff = f.root_difference(n);
        let lead = Rat::one() / rat_int(-f.w);
        let mut geometric = AlphaSeries::zero(n);
        let mut power = MPoly::one(n);
        let mut coeff = lead.clone();
        for m in 0..=ydeg_cap {
            if power.is_zero() {
                break;
            }
            geometric = geometric.add(&AlphaSeries::from_poly(-(m as i64) - 1, power.scale(&coeff)))?;
            power = power.mul_capped(&diff, Some(ydeg_cap), DegreeMeasure::Y)?;
            coeff = -coeff * &lead;
        }
        acc = acc.mul(&geometric, ydeg_cap)?;
    }
    Ok(acc)
}

pub fn render_factors(factors: &[EulerFactor], style: Style) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors.iter().map(|f| f.render(style)).collect()
}

/// Whether `s` equals `1` once terms of `y`-degree above `cap` are dropped.
pub fn is_unit_up_to(s: &AlphaSeries, cap: u32) -> bool {
    s.truncate_y(cap) == AlphaSeries::one(s.arity())
}
