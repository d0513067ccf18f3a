//! Localization integrals `∫_E e^{κζ} / e_{C^×}(ν)` over the distinguished
//! fixed components, and their per-degree totals.

use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::euler::{euler_factors, inverse_series};
use crate::flagint::{FlagIntegrator, FlagType};
use crate::partitions::{distinguished_components, FixedComponent, PartitionSeq};
use crate::symalg::{rat_int, AlphaSeries, DegreeMeasure, MPoly, Rat};
use crate::{Error, Result};

/// `κ = -(y_1 + ... + y_r)`.
pub fn hyperplane_class(r: usize, n: usize) -> Result<MPoly> {
    if r == 0 || r > n {
        return Err(Error::usage(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    let mut k = MPoly::zero(n);
    for i in 1..=r {
        k.add_assign(&MPoly::y(n, i))?;
    }
    Ok(k.neg())
}

/// `Σ_{j<=cap} (κζ)^j / j!`.
fn exp_kappa_zeta(kappa: &MPoly, cap: u32) -> Result<MPoly> {
    let n = kappa.arity();
    let kz = kappa.mul(&MPoly::zeta(n))?;
    let mut out = MPoly::one(n);
    let mut power = MPoly::one(n);
    let mut factorial = Rat::one();
    for j in 1..=cap {
        power = power.mul_capped(&kz, Some(cap), DegreeMeasure::Y)?;
        factorial *= rat_int(j as i64);
        out.add_assign(&power.scale(&(Rat::one() / &factorial)))?;
    }
    Ok(out)
}

/// Localization contribution of one distinguished component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentIntegral {
    pub component: FixedComponent,
    pub dim: usize,
    pub codim: usize,
    /// Polynomial in `ζ`, Laurent in `α`, free of `y`.
    pub value: AlphaSeries,
}

impl ComponentIntegral {
    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.component.alpha().parts(),
            "dim": self.dim,
            "codim": self.codim,
            "integral": self.value.to_json(),
        })
    }

    /// Each `ζ^j` must sit alone at `α^{-(codim + dim - j)}`.
    fn check_alpha_pattern(&self) -> Result<()> {
        let d = self.dim as i64;
        let c = self.codim as i64;
        for (k, p) in self.value.iter() {
            for (m, _) in p.terms() {
                let j = m.zeta() as i64;
                if m.y_degree() != 0 || j > d || k != -(c + d - j) {
                    return Err(Error::invariant(format!(
                        "integral over {} has a term at alpha^{k} with monomial {}",
                        self.component.label(),
                        m.to_plain_key()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Evaluates component integrals; owns the flag-integration memo.
#[derive(Debug, Default)]
pub struct Localizer {
    integrator: FlagIntegrator,
    parallel: bool,
}

impl Localizer {
    pub fn new(integrator: FlagIntegrator) -> Self {
        Localizer {
            integrator,
            parallel: false,
        }
    }

    /// Evaluate components on the rayon pool. Results are identical either way.
    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn integrator(&self) -> &FlagIntegrator {
        &self.integrator
    }

    /// Flag type and integrand `e^{κζ} / e(ν)` (expanded up to `y`-degree
    /// `dim`) of `F_{α;0}`.
    pub fn component_integrand(&self, alpha: &PartitionSeq, n: usize, r: usize) -> Result<(FixedComponent, AlphaSeries)> {
        if alpha.len() != r {
            return Err(Error::usage(format!(
                "alpha {alpha} has length {} but r = {r}",
                alpha.len()
            )));
        }
        let component = FixedComponent::distinguished(alpha.clone(), n)?;
        let cap = component.dimension() as u32;
        let factors = euler_factors(alpha, n)?;
        let inverse = inverse_series(&factors, n, cap)?;
        let exp = exp_kappa_zeta(&hyperplane_class(r, n)?, cap)?;
        let integrand = inverse.mul(&AlphaSeries::from_poly(0, exp), cap)?;
        Ok((component, integrand))
    }

    pub fn component_integral(&self, alpha: &PartitionSeq, n: usize, r: usize) -> Result<ComponentIntegral> {
        let (component, integrand) = self.component_integrand(alpha, n, r)?;
        let ft = FlagType::of_component(&component);
        let value = self.integrator.integrate_poly(&ft, &integrand)?;
        let out = ComponentIntegral {
            dim: component.dimension(),
            codim: component.codimension(),
            component,
            value,
        };
        out.check_alpha_pattern()?;
        Ok(out)
    }

    /// Integrals of every distinguished component of degree `d`, in
    /// enumeration order.
    pub fn component_integrals(&self, n: usize, r: usize, d: u64) -> Result<Vec<ComponentIntegral>> {
        let comps = distinguished_components(n, r, d)?;
        let eval = |c: &FixedComponent| self.component_integral(c.alpha(), n, r);
        if self.parallel {
            comps.par_iter().map(eval).collect()
        } else {
            comps.iter().map(eval).collect()
        }
    }

    pub fn degree_total(&self, n: usize, r: usize, d: u64) -> Result<AlphaSeries> {
        let mut total = AlphaSeries::zero(n);
        for ci in self.component_integrals(n, r, d)? {
            total = total.add(&ci.value)?;
        }
        Ok(total)
    }

    /// `Gr_r(C^n) = Gr_{n-r}(C^n)`: both presentations must give the same
    /// total.
    pub fn duality_check(&self, n: usize, r: usize, d: u64) -> Result<bool> {
        if r == 0 || r >= n {
            return Err(Error::usage(format!("duality needs 1 <= r < n, got n={n}, r={r}")));
        }
        Ok(self.degree_total(n, r, d)? == self.degree_total(n, n - r, d)?)
    }

    pub fn euler_series_table(&self, n: usize, r: usize, d_max: u64) -> Result<Vec<(u64, AlphaSeries)>> {
        (0..=d_max).map(|d| Ok((d, self.degree_total(n, r, d)?))).collect()
    }
}
