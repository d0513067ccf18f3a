//! Plain-text and LaTeX rendering.
//!
//! Series print in ascending `α`-exponent; within one exponent the terms of
//! the coefficient polynomial print leading (largest graded-lex) term first.
//! Plain text uses `a` for `α`, `z` for `ζ` and `y1..yn` for the roots.

use num_traits::{One, Signed};
use serde_json::{Map, Value};

use super::poly::{MPoly, Monomial};
use super::series::AlphaSeries;
use super::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Plain,
    Latex,
}

fn power(style: Style, base: &str, exp: i64) -> String {
    match (style, exp) {
        (_, 1) => base.to_string(),
        (Style::Plain, e) => format!("{base}^{e}"),
        (Style::Latex, e) => format!("{base}^{{{e}}}"),
    }
}

fn monomial_factors(m: &Monomial, style: Style) -> Vec<String> {
    let mut out = Vec::new();
    let zeta = match style {
        Style::Plain => "z",
        Style::Latex => "\\zeta",
    };
    if m.zeta() > 0 {
        out.push(power(style, zeta, m.zeta() as i64));
    }
    for (i, &e) in m.y().iter().enumerate() {
        if e > 0 {
            let base = match style {
                Style::Plain => format!("y{}", i + 1),
                Style::Latex => format!("y_{{{}}}", i + 1),
            };
            out.push(power(style, &base, e as i64));
        }
    }
    out
}

fn alpha_factor(exp: i64, style: Style) -> Option<String> {
    if exp == 0 {
        return None;
    }
    Some(match style {
        Style::Plain => power(style, "a", exp),
        Style::Latex => power(style, "\\alpha", exp),
    })
}

fn magnitude(c: &Rat, style: Style) -> String {
    let c = c.abs();
    match style {
        Style::Plain => c.to_string(),
        Style::Latex if c.is_integer() => c.numer().to_string(),
        Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
    }
}

fn join_terms(terms: Vec<(&Rat, Vec<String>)>, style: Style) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let sep = match style {
        Style::Plain => "*",
        Style::Latex => "",
    };
    let mut out = String::new();
    for (k, (c, factors)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let unit = c.abs().is_one();
        if factors.is_empty() {
            out.push_str(&magnitude(c, style));
        } else if unit {
            out.push_str(&factors.join(sep));
        } else {
            out.push_str(&magnitude(c, style));
            out.push_str(sep);
            out.push_str(&factors.join(sep));
        }
    }
    out
}

impl Monomial {
    /// Plain rendering used as a JSON key; `"1"` for the constant monomial.
    pub fn to_plain_key(&self) -> String {
        let f = monomial_factors(self, Style::Plain);
        if f.is_empty() {
            "1".to_string()
        } else {
            f.join("*")
        }
    }
}

impl MPoly {
    pub fn render(&self, style: Style) -> String {
        let terms = self
            .terms()
            .rev()
            .map(|(m, c)| (c, monomial_factors(m, style)))
            .collect();
        join_terms(terms, style)
    }

    pub fn to_plain(&self) -> String {
        self.render(Style::Plain)
    }

    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }
}

impl AlphaSeries {
    pub fn render(&self, style: Style) -> String {
        let mut terms = Vec::new();
        for (k, p) in self.iter() {
            for (m, c) in p.terms().rev() {
                let mut factors: Vec<String> = alpha_factor(k, style).into_iter().collect();
                factors.extend(monomial_factors(m, style));
                terms.push((c, factors));
            }
        }
        join_terms(terms, style)
    }

    pub fn to_plain(&self) -> String {
        self.render(Style::Plain)
    }

    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }

    /// `{"<α-exp>": {"<monomial>": "<p/q>"}}`, exponents ascending.
    pub fn to_json(&self) -> Value {
        let mut outer = Map::new();
        for (k, p) in self.iter() {
            let inner: Map<String, Value> = p
                .terms()
                .rev()
                .map(|(m, c)| (m.to_plain_key(), Value::String(c.to_string())))
                .collect();
            outer.insert(k.to_string(), Value::Object(inner));
        }
        Value::Object(outer)
    }
}

impl std::fmt::Display for MPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_plain())
    }
}

impl std::fmt::Display for AlphaSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_plain())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::{rat, rat_int};

    fn zeta_pow(n: usize, k: u32) -> MPoly {
        MPoly::term(Monomial::new(k, &vec![0; n]), rat_int(1))
    }

    fn sample() -> AlphaSeries {
        let n = 3;
        AlphaSeries::alpha_power(n, -11, rat(-103, 1296))
            .add(&AlphaSeries::from_poly(-10, zeta_pow(n, 1).scale(&rat(-11, 432))))
            .unwrap()
            .add(&AlphaSeries::from_poly(-9, zeta_pow(n, 2).scale(&rat(-1, 432))))
            .unwrap()
    }

    #[test]
    fn plain_series() {
        assert_eq!(
            sample().to_plain(),
            "-103/1296*a^-11 - 11/432*a^-10*z - 1/432*a^-9*z^2"
        );
    }

    #[test]
    fn latex_series() {
        assert_eq!(
            sample().to_latex(),
            "-\\frac{103}{1296}\\alpha^{-11} - \\frac{11}{432}\\alpha^{-10}\\zeta - \\frac{1}{432}\\alpha^{-9}\\zeta^{2}"
        );
    }

    #[test]
    fn unit_coefficients_and_zero() {
        let p = MPoly::y(2, 1).sub(&MPoly::y(2, 2)).unwrap();
        assert_eq!(p.to_plain(), "y1 - y2");
        assert_eq!(MPoly::zero(2).to_plain(), "0");
        assert_eq!(AlphaSeries::alpha_power(1, -1, rat_int(-1)).to_plain(), "-a^-1");
        assert_eq!(MPoly::constant(1, rat(3, 1)).to_latex(), "3");
    }

    #[test]
    fn json_shape() {
        let v = sample().to_json();
        assert_eq!(
            v.to_string(),
            r#"{"-11":{"1":"-103/1296"},"-10":{"z":"-11/432"},"-9":{"z^2":"-1/432"}}"#
        );
    }
}
