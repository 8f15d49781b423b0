//! Canonical text for polynomials.
//!
//! Monomial form lists terms in the order `x^2, x*y, y^2, x, y, 1`, writes
//! coefficients as integers or `p/q`, drops zero terms and unit coefficients,
//! and joins with ` + ` / ` - `. The zero polynomial is `0`. Output of both
//! renderers parses back with [`crate::parse::parse_poly`].

use std::fmt;

use num::{One, Signed, Zero};

use crate::geometry::SectorSpec;
use crate::poly::{QuadPoly, MONOMIALS};
use crate::rational::{frac, int, Rational};

fn push_term(out: &mut String, coef: &Rational, monomial: &str) {
    if coef.is_zero() {
        return;
    }
    let mag = coef.abs();
    if out.is_empty() {
        if coef.is_negative() {
            out.push('-');
        }
    } else {
        out.push_str(if coef.is_negative() { " - " } else { " + " });
    }
    match (monomial.is_empty(), mag.is_one()) {
        (true, _) => out.push_str(&mag.to_string()),
        (false, true) => out.push_str(monomial),
        (false, false) => {
            out.push_str(&mag.to_string());
            out.push('*');
            out.push_str(monomial);
        }
    }
}

fn render_terms(terms: &[(&Rational, &str)]) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        push_term(&mut out, c, m);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        let monos = MONOMIALS.map(|m| if m == "1" { "" } else { m });
        let terms: Vec<(&Rational, &str)> = c.iter().copied().zip(monos).collect();
        f.write_str(&render_terms(&terms))
    }
}

/// `x + y_coef*y + c` as a parenthesized factor, or bare `x` when it is just `x`.
fn factor(y_coef: &Rational, c: &Rational) -> String {
    let one = Rational::one();
    let body = render_terms(&[(&one, "x"), (y_coef, "y"), (c, "")]);
    if y_coef.is_zero() && c.is_zero() {
        body
    } else {
        format!("({body})")
    }
}

/// The closed form `(n/2)(x - (m-1)/n y)(x - (m-1)/n y - kl/n) + x + (kl-(m-1))/n y + |k| - 1`
/// with every constant reduced, e.g. `6*(x - 1/2*y)*(x - 1/2*y - 3/2) + x + y + 2`.
pub fn factored_main_form(s: SectorSpec, k: i64) -> String {
    let (n, m1, l) = (s.n(), s.m() - 1, s.l());
    let shift = -frac(m1, n);
    let lead = frac(n, 2);
    let mut out = String::new();
    if !lead.is_one() {
        out.push_str(&lead.to_string());
        out.push('*');
    }
    out.push_str(&factor(&shift, &Rational::zero()));
    out.push('*');
    out.push_str(&factor(&shift, &-frac(k * l, n)));
    let y_coef = frac(k * l - m1, n);
    let constant = int(k.abs() - 1);
    let mut tail = String::from("x");
    for (c, m) in [(&y_coef, "y"), (&constant, "")] {
        push_term(&mut tail, c, m);
    }
    out.push_str(" + ");
    out.push_str(&tail);
    out
}

/// Coefficients as a comma-separated tuple in storage order, e.g. `2,-2,1/2,0,1/2,0`.
pub fn coefficient_tuple(p: &QuadPoly) -> String {
    p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}
