//! Exact bivariate quadratics.
//!
//! [`QuadPoly`] stores the monomial coefficients of
//! `c_xx x^2 + c_xy xy + c_yy y^2 + c_x x + c_y y + c_0`. The half-integer
//! "alpha" basis `(A/2) x(x-1) + B xy + (C/2) y(y-1) + D x + E y + F` and the
//! factored closed forms are conversions into and out of this storage.

use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;

use crate::error::{Error, Result};
use crate::geometry::{skew_map, LatticePoint, SectorSpec, UnimodularMap};
use crate::rational::{self, frac, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadPoly {
    pub c_xx: Rational,
    pub c_xy: Rational,
    pub c_yy: Rational,
    pub c_x: Rational,
    pub c_y: Rational,
    pub c_0: Rational,
}

/// Monomial names in storage order.
pub const MONOMIALS: [&str; 6] = ["x^2", "x*y", "y^2", "x", "y", "1"];

impl QuadPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(c: [Rational; 6]) -> Self {
        let [c_xx, c_xy, c_yy, c_x, c_y, c_0] = c;
        QuadPoly {
            c_xx,
            c_xy,
            c_yy,
            c_x,
            c_y,
            c_0,
        }
    }

    pub fn from_ints(c: [i64; 6]) -> Self {
        Self::from_coeffs(c.map(int))
    }

    pub fn coeffs(&self) -> [&Rational; 6] {
        [&self.c_xx, &self.c_xy, &self.c_yy, &self.c_x, &self.c_y, &self.c_0]
    }

    pub fn into_coeffs(self) -> [Rational; 6] {
        [self.c_xx, self.c_xy, self.c_yy, self.c_x, self.c_y, self.c_0]
    }

    pub fn constant(c: Rational) -> Self {
        QuadPoly { c_0: c, ..Self::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        &self.c_xx * x * x + &self.c_xy * x * y + &self.c_yy * y * y + &self.c_x * x + &self.c_y * y + &self.c_0
    }

    pub fn evaluate(&self, p: &LatticePoint) -> Rational {
        self.eval(&p.x, &p.y_rational())
    }

    /// `p(y, x)`.
    pub fn swap_xy(&self) -> QuadPoly {
        QuadPoly {
            c_xx: self.c_yy.clone(),
            c_xy: self.c_xy.clone(),
            c_yy: self.c_xx.clone(),
            c_x: self.c_y.clone(),
            c_y: self.c_x.clone(),
            c_0: self.c_0.clone(),
        }
    }

    /// Value of the quadratic part on a direction vector.
    pub fn quadratic_part(&self, dx: &Rational, dy: &Rational) -> Rational {
        &self.c_xx * dx * dx + &self.c_xy * dx * dy + &self.c_yy * dy * dy
    }

    /// Symmetric bilinear form of the quadratic part.
    pub fn bilinear(&self, d: (&Rational, &Rational), e: (&Rational, &Rational)) -> Rational {
        &self.c_xx * d.0 * e.0 + &self.c_xy * (d.0 * e.1 + d.1 * e.0) / int(2) + &self.c_yy * d.1 * e.1
    }

    pub fn gradient(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        (
            int(2) * &self.c_xx * x + &self.c_xy * y + &self.c_x,
            &self.c_xy * x + int(2) * &self.c_yy * y + &self.c_y,
        )
    }

    pub fn scale(&self, k: &Rational) -> QuadPoly {
        QuadPoly::from_coeffs(self.coeffs().map(|c| c * k))
    }
}

impl Add for &QuadPoly {
    type Output = QuadPoly;
    fn add(self, rhs: &QuadPoly) -> QuadPoly {
        let (a, b) = (self.coeffs(), rhs.coeffs());
        QuadPoly::from_coeffs(std::array::from_fn(|i| a[i] + b[i]))
    }
}

impl Add for QuadPoly {
    type Output = QuadPoly;
    fn add(self, rhs: QuadPoly) -> QuadPoly {
        &self + &rhs
    }
}

impl Sub for &QuadPoly {
    type Output = QuadPoly;
    fn sub(self, rhs: &QuadPoly) -> QuadPoly {
        let (a, b) = (self.coeffs(), rhs.coeffs());
        QuadPoly::from_coeffs(std::array::from_fn(|i| a[i] - b[i]))
    }
}

impl Sub for QuadPoly {
    type Output = QuadPoly;
    fn sub(self, rhs: QuadPoly) -> QuadPoly {
        &self - &rhs
    }
}

impl Neg for QuadPoly {
    type Output = QuadPoly;
    fn neg(self) -> QuadPoly {
        QuadPoly::from_coeffs(self.into_coeffs().map(|c| -c))
    }
}

/// An affine form `x_coef x + y_coef y + c`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub x: Rational,
    pub y: Rational,
    pub c: Rational,
}

impl LinearForm {
    pub fn new(x: Rational, y: Rational, c: Rational) -> Self {
        LinearForm { x, y, c }
    }

    pub fn to_poly(&self) -> QuadPoly {
        QuadPoly {
            c_x: self.x.clone(),
            c_y: self.y.clone(),
            c_0: self.c.clone(),
            ..QuadPoly::zero()
        }
    }
}

impl Mul for &LinearForm {
    type Output = QuadPoly;
    fn mul(self, o: &LinearForm) -> QuadPoly {
        QuadPoly {
            c_xx: &self.x * &o.x,
            c_xy: &self.x * &o.y + &self.y * &o.x,
            c_yy: &self.y * &o.y,
            c_x: &self.x * &o.c + &self.c * &o.x,
            c_y: &self.y * &o.c + &self.c * &o.y,
            c_0: &self.c * &o.c,
        }
    }
}

/// Integer coefficients in the basis of `(A/2) x(x-1) + B xy + (C/2) y(y-1) + D x + E y + F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AlphaFormCoeffs {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

impl AlphaFormCoeffs {
    pub fn as_tuple(&self) -> [i64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn to_poly(&self) -> QuadPoly {
        let half = frac(1, 2);
        QuadPoly {
            c_xx: int(self.a) * &half,
            c_xy: int(self.b),
            c_yy: int(self.c) * &half,
            c_x: int(self.d) - int(self.a) * &half,
            c_y: int(self.e) - int(self.c) * &half,
            c_0: int(self.f),
        }
    }

    /// The sector slope `A/(1-B)`; `None` when `B = 1`, the quadrant.
    pub fn slope(&self) -> Option<Rational> {
        (self.b != 1).then(|| frac(self.a, 1 - self.b))
    }
}

pub fn to_alpha_form(p: &QuadPoly) -> Result<AlphaFormCoeffs> {
    let half = frac(1, 2);
    let a = int(2) * &p.c_xx;
    let c = int(2) * &p.c_yy;
    let d = &p.c_x + &a * &half;
    let e = &p.c_y + &c * &half;
    let get = |name: &'static str, v: &Rational| {
        rational::to_i64(v).ok_or_else(|| Error::NonIntegralAlphaForm {
            coefficient: name,
            value: v.clone(),
        })
    };
    Ok(AlphaFormCoeffs {
        a: get("A", &a)?,
        b: get("B", &p.c_xy)?,
        c: get("C", &c)?,
        d: get("D", &d)?,
        e: get("E", &e)?,
        f: get("F", &p.c_0)?,
    })
}

/// `q` with `q(map(v)) = p(v)`, i.e. `q = p ∘ map^{-1}`.
pub fn conjugate(p: &QuadPoly, map: &UnimodularMap) -> QuadPoly {
    let inv = map.inverse();
    let [a, b, c, d] = inv.entries();
    let zero = Rational::zero();
    let x_old = LinearForm::new(a.clone(), b.clone(), zero.clone());
    let y_old = LinearForm::new(c.clone(), d.clone(), zero);
    let mut q = (&x_old * &x_old).scale(&p.c_xx);
    q = &q + &(&x_old * &y_old).scale(&p.c_xy);
    q = &q + &(&y_old * &y_old).scale(&p.c_yy);
    q = &q + &x_old.to_poly().scale(&p.c_x);
    q = &q + &y_old.to_poly().scale(&p.c_y);
    q.c_0 = &q.c_0 + &p.c_0;
    q
}

/// Staircase step `((m-1)/l, n/l)` of the sector.
pub fn step_vector(s: SectorSpec) -> (Rational, Rational) {
    let l = s.l();
    (frac(s.m() - 1, l), frac(s.n(), l))
}

/// `P(x + (m-1)/l, y + n/l) - P(x, y)`, which must be a constant.
pub fn step_difference_k(p: &QuadPoly, s: SectorSpec) -> Result<Rational> {
    let (dx, dy) = step_vector(s);
    let lin_x = int(2) * &p.c_xx * &dx + &p.c_xy * &dy;
    let lin_y = &p.c_xy * &dx + int(2) * &p.c_yy * &dy;
    if !lin_x.is_zero() || !lin_y.is_zero() {
        return Err(Error::NonConstantDifference {
            linear: Box::new((lin_x, lin_y)),
        });
    }
    Ok(p.quadratic_part(&dx, &dy) + &p.c_x * &dx + &p.c_y * &dy)
}

/// Monomial expansion of
/// `(n/2)(x - (m-1)/n y)(x - (m-1)/n y - kl/n) + x + (kl - (m-1))/n y + |k| - 1`.
pub fn expand_main_formula(s: SectorSpec, k: i64) -> QuadPoly {
    let (n, m1, l) = (s.n(), s.m() - 1, s.l());
    let shift = frac(m1, n);
    let u = LinearForm::new(int(1), -&shift, Rational::zero());
    let u_shifted = LinearForm::new(int(1), -&shift, -frac(k * l, n));
    let quad = (&u * &u_shifted).scale(&frac(n, 2));
    let tail = LinearForm::new(int(1), frac(k * l - m1, n), int(k.abs() - 1));
    &quad + &tail.to_poly()
}

/// The skewed-lattice polynomial `(n/2) x (x - k/(n/l)) + x + k/(n/l) y + F`.
pub fn expand_transformed_form(s: SectorSpec, k: i64, f: i64) -> Result<QuadPoly> {
    let (n, l, q) = (s.n(), s.l(), s.n_over_l());
    if l % q != 0 {
        return Err(Error::StaircaseSpacing { l, n_over_l: q });
    }
    let x = LinearForm::new(int(1), Rational::zero(), Rational::zero());
    let x_shifted = LinearForm::new(int(1), Rational::zero(), -frac(k, q));
    let quad = (&x * &x_shifted).scale(&frac(n, 2));
    let tail = LinearForm::new(int(1), frac(k, q), int(f));
    Ok(&quad + &tail.to_poly())
}

/// The linear coefficient `D = n/l - (kl - n)/2 - yif(k)` with the first step
/// of staircase `k` at its highest possible height `n/l - 1`.
pub fn derive_d(s: SectorSpec, k: i64) -> Result<i64> {
    let (n, l, q) = (s.n(), s.l(), s.n_over_l());
    if l % q != 0 {
        return Err(Error::StaircaseSpacing { l, n_over_l: q });
    }
    let d = int(q) - frac(k * l - n, 2) - int(q - 1);
    // D - n/2 must be the x coefficient of the skewed form, 1 - kl/2.
    debug_assert_eq!(&d - frac(n, 2), int(1) - frac(k * l, 2));
    rational::to_i64(&d).ok_or(Error::NonIntegral { name: "D", value: d })
}

/// Skew of a sector-lattice polynomial to its vertical-staircase form.
pub fn skewed(p: &QuadPoly, s: SectorSpec) -> QuadPoly {
    conjugate(p, &skew_map(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{flip_map, make_sector};

    fn sec(n: i64, m: i64) -> SectorSpec {
        make_sector(n, m).unwrap()
    }

    fn example1() -> QuadPoly {
        QuadPoly::from_coeffs([int(2), int(-2), frac(1, 2), int(0), frac(1, 2), int(0)])
    }

    fn cantor_f() -> QuadPoly {
        // (1/2)(x+y)(x+y+1) + x
        let s = LinearForm::new(int(1), int(1), int(0));
        let s1 = LinearForm::new(int(1), int(1), int(1));
        &(&s * &s1).scale(&frac(1, 2)) + &LinearForm::new(int(1), int(0), int(0)).to_poly()
    }

    fn cantor_g() -> QuadPoly {
        let s = LinearForm::new(int(1), int(1), int(0));
        let s1 = LinearForm::new(int(1), int(1), int(1));
        &(&s * &s1).scale(&frac(1, 2)) + &LinearForm::new(int(0), int(1), int(0)).to_poly()
    }

    #[test]
    fn evaluate_examples() {
        let p = example1();
        assert_eq!(p.evaluate(&LatticePoint::new(0, 0)), int(0));
        assert_eq!(p.evaluate(&LatticePoint::new(1, 1)), int(1));
        assert_eq!(p.evaluate(&LatticePoint::new(3, 4)), int(4));
    }

    #[test]
    fn alpha_form_examples() {
        let a = to_alpha_form(&cantor_f()).unwrap();
        assert_eq!(a.as_tuple(), [1, 1, 1, 2, 1, 0]);
        assert_eq!(a.to_poly(), cantor_f());
        assert_eq!(to_alpha_form(&QuadPoly::zero()).unwrap(), AlphaFormCoeffs::default());
        let err = to_alpha_form(&QuadPoly::from_coeffs([
            frac(1, 3),
            int(0),
            int(0),
            int(0),
            int(0),
            int(0),
        ]));
        assert_eq!(
            err,
            Err(Error::NonIntegralAlphaForm {
                coefficient: "A",
                value: frac(2, 3)
            })
        );
    }

    #[test]
    fn conjugate_example1_is_vertical() {
        let q = skewed(&example1(), sec(4, 3));
        assert!(q.c_xy.is_zero());
        assert!(q.c_yy.is_zero());
        assert_eq!(conjugate(&example1(), &UnimodularMap::identity()), example1());
        let m = skew_map(sec(4, 3));
        assert_eq!(conjugate(&q, &m.inverse()), example1());
    }

    #[test]
    fn conjugate_moves_values_with_points() {
        let p = example1();
        let m = skew_map(sec(4, 3));
        let q = conjugate(&p, &m);
        for (x, y) in [(0, 0), (1, 1), (3, 4), (5, 2)] {
            let (xi, yi) = m.apply(&int(x), &int(y));
            assert_eq!(q.eval(&xi, &yi), p.eval(&int(x), &int(y)));
        }
    }

    #[test]
    fn step_difference_examples() {
        assert_eq!(step_difference_k(&example1(), sec(4, 3)).unwrap(), int(1));
        assert_eq!(step_difference_k(&cantor_f(), SectorSpec::QUADRANT).unwrap(), int(-1));
        assert_eq!(step_difference_k(&cantor_g(), SectorSpec::QUADRANT).unwrap(), int(1));
        for n in 1..8 {
            // F_n = (n/2) x (x - 1) + x + y
            let f_n = QuadPoly::from_coeffs([frac(n, 2), int(0), int(0), int(1) - frac(n, 2), int(1), int(0)]);
            assert_eq!(step_difference_k(&f_n, sec(n, 1)).unwrap(), int(1));
        }
        let p = QuadPoly::from_ints([1, 0, 0, 0, 0, 0]);
        assert!(matches!(
            step_difference_k(&p, sec(4, 3)),
            Err(Error::NonConstantDifference { .. })
        ));
    }

    #[test]
    fn main_formula_examples() {
        assert_eq!(expand_main_formula(sec(4, 3), 1), example1());
        assert_eq!(expand_main_formula(SectorSpec::QUADRANT, -1), cantor_f());
        assert_eq!(expand_main_formula(SectorSpec::QUADRANT, 1), cantor_g());
        // 6(x - y/2)(x - y/2 - 3/2) + x + y + 2
        let u = LinearForm::new(int(1), frac(-1, 2), int(0));
        let u3 = LinearForm::new(int(1), frac(-1, 2), frac(-3, 2));
        let expected = &(&u * &u3).scale(&int(6)) + &LinearForm::new(int(1), int(1), int(2)).to_poly();
        assert_eq!(expand_main_formula(sec(12, 7), 3), expected);
    }

    #[test]
    fn transformed_form_examples() {
        let s = sec(4, 3);
        assert_eq!(expand_transformed_form(s, 1, 0).unwrap(), skewed(&example1(), s));
        for n in 1..8 {
            let f_n = QuadPoly::from_coeffs([frac(n, 2), int(0), int(0), int(1) - frac(n, 2), int(1), int(0)]);
            assert_eq!(expand_transformed_form(sec(n, 1), 1, 0).unwrap(), f_n);
        }
        assert_eq!(expand_transformed_form(sec(12, 7), 3, 2).unwrap().c_y, frac(3, 2));
        assert!(matches!(
            expand_transformed_form(sec(3, 2), 1, 0),
            Err(Error::StaircaseSpacing { l: 1, n_over_l: 3 })
        ));
    }

    #[test]
    fn derive_d_examples() {
        assert_eq!(derive_d(sec(4, 3), 1).unwrap(), 2);
        for n in 1..10 {
            assert_eq!(derive_d(sec(n, 1), 1).unwrap(), 1);
        }
        assert_eq!(derive_d(sec(12, 7), 3).unwrap(), -2);
        assert!(derive_d(sec(3, 2), 1).is_err());
    }

    #[test]
    fn flip_exchanges_cantor_pair() {
        // On the quadrant, skew then flip then unskew sends F to G.
        let s = SectorSpec::QUADRANT;
        let m = skew_map(s);
        let chain = m.inverse().compose(&flip_map(1)).compose(&m);
        assert_eq!(conjugate(&cantor_f(), &chain), cantor_g());
    }
}
