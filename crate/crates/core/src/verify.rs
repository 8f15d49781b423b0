//! Finite certification that a polynomial packs a sector lattice.
//!
//! A window is the lattice prefix `x <= x_max` (a box for the quadrant). The
//! exact infimum of the polynomial over the remaining real cone gives a
//! threshold `T`: no lattice point outside the window takes a value `<= T`.
//! A window passes when its values are distinct non-negative integers and
//! those `<= T` are exactly `0..=T`.

use std::fmt;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{LatticePoint, SectorSpec};
use crate::poly::{expand_transformed_form, QuadPoly};
use crate::rational::{self, frac, int, Rational};
use crate::staircase::{column_height, yif};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueFloor {
    Bounded(Rational),
    UnboundedBelow,
}

impl ValueFloor {
    pub fn bound(&self) -> Option<&Rational> {
        match self {
            ValueFloor::Bounded(v) => Some(v),
            ValueFloor::UnboundedBelow => None,
        }
    }

    fn min(self, other: ValueFloor) -> ValueFloor {
        match (self, other) {
            (ValueFloor::Bounded(a), ValueFloor::Bounded(b)) => ValueFloor::Bounded(a.min(b)),
            _ => ValueFloor::UnboundedBelow,
        }
    }
}

impl fmt::Display for ValueFloor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueFloor::Bounded(v) => write!(f, "{v}"),
            ValueFloor::UnboundedBelow => f.write_str("-inf"),
        }
    }
}

type Vec2 = (Rational, Rational);

fn dot(a: &Vec2, b: &Vec2) -> Rational {
    &a.0 * &b.0 + &a.1 * &b.1
}

fn along(v: &Vec2, d: &Vec2, t: &Rational) -> Vec2 {
    (&v.0 + t * &d.0, &v.1 + t * &d.1)
}

/// Exact infimum of `p` over `{x >= x_min, 0 <= y <= (n/m) x}` (for the
/// quadrant, `{x >= x_min, y >= 0}`). Negative `x_min` is clamped to zero.
///
/// The region is a polygon plus the sector's recession cone. Boundedness is
/// decided on the cone: the quadratic part must be non-negative on it, and
/// along every null direction the gradient must be non-negative at every
/// vertex. A bounded quadratic attains its minimum, at a vertex, on an edge
/// (segment or ray), or at an interior stationary point of a positive
/// definite part.
pub fn value_floor(p: &QuadPoly, s: SectorSpec, x_min: &Rational) -> ValueFloor {
    let zero = Rational::zero();
    let x0 = if x_min.is_negative() {
        zero.clone()
    } else {
        x_min.clone()
    };
    let f = |v: &Vec2| p.eval(&v.0, &v.1);
    let grad = |v: &Vec2| p.gradient(&v.0, &v.1);
    let quad = |d: &Vec2| p.quadratic_part(&d.0, &d.1);

    let v1: Vec2 = (x0.clone(), zero.clone());
    let v2: Vec2 = match s.slope() {
        Some(a) => (x0.clone(), a * &x0),
        None => v1.clone(),
    };
    let r1: Vec2 = (int(1), zero.clone());
    let (ux, uy) = s.upper_ray();
    let r2: Vec2 = (int(ux), int(uy));
    let mut vertices = vec![v1.clone()];
    if v2 != v1 {
        vertices.push(v2.clone());
    }

    let qa = quad(&r1);
    let qb = p.bilinear((&r1.0, &r1.1), (&r2.0, &r2.1));
    let qc = quad(&r2);
    if qa.is_negative() || qc.is_negative() || (qb.is_negative() && &qb * &qb > &qa * &qc) {
        return ValueFloor::UnboundedBelow;
    }
    let mut null_dirs: Vec<Vec2> = Vec::new();
    if qa.is_zero() {
        null_dirs.push(r1.clone());
    }
    if qc.is_zero() {
        null_dirs.push(r2.clone());
    }
    if qb.is_negative() && qa.is_positive() && qc.is_positive() && &qb * &qb == &qa * &qc {
        null_dirs.push((&qc * &r1.0 - &qb * &r2.0, &qc * &r1.1 - &qb * &r2.1));
    }
    for d in &null_dirs {
        if vertices.iter().any(|v| dot(&grad(v), d).is_negative()) {
            return ValueFloor::UnboundedBelow;
        }
    }

    let mut best = vertices.iter().map(f).min().expect("at least one vertex");
    let mut consider = |v: Vec2| {
        let val = f(&v);
        if val < best {
            best = val;
        }
    };

    // segment x = x0 between the two vertices
    if vertices.len() == 2 {
        let e: Vec2 = (&v2.0 - &v1.0, &v2.1 - &v1.1);
        let qe = quad(&e);
        if qe.is_positive() {
            let t = -dot(&grad(&v1), &e) / (int(2) * qe);
            if t.is_positive() && t < Rational::one() {
                consider(along(&v1, &e, &t));
            }
        }
    }
    // the two boundary rays
    for (v, r) in [(&v1, &r1), (&v2, &r2)] {
        let qr = quad(r);
        let g = dot(&grad(v), r);
        if qr.is_positive() && g.is_negative() {
            let t = -g / (int(2) * qr);
            consider(along(v, r, &t));
        }
    }
    // interior stationary point
    let det = int(4) * &p.c_xx * &p.c_yy - &p.c_xy * &p.c_xy;
    if p.c_xx.is_positive() && det.is_positive() {
        let x = (-(int(2) * &p.c_yy * &p.c_x) + &p.c_xy * &p.c_y) / &det;
        let y = (-(int(2) * &p.c_xx * &p.c_y) + &p.c_xy * &p.c_x) / &det;
        if x >= x0 && s.contains(&x, &y) {
            consider((x, y));
        }
    }
    ValueFloor::Bounded(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailReason {
    Negative {
        point: LatticePoint,
        value: i128,
    },
    NonIntegral {
        point: LatticePoint,
        value: Rational,
    },
    Collision {
        first: LatticePoint,
        second: LatticePoint,
        value: i128,
    },
    CoverageGap {
        missing: i64,
    },
    /// The polynomial is unbounded below on the cone beyond the window.
    UnboundedTail,
    /// The tail floor is too low to certify any value.
    InsufficientWindow {
        threshold: i64,
    },
    /// A value does not fit in 128 bits.
    Overflow {
        point: LatticePoint,
    },
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailReason::Negative { point, value } => write!(f, "negative value {value} at {point}"),
            FailReason::NonIntegral { point, value } => write!(f, "non-integral value {value} at {point}"),
            FailReason::Collision { first, second, value } => {
                write!(f, "collision: value {value} at {first} and {second}")
            }
            FailReason::CoverageGap { missing } => write!(f, "coverage gap at {missing}"),
            FailReason::UnboundedTail => f.write_str("unbounded below outside the window"),
            FailReason::InsufficientWindow { threshold } => {
                write!(f, "window too small: threshold {threshold}")
            }
            FailReason::Overflow { point } => write!(f, "value overflow at {point}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(FailReason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCertificate {
    pub x_max: i64,
    /// Every value `<= threshold` occurs in the window. `None` if the window
    /// failed before the tail was examined, or the tail is unbounded.
    pub threshold: Option<i64>,
    pub floor_bound: Option<ValueFloor>,
    pub points: usize,
    pub verdict: Verdict,
}

impl WindowCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Passed with a threshold of at least `target`.
    pub fn certifies(&self, target: i64) -> bool {
        self.passed() && self.threshold.is_some_and(|t| t >= target)
    }
}

/// The polynomial times the lcm of its denominators, for fast integer
/// evaluation.
struct ScaledPoly {
    c: [i128; 6],
    den: i128,
}

impl ScaledPoly {
    fn new(p: &QuadPoly) -> Option<ScaledPoly> {
        let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut c = [0i128; 6];
        for (slot, coef) in c.iter_mut().zip(p.coeffs()) {
            let scaled = coef.numer() * (&den / coef.denom());
            *slot = scaled.to_i128()?;
        }
        Some(ScaledPoly { c, den: den.to_i128()? })
    }

    fn eval(&self, x: i64, y: i64) -> Option<i128> {
        let (x, y) = (x as i128, y as i128);
        let [a, b, c, d, e, f] = self.c;
        let xx = a.checked_mul(x)?.checked_mul(x)?;
        let xy = b.checked_mul(x)?.checked_mul(y)?;
        let yy = c.checked_mul(y)?.checked_mul(y)?;
        let lin = d.checked_mul(x)?.checked_add(e.checked_mul(y)?)?;
        xx.checked_add(xy)?.checked_add(yy)?.checked_add(lin)?.checked_add(f)
    }
}

enum PointValue {
    Int(i128),
    NonIntegral(Rational),
    Overflow,
}

fn point_value(p: &QuadPoly, scaled: Option<&ScaledPoly>, x: i64, y: i64) -> PointValue {
    if let Some(sp) = scaled {
        if let Some(num) = sp.eval(x, y) {
            return if num % sp.den == 0 {
                PointValue::Int(num / sp.den)
            } else {
                PointValue::NonIntegral(Rational::new(num.into(), sp.den.into()))
            };
        }
    }
    let v = p.eval(&int(x), &int(y));
    match rational::to_i128(&v) {
        Some(i) => PointValue::Int(i),
        None if !rational::is_integer(&v) => PointValue::NonIntegral(v),
        None => PointValue::Overflow,
    }
}

/// Infimum of `p` over the lattice points outside the window.
fn tail_floor(p: &QuadPoly, s: SectorSpec, x_max: i64) -> ValueFloor {
    let beyond = int(x_max + 1);
    let right = value_floor(p, s, &beyond);
    if s.is_quadrant() {
        // the box leaves out {x > x_max} and {y > x_max}; swap roles for the latter
        right.min(value_floor(&p.swap_xy(), s, &beyond))
    } else {
        right
    }
}

pub fn packing_window_verify(p: &QuadPoly, s: SectorSpec, x_max: i64) -> Result<WindowCertificate> {
    if x_max < 1 {
        return Err(Error::EmptyWindow(x_max));
    }
    let scaled = ScaledPoly::new(p);
    let mut values: Vec<(i128, (i64, i64))> = Vec::new();
    let fail = |reason, points| WindowCertificate {
        x_max,
        threshold: None,
        floor_bound: None,
        points,
        verdict: Verdict::Fail(reason),
    };

    for x in 0..=x_max {
        for y in 0..=column_height(s, x, x_max) {
            let pt = LatticePoint::new(x, y);
            match point_value(p, scaled.as_ref(), x, y) {
                PointValue::Int(v) if v < 0 => {
                    return Ok(fail(FailReason::Negative { point: pt, value: v }, values.len() + 1))
                }
                PointValue::Int(v) => values.push((v, (x, y))),
                PointValue::NonIntegral(value) => {
                    return Ok(fail(FailReason::NonIntegral { point: pt, value }, values.len() + 1))
                }
                PointValue::Overflow => return Ok(fail(FailReason::Overflow { point: pt }, values.len() + 1)),
            }
        }
    }
    let points = values.len();
    values.sort_by_key(|(v, _)| *v);
    if let Some(w) = values.windows(2).find(|w| w[0].0 == w[1].0) {
        let (a, b) = (w[0].1, w[1].1);
        return Ok(fail(
            FailReason::Collision {
                first: LatticePoint::new(a.0, a.1),
                second: LatticePoint::new(b.0, b.1),
                value: w[0].0,
            },
            points,
        ));
    }

    let floor = tail_floor(p, s, x_max);
    let Some(bound) = floor.bound() else {
        return Ok(WindowCertificate {
            floor_bound: Some(floor),
            ..fail(FailReason::UnboundedTail, points)
        });
    };
    let threshold = (rational::floor(bound) - BigInt::one())
        .to_i64()
        .unwrap_or(if bound.is_negative() { i64::MIN } else { i64::MAX });
    let done = |verdict| WindowCertificate {
        x_max,
        threshold: Some(threshold),
        floor_bound: Some(floor.clone()),
        points,
        verdict,
    };
    if threshold < 0 {
        return Ok(done(Verdict::Fail(FailReason::InsufficientWindow { threshold })));
    }
    let mut expected: i64 = 0;
    for (v, _) in &values {
        if *v > threshold as i128 {
            break;
        }
        if *v != expected as i128 {
            return Ok(done(Verdict::Fail(FailReason::CoverageGap { missing: expected })));
        }
        expected += 1;
    }
    if expected <= threshold {
        return Ok(done(Verdict::Fail(FailReason::CoverageGap { missing: expected })));
    }
    Ok(done(Verdict::Pass))
}

/// Window growth policy for [`certify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub target_threshold: i64,
    pub start_x_max: i64,
    pub max_x_max: i64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            target_threshold: 1000,
            start_x_max: 2,
            max_x_max: 4096,
        }
    }
}

impl CertifyOptions {
    pub fn with_target(target_threshold: i64) -> Self {
        CertifyOptions {
            target_threshold,
            ..Self::default()
        }
    }
}

/// Double the window until it certifies `target_threshold`, fails for a
/// reason no larger window can undo, or reaches `max_x_max`.
pub fn certify(p: &QuadPoly, s: SectorSpec, opts: CertifyOptions) -> WindowCertificate {
    let mut x_max = opts.start_x_max.max(1);
    loop {
        let cert = packing_window_verify(p, s, x_max).expect("x_max >= 1");
        let grow = match &cert.verdict {
            Verdict::Pass => !cert.certifies(opts.target_threshold),
            Verdict::Fail(FailReason::InsufficientWindow { .. }) => true,
            Verdict::Fail(_) => false,
        };
        if !grow || x_max >= opts.max_x_max {
            return cert;
        }
        x_max = (x_max * 2).min(opts.max_x_max);
    }
}

/// Whether the skewed polynomial takes exactly the values `0..k` on the
/// first steps of staircases `0..k`.
pub fn first_steps_check(s: SectorSpec, k: i64, f: i64) -> Result<bool> {
    if k <= 0 {
        return Err(Error::Inadmissible {
            n: s.n(),
            m: s.m(),
            k,
            reason: "first-step check needs k > 0".into(),
        });
    }
    let phat = expand_transformed_form(s, k, f)?;
    let q = s.n_over_l();
    let mut values: Vec<Rational> = (0..k).map(|i| phat.eval(&frac(i, q), &int(yif(s, i as u64)))).collect();
    values.sort();
    Ok(values.into_iter().eq((0..k).map(int)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::qpp_for;
    use crate::geometry::make_sector;
    use crate::parse::parse_poly;

    fn sec(n: i64, m: i64) -> SectorSpec {
        make_sector(n, m).unwrap()
    }

    fn example1() -> QuadPoly {
        parse_poly("2*x^2 - 2*x*y + 1/2*y^2 + 1/2*y").unwrap()
    }

    #[test]
    fn floor_examples() {
        let p = parse_poly("x*(x+1)/2 + y").unwrap();
        assert_eq!(value_floor(&p, sec(1, 1), &int(3)), ValueFloor::Bounded(int(6)));
        let p = parse_poly("-x^2").unwrap();
        assert_eq!(value_floor(&p, sec(4, 3), &int(0)), ValueFloor::UnboundedBelow);
        assert_eq!(
            value_floor(&p, SectorSpec::QUADRANT, &int(0)),
            ValueFloor::UnboundedBelow
        );
        assert_eq!(
            value_floor(&example1(), sec(4, 3), &int(0)),
            ValueFloor::Bounded(int(0))
        );
    }

    #[test]
    fn floor_catches_interior_null_direction() {
        // Q = (x - y)^2 vanishes along (1,1), inside S(2); the linear part decreases along it.
        let p = parse_poly("(x - y)^2 - x").unwrap();
        assert_eq!(value_floor(&p, sec(2, 1), &int(0)), ValueFloor::UnboundedBelow);
        let p = parse_poly("(x - y)^2 + x").unwrap();
        assert_eq!(value_floor(&p, sec(2, 1), &int(1)), ValueFloor::Bounded(int(1)));
    }

    #[test]
    fn floor_interior_minimum() {
        // (x-1)^2 + (y-1/2)^2 + 1, minimum at (1, 1/2), inside S(1) beyond x = 1/2
        let p = parse_poly("x^2 + y^2 - 2*x - y + 9/4").unwrap();
        assert_eq!(value_floor(&p, sec(1, 1), &frac(1, 2)), ValueFloor::Bounded(int(1)));
    }

    #[test]
    fn verify_examples() {
        let s = sec(4, 3);
        let qpp = qpp_for(s, 1).unwrap();
        let cert = packing_window_verify(&qpp.poly, s, 70).unwrap();
        assert!(cert.passed(), "{cert:?}");
        assert!(cert.threshold.unwrap() >= 1000);

        let mut shifted = example1();
        shifted.c_0 = int(1);
        let cert = packing_window_verify(&shifted, s, 30).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail(FailReason::CoverageGap { missing: 0 }));

        let cantor = parse_poly("1/2*(x + y)*(x + y + 1) + x").unwrap();
        assert!(packing_window_verify(&cantor, SectorSpec::QUADRANT, 20)
            .unwrap()
            .passed());
        assert_eq!(
            packing_window_verify(&cantor, SectorSpec::QUADRANT, 0),
            Err(Error::EmptyWindow(0))
        );
    }

    #[test]
    fn verify_failure_reasons() {
        let s = sec(4, 3);
        let cert = packing_window_verify(&parse_poly("x - 1").unwrap(), s, 3).unwrap();
        assert!(matches!(
            cert.verdict,
            Verdict::Fail(FailReason::Negative { value: -1, .. })
        ));
        let cert = packing_window_verify(&parse_poly("x/2").unwrap(), s, 3).unwrap();
        assert!(matches!(cert.verdict, Verdict::Fail(FailReason::NonIntegral { .. })));
        let cert = packing_window_verify(&parse_poly("x").unwrap(), s, 3).unwrap();
        assert_eq!(
            cert.verdict,
            Verdict::Fail(FailReason::Collision {
                first: LatticePoint::new(1, 0),
                second: LatticePoint::new(1, 1),
                value: 1
            })
        );
        let cert = packing_window_verify(&parse_poly("-x^2 + 1000*x + y").unwrap(), sec(1, 1), 1).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail(FailReason::UnboundedTail));
    }

    #[test]
    fn certify_grows_window() {
        let s = sec(4, 3);
        let cert = certify(&example1(), s, CertifyOptions::with_target(1000));
        assert!(cert.certifies(1000), "{cert:?}");
        assert!(cert.x_max > 2);
    }

    #[test]
    fn first_steps_examples() {
        assert!(first_steps_check(sec(12, 7), 3, 2).unwrap());
        let phat = expand_transformed_form(sec(12, 7), 3, 2).unwrap();
        assert_eq!(phat.eval(&int(0), &int(0)), int(2));
        for (n, m) in [(4, 3), (12, 7), (8, 5), (5, 1), (1, 0)] {
            assert!(first_steps_check(sec(n, m), 1, 0).unwrap());
        }
        assert!(!first_steps_check(sec(4, 1), 2, 0).unwrap());
        assert!(first_steps_check(sec(4, 1), 2, 1).unwrap());
        assert!(first_steps_check(sec(4, 1), -2, 1).is_err());
    }
}
