//! Sectors of the plane and the integer-preserving linear maps that move
//! them around.
//!
//! A rational sector is `{(x, y) : 0 <= y <= (n/m) x}` with `gcd(n, m) = 1`.
//! The first quadrant is encoded as `n = 1, m = 0`; every formula that uses
//! `m - 1` then sees `-1`, which is what keeps the quadrant on the same code
//! path as every other sector.

use std::fmt;

use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorSpec {
    n: i64,
    m: i64,
}

/// Build a normalized sector for the slope `n/m`, reducing the fraction.
pub fn make_sector(n: i64, m: i64) -> Result<SectorSpec> {
    if n <= 0 {
        return Err(Error::NonPositiveNumerator(n));
    }
    if m < 0 {
        return Err(Error::NegativeDenominator(m));
    }
    let g = rational::gcd(n, m);
    Ok(SectorSpec { n: n / g, m: m / g })
}

impl SectorSpec {
    /// The first quadrant, `S(inf)`.
    pub const QUADRANT: SectorSpec = SectorSpec { n: 1, m: 0 };

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn is_quadrant(&self) -> bool {
        self.m == 0
    }

    /// `n/m`, or `None` for the quadrant.
    pub fn slope(&self) -> Option<Rational> {
        (self.m != 0).then(|| frac(self.n, self.m))
    }

    /// Staircase spacing `l = gcd(m - 1, n)`.
    pub fn l(&self) -> i64 {
        rational::gcd(self.m - 1, self.n)
    }

    pub fn n_over_l(&self) -> i64 {
        self.n / self.l()
    }

    /// Whether the real point `(x, y)` lies in the closed sector.
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        if y.is_negative() || x.is_negative() {
            return false;
        }
        self.m == 0 || y * int(self.m) <= x * int(self.n)
    }

    /// Direction vector of the upper boundary ray: `(m, n)`, or `(0, 1)`
    /// for the quadrant.
    pub fn upper_ray(&self) -> (i64, i64) {
        if self.m == 0 {
            (0, 1)
        } else {
            (self.m, self.n)
        }
    }
}

impl fmt::Display for SectorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 0 {
            write!(f, "{}/0 (quadrant)", self.n)
        } else {
            write!(f, "{}/{}", self.n, self.m)
        }
    }
}

/// A point of a (possibly transformed) sector lattice. In the untransformed
/// lattice `x` is an integer; after skewing it is a multiple of `l/n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: Rational,
    pub y: i64,
}

impl LatticePoint {
    pub fn new(x: i64, y: i64) -> Self {
        LatticePoint { x: int(x), y }
    }

    pub fn with_x(x: Rational, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn y_rational(&self) -> Rational {
        int(self.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A 2x2 matrix `[[a, b], [c, d]]` with determinant +-1, acting on column
/// vectors. Entries may be rational (the skew map is not integral).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl UnimodularMap {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if det.abs() != Rational::one() {
            return Err(Error::NotUnimodular(det));
        }
        Ok(UnimodularMap { a, b, c, d })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    pub fn identity() -> Self {
        UnimodularMap {
            a: int(1),
            b: int(0),
            c: int(0),
            d: int(1),
        }
    }

    /// `(x, y) -> (x + t y, y)`.
    pub fn shear(t: Rational) -> Self {
        UnimodularMap {
            a: int(1),
            b: t,
            c: int(0),
            d: int(1),
        }
    }

    /// `(x, y) -> (x, -y)`.
    pub fn reflection() -> Self {
        UnimodularMap {
            a: int(1),
            b: int(0),
            c: int(0),
            d: int(-1),
        }
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn determinant(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_integral(&self) -> bool {
        self.entries().iter().all(|e| rational::is_integer(e))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let det = self.determinant();
        UnimodularMap {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        }
    }

    pub fn apply(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }

    /// Image of a lattice point; `None` if the image's `y` is not an integer.
    pub fn apply_point(&self, p: &LatticePoint) -> Option<LatticePoint> {
        let (x, y) = self.apply(&p.x, &p.y_rational());
        rational::to_i64(&y).map(|y| LatticePoint { x, y })
    }
}

impl fmt::Display for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// The skew `M = [[1, -(m-1)/n], [0, 1]]`, sending `S(n/m)` onto `S(n)` and
/// making every staircase vertical.
pub fn skew_map(s: SectorSpec) -> UnimodularMap {
    UnimodularMap::shear(-frac(s.m - 1, s.n))
}

/// The involution `L: (x, y) -> (x, n x - y)` of `S(n)`.
pub fn flip_map(n: i64) -> UnimodularMap {
    UnimodularMap {
        a: int(1),
        b: int(0),
        c: int(n),
        d: int(-1),
    }
}

/// Result of normalizing a sector `S(ω1, ω2)` with an integral first ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralReduction {
    /// The individual maps in application order: the Euclid map first, then
    /// an optional reflection, then an optional shear.
    pub steps: Vec<UnimodularMap>,
    /// Composite of `steps`.
    pub map: UnimodularMap,
    /// Image of `ω2` under `map`, lying in the closed first quadrant.
    pub image: (Rational, Rational),
    pub sector: SectorSpec,
}

/// Move `S(ω1, ω2)` to a sector `S(n/m)` by a determinant +-1 integral map.
///
/// `ω1 = (r, s)` must be primitive with `r >= 1`. With `a r + b s = 1`, the
/// map `[[a, b], [-s, r]]` sends `ω1` to `(1, 0)`; a reflection fixes the
/// orientation and an integral shear pushes the image of `ω2` into the first
/// quadrant.
pub fn reduce_general_sector(omega1: (i64, i64), omega2: (Rational, Rational)) -> Result<GeneralReduction> {
    let (r, s) = omega1;
    if r < 1 || rational::gcd(r, s) != 1 {
        return Err(Error::BadPrimitiveRay(r, s));
    }
    let (u2, v2) = &omega2;
    if (int(r) * v2 - int(s) * u2).is_zero() {
        return Err(Error::ParallelRays {
            omega1: (r, s),
            omega2: Box::new((u2.clone(), v2.clone())),
        });
    }

    let e = r.extended_gcd(&s);
    // gcd is 1 by the check above; the sign normalization keeps a r + b s = +1.
    let (a, b) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
    let euclid = UnimodularMap::from_ints(a, b, -s, r)?;
    let mut steps = vec![euclid.clone()];
    let mut map = euclid;
    let (mut u, mut v) = map.apply(u2, v2);

    if v.is_negative() {
        let refl = UnimodularMap::reflection();
        (u, v) = refl.apply(&u, &v);
        map = refl.compose(&map);
        steps.push(refl);
    }
    if u.is_negative() {
        // smallest integral t with u + t v >= 0
        let t = -rational::floor(&(&u / &v));
        let shear = UnimodularMap::shear(Rational::from_integer(t));
        (u, v) = shear.apply(&u, &v);
        map = shear.compose(&map);
        steps.push(shear);
    }

    let sector = if u.is_zero() {
        SectorSpec::QUADRANT
    } else {
        let slope = &v / &u;
        let n = slope.numer().try_into().expect("slope numerator fits in i64");
        let m = slope.denom().try_into().expect("slope denominator fits in i64");
        make_sector(n, m)?
    };
    Ok(GeneralReduction {
        steps,
        map,
        image: (u, v),
        sector,
    })
}
