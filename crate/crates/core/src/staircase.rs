//! Staircase decomposition of sector lattices.
//!
//! The lattice `I(n/m)` splits into staircases `J_i`, the lattice points on
//! the line `(m-1) y = n x - l i`. Consecutive steps differ by
//! `((m-1)/l, n/l)`. After the skew every staircase becomes the vertical
//! column `x = i/(n/l)`, with steps `n/l` apart starting at height `yif(i)`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{LatticePoint, SectorSpec};
use crate::rational::{self, frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Staircase {
    pub index: u64,
    pub sector: SectorSpec,
    pub transformed: bool,
}

impl Staircase {
    pub fn points(&self) -> Vec<LatticePoint> {
        staircase_points(self.sector, self.index, self.transformed)
    }
}

/// Largest `y` with `(x, y)` in the window; for the quadrant the window is
/// the box `[0, x_max]^2`.
pub(crate) fn column_height(s: SectorSpec, x: i64, x_max: i64) -> i64 {
    if s.is_quadrant() {
        x_max
    } else {
        (s.n() * x).div_euclid(s.m())
    }
}

/// Integer points of the sector with `0 <= x <= x_max`, in lexicographic
/// order. For the quadrant, `y` is also capped at `x_max`.
pub fn lattice_window(s: SectorSpec, x_max: i64) -> Result<Vec<LatticePoint>> {
    if x_max < 0 {
        return Err(Error::NegativeWindow(x_max));
    }
    let mut out = Vec::new();
    for x in 0..=x_max {
        for y in 0..=column_height(s, x, x_max) {
            out.push(LatticePoint::new(x, y));
        }
    }
    Ok(out)
}

/// The index `i` of the staircase through the (untransformed) point `p`.
pub fn staircase_index(s: SectorSpec, p: &LatticePoint) -> Result<u64> {
    let outside = || Error::PointOutsideSector {
        x: p.x.clone(),
        y: p.y,
        n: s.n(),
        m: s.m(),
    };
    let x = rational::to_i64(&p.x).ok_or_else(outside)?;
    if !s.contains(&p.x, &p.y_rational()) {
        return Err(outside());
    }
    let numer = s.n() * x - (s.m() - 1) * p.y;
    let l = s.l();
    assert!(numer % l == 0, "l divides n and m-1, so it divides n x - (m-1) y");
    let i = numer / l;
    // n x - (m-1) y >= 0 on the sector, since the staircase slope is steeper
    // than the upper ray.
    assert!(i >= 0);
    Ok(i as u64)
}

/// Height of the first step on staircase `i`: the unique `y` in
/// `[0, n/l)` with `((m-1)/l) y ≡ -i (mod n/l)`.
pub fn yif(s: SectorSpec, i: u64) -> i64 {
    let q = s.n_over_l();
    if q == 1 {
        return 0;
    }
    let r = (s.m() - 1) / s.l();
    let inv = rational::mod_inverse(r, q).expect("(m-1)/l is a unit modulo n/l");
    let neg_i = rational::modulo(-((i % q as u64) as i64), q);
    rational::modulo(inv * neg_i, q)
}

/// Steps of staircase `i` in ascending `y`. Transformed steps are
/// `(i/(n/l), y)`; untransformed steps are their preimages under the skew.
pub fn staircase_points(s: SectorSpec, i: u64, transformed: bool) -> Vec<LatticePoint> {
    let q = s.n_over_l();
    let l = s.l();
    let i = i as i64;
    let top = l * i; // the column meets y = n x at height n * i/(n/l)
    let xhat = frac(i, q);
    let mut out = Vec::new();
    let mut y = yif(s, i as u64);
    while y <= top {
        if transformed {
            out.push(LatticePoint::with_x(xhat.clone(), y));
        } else {
            let x = (l * i + (s.m() - 1) * y) / s.n();
            debug_assert_eq!((l * i + (s.m() - 1) * y) % s.n(), 0);
            out.push(LatticePoint::new(x, y));
        }
        y += q;
    }
    out
}

/// Number of steps on staircase `i`, by direct count.
pub fn staircase_size(s: SectorSpec, i: u64) -> u64 {
    let q = s.n_over_l();
    let y0 = yif(s, i);
    let top = s.l() * i as i64;
    if y0 > top {
        0
    } else {
        ((top - y0) / q + 1) as u64
    }
}

/// `(l^2/n) i + [n/l | i]`. Only a valid count when `n | l^2`.
pub fn staircase_size_formula(s: SectorSpec, i: u64) -> Rational {
    let l = s.l();
    let indicator = if i.is_multiple_of(s.n_over_l() as u64) {
        Rational::one()
    } else {
        Rational::zero()
    };
    frac(l * l, s.n()) * int(i as i64) + indicator
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_sector;

    fn sec(n: i64, m: i64) -> SectorSpec {
        make_sector(n, m).unwrap()
    }

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
    }

    #[test]
    fn window_examples() {
        assert_eq!(lattice_window(sec(4, 3), 1).unwrap(), pts(&[(0, 0), (1, 0), (1, 1)]));
        assert_eq!(lattice_window(sec(7, 2), 0).unwrap(), pts(&[(0, 0)]));
        let q = lattice_window(SectorSpec::QUADRANT, 2).unwrap();
        assert_eq!(q.len(), 9);
        assert!(matches!(lattice_window(sec(4, 3), -1), Err(Error::NegativeWindow(-1))));
    }

    #[test]
    fn index_examples() {
        assert_eq!(staircase_index(sec(9, 4), &LatticePoint::new(1, 0)).unwrap(), 3);
        assert_eq!(staircase_index(sec(5, 3), &LatticePoint::new(0, 0)).unwrap(), 0);
        assert_eq!(
            staircase_index(SectorSpec::QUADRANT, &LatticePoint::new(2, 1)).unwrap(),
            3
        );
        assert!(staircase_index(sec(4, 3), &LatticePoint::new(1, 2)).is_err());
        assert!(staircase_index(sec(4, 3), &LatticePoint::with_x(frac(1, 2), 0)).is_err());
    }

    #[test]
    fn yif_examples() {
        assert_eq!(yif(sec(9, 4), 0), 0);
        assert_eq!(yif(sec(12, 7), 1), 1);
        assert_eq!(yif(sec(9, 4), 1), 2);
        assert_eq!(yif(sec(6, 1), 5), 0);
    }

    #[test]
    fn points_examples() {
        let p = staircase_points(sec(9, 4), 3, true);
        let ys: Vec<i64> = p.iter().map(|p| p.y).collect();
        assert_eq!(ys, vec![0, 3, 6, 9]);
        assert!(p.iter().all(|p| p.x == int(1)));

        let p = staircase_points(sec(12, 7), 1, true);
        assert_eq!(
            p,
            vec![
                LatticePoint::with_x(frac(1, 2), 1),
                LatticePoint::with_x(frac(1, 2), 3),
                LatticePoint::with_x(frac(1, 2), 5),
            ]
        );
        assert_eq!(staircase_points(sec(12, 7), 0, false), pts(&[(0, 0)]));
        assert_eq!(staircase_points(sec(12, 7), 0, true), pts(&[(0, 0)]));
    }

    #[test]
    fn size_examples() {
        let s = sec(12, 7);
        assert_eq!(staircase_size(s, 2), 7);
        assert_eq!(staircase_size_formula(s, 2), int(7));
        assert_eq!(staircase_size(sec(5, 2), 0), 1);
        let s = sec(8, 3);
        assert_eq!(staircase_size(s, 3), 2);
        assert_eq!(staircase_size_formula(s, 3), frac(3, 2));
    }
}
