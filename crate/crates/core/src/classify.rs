//! The decision procedure for quadratic packing polynomials on `S(n/m)`.
//!
//! With `l = gcd(m-1, n)` a sector carries QPPs only if `n | l^2`. Then
//! `k in {±1, ±2, ±3}` is admissible when `k ≡ (m-1)/l (mod n/l)`, with the
//! extra requirement `l^2/n = 4` for `|k| = 2` and `l^2/n = 3` for `|k| = 3`.
//! Each admissible `k` yields exactly one polynomial.

use num::Integer;

use crate::error::{Error, Result};
use crate::geometry::{make_sector, SectorSpec};
use crate::poly::{expand_main_formula, to_alpha_form, AlphaFormCoeffs, QuadPoly};
use crate::rational::{self, frac, int, Rational};

/// Output order of classified polynomials.
pub const K_ORDER: [i64; 6] = [1, -1, 2, -2, 3, -3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorArithmetic {
    pub l: i64,
    pub n_over_l: i64,
    pub l2_over_n: Rational,
    /// `n | l^2`
    pub divides_n_l2: bool,
    /// `(m-1)/l mod n/l`, in `[0, n/l)`
    pub m1_over_l_mod: i64,
}

pub fn sector_arithmetic(s: SectorSpec) -> SectorArithmetic {
    let l = s.l();
    let q = s.n() / l;
    let m1 = s.m() - 1;
    let divides = (l * l) % s.n() == 0;
    debug_assert_eq!(divides, (m1 * m1) % s.n() == 0);
    SectorArithmetic {
        l,
        n_over_l: q,
        l2_over_n: frac(l * l, s.n()),
        divides_n_l2: divides,
        m1_over_l_mod: rational::modulo(m1 / l, q),
    }
}

/// Homogeneous part `(A, B, C) = (n, 1 - m, (m-1)^2/n)` of any QPP, if
/// `n | (m-1)^2`.
pub fn homogeneous_form(s: SectorSpec) -> Option<(i64, i64, i64)> {
    let m1 = s.m() - 1;
    let sq = m1 * m1;
    sq.is_multiple_of(&s.n()).then(|| (s.n(), 1 - s.m(), sq / s.n()))
}

/// Why `k` is or is not admissible on a sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// `n ∤ l^2`
    SpacingFails,
    /// `k ≢ (m-1)/l (mod n/l)`
    CongruenceFails {
        residue: i64,
        modulus: i64,
    },
    /// the congruence holds but `l^2/n` is not 4 (for |k| = 2) or 3 (for |k| = 3)
    RatioFails {
        required: i64,
        actual: Rational,
    },
    /// `k` outside `{±1, ±2, ±3}`
    OutOfRange,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }

    pub fn reason(&self, s: SectorSpec) -> String {
        match self {
            Admissibility::Admissible => "admissible".into(),
            Admissibility::SpacingFails => {
                format!("no QPPs on this sector: {} ∤ ({}-1)²", s.n(), s.m())
            }
            Admissibility::CongruenceFails { residue, modulus } => {
                format!("(m-1)/l ≡ {residue} (mod {modulus})")
            }
            Admissibility::RatioFails { required, actual } => {
                format!("l²/n = {actual}, needs {required}")
            }
            Admissibility::OutOfRange => "|k| must be 1, 2 or 3".into(),
        }
    }
}

pub fn admissibility(s: SectorSpec, k: i64) -> Admissibility {
    let a = sector_arithmetic(s);
    if !a.divides_n_l2 {
        return Admissibility::SpacingFails;
    }
    let required = match k.abs() {
        1 => None,
        2 => Some(4),
        3 => Some(3),
        _ => return Admissibility::OutOfRange,
    };
    if rational::modulo(k, a.n_over_l) != a.m1_over_l_mod {
        return Admissibility::CongruenceFails {
            residue: a.m1_over_l_mod,
            modulus: a.n_over_l,
        };
    }
    if let Some(r) = required {
        if a.l2_over_n != int(r) {
            return Admissibility::RatioFails {
                required: r,
                actual: a.l2_over_n,
            };
        }
    }
    Admissibility::Admissible
}

/// Admissible `k` values in the order `1, -1, 2, -2, 3, -3`.
pub fn admissible_ks(s: SectorSpec) -> Vec<i64> {
    K_ORDER
        .into_iter()
        .filter(|&k| admissibility(s, k).is_admissible())
        .collect()
}

/// `F = (l^2/n)(|k|-1)(|k|+1)/12`, checked against `|k| - 1`.
pub fn constant_term_f(s: SectorSpec, k: i64) -> Result<i64> {
    let a = sector_arithmetic(s);
    let kk = k.abs();
    let f = &a.l2_over_n * int((kk - 1) * (kk + 1)) / int(12);
    let value = rational::to_i64(&f).ok_or_else(|| Error::NonIntegral {
        name: "F",
        value: f.clone(),
    })?;
    if value != kk - 1 {
        return Err(Error::ConstantMismatch {
            k,
            formula: f,
            expected: kk - 1,
        });
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedQpp {
    pub sector: SectorSpec,
    pub k: i64,
    pub poly: QuadPoly,
    pub alpha_form: AlphaFormCoeffs,
    pub constant_f: i64,
}

/// Build the QPP for an admissible `k`.
pub fn qpp_for(s: SectorSpec, k: i64) -> Result<ClassifiedQpp> {
    let adm = admissibility(s, k);
    if !adm.is_admissible() {
        return Err(Error::Inadmissible {
            n: s.n(),
            m: s.m(),
            k,
            reason: adm.reason(s),
        });
    }
    let poly = expand_main_formula(s, k);
    let alpha_form = to_alpha_form(&poly)?;
    let constant_f = constant_term_f(s, k)?;
    debug_assert_eq!(int(constant_f), poly.c_0);
    Ok(ClassifiedQpp {
        sector: s,
        k,
        poly,
        alpha_form,
        constant_f,
    })
}

/// All QPPs on the sector, ordered by `k = 1, -1, 2, -2, 3, -3`.
pub fn classify(s: SectorSpec) -> Vec<ClassifiedQpp> {
    admissible_ks(s)
        .into_iter()
        .map(|k| qpp_for(s, k).expect("admissible k yields an integral QPP"))
        .collect()
}

/// Canonical representative under the shears `(x, y) -> (x + t y, y)`:
/// `m` reduced modulo `n` (the quadrant for `n = 1`).
pub fn equivalence_class(s: SectorSpec) -> SectorSpec {
    make_sector(s.n(), rational::modulo(s.m(), s.n())).expect("valid reduced sector")
}

/// The sector whose skewed lattice is the flip of `s`'s skewed lattice:
/// `m' ≡ 2 - m (mod n)`. `None` when `gcd(2 - m, n) > 1`, where no sector
/// has that lattice; this never happens for a sector with QPPs, since a
/// prime dividing `n` and `m - 2` cannot divide `(m - 1)^2`.
pub fn flipped_sector(s: SectorSpec) -> Option<SectorSpec> {
    if s.n() == 1 {
        return Some(SectorSpec::QUADRANT);
    }
    let m = rational::modulo(2 - s.m(), s.n());
    (rational::gcd(m, s.n()) == 1).then(|| make_sector(s.n(), m).expect("valid sector"))
}

/// `true` when the sector's arithmetic permits a QPP for some `k`.
pub fn has_qpps(s: SectorSpec) -> bool {
    !admissible_ks(s).is_empty()
}
