//! JSON shapes. Rationals are `{"num": "<int>", "den": "<int>"}` so no
//! precision is lost; CSV uses `p/q` strings instead.

use serde::Serialize;

use qpp_core::{AlphaFormCoeffs, QuadPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for JsonRational {
    fn from(r: &Rational) -> Self {
        JsonRational {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

pub fn coefficients(p: &QuadPoly) -> Vec<JsonRational> {
    p.coeffs().iter().map(|c| JsonRational::from(*c)).collect()
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct JsonAlpha {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

impl From<&AlphaFormCoeffs> for JsonAlpha {
    fn from(a: &AlphaFormCoeffs) -> Self {
        JsonAlpha {
            a: a.a,
            b: a.b,
            c: a.c,
            d: a.d,
            e: a.e,
            f: a.f,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonSector {
    pub n: i64,
    pub m: i64,
}
