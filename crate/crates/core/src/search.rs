//! Exhaustive search over integer alpha-form coefficients.
//!
//! Restricted mode fixes the homogeneous part `(A, B, C)` to the sector's
//! necessary form and enumerates `D, E, F`; full mode enumerates all six.
//! Every candidate is certified independently with [`certify`]; the
//! classification is never consulted.

use rayon::prelude::*;

use crate::classify::homogeneous_form;
use crate::error::{Error, Result};
use crate::geometry::SectorSpec;
use crate::poly::{AlphaFormCoeffs, QuadPoly};
use crate::verify::{certify, CertifyOptions, WindowCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Restricted,
    Full,
}

/// Inclusive integer range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoeffRange {
    pub lo: i64,
    pub hi: i64,
}

impl CoeffRange {
    pub const fn new(lo: i64, hi: i64) -> Self {
        CoeffRange { lo, hi }
    }

    fn len(&self) -> u64 {
        (self.hi - self.lo + 1) as u64
    }

    fn check(&self, name: &'static str) -> Result<()> {
        if self.lo > self.hi {
            return Err(Error::BadBounds {
                name,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(())
    }
}

/// Ranges for `A, B, C, D, E, F`; restricted mode ignores the first three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub a: CoeffRange,
    pub b: CoeffRange,
    pub c: CoeffRange,
    pub d: CoeffRange,
    pub e: CoeffRange,
    pub f: CoeffRange,
}

impl SearchBounds {
    pub fn restricted(d: CoeffRange, e: CoeffRange, f: CoeffRange) -> Self {
        let unit = CoeffRange::new(1, 1);
        SearchBounds {
            a: unit,
            b: unit,
            c: unit,
            d,
            e,
            f,
        }
    }

    pub fn full(ranges: [CoeffRange; 6]) -> Self {
        let [a, b, c, d, e, f] = ranges;
        SearchBounds { a, b, c, d, e, f }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub certify: CertifyOptions,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            certify: CertifyOptions::with_target(200),
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub alpha_form: AlphaFormCoeffs,
    pub poly: QuadPoly,
    pub certificate: WindowCertificate,
}

/// Number of candidates the search will examine.
pub fn candidate_count(s: SectorSpec, bounds: &SearchBounds, mode: SearchMode) -> u64 {
    let def = bounds.d.len() * bounds.e.len() * bounds.f.len();
    match mode {
        SearchMode::Restricted if homogeneous_form(s).is_none() => 0,
        SearchMode::Restricted => def,
        SearchMode::Full => bounds.a.len() * bounds.b.len() * bounds.c.len() * def,
    }
}

pub fn brute_force_search(
    s: SectorSpec,
    bounds: &SearchBounds,
    mode: SearchMode,
    opts: &SearchOptions,
) -> Result<Vec<SearchHit>> {
    let ranges: [CoeffRange; 6] = match mode {
        SearchMode::Restricted => {
            bounds.d.check("D")?;
            bounds.e.check("E")?;
            bounds.f.check("F")?;
            let Some((a, b, c)) = homogeneous_form(s) else {
                return Ok(Vec::new());
            };
            [
                CoeffRange::new(a, a),
                CoeffRange::new(b, b),
                CoeffRange::new(c, c),
                bounds.d,
                bounds.e,
                bounds.f,
            ]
        }
        SearchMode::Full => {
            for (r, name) in [
                (bounds.a, "A"),
                (bounds.b, "B"),
                (bounds.c, "C"),
                (bounds.d, "D"),
                (bounds.e, "E"),
                (bounds.f, "F"),
            ] {
                r.check(name)?;
            }
            if bounds.a.lo < 1 {
                return Err(Error::BadBounds {
                    name: "A (must be >= 1)",
                    lo: bounds.a.lo,
                    hi: bounds.a.hi,
                });
            }
            [bounds.a, bounds.b, bounds.c, bounds.d, bounds.e, bounds.f]
        }
    };

    let total: u64 = ranges.iter().map(CoeffRange::len).product();
    let decode = |mut idx: u64| -> AlphaFormCoeffs {
        let mut v = [0i64; 6];
        for (slot, r) in v.iter_mut().zip(&ranges).rev() {
            *slot = r.lo + (idx % r.len()) as i64;
            idx /= r.len();
        }
        let [a, b, c, d, e, f] = v;
        AlphaFormCoeffs { a, b, c, d, e, f }
    };
    let check = |idx: u64| -> Option<SearchHit> {
        let alpha_form = decode(idx);
        let poly = alpha_form.to_poly();
        let certificate = certify(&poly, s, opts.certify);
        certificate
            .certifies(opts.certify.target_threshold)
            .then_some(SearchHit {
                alpha_form,
                poly,
                certificate,
            })
    };
    let run = || -> Vec<SearchHit> { (0..total).into_par_iter().filter_map(check).collect() };

    let mut hits = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    hits.sort_by_key(|h| h.alpha_form.as_tuple());
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::geometry::make_sector;

    fn small() -> SearchBounds {
        SearchBounds::restricted(
            CoeffRange::new(-10, 10),
            CoeffRange::new(-10, 10),
            CoeffRange::new(0, 10),
        )
    }

    fn polys(hits: &[SearchHit]) -> Vec<QuadPoly> {
        hits.iter().map(|h| h.poly.clone()).collect()
    }

    fn sorted_classified(s: SectorSpec) -> Vec<QuadPoly> {
        let mut c = classify(s);
        c.sort_by_key(|q| q.alpha_form.as_tuple());
        c.into_iter().map(|q| q.poly).collect()
    }

    #[test]
    fn restricted_examples() {
        let opts = SearchOptions::default();
        let s = make_sector(4, 3).unwrap();
        let hits = brute_force_search(s, &small(), SearchMode::Restricted, &opts).unwrap();
        assert_eq!(polys(&hits), sorted_classified(s));

        let s = make_sector(3, 2).unwrap();
        assert!(brute_force_search(s, &small(), SearchMode::Restricted, &opts)
            .unwrap()
            .is_empty());

        // the k = -3 polynomial has D = 16, so D needs a wider range here
        let s = make_sector(12, 7).unwrap();
        let wide = SearchBounds {
            d: CoeffRange::new(-10, 20),
            ..small()
        };
        let hits = brute_force_search(s, &wide, SearchMode::Restricted, &opts).unwrap();
        assert_eq!(hits.len(), 4);
        assert_eq!(polys(&hits), sorted_classified(s));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let s = make_sector(8, 5).unwrap();
        let one = SearchOptions {
            jobs: Some(1),
            ..Default::default()
        };
        let many = SearchOptions {
            jobs: Some(6),
            ..Default::default()
        };
        let a = brute_force_search(s, &small(), SearchMode::Restricted, &one).unwrap();
        let b = brute_force_search(s, &small(), SearchMode::Restricted, &many).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_inverted_bounds() {
        let s = make_sector(4, 3).unwrap();
        let bad = SearchBounds::restricted(CoeffRange::new(3, 1), CoeffRange::new(0, 0), CoeffRange::new(0, 0));
        assert_eq!(
            brute_force_search(s, &bad, SearchMode::Restricted, &SearchOptions::default()),
            Err(Error::BadBounds {
                name: "D",
                lo: 3,
                hi: 1
            })
        );
        let zero_a = SearchBounds::full([CoeffRange::new(0, 1); 6]);
        assert!(brute_force_search(s, &zero_a, SearchMode::Full, &SearchOptions::default()).is_err());
    }

    #[test]
    fn candidate_counts() {
        let s = make_sector(4, 3).unwrap();
        assert_eq!(candidate_count(s, &small(), SearchMode::Restricted), 21 * 21 * 11);
        assert_eq!(
            candidate_count(make_sector(3, 2).unwrap(), &small(), SearchMode::Restricted),
            0
        );
    }
}
