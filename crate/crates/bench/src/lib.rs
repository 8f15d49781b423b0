//! Shared fixtures for the criterion benches.

use qpp_core::rational::gcd;
use qpp_core::{make_sector, SectorSpec};

/// Coprime `(n, m)` with `1 <= n <= n_max`, `1 <= m <= m_max`, plus the quadrant.
pub fn sector_grid(n_max: i64, m_max: i64) -> Vec<SectorSpec> {
    let mut out = vec![SectorSpec::QUADRANT];
    for n in 1..=n_max {
        for m in 1..=m_max {
            if gcd(n, m) == 1 {
                out.push(make_sector(n, m).expect("valid sector"));
            }
        }
    }
    out
}
