use proptest::prelude::*;

use qpp_core::poly::step_vector;
use qpp_core::rational::{gcd, int, modulo};
use qpp_core::staircase::staircase_size_formula;
use qpp_core::{
    lattice_window, make_sector, sector_arithmetic, skew_map, staircase_index, staircase_points, staircase_size, yif,
    LatticePoint, SectorSpec, Staircase,
};

fn sector() -> impl Strategy<Value = SectorSpec> {
    prop_oneof![
        1 => Just(SectorSpec::QUADRANT),
        9 => (1i64..25, 1i64..25).prop_filter_map("coprime", |(n, m)| (gcd(n, m) == 1).then(|| make_sector(n, m).unwrap())),
    ]
}

fn window_filter(s: SectorSpec, x_max: i64) -> impl Fn(&LatticePoint) -> bool {
    move |p| p.x <= int(x_max) && (!s.is_quadrant() || p.y <= x_max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn staircases_partition_the_window(s in sector(), x_max in 0i64..=30) {
        let window = lattice_window(s, x_max).unwrap();
        let top = window.iter().map(|p| staircase_index(s, p).unwrap()).max().unwrap();
        let mut union: Vec<LatticePoint> = (0..=top)
            .flat_map(|i| staircase_points(s, i, false))
            .filter(window_filter(s, x_max))
            .collect();
        union.sort_by(|a, b| (&a.x, a.y).cmp(&(&b.x, b.y)));
        let n = union.len();
        union.dedup();
        prop_assert_eq!(n, union.len(), "a point lies on two staircases");
        prop_assert_eq!(union, window);
    }

    #[test]
    fn steps_follow_the_step_vector(s in sector(), i in 0u64..60) {
        let (dx, dy) = step_vector(s);
        let steps = Staircase { index: i, sector: s, transformed: false }.points();
        prop_assert_eq!(steps.len() as u64, staircase_size(s, i));
        for w in steps.windows(2) {
            prop_assert_eq!(&w[1].x - &w[0].x, dx.clone());
            prop_assert_eq!(int(w[1].y - w[0].y), dy.clone());
        }
        for p in &steps {
            // (m-1) y = n x - l i
            prop_assert_eq!(int((s.m() - 1) * p.y), int(s.n()) * &p.x - int(s.l() * i as i64));
            prop_assert_eq!(staircase_index(s, p).unwrap(), i);
        }
    }

    #[test]
    fn skew_sends_staircases_to_columns(s in sector(), i in 0u64..60) {
        let m = skew_map(s);
        let images: Vec<LatticePoint> =
            staircase_points(s, i, false).iter().map(|p| m.apply_point(p).unwrap()).collect();
        prop_assert_eq!(images, staircase_points(s, i, true));
        let q = s.n_over_l();
        for p in staircase_points(s, i, true) {
            prop_assert_eq!(p.x.clone() * int(q), int(i as i64));
            prop_assert_eq!(modulo((s.m() - 1) / s.l() * p.y, q), modulo(-(i as i64), q));
        }
    }

    #[test]
    fn first_step_heights(s in sector(), i in 0u64..200) {
        let q = s.n_over_l();
        let y = yif(s, i);
        prop_assert!((0..q).contains(&y));
        prop_assert_eq!(yif(s, i + q as u64), y);
        let r = modulo((s.m() - 1) / s.l(), q) as u64;
        let k = r + q as u64 * (i / q as u64 + 1);
        prop_assert_eq!(yif(s, i % (k + 1)) + yif(s, k - i % (k + 1)), q - 1);
    }
}

#[test]
fn size_formula_when_n_divides_l_squared() {
    let mut checked = 0;
    for n in 1..=30 {
        for m in 0..=2 * n {
            if gcd(n, m) != 1 {
                continue;
            }
            let s = make_sector(n, m).unwrap();
            if !sector_arithmetic(s).divides_n_l2 {
                continue;
            }
            for i in 0..=100 {
                assert_eq!(
                    int(staircase_size(s, i) as i64),
                    staircase_size_formula(s, i),
                    "{s} i = {i}"
                );
            }
            checked += 1;
        }
    }
    assert!(checked > 30);
}

#[test]
fn size_formula_needs_its_hypothesis() {
    let s = make_sector(8, 3).unwrap();
    assert_eq!(staircase_size(s, 3), 2);
    assert_eq!(staircase_size_formula(s, 3), qpp_core::rational::frac(3, 2));
}
