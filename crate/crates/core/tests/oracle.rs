mod common;

use angle_rank::relations::find_relation_lattice;
use angle_rank::report::canonical_elliptic;
use angle_rank::spectrum::compute_spectrum;
use angle_rank::tate::{joint_lattice, VarietySpec};
use angle_rank::weil::{enumerate_weil_polynomials, NewtonClass, WeilPolynomial};
use angle_rank::Config;
use rayon::prelude::*;
use common::{compare_with_oracle, Levels};

#[test]
fn lattice_membership_matches_direct_rationality_up_to_genus_three() {
    let config = Config::default();
    // the oracle may need more precision than the default cap
    let wide = Config { max_precision_bits: 1 << 16, ..Config::default() };
    let (ss, ord) = canonical_elliptic(2, 1);
    let curves: Vec<_> = [(ss, NewtonClass::Supersingular), (ord, NewtonClass::Ordinary)]
        .into_iter()
        .map(|(tr, class)| {
            let e = WeilPolynomial::from_i64s(&[2, -tr, 1], 2).unwrap();
            (tr, class, compute_spectrum(&e, 128, &config).unwrap(), compute_spectrum(&e, 128, &wide).unwrap())
        })
        .collect();
    let corpus: Vec<WeilPolynomial> = (1..=3).flat_map(|g| enumerate_weil_polynomials(g, 2)).collect();
    let profiles: usize = corpus
        .par_iter()
        .map(|f| {
            let mut profiles = 0;
            let s = compute_spectrum(f, 128, &config).unwrap();
            let sw = compute_spectrum(f, 128, &wide).unwrap();
            let lat = find_relation_lattice(&s, &config);
            let d = config.denom_bound_for(f.g() + 1);
            let own = Levels::new(&sw, None);
            for x in [VarietySpec::self_product(&s), VarietySpec::single(&s)] {
                let t = compare_with_oracle(&x, &lat, &own, d);
                assert_eq!((t.mismatches, t.undecided), (0, 0), "{f}");
                profiles += t.profiles;
            }
            for (tr, class, e, ew) in &curves {
                let x = VarietySpec::product_with_e(&s, e, *tr, *class);
                let t = compare_with_oracle(&x, &joint_lattice(&s, e, &config), &Levels::new(&sw, Some(ew)), d);
                assert_eq!((t.mismatches, t.undecided), (0, 0), "{f} x E({tr})");
                profiles += t.profiles;
            }
            profiles
        })
        .sum();
    assert!(profiles > 100_000);
}
