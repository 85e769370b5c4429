use std::time::Instant;

use angle_rank::relations::{check_lemma_form, find_relation_lattice, upgrade_absolute_simplicity, LemmaVerdict};
use angle_rank::spectrum::compute_spectrum;
use angle_rank::weil::{classify_newton, enumerate_weil_polynomials, newton_polygon, simplicity, NewtonClass};
use angle_rank::Config;

fn main() -> angle_rank::Result<()> {
    let config = Config::default();
    for q in [2u64, 3] {
        let mut passes = 0;
        for f in enumerate_weil_polynomials(3, q) {
            if classify_newton(&newton_polygon(&f), 3) != NewtonClass::AlmostOrdinary {
                continue;
            }
            let start = Instant::now();
            let s = compute_spectrum(&f, config.precision_bits, &config)?;
            let v = simplicity(&f, &s, config.m_max, &config)?;
            if !v.irreducible {
                continue;
            }
            let lat = find_relation_lattice(&s, &config);
            let v = upgrade_absolute_simplicity(&v, &lat);
            let lemma = check_lemma_form(&lat, &v);
            if let LemmaVerdict::Pass { n, signs } = &lemma.verdict {
                passes += 1;
                println!(
                    "q = {q} {:?}  simple {}  rank {}  N = {n}  signs {signs:?}  certified {}  {:?}",
                    f.coeffs_i64().unwrap(),
                    v.absolutely_simple.label(),
                    lat.angle_rank,
                    lemma.certified,
                    start.elapsed()
                );
            }
        }
        println!("q = {q}: {passes} passes\n");
    }
    Ok(())
}
