use std::time::Instant;

use angle_rank::poly::IntPoly;
use angle_rank::relations::find_relation_lattice;
use angle_rank::spectrum::compute_spectrum;
use angle_rank::tate::{exotic_report, CorollaryContext, VarietySpec};
use angle_rank::weil::weil_from_trace;
use angle_rank::Config;
use rug::Integer;

fn main() -> angle_rank::Result<()> {
    let config = Config::default();
    // h(y) = prod (y - k) + 1 has seven real roots near the k
    let mut h = IntPoly::from_i64s(&[1]);
    for k in [-18, -12, -6, 0, 6, 12, 18] {
        h = h.mul(&IntPoly::from_i64s(&[-k, 1]));
    }
    h = h.add(&IntPoly::one());
    let f = weil_from_trace(&h, &Integer::from(101), 7);
    println!("{f}");

    let start = Instant::now();
    let s = compute_spectrum(&f, config.precision_bits, &config)?;
    let lat = find_relation_lattice(&s, &config);
    println!("angle rank {} [{:?}] in {:?}", lat.angle_rank, lat.status, start.elapsed());

    let x = VarietySpec::self_product(&s);
    let ctx = CorollaryContext { g: 7, angle_rank: lat.angle_rank, simple: true };
    let rep = exotic_report(&x, &lat, Some(&ctx))?;
    let mid = rep.row(rep.middle_degree).unwrap();
    println!(
        "AxA: {} profiles, middle tate {} lefschetz {} exotic {}, total {:?}",
        x.profile_count(),
        mid.tate,
        mid.lefschetz,
        mid.exotic,
        start.elapsed()
    );
    Ok(())
}
