use angle_rank::weil::{classify_newton, enumerate_weil_polynomials, newton_polygon, NewtonClass};
use std::collections::BTreeMap;

fn main() {
    for (g, q) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let mut counts: BTreeMap<NewtonClass, usize> = BTreeMap::new();
        let all = enumerate_weil_polynomials(g, q);
        for f in &all {
            *counts.entry(classify_newton(&newton_polygon(f), g)).or_default() += 1;
        }
        println!("g = {g}, q = {q}: {} isogeny classes", all.len());
        for (class, n) in counts {
            println!("  {:<16} {n}", class.as_str());
        }
    }

    let f = angle_rank::weil::WeilPolynomial::from_i64s(&[8, 8, 2, 0, 1, 2, 1], 2).unwrap();
    let np = newton_polygon(&f);
    println!("\n{f}");
    for (slope, len) in &np.slopes {
        println!("  slope {slope} length {len}");
    }
}
