use angle_rank::spectrum::compute_spectrum;
use angle_rank::weil::WeilPolynomial;
use angle_rank::Config;

fn main() -> angle_rank::Result<()> {
    let config = Config::default();
    let f = WeilPolynomial::from_i64s(&[8, 8, 2, 0, 1, 2, 1], 2)?;
    let s = compute_spectrum(&f, 128, &config)?;
    println!("{f}");
    println!("trace polynomial {}", f.trace_polynomial());
    for k in 0..s.trace_root_count() {
        println!("  trace root {}", s.trace_root_interval(k));
    }
    let a = s.angles();
    for (i, t) in a.t.iter().enumerate() {
        println!("  t_{} in {t}  (root id {}, multiplicity {})", i + 1, s.root_id(i), s.multiplicity(i));
    }

    let fine = s.refine(1024)?;
    println!("refined to {} bits, widest angle 2^{:?}", fine.precision_bits(), fine.angles().max_width_log2());

    // repeated roots keep their multiplicity
    let sq = WeilPolynomial::from_i64s(&[4, -4, 5, -2, 1], 2)?;
    let s = compute_spectrum(&sq, 128, &config)?;
    println!("{sq}: {} distinct trace roots, multiplicities {:?}", s.distinct_root_count(), (0..sq.g()).map(|i| s.multiplicity(i)).collect::<Vec<_>>());
    Ok(())
}
