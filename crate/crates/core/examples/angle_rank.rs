use angle_rank::relations::find_relation_lattice;
use angle_rank::spectrum::compute_spectrum;
use angle_rank::weil::WeilPolynomial;
use angle_rank::Config;

fn main() -> angle_rank::Result<()> {
    let config = Config::default();
    let cases: &[(&str, u64, &[i64])] = &[
        ("supersingular curve", 2, &[2, 0, 1]),
        ("ordinary curve", 2, &[2, -1, 1]),
        ("product of two curves", 2, &[4, -2, 4, -1, 1]),
        ("almost ordinary threefold", 2, &[8, 8, 2, 0, 1, 2, 1]),
        ("sextic product", 2, &[8, 0, 10, 0, 5, 0, 1]),
    ];
    for (name, q, c) in cases {
        let f = WeilPolynomial::from_i64s(c, *q)?;
        let s = compute_spectrum(&f, config.precision_bits, &config)?;
        let lat = find_relation_lattice(&s, &config);
        println!("{name}: {f}");
        println!("  angle rank {} [{:?}] at {} bits", lat.angle_rank, lat.status, lat.params.precision_bits);
        for (e, e0) in &lat.relations {
            println!("  relation {e:?} . t + {e0} = 0");
        }
        for v in &lat.basis_saturated {
            println!("  saturated {:?} . t = {} mod 1 [{:?}]", v.e, v.value, v.certificate.status);
        }
    }
    Ok(())
}
