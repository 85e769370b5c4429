use angle_rank::relations::find_relation_lattice;
use angle_rank::spectrum::compute_spectrum;
use angle_rank::tate::{exotic_report, joint_lattice, CorollaryContext, VarietySpec};
use angle_rank::weil::{NewtonClass, WeilPolynomial};
use angle_rank::Config;

fn main() -> angle_rank::Result<()> {
    let config = Config::default();
    let f = WeilPolynomial::from_i64s(&[8, 8, 2, 0, 1, 2, 1], 2)?;
    let s = compute_spectrum(&f, config.precision_bits, &config)?;
    let lat = find_relation_lattice(&s, &config);
    let ctx = CorollaryContext { g: 3, angle_rank: lat.angle_rank, simple: true };

    let ss = compute_spectrum(&WeilPolynomial::from_i64s(&[2, 0, 1], 2)?, 128, &config)?;
    let ord = compute_spectrum(&WeilPolynomial::from_i64s(&[2, -1, 1], 2)?, 128, &config)?;
    let varieties = [
        (VarietySpec::self_product(&s), lat.clone()),
        (VarietySpec::product_with_e(&s, &ss, 0, NewtonClass::Supersingular), joint_lattice(&s, &ss, &config)),
        (VarietySpec::product_with_e(&s, &ord, 1, NewtonClass::Ordinary), joint_lattice(&s, &ord, &config)),
    ];
    for (x, l) in &varieties {
        let rep = exotic_report(x, l, Some(&ctx))?;
        println!("{} (dimension {}, certified {})", rep.table, rep.dim, rep.certified);
        println!("  degree      tate  lefschetz  exotic");
        for r in &rep.rows {
            println!("  {:>6}  {:>8}  {:>9}  {:>6}", r.degree, r.tate, r.lefschetz, r.exotic);
        }
        for c in &rep.corollary_checks {
            println!("  {} {} {}", c.id, if c.pass { "pass" } else { "FAIL" }, c.detail);
        }
    }
    Ok(())
}
