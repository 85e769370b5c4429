use angle_rank::report::{run_corpus_text, ReportOptions, STARTER_CORPUS};
use angle_rank::Config;

fn main() {
    let out = run_corpus_text(STARTER_CORPUS, &Config::default(), ReportOptions::default());
    println!("{}", serde_json::to_string_pretty(&out.summary).unwrap());
    for r in &out.reports {
        let a = r.angle_rank.as_ref().map(|a| a.value);
        let applies: Vec<&str> = r.applicability.iter().filter(|a| a.applies).map(|a| a.theorem.as_str()).collect();
        println!("{:<8} {:<14} rank {:?}  {:?}", r.label, r.newton_class.as_deref().unwrap_or("-"), a, applies);
    }

    let one = out.reports[0].to_json();
    println!("\n{}", &one[..one.len().min(300)]);
}
