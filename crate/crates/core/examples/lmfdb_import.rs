use angle_rank::report::{analyze, import_text};
use angle_rank::Config;

const CSV: &str = "label,q,coeffs
1.2.ab,2,[2,-1,1]
2.2.a_ae,2,\"[4,0,-4,0,1]\"
1.2.ab,2,[2,-1,1]
broken,2,[1,2
";

const JSON: &str = r#"[
  {"label": "1.3.ab", "q": 3, "poly": [1, -1, 3]},
  {"label": "3.2.c_c_a", "q": 2, "coeffs": [8, 8, 2, 0, 1, 2, 1]}
]"#;

fn main() {
    for text in [CSV, JSON] {
        let out = import_text(text);
        print!("{}", out.to_jsonl());
        for w in &out.warnings {
            println!("warning: {w}");
        }
        for e in &out.rejected {
            println!("rejected: {e}");
        }
        for r in &out.records {
            let rep = analyze(r, &Config::default());
            println!("  {} -> angle rank {:?}", r.label, rep.angle_rank.map(|a| a.value));
        }
    }
}
