use semigroup3::families::{validate_tables, ValidateOptions};

fn main() {
    for (k, probe) in [(2u32, 1..=10i64), (3, 1..=5), (4, 1..=3)] {
        let report = validate_tables(k, probe, ValidateOptions::default()).unwrap();
        println!("== k={k}: pass={}", report.pass());
        for c in report.cases.iter().filter(|c| !(c.matrix_ok && c.minimal_ok && c.formulas_ok && c.oracle_ok)) {
            println!("  case {} {}: {:?}", c.index, c.label, c.issues);
        }
        for e in report.exceptional.iter().filter(|e| !e.ok) {
            println!("  exceptional n={}: {:?}", e.n, e.issues);
        }
        for t in &report.typo_ledger {
            println!("  typo[{}] {} {} m={}", t.status, t.case, t.quantity, t.m);
        }
    }
}
