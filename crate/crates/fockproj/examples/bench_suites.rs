use fockproj::experiments::{run_suites, SuiteId, SuiteOptions};
use std::time::Instant;

fn main() {
    let opts = SuiteOptions::default();
    for id in SuiteId::singles() {
        let t = Instant::now();
        let reports = run_suites(id, &opts);
        let ok: usize = reports.iter().filter(|r| r.passed).count();
        let n_assert: usize = reports.iter().map(|r| r.assertions.len()).sum();
        println!("{id:10} {:9.2?}  passed {ok}/{}  assertions {n_assert}", t.elapsed(), reports.len());
        for r in &reports {
            for a in &r.assertions {
                if !a.passed {
                    println!("    FAIL: {} (measured {:.4e}, bound {:.4e}) {}", a.name, a.measured, a.bound, a.detail);
                } else if std::env::var("VERBOSE").is_ok() {
                    println!("    ok:   {} (measured {:.4e}, bound {:.4e})", a.name, a.measured, a.bound);
                }
            }
        }
    }
}
