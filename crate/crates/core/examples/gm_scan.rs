// Slope multiplicities `d(k, α)` for `q = 2` and whether they depend only
// on `k` modulo a power of 2.

use atkin_ut::scan::{gm_conjecture_scan, ScanReport};
use atkin_ut::{PrimePower, Rational, Result};

fn run_example() -> Result<ScanReport> {
    let alpha_max = Rational::from_integer(4);
    let report = gm_conjecture_scan(PrimePower::from_q(2)?, 8..=60, alpha_max, &[Rational::new(5, 2)])?;
    for a in &report.alphas {
        let hits: Vec<String> = a.values.iter().filter(|v| v.1 > 0).map(|(k, d)| format!("{k}:{d}")).collect();
        println!("alpha={} period={} constant={} d>0 at {}", a.alpha, a.period, a.holds(), hits.join(" "));
    }
    Ok(report)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
