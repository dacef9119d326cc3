// In characteristic 2 the `Γ₀` part of `U_t` fails to be diagonalizable at
// odd weights, through an inseparable eigenvalue.

use atkin_ut::hecke::WeightInstance;
use atkin_ut::spectral::{analyze_with, AnalyzeOptions, DiagVerdict};
use atkin_ut::{PrimePower, Result};

fn run_example() -> Result<Vec<(i64, DiagVerdict)>> {
    let q = PrimePower::from_q(4)?;
    let opts = AnalyzeOptions { gamma0_only: true, ..AnalyzeOptions::default() };
    let mut out = Vec::new();
    for k in (7..=17).step_by(2) {
        let report = analyze_with(&WeightInstance::new(q, k, None)?, &opts)?;
        if let Some(v) = report.gamma0_verdict {
            println!("k={k}: diagonalizable={} ({})", v.diagonalizable, v.reason.as_str());
            out.push((k, v));
        }
    }
    Ok(out)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
