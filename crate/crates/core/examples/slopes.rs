// Newton slopes of every block at one weight, in both conventions.

use atkin_ut::hecke::WeightInstance;
use atkin_ut::spectral::{analyze_with, denormalize_slopes, AnalyzeOptions, SpectralReport};
use atkin_ut::{PrimePower, Result};

fn run_example() -> Result<SpectralReport> {
    let inst = WeightInstance::new(PrimePower::from_q(9)?, 40, Some(4))?;
    let opts = AnalyzeOptions { min_poly_limit: 0, ..AnalyzeOptions::default() };
    let report = analyze_with(&inst, &opts)?;
    let typed = denormalize_slopes(&report)?;
    for (b, t) in report.blocks.iter().zip(&typed.blocks) {
        let show = |s: &[atkin_ut::NewtonSlope]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        println!("j={}: {}   typed: {}", b.descriptor.j, show(&b.slopes), show(&t.slopes));
    }
    Ok(report)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
