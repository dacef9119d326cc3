// Old eigenvalues of the 4-dimensional class `C_1` at weight `3q + 1`:
// one is zero, the other is `2t^2 - t^(q+1)`.

use atkin_ut::hecke::WeightInstance;
use atkin_ut::newold::old_eigen_extract;
use atkin_ut::{PrimePower, Result, TPoly};

fn run_example() -> Result<Vec<(u64, Vec<Option<TPoly>>)>> {
    let mut out = Vec::new();
    for q in [3u64, 4, 5, 7] {
        let inst = WeightInstance::new(PrimePower::from_q(q)?, 3 * q as i64 + 1, Some(2))?;
        let eig: Vec<Option<TPoly>> = old_eigen_extract(&inst)?.into_iter().map(|e| e.eigenvalue).collect();
        let shown: Vec<String> = eig.iter().map(|e| e.as_ref().map_or("-".into(), |t| t.to_string())).collect();
        println!("q={q} k={}: old eigenvalues {}", inst.k, shown.join(", "));
        out.push((q, eig));
    }
    Ok(out)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
