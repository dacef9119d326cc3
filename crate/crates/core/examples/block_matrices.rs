// The blocks `M(j, n, q)` of `U_t`, with and without their column powers
// of `t`.

use atkin_ut::cli::pretty_matrix;
use atkin_ut::hecke::{block_matrix, block_weight};
use atkin_ut::{PrimePower, Result, TMatrix};

fn run_example() -> Result<Vec<TMatrix>> {
    let mut out = Vec::new();
    for (j, n, q, with_t) in [(3, 5, 8, false), (0, 6, 8, false), (3, 5, 9, false), (1, 4, 5, true)] {
        let q = PrimePower::from_q(q)?;
        let m = block_matrix(j, n, q, with_t)?;
        println!("M({j},{n},{}) at weight {}:", q.q(), block_weight(j, n, q));
        print!("{}", pretty_matrix(&m));
        out.push(m);
    }
    Ok(out)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
