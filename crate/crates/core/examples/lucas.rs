// Binomial coefficients modulo `p` from base-`p` digits; `binom(a, b)` is 0
// unless `0 <= b <= a`.

use atkin_ut::binomial::{binom_mod_p, PadicDigits};
use atkin_ut::Result;

fn run_example() -> Result<Vec<u32>> {
    let d = PadicDigits::new(1000, 7)?;
    println!("1000 in base 7: {:?} (least significant first)", d.digits());
    let cases = [(1000, 343, 7), (40, 20, 3), (98, 33, 2), (-1, 3, 5), (4, 7, 5)];
    let mut out = Vec::new();
    for (n, m, p) in cases {
        let b = binom_mod_p(n, m, p)?;
        println!("binom({n}, {m}) mod {p} = {b}");
        out.push(b);
    }
    Ok(out)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
