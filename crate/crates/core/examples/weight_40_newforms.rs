// Newforms of weight 40 and type 4 in characteristic 3: the class `C_3`
// carries a 3-dimensional new space on which `U_t^2 = t^40`.

use atkin_ut::hecke::WeightInstance;
use atkin_ut::newold::{new_old_split, old_eigen_from_split, NewOldSplit};
use atkin_ut::{PrimePower, Result};

fn run_example() -> Result<NewOldSplit> {
    let inst = WeightInstance::new(PrimePower::from_q(9)?, 40, Some(4))?;
    let split = new_old_split(&inst)?;
    println!("class j={} members {:?}", split.descriptor.j, split.descriptor.member_indices);
    println!("new dim {} old dim {}", split.new_dim(), split.old_dim());
    println!("U^2 = t^40 on new space: {}", split.new_square_is_t_k());
    for e in old_eigen_from_split(&split) {
        println!("old eigenvalue {:?} (factor {})", e.eigenvalue.map(|t| t.to_string()), e.factor);
    }
    Ok(split)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
