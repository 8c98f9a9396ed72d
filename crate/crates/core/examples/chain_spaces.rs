// On a chain the ball of radius `t·M_w` is exactly the span of the bottom
// `t` blocks.

use num_bigint::BigUint;
use num_traits::Pow;
use posetblock::distribution::{distribution, DistributionOptions, MethodChoice};
use posetblock::{BlockSpace, LabelMap, Poset, WeightModel};

pub fn run_example() -> String {
    // 3 below 1 below 2
    let order = [3, 1, 2];
    let space = BlockSpace::new(
        Poset::chain_in_order(&order).unwrap(),
        LabelMap::new(vec![2, 1, 3]).unwrap(),
        WeightModel::lee(5).unwrap(),
    )
    .unwrap();
    let table = distribution(&space, MethodChoice::Auto, &DistributionOptions::default()).unwrap();
    let m = space.weight_model().max_weight();
    let mut out = format!("method: {}\n", table.method);
    let mut dims = 0;
    for t in 0..=order.len() {
        let volume = table.ball_volume(t as u32 * m).unwrap();
        let expected: BigUint = Pow::pow(BigUint::from(space.q()), dims);
        out.push_str(&format!("|B_{}| = {volume} (q^{dims} = {expected})\n", t as u32 * m));
        if t < order.len() {
            dims += space.labels().block_len(order[t]);
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
