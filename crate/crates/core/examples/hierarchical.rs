// A two-level poset: the level-by-level sum agrees with the general one.

use posetblock::distribution::{distribution, DistributionOptions, Method, MethodChoice};
use posetblock::{BlockSpace, LabelMap, Poset, WeightModel};

pub fn run_example() -> String {
    let relations: Vec<(usize, usize)> = (1..=3).flat_map(|a| [(a, 4), (a, 5)]).collect();
    let space = BlockSpace::new(
        Poset::new(5, &relations).unwrap(),
        LabelMap::new(vec![1, 2, 1, 2, 1]).unwrap(),
        WeightModel::lee(5).unwrap(),
    )
    .unwrap();
    let levels = space.poset().classify().levels;
    let opts = DistributionOptions::default();
    let fast = distribution(&space, MethodChoice::Forced(Method::Hierarchical), &opts).unwrap();
    let general = distribution(&space, MethodChoice::Forced(Method::General), &opts).unwrap();
    let mut out = format!("level sizes: {:?}\n", levels.level_sizes);
    out.push_str(&format!("agree: {}\n", fast.same_counts(&general)));
    for (r, v) in fast.ball_volumes().iter().enumerate() {
        out.push_str(&format!("|B_{r}| = {v}\n"));
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
