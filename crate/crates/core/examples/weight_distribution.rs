// Weight distribution of a five-block space over Z_7 with the Lee weight,
// computed by automatic method selection and by the general sum.

use posetblock::distribution::{distribution, DistributionOptions, Method, MethodChoice};
use posetblock::{BlockSpace, LabelMap, Poset, WeightModel};

pub fn run_example() -> String {
    let space = BlockSpace::new(
        Poset::new(5, &[(1, 2)]).unwrap(),
        LabelMap::new(vec![2, 3, 4, 2, 2]).unwrap(),
        WeightModel::lee(7).unwrap(),
    )
    .unwrap();
    let opts = DistributionOptions::default();
    let auto = distribution(&space, MethodChoice::Auto, &opts).unwrap();
    let general = distribution(&space, MethodChoice::Forced(Method::General), &opts).unwrap();
    assert!(auto.same_counts(&general));

    let mut out = format!("method: {}\n", auto.method);
    for (r, count) in auto.counts.iter().enumerate() {
        out.push_str(&format!("|A_{r}| = {count}\n"));
    }
    out.push_str(&format!("total = {}\n", auto.total()));
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
