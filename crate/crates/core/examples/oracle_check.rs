// Exhaustive cross-check of every applicable method, plus sampled metric
// axioms.

use posetblock::distribution::{applicable_methods, distribution, DistributionOptions, MethodChoice};
use posetblock::oracle::{oracle_distribution, oracle_metric_axioms, OracleOptions};
use posetblock::{BlockSpace, LabelMap, Poset, WeightModel};

pub fn run_example() -> String {
    let space = BlockSpace::new(
        Poset::new(4, &[(1, 2), (1, 3)]).unwrap(),
        LabelMap::new(vec![1, 2, 1, 1]).unwrap(),
        WeightModel::hamming(5).unwrap(),
    )
    .unwrap();
    let oracle = oracle_distribution(&space, &OracleOptions::default()).unwrap();
    let reference = oracle.to_table(&space);
    let mut out = format!("{} vectors weighed\n", oracle.total);
    for method in applicable_methods(&space) {
        let table = distribution(&space, MethodChoice::Forced(method), &DistributionOptions::default()).unwrap();
        out.push_str(&format!("{method}: {}\n", if table.same_counts(&reference) { "agrees" } else { "DIFFERS" }));
    }
    let metric = oracle_metric_axioms(&space, 10_000, 1);
    out.push_str(&format!("metric violations: {}\n", metric.violation_count));
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
