// A repetition code that is I-perfect for both ideals of size four but not
// perfect for the matching radius.

use posetblock::code::{is_i_perfect, is_r_error_correcting, is_r_perfect, singleton_report};
use posetblock::poset::DEFAULT_IDEAL_CAP;
use posetblock::{BlockSpace, CodeOptions, LabelMap, LinearCode, Poset, WeightModel};

pub fn run_example() -> String {
    let space = BlockSpace::new(
        Poset::new(5, &[(1, 4), (2, 4), (3, 5)]).unwrap(),
        LabelMap::new(vec![3, 2, 1, 1, 1]).unwrap(),
        WeightModel::lee(7).unwrap(),
    )
    .unwrap();
    let code = LinearCode::new(7, 8, vec![vec![0, 0, 0, 0, 0, 0, 1, 1]]).unwrap();
    let report = singleton_report(&code, &space, DEFAULT_IDEAL_CAP).unwrap();
    let mut out = format!(
        "d = {}, d_ppi = {}, bound {} <= {}, MDS: {} / {}\n",
        report.d_pwpi,
        report.d_ppi,
        report.singleton_lhs,
        report.singleton_rhs,
        report.is_mds_pwpi,
        report.is_mds_ppi
    );
    for ideal in space.poset().ideals().unwrap().of_size(4) {
        let perfect = is_i_perfect(&code, &space, ideal).unwrap();
        out.push_str(&format!("{:?}-perfect: {perfect}\n", ideal.labels()));
    }
    let opts = CodeOptions::default();
    for r in [6, 7, 12] {
        out.push_str(&format!(
            "r = {r}: error-correcting {}, perfect {}\n",
            is_r_error_correcting(&code, &space, r, &opts).unwrap(),
            is_r_perfect(&code, &space, r, &opts).unwrap()
        ));
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
