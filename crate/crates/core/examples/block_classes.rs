// Sizes of the block classes `D_r^k`: blocks of length `k` whose largest
// symbol weight is `r`.

use posetblock::WeightModel;

pub fn run_example() -> String {
    let mut out = String::new();
    for (name, w) in [
        ("lee(7)", WeightModel::lee(7).unwrap()),
        ("hamming(4)", WeightModel::hamming(4).unwrap()),
        ("custom [0,1,3,3,1]", WeightModel::custom(vec![0, 1, 3, 3, 1]).unwrap()),
    ] {
        out.push_str(&format!("{name}: M_w = {}, m_w = {}\n", w.max_weight(), w.min_weight()));
        for k in 1..=4 {
            let row: Vec<String> = (0..=w.max_weight())
                .map(|r| w.block_class_size(r, k).unwrap().to_string())
                .collect();
            out.push_str(&format!("  k = {k}: {}\n", row.join(" ")));
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
