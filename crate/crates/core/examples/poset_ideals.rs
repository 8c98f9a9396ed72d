// Ideals of a small poset grouped by size and number of maximal elements,
// and the complement correspondence with the dual poset.

use posetblock::poset::labels_of;
use posetblock::Poset;

pub fn run_example() -> String {
    let poset = Poset::new(5, &[(1, 4), (2, 4), (3, 5)]).unwrap();
    let family = poset.ideals().unwrap();
    let mut out = format!("{} ideals\n", family.len());
    for ((size, maxes), count) in family.counts() {
        out.push_str(&format!("size {size}, {maxes} maximal: {count}\n"));
    }
    for ideal in family.of_size(3) {
        out.push_str(&format!("{:?} with maximal elements {:?}\n", ideal.labels(), ideal.maximal_labels()));
    }
    let dual = poset.dual();
    let ground = poset.ground();
    let matched = family
        .all()
        .iter()
        .filter(|i| dual.as_ideal(ground & !i.members).is_some())
        .count();
    out.push_str(&format!("complements that are dual ideals: {matched}\n"));
    let closure = poset.ideal_closure(posetblock::poset::mask_of(&[4])).unwrap();
    out.push_str(&format!("ideal generated by 4: {:?}\n", labels_of(closure.members)));
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
