//! Named fixture posets used by the tests and the CLI.

use crate::poset::Poset;

/// The four-element poset `p1 ⪯ p4`, `p2 ⪯ p3`, `p2 ⪯ p4`.
pub fn example() -> Poset {
    let labels = ["p1", "p2", "p3", "p4"].map(String::from).to_vec();
    Poset::from_covers(labels, &[(0, 3), (1, 2), (1, 3)]).expect("fixture is a poset")
}

/// `bot ⪯ a, b ⪯ top`.
pub fn diamond() -> Poset {
    let labels = ["bot", "a", "b", "top"].map(String::from).to_vec();
    Poset::from_covers(labels, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("fixture is a poset")
}

/// Disjoint union of a 2-chain and a 3-chain.
pub fn c2_plus_c3() -> Poset {
    let labels = ["x1", "x2", "y1", "y2", "y3"].map(String::from).to_vec();
    Poset::from_covers(labels, &[(0, 1), (2, 3), (3, 4)]).expect("fixture is a poset")
}

pub const NAMES: [&str; 11] = ["c1", "c2", "c3", "c4", "a1", "a2", "a3", "a4", "example", "diamond", "c2+c3"];

pub fn by_name(name: &str) -> Option<Poset> {
    let sized = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    match name {
        "example" => Some(example()),
        "diamond" => Some(diamond()),
        "c2+c3" => Some(c2_plus_c3()),
        _ => {
            if let Some(n) = sized("c").filter(|n| (1..=4).contains(n)) {
                Poset::chain(n).ok()
            } else if let Some(n) = sized("a").filter(|n| (1..=4).contains(n)) {
                Poset::antichain(n).ok()
            } else {
                None
            }
        }
    }
}

/// Every fixture with its name, in [`NAMES`] order.
pub fn all() -> Vec<(&'static str, Poset)> {
    NAMES.iter().map(|&n| (n, by_name(n).expect("listed fixture exists"))).collect()
}
