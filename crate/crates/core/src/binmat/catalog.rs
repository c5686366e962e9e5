//! Small fixed matrices used as seeds and regression fixtures.

use super::BinaryMatrix;

const TWO_CFF_9X12: [&str; 9] = [
    "100100100100",
    "100010010010",
    "100001001001",
    "010100001010",
    "010010100001",
    "010001010100",
    "001100010001",
    "001010001100",
    "001001100010",
];

const ONE_CFF_5X10: [&str; 5] = [
    "1111000000",
    "1000111000",
    "0100100110",
    "0010010101",
    "0001001011",
];

fn from_strs(rows: &[&str]) -> BinaryMatrix {
    let rows: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| r.bytes().map(|b| b - b'0').collect())
        .collect();
    BinaryMatrix::from_rows(&rows).expect("catalog matrices are well formed")
}

/// A 2-CFF(9, 12) with entry (0,0) = 1, usable as a product seed.
pub fn two_cff_9x12() -> BinaryMatrix {
    from_strs(&TWO_CFF_9X12)
}

/// The 1-CFF(5, 10) of all 2-subsets of a 5-set, lexicographic column order.
pub fn one_cff_5x10() -> BinaryMatrix {
    from_strs(&ONE_CFF_5X10)
}
