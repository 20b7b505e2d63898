//! Table 1 transcribed by hand, independent of the library.

#![allow(dead_code)]

/// Expected order and the acceptable provenance tags for a catalog row.
pub fn expected(family: char, k: i64, b: i64) -> (&'static str, &'static [&'static str]) {
    const MUBAR: &[&str] = &["spin_d_mubar"];
    const PLUMB: &[&str] = &["donaldson_order:plumbing"];
    const SURG: &[&str] = &["donaldson_order:surgery"];
    const REVISITED: &[&str] = &["d_sum", "max_min"];
    const LENS: &[&str] = &["complementary_reduction+lisca_lens"];
    const GJ: &[&str] = &["greene_jabuka"];
    const RIBBON: &[&str] = &["external: ribbon band"];
    let odd = b % 2 == 1;
    match (family, k) {
        ('T', 1) | ('T', 5) => ("inf", MUBAR),
        ('T', 3) => match b {
            2 | 6 => ("1", LENS),
            4 => ("2", LENS),
            _ => ("inf", LENS),
        },
        ('O', 1) | ('O', 5) | ('O', 7) => ("inf", PLUMB),
        ('O', 11) => ("inf", if b > 5 { SURG } else { REVISITED }),
        ('I', 1) | ('I', 7) | ('I', 11) | ('I', 13) | ('I', 29) => ("inf", MUBAR),
        ('I', 17) => ("inf", if odd { MUBAR } else if b > 7 { SURG } else { REVISITED }),
        ('I', 19) => match b {
            _ if !odd => ("inf", MUBAR),
            3 => ("1", RIBBON),
            5 => ("inf", REVISITED),
            _ => ("inf", GJ),
        },
        ('I', 23) => ("inf", if !odd { MUBAR } else if b > 7 { SURG } else { REVISITED }),
        _ => panic!("no such family {family}{k}"),
    }
}

pub const FAMILIES: &[(char, &[i64])] = &[
    ('T', &[1, 3, 5]),
    ('O', &[1, 5, 7, 11]),
    ('I', &[1, 7, 11, 13, 17, 19, 23, 29]),
];

/// Subscript of the catalog name.
pub fn subscript(family: char, k: i64, b: i64) -> i64 {
    let step = match family {
        'T' => 6,
        'O' => 12,
        'I' => 30,
        _ => unreachable!(),
    };
    step * (b - 2) + k
}
