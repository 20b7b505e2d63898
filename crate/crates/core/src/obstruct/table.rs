//! Order table over the catalog.

use num_integer::Integer as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{classify_order, Caps};
use crate::seifert::{Family, SphericalName};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub name: String,
    /// `b` for `T`, `O`, `I`; empty for `D`.
    pub b: String,
    pub seifert: String,
    pub order: String,
    pub proved_in: String,
}

/// `T`, `O`, `I` rows for `2 <= b <= b_max`, grouped by residue, followed by
/// `D(p, q)` for `2 <= q < p <= b_max` as reductions to lens spaces.
pub fn table_rows(b_max: i64, caps: &Caps) -> Result<Vec<TableRow>, Error> {
    let mut names = Vec::new();
    for fam in [Family::T, Family::O, Family::I] {
        for &k in fam.residues().0 {
            for b in 2..=b_max {
                names.push(SphericalName::catalog(fam, b, k));
            }
        }
    }
    for p in 3..=b_max {
        for q in 2..p {
            if p.gcd(&q) == 1 {
                names.push(SphericalName::prism(p, q));
            }
        }
    }
    let rows: Vec<TableRow> = names
        .par_iter()
        .map(|n| {
            let c = classify_order(n, caps)?;
            Ok(TableRow {
                family: match n.family {
                    Family::D => "D".into(),
                    f => format!("{}{}", f.letter(), n.second),
                },
                name: n.to_string(),
                b: if n.family == Family::D { String::new() } else { n.first.to_string() },
                seifert: c.seifert.clone(),
                order: c.verdict.to_string(),
                proved_in: c.proved_in(),
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(rows)
}
