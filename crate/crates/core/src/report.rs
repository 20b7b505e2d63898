//! JSON and CSV renderings. Fractions are always `a/b` strings.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::dinv::DInvariantTable;
use crate::lattice::{Certificate, GramLattice};
use crate::numtheory::fraction_string;
use crate::obstruct::{Claim, Classification, ObstructionReport, TableRow, Witness};
use crate::{Error, Integer, Rational};

pub fn frac(r: &Rational) -> String {
    fraction_string(r)
}

/// Decimal approximation rounded half away from zero, prefixed with `~`.
pub fn decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(Integer::from(10), digits);
    let n: Integer = r.numer().abs() * &scale * 2u32 + r.denom();
    let (q, _) = n.div_rem(&(r.denom() * 2u32));
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if r.is_negative() && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("~{sign}{int_part}")
    } else {
        format!("~{sign}{int_part}.{:0>digits$}", frac_part.to_string())
    }
}

fn fracs(v: &[Rational]) -> Vec<String> {
    v.iter().map(frac).collect()
}

fn ints(v: &[Integer]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn claim_str(c: &Claim) -> String {
    match c {
        Claim::NoRationalBall => "no_rational_ball".into(),
        Claim::OrderAbove(n) => format!("order_above:{n}"),
        Claim::InfiniteOrder => "infinite_order".into(),
        Claim::OrderAtMost(n) => format!("order_at_most:{n}"),
    }
}

pub fn certificate_json(c: &Certificate) -> Value {
    json!({
        "target_rank": c.target_rank,
        "matrix": c.matrix,
        "gram": c.gram,
        "pairings": c.pairings,
        "verified": c.verified,
    })
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::D { label, value } => json!({
            "kind": "d",
            "label": label.as_ref().map(|l| l.to_string()),
            "value": frac(value),
        }),
        Witness::DList { labels, values } => json!({
            "kind": "d_list",
            "labels": ints(labels),
            "values": fracs(values),
        }),
        Witness::Sum { value } => json!({"kind": "sum", "value": frac(value)}),
        Witness::H1 { order } => json!({"kind": "h1", "order": order.to_string()}),
        Witness::Embedding(c) => json!({"kind": "embedding", "certificate": certificate_json(c)}),
        Witness::NoEmbedding {
            lattice_rank,
            target_rank,
            copies,
        } => json!({
            "kind": "no_embedding",
            "lattice_rank": lattice_rank,
            "target_rank": target_rank,
            "copies": copies,
        }),
        Witness::Reduction { target } => json!({"kind": "reduction", "target": target}),
        Witness::Count { count, h1 } => json!({"kind": "count", "count": count, "h1": h1.to_string()}),
        Witness::External { note } => json!({"kind": "external", "note": note}),
    }
}

/// One-line form of a witness for CSV and text output.
pub fn witness_summary(w: &Witness) -> String {
    match w {
        Witness::D { label: Some(l), value } => format!("d({l})={}", frac(value)),
        Witness::D { label: None, value } => format!("d={}", frac(value)),
        Witness::DList { labels, values } => labels
            .iter()
            .zip(values)
            .map(|(l, v)| format!("{l}:{}", frac(v)))
            .collect::<Vec<_>>()
            .join(" "),
        Witness::Sum { value } => format!("sum={}", frac(value)),
        Witness::H1 { order } => format!("|H1|={order}"),
        Witness::Embedding(c) => format!(
            "embedding into rank {} ({})",
            c.target_rank,
            if c.verified { "verified" } else { "unverified" }
        ),
        Witness::NoEmbedding {
            lattice_rank,
            target_rank,
            copies,
        } => format!("no embedding of {copies} x rank {lattice_rank} into rank {target_rank}"),
        Witness::Reduction { target } => format!("reduces to {target}"),
        Witness::Count { count, h1 } => format!("count={count} |H1|={h1}"),
        Witness::External { note } => note.clone(),
    }
}

pub fn report_json(r: &ObstructionReport) -> Value {
    let params: Map<String, Value> = r
        .params
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    json!({
        "id": r.id.as_str(),
        "verdict": r.verdict.to_string(),
        "witness": r.witness.as_ref().map(witness_json),
        "params": params,
        "claim": r.claim.as_ref().map(claim_str),
        "external": r.external,
        "decisive": r.decisive,
    })
}

pub fn classification_json(c: &Classification) -> Value {
    json!({
        "manifold": c.manifold,
        "seifert": c.seifert,
        "verdict": c.verdict.to_string(),
        "proved_in": c.proved_in(),
        "reports": c.reports.iter().map(report_json).collect::<Vec<_>>(),
    })
}

fn params_str(r: &ObstructionReport) -> String {
    r.params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::domain(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::domain(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::domain(e.to_string()))
}

/// One row per report.
pub fn classification_csv(cs: &[Classification]) -> Result<String, Error> {
    let rows = cs.iter().flat_map(|c| {
        c.reports.iter().map(move |r| {
            vec![
                c.manifold.clone(),
                c.verdict.to_string(),
                r.id.to_string(),
                r.verdict.to_string(),
                r.decisive.to_string(),
                r.claim.as_ref().map(claim_str).unwrap_or_default(),
                r.witness.as_ref().map(witness_summary).unwrap_or_default(),
                params_str(r),
            ]
        })
    });
    csv_string(
        &["manifold", "order", "id", "verdict", "decisive", "claim", "witness", "params"],
        rows,
    )
}

pub fn classification_text(c: &Classification) -> String {
    let mut s = format!(
        "{}  {}\norder: {}\nproved in: {}\n",
        c.manifold,
        c.seifert,
        c.verdict,
        c.proved_in()
    );
    for r in &c.reports {
        s.push_str(&format!(
            "  {} {:<28} {:<12}",
            if r.decisive { "*" } else { " " },
            r.provenance(),
            r.verdict.to_string()
        ));
        if let Some(w) = &r.witness {
            s.push_str(&format!(" {}", witness_summary(w)));
        }
        if let Some(e) = &r.external {
            s.push_str(&format!(" [{e}]"));
        }
        s.push('\n');
    }
    s
}

fn d_entries<'a>(
    t: &'a DInvariantTable,
    labels: &'a [Integer],
) -> impl Iterator<Item = Result<(&'a Integer, &'a Rational), Error>> + 'a {
    labels.iter().map(move |l| {
        t.get(l)
            .map(|d| (l, d))
            .ok_or_else(|| Error::domain(format!("label {l} out of range 0..{}", t.p)))
    })
}

/// `label,d` with an `approx` column when `decimal` is set.
pub fn d_table_csv(t: &DInvariantTable, labels: &[Integer], decimal_digits: Option<usize>) -> Result<String, Error> {
    let rows = d_entries(t, labels).collect::<Result<Vec<_>, _>>()?;
    let mut header = vec!["label", "d"];
    if decimal_digits.is_some() {
        header.push("approx");
    }
    csv_string(
        &header,
        rows.into_iter().map(|(l, d)| {
            let mut r = vec![l.to_string(), frac(d)];
            if let Some(k) = decimal_digits {
                r.push(decimal(d, k));
            }
            r
        }),
    )
}

pub fn d_table_json(t: &DInvariantTable, labels: &[Integer], decimal_digits: Option<usize>) -> Result<Value, Error> {
    let rows = d_entries(t, labels)
        .map(|e| {
            e.map(|(l, d)| {
                let mut m = json!({"label": l.to_string(), "d": frac(d)});
                if let Some(k) = decimal_digits {
                    m["approx"] = Value::String(decimal(d, k));
                }
                m
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({
        "manifold": t.manifold,
        "p": t.p.to_string(),
        "q": t.q.to_string(),
        "rows": rows,
    }))
}

pub fn gram_json(l: &GramLattice) -> Value {
    json!({"rank": l.rank, "matrix": l.matrix})
}

/// Reads `{"rank": n, "matrix": [[..], ..]}`.
pub fn gram_from_json(s: &str) -> Result<GramLattice, Error> {
    #[derive(serde::Deserialize)]
    struct Raw {
        rank: usize,
        matrix: Vec<Vec<i64>>,
    }
    let raw: Raw = serde_json::from_str(s).map_err(|e| {
        Error::parse(e.column().saturating_sub(1), format!("gram json line {}: {e}", e.line()))
    })?;
    if raw.matrix.len() != raw.rank {
        return Err(Error::domain(format!(
            "rank {} but {} rows",
            raw.rank,
            raw.matrix.len()
        )));
    }
    GramLattice::new(raw.matrix)
}

const TABLE_HEADER: [&str; 6] = ["family", "name", "b", "seifert", "order", "proved_in"];

pub fn table_csv(rows: &[TableRow]) -> Result<String, Error> {
    csv_string(
        &TABLE_HEADER,
        rows.iter().map(|r| {
            vec![
                r.family.clone(),
                r.name.clone(),
                r.b.clone(),
                r.seifert.clone(),
                r.order.clone(),
                r.proved_in.clone(),
            ]
        }),
    )
}

pub fn table_json(rows: &[TableRow]) -> Value {
    serde_json::to_value(rows).unwrap_or(Value::Null)
}

/// Parses CSV produced by [`table_csv`].
pub fn table_from_csv(s: &str) -> Result<Vec<TableRow>, Error> {
    let mut r = csv::Reader::from_reader(s.as_bytes());
    r.deserialize()
        .map(|row| row.map_err(|e| Error::domain(format!("csv: {e}"))))
        .collect()
}
