use serde::{Deserialize, Serialize};

use super::{CliError, Context, Format, Method, TableKind, ValueKind};
use crate::closedform::{
    comp_count_explicit, comp_count_paper_literal, comp_count_recursive, k1_count_formula,
    maximin_count_paper, minimax_count_formula,
};
use crate::graph::LabelledGraph;
use crate::numtheory::{bell, binomial, stirling2};
use crate::BigNat;

/// One computed value, as printed by `value` and `table --format json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    /// Exact decimal.
    pub value: String,
    pub method: String,
}

impl OutputRecord {
    pub fn parsed_value(&self) -> Option<BigNat> {
        self.value.parse().ok()
    }
}

fn need(param: Option<usize>, name: &str, kind: ValueKind) -> Result<usize, CliError> {
    param.ok_or_else(|| CliError::Usage(format!("`{}` needs --{name}", kind.name())))
}

fn unsupported(kind: ValueKind, method: Method) -> CliError {
    CliError::Usage(format!(
        "method `{}` is not available for `{}`",
        method.name(),
        kind.name()
    ))
}

/// Computes one value, dispatching on kind and method.
pub fn compute_value(
    ctx: &mut Context,
    kind: ValueKind,
    n: usize,
    m: Option<usize>,
    j: Option<usize>,
    method: Option<Method>,
) -> Result<OutputRecord, CliError> {
    use Method::*;
    let default = match kind {
        ValueKind::Comp => Recursive,
        ValueKind::Kj => Brute,
        _ => Formula,
    };
    let method = method.unwrap_or(default);
    let (m_out, j_out, value): (Option<usize>, Option<usize>, BigNat) = match kind {
        ValueKind::Comp => {
            let m = need(m, "m", kind)?;
            let v = match method {
                Recursive => comp_count_recursive(n, m, &mut ctx.memo)?,
                Explicit => comp_count_explicit(n, m)?,
                Brute => ctx
                    .brute
                    .composition_count(&LabelledGraph::complete_minus_clique(n, m)?)?,
                PaperLiteral => comp_count_paper_literal(n, m)?,
                Formula => return Err(unsupported(kind, method)),
            };
            (Some(m), None, v)
        }
        ValueKind::Minimax => {
            let m = need(m, "m", kind)?;
            let v = match method {
                Formula => minimax_count_formula(n, m)?,
                Brute => ctx.brute.minimax_count(n, m)?,
                PaperLiteral => maximin_count_paper(n, m)?,
                _ => return Err(unsupported(kind, method)),
            };
            (Some(m), None, v)
        }
        ValueKind::Maximin => {
            let m = need(m, "m", kind)?;
            let v = match method {
                Formula | PaperLiteral => maximin_count_paper(n, m)?,
                Brute => ctx.brute.maximin_count(n, m)?,
                _ => return Err(unsupported(kind, method)),
            };
            (Some(m), None, v)
        }
        ValueKind::K1 => {
            let m = need(m, "m", kind)?;
            let v = match method {
                Formula => k1_count_formula(n, m)?,
                Brute => ctx.brute.kj_count(n, m, 1)?,
                _ => return Err(unsupported(kind, method)),
            };
            (Some(m), Some(1), v)
        }
        ValueKind::Kj => {
            let m = need(m, "m", kind)?;
            let j = need(j, "j", kind)?;
            let v = match method {
                Brute => ctx.brute.kj_count(n, m, j)?,
                Formula if j == 1 => k1_count_formula(n, m)?,
                _ => return Err(unsupported(kind, method)),
            };
            (Some(m), Some(j), v)
        }
        ValueKind::Bell => {
            let v = match method {
                Formula => bell(n),
                Brute => ctx.brute.composition_count(&LabelledGraph::complete(n))?,
                _ => return Err(unsupported(kind, method)),
            };
            (None, None, v)
        }
        ValueKind::Stirling2 | ValueKind::Binomial => {
            let k = need(m, "k", kind)?;
            if method != Formula {
                return Err(unsupported(kind, method));
            }
            let v = if kind == ValueKind::Binomial {
                binomial(n, k)
            } else {
                stirling2(n, k)
            };
            (Some(k), None, v)
        }
    };
    Ok(OutputRecord {
        kind: kind.name().to_string(),
        n,
        m: m_out,
        j: j_out,
        value: value.to_string(),
        method: method.name().to_string(),
    })
}

/// A lower-triangular table: rows indexed by `n`, columns by `m = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub kind: TableKind,
    pub max_n: usize,
    pub method: Method,
    /// `(n, values for m = 0..=n)`.
    pub rows: Vec<(usize, Vec<BigNat>)>,
}

impl Table {
    pub fn build(
        ctx: &mut Context,
        kind: TableKind,
        max_n: usize,
        method: Option<Method>,
    ) -> Result<Self, CliError> {
        let (value_kind, first_n, default) = match kind {
            TableKind::Comp => (ValueKind::Comp, 0, Method::Recursive),
            TableKind::K1 => (ValueKind::K1, 1, Method::Formula),
        };
        let method = method.unwrap_or(default);
        let mut rows = Vec::new();
        for n in first_n..=max_n {
            // One enumeration per row for the brute k_1 route.
            let row: Vec<BigNat> = if kind == TableKind::K1 && method == Method::Brute {
                ctx.brute.kj_histogram(n, 1)?
            } else {
                (0..=n)
                    .map(|m| {
                        let r = compute_value(ctx, value_kind, n, Some(m), None, Some(method))?;
                        Ok(r.parsed_value().expect("decimal output"))
                    })
                    .collect::<Result<_, CliError>>()?
            };
            rows.push((n, row));
        }
        Ok(Table {
            kind,
            max_n,
            method,
            rows,
        })
    }

    pub fn get(&self, n: usize, m: usize) -> Option<&BigNat> {
        self.rows
            .iter()
            .find(|(r, _)| *r == n)
            .and_then(|(_, v)| v.get(m))
    }
}

pub fn table_records(table: &Table) -> Vec<OutputRecord> {
    let (kind, j) = match table.kind {
        TableKind::Comp => ("comp", None),
        TableKind::K1 => ("k1", Some(1)),
    };
    table
        .rows
        .iter()
        .flat_map(|(n, row)| {
            row.iter().enumerate().map(move |(m, v)| OutputRecord {
                kind: kind.to_string(),
                n: *n,
                m: Some(m),
                j,
                value: v.to_string(),
                method: table.method.name().to_string(),
            })
        })
        .collect()
}

pub fn render_table(table: &Table, format: Format) -> String {
    let cols = table.max_n + 1;
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&table_records(table)).expect("records serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("n");
            for m in 0..cols {
                s.push_str(&format!(",m{m}"));
            }
            s.push('\n');
            for (n, row) in &table.rows {
                s.push_str(&n.to_string());
                for m in 0..cols {
                    s.push(',');
                    if let Some(v) = row.get(m) {
                        s.push_str(&v.to_string());
                    }
                }
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let cells: Vec<(usize, Vec<String>)> = table
                .rows
                .iter()
                .map(|(n, row)| (*n, row.iter().map(|v| v.to_string()).collect()))
                .collect();
            let width = cells
                .iter()
                .flat_map(|(_, r)| r.iter().map(String::len))
                .chain(std::iter::once(cols.to_string().len()))
                .max()
                .unwrap_or(1);
            let head_width = "n\\m".len().max(table.max_n.to_string().len());
            let mut s = format!("{:<head_width$}", "n\\m");
            for m in 0..cols {
                s.push_str(&format!(" {m:>width$}"));
            }
            s.push('\n');
            for (n, row) in cells {
                s.push_str(&format!("{n:<head_width$}"));
                for v in row {
                    s.push_str(&format!(" {v:>width$}"));
                }
                s.push('\n');
            }
            s
        }
    }
}

pub fn render_records(records: &[OutputRecord], format: Format) -> String {
    match format {
        Format::Text => records.iter().map(|r| format!("{}\n", r.value)).collect(),
        Format::Csv => {
            let mut s = String::from("kind,n,m,j,method,value\n");
            for r in records {
                let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.kind,
                    r.n,
                    opt(r.m),
                    opt(r.j),
                    r.method,
                    r.value
                ));
            }
            s
        }
        Format::Json => {
            let mut s = if records.len() == 1 {
                serde_json::to_string(&records[0])
            } else {
                serde_json::to_string(records)
            }
            .expect("records serialize");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::Brute as BruteCfg;

    fn ctx() -> Context {
        Context::new(BruteCfg::default(), false)
    }

    #[test]
    fn value_examples() {
        let mut c = ctx();
        let r = compute_value(
            &mut c,
            ValueKind::Comp,
            6,
            Some(3),
            None,
            Some(Method::Recursive),
        )
        .unwrap();
        assert_eq!(r.value, "153");
        let r = compute_value(
            &mut c,
            ValueKind::Kj,
            6,
            Some(6),
            Some(1),
            Some(Method::Brute),
        )
        .unwrap();
        assert_eq!(r.value, "11");
        let r = compute_value(&mut c, ValueKind::Bell, 0, None, None, None).unwrap();
        assert_eq!(r.value, "1");
        assert_eq!(r.method, "formula");
        let r = compute_value(&mut c, ValueKind::Binomial, 5, Some(2), None, None).unwrap();
        assert_eq!(r.value, "10");
        let r = compute_value(
            &mut c,
            ValueKind::Maximin,
            3,
            Some(3),
            None,
            Some(Method::Brute),
        )
        .unwrap();
        assert_eq!(r.value, "2");
    }

    #[test]
    fn value_errors() {
        let mut c = ctx();
        let e = compute_value(&mut c, ValueKind::Comp, 3, None, None, None).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = compute_value(&mut c, ValueKind::Comp, 3, Some(4), None, None).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = compute_value(
            &mut c,
            ValueKind::Comp,
            13,
            Some(0),
            None,
            Some(Method::Brute),
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = compute_value(
            &mut c,
            ValueKind::Kj,
            6,
            Some(1),
            Some(2),
            Some(Method::Formula),
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn record_json_round_trip() {
        let mut c = ctx();
        let r = compute_value(&mut c, ValueKind::Comp, 30, Some(15), None, None).unwrap();
        let text = render_records(std::slice::from_ref(&r), Format::Json);
        let back: OutputRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.parsed_value().unwrap().to_string(), r.value);
    }

    #[test]
    fn renderings_agree() {
        let mut c = ctx();
        let t = Table::build(&mut c, TableKind::Comp, 6, None).unwrap();
        let csv = render_table(&t, Format::Csv);
        assert!(csv.lines().any(|l| l == "6,203,203,188,153,97,32,1"));
        assert_eq!(csv.lines().next(), Some("n,m0,m1,m2,m3,m4,m5,m6"));
        let json: Vec<OutputRecord> =
            serde_json::from_str(&render_table(&t, Format::Json)).unwrap();
        assert_eq!(json.len(), 28);
        let text = render_table(&t, Format::Text);
        for r in &json {
            let csv_row: Vec<&str> = csv.lines().nth(r.n + 1).unwrap().split(',').collect();
            assert_eq!(csv_row[r.m.unwrap() + 1], r.value);
            let text_row: Vec<&str> = text
                .lines()
                .nth(r.n + 1)
                .unwrap()
                .split_whitespace()
                .collect();
            assert_eq!(text_row[r.m.unwrap() + 1], r.value);
        }
    }

    #[test]
    fn tiny_tables() {
        let mut c = ctx();
        let t = Table::build(&mut c, TableKind::Comp, 0, None).unwrap();
        assert_eq!(render_table(&t, Format::Csv), "n,m0\n0,1\n");
        let t = Table::build(&mut c, TableKind::K1, 8, None).unwrap();
        let csv = render_table(&t, Format::Csv);
        assert!(csv
            .lines()
            .any(|l| l == "8,715,877,674,523,409,322,255,203,162"));
        assert!(csv.lines().any(|l| l == "1,0,1,,,,,,,"));
    }
}
