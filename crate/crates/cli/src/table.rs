use std::io::Write;

use serde_json::{json, Value};
use wmat_core::enumeration::{dn_sequence, in_sequence, CountTable};

use crate::commands::{count_json, emit_json};
use crate::{TableFormat, TableKind};

pub fn write(
    out: &mut impl Write,
    max_n: usize,
    kind: TableKind,
    format: TableFormat,
) -> anyhow::Result<()> {
    match kind {
        TableKind::Dnk => triangle(out, &CountTable::new(max_n), format),
        TableKind::Dn => column(out, "d", &to_strings(dn_sequence(max_n)), format),
        TableKind::In => column(out, "i", &to_strings(in_sequence(max_n)), format),
    }
}

fn to_strings<T: ToString>(xs: Vec<T>) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn triangle(out: &mut impl Write, table: &CountTable, format: TableFormat) -> anyhow::Result<()> {
    let max_n = table.max_n();
    match format {
        TableFormat::Csv => {
            writeln!(out, "n,k,d")?;
            for n in 0..=max_n {
                for k in 0..=max_n {
                    writeln!(out, "{n},{k},{}", table.get(n, k))?;
                }
            }
        }
        TableFormat::Pretty => {
            // the largest entries sit in the last row
            let width = (0..=max_n)
                .map(|k| table.get(max_n, k).to_string().len())
                .max()
                .unwrap_or(1);
            let label = max_n.to_string().len().max(3);
            write!(out, "{:>label$}", "n\\k")?;
            for k in 0..=max_n {
                write!(out, " {k:>width$}")?;
            }
            writeln!(out)?;
            for n in 0..=max_n {
                write!(out, "{n:>label$}")?;
                for k in 0..=n {
                    write!(out, " {:>width$}", table.get(n, k).to_string())?;
                }
                writeln!(out)?;
            }
        }
        TableFormat::Json => {
            let rows: Vec<Value> = (0..=max_n)
                .flat_map(|n| (0..=max_n).map(move |k| (n, k)))
                .map(|(n, k)| json!({ "n": n, "k": k, "d": count_json(table.get(n, k)) }))
                .collect();
            emit_json(out, &Value::Array(rows))?;
        }
    }
    Ok(())
}

fn column(
    out: &mut impl Write,
    name: &str,
    values: &[String],
    format: TableFormat,
) -> anyhow::Result<()> {
    match format {
        TableFormat::Csv => {
            writeln!(out, "n,{name}")?;
            for (n, v) in values.iter().enumerate() {
                writeln!(out, "{n},{v}")?;
            }
        }
        TableFormat::Pretty => {
            let label = (values.len().saturating_sub(1)).to_string().len().max(1);
            let width = values
                .iter()
                .map(String::len)
                .max()
                .unwrap_or(1)
                .max(name.len());
            writeln!(out, "{:>label$} {name:>width$}", "n")?;
            for (n, v) in values.iter().enumerate() {
                writeln!(out, "{n:>label$} {v:>width$}")?;
            }
        }
        TableFormat::Json => {
            let rows: Vec<Value> = values
                .iter()
                .enumerate()
                .map(|(n, v)| json!({ "n": n, (name): count_json(v) }))
                .collect();
            emit_json(out, &Value::Array(rows))?;
        }
    }
    Ok(())
}
