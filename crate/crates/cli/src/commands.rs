use std::io::Write;

use anyhow::{bail, Context};
use serde_json::{json, Value};
use wmat_core::algebra::{antipode, coproduct};
use wmat_core::enumeration::{
    count_dn, count_dnk, count_in, generate_packed, generate_packed_with_sup,
};
use wmat_core::primitives::{primitive_basis_with, PrimitiveError};
use wmat_core::verify::{self, parse_laws, VerifyConfig};
use wmat_core::{Element, Exec, PackedWord, Word};

use crate::{table, Command, Format};

/// Grades above this need `--max-grade-override`.
const DEFAULT_GRADE_CAP: usize = 5;

/// Longest words the streaming generator handles.
const MAX_STREAM_LEN: usize = 127;

pub enum Outcome {
    Ok,
    Failed,
}

pub fn dispatch(cmd: &Command, exec: Exec, out: &mut impl Write) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Pack { word, format } => {
            let w: Word = word.parse()?;
            let p = w.pack();
            match format {
                Format::Text => writeln!(out, "{p}")?,
                Format::Json => emit_json(out, &json!({ "input": w, "packed": p }))?,
            }
        }
        Command::Mul { u, v, format } => {
            let (u, v) = (packed(u)?, packed(v)?);
            let prod = Element::basis(u.star(&v));
            match format {
                Format::Text => writeln!(out, "{prod}")?,
                Format::Json => emit_json(out, &json!({ "product": prod }))?,
            }
        }
        Command::Coproduct { word, format } => {
            let t = coproduct(&packed(word)?);
            match format {
                Format::Text => writeln!(out, "{t}")?,
                Format::Json => emit_json(out, &json!({ "coproduct": t }))?,
            }
        }
        Command::Antipode { word, format } => {
            let s = antipode(&packed(word)?);
            match format {
                Format::Text => writeln!(out, "{s}")?,
                Format::Json => emit_json(out, &json!({ "antipode": s }))?,
            }
        }
        Command::Factor { word, format } => {
            let w = packed(word)?;
            let factors = w.factor_irreducible();
            match format {
                Format::Text if factors.is_empty() => writeln!(out, "[]")?,
                Format::Text => {
                    let parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
                    writeln!(out, "{}", parts.join(" * "))?;
                }
                Format::Json => emit_json(out, &json!({ "factors": factors }))?,
            }
        }
        Command::Enumerate {
            n,
            sup,
            irreducible,
            count_only,
            format,
        } => enumerate(out, *n, *sup, *irreducible, *count_only, *format)?,
        Command::Table {
            max_n,
            kind,
            format,
        } => table::write(out, *max_n, *kind, *format)?,
        Command::Primitives {
            n,
            max_grade_override,
            format,
        } => return primitives(out, *n, *max_grade_override, *format, exec),
        Command::Verify {
            max_len,
            trials,
            seed,
            laws,
            antipode_max_len,
            timings,
            format,
        } => {
            let cfg = VerifyConfig {
                max_len: *max_len,
                trials: *trials,
                seed: *seed,
                laws: parse_laws(laws)?,
                antipode_max_len: *antipode_max_len,
                record_timings: *timings,
                exec,
                ..VerifyConfig::default()
            };
            if cfg.laws.is_empty() {
                bail!("no laws selected");
            }
            let report = verify::run(&cfg)?;
            match format {
                Format::Text => write!(out, "{}", report.render_text())?,
                Format::Json => emit_json(out, &serde_json::to_value(&report)?)?,
            }
            if !report.passed() {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn packed(text: &str) -> anyhow::Result<PackedWord> {
    let w: Word = text.parse()?;
    Ok(PackedWord::try_from(w)?)
}

pub fn emit_json(out: &mut impl Write, value: &Value) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Counts as JSON numbers while they fit in a `u64`, as strings after that.
pub fn count_json(count: &impl ToString) -> Value {
    let s = count.to_string();
    s.parse::<u64>()
        .map(Value::from)
        .unwrap_or(Value::String(s))
}

fn enumerate(
    out: &mut impl Write,
    n: usize,
    sup: Option<usize>,
    irreducible: bool,
    count_only: bool,
    format: Format,
) -> anyhow::Result<()> {
    let header = json!({ "n": n, "sup": sup, "irreducible": irreducible });
    if count_only {
        let count = match (sup, irreducible) {
            (None, false) => count_dn(n).to_string(),
            (Some(k), false) => count_dnk(n, k).to_string(),
            // the empty word is not listed as irreducible
            (None, true) if n == 0 => "0".to_string(),
            (None, true) => count_in(n).to_string(),
            // no closed formula for this refinement
            (Some(_), true) => stream(n, sup, irreducible)?.count().to_string(),
        };
        match format {
            Format::Text => writeln!(out, "{count}")?,
            Format::Json => {
                let mut v = header;
                v["count"] = count_json(&count);
                emit_json(out, &v)?;
            }
        }
        return Ok(());
    }
    let words = stream(n, sup, irreducible)?;
    match format {
        Format::Text => {
            for w in words {
                writeln!(out, "{w}")?;
            }
        }
        Format::Json => {
            let words: Vec<PackedWord> = words.collect();
            let mut v = header;
            v["count"] = Value::from(words.len());
            v["words"] = serde_json::to_value(&words)?;
            emit_json(out, &v)?;
        }
    }
    Ok(())
}

fn stream(
    n: usize,
    sup: Option<usize>,
    irreducible: bool,
) -> anyhow::Result<Box<dyn Iterator<Item = PackedWord>>> {
    if n > MAX_STREAM_LEN {
        bail!("listing is limited to length {MAX_STREAM_LEN}; use --count-only");
    }
    let words: Box<dyn Iterator<Item = PackedWord>> = match sup {
        Some(k) if k > n => Box::new(std::iter::empty()),
        Some(k) => Box::new(generate_packed_with_sup(n, k)),
        None => Box::new(generate_packed(n)),
    };
    Ok(if irreducible {
        Box::new(words.filter(|w| !w.is_empty() && w.is_irreducible() == Ok(true)))
    } else {
        words
    })
}

fn primitives(
    out: &mut impl Write,
    n: usize,
    cap: Option<usize>,
    format: Format,
    exec: Exec,
) -> anyhow::Result<Outcome> {
    let cap = cap.unwrap_or(DEFAULT_GRADE_CAP);
    if n > cap {
        bail!("grade {n} is above the cap {cap}; pass --max-grade-override {n} to compute it");
    }
    let basis = match primitive_basis_with(n, exec) {
        Ok(b) => b,
        Err(e @ PrimitiveError::NotPrimitive(_)) => {
            eprintln!("error: {e}");
            return Ok(Outcome::Failed);
        }
        Err(e) => return Err(e).context("primitives"),
    };
    match format {
        Format::Text => {
            writeln!(
                out,
                "grade={} dim={} rows={} cols={}",
                basis.n,
                basis.dim(),
                basis.rows,
                basis.cols
            )?;
            for v in &basis.vectors {
                writeln!(out, "{v}")?;
            }
        }
        Format::Json => emit_json(
            out,
            &json!({
                "grade": basis.n,
                "dim": basis.dim(),
                "rows": basis.rows,
                "cols": basis.cols,
                "rank": basis.rank,
                "basis": basis.vectors,
            }),
        )?,
    }
    Ok(Outcome::Ok)
}
