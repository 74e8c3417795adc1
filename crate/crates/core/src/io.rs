//! File formats: JSON inputs, binary function tables, CSV exports.
//!
//! Binary tables start with two little-endian `u32`s, `p` then `n`. Complex
//! tables follow with `p^n` pairs of little-endian `f64` (re, im); `[R]`-valued
//! tables follow with one byte per point. Points are in packed-index order.

use crate::error::{Error, Result};
use crate::gowers::TableFn;
use crate::tester::RFunction;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use std::path::Path;

const HEADER: usize = 8;

fn parse_error(source: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        source_name: source.display().to_string(),
        message: message.into(),
    }
}

/// Parses JSON text; errors carry the line and column.
pub fn parse_json<T: DeserializeOwned>(text: &str, source: &Path) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| parse_error(source, format!("line {}, column {}: {e}", e.line(), e.column())))
}

/// Unreadable inputs are reported as parse errors of that input.
fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| parse_error(path, format!("cannot read: {e}")))
}

fn read_text(path: &Path) -> Result<String> {
    String::from_utf8(read_bytes(path)?).map_err(|_| parse_error(path, "not UTF-8"))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    parse_json(&text, path)
}

/// Accepts either a single object or a list of them.
pub fn read_json_list<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = read_text(path)?;
    let value: serde_json::Value = parse_json(&text, path)?;
    if value.is_array() {
        parse_json(&text, path)
    } else {
        Ok(vec![parse_json(&text, path)?])
    }
}

fn encode_header(p: u32, n: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER);
    out.extend_from_slice(&p.to_le_bytes());
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out
}

fn decode_header(bytes: &[u8], source: &Path) -> Result<(u32, usize, u64)> {
    if bytes.len() < HEADER {
        return Err(parse_error(
            source,
            format!("{} bytes is shorter than the 8-byte header", bytes.len()),
        ));
    }
    let p = u32::from_le_bytes(bytes[0..4].try_into().unwrap());
    let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let size = crate::config::pow_u128(p as u64, n as u64);
    if size > crate::poly::TABLE_LIMIT as u128 {
        return Err(parse_error(
            source,
            format!("header declares F_{p}^{n}, too many points"),
        ));
    }
    Ok((p, n, size as u64))
}

pub fn encode_complex_table(f: &TableFn) -> Vec<u8> {
    let mut out = encode_header(f.p(), f.n());
    for z in f.values() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn decode_complex_table(bytes: &[u8], source: &Path) -> Result<TableFn> {
    let (p, n, size) = decode_header(bytes, source)?;
    let payload = &bytes[HEADER..];
    if payload.len() as u64 != size * 16 {
        return Err(parse_error(
            source,
            format!(
                "expected {} payload bytes for F_{p}^{n}, found {}",
                size * 16,
                payload.len()
            ),
        ));
    }
    let values = payload
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..].try_into().unwrap()),
            )
        })
        .collect();
    TableFn::new(p, n, values)
}

pub fn write_complex_table(path: &Path, f: &TableFn) -> Result<()> {
    Ok(std::fs::write(path, encode_complex_table(f))?)
}

pub fn read_complex_table(path: &Path) -> Result<TableFn> {
    decode_complex_table(&read_bytes(path)?, path)
}

pub fn encode_rfunction(f: &RFunction) -> Vec<u8> {
    let mut out = encode_header(f.p(), f.n());
    out.extend_from_slice(f.values());
    out
}

/// `r = None` takes the alphabet size to be the largest value present.
pub fn decode_rfunction(bytes: &[u8], r: Option<u32>, source: &Path) -> Result<RFunction> {
    let (p, n, size) = decode_header(bytes, source)?;
    let payload = &bytes[HEADER..];
    if payload.len() as u64 != size {
        return Err(parse_error(
            source,
            format!("expected {size} payload bytes for F_{p}^{n}, found {}", payload.len()),
        ));
    }
    let r = r.unwrap_or_else(|| payload.iter().copied().max().unwrap_or(1).max(1) as u32);
    RFunction::new(p, n, r, payload.to_vec()).map_err(|e| parse_error(source, e.to_string()))
}

pub fn write_rfunction(path: &Path, f: &RFunction) -> Result<()> {
    Ok(std::fs::write(path, encode_rfunction(f))?)
}

pub fn read_rfunction(path: &Path, r: Option<u32>) -> Result<RFunction> {
    decode_rfunction(&read_bytes(path)?, r, path)
}

/// Fails unless every input lives over the same field.
pub fn same_field(inputs: &[(&str, u32)]) -> Result<u32> {
    let Some(&(_, p)) = inputs.first() else {
        return Err(Error::invalid("no inputs"));
    };
    for &(_, q) in inputs {
        if q != p {
            return Err(Error::FieldMismatch { left: p, right: q });
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::constraints::AffineConstraint;
    use crate::factor::PolynomialFactor;
    use crate::poly::NCPoly;

    #[test]
    fn complex_table_round_trip() {
        let f = TableFn::from_fn(3, 2, &Caps::default(), |x| {
            Complex64::new(x.0[0] as f64 * 0.5, -(x.0[1] as f64))
        })
        .unwrap();
        let bytes = encode_complex_table(&f);
        assert_eq!(bytes.len(), 8 + 9 * 16);
        assert_eq!(&bytes[..8], &[3, 0, 0, 0, 2, 0, 0, 0]);
        assert_eq!(decode_complex_table(&bytes, Path::new("t")).unwrap(), f);
        assert!(decode_complex_table(&bytes[..20], Path::new("t")).is_err());
    }

    #[test]
    fn rfunction_round_trip() {
        let f = RFunction::new(2, 2, 3, vec![1, 3, 2, 1]).unwrap();
        let bytes = encode_rfunction(&f);
        assert_eq!(decode_rfunction(&bytes, Some(3), Path::new("f")).unwrap(), f);
        assert_eq!(decode_rfunction(&bytes, None, Path::new("f")).unwrap().r(), 3);
        let mut bad = bytes.clone();
        bad[9] = 0;
        assert!(decode_rfunction(&bad, None, Path::new("f")).is_err());
    }

    #[test]
    fn json_errors_name_line_and_field() {
        let text = "{\n  \"p\": 2,\n  \"monomials\": []\n}";
        let err = parse_json::<NCPoly>(text, Path::new("P.json")).unwrap_err().to_string();
        assert!(err.contains("P.json"), "{err}");
        assert!(err.contains("line"), "{err}");
        assert!(err.contains("`n`"), "{err}");
        let c: AffineConstraint = parse_json(r#"{"ell":3,"forms":[[1,0,0],[1,1,0]]}"#, Path::new("c")).unwrap();
        assert_eq!(c.size(), 2);
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        assert_eq!(same_field(&[("a", 2), ("b", 2)]).unwrap(), 2);
        assert!(matches!(
            same_field(&[("a", 2), ("b", 3)]),
            Err(Error::FieldMismatch { .. })
        ));
        let b = PolynomialFactor::new(2, 2, vec![NCPoly::coordinate(2, 2, 0)]).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        let back: PolynomialFactor = parse_json(&json, Path::new("b")).unwrap();
        assert_eq!(back, b);
    }
}
