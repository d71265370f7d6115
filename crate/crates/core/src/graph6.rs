//! graph6 encoding (one graph per line).
//!
//! The vertex count `N(n)` is one byte `n + 63` for `n <= 62`, `~` plus three
//! 6-bit groups for `n <= 258047`, and `~~` plus six groups otherwise. The
//! upper triangle follows column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ..`),
//! packed six bits per byte, big-endian, zero padded, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

pub const HEADER: &str = ">>graph6<<";

fn push_groups(out: &mut String, value: u64, groups: usize) {
    for i in (0..groups).rev() {
        out.push(char::from(63 + ((value >> (6 * i)) & 63) as u8));
    }
}

/// Encodes `g` without header or trailing newline.
pub fn emit(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(char::from(63 + n as u8));
    } else if n <= 258_047 {
        out.push('~');
        push_groups(&mut out, n as u64, 3);
    } else {
        out.push_str("~~");
        push_groups(&mut out, n as u64, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(char::from(63 + acc));
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(char::from(63 + (acc << (6 - filled))));
    }
    out
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

fn group(bytes: &[u8], at: usize) -> Result<u64> {
    match bytes.get(at) {
        Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
        Some(&b) => Err(err(at, format!("byte {b:#04x} outside the graph6 range 63..=126"))),
        None => Err(err(at, "truncated vertex count")),
    }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and trailing
/// line terminator are accepted. Byte offsets in errors are relative to the
/// start of `line`.
pub fn parse(line: &str) -> Result<Graph> {
    let bytes = line.as_bytes();
    let mut pos = if bytes.starts_with(HEADER.as_bytes()) {
        HEADER.len()
    } else {
        0
    };
    let mut end = bytes.len();
    while end > pos && (bytes[end - 1] == b'\n' || bytes[end - 1] == b'\r') {
        end -= 1;
    }
    let bytes = &bytes[..end];
    if pos >= bytes.len() {
        return Err(err(pos, "empty graph6 line"));
    }

    let n = if bytes[pos] == b'~' {
        if bytes.get(pos + 1) == Some(&b'~') {
            let mut n = 0;
            for i in 0..6 {
                n = n << 6 | group(bytes, pos + 2 + i)?;
            }
            pos += 8;
            n
        } else {
            let mut n = 0;
            for i in 0..3 {
                n = n << 6 | group(bytes, pos + 1 + i)?;
            }
            pos += 4;
            n
        }
    } else {
        let n = group(bytes, pos)?;
        pos += 1;
        n
    };
    if n > MAX_VERTICES as u64 {
        return Err(Error::TooManyVertices {
            n: n as usize,
            max: MAX_VERTICES,
        });
    }
    let n = n as usize;

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != expected {
        let at = pos + body.len().min(expected);
        return Err(err(
            at,
            format!("expected {expected} edge bytes for n = {n}, found {}", body.len()),
        ));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(pos + i, format!("byte {b:#04x} outside the graph6 range 63..=126")));
        }
    }
    if !bits.is_multiple_of(6) {
        let last = body[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(pos + expected - 1, "nonzero padding bits"));
        }
    }

    let mut k = 0;
    Graph::from_fn(n, |_, _| {
        let byte = body[k / 6] - 63;
        let bit = byte >> (5 - k % 6) & 1 == 1;
        k += 1;
        bit
    })
}

/// Parses every non-blank line of `text`.
pub fn parse_all(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse(l.trim_end()))
        .collect()
}
