//! graph6 encoding (see `formats.txt` in the nauty distribution).
//!
//! The vertex count is `n + 63` for `n <= 62` and `126` followed by three
//! 6-bit groups otherwise. The upper triangle follows in column-major order
//! `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed six bits per byte, most
//! significant bit first, each byte offset by 63. Trailing bits are zero.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        let col = g.row(j);
        for i in 0..j {
            acc = acc << 1 | (col >> i & 1) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    // Every byte is in 63..=126.
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn malformed(offset: usize, reason: impl Into<String>) -> Error {
    Error::MalformedGraph6 {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 string. An optional `>>graph6<<` header and trailing
/// line terminators are accepted.
pub fn decode(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let mut pos = if s.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };
    let mut end = bytes.len();
    while end > pos && (bytes[end - 1] == b'\n' || bytes[end - 1] == b'\r') {
        end -= 1;
    }
    let bytes = &bytes[..end];
    if let Some(i) = (pos..bytes.len()).find(|&i| !(63..=126).contains(&bytes[i])) {
        return Err(malformed(
            i,
            format!("byte 0x{:02x} outside 63..=126", bytes[i]),
        ));
    }

    let group = |i: usize| -> Result<u64> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
            Some(&b) => Err(malformed(i, format!("byte 0x{b:02x} outside 63..=126"))),
            None => Err(malformed(i, "unexpected end of input")),
        }
    };

    let first = group(pos)?;
    let n = if first < 63 {
        pos += 1;
        first as usize
    } else {
        if bytes.get(pos + 1) == Some(&126) {
            return Err(malformed(
                pos + 1,
                "vertex counts above 258047 are not supported",
            ));
        }
        let mut n = 0usize;
        for i in 1..=3 {
            n = n << 6 | group(pos + i)? as usize;
        }
        pos += 4;
        n
    };
    if n > MAX_VERTICES {
        return Err(malformed(
            pos - 1,
            format!("{n} vertices exceeds the cap of {MAX_VERTICES}"),
        ));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos != nbytes {
        let at = pos + nbytes.min(bytes.len() - pos);
        return Err(malformed(
            at,
            format!(
                "expected {nbytes} edge bytes for n = {n}, found {}",
                bytes.len() - pos
            ),
        ));
    }

    let mut adj = vec![0u64; n];
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = group(pos + bit / 6)?;
            if byte >> (5 - bit % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = pos + nbytes - 1;
        let pad = 6 - nbits % 6;
        if group(last)? & ((1 << pad) - 1) != 0 {
            return Err(malformed(last, "nonzero padding bits"));
        }
    }
    Graph::from_rows(n, adj)
}

/// Decodes a newline-delimited graph6 stream, skipping blank lines.
/// Errors report the 1-based line number alongside the byte offset.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            decode(l.trim()).map_err(|e| match e {
                Error::MalformedGraph6 { offset, reason } => Error::MalformedGraph6 {
                    offset,
                    reason: format!("line {}: {reason}", i + 1),
                },
                other => other,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty, generalized_friendship, star};

    #[test]
    fn k2_by_hand() {
        // n = 2 -> 'A'; single bit x(0,1) = 1 -> 100000b = 32 -> '_'.
        assert_eq!(encode(&complete(2).unwrap()), "A_");
        assert_eq!(decode("A_").unwrap(), complete(2).unwrap());
    }

    #[test]
    fn small_fixtures() {
        // Hand-packed: C_4 as 0-1-2-3-0 gives bits 101101 -> 45 + 63 = 'l'.
        assert_eq!(encode(&cycle(4).unwrap()), "Cl");
        // K_{1,3} centered at 0 gives bits 110100 -> 52 + 63 = 's'.
        assert_eq!(encode(&star(3).unwrap()), "Cs");
        assert_eq!(encode(&empty(0).unwrap()), "?");
        assert_eq!(encode(&empty(1).unwrap()), "@");
        assert_eq!(encode(&complete(4).unwrap()), "C~");
    }

    #[test]
    fn round_trip_friendship() {
        let f = generalized_friendship(2, 2).unwrap();
        assert_eq!(decode(&encode(&f)).unwrap(), f);
    }

    #[test]
    fn long_form() {
        let g = cycle(64).unwrap();
        let s = encode(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63]);
        assert_eq!(decode(&s).unwrap(), g);
        let g = empty(63).unwrap();
        assert_eq!(decode(&encode(&g)).unwrap(), g);
    }

    #[test]
    fn header_and_newline() {
        assert_eq!(decode(">>graph6<<A_\n").unwrap(), complete(2).unwrap());
    }

    #[test]
    fn malformed_inputs() {
        match decode("garbage\x01") {
            Err(Error::MalformedGraph6 { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("expected malformed error, got {other:?}"),
        }
        assert!(matches!(
            decode(""),
            Err(Error::MalformedGraph6 { offset: 0, .. })
        ));
        assert!(matches!(
            decode("A"),
            Err(Error::MalformedGraph6 { offset: 1, .. })
        ));
        assert!(matches!(decode("A_?"), Err(Error::MalformedGraph6 { .. })));
        // Padding bit set: n = 2 has one data bit.
        assert!(matches!(
            decode("A`"),
            Err(Error::MalformedGraph6 { offset: 1, .. })
        ));
        assert!(matches!(
            decode("A\x7f"),
            Err(Error::MalformedGraph6 { offset: 1, .. })
        ));
    }

    #[test]
    fn stream() {
        let gs = decode_lines("A_\n\nCl\n").unwrap();
        assert_eq!(gs.len(), 2);
        let err = decode_lines("A_\nC").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }
}
