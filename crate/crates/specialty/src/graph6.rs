//! graph6 interchange format, bit-exact per the standard layout: a size
//! header followed by the upper triangle of the adjacency matrix in
//! column-major order, packed big-endian into 6-bit groups offset by 63.

use crate::graph::Graph;
use crate::Error;

/// Decode guard; far beyond every supported workflow.
const MAX_DECODE_VERTICES: u64 = 1 << 20;

/// Encodes a graph as a graph6 ASCII string. Uses the shortest valid size
/// header for the vertex count.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count() as u64;
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    } else {
        out.push('~');
        out.push('~');
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..g.vertex_count() {
        for i in 0..j {
            group = group << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push((group + 63) as char);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((group << (6 - filled)) + 63) as char);
    }
    out
}

fn bad(reason: impl Into<String>) -> Error {
    Error::Graph6 {
        reason: reason.into(),
    }
}

fn group_value(byte: u8) -> Result<u64, Error> {
    if (63..=126).contains(&byte) {
        Ok(u64::from(byte - 63))
    } else {
        Err(bad(format!("byte {byte:#04x} outside the printable range 63..=126")))
    }
}

/// Decodes a graph6 string. Rejects malformed size headers, wrong body
/// lengths, out-of-range bytes, and nonzero padding bits.
pub fn decode_graph6(s: &str) -> Result<Graph, Error> {
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(bad("empty input"));
    }
    let (n, header_len) = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            if bytes.len() < 8 {
                return Err(bad("truncated 8-byte size header"));
            }
            let mut n = 0u64;
            for &b in &bytes[2..8] {
                n = n << 6 | group_value(b)?;
            }
            (n, 8)
        } else {
            if bytes.len() < 4 {
                return Err(bad("truncated 4-byte size header"));
            }
            let mut n = 0u64;
            for &b in &bytes[1..4] {
                n = n << 6 | group_value(b)?;
            }
            (n, 4)
        }
    } else {
        (group_value(bytes[0])?, 1)
    };
    if n > MAX_DECODE_VERTICES {
        return Err(bad(format!("vertex count {n} exceeds the decode limit")));
    }
    let n = n as usize;
    let body = &bytes[header_len..];
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(bad(format!(
            "body holds {} bytes but {n} vertices need exactly {expected}",
            body.len()
        )));
    }
    let mut g = Graph::new(n);
    let mut k = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let b = group_value(body[k / 6])?;
            if b >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            if k == nbits {
                break 'outer;
            }
        }
    }
    if nbits % 6 != 0 {
        let last = group_value(body[expected - 1])?;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(bad("nonzero padding bits after the adjacency data"));
        }
    }
    Ok(g)
}
