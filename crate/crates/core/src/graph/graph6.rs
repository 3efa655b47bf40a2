//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix, column by column, packed into 6-bit groups offset by 63.

use thiserror::Error;

use super::{Graph, MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("byte {0:#04x} outside the graph6 range 63..=126")]
    InvalidByte(u8),
    #[error("vertex count {0} outside 1..=64")]
    OrderOutOfRange(usize),
    #[error("expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("padding bits after the adjacency data are not zero")]
    NonzeroPadding,
}

const BIAS: u8 = 63;

fn data_byte(b: u8) -> Result<u8, Graph6Error> {
    if (BIAS..=126).contains(&b) {
        Ok(b - BIAS)
    } else {
        Err(Graph6Error::InvalidByte(b))
    }
}

pub(super) fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let (&first, rest) = bytes.split_first().ok_or(Graph6Error::Empty)?;

    let (n, body) = if first == 126 {
        // 126 followed by three 6-bit groups; 126 126 would announce n > 258047
        if rest.len() < 3 || rest[0] == 126 {
            return Err(Graph6Error::MalformedHeader);
        }
        let mut n = 0usize;
        for &b in &rest[..3] {
            n = (n << 6) | usize::from(data_byte(b)?);
        }
        if n < 63 {
            return Err(Graph6Error::MalformedHeader);
        }
        (n, &rest[3..])
    } else {
        (usize::from(data_byte(first)?), rest)
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Graph6Error::OrderOutOfRange(n));
    }

    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::WrongLength {
            expected,
            found: body.len(),
        });
    }
    let groups = body
        .iter()
        .map(|&b| data_byte(b))
        .collect::<Result<Vec<_>, _>>()?;
    let bit = |k: usize| groups[k / 6] >> (5 - k % 6) & 1 == 1;

    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
            k += 1;
        }
    }
    if (nbits..expected * 6).any(bit) {
        return Err(Graph6Error::NonzeroPadding);
    }
    Ok(Graph::from_adjacency_bits(&adj).expect("order already validated"))
}

pub(super) fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
