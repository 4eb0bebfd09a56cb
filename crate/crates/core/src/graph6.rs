//! graph6 encoding restricted to the single-byte size prefix (order <= 62).
//!
//! Byte 0 is `order + 63`. The upper triangle is read column by column,
//! x(0,1), x(0,2), x(1,2), x(0,3), ..., packed big-endian into 6-bit
//! groups, zero padded, each group offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_GRAPH6_ORDER: usize = 62;

pub fn encode(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_GRAPH6_ORDER {
        return Err(Error::UnsupportedSize(format!(
            "graph6 encoding supports order <= {MAX_GRAPH6_ORDER}, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push(n as u8 + 63);
    let mut group = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            group = (group << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn decode(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let fail = |offset: usize, reason: &str| Error::Format {
        offset,
        reason: reason.to_string(),
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(fail(i, &format!("byte 0x{b:02x} outside the printable range 63..=126")));
        }
    }
    let Some(&first) = bytes.first() else {
        return Err(fail(0, "empty input"));
    };
    if first == 126 {
        return Err(Error::UnsupportedSize(format!(
            "multi-byte graph6 size prefix (order > {MAX_GRAPH6_ORDER})"
        )));
    }
    let n = (first - 63) as usize;
    let slots = n * n.saturating_sub(1) / 2;
    let body_len = slots.div_ceil(6);
    if bytes.len() < 1 + body_len {
        return Err(fail(
            bytes.len(),
            &format!("expected {} body bytes for order {n}", body_len),
        ));
    }
    if bytes.len() > 1 + body_len {
        return Err(fail(1 + body_len, "trailing bytes after the adjacency data"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[1 + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if slots % 6 != 0 {
        let last = bytes[body_len] - 63;
        let pad = 6 - slots % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(fail(body_len, "non-zero padding bits"));
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hand encoder written from the bit layout, independent of `encode`.
    fn oracle_encode(n: usize, upper: &[(usize, usize)]) -> String {
        let mut bits = Vec::new();
        for v in 1..n {
            for u in 0..v {
                bits.push(upper.contains(&(u, v)));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        s.push((n as u8 + 63) as char);
        for chunk in bits.chunks(6) {
            let val = chunk.iter().fold(0u8, |acc, &b| acc * 2 + b as u8);
            s.push((val + 63) as char);
        }
        s
    }

    #[test]
    fn frozen_small_codes() {
        assert_eq!(oracle_encode(3, &[(0, 1), (0, 2), (1, 2)]), "Bw");
        assert_eq!(oracle_encode(3, &[(0, 1), (1, 2)]), "Bg");
        assert_eq!(oracle_encode(2, &[]), "A?");

        assert_eq!(encode(&Graph::complete(3)).unwrap(), "Bw");
        assert_eq!(encode(&Graph::path(3)).unwrap(), "Bg");
        assert_eq!(encode(&Graph::empty(2)).unwrap(), "A?");
        assert_eq!(decode("Bw").unwrap(), Graph::complete(3));
        assert_eq!(decode("Bg").unwrap(), Graph::path(3));
        assert_eq!(decode("A?").unwrap(), Graph::empty(2));
    }

    #[test]
    fn matches_oracle_on_larger_graphs() {
        let p = Graph::petersen();
        let edges: Vec<_> = p.edges().collect();
        assert_eq!(encode(&p).unwrap(), oracle_encode(10, &edges));
        let big = Graph::cycle(62).unwrap();
        let edges: Vec<_> = big.edges().collect();
        assert_eq!(encode(&big).unwrap(), oracle_encode(62, &edges));
        assert_eq!(decode(&encode(&big).unwrap()).unwrap(), big);
    }

    #[test]
    fn errors_name_offsets() {
        assert!(matches!(decode("B"), Err(Error::Format { offset: 1, .. })));
        assert!(matches!(decode("Bww"), Err(Error::Format { offset: 2, .. })));
        assert!(matches!(decode("B\u{1}"), Err(Error::Format { offset: 1, .. })));
        assert!(matches!(decode(""), Err(Error::Format { offset: 0, .. })));
        // 3 slots used of 6: low padding bits must be zero
        assert!(matches!(decode("B@"), Err(Error::Format { offset: 1, .. })));
        assert!(matches!(encode(&Graph::empty(63)), Err(Error::UnsupportedSize(_))));
        assert!(matches!(decode("~"), Err(Error::UnsupportedSize(_))));
    }
}
