//! Text formats: edge lists, graph6, and the mop chord format.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mop::Mop;

/// Parses the "n m" + one-edge-per-line format. Duplicate edges collapse;
/// each collapsed duplicate is reported as a warning string.
pub fn parse_edge_list(text: &str) -> Result<(Graph, Vec<String>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty input".into(),
    })?;
    let mut it = header.split_whitespace();
    let n: u32 = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "expected vertex count".into(),
        })?;
    let m: usize = match it.next() {
        Some(t) => t.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: "expected edge count".into(),
        })?,
        None => 0,
    };

    let mut g = Graph::new(n);
    let mut warnings = Vec::new();
    let mut seen = 0usize;
    for (line_no, line) in lines {
        let mut it = line.split_whitespace();
        let parse_vertex = |tok: Option<&str>| -> Result<u32> {
            tok.and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse {
                line: line_no,
                msg: "expected edge 'u v'".into(),
            })
        };
        let u = parse_vertex(it.next())?;
        let v = parse_vertex(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: "trailing tokens after edge".into(),
            });
        }
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("vertex id out of range (n = {n})"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        if !g.add_edge(u, v).unwrap() {
            warnings.push(format!("line {line_no}: duplicate edge {u} {v} collapsed"));
        }
        seen += 1;
    }
    if m != 0 && seen != m {
        warnings.push(format!("header announced {m} edges, found {seen}"));
    }
    Ok((g, warnings))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn g6_size_bytes(n: u32) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else {
        // 63 <= n <= 258047: '~' then three 6-bit digits.
        vec![
            126,
            ((n >> 12) & 63) as u8 + 63,
            ((n >> 6) & 63) as u8 + 63,
            (n & 63) as u8 + 63,
        ]
    }
}

/// graph6 encoding: upper triangle of the adjacency matrix in column order,
/// packed 6 bits per printable byte with offset 63.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = g6_size_bytes(n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                bytes.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(bytes).unwrap()
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let err = |msg: &str| Error::Parse {
        line: 1,
        msg: msg.into(),
    };
    let bytes = s.trim_end().as_bytes();
    if bytes.is_empty() {
        return Err(err("empty graph6 input"));
    }
    let pos: usize;
    let n: u32 = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(err("truncated graph6 size header"));
        }
        if bytes[1] == 126 {
            return Err(err("graph6 sizes beyond 258047 are unsupported"));
        }
        let mut n = 0u32;
        for &b in &bytes[1..4] {
            if !(63..127).contains(&b) {
                return Err(err("invalid graph6 size byte"));
            }
            n = n << 6 | (b - 63) as u32;
        }
        pos = 4;
        n
    } else {
        if !(63..=125).contains(&bytes[0]) {
            return Err(err("invalid graph6 header byte"));
        }
        pos = 1;
        (bytes[0] - 63) as u32
    };

    let nbits = n as usize * (n as usize).saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos < nbytes {
        return Err(err("truncated graph6 bit stream"));
    }
    let mut g = Graph::new(n);
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + bit / 6];
            if !(63..127).contains(&byte) {
                return Err(err("invalid graph6 data byte"));
            }
            let b = (byte - 63) >> (5 - bit % 6) & 1;
            if b == 1 {
                g.add_edge(i, j).unwrap();
            }
            bit += 1;
            if bit == nbits {
                break 'outer;
            }
        }
    }
    Ok(g)
}

/// Mop text format: "mop n" then one "i j" chord per line.
pub fn parse_mop_text(text: &str) -> Result<Mop> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty input".into(),
    })?;
    let mut it = header.split_whitespace();
    if it.next() != Some("mop") {
        return Err(Error::Parse {
            line: line_no,
            msg: "expected 'mop n' header".into(),
        });
    }
    let n: u32 = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "expected vertex count after 'mop'".into(),
        })?;
    let mut chords = Vec::new();
    for (line_no, line) in lines {
        let mut it = line.split_whitespace();
        let mut next = || -> Result<u32> {
            it.next().and_then(|t| t.parse().ok()).ok_or(Error::Parse {
                line: line_no,
                msg: "expected chord 'i j'".into(),
            })
        };
        chords.push((next()?, next()?));
    }
    Mop::new(n, chords)
}

pub fn write_mop_text(m: &Mop) -> String {
    let mut out = format!("mop {}\n", m.n());
    for &(i, j) in m.chords() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}
