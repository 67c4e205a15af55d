//! The `.tg` text format.
//!
//! ```text
//! # comment
//! n tau
//! u v t [w]
//! ```

use std::collections::HashSet;
use std::io::Read;

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph};
use crate::scalar::Weight;

pub fn parse_temporal_graph<W: Weight>(text: &str) -> Result<TemporalGraph<W>> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut weights: Vec<W> = Vec::new();
    let mut weighted: Option<bool> = None;
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some((n, tau)) = header else {
            if fields.len() != 2 {
                return Err(Error::parse(line_no, "header must be `n tau`"));
            }
            let n = parse_int(fields[0], line_no, "vertex count")?;
            let tau = parse_int(fields[1], line_no, "lifetime")?;
            if tau == 0 {
                return Err(Error::parse(line_no, "lifetime must be positive"));
            }
            header = Some((n, tau));
            continue;
        };
        if fields.len() != 3 && fields.len() != 4 {
            return Err(Error::parse(
                line_no,
                "edge line must be `u v t` or `u v t w`",
            ));
        }
        let u = parse_int(fields[0], line_no, "vertex")?;
        let v = parse_int(fields[1], line_no, "vertex")?;
        let t = parse_int(fields[2], line_no, "time stamp")?;
        if u >= n || v >= n {
            return Err(Error::parse(
                line_no,
                format!("vertex id {} not below n={}", u.max(v), n),
            ));
        }
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
        }
        if t == 0 || t > tau {
            return Err(Error::parse(
                line_no,
                format!("time stamp {t} outside 1..{tau}"),
            ));
        }
        let has_w = fields.len() == 4;
        match weighted {
            None => weighted = Some(has_w),
            Some(w) if w != has_w => {
                return Err(Error::parse(
                    line_no,
                    "either every edge has a weight or none does",
                ));
            }
            _ => {}
        }
        if has_w {
            let w = W::parse_decimal(fields[3])
                .ok_or_else(|| Error::parse(line_no, format!("bad weight `{}`", fields[3])))?;
            if w < W::zero() {
                return Err(Error::parse(line_no, "weight must be nonnegative"));
            }
            weights.push(w);
        }
        let e = TemporalEdge::new(u, v, t);
        if !seen.insert(e) {
            return Err(Error::parse(
                line_no,
                format!("duplicate temporal edge {} {} {}", e.u, e.v, e.t),
            ));
        }
        edges.push((u, v, t));
    }
    let (n, tau) = header.ok_or_else(|| Error::parse(0, "missing `n tau` header"))?;
    if weighted == Some(true) {
        TemporalGraph::with_weights(n, tau, edges.into_iter().zip(weights))
    } else {
        TemporalGraph::new(n, tau, edges)
    }
}

pub fn read_temporal_graph<W: Weight, R: Read>(mut reader: R) -> Result<TemporalGraph<W>> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| Error::parse(0, format!("read failed: {e}")))?;
    parse_temporal_graph(&text)
}

/// Serializes with edges sorted by `(t, u, v)`.
pub fn write_temporal_graph<W: Weight>(g: &TemporalGraph<W>) -> String {
    let mut out = format!("{} {}\n", g.n(), g.tau());
    for (i, e) in g.edges().iter().enumerate() {
        match g.weights() {
            Some(ws) => out.push_str(&format!("{} {} {} {}\n", e.u, e.v, e.t, ws[i].to_decimal())),
            None => out.push_str(&format!("{} {} {}\n", e.u, e.v, e.t)),
        }
    }
    out
}

fn parse_int(s: &str, line: usize, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{s}`")))
}
