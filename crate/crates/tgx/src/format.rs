//! Line-oriented text formats.
//!
//! * `TG1` temporal graph: header `TG1 <n> <T> <directed:0|1>`, then `<t> <u> <v>` per
//!   active edge instance, in any order.
//! * `TW1` temporal walk: header `TW1 <start>`, then `<t> <u> <v>` per step, in step order.
//! * `RT1` routes: header `RT1 <n> <num-routes>`, then per route `ROUTE <L>` followed by
//!   `<offset> <u> <v>` lines with strictly increasing offsets, the last equal to `L`.
//! * `SQ1` sequential schedule: header `SQ1 <n>`, then one line `<v>: <u1> <u2> ...` per
//!   vertex listing the sources of its in-edges in permutation order.
//!
//! Lines starting with `#` and blank lines are ignored. Numbers are ASCII decimal.

use std::fmt::Write as _;

use tgx_core::classes::{Route, SequentialSchedule};
use tgx_core::{Edge, TemporalGraph, TemporalGraphBuilder, TemporalWalk};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[usize; N], FormatError> {
    if fields.len() != N {
        return Err(err(line, format!("expected {N} fields, found {}", fields.len())));
    }
    let mut out = [0; N];
    for (slot, field) in out.iter_mut().zip(fields) {
        *slot = field
            .parse()
            .map_err(|_| err(line, format!("`{field}` is not a non-negative integer")))?;
    }
    Ok(out)
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    magic: &str,
) -> Result<(usize, Vec<&'a str>), FormatError> {
    let (line, text) = lines.next().ok_or_else(|| err(1, format!("missing `{magic}` header")))?;
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.first() != Some(&magic) {
        return Err(err(line, format!("expected `{magic}` header")));
    }
    Ok((line, fields[1..].to_vec()))
}

fn check_vertex(line: usize, v: usize, n: usize) -> Result<(), FormatError> {
    if v >= n {
        return Err(err(line, format!("vertex {v} out of range for n={n}")));
    }
    Ok(())
}

pub fn parse_tg1(text: &str) -> Result<TemporalGraph, FormatError> {
    let mut lines = content_lines(text);
    let (hline, fields) = header(&mut lines, "TG1")?;
    let [n, lifetime, directed] = numbers::<3>(hline, &fields)?;
    if n == 0 || lifetime == 0 {
        return Err(err(hline, "n and T must be at least 1"));
    }
    if directed > 1 {
        return Err(err(hline, "directed flag must be 0 or 1"));
    }
    let mut b = TemporalGraphBuilder::new(n, lifetime, directed == 1).allow_self_loops(true);
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [t, u, v] = numbers::<3>(line, &fields)?;
        if t == 0 || t > lifetime {
            return Err(err(line, format!("timestep {t} outside [1, {lifetime}]")));
        }
        check_vertex(line, u, n)?;
        check_vertex(line, v, n)?;
        b.add(t, u, v);
    }
    b.build().map_err(|e| err(hline, e.to_string()))
}

pub fn write_tg1(g: &TemporalGraph) -> String {
    let mut out = format!("TG1 {} {} {}\n", g.n(), g.lifetime(), u8::from(g.is_directed()));
    for (t, edges) in g.snapshots() {
        for e in edges {
            let _ = writeln!(out, "{t} {} {}", e.u, e.v);
        }
    }
    out
}

pub fn parse_tw1(text: &str) -> Result<TemporalWalk, FormatError> {
    let mut lines = content_lines(text);
    let (hline, fields) = header(&mut lines, "TW1")?;
    let [start] = numbers::<1>(hline, &fields)?;
    let mut tw = TemporalWalk::new(start);
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [t, u, v] = numbers::<3>(line, &fields)?;
        tw.push(Edge::new(u, v), t);
    }
    Ok(tw)
}

pub fn write_tw1(tw: &TemporalWalk) -> String {
    let mut out = format!("TW1 {}\n", tw.start);
    for s in &tw.steps {
        let _ = writeln!(out, "{} {} {}", s.t, s.edge.u, s.edge.v);
    }
    out
}

/// Parses routes and returns `(n, routes)`.
pub fn parse_rt1(text: &str) -> Result<(usize, Vec<Route>), FormatError> {
    let mut lines = content_lines(text).peekable();
    let (hline, fields) = header(&mut lines, "RT1")?;
    let [n, count] = numbers::<2>(hline, &fields)?;
    let mut routes = Vec::with_capacity(count);
    while let Some((line, text)) = lines.next() {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.first() != Some(&"ROUTE") {
            return Err(err(line, "expected `ROUTE <L>`"));
        }
        let [period] = numbers::<1>(line, &fields[1..])?;
        let mut steps = Vec::new();
        while let Some(&(sline, stext)) = lines.peek() {
            if stext.starts_with("ROUTE") {
                break;
            }
            lines.next();
            let fields: Vec<&str> = stext.split_whitespace().collect();
            let [offset, u, v] = numbers::<3>(sline, &fields)?;
            check_vertex(sline, u, n)?;
            check_vertex(sline, v, n)?;
            if let Some(&(last, _)) = steps.last() {
                if offset <= last {
                    return Err(err(sline, format!("offset {offset} does not increase past {last}")));
                }
            }
            steps.push((offset, Edge::new(u, v)));
        }
        match steps.last() {
            None => return Err(err(line, "route has no steps")),
            Some(&(last, _)) if last != period => {
                return Err(err(line, format!("route period {period} differs from final offset {last}")))
            }
            _ => {}
        }
        routes.push(Route::new(steps).map_err(|e| err(line, e.to_string()))?);
    }
    if routes.len() != count {
        return Err(err(hline, format!("header announces {count} routes, found {}", routes.len())));
    }
    Ok((n, routes))
}

pub fn write_rt1(n: usize, routes: &[Route]) -> String {
    let mut out = format!("RT1 {n} {}\n", routes.len());
    for r in routes {
        let _ = writeln!(out, "ROUTE {}", r.period());
        for s in r.steps() {
            let _ = writeln!(out, "{} {} {}", s.t, s.edge.u, s.edge.v);
        }
    }
    out
}

pub fn parse_sq1(text: &str) -> Result<SequentialSchedule, FormatError> {
    let mut lines = content_lines(text);
    let (hline, fields) = header(&mut lines, "SQ1")?;
    let [n] = numbers::<1>(hline, &fields)?;
    let mut perms: Vec<Option<Vec<Edge>>> = vec![None; n];
    for (line, text) in lines {
        let (head, rest) = text
            .split_once(':')
            .ok_or_else(|| err(line, "expected `<v>: <u1> <u2> ...`"))?;
        let [v] = numbers::<1>(line, &[head.trim()])?;
        check_vertex(line, v, n)?;
        if perms[v].is_some() {
            return Err(err(line, format!("vertex {v} listed twice")));
        }
        let mut perm = Vec::new();
        for field in rest.split_whitespace() {
            let [u] = numbers::<1>(line, &[field])?;
            check_vertex(line, u, n)?;
            perm.push(Edge::new(u, v));
        }
        perms[v] = Some(perm);
    }
    let perms = perms
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| err(hline, format!("vertex {v} has no schedule line"))))
        .collect::<Result<_, _>>()?;
    Ok(SequentialSchedule { perms })
}

pub fn write_sq1(s: &SequentialSchedule) -> String {
    let mut out = format!("SQ1 {}\n", s.perms.len());
    for (v, perm) in s.perms.iter().enumerate() {
        let _ = write!(out, "{v}:");
        for e in perm {
            let _ = write!(out, " {}", e.u);
        }
        out.push('\n');
    }
    out
}
