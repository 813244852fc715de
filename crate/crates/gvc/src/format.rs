//! Line-oriented instance files.
//!
//! ```text
//! # paper triangle
//! p gvc 3 3 gvc
//! v 1 1
//! v 2 1
//! v 3 1
//! e 1 2 inf 0 2
//! e 2 3 inf 0 3
//! e 1 3 inf 0 1
//! ```
//!
//! Vertices are numbered from 1 in files. `b <i> L|R` lines declare a
//! bipartition. UBQP files use `p ubqp <n>`, one `a <i> <value>` line per
//! variable and sparse `q <i> <j> <value>` lines (`i < j`, the entry `Q_ij`);
//! BQP01 files use `p bqp01 <m> <n>`, `a`/`b` lines for the two sides and
//! `q <i> <j> <value>` lines. A reduced file may end in `orientation negated`
//! and `offset <value>` lines.

use std::fmt::Write as _;

use gvc_core::{BipartitePartition, Bqp01Instance, GvcInstance, ProblemKind, Side, UbqpInstance};
use gvc_core::EdgeWeights;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: gvc_core::Error,
    },
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    Gvc {
        instance: GvcInstance,
        kind: ProblemKind,
        partition: Option<BipartitePartition>,
    },
    Ubqp(UbqpInstance),
    Bqp01(Bqp01Instance),
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub problem: Problem,
    /// `source = offset ± value` for a reduced instance.
    pub offset: Option<f64>,
    pub negated: bool,
}

impl InstanceFile {
    pub fn new(problem: Problem) -> Self {
        InstanceFile {
            problem,
            offset: None,
            negated: false,
        }
    }

    pub fn gvc(instance: GvcInstance, kind: ProblemKind) -> Self {
        Self::new(Problem::Gvc {
            instance,
            kind,
            partition: None,
        })
    }
}

/// Shortest round-trip decimal; integers without a decimal point, `-0` as `0`
/// and `+inf` as `inf`.
pub fn format_number(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_owned()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_owned()
    } else if x == 0.0 {
        "0".to_owned()
    } else {
        format!("{x}")
    }
}

fn parse_number(token: &str, line: usize) -> Result<f64, FormatError> {
    let lower = token.to_ascii_lowercase();
    let value = match lower.as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => f64::INFINITY,
        _ => token
            .parse::<f64>()
            .map_err(|_| parse_error(line, format!("`{token}` is not a number")))?,
    };
    if value.is_nan() || value == f64::NEG_INFINITY {
        return Err(parse_error(line, format!("`{token}` is not an admissible weight")));
    }
    if value.is_infinite() && !lower.contains("inf") {
        return Err(parse_error(line, format!("`{token}` overflows; write `inf` explicitly")));
    }
    Ok(value)
}

fn parse_finite(token: &str, line: usize) -> Result<f64, FormatError> {
    let v = parse_number(token, line)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(parse_error(line, format!("`{token}` must be finite here")))
    }
}

fn parse_count(token: &str, line: usize, what: &str) -> Result<usize, FormatError> {
    token
        .parse::<usize>()
        .map_err(|_| parse_error(line, format!("{what} `{token}` is not a nonnegative integer")))
}

/// A 1-based index in `1..=n`, returned 0-based.
fn parse_index(token: &str, line: usize, n: usize) -> Result<usize, FormatError> {
    let i = parse_count(token, line, "index")?;
    if i == 0 || i > n {
        return Err(parse_error(line, format!("index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

enum Header {
    Gvc { n: usize, m: usize, kind: ProblemKind },
    Ubqp { n: usize },
    Bqp01 { m: usize, n: usize },
}

/// Stores one value per index, rejecting duplicates.
struct Slots {
    values: Vec<Option<f64>>,
    what: &'static str,
}

impl Slots {
    fn new(len: usize, what: &'static str) -> Self {
        Slots {
            values: vec![None; len],
            what,
        }
    }

    fn set(&mut self, i: usize, v: f64, line: usize) -> Result<(), FormatError> {
        if self.values[i].replace(v).is_some() {
            return Err(parse_error(line, format!("{} {} given twice", self.what, i + 1)));
        }
        Ok(())
    }

    fn finish(self, line: usize) -> Result<Vec<f64>, FormatError> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| parse_error(line, format!("missing {} line for {}", self.what, i + 1))))
            .collect()
    }
}

fn expect_fields(fields: &[&str], count: usize, line: usize, shape: &str) -> Result<(), FormatError> {
    if fields.len() != count {
        return Err(parse_error(line, format!("expected `{shape}`")));
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<InstanceFile, FormatError> {
    let mut header: Option<(Header, usize)> = None;
    let mut costs = Slots::new(0, "v");
    let mut second = Slots::new(0, "b");
    let mut edges: Vec<(usize, usize, EdgeWeights)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut entries: Vec<(usize, usize, f64)> = Vec::new();
    let mut entry_lines: Vec<usize> = Vec::new();
    let mut sides: Vec<Option<Side>> = Vec::new();
    let mut offset = None;
    let mut negated = false;
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some(&tag) = fields.first() else {
            continue;
        };
        if offset.is_some() && tag != "orientation" {
            return Err(parse_error(line, "nothing may follow the offset line"));
        }
        if tag == "p" {
            if header.is_some() {
                return Err(parse_error(line, "second problem line"));
            }
            let h = match fields.get(1).copied() {
                Some("gvc") => {
                    expect_fields(&fields, 5, line, "p gvc <n> <m> <kind>")?;
                    let kind = ProblemKind::from_tag(fields[4])
                        .ok_or_else(|| parse_error(line, format!("unknown kind `{}`", fields[4])))?;
                    let n = parse_count(fields[2], line, "n")?;
                    costs = Slots::new(n, "v");
                    sides = vec![None; n];
                    Header::Gvc {
                        n,
                        m: parse_count(fields[3], line, "m")?,
                        kind,
                    }
                }
                Some("ubqp") => {
                    expect_fields(&fields, 3, line, "p ubqp <n>")?;
                    let n = parse_count(fields[2], line, "n")?;
                    costs = Slots::new(n, "a");
                    Header::Ubqp { n }
                }
                Some("bqp01") => {
                    expect_fields(&fields, 4, line, "p bqp01 <m> <n>")?;
                    let m = parse_count(fields[2], line, "m")?;
                    let n = parse_count(fields[3], line, "n")?;
                    costs = Slots::new(m, "a");
                    second = Slots::new(n, "b");
                    Header::Bqp01 { m, n }
                }
                other => {
                    return Err(parse_error(
                        line,
                        format!("unknown problem `{}`; expected gvc, ubqp or bqp01", other.unwrap_or("")),
                    ))
                }
            };
            header = Some((h, line));
            continue;
        }
        let Some((h, _)) = &header else {
            return Err(parse_error(line, "data before the problem line"));
        };
        match (h, tag) {
            (_, "offset") => {
                expect_fields(&fields, 2, line, "offset <value>")?;
                offset = Some(parse_finite(fields[1], line)?);
            }
            (_, "orientation") => {
                expect_fields(&fields, 2, line, "orientation same|negated")?;
                negated = match fields[1] {
                    "same" => false,
                    "negated" => true,
                    other => return Err(parse_error(line, format!("unknown orientation `{other}`"))),
                };
            }
            (Header::Gvc { n, .. }, "v") => {
                expect_fields(&fields, 3, line, "v <i> <cost>")?;
                let i = parse_index(fields[1], line, *n)?;
                costs.set(i, parse_finite(fields[2], line)?, line)?;
            }
            (Header::Gvc { n, .. }, "e") => {
                expect_fields(&fields, 6, line, "e <i> <j> <q0> <q1> <q2>")?;
                let i = parse_index(fields[1], line, *n)?;
                let j = parse_index(fields[2], line, *n)?;
                let w = EdgeWeights::new(
                    parse_number(fields[3], line)?,
                    parse_number(fields[4], line)?,
                    parse_number(fields[5], line)?,
                );
                edges.push((i, j, w));
                edge_lines.push(line);
            }
            (Header::Gvc { n, .. }, "b") => {
                expect_fields(&fields, 3, line, "b <i> L|R")?;
                let i = parse_index(fields[1], line, *n)?;
                let side = match fields[2] {
                    "L" | "l" => Side::Left,
                    "R" | "r" => Side::Right,
                    other => return Err(parse_error(line, format!("side `{other}` is not L or R"))),
                };
                if sides[i].replace(side).is_some() {
                    return Err(parse_error(line, format!("side of vertex {} given twice", i + 1)));
                }
            }
            (Header::Ubqp { n }, "a") => {
                expect_fields(&fields, 3, line, "a <i> <value>")?;
                let i = parse_index(fields[1], line, *n)?;
                costs.set(i, parse_finite(fields[2], line)?, line)?;
            }
            (Header::Ubqp { n }, "q") => {
                expect_fields(&fields, 4, line, "q <i> <j> <value>")?;
                let i = parse_index(fields[1], line, *n)?;
                let j = parse_index(fields[2], line, *n)?;
                entries.push((i, j, parse_finite(fields[3], line)?));
                entry_lines.push(line);
            }
            (Header::Bqp01 { m, .. }, "a") => {
                expect_fields(&fields, 3, line, "a <i> <value>")?;
                let i = parse_index(fields[1], line, *m)?;
                costs.set(i, parse_finite(fields[2], line)?, line)?;
            }
            (Header::Bqp01 { n, .. }, "b") => {
                expect_fields(&fields, 3, line, "b <j> <value>")?;
                let j = parse_index(fields[1], line, *n)?;
                second.set(j, parse_finite(fields[2], line)?, line)?;
            }
            (Header::Bqp01 { m, n }, "q") => {
                expect_fields(&fields, 4, line, "q <i> <j> <value>")?;
                let i = parse_index(fields[1], line, *m)?;
                let j = parse_index(fields[2], line, *n)?;
                entries.push((i, j, parse_finite(fields[3], line)?));
                entry_lines.push(line);
            }
            _ => return Err(parse_error(line, format!("unexpected `{tag}` line"))),
        }
    }

    let Some((h, header_line)) = header else {
        return Err(parse_error(last_line.max(1), "missing problem line"));
    };
    let end = last_line;
    // attributes a constructor error to the line of the offending item
    let locate = |err: gvc_core::Error, lines: &[usize], items: &dyn Fn(usize) -> (usize, usize)| {
        let culprit = match &err {
            gvc_core::Error::SelfLoop { vertex } => (0..lines.len()).find(|&k| items(k) == (*vertex, *vertex)),
            gvc_core::Error::DuplicateEdge { u, v } => (0..lines.len())
                .filter(|&k| {
                    let (a, b) = items(k);
                    (a.min(b), a.max(b)) == (*u, *v)
                })
                .nth(1),
            _ => None,
        };
        FormatError::Invalid {
            line: culprit.map_or(header_line, |k| lines[k]),
            source: err,
        }
    };

    let problem = match h {
        Header::Gvc { m, kind, .. } => {
            if edges.len() != m {
                return Err(parse_error(end, format!("header declares {m} edges, found {}", edges.len())));
            }
            let costs = costs.finish(end)?;
            let pairs: Vec<(usize, usize)> = edges.iter().map(|&(i, j, _)| (i, j)).collect();
            let instance = GvcInstance::new(costs, edges.iter().copied())
                .map_err(|e| locate(e, &edge_lines, &|k| pairs[k]))?;
            if let Err(err) = kind.check(&instance) {
                let line = match &err {
                    gvc_core::Error::KindMismatch { u, v, .. } => instance
                        .find_edge(*u, *v)
                        .map_or(header_line, |e| edge_lines[e]),
                    _ => header_line,
                };
                return Err(FormatError::Invalid { line, source: err });
            }
            let partition = if sides.iter().all(Option::is_none) {
                None
            } else {
                if let Some(i) = sides.iter().position(Option::is_none) {
                    return Err(parse_error(end, format!("vertex {} has no side", i + 1)));
                }
                let p = BipartitePartition::new(sides.into_iter().map(Option::unwrap).collect());
                p.validate(&instance)
                    .map_err(|e| FormatError::Invalid { line: end, source: e })?;
                Some(p)
            };
            Problem::Gvc {
                instance,
                kind,
                partition,
            }
        }
        Header::Ubqp { .. } => {
            let linear = costs.finish(end)?;
            let pairs: Vec<(usize, usize)> = entries.iter().map(|&(i, j, _)| (i, j)).collect();
            Problem::Ubqp(
                UbqpInstance::new(linear, entries.iter().copied())
                    .map_err(|e| locate(e, &entry_lines, &|k| pairs[k]))?,
            )
        }
        Header::Bqp01 { .. } => {
            let a = costs.finish(end)?;
            let b = second.finish(end)?;
            Problem::Bqp01(
                Bqp01Instance::new(a, b, entries.iter().copied())
                    .map_err(|e| FormatError::Invalid { line: header_line, source: e })?,
            )
        }
    };
    Ok(InstanceFile {
        problem,
        offset,
        negated,
    })
}

pub fn serialize(file: &InstanceFile) -> String {
    let mut out = String::new();
    let num = format_number;
    match &file.problem {
        Problem::Gvc {
            instance,
            kind,
            partition,
        } => {
            let _ = writeln!(
                out,
                "p gvc {} {} {}",
                instance.n(),
                instance.m(),
                kind.tag().to_ascii_lowercase()
            );
            for (i, &c) in instance.costs().iter().enumerate() {
                let _ = writeln!(out, "v {} {}", i + 1, num(c));
            }
            for e in instance.edges() {
                let w = e.weights;
                let _ = writeln!(
                    out,
                    "e {} {} {} {} {}",
                    e.u + 1,
                    e.v + 1,
                    num(w.q0),
                    num(w.q1),
                    num(w.q2)
                );
            }
            if let Some(p) = partition {
                for (i, side) in p.sides().iter().enumerate() {
                    let s = if *side == Side::Left { "L" } else { "R" };
                    let _ = writeln!(out, "b {} {s}", i + 1);
                }
            }
        }
        Problem::Ubqp(q) => {
            let _ = writeln!(out, "p ubqp {}", q.n());
            for (i, &a) in q.linear().iter().enumerate() {
                let _ = writeln!(out, "a {} {}", i + 1, num(a));
            }
            for &(i, j, v) in q.pairs() {
                let _ = writeln!(out, "q {} {} {}", i + 1, j + 1, num(v));
            }
        }
        Problem::Bqp01(q) => {
            let _ = writeln!(out, "p bqp01 {} {}", q.m(), q.n());
            for (i, &a) in q.a().iter().enumerate() {
                let _ = writeln!(out, "a {} {}", i + 1, num(a));
            }
            for (j, &b) in q.b().iter().enumerate() {
                let _ = writeln!(out, "b {} {}", j + 1, num(b));
            }
            for &(i, j, v) in q.entries() {
                let _ = writeln!(out, "q {} {} {}", i + 1, j + 1, num(v));
            }
        }
    }
    if let Some(offset) = file.offset {
        if file.negated {
            out.push_str("orientation negated\n");
        }
        let _ = writeln!(out, "offset {}", num(offset));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "\
# paper triangle
p gvc 3 3 gvc
v 1 1
v 2 1
v 3 1
e 1 2 inf 0 2
e 2 3 inf 0 3
e 1 3 inf 0 1
";

    #[test]
    fn triangle_round_trip() {
        let file = parse(TRIANGLE).unwrap();
        let Problem::Gvc { instance, kind, .. } = &file.problem else {
            panic!()
        };
        assert_eq!(*kind, ProblemKind::Gvc);
        assert_eq!(instance.edge(0).weights.q0, f64::INFINITY);
        let text = serialize(&file);
        assert_eq!(text, TRIANGLE.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
        assert_eq!(parse(&text).unwrap(), file);
    }

    #[test]
    fn numbers_are_shortest() {
        assert_eq!(format_number(4.0), "4");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(0.1), "0.1");
        assert_eq!(format_number(-2.5), "-2.5");
        assert_eq!(format_number(f64::INFINITY), "inf");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse("p gvc 2 1 gvc\nv 1 0\nv 2 0\ne 1 2 1 x 3\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 4, .. }), "{err}");
        let err = parse("p gvc 2 2 gvc\nv 1 0\nv 2 0\ne 1 2 1 1 1\ne 2 1 1 1 1\n").unwrap_err();
        assert!(matches!(err, FormatError::Invalid { line: 5, .. }), "{err}");
        let err = parse("p gvc 2 1 gvc2\nv 1 0\nv 2 0\ne 1 2 1 0 1\n").unwrap_err();
        assert!(matches!(err, FormatError::Invalid { line: 4, .. }), "{err}");
        let err = parse("p gvc 2 0 gvc\nv 1 0\n").unwrap_err();
        assert!(err.to_string().contains("missing v line for 2"), "{err}");
        assert!(parse("v 1 0\n").is_err());
        assert!(parse("p gvc 1 0 gvc\nv 1 nan\n").is_err());
        assert!(parse("p gvc 2 1 gvc\nv 1 0\nv 2 0\ne 1 2 -inf 0 0\n").is_err());
    }

    #[test]
    fn ubqp_and_bqp01_round_trip() {
        let text = "p ubqp 3\na 1 -1\na 2 0.5\na 3 0\nq 1 2 -2\nq 2 3 1.5\noffset 4\n";
        let file = parse(text).unwrap();
        assert_eq!(serialize(&file), text);
        let text = "p bqp01 2 1\na 1 1\na 2 -1\nb 1 3\nq 2 1 -4\norientation negated\noffset -2\n";
        let file = parse(text).unwrap();
        assert!(file.negated);
        assert_eq!(serialize(&file), text);
    }

    #[test]
    fn partition_lines() {
        let text = "p gvc 2 1 gvc\nv 1 0\nv 2 0\ne 1 2 5 3 2\nb 1 L\nb 2 R\n";
        let file = parse(text).unwrap();
        assert_eq!(serialize(&file), text);
        assert!(parse("p gvc 2 1 gvc\nv 1 0\nv 2 0\ne 1 2 5 3 2\nb 1 L\nb 2 L\n").is_err());
    }
}
