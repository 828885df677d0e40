//! Text formats shared with the CLI: edge lists, graph6, metric matrices
//! (integer or rational entries), and construction sequences. Parse errors
//! carry 1-based line/column positions.

use num_rational::Ratio;
use thiserror::Error;

use crate::dh::{ConstructionSequence, ConstructionStep, DhError, StepKind};
use crate::graph::{Graph, GraphError};
use crate::metric::{integralize_rational, FiniteMetric, MetricError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    BadGraph { line: usize, source: GraphError },
    #[error("{0}")]
    BadMetric(MetricError),
    #[error("line {line}: {source}")]
    BadSequence { line: usize, source: DhError },
    #[error("input is empty")]
    Empty,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

/// Strips a '#' comment and surrounding whitespace; None if nothing is left.
fn significant(line: &str) -> Option<&str> {
    let body = line.split('#').next().unwrap_or("").trim();
    (!body.is_empty()).then_some(body)
}

fn parse_usize(token: &str, line: usize, column: usize, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| syntax(line, column, format!("expected {what}, found '{token}'")))
}

/// Column (1-based) of the k-th whitespace-separated token of `line`.
fn token_column(line: &str, k: usize) -> usize {
    line.split_whitespace()
        .nth(k)
        .and_then(|tok| line.find(tok))
        .map_or(1, |pos| pos + 1)
}

/// Edge-list format: a "n m" header line, then m lines "u v" with 0-based
/// endpoints. '#' starts a comment anywhere.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter_map(|(i, l)| significant(l).map(|s| (i + 1, s, l)));
    let (header_no, header, raw) = lines.next().ok_or(ParseError::Empty)?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(syntax(header_no, 1, format!("expected header 'n m', found '{header}'")));
    }
    let n = parse_usize(tokens[0], header_no, token_column(raw, 0), "vertex count")?;
    let m = parse_usize(tokens[1], header_no, token_column(raw, 1), "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (line_no, body, raw) in lines {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(syntax(line_no, 1, format!("expected edge 'u v', found '{body}'")));
        }
        let u = parse_usize(tokens[0], line_no, token_column(raw, 0), "vertex")?;
        let v = parse_usize(tokens[1], line_no, token_column(raw, 1), "vertex")?;
        if u >= n || v >= n {
            return Err(syntax(
                line_no,
                1,
                format!("vertex out of range: edge ({u}, {v}) on {n} vertices"),
            ));
        }
        if u == v {
            return Err(syntax(line_no, 1, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(syntax(1, 1, format!("header promised {m} edges, found {}", edges.len())));
    }
    Graph::from_edge_list(n, &edges).map_err(|source| ParseError::BadGraph { line: 1, source })
}

/// Renders a graph in the edge-list format.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses one graph6 string (without trailing newline).
pub fn parse_graph6_line(line: &str) -> Result<Graph, ParseError> {
    parse_graph6_at(line, 1)
}

fn parse_graph6_at(line: &str, line_no: usize) -> Result<Graph, ParseError> {
    let body = line.strip_prefix(">>graph6<<").unwrap_or(line).trim();
    if body.is_empty() {
        return Err(ParseError::Empty);
    }
    let bytes: Vec<u8> = body.bytes().collect();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(syntax(
                line_no,
                i + 1,
                format!("invalid graph6 byte 0x{b:02x}; expected range 63..=126"),
            ));
        }
    }
    let sextets: Vec<u8> = bytes.iter().map(|&b| b - 63).collect();
    let (n, header_len) = if sextets[0] != 63 {
        (sextets[0] as usize, 1)
    } else if sextets.len() >= 4 && sextets[1] != 63 {
        (
            ((sextets[1] as usize) << 12) + ((sextets[2] as usize) << 6) + sextets[3] as usize,
            4,
        )
    } else if sextets.len() >= 8 {
        let mut v = 0usize;
        for &s in &sextets[2..8] {
            v = (v << 6) + s as usize;
        }
        (v, 8)
    } else {
        return Err(syntax(line_no, 1, "truncated graph6 size header"));
    };
    if n == 0 {
        return Err(ParseError::BadGraph { line: line_no, source: GraphError::NoVertices });
    }
    let bits_needed = n * (n - 1) / 2;
    let bytes_needed = header_len + bits_needed.div_ceil(6);
    if sextets.len() != bytes_needed {
        return Err(syntax(
            line_no,
            1,
            format!("graph6 on {n} vertices needs {bytes_needed} bytes, found {}", sextets.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut pos = 0usize;
    // column order: (0,1), (0,2), (1,2), (0,3), ...
    for j in 1..n {
        for i in 0..j {
            let sextet = sextets[header_len + pos / 6];
            if (sextet >> (5 - pos % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    Graph::from_edge_list(n, &edges).map_err(|source| ParseError::BadGraph { line: line_no, source })
}

/// Parses a file of graph6 strings, one per line.
pub fn parse_graph6_file(text: &str) -> Result<Vec<Graph>, ParseError> {
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        graphs.push(parse_graph6_at(line, i + 1)?);
    }
    if graphs.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(graphs)
}

/// Metric format: a line "n", then n rows of n entries, each an integer or
/// a rational "p/q". Rational inputs are scaled to the equivalent integral
/// metric (same lines) by the least common multiple of the denominators.
pub fn parse_metric(text: &str) -> Result<FiniteMetric, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter_map(|(i, l)| significant(l).map(|s| (i + 1, s, l)));
    let (header_no, header, _) = lines.next().ok_or(ParseError::Empty)?;
    let n = parse_usize(header, header_no, 1, "point count")?;
    let mut rows: Vec<Vec<Ratio<u64>>> = Vec::with_capacity(n);
    for _ in 0..n {
        let (line_no, body, raw) = lines.next().ok_or_else(|| {
            syntax(header_no, 1, format!("expected {n} matrix rows, found {}", rows.len()))
        })?;
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != n {
            return Err(syntax(
                line_no,
                1,
                format!("expected {n} entries, found {}", tokens.len()),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for (k, tok) in tokens.iter().enumerate() {
            row.push(parse_rational(tok, line_no, token_column(raw, k))?);
        }
        rows.push(row);
    }
    if let Some((line_no, body, _)) = lines.next() {
        return Err(syntax(line_no, 1, format!("unexpected trailing content '{body}'")));
    }
    integralize_rational(&rows).map_err(ParseError::BadMetric)
}

fn parse_rational(token: &str, line: usize, column: usize) -> Result<Ratio<u64>, ParseError> {
    if let Some((p, q)) = token.split_once('/') {
        let numer: u64 = p
            .parse()
            .map_err(|_| syntax(line, column, format!("bad rational numerator '{p}'")))?;
        let denom: u64 = q
            .parse()
            .map_err(|_| syntax(line, column, format!("bad rational denominator '{q}'")))?;
        if denom == 0 {
            return Err(syntax(line, column, "rational with zero denominator"));
        }
        Ok(Ratio::new(numer, denom))
    } else {
        let value: u64 = token
            .parse()
            .map_err(|_| syntax(line, column, format!("expected integer or 'p/q', found '{token}'")))?;
        Ok(Ratio::from_integer(value))
    }
}

/// Construction-sequence format: header "dh-seq v1 n=<count>", then one
/// step per line: "P new anchor", "F new anchor", or "T new anchor".
pub fn parse_construction_sequence(text: &str) -> Result<ConstructionSequence, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter_map(|(i, l)| significant(l).map(|s| (i + 1, s, l)));
    let (header_no, header, _) = lines.next().ok_or(ParseError::Empty)?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 || tokens[0] != "dh-seq" || tokens[1] != "v1" {
        return Err(syntax(header_no, 1, format!("expected header 'dh-seq v1 n=<count>', found '{header}'")));
    }
    let n = tokens[2]
        .strip_prefix("n=")
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| syntax(header_no, 1, format!("bad vertex count '{}'", tokens[2])))?;
    if n == 0 {
        return Err(syntax(header_no, 1, "vertex count must be at least 1"));
    }
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    for (line_no, body, raw) in lines {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(syntax(line_no, 1, format!("expected 'P|F|T new anchor', found '{body}'")));
        }
        let kind = match tokens[0] {
            "P" => StepKind::Pendant,
            "F" => StepKind::FalseTwin,
            "T" => StepKind::TrueTwin,
            other => {
                return Err(syntax(line_no, 1, format!("unknown step kind '{other}'")));
            }
        };
        let new_vertex = parse_usize(tokens[1], line_no, token_column(raw, 1), "new vertex")?;
        let anchor = parse_usize(tokens[2], line_no, token_column(raw, 2), "anchor vertex")?;
        steps.push(ConstructionStep { kind, new_vertex, anchor });
    }
    if steps.len() + 1 != n {
        return Err(syntax(
            1,
            1,
            format!("header promised {} steps for n={n}, found {}", n - 1, steps.len()),
        ));
    }
    ConstructionSequence::new(steps).map_err(|source| ParseError::BadSequence { line: 1, source })
}

/// Renders a construction sequence in the dh-seq format.
pub fn format_construction_sequence(seq: &ConstructionSequence) -> String {
    let mut out = format!("dh-seq v1 n={}\n", seq.vertex_count());
    for step in seq.steps() {
        let tag = match step.kind {
            StepKind::Pendant => 'P',
            StepKind::FalseTwin => 'F',
            StepKind::TrueTwin => 'T',
        };
        out.push_str(&format!("{tag} {} {}\n", step.new_vertex, step.anchor));
    }
    out
}

/// An input that may be a graph or a metric space.
#[derive(Debug, Clone)]
pub enum ParsedInput {
    Graph(Graph),
    Metric(FiniteMetric),
}

/// What the detector decided and why.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectedFormat {
    EdgeList,
    Metric,
    Graph6,
}

/// Auto-detects the input format: a two-integer first line is an edge-list
/// header, a single integer starts a metric matrix, and a line in the
/// graph6 byte range is graph6. Digits sit below the graph6 range, so the
/// cases cannot collide; if they ever did, edge list would win.
pub fn detect_format(text: &str) -> Result<DetectedFormat, ParseError> {
    let first = text
        .lines()
        .find_map(significant)
        .ok_or(ParseError::Empty)?;
    let tokens: Vec<&str> = first.split_whitespace().collect();
    if tokens.len() == 2 && tokens.iter().all(|t| t.parse::<usize>().is_ok()) {
        return Ok(DetectedFormat::EdgeList);
    }
    if tokens.len() == 1 && tokens[0].parse::<usize>().is_ok() {
        return Ok(DetectedFormat::Metric);
    }
    let candidate = first.strip_prefix(">>graph6<<").unwrap_or(first);
    if !candidate.is_empty() && candidate.bytes().all(|b| (63..=126).contains(&b)) {
        return Ok(DetectedFormat::Graph6);
    }
    Err(syntax(1, 1, format!("unrecognized input format: '{first}'")))
}

/// Parses with auto-detection, returning the detected format alongside.
pub fn parse_auto(text: &str) -> Result<(ParsedInput, DetectedFormat), ParseError> {
    let format = detect_format(text)?;
    let parsed = match format {
        DetectedFormat::EdgeList => ParsedInput::Graph(parse_edge_list(text)?),
        DetectedFormat::Metric => ParsedInput::Metric(parse_metric(text)?),
        DetectedFormat::Graph6 => {
            let graphs = parse_graph6_file(text)?;
            if graphs.len() != 1 {
                return Err(syntax(
                    1,
                    1,
                    format!("expected one graph, found {} graph6 lines", graphs.len()),
                ));
            }
            ParsedInput::Graph(graphs.into_iter().next().expect("one graph"))
        }
    };
    Ok((parsed, format))
}
