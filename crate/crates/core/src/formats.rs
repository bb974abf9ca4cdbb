//! Line-oriented text formats for sequence and labeled-graph datasets.
//!
//! Lines starting with `#` are comments and blank lines are skipped. Reals
//! are written in shortest round-trip form, so reading back what was written
//! reproduces every value exactly.
//!
//! Sequence records, one per line:
//!
//! ```text
//! <label> <length> <x_1 ... x_(length*dim)>
//! ```
//!
//! Graph records:
//!
//! ```text
//! graph <id> <class> <directed 0|1> <n>
//! <n vertex-label lines>
//! edges <m>
//! <m lines: src dst label...>
//! ```

use std::fmt::Write as _;

use crate::classify::LabeledDataset;
use crate::error::{Error, Result};
use crate::graphs::{Edge, LabeledGraph};
use crate::measures::{Point, Sequence};

fn push_reals(out: &mut String, values: &[f64]) {
    for v in values {
        write!(out, " {v}").expect("writing to a String");
    }
}

/// Serializes sequences; `header` lines are emitted as comments first.
pub fn write_sequences(data: &LabeledDataset<Sequence>, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        writeln!(out, "# {line}").expect("writing to a String");
    }
    for (s, label) in data.iter() {
        write!(out, "{label} {}", s.len()).expect("writing to a String");
        for item in s.items() {
            push_reals(&mut out, item.coords());
        }
        out.push('\n');
    }
    out
}

pub fn write_graphs(data: &LabeledDataset<LabeledGraph>, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        writeln!(out, "# {line}").expect("writing to a String");
    }
    for (id, (g, label)) in data.iter().enumerate() {
        writeln!(out, "graph {id} {label} {} {}", u8::from(g.is_directed()), g.order()).expect("writing to a String");
        for v in g.vertex_labels() {
            let mut line = String::new();
            push_reals(&mut line, v.coords());
            writeln!(out, "{}", line.trim_start()).expect("writing to a String");
        }
        writeln!(out, "edges {}", g.size()).expect("writing to a String");
        for e in g.edges() {
            write!(out, "{} {}", e.source, e.target).expect("writing to a String");
            push_reals(&mut out, e.label.coords());
            out.push('\n');
        }
    }
    out
}

/// Content lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{token}`")))
}

fn parse_point(line: usize, tokens: &[&str]) -> Result<Point> {
    let coords = tokens
        .iter()
        .map(|t| parse_num::<f64>(line, t, "a real number"))
        .collect::<Result<Vec<_>>>()?;
    Point::new(coords).map_err(|e| parse_err(line, e.to_string()))
}

pub fn read_sequences(text: &str) -> Result<LabeledDataset<Sequence>> {
    let mut samples = Vec::new();
    let mut labels = Vec::new();
    for (line, content) in records(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() < 3 {
            return Err(parse_err(line, "expected `<label> <length> <values...>`"));
        }
        let length: usize = parse_num(line, tokens[1], "a sequence length")?;
        let values = &tokens[2..];
        if length == 0 || !values.len().is_multiple_of(length) {
            return Err(parse_err(
                line,
                format!("{} values do not split into {length} items", values.len()),
            ));
        }
        let dim = values.len() / length;
        let items = values
            .chunks(dim)
            .map(|chunk| parse_point(line, chunk))
            .collect::<Result<Vec<_>>>()?;
        samples.push(Sequence::new(items).map_err(|e| parse_err(line, e.to_string()))?);
        labels.push(tokens[0].to_owned());
    }
    LabeledDataset::new(samples, labels)
}

pub fn read_graphs(text: &str) -> Result<LabeledDataset<LabeledGraph>> {
    let mut lines = records(text);
    let mut graphs = Vec::new();
    let mut labels = Vec::new();
    let mut last_line = 0;

    let mut next = |expect: &str| -> Result<(usize, Vec<&str>)> {
        match lines.next() {
            Some((line, content)) => {
                last_line = line;
                Ok((line, content.split_whitespace().collect()))
            }
            None => Err(parse_err(last_line + 1, format!("unexpected end of input, expected {expect}"))),
        }
    };

    loop {
        let (line, head) = match next("a graph header") {
            Ok(h) => h,
            Err(_) => break,
        };
        if head.len() != 5 || head[0] != "graph" {
            return Err(parse_err(line, "expected `graph <id> <class> <directed> <n>`"));
        }
        let directed = match head[3] {
            "0" => false,
            "1" => true,
            other => return Err(parse_err(line, format!("directed flag must be 0 or 1, found `{other}`"))),
        };
        let header_line = line;
        let n: usize = parse_num(line, head[4], "a vertex count")?;
        let mut vertices = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, tokens) = next("a vertex label")?;
            vertices.push(parse_point(line, &tokens)?);
        }
        let (line, tokens) = next("an edge count")?;
        if tokens.len() != 2 || tokens[0] != "edges" {
            return Err(parse_err(line, "expected `edges <m>`"));
        }
        let m: usize = parse_num(line, tokens[1], "an edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, tokens) = next("an edge")?;
            if tokens.len() < 3 {
                return Err(parse_err(line, "expected `src dst label...`"));
            }
            edges.push(Edge {
                source: parse_num(line, tokens[0], "a vertex index")?,
                target: parse_num(line, tokens[1], "a vertex index")?,
                label: parse_point(line, &tokens[2..])?,
            });
        }
        graphs.push(LabeledGraph::new(vertices, edges, directed).map_err(|e| parse_err(header_line, e.to_string()))?);
        labels.push(head[2].to_owned());
    }
    LabeledDataset::new(graphs, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthgen::{gen_graph_instance, gen_sequences, GraphProblemSpec, SequenceProblemSpec};

    #[test]
    fn sequences_round_trip_exactly() {
        let spec = SequenceProblemSpec {
            per_class_count: 10,
            ..SequenceProblemSpec::hard(2)
        };
        let data = gen_sequences(&spec).unwrap();
        let text = write_sequences(&data, &["seed=2".to_owned()]);
        assert!(text.starts_with("# seed=2\n"));
        assert_eq!(read_sequences(&text).unwrap(), data);
    }

    #[test]
    fn graphs_round_trip_exactly() {
        let spec = GraphProblemSpec {
            per_set_count: 6,
            ..GraphProblemSpec::instance(9, 1)
        };
        let (train, _, _) = gen_graph_instance(&spec).unwrap();
        let text = write_graphs(&train, &[]);
        let back = read_graphs(&text).unwrap();
        assert_eq!(back, train);
        assert_eq!(write_graphs(&back, &[]), text);
    }

    #[test]
    fn hand_written_graph() {
        let text = "# toy\ngraph 0 a 1 2\n0.5 1\n0 0\nedges 1\n1 0 2.5\n\ngraph 1 b 0 1\n3 3\nedges 0\n";
        let data = read_graphs(text).unwrap();
        assert_eq!(data.labels(), ["a", "b"]);
        let g = &data.samples()[0];
        assert!(g.is_directed());
        assert_eq!(g.edge_label(1, 0).unwrap().coords(), &[2.5]);
        assert!(g.edge_label(0, 1).is_none());
        assert_eq!(data.samples()[1].order(), 1);
    }

    #[test]
    fn malformed_input_reports_line() {
        let cases = [
            ("a 2 1 2 3\n", 1),
            ("a 0 1\n", 1),
            ("a 1 x\n", 1),
        ];
        for (text, line) in cases {
            assert!(matches!(read_sequences(text), Err(Error::Parse { line: l, .. }) if l == line));
        }
        let graph_cases = [
            ("graph 0 a 2 1\n0\nedges 0\n", 1),
            ("graph 0 a 0 2\n0\n", 3),
            ("graph 0 a 0 2\n0\n1\nedges 1\n0 5 1\n", 1),
            ("graph 0 a 0 1\n0\nvertices 0\n", 3),
            ("nonsense\n", 1),
        ];
        for (text, line) in graph_cases {
            let err = read_graphs(text).unwrap_err();
            assert!(matches!(err, Error::Parse { line: l, .. } if l == line), "{text:?}: {err}");
        }
    }
}
