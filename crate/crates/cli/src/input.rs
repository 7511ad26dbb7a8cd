//! Parsers for the graph and point-stream file formats.
//!
//! Graph files: an `n m` header, then `m` lines `u v w` (0-indexed vertices,
//! integer weight >= 1). Point streams: lines `p x y` (add a point) or
//! `q x y` (query it), processed in order. In both, blank lines and text
//! after `#` are ignored.

use approx_veb::hull::Point;

use crate::CliError;

/// Edge list with the source line of every edge, for error messages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize, u64)>,
    pub lines: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    Point(Point),
    Query(Point),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn numbers<T: std::str::FromStr>(fields: &[&str]) -> Option<Vec<T>> {
    fields.iter().map(|f| f.parse().ok()).collect()
}

pub fn parse_graph(text: &str) -> Result<GraphFile, CliError> {
    let mut lines = content_lines(text);
    let (n, m) = match lines.next() {
        Some((_, fields)) => match numbers::<usize>(&fields).as_deref() {
            Some(&[n, m]) => (n, m),
            _ => return Err(CliError::parse(1, "expected 'n m'")),
        },
        None => return Err(CliError::parse(1, "expected 'n m'")),
    };
    let mut graph = GraphFile {
        n,
        edges: Vec::with_capacity(m),
        lines: Vec::with_capacity(m),
    };
    let mut last = 1;
    for (line, fields) in lines {
        last = line;
        let [u, v, w] = fields[..] else {
            return Err(CliError::parse(line, "expected 'u v w'"));
        };
        let (Ok(u), Ok(v), Ok(w)) = (u.parse::<usize>(), v.parse::<usize>(), w.parse::<u64>()) else {
            return Err(CliError::parse(line, "expected 'u v w'"));
        };
        if graph.edges.len() == m {
            return Err(CliError::parse(line, &format!("more than {m} edges")));
        }
        if u >= n || v >= n {
            return Err(CliError::parse(line, &format!("vertex out of range for n = {n}")));
        }
        if w == 0 {
            return Err(CliError::parse(line, "weight must be at least 1"));
        }
        graph.edges.push((u, v, w));
        graph.lines.push(line);
    }
    if graph.edges.len() < m {
        return Err(CliError::parse(
            last,
            &format!("expected {m} edges, found {}", graph.edges.len()),
        ));
    }
    Ok(graph)
}

pub fn parse_stream(text: &str) -> Result<Vec<Event>, CliError> {
    content_lines(text)
        .map(|(line, fields)| {
            let bad = || CliError::parse(line, "expected 'p x y' or 'q x y'");
            let [kind, x, y] = fields[..] else {
                return Err(bad());
            };
            let (Ok(x), Ok(y)) = (x.parse::<i64>(), y.parse::<i64>()) else {
                return Err(bad());
            };
            let limit = approx_veb::hull::COORD_LIMIT;
            if x.abs() >= limit || y.abs() >= limit {
                return Err(CliError::parse(
                    line,
                    "coordinates must be below 2^30 in absolute value",
                ));
            }
            let p = Point::new(x, y);
            match kind {
                "p" => Ok(Event::Point(p)),
                "q" => Ok(Event::Query(p)),
                _ => Err(bad()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_with_comments() {
        let g = parse_graph("# triangle\n3 3\n0 1 1\n\n1 2 2 # heavy\n0 2 3\n").unwrap();
        assert_eq!(g.n, 3);
        assert_eq!(g.edges, vec![(0, 1, 1), (1, 2, 2), (0, 2, 3)]);
        assert_eq!(g.lines, vec![3, 5, 6]);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let err = |t: &str| parse_graph(t).unwrap_err().to_string();
        assert_eq!(err("3 3\n0 1 1\na b\n"), "line 3: expected 'u v w'");
        assert_eq!(err("3\n"), "line 1: expected 'n m'");
        assert_eq!(err(""), "line 1: expected 'n m'");
        assert_eq!(err("2 1\n0 1 0\n"), "line 2: weight must be at least 1");
        assert_eq!(err("2 1\n0 2 1\n"), "line 2: vertex out of range for n = 2");
        assert_eq!(err("2 2\n0 1 1\n"), "line 2: expected 2 edges, found 1");
        assert_eq!(err("2 1\n0 1 1\n1 0 1\n"), "line 3: more than 1 edges");
    }

    #[test]
    fn stream_events() {
        let s = parse_stream("p 0 0\nq -1 2\n# done\n").unwrap();
        assert_eq!(s, vec![Event::Point(Point::new(0, 0)), Event::Query(Point::new(-1, 2))]);
        assert_eq!(
            parse_stream("p 1\n").unwrap_err().to_string(),
            "line 1: expected 'p x y' or 'q x y'"
        );
        assert!(parse_stream("p 1073741824 0\n").is_err());
    }
}
