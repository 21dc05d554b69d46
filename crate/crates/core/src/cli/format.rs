//! Line-oriented instance and flip-sequence files.
//!
//! An instance file holds a point block followed by any number of named
//! triangulation and labelling blocks. Blank lines and `#` comments are
//! ignored.
//!
//! ```text
//! points
//! 0 0
//! 4 0
//! 2 3
//! end
//! triangulation T
//! 0 1
//! 0 2
//! 1 2
//! end
//! labelling A
//! 1 0 1
//! 2 0 2
//! 3 1 2
//! end
//! ```
//!
//! A labelling line is `label a b`; the edges of a labelling define its
//! triangulation. A sequence file starts with `flipseq v1` and an
//! `instance <sha256>` line naming the point set it was computed for,
//! followed by one `remove a-b insert c-d` event per line.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::geometry::{Edge, Point, PointSet};
use crate::triangulation::{FlipEvent, FlipSequence, Label, LabelledTriangulation, Triangulation};

/// A parse or validation failure pointing at a line (1-based; 0 for the
/// file as a whole).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub points: Arc<PointSet>,
    pub triangulations: BTreeMap<String, Triangulation>,
    pub labellings: BTreeMap<String, LabelledTriangulation>,
}

impl Instance {
    pub fn new(points: Arc<PointSet>) -> Self {
        Instance {
            points,
            triangulations: BTreeMap::new(),
            labellings: BTreeMap::new(),
        }
    }

    pub fn labelling(&self, name: &str) -> Result<&LabelledTriangulation, FormatError> {
        self.labellings
            .get(name)
            .ok_or_else(|| FormatError::at(0, format!("no labelling named {name:?}")))
    }

    /// Hex SHA-256 of the canonical point block.
    pub fn hash(&self) -> String {
        point_hash(&self.points)
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();

        let (first, head) = lines
            .next()
            .ok_or_else(|| FormatError::at(0, "empty instance file"))?;
        if head != "points" {
            return Err(FormatError::at(
                first,
                format!("expected `points`, found {head:?}"),
            ));
        }
        let mut coords = Vec::new();
        let mut closed = false;
        for (no, line) in lines.by_ref() {
            if line == "end" {
                closed = true;
                break;
            }
            let v = integers::<i64>(no, line, 2)?;
            coords.push((no, Point::new(v[0], v[1])));
        }
        if !closed {
            return Err(FormatError::at(0, "point block is missing `end`"));
        }
        let points = PointSet::new(coords.iter().map(|&(_, p)| p).collect()).map_err(|e| {
            let line = match e {
                crate::Error::DuplicatePoint(_, j) | crate::Error::Collinear(_, _, j) => {
                    coords[j].0
                }
                crate::Error::CoordinateOutOfRange { index, .. } => coords[index].0,
                _ => first,
            };
            FormatError::at(line, e.to_string())
        })?;
        let points = Arc::new(points);
        let mut inst = Instance::new(points.clone());

        while let Some((start, line)) = lines.next() {
            let mut words = line.split_whitespace();
            let kind = words.next().unwrap_or_default();
            let name = words
                .next()
                .ok_or_else(|| FormatError::at(start, format!("`{kind}` needs a name")))?
                .to_string();
            if words.next().is_some() {
                return Err(FormatError::at(start, "unexpected text after block name"));
            }
            let width = match kind {
                "triangulation" => 2,
                "labelling" => 3,
                other => return Err(FormatError::at(start, format!("unknown block {other:?}"))),
            };
            let mut rows = Vec::new();
            let mut closed = false;
            for (no, line) in lines.by_ref() {
                if line == "end" {
                    closed = true;
                    break;
                }
                rows.push((no, integers::<u64>(no, line, width)?));
            }
            if !closed {
                return Err(FormatError::at(
                    start,
                    format!("block {name:?} is missing `end`"),
                ));
            }
            let edge = |no: usize, a: u64, b: u64| -> Result<Edge, FormatError> {
                if a == b {
                    return Err(FormatError::at(no, "edge endpoints coincide"));
                }
                let e = Edge::new(a as usize, b as usize);
                points
                    .check_edge(e)
                    .map_err(|err| FormatError::at(no, err.to_string()))?;
                Ok(e)
            };
            if kind == "triangulation" {
                if inst.triangulations.contains_key(&name) {
                    return Err(FormatError::at(
                        start,
                        format!("duplicate triangulation {name:?}"),
                    ));
                }
                let mut edges = Vec::new();
                for (no, v) in &rows {
                    edges.push(edge(*no, v[0], v[1])?);
                }
                let t = Triangulation::new(points.clone(), edges)
                    .map_err(|e| FormatError::at(start, format!("triangulation {name:?}: {e}")))?;
                inst.triangulations.insert(name, t);
            } else {
                if inst.labellings.contains_key(&name) {
                    return Err(FormatError::at(
                        start,
                        format!("duplicate labelling {name:?}"),
                    ));
                }
                let mut labels = BTreeMap::new();
                for (no, v) in &rows {
                    let e = edge(*no, v[1], v[2])?;
                    let m = points.triangulation_size() as u64;
                    if v[0] == 0 || v[0] > m {
                        return Err(FormatError::at(
                            *no,
                            format!("label {} outside 1..={m}", v[0]),
                        ));
                    }
                    let l = Label(v[0] as u32);
                    if labels.insert(e, l).is_some() {
                        return Err(FormatError::at(*no, format!("edge {e} labelled twice")));
                    }
                }
                let t = Triangulation::new(points.clone(), labels.keys().copied())
                    .map_err(|e| FormatError::at(start, format!("labelling {name:?}: {e}")))?;
                let lt = LabelledTriangulation::new(t, labels)
                    .map_err(|e| FormatError::at(start, format!("labelling {name:?}: {e}")))?;
                inst.labellings.insert(name, lt);
            }
        }
        Ok(inst)
    }

    pub fn to_text(&self) -> String {
        let mut out = points_block(&self.points);
        for (name, t) in &self.triangulations {
            writeln!(out, "triangulation {name}").unwrap();
            for e in t.edges() {
                writeln!(out, "{} {}", e.a(), e.b()).unwrap();
            }
            out.push_str("end\n");
        }
        for (name, lt) in &self.labellings {
            writeln!(out, "labelling {name}").unwrap();
            for (l, e) in lt.edges_by_label() {
                writeln!(out, "{l} {} {}", e.a(), e.b()).unwrap();
            }
            out.push_str("end\n");
        }
        out
    }
}

fn points_block(ps: &PointSet) -> String {
    let mut out = String::from("points\n");
    for p in ps.points() {
        writeln!(out, "{} {}", p.x, p.y).unwrap();
    }
    out.push_str("end\n");
    out
}

pub fn point_hash(ps: &PointSet) -> String {
    hex::encode(Sha256::digest(points_block(ps).as_bytes()))
}

fn integers<T: std::str::FromStr>(
    no: usize,
    line: &str,
    width: usize,
) -> Result<Vec<T>, FormatError> {
    let v: Vec<T> = line
        .split_whitespace()
        .map(|w| {
            w.parse::<T>()
                .map_err(|_| FormatError::at(no, format!("{w:?} is not a valid integer")))
        })
        .collect::<Result<_, _>>()?;
    if v.len() != width {
        return Err(FormatError::at(
            no,
            format!("expected {width} integers, found {}", v.len()),
        ));
    }
    Ok(v)
}

pub fn sequence_to_text(seq: &FlipSequence, instance_hash: &str) -> String {
    let mut out = format!("flipseq v1\ninstance {instance_hash}\n");
    for ev in seq {
        writeln!(out, "{ev}").unwrap();
    }
    out
}

/// Parses a sequence file, returning the recorded instance hash too.
pub fn parse_sequence(text: &str) -> Result<(String, FlipSequence), FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "flipseq v1")) => {}
        Some((no, other)) => {
            return Err(FormatError::at(
                no,
                format!("expected `flipseq v1`, found {other:?}"),
            ))
        }
        None => return Err(FormatError::at(0, "empty sequence file")),
    }
    let hash = match lines.next() {
        Some((no, line)) => match line.strip_prefix("instance ") {
            Some(h) => h.trim().to_string(),
            None => return Err(FormatError::at(no, "expected `instance <hash>`")),
        },
        None => return Err(FormatError::at(0, "sequence file has no instance line")),
    };
    let mut seq = FlipSequence::new();
    for (no, line) in lines {
        let w: Vec<&str> = line.split_whitespace().collect();
        if w.len() != 4 || w[0] != "remove" || w[2] != "insert" {
            return Err(FormatError::at(no, "expected `remove a-b insert c-d`"));
        }
        seq.push(FlipEvent::new(parse_edge(no, w[1])?, parse_edge(no, w[3])?));
    }
    Ok((hash, seq))
}

fn parse_edge(no: usize, word: &str) -> Result<Edge, FormatError> {
    let bad = || FormatError::at(no, format!("{word:?} is not an edge a-b"));
    let (a, b) = word.split_once('-').ok_or_else(bad)?;
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a == b {
        return Err(bad());
    }
    Ok(Edge::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "\
# a pentagon
points
0 0
4 0
5 3
2 5
-1 2
end
triangulation T
0 1
1 2
2 3
3 4
0 4
0 2
0 3
end
labelling A
1 0 1
2 1 2
3 2 3
4 3 4
5 0 4
6 0 2
7 0 3
end
";

    #[test]
    fn round_trip() {
        let inst = Instance::parse(TEXT).unwrap();
        assert_eq!(inst.points.len(), 5);
        assert_eq!(inst.triangulations["T"].len(), 7);
        assert_eq!(
            inst.labelling("A").unwrap().label_of(Edge::new(0, 3)),
            Some(Label(7))
        );
        let again = Instance::parse(&inst.to_text()).unwrap();
        assert_eq!(again, inst);
        assert_eq!(again.hash(), inst.hash());
    }

    #[test]
    fn errors_cite_lines() {
        let collinear = "points\n0 0\n1 1\n2 2\nend\n";
        assert_eq!(Instance::parse(collinear).unwrap_err().line, 4);
        let junk = TEXT.replace("5 3\n", "5 x\n");
        assert_eq!(Instance::parse(&junk).unwrap_err().line, 5);
        let bad_label = TEXT.replace("7 0 3", "9 0 3");
        assert_eq!(Instance::parse(&bad_label).unwrap_err().line, 25);
        let not_triangulation = TEXT.replace("3 2 3\n", "");
        assert_eq!(Instance::parse(&not_triangulation).unwrap_err().line, 18);
        let unknown = format!("{TEXT}polygon P\nend\n");
        assert!(Instance::parse(&unknown)
            .unwrap_err()
            .message
            .contains("unknown block"));
    }

    #[test]
    fn sequence_round_trip() {
        let seq: FlipSequence = [
            FlipEvent::new(Edge::new(0, 2), Edge::new(1, 3)),
            FlipEvent::new(Edge::new(0, 3), Edge::new(1, 4)),
        ]
        .into_iter()
        .collect();
        let text = sequence_to_text(&seq, "abc");
        assert_eq!(parse_sequence(&text).unwrap(), ("abc".to_string(), seq));
        assert_eq!(
            parse_sequence("flipseq v1\ninstance x\nremove 0-2\n")
                .unwrap_err()
                .line,
            3
        );
    }
}
