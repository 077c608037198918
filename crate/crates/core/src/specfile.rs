//! Line-oriented shift specification format.
//!
//! ```text
//! # the even shift
//! name: even
//! alphabet: 0 1
//! type: sofic
//! state: A
//! state: B
//! edge: A 1 A
//! edge: A 0 B
//! edge: B 0 A
//! point: zeros L=0 C= O=0 R=0
//! ```
//!
//! `type` is one of `sofic`, `sft` (with `forbid:` lines listing words) or
//! `oracle:<name>` (with an optional `window:` bound).

use std::fmt::Write as _;
use std::path::Path;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::oracle::builtin_oracle;
use crate::point::BiSeq;
use crate::presentation::{Edge, Presentation};
use crate::shift::{Shift, ShiftKind};

#[derive(Clone, Debug)]
pub struct SpecFile {
    pub shift: Shift,
    pub points: Vec<(String, BiSeq)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Sofic,
    Sft,
    Oracle,
}

struct Line<'a> {
    number: usize,
    key: &'a str,
    value: &'a str,
    value_column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> Error {
    Error::Semantic {
        line,
        message: message.into(),
    }
}

/// Splits `value` into whitespace-separated tokens with 1-based columns.
fn tokens(value: &str, base_column: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in value.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((base_column + s, &value[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((base_column + s, &value[s..]));
    }
    out
}

fn split_lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let Some(colon) = content.find(':') else {
            return Err(parse_error(number, indent + 1, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(parse_error(
                number,
                indent + 1,
                format!("malformed key `{key}`"),
            ));
        }
        let rest = &content[colon + 1..];
        let lead = rest.len() - rest.trim_start().len();
        lines.push(Line {
            number,
            key,
            value: rest.trim(),
            value_column: colon + 2 + lead,
        });
    }
    Ok(lines)
}

impl SpecFile {
    pub fn from_path(path: impl AsRef<Path>) -> std::result::Result<Self, SpecLoadError> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Ok(Self::parse(&text)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines = split_lines(text)?;
        let mut name = None;
        let mut alphabet: Option<(usize, Alphabet)> = None;
        let mut kind = None;
        let mut oracle_name = None;
        let mut window = None;
        let mut states: Vec<(usize, String)> = Vec::new();
        let mut edges = Vec::new();
        let mut forbid = Vec::new();
        let mut points = Vec::new();

        for line in &lines {
            let toks = tokens(line.value, line.value_column);
            let expect = |n: usize| {
                if toks.len() != n {
                    let col = toks.get(n).map_or(line.value_column, |t| t.0);
                    Err(parse_error(
                        line.number,
                        col,
                        format!("`{}` takes {n} argument(s), found {}", line.key, toks.len()),
                    ))
                } else {
                    Ok(())
                }
            };
            match line.key {
                "name" => {
                    expect(1)?;
                    name = Some(toks[0].1.to_string());
                }
                "alphabet" => {
                    if toks.is_empty() {
                        return Err(parse_error(
                            line.number,
                            line.value_column,
                            "empty alphabet",
                        ));
                    }
                    let a = Alphabet::new(toks.iter().map(|t| t.1))
                        .map_err(|e| semantic(line.number, e.to_string()))?;
                    alphabet = Some((line.number, a));
                }
                "type" => {
                    expect(1)?;
                    let v = toks[0].1;
                    kind = Some(match v {
                        "sofic" => Kind::Sofic,
                        "sft" => Kind::Sft,
                        _ => match v.strip_prefix("oracle:") {
                            Some(o) => {
                                oracle_name = Some((line.number, o.to_string()));
                                Kind::Oracle
                            }
                            None => {
                                return Err(parse_error(
                                    line.number,
                                    toks[0].0,
                                    format!("unknown shift type `{v}`"),
                                ))
                            }
                        },
                    });
                }
                "state" => {
                    expect(1)?;
                    states.push((line.number, toks[0].1.to_string()));
                }
                "edge" => {
                    expect(3)?;
                    edges.push((line.number, toks[0].1, toks[1].1, toks[2].1));
                }
                "forbid" => {
                    if toks.is_empty() {
                        return Err(parse_error(line.number, line.value_column, "missing word"));
                    }
                    forbid.extend(toks.iter().map(|t| (line.number, t.1)));
                }
                "point" => {
                    let Some(&(_, pname)) = toks.first() else {
                        return Err(parse_error(
                            line.number,
                            line.value_column,
                            "missing point name",
                        ));
                    };
                    if pname.contains('=') {
                        return Err(parse_error(line.number, toks[0].0, "missing point name"));
                    }
                    let literal_col = toks.get(1).map_or(line.value_column, |t| t.0);
                    let literal = &line.value[literal_col - line.value_column..];
                    points.push((line.number, pname.to_string(), literal));
                }
                "window" => {
                    expect(1)?;
                    let w: usize = toks[0].1.parse().map_err(|_| {
                        parse_error(line.number, toks[0].0, "window must be a positive integer")
                    })?;
                    if w == 0 {
                        return Err(parse_error(
                            line.number,
                            toks[0].0,
                            "window must be positive",
                        ));
                    }
                    window = Some(w);
                }
                other => {
                    return Err(parse_error(
                        line.number,
                        text.lines()
                            .nth(line.number - 1)
                            .map_or(1, |l| l.len() - l.trim_start().len() + 1),
                        format!("unknown key `{other}`"),
                    ))
                }
            }
        }

        let kind = kind.ok_or_else(|| semantic(0, "missing `type`"))?;
        let name = name.unwrap_or_else(|| "unnamed".to_string());
        let shift = match kind {
            Kind::Oracle => {
                let (line, oname) = oracle_name.expect("set with kind");
                let mut oracle = builtin_oracle(&oname)
                    .ok_or_else(|| semantic(line, format!("unknown oracle `{oname}`")))?;
                if let Some(w) = window {
                    oracle = oracle.with_window(w);
                }
                if let Some((l, a)) = &alphabet {
                    if *a != oracle.alphabet() {
                        return Err(semantic(*l, "alphabet does not match the oracle"));
                    }
                }
                if !states.is_empty() || !edges.is_empty() || !forbid.is_empty() {
                    return Err(semantic(
                        0,
                        "oracle shifts take no states, edges or forbidden words",
                    ));
                }
                Shift::oracle(name, oracle).map_err(|e| semantic(line, e.to_string()))?
            }
            Kind::Sft | Kind::Sofic => {
                let (aline, alphabet) =
                    alphabet.ok_or_else(|| semantic(0, "missing `alphabet`"))?;
                if window.is_some() {
                    return Err(semantic(0, "`window` applies to oracle shifts only"));
                }
                if kind == Kind::Sft {
                    if !states.is_empty() || !edges.is_empty() {
                        return Err(semantic(0, "sft shifts take `forbid` lines, not states"));
                    }
                    let mut words: Vec<Word> = Vec::new();
                    for (l, w) in forbid {
                        words.push(
                            alphabet
                                .parse_word(w)
                                .map_err(|e| semantic(l, e.to_string()))?,
                        );
                    }
                    Shift::sft(name, alphabet, words).map_err(|e| semantic(aline, e.to_string()))?
                } else {
                    if !forbid.is_empty() {
                        return Err(semantic(0, "sofic shifts take states and edges"));
                    }
                    let names: Vec<String> = states.iter().map(|s| s.1.clone()).collect();
                    let mut parsed = Vec::new();
                    for (l, src, label, dst) in edges {
                        let find = |s: &str| {
                            names
                                .iter()
                                .position(|n| n == s)
                                .ok_or_else(|| semantic(l, format!("dangling state `{s}`")))
                        };
                        let label = alphabet.index(label).ok_or_else(|| {
                            semantic(l, format!("symbol `{label}` not in alphabet"))
                        })?;
                        parsed.push(Edge {
                            src: find(src)?,
                            label,
                            dst: find(dst)?,
                        });
                    }
                    let line = states.first().map_or(aline, |s| s.0);
                    let p = Presentation::new(alphabet, names, parsed)
                        .map_err(|e| semantic(line, e.to_string()))?;
                    Shift::sofic(name, p).map_err(|e| semantic(line, e.to_string()))?
                }
            }
        };

        let mut named = Vec::new();
        for (line, pname, literal) in points {
            let x = BiSeq::parse(shift.alphabet(), literal)
                .map_err(|e| semantic(line, e.to_string()))?;
            named.push((pname, x));
        }
        Ok(SpecFile {
            shift,
            points: named,
        })
    }

    pub fn point(&self, name: &str) -> Option<&BiSeq> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// Re-emits the spec; parsing the output yields an equivalent spec.
    pub fn to_text(&self) -> String {
        let s = &self.shift;
        let mut out = String::new();
        let _ = writeln!(out, "name: {}", s.name());
        let _ = writeln!(out, "alphabet: {}", s.alphabet().names().join(" "));
        match s.kind() {
            ShiftKind::Sft { forbidden, .. } => {
                let _ = writeln!(out, "type: sft");
                for w in forbidden {
                    let _ = writeln!(out, "forbid: {}", s.alphabet().render(w));
                }
            }
            ShiftKind::Sofic { presentation } => {
                let _ = writeln!(out, "type: sofic");
                out.push_str(&presentation.render());
            }
            ShiftKind::Oracle(o) => {
                let _ = writeln!(out, "type: oracle:{}", o.name);
                let _ = writeln!(out, "window: {}", o.window_bound);
            }
        }
        for (name, p) in &self.points {
            let _ = writeln!(out, "point: {name} {}", p.display(s.alphabet()));
        }
        out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpecLoadError {
    #[error("cannot read spec: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Spec(#[from] Error),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn parses_builtins() {
        for name in builtins::NAMES {
            let spec = builtins::load(name).unwrap();
            assert!(!spec.shift.name().is_empty());
        }
        let even = builtins::load("even.shift").unwrap();
        assert_eq!(even.shift.presentation().unwrap().num_states(), 2);
        let golden = builtins::load("goldenmean").unwrap();
        match golden.shift.kind() {
            ShiftKind::Sft { forbidden, .. } => assert_eq!(forbidden, &vec![vec![1, 1]]),
            _ => panic!("golden mean is an SFT"),
        }
    }

    #[test]
    fn malformed_edge_reports_position() {
        let text = "alphabet: 0 1\ntype: sofic\nstate: A\nedge: A 0\n";
        match SpecFile::parse(text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 7)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_key_and_missing_colon() {
        assert!(matches!(
            SpecFile::parse("alphabet: 0 1\ncolour: red\n"),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            SpecFile::parse("  alphabet 0 1\n"),
            Err(Error::Parse {
                line: 1,
                column: 3,
                ..
            })
        ));
    }

    #[test]
    fn semantic_errors() {
        let dangling = "alphabet: 0 1\ntype: sofic\nstate: A\nedge: A 0 Z\n";
        assert!(matches!(
            SpecFile::parse(dangling),
            Err(Error::Semantic { line: 4, .. })
        ));
        let bad_symbol = "alphabet: 0 1\ntype: sofic\nstate: A\nedge: A 2 A\n";
        assert!(matches!(
            SpecFile::parse(bad_symbol),
            Err(Error::Semantic { line: 4, .. })
        ));
        let bad_point = "alphabet: 0 1\ntype: sft\nforbid: 11\npoint: p L=2 C= O=0 R=0\n";
        assert!(matches!(
            SpecFile::parse(bad_point),
            Err(Error::Semantic { line: 4, .. })
        ));
    }

    #[test]
    fn round_trip() {
        for name in builtins::NAMES {
            let spec = builtins::load(name).unwrap();
            let again = SpecFile::parse(&spec.to_text()).unwrap();
            assert_eq!(again.shift, spec.shift, "{name}");
            assert_eq!(again.points, spec.points, "{name}");
            assert_eq!(again.to_text(), spec.to_text());
        }
    }
}
