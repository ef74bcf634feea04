//! File formats: JSON for digraphs, paths, 1-forms, words of 1-forms and
//! algebra elements, plus a small DOT reader for digraphs.
//!
//! Rationals are written as strings, `"p/q"` or `"p"`. Arrows are named
//! `"u->v"` or positionally `"aK"` (1-based, in file order).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::forms::OneForm;
use crate::graph::{Digraph, GraphError, Orientation, VertexId};
use crate::path::{PathError, PathMap};
use crate::rational::{format_rational, parse_rational, ParseRationalError, Rational};
use crate::shuffle::{AlgebraElement, ArrowWord};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("orientation must be \"f\" or \"b\", got {0:?}")]
    Orientation(String),
    #[error("DOT line {line}: {message}")]
    Dot { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
}

impl DigraphFile {
    pub fn from_graph(g: &Digraph, base: Option<VertexId>) -> Self {
        Self {
            vertices: g.names().to_vec(),
            arrows: g
                .arrows()
                .map(|(_, s, t)| (g.name(s).to_string(), g.name(t).to_string()))
                .collect(),
            base: base.map(|b| g.name(b).to_string()),
        }
    }

    pub fn build(&self) -> Result<(Digraph, Option<VertexId>), IoError> {
        let g = Digraph::new(&self.vertices, &self.arrows)?;
        let base = match &self.base {
            Some(b) => Some(g.require_vertex(b)?),
            None => None,
        };
        Ok((g, base))
    }
}

/// Reads a digraph from JSON, or from DOT when the text does not start
/// with `{`.
pub fn read_digraph(text: &str) -> Result<(Digraph, Option<VertexId>), IoError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<DigraphFile>(text)?.build()
    } else {
        parse_dot(text)?.build()
    }
}

/// `digraph [name] { a -> b -> c; d; }` with `//` and `#` comments and
/// optionally quoted ids. Vertices are numbered in order of appearance.
pub fn parse_dot(text: &str) -> Result<DigraphFile, IoError> {
    let tokens = dot_tokens(text)?;
    let err = |line, message: &str| IoError::Dot {
        line,
        message: message.to_string(),
    };
    let mut it = tokens.into_iter().peekable();
    match it.next() {
        Some((_, Tok::Id(k))) if k == "digraph" => {}
        Some((line, _)) => return Err(err(line, "expected `digraph`")),
        None => return Err(err(1, "empty input")),
    }
    if matches!(it.peek(), Some((_, Tok::Id(_)))) {
        it.next();
    }
    match it.next() {
        Some((_, Tok::Open)) => {}
        Some((line, _)) => return Err(err(line, "expected `{`")),
        None => return Err(err(1, "expected `{`")),
    }
    let mut file = DigraphFile {
        vertices: Vec::new(),
        arrows: Vec::new(),
        base: None,
    };
    let note = |v: &str, file: &mut DigraphFile| {
        if !file.vertices.iter().any(|x| x == v) {
            file.vertices.push(v.to_string());
        }
    };
    let mut chain: Vec<String> = Vec::new();
    let mut expect_id = true;
    loop {
        let Some((line, tok)) = it.next() else {
            return Err(err(0, "missing `}`"));
        };
        match tok {
            Tok::Id(v) if expect_id => {
                note(&v, &mut file);
                if let Some(prev) = chain.last() {
                    file.arrows.push((prev.clone(), v.clone()));
                }
                chain.push(v);
                expect_id = false;
            }
            Tok::Arrow if !expect_id => expect_id = true,
            Tok::Semi | Tok::Close if !expect_id || chain.is_empty() => {
                chain.clear();
                expect_id = true;
                if tok == Tok::Close {
                    break;
                }
            }
            Tok::Id(v) if !expect_id => {
                // A new statement without a separating `;`.
                chain.clear();
                note(&v, &mut file);
                chain.push(v);
            }
            Tok::Undirected => return Err(err(line, "undirected edges are not supported")),
            Tok::Attr => return Err(err(line, "attributes are not supported")),
            _ => return Err(err(line, "unexpected token")),
        }
    }
    if let Some((line, _)) = it.next() {
        return Err(err(line, "trailing input after `}`"));
    }
    Ok(file)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Arrow,
    Undirected,
    Open,
    Close,
    Semi,
    Attr,
}

fn dot_tokens(text: &str) -> Result<Vec<(usize, Tok)>, IoError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let mut chars = raw.chars().peekable();
        while let Some(&c) = chars.peek() {
            match c {
                c if c.is_whitespace() || c == ',' => {
                    chars.next();
                }
                '#' => break,
                '/' => {
                    chars.next();
                    if chars.peek() == Some(&'/') {
                        break;
                    }
                    return Err(IoError::Dot {
                        line,
                        message: "stray `/`".into(),
                    });
                }
                '{' | '}' | ';' | '[' => {
                    chars.next();
                    out.push((
                        line,
                        match c {
                            '{' => Tok::Open,
                            '}' => Tok::Close,
                            ';' => Tok::Semi,
                            _ => Tok::Attr,
                        },
                    ));
                }
                '-' => {
                    chars.next();
                    match chars.next() {
                        Some('>') => out.push((line, Tok::Arrow)),
                        Some('-') => out.push((line, Tok::Undirected)),
                        _ => {
                            return Err(IoError::Dot {
                                line,
                                message: "expected `->`".into(),
                            })
                        }
                    }
                }
                '"' => {
                    chars.next();
                    let mut id = String::new();
                    loop {
                        match chars.next() {
                            Some('"') => break,
                            Some('\\') => id.extend(chars.next()),
                            Some(ch) => id.push(ch),
                            None => {
                                return Err(IoError::Dot {
                                    line,
                                    message: "unterminated string".into(),
                                })
                            }
                        }
                    }
                    out.push((line, Tok::Id(id)));
                }
                c if c.is_alphanumeric() || c == '_' || c == '.' => {
                    let mut id = String::new();
                    while let Some(&ch) = chars.peek() {
                        if ch.is_alphanumeric() || ch == '_' || ch == '.' {
                            id.push(ch);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push((line, Tok::Id(id)));
                }
                other => {
                    return Err(IoError::Dot {
                        line,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    pub vertices: Vec<String>,
    pub orientations: Vec<String>,
}

impl PathFile {
    pub fn from_path(p: &PathMap<'_>) -> Self {
        let g = p.graph();
        Self {
            vertices: p.vertices().iter().map(|&v| g.name(v).to_string()).collect(),
            orientations: p
                .orientations()
                .iter()
                .map(|o| match o {
                    Orientation::Forward => "f".to_string(),
                    Orientation::Backward => "b".to_string(),
                })
                .collect(),
        }
    }

    pub fn build<'g>(&self, g: &'g Digraph) -> Result<PathMap<'g>, IoError> {
        let orientations = self
            .orientations
            .iter()
            .map(|o| match o.as_str() {
                "f" => Ok(Orientation::Forward),
                "b" => Ok(Orientation::Backward),
                other => Err(IoError::Orientation(other.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let names: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        Ok(PathMap::from_names(g, &names, &orientations)?)
    }
}

pub fn read_path<'g>(g: &'g Digraph, text: &str) -> Result<PathMap<'g>, IoError> {
    serde_json::from_str::<PathFile>(text)?.build(g)
}

fn arrow_id(g: &Digraph, label: &str) -> Result<crate::graph::ArrowId, IoError> {
    g.parse_arrow_label(label.trim())
        .ok_or_else(|| IoError::UnknownArrow(label.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub form: BTreeMap<String, String>,
}

impl FormFile {
    /// Non-zero values only, keyed `"u->v"`.
    pub fn from_form(g: &Digraph, omega: &OneForm) -> Self {
        Self {
            form: omega
                .support()
                .map(|(a, c)| (g.arrow_label(a), format_rational(c)))
                .collect(),
        }
    }

    pub fn build(&self, g: &Digraph) -> Result<OneForm, IoError> {
        let mut values = vec![Rational::from_integer(0.into()); g.arrow_count()];
        for (label, value) in &self.form {
            values[arrow_id(g, label)?.0] = parse_rational(value)?;
        }
        Ok(OneForm::new(values))
    }
}

pub fn read_form(g: &Digraph, text: &str) -> Result<OneForm, IoError> {
    serde_json::from_str::<FormFile>(text)?.build(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    pub word: Vec<FormFile>,
}

pub fn read_word(g: &Digraph, text: &str) -> Result<Vec<OneForm>, IoError> {
    serde_json::from_str::<WordFile>(text)?
        .word
        .iter()
        .map(|f| f.build(g))
        .collect()
}

pub fn word_to_file(g: &Digraph, word: &[OneForm]) -> WordFile {
    WordFile {
        word: word.iter().map(|w| FormFile::from_form(g, w)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub element: BTreeMap<String, String>,
}

impl ElementFile {
    pub fn from_element(g: &Digraph, u: &AlgebraElement) -> Self {
        Self {
            element: u
                .terms()
                .map(|(w, c)| (w.label(g), format_rational(c)))
                .collect(),
        }
    }

    pub fn build(&self, g: &Digraph) -> Result<AlgebraElement, IoError> {
        let mut u = AlgebraElement::zero();
        for (key, value) in &self.element {
            let word = if key.trim().is_empty() {
                ArrowWord::empty()
            } else {
                ArrowWord::new(key.split(',').map(|l| arrow_id(g, l)).collect::<Result<_, _>>()?)
            };
            u.add_term(word, parse_rational(value)?);
        }
        Ok(u)
    }
}

pub fn read_element(g: &Digraph, text: &str) -> Result<AlgebraElement, IoError> {
    serde_json::from_str::<ElementFile>(text)?.build(g)
}

/// Serializes anything in this module to a JSON value.
pub fn to_value<T: Serialize>(item: &T) -> Value {
    serde_json::to_value(item).expect("file types always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::ArrowId;
    use crate::path::Orientation::{Backward as B, Forward as F};
    use crate::rational::{frac, int};

    #[test]
    fn digraph_json_round_trip() {
        let text = r#"{"vertices":["v0","v1"],"arrows":[["v0","v1"],["v1","v0"]],"base":"v0"}"#;
        let (g, base) = read_digraph(text).unwrap();
        assert_eq!(g, fixtures::double_edge());
        assert_eq!(base, Some(VertexId(0)));
        let back = serde_json::to_string(&DigraphFile::from_graph(&g, base)).unwrap();
        assert_eq!(back, text);
        assert!(read_digraph(r#"{"vertices":["a"],"arrows":[["a","a"]]}"#).is_err());
        assert!(read_digraph(r#"{"vertices":["a"],"arrows":[],"extra":1}"#).is_err());
    }

    #[test]
    fn dot_subset() {
        let text = "// square\ndigraph S {\n  v0 -> v1 -> v3;\n  \"v0\" -> v2; v2 -> v3 # tail\n}\n";
        let (g, base) = read_digraph(text).unwrap();
        assert_eq!(base, None);
        assert_eq!(g.names(), ["v0", "v1", "v3", "v2"]);
        assert_eq!(g.arrow_count(), 4);
        assert!(g.has_arrow(g.vertex("v2").unwrap(), g.vertex("v3").unwrap()));
        let lone = parse_dot("digraph { x; y -> z }").unwrap();
        assert_eq!(lone.vertices, ["x", "y", "z"]);
        assert!(parse_dot("digraph { a -> b [color=red]; }").is_err());
        assert!(parse_dot("graph { a -- b }").is_err());
        assert!(parse_dot("digraph { a -> }").is_err());
        assert!(parse_dot("digraph { a -> b").is_err());
    }

    #[test]
    fn path_files() {
        let d = fixtures::double_edge();
        let p = read_path(&d, r#"{"vertices":["v0","v1","v0"],"orientations":["f","b"]}"#).unwrap();
        assert_eq!(p, PathMap::from_names(&d, &["v0", "v1", "v0"], &[F, B]).unwrap());
        assert_eq!(PathFile::from_path(&p).build(&d).unwrap(), p);
        assert!(matches!(
            read_path(&d, r#"{"vertices":["v0","v1"],"orientations":["x"]}"#),
            Err(IoError::Orientation(_))
        ));
        assert!(read_path(&d, r#"{"vertices":["v0","v0"],"orientations":["b"]}"#).is_ok());
    }

    #[test]
    fn forms_words_elements() {
        let t = fixtures::triangle();
        let w = read_form(&t, r#"{"form":{"v0->v1":"3/2","a3":"-1"}}"#).unwrap();
        assert_eq!(w.values(), [frac(3, 2), int(0), int(-1)]);
        assert_eq!(FormFile::from_form(&t, &w).build(&t).unwrap(), w);
        assert!(matches!(read_form(&t, r#"{"form":{"v1->v0":"1"}}"#), Err(IoError::UnknownArrow(_))));

        let word = read_word(&t, r#"{"word":[{"form":{"a1":"1"}},{"form":{"a2":"2"}}]}"#).unwrap();
        assert_eq!(word.len(), 2);
        assert_eq!(word_to_file(&t, &word).word[1].form["v1->v2"], "2");

        let u = read_element(&t, r#"{"element":{"a1,a2":"1","":"-2"}}"#).unwrap();
        assert_eq!(u.coefficient(&ArrowWord::new(vec![ArrowId(0), ArrowId(1)])), int(1));
        assert_eq!(u.coefficient(&ArrowWord::empty()), int(-2));
        let file = ElementFile::from_element(&t, &u);
        assert_eq!(file.element["v0->v1,v1->v2"], "1");
        assert_eq!(file.build(&t).unwrap(), u);
    }
}
