//! Deterministic output encoding. Every number is printed with 17
//! significant digits so reruns are byte-identical and parseable floats
//! round-trip exactly; object keys keep insertion order.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use metronoid::{ConvexBody, DiscreteMeasure, Vector};

/// Core's 17-significant-digit float format; non-finite values become JSON
/// null rather than the bare words serde would reject.
pub fn g17(x: f64) -> String {
    if x.is_finite() {
        metronoid::fmt::g17(x)
    } else {
        "null".into()
    }
}

#[derive(Debug, Clone)]
pub enum JVal {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<JVal>),
    Obj(Vec<(&'static str, JVal)>),
}

impl JVal {
    pub fn s(text: impl Into<String>) -> JVal {
        JVal::Str(text.into())
    }

    pub fn vector(v: &Vector) -> JVal {
        JVal::Arr(v.0.iter().map(|&c| JVal::Num(c)).collect())
    }

    pub fn floats(xs: &[f64]) -> JVal {
        JVal::Arr(xs.iter().map(|&c| JVal::Num(c)).collect())
    }

    /// Same shape as the measure schema, so emitted measures feed back in.
    pub fn measure(mu: &DiscreteMeasure) -> JVal {
        JVal::Obj(vec![
            ("dim", JVal::Int(mu.dim() as i64)),
            (
                "atoms",
                JVal::Arr(
                    mu.atoms()
                        .iter()
                        .map(|(x, w)| {
                            JVal::Obj(vec![("x", JVal::vector(x)), ("w", JVal::Num(*w))])
                        })
                        .collect(),
                ),
            ),
        ])
    }

    /// Same shape as the body schema.
    pub fn body(k: &ConvexBody) -> JVal {
        let s = k.to_schema();
        let mut fields = vec![
            ("type", JVal::s(s.kind)),
            ("dim", JVal::Int(s.dim as i64)),
        ];
        if let Some(r) = s.radius {
            fields.push(("radius", JVal::Num(r)));
        }
        if let Some(points) = s.points {
            fields.push((
                "points",
                JVal::Arr(points.iter().map(|p| JVal::floats(p)).collect()),
            ));
        }
        JVal::Obj(fields)
    }

    fn write(&self, buf: &mut String, indent: usize) {
        match self {
            JVal::Null => buf.push_str("null"),
            JVal::Bool(b) => {
                let _ = write!(buf, "{b}");
            }
            JVal::Int(i) => {
                let _ = write!(buf, "{i}");
            }
            JVal::Num(x) => buf.push_str(&g17(*x)),
            JVal::Str(s) => {
                buf.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => buf.push_str("\\\""),
                        '\\' => buf.push_str("\\\\"),
                        '\n' => buf.push_str("\\n"),
                        c if (c as u32) < 0x20 => {
                            let _ = write!(buf, "\\u{:04x}", c as u32);
                        }
                        c => buf.push(c),
                    }
                }
                buf.push('"');
            }
            JVal::Arr(items) => {
                if items.is_empty() {
                    buf.push_str("[]");
                    return;
                }
                // Scalar-only arrays stay on one line.
                let flat = items
                    .iter()
                    .all(|i| !matches!(i, JVal::Arr(_) | JVal::Obj(_)));
                buf.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        buf.push(',');
                    }
                    if !flat {
                        buf.push('\n');
                        buf.push_str(&"  ".repeat(indent + 1));
                    }
                    item.write(buf, indent + 1);
                }
                if !flat {
                    buf.push('\n');
                    buf.push_str(&"  ".repeat(indent));
                }
                buf.push(']');
            }
            JVal::Obj(fields) => {
                if fields.is_empty() {
                    buf.push_str("{}");
                    return;
                }
                buf.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        buf.push(',');
                    }
                    buf.push('\n');
                    buf.push_str(&"  ".repeat(indent + 1));
                    let _ = write!(buf, "\"{key}\": ");
                    value.write(buf, indent + 1);
                }
                buf.push('\n');
                buf.push_str(&"  ".repeat(indent));
                buf.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut buf = String::new();
        self.write(&mut buf, 0);
        buf.push('\n');
        buf
    }

    /// Single-line rendering for embedding in CSV/SVG comment headers.
    pub fn render_compact(&self) -> String {
        let pretty = {
            let mut buf = String::new();
            self.write(&mut buf, 0);
            buf
        };
        let mut out = String::with_capacity(pretty.len());
        let mut chars = pretty.chars().peekable();
        while let Some(c) = chars.next() {
            if c == '\n' {
                while chars.peek() == Some(&' ') {
                    chars.next();
                }
            } else {
                out.push(c);
            }
        }
        out
    }
}

/// Run metadata embedded in every output: version, command, seed, and the
/// resolved parameter values.
pub fn run_config(command: &str, seed: Option<u64>, params: Vec<(&'static str, JVal)>) -> JVal {
    let mut fields = vec![
        ("version", JVal::s(env!("CARGO_PKG_VERSION"))),
        ("command", JVal::s(command)),
    ];
    match seed {
        Some(s) => fields.push(("seed", JVal::Int(s as i64))),
        None => fields.push(("seed", JVal::Null)),
    }
    fields.push(("parameters", JVal::Obj(params)));
    JVal::Obj(fields)
}

pub fn write_text(out: Option<&Path>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())
        }
    }
}
