use std::fmt;

use pmtk_core::abelian::{FinAbGroup, Subgroup};
use pmtk_core::qz::QZ;
use serde_json::{json, Map, Value};

/// Failure of a command: malformed input (exit 2) or an engine error (exit 1).
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(pmtk_core::error::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<pmtk_core::error::Error> for CliError {
    fn from(e: pmtk_core::error::Error) -> Self {
        match e {
            pmtk_core::error::Error::Parse(m) => CliError::Parse(m),
            other => CliError::Domain(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Both,
}

/// Text lines plus a structured block; every value shown in the text is also
/// recorded in `results`, and `provenance` names the engine operation behind it.
pub struct Report {
    command: String,
    roots: bool,
    text: Vec<String>,
    results: Vec<Value>,
    current: Map<String, Value>,
    provenance: Map<String, Value>,
}

impl Report {
    pub fn new(command: String, roots: bool) -> Self {
        Report { command, roots, text: Vec::new(), results: Vec::new(), current: Map::new(), provenance: Map::new() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    /// Records `key = value` in the current result and prints `label: shown`.
    pub fn field(&mut self, key: &str, label: &str, shown: impl fmt::Display, value: Value, op: &str) {
        self.text.push(format!("  {label}: {shown}"));
        self.current.insert(key.to_string(), value);
        self.provenance.insert(key.to_string(), Value::String(op.to_string()));
    }

    /// Stores structured data without a text line.
    pub fn data(&mut self, key: &str, value: Value, op: &str) {
        self.current.insert(key.to_string(), value);
        self.provenance.insert(key.to_string(), Value::String(op.to_string()));
    }

    /// Closes the current result (one per input file or query).
    pub fn finish_item(&mut self) {
        let item = std::mem::take(&mut self.current);
        self.results.push(Value::Object(item));
    }

    pub fn qz(&self, v: QZ) -> String {
        if self.roots {
            v.to_root_string()
        } else {
            v.to_string()
        }
    }

    pub fn qz_list(&self, vs: &[QZ]) -> String {
        if vs.is_empty() {
            return "none".into();
        }
        vs.iter().map(|&v| self.qz(v)).collect::<Vec<_>>().join(", ")
    }

    pub fn render(mut self, format: Format) -> String {
        if !self.current.is_empty() {
            self.finish_item();
        }
        let block = json!({
            "command": self.command,
            "results": self.results,
            "provenance": self.provenance,
        });
        let json = serde_json::to_string_pretty(&block).expect("report serializes");
        let mut out = String::new();
        if format != Format::Json {
            out.push_str(&format!("$ {}\n", self.command));
            for l in &self.text {
                out.push_str(l);
                out.push('\n');
            }
        }
        if format == Format::Both {
            out.push_str("--- structured ---\n");
        }
        if format != Format::Text {
            out.push_str(&json);
            out.push('\n');
        }
        out
    }
}

pub fn tuple(coords: &[u64]) -> String {
    format!("({})", coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

pub fn element(g: &FinAbGroup, x: usize) -> String {
    tuple(&g.element(x))
}

pub fn subgroup_text(h: &Subgroup) -> String {
    if h.is_trivial() {
        return "{0}".into();
    }
    if h.is_whole() {
        return format!("whole group (order {})", h.order());
    }
    let gens: Vec<String> = h.generators().iter().map(|&x| element(h.parent(), x)).collect();
    format!("order {} generated by {}", h.order(), gens.join(", "))
}

pub fn subgroup_json(h: &Subgroup) -> Value {
    json!({
        "order": h.order(),
        "generators": h.generators().iter().map(|&x| h.parent().element(x)).collect::<Vec<_>>(),
        "elements": h.element_tuples(),
    })
}

pub fn qz_json(vs: &[QZ]) -> Value {
    Value::Array(vs.iter().map(|v| Value::String(v.to_string())).collect())
}
