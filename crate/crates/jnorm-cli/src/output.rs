//! Text and record output.
//!
//! Records are JSON lines. The first line is a header
//! `{"format":"jnorm-records","version":1,"command":...,"config":{...}}`;
//! every later line carries a `"record"` field naming its kind. Keys are
//! sorted and scalars are exact strings, so identical inputs give
//! byte-identical output.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::config::Config;

pub const FORMAT: &str = "jnorm-records";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputMode {
    Text,
    Records,
}

pub struct Out {
    mode: OutputMode,
    sink: io::StdoutLock<'static>,
}

impl Out {
    pub fn new(mode: OutputMode, command: &str, config: &Config) -> Out {
        let mut out = Out { mode, sink: io::stdout().lock() };
        if mode == OutputMode::Records {
            out.line(&json!({
                "format": FORMAT,
                "version": VERSION,
                "command": command,
                "config": config.to_json(),
            }));
        }
        out
    }

    /// Emits one record; `text` renders it for humans.
    pub fn record(&mut self, kind: &str, fields: Value, text: impl FnOnce() -> String) {
        match self.mode {
            OutputMode::Records => {
                let mut map = match fields {
                    Value::Object(m) => m,
                    other => {
                        let mut m = Map::new();
                        m.insert("value".into(), other);
                        m
                    }
                };
                map.insert("record".into(), Value::String(kind.into()));
                self.line(&Value::Object(map));
            }
            OutputMode::Text => {
                let s = text();
                self.write(&s);
            }
        }
    }

    /// A line shown only in text mode.
    pub fn note(&mut self, text: &str) {
        if self.mode == OutputMode::Text {
            self.write(text);
        }
    }

    fn line(&mut self, v: &Value) {
        let s = v.to_string();
        self.write(&s);
    }

    fn write(&mut self, s: &str) {
        // a closed pipe is not worth a panic
        let _ = writeln!(self.sink, "{s}");
    }
}

pub fn strings<T: ToString>(items: &[T]) -> Value {
    Value::Array(items.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
