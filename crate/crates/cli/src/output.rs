use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::Serialize;

/// The JSON document every command prints on success.
#[derive(Debug, Serialize)]
pub struct Envelope<I, R> {
    pub command: &'static str,
    pub inputs: I,
    pub result: R,
    pub version: &'static str,
    pub tolerances: BTreeMap<&'static str, f64>,
}

impl<I: Serialize, R: Serialize> Envelope<I, R> {
    pub fn new(command: &'static str, inputs: I, result: R) -> Self {
        Envelope {
            command,
            inputs,
            result,
            version: newton_resist::VERSION,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn tolerance(mut self, name: &'static str, value: f64) -> Self {
        self.tolerances.insert(name, value);
        self
    }

    pub fn print(&self) -> io::Result<()> {
        let mut out = io::stdout().lock();
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")?;
        out.flush()
    }
}
