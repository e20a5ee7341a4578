//! DRAT proof output.
//!
//! Plain-text DRAT: one clause per line in DIMACS numbering, `l1 ... lk 0` for
//! an addition and `d l1 ... lk 0` for a deletion. An UNSAT run ends with the
//! lone `0` of the empty clause.

use std::fmt;
use std::io::{self, BufWriter, Write};

use thiserror::Error;

use crate::cnf::Lit;

enum Sink {
    Disabled,
    Memory(Vec<u8>),
    Writer(BufWriter<Box<dyn Write + Send>>),
}

/// Destination for the solver's proof lines.
pub struct ProofLog {
    sink: Sink,
}

impl fmt::Debug for ProofLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.sink {
            Sink::Disabled => "disabled",
            Sink::Memory(_) => "memory",
            Sink::Writer(_) => "writer",
        };
        f.debug_struct("ProofLog").field("sink", &kind).finish()
    }
}

impl Default for ProofLog {
    fn default() -> Self {
        ProofLog::disabled()
    }
}

impl ProofLog {
    pub fn disabled() -> ProofLog {
        ProofLog {
            sink: Sink::Disabled,
        }
    }

    /// Collects the proof in memory; see [`ProofLog::take_text`].
    pub fn in_memory() -> ProofLog {
        ProofLog {
            sink: Sink::Memory(Vec::new()),
        }
    }

    pub fn to_writer<W: Write + Send + 'static>(writer: W) -> ProofLog {
        ProofLog {
            sink: Sink::Writer(BufWriter::new(Box::new(writer))),
        }
    }

    pub fn is_enabled(&self) -> bool {
        !matches!(self.sink, Sink::Disabled)
    }

    pub fn log_add(&mut self, lits: &[Lit]) -> io::Result<()> {
        self.write_line(None, lits)
    }

    pub fn log_delete(&mut self, lits: &[Lit]) -> io::Result<()> {
        self.write_line(Some("d "), lits)
    }

    fn write_line(&mut self, prefix: Option<&str>, lits: &[Lit]) -> io::Result<()> {
        let out: &mut dyn Write = match &mut self.sink {
            Sink::Disabled => return Ok(()),
            Sink::Memory(buf) => buf,
            Sink::Writer(w) => w,
        };
        if let Some(prefix) = prefix {
            out.write_all(prefix.as_bytes())?;
        }
        for lit in lits {
            write!(out, "{} ", lit.to_dimacs())?;
        }
        out.write_all(b"0\n")
    }

    pub fn flush(&mut self) -> io::Result<()> {
        match &mut self.sink {
            Sink::Writer(w) => w.flush(),
            _ => Ok(()),
        }
    }

    /// Takes the text collected by an in-memory log.
    pub fn take_text(&mut self) -> Option<String> {
        match &mut self.sink {
            Sink::Memory(buf) => {
                Some(String::from_utf8(std::mem::take(buf)).expect("proof text is ASCII"))
            }
            _ => None,
        }
    }
}

/// One parsed proof line, in DIMACS numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofStep {
    Add(Vec<i64>),
    Delete(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("proof line {line}: {reason}")]
pub struct DratParseError {
    pub line: usize,
    pub reason: String,
}

/// Parses a plain-text DRAT proof.
pub fn parse_drat(text: &str) -> Result<Vec<ProofStep>, DratParseError> {
    let mut steps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |reason: String| DratParseError { line, reason };
        let mut body = raw.trim();
        if body.is_empty() || body.starts_with('c') {
            continue;
        }
        let delete = body.starts_with('d');
        if delete {
            body = &body[1..];
        }
        let mut lits = Vec::new();
        let mut terminated = false;
        for token in body.split_whitespace() {
            if terminated {
                return Err(err(format!("unexpected token {token:?} after 0")));
            }
            let value: i64 = token
                .parse()
                .map_err(|_| err(format!("invalid token {token:?}")))?;
            if value == 0 {
                terminated = true;
            } else {
                lits.push(value);
            }
        }
        if !terminated {
            return Err(err("missing terminating 0".into()));
        }
        steps.push(if delete {
            ProofStep::Delete(lits)
        } else {
            ProofStep::Add(lits)
        });
    }
    Ok(steps)
}
