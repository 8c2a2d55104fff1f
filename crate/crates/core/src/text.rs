//! Line-oriented circuit text format.
//!
//! ```text
//! qubits 3
//! ancillas 4      # optional, must directly follow `qubits`
//! cx 0 3          # controls first, target last
//! t 3
//! ```
//!
//! `#` starts a comment that runs to the end of the line; blank lines are
//! ignored. Integers are unsigned decimal.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, GateKind};

/// A parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{line}:{column}: {message}")]
pub struct SourceError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SourceError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        SourceError {
            line,
            column,
            message: message.into(),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_ascii_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &body[s..i],
                    column: body[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &body[s..],
            column: body[..s].chars().count() + 1,
        });
    }
    out
}

fn parse_uint(tok: &Token<'_>, line: usize) -> Result<usize, SourceError> {
    if tok.text.is_empty() || !tok.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SourceError::at(
            line,
            tok.column,
            format!("expected an unsigned integer, found `{}`", tok.text),
        ));
    }
    tok.text.parse().map_err(|_| {
        SourceError::at(
            line,
            tok.column,
            format!("integer `{}` is too large", tok.text),
        )
    })
}

enum Header {
    Qubits,
    Ancillas,
}

/// Parses circuit text. Gates keep their file order.
pub fn parse(text: &str) -> Result<Circuit, SourceError> {
    let mut circuit: Option<Circuit> = None;
    let mut seen_gate = false;
    let mut seen_anc = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        let header = match head.text {
            "qubits" => Some(Header::Qubits),
            "ancillas" => Some(Header::Ancillas),
            _ => None,
        };
        if let Some(h) = header {
            let value = match toks.get(1) {
                Some(t) => parse_uint(t, line)?,
                None => {
                    return Err(SourceError::at(
                        line,
                        head.column + head.text.len(),
                        format!("`{}` needs a count", head.text),
                    ))
                }
            };
            if let Some(extra) = toks.get(2) {
                return Err(SourceError::at(
                    line,
                    extra.column,
                    "unexpected token after header",
                ));
            }
            match h {
                Header::Qubits => {
                    if circuit.is_some() {
                        return Err(SourceError::at(
                            line,
                            head.column,
                            "duplicate `qubits` header",
                        ));
                    }
                    if value == 0 {
                        return Err(SourceError::at(
                            line,
                            toks[1].column,
                            "qubit count must be positive",
                        ));
                    }
                    circuit = Some(Circuit::new(value, 0));
                }
                Header::Ancillas => match circuit.as_mut() {
                    None => {
                        return Err(SourceError::at(
                            line,
                            head.column,
                            "`ancillas` before `qubits` header",
                        ))
                    }
                    Some(_) if seen_gate || seen_anc => {
                        return Err(SourceError::at(
                            line,
                            head.column,
                            "`ancillas` must appear once, directly after `qubits`",
                        ))
                    }
                    Some(c) => {
                        *c = Circuit::new(c.n_main(), value);
                        seen_anc = true;
                    }
                },
            }
            continue;
        }

        let Some(c) = circuit.as_mut() else {
            return Err(SourceError::at(
                line,
                head.column,
                "missing `qubits` header",
            ));
        };
        let kind: GateKind = head
            .text
            .parse()
            .map_err(|e: crate::circuit::UnknownMnemonic| {
                SourceError::at(line, head.column, e.to_string())
            })?;
        let args = &toks[1..];
        if args.len() != kind.arity() {
            // Point at the first surplus operand, or just past the last token.
            let column = args.get(kind.arity()).map(|t| t.column).unwrap_or_else(|| {
                let last = toks.last().expect("nonempty");
                last.column + last.text.chars().count()
            });
            return Err(SourceError::at(
                line,
                column,
                format!(
                    "`{kind}` takes {} qubit(s), got {}",
                    kind.arity(),
                    args.len()
                ),
            ));
        }
        let mut qubits = Vec::with_capacity(args.len());
        for t in args {
            let q = parse_uint(t, line)?;
            if q >= c.width() {
                return Err(SourceError::at(
                    line,
                    t.column,
                    format!("qubit index {q} out of range for width {}", c.width()),
                ));
            }
            if qubits.contains(&q) {
                return Err(SourceError::at(
                    line,
                    t.column,
                    format!("qubit {q} repeated in one gate"),
                ));
            }
            qubits.push(q);
        }
        let gate = Gate::new(kind, &qubits)
            .map_err(|e| SourceError::at(line, head.column, e.to_string()))?;
        c.push_gate(gate)
            .map_err(|e: CircuitError| SourceError::at(line, head.column, e.to_string()))?;
        seen_gate = true;
    }
    circuit.ok_or_else(|| SourceError::at(last_line.max(1), 1, "missing `qubits` header"))
}

/// Canonical text: headers, then one lowercase gate per line.
pub fn emit(c: &Circuit) -> String {
    c.to_string()
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n_main())?;
        if self.n_anc() > 0 {
            writeln!(f, "ancillas {}", self.n_anc())?;
        }
        for g in self.gates() {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}
