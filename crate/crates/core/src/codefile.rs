//! Plain-text code files.
//!
//! Line-oriented: `#` starts a comment, the first significant line is
//! `moduli Q1 Q2 ... Qn`, and each following `gen` line lists the n shift
//! exponents, a `/` separator, and the n clock exponents:
//!
//! ```text
//! # a two-generator code on [2, 6, 3]
//! moduli 2 6 3
//! gen 1 3 0 / 0 0 0
//! gen 0 2 1 / 0 0 0
//! ```
//!
//! Parsing checks structure and exponent ranges but not commutation; raw
//! generator sets feed the decomposition and resolution front ends.

use std::fmt;

use crate::pauli::{Device, PauliVec};

/// A parsed code file: a device and a raw (not necessarily commuting)
/// generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub device: Device,
    pub generators: Vec<PauliVec>,
}

#[derive(Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Parses the code-file format. Returns the device and raw generators;
/// commutation is not enforced here.
pub fn parse(text: &str) -> Result<CodeFile, ParseError> {
    let mut device: Option<Device> = None;
    let mut generators = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        match keyword {
            "moduli" => {
                if device.is_some() {
                    return err(line_no, "duplicate moduli line");
                }
                if rest.is_empty() {
                    return err(line_no, "moduli line needs at least one register");
                }
                let mut moduli = Vec::with_capacity(rest.len());
                for w in &rest {
                    let q: u64 = match w.parse() {
                        Ok(q) => q,
                        Err(_) => return err(line_no, format!("modulus `{w}` is not an integer")),
                    };
                    if q < 2 {
                        return err(line_no, format!("modulus {q} must be at least 2"));
                    }
                    moduli.push(q);
                }
                device = Some(Device::new(moduli).expect("validated above"));
            }
            "gen" => {
                let Some(device) = device.as_ref() else {
                    return err(line_no, "gen line before moduli line");
                };
                let n = device.registers();
                let slash = rest.iter().position(|&w| w == "/");
                let Some(slash) = slash else {
                    return err(line_no, "gen line is missing the `/` separator");
                };
                if slash != n || rest.len() != 2 * n + 1 {
                    return err(
                        line_no,
                        format!("gen line needs {n} shift and {n} clock exponents"),
                    );
                }
                let parse_exps = |words: &[&str]| -> Result<Vec<u64>, ParseError> {
                    let mut out = Vec::with_capacity(n);
                    for (i, w) in words.iter().enumerate() {
                        let v: u64 = match w.parse() {
                            Ok(v) => v,
                            Err(_) => {
                                return err(line_no, format!("exponent `{w}` is not an integer"))
                            }
                        };
                        if v >= device.modulus(i) {
                            return err(
                                line_no,
                                format!(
                                    "exponent {v} out of range for register {} (modulus {})",
                                    i + 1,
                                    device.modulus(i)
                                ),
                            );
                        }
                        out.push(v);
                    }
                    Ok(out)
                };
                let x = parse_exps(&rest[..slash])?;
                let z = parse_exps(&rest[slash + 1..])?;
                generators.push(PauliVec::new(device, x, z).expect("validated above"));
            }
            other => return err(line_no, format!("unknown keyword `{other}`")),
        }
    }
    match device {
        Some(device) => Ok(CodeFile { device, generators }),
        None => err(text.lines().count() + 1, "missing moduli line"),
    }
}

/// Renders a device and generator list in the code-file format;
/// `parse(render(..))` reproduces both exactly.
pub fn render(device: &Device, generators: &[PauliVec]) -> String {
    let mut out = String::from("moduli");
    for q in device.moduli() {
        out.push_str(&format!(" {q}"));
    }
    out.push('\n');
    for g in generators {
        out.push_str(&format!("gen {g}\n"));
    }
    out
}
