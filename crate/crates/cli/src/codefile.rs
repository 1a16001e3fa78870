//! Text format for classical codes.
//!
//! ```text
//! # a block code: one `row:` line per generator row
//! name: hamming74
//! type: block
//! row: 1000110
//! row: 0100101
//!
//! # a convolutional code: one `g:` line per input, n polynomials each,
//! # leftmost bit = coefficient of D^0
//! name: conv75
//! type: conv
//! k: 1
//! n: 2
//! g: 111 101
//! ```

use std::fmt;

use stabcat_core::{BitMatrix, BitVector, BlockCode, ConvolutionalCode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFileError {
    /// 1-based line, or 0 for errors about the file as a whole.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for CodeFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for CodeFileError {}

#[derive(Debug, Clone, PartialEq)]
pub enum CodeDefinition {
    Block(BlockCode),
    Convolutional {
        name: String,
        code: ConvolutionalCode,
    },
}

impl CodeDefinition {
    pub fn name(&self) -> &str {
        match self {
            Self::Block(c) => c.name(),
            Self::Convolutional { name, .. } => name,
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> CodeFileError {
    CodeFileError {
        line,
        message: message.into(),
    }
}

fn parse_bits(line: usize, text: &str) -> Result<BitVector, CodeFileError> {
    text.parse()
        .map_err(|e| err(line, format!("{e} in {text:?}")))
}

fn parse_count(line: usize, key: &str, text: &str) -> Result<usize, CodeFileError> {
    text.parse().map_err(|_| {
        err(
            line,
            format!("{key} must be a positive integer, got {text:?}"),
        )
    })
}

pub fn parse(text: &str) -> Result<CodeDefinition, CodeFileError> {
    let mut name = None;
    let mut kind: Option<(usize, String)> = None;
    let mut rows: Vec<(usize, BitVector)> = Vec::new();
    let mut polys: Vec<(usize, Vec<BitVector>)> = Vec::new();
    let mut k = None;
    let mut n = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| err(line, format!("expected `key: value`, got {content:?}")))?;
        let value = value.trim();
        match key.trim() {
            "name" => name = Some(value.to_string()),
            "type" => match value {
                "block" | "conv" => kind = Some((line, value.to_string())),
                other => {
                    return Err(err(
                        line,
                        format!("type must be block or conv, got {other:?}"),
                    ))
                }
            },
            "row" => rows.push((line, parse_bits(line, value)?)),
            "g" => {
                let gs = value
                    .split_whitespace()
                    .map(|t| parse_bits(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                if gs.is_empty() {
                    return Err(err(line, "g needs at least one polynomial"));
                }
                polys.push((line, gs));
            }
            "k" => k = Some((line, parse_count(line, "k", value)?)),
            "n" => n = Some((line, parse_count(line, "n", value)?)),
            other => return Err(err(line, format!("unknown key {other:?}"))),
        }
    }

    let (type_line, kind) = kind.ok_or_else(|| err(0, "missing `type:` line"))?;
    let name = name.unwrap_or_else(|| "unnamed".to_string());
    match kind.as_str() {
        "block" => {
            if let Some((line, _)) = polys.first() {
                return Err(err(*line, "`g:` is only valid for type conv"));
            }
            let Some((_, first)) = rows.first() else {
                return Err(err(type_line, "block code has no `row:` lines"));
            };
            let width = first.len();
            for (line, r) in &rows {
                if r.len() != width {
                    return Err(err(
                        *line,
                        format!("row has length {}, expected {width}", r.len()),
                    ));
                }
            }
            let g = BitMatrix::from_rows(width, rows.into_iter().map(|(_, r)| r).collect())
                .map_err(|e| err(type_line, e.to_string()))?;
            let code =
                BlockCode::from_generator(name, g).map_err(|e| err(type_line, e.to_string()))?;
            Ok(CodeDefinition::Block(code))
        }
        _ => {
            if let Some((line, _)) = rows.first() {
                return Err(err(*line, "`row:` is only valid for type block"));
            }
            if polys.is_empty() {
                return Err(err(type_line, "convolutional code has no `g:` lines"));
            }
            let width = polys[0].1.len();
            for (line, gs) in &polys {
                if gs.len() != width {
                    return Err(err(
                        *line,
                        format!("{} polynomials, expected {width}", gs.len()),
                    ));
                }
            }
            if let Some((line, k)) = k {
                if k != polys.len() {
                    return Err(err(line, format!("k = {k} but {} `g:` lines", polys.len())));
                }
            }
            if let Some((line, n)) = n {
                if n != width {
                    return Err(err(
                        line,
                        format!("n = {n} but {width} polynomials per line"),
                    ));
                }
            }
            let k = polys.len();
            let code =
                ConvolutionalCode::new(k, width, polys.into_iter().map(|(_, g)| g).collect())
                    .map_err(|e| err(type_line, e.to_string()))?;
            Ok(CodeDefinition::Convolutional { name, code })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_file() {
        let text = "# hamming\nname: h\ntype: block\nrow: 1000110\nrow: 0100101\nrow: 0010011\nrow: 0001111\n";
        let CodeDefinition::Block(c) = parse(text).unwrap() else {
            panic!("expected block")
        };
        assert_eq!(c, BlockCode::hamming74().with_name("h"));
    }

    #[test]
    fn conv_file() {
        let text = "name: conv75\ntype: conv\nk: 1\nn: 2\ng: 111 101   # (7,5)\n";
        let CodeDefinition::Convolutional { name, code } = parse(text).unwrap() else {
            panic!("expected conv")
        };
        assert_eq!(name, "conv75");
        assert_eq!((code.k(), code.n(), code.memory()), (1, 2, 2));
        assert_eq!(code.polynomial(0, 1).to_string(), "101");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("type: block\nrow: 110\nrow: 01\n", 3),
            ("type: block\nrow: 1x0\n", 2),
            ("name: a\nbogus\n", 2),
            ("type: tree\n", 1),
            ("type: block\ncolour: red\n", 2),
            ("type: conv\nk: 2\ng: 11 10\n", 2),
            ("type: conv\ng: 11 10\ng: 1\n", 3),
            ("type: block\nrow: 110\nrow: 110\n", 1),
            ("type: block\ng: 11\n", 2),
        ];
        for (text, line) in cases {
            let e = parse(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?} -> {e}");
        }
        assert_eq!(parse("name: x\n").unwrap_err().line, 0);
    }
}
