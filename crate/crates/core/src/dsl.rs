//! The `.qc` circuit language.
//!
//! One statement per line, `#` starts a comment, blank lines are ignored and
//! `\r\n` line endings are accepted:
//!
//! ```text
//! qubits 2            # header, required before anything else
//! init 00             # optional starting basis state, before any stage
//! h all               # Hadamard on every qubit, or `h <k>` for qubit k
//! cpf 11              # phase flip on |11>
//! cps 01 pi/2         # phase shift by an angle in radians
//! checkpoint merge
//! diffuse             # inversion about the mean
//! measure             # optional, must be last
//! ```
//!
//! Bitstrings are kets: the first character is qubit 0, the most significant
//! bit. Angles are decimals (`0.25`, `-1e-3`) or multiples of pi written
//! `pi`, `-pi`, `pi/2`, `2pi`, `3*pi/4`, `-pi/8`.
//!
//! Parsing stops at the first error.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt::Write;

use crate::gates::PhaseShiftSpec;
use crate::interpretation::{is_identifier, Circuit, HadamardTarget, Stage};
use crate::numfmt;
use crate::state::BasisIndex;
use crate::MAX_QUBITS;

/// 1-based line and column (columns count characters, not bytes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourcePosition {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {}, column {}: {message}", position.line, position.column)]
pub struct ParseError {
    pub position: SourcePosition,
    pub message: String,
    /// The token the error points at; empty when a token was missing.
    pub token: String,
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (column, (byte, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((byte, column + 1)),
            (true, Some((b, col))) => {
                tokens.push(Token {
                    text: &line[b..byte],
                    column: col,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, col)) = start {
        tokens.push(Token {
            text: &line[b..],
            column: col,
        });
    }
    tokens
}

struct Statement<'a> {
    line: usize,
    /// Column just past the last character, for "missing argument" errors.
    end_column: usize,
    keyword: Token<'a>,
    args: Vec<Token<'a>>,
}

impl<'a> Statement<'a> {
    fn error_at(&self, token: Token<'_>, message: String) -> ParseError {
        ParseError {
            position: SourcePosition {
                line: self.line,
                column: token.column,
            },
            message,
            token: token.text.to_string(),
        }
    }

    fn arity(&self, expected: &[&str]) -> Result<(), ParseError> {
        if let Some(extra) = self.args.get(expected.len()) {
            return Err(self.error_at(
                *extra,
                format!(
                    "unexpected token `{}` after `{}`",
                    extra.text, self.keyword.text
                ),
            ));
        }
        if let Some(missing) = expected.get(self.args.len()) {
            return Err(ParseError {
                position: SourcePosition {
                    line: self.line,
                    column: self.end_column,
                },
                message: format!("expected {missing} after `{}`", self.keyword.text),
                token: String::new(),
            });
        }
        Ok(())
    }

    fn bitstring(&self, token: Token<'_>, qubits: u32) -> Result<BasisIndex, ParseError> {
        if token.text.is_empty() || !token.text.chars().all(|c| c == '0' || c == '1') {
            return Err(self.error_at(
                token,
                format!("expected a bitstring of 0s and 1s, found `{}`", token.text),
            ));
        }
        let len = token.text.len();
        if len != qubits as usize {
            return Err(self.error_at(
                token,
                format!("bitstring length {len} does not match qubit count {qubits}"),
            ));
        }
        Ok(BasisIndex::from_bitstring(token.text).expect("checked bitstring"))
    }
}

fn parse_unsigned(text: &str) -> Option<u64> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Parses an angle literal to radians.
pub fn parse_angle(text: &str) -> Option<f64> {
    if let Some(at) = text.find("pi") {
        let (prefix, suffix) = (&text[..at], &text[at + 2..]);
        let numerator: i64 = match prefix {
            "" => 1,
            "-" => -1,
            p => {
                let p = p.strip_suffix('*').unwrap_or(p);
                let (neg, digits) = match p.strip_prefix('-') {
                    Some(d) => (true, d),
                    None => (false, p),
                };
                let k = i64::try_from(parse_unsigned(digits)?).ok()?;
                if neg {
                    -k
                } else {
                    k
                }
            }
        };
        let denominator = match suffix {
            "" => 1,
            s => parse_unsigned(s.strip_prefix('/')?).filter(|m| *m > 0)?,
        };
        return Some(numerator as f64 * PI / denominator as f64);
    }
    let allowed = |c: char| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-');
    if !text.chars().all(allowed) || !text.chars().any(|c| c.is_ascii_digit()) {
        return None;
    }
    text.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// Shortest canonical text for an angle: `pi`, `-pi`, `pi/2`, `-pi/2`, or a
/// 17-significant-digit decimal.
pub fn format_angle(theta: f64) -> String {
    match theta {
        t if t == PI => "pi".to_string(),
        t if t == -PI => "-pi".to_string(),
        t if t == FRAC_PI_2 => "pi/2".to_string(),
        t if t == -FRAC_PI_2 => "-pi/2".to_string(),
        t => numfmt::significant(t, 17),
    }
}

const KEYWORDS: &str = "h, cps, cpf, diffuse, checkpoint, measure";

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut qubits: Option<u32> = None;
    let mut initial: Option<BasisIndex> = None;
    let mut stages: Vec<Stage> = Vec::new();
    let mut measure: Option<Statement<'_>> = None;
    let mut last_line = 1;

    for (n, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let tokens = tokenize(line);
        let Some((&keyword, args)) = tokens.split_first() else {
            continue;
        };
        last_line = n + 1;
        let end_column = {
            let last = tokens.last().expect("non-empty");
            last.column + last.text.chars().count()
        };
        let st = Statement {
            line: n + 1,
            end_column,
            keyword,
            args: args.to_vec(),
        };

        let Some(width) = qubits else {
            if keyword.text != "qubits" {
                return Err(st.error_at(
                    keyword,
                    format!("expected `qubits <count>` header before `{}`", keyword.text),
                ));
            }
            st.arity(&["a qubit count"])?;
            let arg = st.args[0];
            let count = parse_unsigned(arg.text)
                .filter(|q| (1..=MAX_QUBITS as u64).contains(q))
                .ok_or_else(|| {
                    st.error_at(
                        arg,
                        format!(
                            "expected a qubit count in 1..={MAX_QUBITS}, found `{}`",
                            arg.text
                        ),
                    )
                })?;
            qubits = Some(count as u32);
            continue;
        };

        if let Some(m) = &measure {
            return Err(m.error_at(
                m.keyword,
                format!(
                    "`measure` must be the final statement, but `{}` follows on line {}",
                    keyword.text, st.line
                ),
            ));
        }

        let stage = match keyword.text {
            "qubits" => {
                return Err(st.error_at(keyword, "duplicate `qubits` header".to_string()));
            }
            "init" => {
                if initial.is_some() || !stages.is_empty() {
                    return Err(st.error_at(
                        keyword,
                        "`init` must appear once, before any stage".to_string(),
                    ));
                }
                st.arity(&["a bitstring"])?;
                initial = Some(st.bitstring(st.args[0], width)?);
                continue;
            }
            "h" => {
                st.arity(&["a qubit index or `all`"])?;
                let arg = st.args[0];
                if arg.text == "all" {
                    Stage::Hadamard(HadamardTarget::All)
                } else {
                    let k = parse_unsigned(arg.text).ok_or_else(|| {
                        st.error_at(
                            arg,
                            format!("expected a qubit index or `all`, found `{}`", arg.text),
                        )
                    })?;
                    if k >= width as u64 {
                        return Err(st.error_at(
                            arg,
                            format!("qubit index {k} out of range for {width} qubit(s)"),
                        ));
                    }
                    Stage::Hadamard(HadamardTarget::Qubit(k as u32))
                }
            }
            "cpf" => {
                st.arity(&["a bitstring"])?;
                Stage::PhaseShift(PhaseShiftSpec::flip(st.bitstring(st.args[0], width)?))
            }
            "cps" => {
                st.arity(&["a bitstring", "an angle"])?;
                let marked = st.bitstring(st.args[0], width)?;
                let arg = st.args[1];
                let theta = parse_angle(arg.text).ok_or_else(|| {
                    st.error_at(
                        arg,
                        format!(
                            "malformed angle `{}`: expected a decimal or `k*pi/m`",
                            arg.text
                        ),
                    )
                })?;
                Stage::PhaseShift(PhaseShiftSpec { marked, theta })
            }
            "diffuse" => {
                st.arity(&[])?;
                Stage::Diffuse
            }
            "checkpoint" => {
                st.arity(&["a checkpoint label"])?;
                let arg = st.args[0];
                if !is_identifier(arg.text) {
                    return Err(st.error_at(
                        arg,
                        format!("checkpoint label `{}` is not an identifier", arg.text),
                    ));
                }
                Stage::Checkpoint(arg.text.to_string())
            }
            "measure" => {
                st.arity(&[])?;
                stages.push(Stage::Measure);
                measure = Some(st);
                continue;
            }
            other => {
                return Err(st.error_at(
                    keyword,
                    format!("unknown keyword `{other}`; expected one of {KEYWORDS}"),
                ));
            }
        };
        stages.push(stage);
    }

    let Some(width) = qubits else {
        return Err(ParseError {
            position: SourcePosition {
                line: last_line,
                column: 1,
            },
            message: "expected `qubits <count>` header".to_string(),
            token: String::new(),
        });
    };
    let circuit = Circuit::new(width, stages).expect("statements validated while parsing");
    Ok(match initial {
        Some(i) => circuit.with_initial(i).expect("validated bitstring"),
        None => circuit,
    })
}

/// Canonical text for `circuit`; [`parse_circuit`] maps it back to an equal
/// circuit. A phase shift by exactly π prints as `cpf`.
pub fn print_circuit(circuit: &Circuit) -> String {
    let q = circuit.qubits();
    let mut out = String::new();
    let _ = writeln!(out, "qubits {q}");
    if circuit.initial() != BasisIndex(0) {
        let _ = writeln!(out, "init {}", circuit.initial().to_bitstring(q));
    }
    for stage in circuit.stages() {
        let _ = match stage {
            Stage::Hadamard(HadamardTarget::All) => writeln!(out, "h all"),
            Stage::Hadamard(HadamardTarget::Qubit(k)) => writeln!(out, "h {k}"),
            Stage::PhaseShift(spec) if spec.is_flip() => {
                writeln!(out, "cpf {}", spec.marked.to_bitstring(q))
            }
            Stage::PhaseShift(spec) => writeln!(
                out,
                "cps {} {}",
                spec.marked.to_bitstring(q),
                format_angle(spec.theta)
            ),
            Stage::Diffuse => writeln!(out, "diffuse"),
            Stage::Checkpoint(label) => writeln!(out, "checkpoint {label}"),
            Stage::Measure => writeln!(out, "measure"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpretation::Builtin;

    fn err(text: &str) -> ParseError {
        parse_circuit(text).unwrap_err()
    }

    #[test]
    fn figure2_with_diffuse_primitive() {
        let c =
            parse_circuit("qubits 2\nh all\ncpf 11\ncheckpoint merge\ndiffuse\nmeasure\n").unwrap();
        assert_eq!(c.qubits(), 2);
        assert_eq!(
            c.stages(),
            &[
                Stage::Hadamard(HadamardTarget::All),
                Stage::PhaseShift(PhaseShiftSpec::flip(BasisIndex(3))),
                Stage::Checkpoint("merge".into()),
                Stage::Diffuse,
                Stage::Measure,
            ]
        );
    }

    #[test]
    fn documented_errors() {
        let e = err("qubits 2\nh 5\n");
        assert_eq!(e.position, SourcePosition { line: 2, column: 3 });
        assert_eq!(e.token, "5");
        assert!(e.message.contains("out of range"), "{}", e.message);

        let e = err("qubits 2\ncpf 111\n");
        assert_eq!(e.position.line, 2);
        assert_eq!(e.token, "111");
        assert!(e.message.contains("length 3") && e.message.contains("count 2"));
    }

    #[test]
    fn header_errors() {
        let e = err("h all\n");
        assert_eq!((e.position.line, e.token.as_str()), (1, "h"));
        let e = err("qubits 1\nqubits 1\n");
        assert_eq!(e.position.line, 2);
        assert!(e.message.contains("duplicate"));
        let e = err("# nothing here\n\n");
        assert!(e.message.contains("qubits"));
        let e = err("");
        assert_eq!(e.position, SourcePosition { line: 1, column: 1 });
        let e = err("qubits 0\n");
        assert_eq!(e.token, "0");
        let e = err("qubits\n");
        assert_eq!(e.position, SourcePosition { line: 1, column: 7 });
        assert_eq!(e.token, "");
    }

    #[test]
    fn statement_errors() {
        let e = err("qubits 1\nhadamard 0\n");
        assert_eq!((e.position.line, e.token.as_str()), (2, "hadamard"));
        assert!(e.message.contains("unknown keyword"));

        let e = err("qubits 1\nmeasure\nh 0\n");
        assert_eq!((e.position.line, e.token.as_str()), (2, "measure"));
        let e = err("qubits 1\nmeasure\nmeasure\n");
        assert_eq!(e.position.line, 2);

        let e = err("qubits 1\ncps 1 pie\n");
        assert_eq!((e.position.line, e.token.as_str()), (2, "pie"));
        assert!(e.message.contains("malformed angle"));

        let e = err("qubits 1\ncpf 2\n");
        assert_eq!(e.token, "2");
        let e = err("qubits 1\ndiffuse now\n");
        assert_eq!((e.position.column, e.token.as_str()), (9, "now"));
        let e = err("qubits 1\ncheckpoint 1st\n");
        assert_eq!(e.token, "1st");
        let e = err("qubits 1\nh 0\ninit 1\n");
        assert_eq!((e.position.line, e.token.as_str()), (3, "init"));
    }

    #[test]
    fn comments_blank_lines_and_crlf() {
        let c = parse_circuit("# figure 3\r\nqubits 1 # one qubit\r\n\r\n  h 0\r\ncheckpoint stage3\r\nh 0\r\nmeasure")
            .unwrap();
        assert_eq!(c, Builtin::Figure3.circuit());
    }

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi"), Some(PI));
        assert_eq!(parse_angle("-pi"), Some(-PI));
        assert_eq!(parse_angle("pi/2"), Some(FRAC_PI_2));
        assert_eq!(parse_angle("2pi"), Some(2.0 * PI));
        assert_eq!(parse_angle("3*pi/4"), Some(3.0 * PI / 4.0));
        assert_eq!(parse_angle("-1*pi/8"), Some(-PI / 8.0));
        assert_eq!(parse_angle("0.25"), Some(0.25));
        assert_eq!(parse_angle("-1e-3"), Some(-1e-3));
        for bad in [
            "", "pi/0", "pi/", "*pi", "x", "inf", "NaN", "1..2", "pi2", "2*pi*2",
        ] {
            assert_eq!(parse_angle(bad), None, "{bad}");
        }
    }

    #[test]
    fn printing() {
        assert_eq!(
            print_circuit(&Builtin::Figure3.circuit()),
            "qubits 1\nh 0\ncheckpoint stage3\nh 0\nmeasure\n"
        );
        let c = parse_circuit("qubits 2\ncps 11 pi\ncps 01 pi/2\ncps 10 0.5\n").unwrap();
        assert_eq!(
            print_circuit(&c),
            "qubits 2\ncpf 11\ncps 01 pi/2\ncps 10 0.5\n"
        );
        let c = parse_circuit("qubits 3\ninit 101\nh 2\n").unwrap();
        assert_eq!(c.initial(), BasisIndex(5));
        assert_eq!(print_circuit(&c), "qubits 3\ninit 101\nh 2\n");
    }

    #[test]
    fn builtins_round_trip() {
        for b in Builtin::ALL {
            let c = b.circuit();
            assert_eq!(parse_circuit(&print_circuit(&c)).unwrap(), c);
        }
    }
}
