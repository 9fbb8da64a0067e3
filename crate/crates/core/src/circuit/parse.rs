use thiserror::Error;

use super::{CircuitIR, Gate, MAX_REGISTER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: qubit {qubit} out of range for a {n_qubits}-qubit register")]
    Index { line: usize, qubit: usize, n_qubits: usize },
    #[error("line {line}: cphase {k} {s} needs s > k")]
    Order { line: usize, k: usize, s: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match *self {
            ParseError::Syntax { line, .. } | ParseError::Index { line, .. } | ParseError::Order { line, .. } => line,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Parses the line-oriented circuit format.
///
/// ```text
/// # comment
/// reg 2
/// w 0
/// cphase 0 1
/// ```
pub fn parse_circuit(text: &str) -> Result<CircuitIR, ParseError> {
    parse_circuit_named(text, "circuit")
}

pub fn parse_circuit_named(text: &str, name: &str) -> Result<CircuitIR, ParseError> {
    let mut n_qubits: Option<usize> = None;
    let mut gates = Vec::new();
    let mut marks: Vec<usize> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let op = tokens.next().expect("non-empty line");
        let args: Vec<&str> = tokens.collect();

        let Some(n) = n_qubits else {
            if op != "reg" {
                return Err(syntax(line, format!("expected `reg <N>` before `{op}`")));
            }
            let [arg] = args[..] else {
                return Err(syntax(line, "`reg` takes one argument"));
            };
            let n = parse_int(line, arg)?;
            if !(1..=MAX_REGISTER).contains(&n) {
                return Err(syntax(line, format!("register size {n} outside 1..={MAX_REGISTER}")));
            }
            n_qubits = Some(n);
            continue;
        };

        let qubit = |s: &str| -> Result<usize, ParseError> {
            let q = parse_int(line, s)?;
            if q >= n {
                return Err(ParseError::Index { line, qubit: q, n_qubits: n });
            }
            Ok(q)
        };
        let single = |ctor: fn(usize) -> Gate| -> Result<Gate, ParseError> {
            let [a] = args[..] else {
                return Err(syntax(line, format!("`{op}` takes one qubit")));
            };
            Ok(ctor(qubit(a)?))
        };

        let gate = match op {
            "reg" => return Err(syntax(line, "duplicate `reg` directive")),
            "w" => single(Gate::W)?,
            "pz" => single(Gate::Pz)?,
            "px" => single(Gate::Px)?,
            "npz" => single(Gate::Npz)?,
            "npx" => single(Gate::Npx)?,
            "cphase" => {
                let [a, b] = args[..] else {
                    return Err(syntax(line, "`cphase` takes two qubits"));
                };
                let (k, s) = (qubit(a)?, qubit(b)?);
                if s <= k {
                    return Err(ParseError::Order { line, k, s });
                }
                Gate::CPhase { control: k, target: s }
            }
            "oracle" => {
                let [name] = args[..] else {
                    return Err(syntax(line, "`oracle` takes one name"));
                };
                Gate::Oracle(name.to_string())
            }
            "stage" => {
                if !args.is_empty() {
                    return Err(syntax(line, "`stage` takes no arguments"));
                }
                if gates.len() == marks.last().copied().unwrap_or(0) {
                    return Err(syntax(line, "empty stage"));
                }
                marks.push(gates.len());
                continue;
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        };
        gates.push(gate);
    }

    let Some(n) = n_qubits else {
        return Err(syntax(last_line.max(1), "missing `reg <N>` directive"));
    };
    if marks.last() == Some(&gates.len()) {
        return Err(syntax(last_line, "empty stage at end of circuit"));
    }
    Ok(CircuitIR { name: name.to_string(), n_qubits: n, gates, stage_marks: marks })
}

fn parse_int(line: usize, s: &str) -> Result<usize, ParseError> {
    s.parse().map_err(|_| syntax(line, format!("expected a non-negative integer, found `{s}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_circuit() {
        let c = parse_circuit("reg 2\nw 0\ncphase 0 1").unwrap();
        assert_eq!(c.n_qubits, 2);
        assert_eq!(c.gates, vec![Gate::W(0), Gate::CPhase { control: 0, target: 1 }]);
        assert!(c.stage_marks.is_empty());
    }

    #[test]
    fn comments_blank_lines_and_stages() {
        let text = "# header\n\nreg 3  # three qubits\npz 0\nstage\nnpx 2\noracle gamma\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.gates, vec![Gate::Pz(0), Gate::Npx(2), Gate::Oracle("gamma".into())]);
        assert_eq!(c.stage_marks, vec![1]);
        assert_eq!(c.stages().len(), 2);
    }

    #[test]
    fn index_error_reports_line() {
        let err = parse_circuit("reg 1\nw 5").unwrap_err();
        assert_eq!(err, ParseError::Index { line: 2, qubit: 5, n_qubits: 1 });
    }

    #[test]
    fn reg_must_come_first() {
        let err = parse_circuit("w 0\nreg 2").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
    }

    #[test]
    fn cphase_order() {
        assert_eq!(parse_circuit("reg 3\ncphase 2 1").unwrap_err(), ParseError::Order { line: 2, k: 2, s: 1 });
        assert!(matches!(parse_circuit("reg 3\ncphase 1 1").unwrap_err(), ParseError::Order { .. }));
    }

    #[test]
    fn syntax_errors() {
        for (text, line) in [
            ("", 1),
            ("reg 0", 1),
            ("reg 21", 1),
            ("reg x", 1),
            ("reg 2\nreg 2", 2),
            ("reg 2\nfoo 1", 2),
            ("reg 2\nw", 2),
            ("reg 2\nw 0 1", 2),
            ("reg 2\nw -1", 2),
            ("reg 2\nstage\nw 0", 2),
            ("reg 2\nw 0\nstage", 3),
            ("reg 2\noracle", 2),
        ] {
            let err = parse_circuit(text).unwrap_err();
            assert!(matches!(err, ParseError::Syntax { .. }), "{text:?}: {err}");
            assert_eq!(err.line(), line, "{text:?}");
        }
    }

    #[test]
    fn canonical_text_round_trip() {
        let text = "reg 3\n# c\nw 0\n  cphase 0 2\nstage\npz 1\n";
        let c = parse_circuit(text).unwrap();
        let canon = c.to_text();
        assert_eq!(canon, "reg 3\nw 0\ncphase 0 2\nstage\npz 1\n");
        assert_eq!(parse_circuit(&canon).unwrap().to_text(), canon);
    }
}
