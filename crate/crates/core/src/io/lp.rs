//! CPLEX-LP text for the small-cut covering relaxation, and a reader for the
//! subset of the format this module writes.
//!
//! Rows come in matrix order (`cut_Q_1..`, then `cut_N_1..`), every variable is
//! `x_<link id>`, and the objective uses unit costs.

use thiserror::Error;

use crate::construction::Instance;

const OBJECTIVE_TERMS_PER_LINE: usize = 16;

fn terms(ids: impl IntoIterator<Item = usize>) -> String {
    ids.into_iter()
        .map(|i| format!("x_{i}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn constraint_name(cut: crate::construction::ListedCut) -> String {
    format!("cut_{cut}")
}

pub fn write_lp(inst: &Instance) -> String {
    let m = inst.m();
    let mut out = String::new();
    out.push_str(&format!(
        "\\ Cover Small Cuts LP relaxation: k = {}, n = {}, lambda = {}, {} links\n",
        inst.k,
        inst.n(),
        inst.lambda(),
        m
    ));
    out.push_str("Minimize\n obj:");
    let ids: Vec<usize> = (1..=m).collect();
    for (i, chunk) in ids.chunks(OBJECTIVE_TERMS_PER_LINE).enumerate() {
        if i > 0 {
            out.push_str("\n     +");
        }
        out.push(' ');
        out.push_str(&terms(chunk.iter().copied()));
    }
    out.push_str("\nSubject To\n");
    for cut in inst.listed_cuts() {
        out.push_str(&format!(
            " {}: {} >= 1\n",
            constraint_name(cut),
            terms(inst.cut_links(cut))
        ));
    }
    out.push_str("Bounds\n");
    for i in 1..=m {
        out.push_str(&format!(" 0 <= x_{i} <= 1\n"));
    }
    out.push_str("End\n");
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing section {0}")]
    MissingSection(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpConstraint {
    pub name: String,
    /// Variable indices with coefficient 1.
    pub vars: Vec<usize>,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub objective: Vec<usize>,
    pub constraints: Vec<LpConstraint>,
    /// `(var, lower, upper)`
    pub bounds: Vec<(usize, i64, i64)>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Preamble,
    Objective,
    Constraints,
    Bounds,
    End,
}

fn parse_var(tok: &str, line: usize) -> Result<usize, LpError> {
    tok.strip_prefix("x_")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| LpError::Syntax {
            line,
            message: format!("bad variable {tok:?}"),
        })
}

fn parse_sum(expr: &str, line: usize) -> Result<Vec<usize>, LpError> {
    expr.split('+')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_var(t, line))
        .collect()
}

pub fn parse_lp(text: &str) -> Result<LpModel, LpError> {
    let mut section = Section::Preamble;
    let mut model = LpModel {
        objective: Vec::new(),
        constraints: Vec::new(),
        bounds: Vec::new(),
    };
    let mut seen_constraints = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let syntax = |message: String| LpError::Syntax {
            line: line_no,
            message,
        };
        let line = raw.split('\\').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.to_ascii_lowercase().as_str() {
            "minimize" | "min" => {
                section = Section::Objective;
                continue;
            }
            "subject to" | "st" | "s.t." => {
                section = Section::Constraints;
                seen_constraints = true;
                continue;
            }
            "bounds" => {
                section = Section::Bounds;
                continue;
            }
            "end" => {
                section = Section::End;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Preamble | Section::End => return Err(syntax(format!("unexpected {line:?}"))),
            Section::Objective => {
                let expr = line.split_once(':').map_or(line, |(_, e)| e);
                model.objective.extend(parse_sum(expr, line_no)?);
            }
            Section::Constraints => {
                let (name, rest) = line
                    .split_once(':')
                    .ok_or_else(|| syntax("constraint without name".into()))?;
                let (lhs, rhs) = rest
                    .split_once(">=")
                    .ok_or_else(|| syntax("expected >=".into()))?;
                let rhs = rhs
                    .trim()
                    .parse()
                    .map_err(|_| syntax(format!("bad rhs {rhs:?}")))?;
                model.constraints.push(LpConstraint {
                    name: name.trim().to_string(),
                    vars: parse_sum(lhs, line_no)?,
                    rhs,
                });
            }
            Section::Bounds => {
                let parts: Vec<&str> = line.split("<=").map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(syntax(format!("bad bound {line:?}")));
                }
                let lo = parts[0]
                    .parse()
                    .map_err(|_| syntax("bad lower bound".into()))?;
                let hi = parts[2]
                    .parse()
                    .map_err(|_| syntax("bad upper bound".into()))?;
                model.bounds.push((parse_var(parts[1], line_no)?, lo, hi));
            }
        }
    }
    if model.objective.is_empty() {
        return Err(LpError::MissingSection("Minimize"));
    }
    if !seen_constraints {
        return Err(LpError::MissingSection("Subject To"));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_incidence_matrix, build_instance};

    fn line_for<'a>(text: &'a str, name: &str) -> &'a str {
        text.lines()
            .find(|l| l.trim_start().starts_with(&format!("{name}:")))
            .unwrap()
            .trim()
    }

    #[test]
    fn k4_constraints() {
        let text = write_lp(&build_instance(4).unwrap());
        assert_eq!(
            line_for(&text, "cut_N_1"),
            "cut_N_1: x_1 + x_2 + x_3 + x_4 >= 1"
        );
        assert_eq!(
            line_for(&text, "cut_Q_1"),
            "cut_Q_1: x_1 + x_3 + x_5 + x_6 >= 1"
        );
        let model = parse_lp(&text).unwrap();
        assert_eq!(model.constraints.len(), 10);
        assert_eq!(model.objective, (1..=10).collect::<Vec<_>>());
        assert_eq!(model.bounds.len(), 10);
        assert!(model.bounds.iter().all(|&(_, lo, hi)| lo == 0 && hi == 1));
        assert_eq!(model.constraints[0].name, "cut_Q_1");
        assert_eq!(model.constraints[3].name, "cut_N_1");
    }

    #[test]
    fn reparsed_rows_match_incidence_matrix() {
        for k in (4..=12).step_by(2) {
            let inst = build_instance(k).unwrap();
            let model = parse_lp(&write_lp(&inst)).unwrap();
            let a = build_incidence_matrix(&inst);
            assert_eq!(model.objective.len(), inst.m());
            assert_eq!(model.constraints.len(), a.rows());
            for (r, c) in model.constraints.iter().enumerate() {
                let mut row = vec![0i64; inst.m()];
                for &v in &c.vars {
                    row[v - 1] += 1;
                }
                assert_eq!(row, a.row_i64(r).unwrap(), "k={k} row {}", c.name);
                assert_eq!(c.rhs, 1);
            }
        }
    }

    #[test]
    fn parser_errors() {
        assert!(matches!(
            parse_lp("Subject To\n c: x_1 >= 1\n"),
            Err(LpError::MissingSection("Minimize"))
        ));
        assert!(parse_lp("Minimize\n obj: x_1\nSubject To\n c: y >= 1\n").is_err());
        assert!(parse_lp("Minimize\n obj: x_1\nSubject To\n c x_1 >= 1\n").is_err());
        assert!(parse_lp("garbage\n").is_err());
    }
}
