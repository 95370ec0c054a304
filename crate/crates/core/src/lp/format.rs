//! CPLEX LP text format, for cross-checking a model against other solvers.

use std::fmt::Write as _;

use super::{LinearProgram, Sense};

fn terms(out: &mut String, coeffs: &[(usize, f64)]) {
    if coeffs.is_empty() {
        out.push_str(" 0 x0");
        return;
    }
    for &(j, a) in coeffs {
        let sign = if a < 0.0 { '-' } else { '+' };
        let _ = write!(out, " {sign} {} x{j}", a.abs());
    }
}

pub fn to_lp_format(lp: &LinearProgram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ {} variables, {} rows", lp.num_vars, lp.rows.len());
    out.push_str("Minimize\n obj:");
    terms(&mut out, &lp.objective);
    out.push_str("\nSubject To\n");
    for (i, row) in lp.rows.iter().enumerate() {
        let _ = write!(out, " c{i}:");
        terms(&mut out, &row.coeffs);
        let op = match row.sense {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        };
        let _ = writeln!(out, " {op} {}", row.rhs);
    }
    out.push_str("Bounds\n");
    for (j, u) in lp.upper.iter().enumerate() {
        match u {
            Some(u) => {
                let _ = writeln!(out, " 0 <= x{j} <= {u}");
            }
            None => {
                let _ = writeln!(out, " x{j} >= 0");
            }
        }
    }
    out.push_str("End\n");
    out
}
