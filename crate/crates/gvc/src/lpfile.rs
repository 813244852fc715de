//! CPLEX LP text export.

use std::fmt::Write as _;

use gvc_core::lp::{LpModel, Relation, VarRole};
use gvc_core::{GvcInstance, Sense};

use crate::format::format_number;

/// `x_i`, `y_i_j`, `z_i_j`, `r_i_j` with 1-based vertex numbers.
pub fn variable_name(instance: &GvcInstance, role: VarRole) -> String {
    let edge = |e: usize| {
        let ed = instance.edge(e);
        format!("{}_{}", ed.u + 1, ed.v + 1)
    };
    match role {
        VarRole::X(i) => format!("x_{}", i + 1),
        VarRole::Y(e) => format!("y_{}", edge(e)),
        VarRole::Z(e) => format!("z_{}", edge(e)),
        VarRole::R(e) => format!("r_{}", edge(e)),
    }
}

/// Terms per line; LP readers limit line length.
const TERMS_PER_LINE: usize = 8;

fn linear(out: &mut String, terms: impl Iterator<Item = (String, f64)>) {
    let mut first = true;
    let mut written = 0;
    for (name, coef) in terms {
        if coef == 0.0 {
            continue;
        }
        if written > 0 && written % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        written += 1;
        let sign = if coef < 0.0 { "-" } else { "+" };
        let mag = coef.abs();
        if first {
            if coef < 0.0 {
                out.push_str(" -");
            }
        } else {
            let _ = write!(out, " {sign}");
        }
        if mag == 1.0 {
            let _ = write!(out, " {name}");
        } else {
            let _ = write!(out, " {} {name}", format_number(mag));
        }
        first = false;
    }
    if first {
        out.push_str(" 0");
    }
}

pub fn export(model: &LpModel, instance: &GvcInstance) -> String {
    let names: Vec<String> = model
        .variables
        .iter()
        .map(|v| variable_name(instance, v.role))
        .collect();
    let mut out = String::new();
    let _ = writeln!(out, "\\ formulation {}", model.formulation.tag());
    let _ = writeln!(
        out,
        "\\ objective constant {}",
        format_number(model.objective_constant)
    );
    out.push_str(match model.sense {
        Sense::Minimize => "Minimize\n",
        Sense::Maximize => "Maximize\n",
    });
    out.push_str(" obj:");
    linear(
        &mut out,
        model
            .variables
            .iter()
            .enumerate()
            .map(|(k, v)| (names[k].clone(), v.cost)),
    );
    out.push_str("\nSubject To\n");
    for (r, row) in model.constraints.iter().enumerate() {
        let _ = write!(out, " c{}:", r + 1);
        linear(&mut out, row.terms.iter().map(|&(k, a)| (names[k].clone(), a)));
        let rel = match row.relation {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        };
        let _ = writeln!(out, " {rel} {}", format_number(row.rhs));
    }
    out.push_str("Bounds\n");
    for (k, v) in model.variables.iter().enumerate() {
        let _ = writeln!(
            out,
            " {} <= {} <= {}",
            format_number(v.lower),
            names[k],
            format_number(v.upper)
        );
    }
    out.push_str("End\n");
    out
}
