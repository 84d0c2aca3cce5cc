//! Output emitters: human-readable tables, JSON, and LaTeX tabulars laid
//! out like the reference tables for visual diffing.

use multideriv::arrangement::Arrangement;
use multideriv::basis::{classify, table4_exponents, BasisCertificate, CaseKind};
use multideriv::bipoly::{BiPoly, RatFn};
use multideriv::deriv::Derivation;
use multideriv::jsonio::CertificateJson;

use crate::Format;

pub fn certificate(cert: &BasisCertificate, arr: &Arrangement, format: Format) {
    match format {
        Format::Json => {
            let encoded = CertificateJson::encode(cert, arr);
            println!("{}", serde_json::to_string_pretty(&encoded).unwrap());
        }
        Format::Pretty => {
            println!(
                "basis of D(A, ({}, {})) for I2({}) — {}",
                cert.a1, cert.a2, cert.h, cert.case
            );
            println!("  theta1 = {}", cert.basis.0);
            println!("  theta2 = {}", cert.basis.1);
            println!("  exponents: ({}, {})", cert.exponents.0, cert.exponents.1);
            println!("  saito scalar (pre-normalization): {}", cert.saito_scalar);
            println!("  verified: {}", cert.verified);
            println!("  trace:");
            for line in &cert.trace {
                println!("    {}", line);
            }
        }
        Format::Latex => {
            println!("\\begin{{tabular}}{{|c|c|c|}}");
            println!("\\hline");
            println!("$(a_1, a_2)$ & basis for $D(\\mathcal{{A}}, (a_1, a_2))$ & exponents\\\\");
            println!("\\hline");
            println!(
                "$({}, {})$ & ${}$, ${}$ & ${}, {}$\\\\",
                cert.a1,
                cert.a2,
                latex_derivation(&cert.basis.0),
                latex_derivation(&cert.basis.1),
                cert.exponents.0,
                cert.exponents.1
            );
            println!("\\hline");
            println!("\\end{{tabular}}");
        }
    }
}

pub fn exponent_grid(
    h: u32,
    range: i64,
    results: &[((i64, i64), BasisCertificate)],
    format: Format,
) {
    match format {
        Format::Json => {
            let cells: Vec<serde_json::Value> = results
                .iter()
                .map(|((a1, a2), cert)| {
                    let formula = table4_exponents(h, *a1, *a2);
                    serde_json::json!({
                        "a1": a1,
                        "a2": a2,
                        "exponents": [formula.0, formula.1],
                        "constructed": [cert.exponents.0, cert.exponents.1],
                        "case": cert.case,
                        "verified": cert.verified,
                    })
                })
                .collect();
            let value = serde_json::json!({ "h": h, "range": range, "cells": cells });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Pretty => {
            println!(
                "exponents of D(A, (a1, a2)) for I2({h}), |a1|, |a2| <= {range} (formula = constructed, all verified)"
            );
            print!("{:>10}", "a1\\a2");
            for a2 in -range..=range {
                print!("{:>12}", a2);
            }
            println!();
            for a1 in -range..=range {
                print!("{:>10}", a1);
                for a2 in -range..=range {
                    let (e1, e2) = table4_exponents(h, a1, a2);
                    print!("{:>12}", format!("({e1},{e2})"));
                }
                println!();
            }
        }
        Format::Latex => {
            latex_table4(h);
            println!();
            println!("\\begin{{tabular}}{{|c|{}|}}", "c".repeat((2 * range + 1) as usize));
            println!("\\hline");
            print!("$a_1 \\backslash a_2$");
            for a2 in -range..=range {
                print!(" & ${a2}$");
            }
            println!("\\\\");
            println!("\\hline");
            for a1 in -range..=range {
                print!("${a1}$");
                for a2 in -range..=range {
                    let (e1, e2) = table4_exponents(h, a1, a2);
                    print!(" & $({e1}, {e2})$");
                }
                println!("\\\\");
            }
            println!("\\hline");
            println!("\\end{{tabular}}");
            if range == 1 {
                println!();
                latex_table3(h, results);
            }
        }
    }
}

/// The closed-form exponent table, one row per parity class.
fn latex_table4(h: u32) {
    println!("% closed-form exponents, h = {h}");
    println!("\\begin{{tabular}}{{|c|c|c|c|c|}}");
    println!("\\hline");
    println!("$a_1$ & $a_2$ & $a_1 - a_2$ & exponents of $(\\mathcal{{A}}, (a_1, a_2))$ & difference\\\\");
    println!("\\hline");
    println!("odd & odd & $\\equiv 0 \\ (\\mathrm{{mod}}\\ 4)$ & $\\frac{{(a_1+a_2-2)h}}{{4}}+1,\\ \\frac{{(a_1+a_2+2)h}}{{4}}-1$ & $h-2$\\\\");
    println!("\\hline");
    println!("odd & odd & $\\equiv 2 \\ (\\mathrm{{mod}}\\ 4)$ & $\\frac{{(a_1+a_2)h}}{{4}}+1,\\ \\frac{{(a_1+a_2)h}}{{4}}-1$ & $2$\\\\");
    println!("\\hline");
    println!("odd & even & & $\\frac{{(a_1+a_2-1)h}}{{4}}+1,\\ \\frac{{(a_1+a_2+1)h}}{{4}}-1$ & $(h/2)-2$\\\\");
    println!("\\hline");
    println!("even & odd & & $\\frac{{(a_1+a_2-1)h}}{{4}}+1,\\ \\frac{{(a_1+a_2+1)h}}{{4}}-1$ & $(h/2)-2$\\\\");
    println!("\\hline");
    println!("even & even & & $\\frac{{(a_1+a_2)h}}{{4}},\\ \\frac{{(a_1+a_2)h}}{{4}}$ & $0$\\\\");
    println!("\\hline");
    println!("\\end{{tabular}}");
}

/// The 3x3 block around the origin, in the layout of the small table:
/// multiplicity, basis, exponents, difference.
fn latex_table3(h: u32, results: &[((i64, i64), BasisCertificate)]) {
    println!("% the nine small multiplicities, h = {h}");
    println!("\\begin{{tabular}}{{|c|c|c|c|}}");
    println!("\\hline");
    println!("$(a_1, a_2)$ & basis & exponents & difference\\\\");
    println!("\\hline");
    let order = [
        (1, 1),
        (1, 0),
        (0, 1),
        (1, -1),
        (0, 0),
        (-1, 1),
        (0, -1),
        (-1, 0),
        (-1, -1),
    ];
    for cell in order {
        let Some((_, cert)) = results.iter().find(|(c, _)| *c == cell) else {
            continue;
        };
        let plan = classify(cell.0, cell.1);
        let basis = match (plan.kind, plan.thetas) {
            (CaseKind::Ordinary, Some((t1, t2))) => {
                format!("${}$, ${}$", latex_tag(t1.label()), latex_tag(t2.label()))
            }
            _ => format!(
                "${}$, ${}$",
                latex_derivation(&cert.basis.0),
                latex_derivation(&cert.basis.1)
            ),
        };
        let (e1, e2) = cert.exponents;
        println!(
            "$({}, {})$ & {} & ${}, {}$ & ${}$\\\\",
            cell.0,
            cell.1,
            basis,
            e1,
            e2,
            (e2 - e1).abs()
        );
        println!("\\hline");
    }
    println!("\\end{{tabular}}");
}

fn latex_tag(label: &str) -> String {
    label
        .replace("I*(dP2)", "I^*(dP_2)")
        .replace("I*(dQ/Q)", "I^*(dQ/Q)")
        .replace("I*(dQ1/Q1)", "I^*(dQ_1/Q_1)")
        .replace("I*(dQ2/Q2)", "I^*(dQ_2/Q_2)")
        .replace("I*(dQ1)", "I^*(dQ_1)")
        .replace("I*(dQ2)", "I^*(dQ_2)")
        .replace("D1", "D_1")
        .replace("D2", "D_2")
        .replace("d/dx1", "\\partial_{x_1}")
        .replace("d/dx2", "\\partial_{x_2}")
}

pub fn show_arrangement(arr: &Arrangement, format: Format) {
    let h = arr.h();
    match format {
        Format::Json => {
            let lines: Vec<serde_json::Value> = arr
                .lines()
                .iter()
                .enumerate()
                .map(|(j, alpha)| {
                    serde_json::json!({
                        "index": j,
                        "orbit": arr.orbit_of(j) + 1,
                        "form": format!("{}", alpha),
                        "angle_degrees": 180.0 * (j as f64) / (h as f64),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "h": h,
                "two_h": arr.two_h(),
                "lines": lines,
                "Q1": format!("{}", arr.q1()),
                "Q2": format!("{}", arr.q2()),
                "Q": format!("{}", arr.q()),
                "P1": format!("{}", arr.p1()),
                "P2": format!("{}", arr.p2()),
                "rotation": matrix_strings(arr, true),
                "reflection": matrix_strings(arr, false),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Pretty | Format::Latex => {
            println!("dihedral arrangement I2({h}): {h} lines, coefficients in Q(zeta_{})", arr.two_h());
            println!("lines (alpha_j = -sin(j pi/{h}) x1 + cos(j pi/{h}) x2):");
            for (j, alpha) in arr.lines().iter().enumerate() {
                println!(
                    "  j={j:2}  orbit {}  angle {:6.1} deg   {}",
                    arr.orbit_of(j) + 1,
                    180.0 * (j as f64) / (h as f64),
                    alpha
                );
            }
            println!("Q1 = {}", arr.q1());
            println!("Q2 = {}", arr.q2());
            println!("Q  = Q1*Q2 = {}", arr.q());
            println!("P1 = {}", arr.p1());
            println!("P2 = Q1^2 = {}", arr.p2());
            let r = arr.gen_rot();
            let s = arr.gen_refl();
            println!("rotation r (2 pi/{h}):   [[{}, {}], [{}, {}]]", r.m[0][0], r.m[0][1], r.m[1][0], r.m[1][1]);
            println!("reflection s (x2 -> -x2): [[{}, {}], [{}, {}]]", s.m[0][0], s.m[0][1], s.m[1][0], s.m[1][1]);
        }
    }
}

fn matrix_strings(arr: &Arrangement, rot: bool) -> Vec<Vec<String>> {
    let m = if rot { arr.gen_rot() } else { arr.gen_refl() };
    (0..2)
        .map(|i| (0..2).map(|j| format!("{}", m.m[i][j])).collect())
        .collect()
}

fn latex_ratfn(r: &RatFn) -> String {
    let num = latex_poly(r.num());
    match (r.den_q1(), r.den_q2()) {
        (0, 0) => num,
        (a, 0) => format!("\\frac{{{}}}{{{}}}", num, latex_qpow("Q_1", a)),
        (0, b) => format!("\\frac{{{}}}{{{}}}", num, latex_qpow("Q_2", b)),
        (a, b) => format!(
            "\\frac{{{}}}{{{} {}}}",
            num,
            latex_qpow("Q_1", a),
            latex_qpow("Q_2", b)
        ),
    }
}

fn latex_qpow(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{{{e}}}")
    }
}

fn latex_poly(p: &BiPoly) -> String {
    format!("{}", p)
        .replace("x1", "x_1")
        .replace("x2", "x_2")
        .replace('*', " ")
        .replace('^', "^")
}

fn latex_derivation(d: &Derivation) -> String {
    let mut parts = Vec::new();
    if !d.c1().is_zero() {
        parts.push(format!(
            "\\left({}\\right) \\partial_{{x_1}}",
            latex_ratfn(d.c1())
        ));
    }
    if !d.c2().is_zero() {
        parts.push(format!(
            "\\left({}\\right) \\partial_{{x_2}}",
            latex_ratfn(d.c2())
        ));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
