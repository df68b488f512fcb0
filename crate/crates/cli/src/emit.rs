//! Output formats. Each format is an `Emitter` looked up by name.

use std::fmt::Write;

use charvar::reducible_engine::RileyKind;
use charvar::ring::{Polynomial, Var};
use charvar::variety_builder::{GenericityReport, VarietySystem};

use crate::document::{OutputDocument, Payload, Verification};

pub trait Emitter: Sync {
    fn name(&self) -> &'static str;
    fn emit(&self, doc: &OutputDocument) -> String;
}

pub struct Json;
pub struct Text;
pub struct Latex;

static EMITTERS: [&dyn Emitter; 3] = [&Text, &Json, &Latex];

pub fn emitters() -> &'static [&'static dyn Emitter] {
    &EMITTERS
}

pub fn emitter(name: &str) -> Option<&'static dyn Emitter> {
    EMITTERS.iter().copied().find(|e| e.name() == name)
}

impl Emitter for Json {
    fn name(&self) -> &'static str {
        "json"
    }

    fn emit(&self, doc: &OutputDocument) -> String {
        let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
        s.push('\n');
        s
    }
}

fn sign(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

fn var_list(vars: impl Iterator<Item = Var>) -> String {
    vars.map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

impl Emitter for Text {
    fn name(&self) -> &'static str {
        "text"
    }

    fn emit(&self, doc: &OutputDocument) -> String {
        let mut out = String::new();
        match &doc.result {
            Payload::Traces(tr) => {
                let _ = writeln!(out, "tangle {}", doc.input);
                let _ = writeln!(out, "z      = {}", tr.z);
                let _ = writeln!(out, "zdot   = {}", tr.zdot);
                let _ = writeln!(out, "zgrave = {}", tr.zgrave);
            }
            Payload::Theta(tp) => {
                let _ = writeln!(out, "tangle {}", doc.input);
                let _ = writeln!(out, "theta_ne = {}", tp.theta_ne);
                let _ = writeln!(out, "theta_sw = {}", tp.theta_sw);
            }
            Payload::Riley(phi) => {
                let _ = writeln!(out, "tangle {}", doc.input);
                let name = match phi.kind {
                    RileyKind::Odd => "phi".to_string(),
                    RileyKind::Even { iota } => format!("phi^{}", sign(iota)),
                };
                let _ = writeln!(out, "{name}(kappa, u) = {}", phi.body);
            }
            Payload::System(sys) => text_system(&mut out, sys),
            Payload::Systems(all) => {
                let _ = writeln!(out, "{} sign vectors for {}", all.len(), doc.input);
                for sys in all {
                    out.push('\n');
                    text_system(&mut out, sys);
                }
            }
            Payload::Genericity(rep) => text_genericity(&mut out, rep),
            Payload::Verification(v) => text_verification(&mut out, v),
        }
        for n in &doc.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

fn text_system(out: &mut String, sys: &VarietySystem) {
    let _ = writeln!(out, "{} of {}", sys.component, sys.knot);
    let _ = writeln!(out, "variables: {}", var_list(sys.variables.iter()));
    let _ = writeln!(out, "equations ({}):", sys.equations.len());
    for (i, r) in sys.equations.iter().enumerate() {
        let _ = writeln!(out, "  e{} = {}  [{}]", i + 1, r.poly, r.note);
    }
    if !sys.inequations.is_empty() {
        let _ = writeln!(out, "inequations ({}):", sys.inequations.len());
        for r in &sys.inequations {
            let _ = writeln!(out, "  {} != 0  [{}]", r.poly, r.note);
        }
    }
    if let Some(d) = &sys.irreducibility {
        let auto = if d.automatic { ", holds automatically" } else { "" };
        let _ = writeln!(out, "irreducible when one of these is nonzero ({}{auto}):", d.note);
        for p in &d.alternatives {
            let _ = writeln!(out, "  {p}");
        }
    }
    for n in &sys.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn text_genericity(out: &mut String, rep: &GenericityReport) {
    let _ = writeln!(out, "{}: {}", rep.knot, if rep.generic { "generic" } else { "not generic" });
    for w in &rep.witnesses {
        let _ = writeln!(
            out,
            "  i={} j={} iota={} epsilon={} common factor {}",
            w.i,
            w.j,
            sign(w.iota),
            sign(w.epsilon),
            w.common_factor
        );
    }
}

fn text_verification(out: &mut String, v: &Verification) {
    let r = &v.report;
    let _ = writeln!(out, "{} of {}", r.component, r.knot);
    if let Some(s) = &v.search {
        let _ = writeln!(
            out,
            "point from Newton refinement (seed {}, residual {:e}, {} iterations)",
            s.seed, s.residual, s.iterations
        );
    }
    for (var, x) in &v.point {
        let _ = writeln!(out, "  {var} = [{}, {}]", x.re, x.im);
    }
    for c in &r.checks {
        let _ = writeln!(out, "  {:<44} {:e}", c.name, c.residual);
    }
    let verdict = if r.passed { "passed" } else { "FAILED" };
    let _ = writeln!(out, "max residual {:e} (tolerance {:e}): {verdict}", r.max_residual, r.tolerance);
}

impl Emitter for Latex {
    fn name(&self) -> &'static str {
        "latex"
    }

    fn emit(&self, doc: &OutputDocument) -> String {
        let mut out = String::new();
        match &doc.result {
            Payload::Traces(tr) => align(
                &mut out,
                &[
                    ("z".into(), "=", &tr.z),
                    ("\\dot{z}".into(), "=", &tr.zdot),
                    ("\\grave{z}".into(), "=", &tr.zgrave),
                ],
            ),
            Payload::Theta(tp) => align(
                &mut out,
                &[
                    ("\\vartheta^{\\rm ne}".into(), "=", &tp.theta_ne),
                    ("\\vartheta^{\\rm sw}".into(), "=", &tp.theta_sw),
                ],
            ),
            Payload::Riley(phi) => {
                let name = match phi.kind {
                    RileyKind::Odd => "\\phi(\\kappa,u)".to_string(),
                    RileyKind::Even { iota } => format!("\\phi^{{{}}}(\\kappa,u)", sign(iota)),
                };
                align(&mut out, &[(name, "=", &phi.body)]);
            }
            Payload::System(sys) => latex_system(&mut out, sys),
            Payload::Systems(all) => {
                for sys in all {
                    latex_system(&mut out, sys);
                }
            }
            Payload::Genericity(rep) => {
                let rows: Vec<(String, &str, &Polynomial)> = rep
                    .witnesses
                    .iter()
                    .map(|w| {
                        (
                            format!("(i,j,\\iota,\\epsilon)=({},{},{},{})", w.i, w.j, sign(w.iota), sign(w.epsilon)),
                            ":",
                            &w.common_factor,
                        )
                    })
                    .collect();
                let _ = writeln!(out, "% {}: {}", rep.knot, if rep.generic { "generic" } else { "not generic" });
                if !rows.is_empty() {
                    align(&mut out, &rows);
                }
            }
            Payload::Verification(v) => {
                let r = &v.report;
                let _ = writeln!(out, "\\begin{{tabular}}{{lr}}");
                for c in &r.checks {
                    let _ = writeln!(out, "\\texttt{{{}}} & ${:.3e}$ \\\\", c.name.replace('_', "\\_"), c.residual);
                }
                let _ = writeln!(out, "\\hline");
                let _ = writeln!(out, "max & ${:.3e}$ \\\\", r.max_residual);
                let _ = writeln!(out, "\\end{{tabular}}");
            }
        }
        out
    }
}

fn align(out: &mut String, rows: &[(String, &str, &Polynomial)]) {
    let _ = writeln!(out, "\\begin{{align*}}");
    for (i, (lhs, rel, p)) in rows.iter().enumerate() {
        let end = if i + 1 < rows.len() { " \\\\" } else { "" };
        let rel = if *rel == ":" { "&:\\ " } else { "&= " };
        let _ = writeln!(out, "{lhs} {rel}{}{end}", p.to_latex());
    }
    let _ = writeln!(out, "\\end{{align*}}");
}

fn latex_text(s: &str) -> String {
    s.replace('_', "\\_").replace('^', "\\^{}")
}

fn latex_system(out: &mut String, sys: &VarietySystem) {
    let vars: Vec<String> = sys.variables.iter().map(|v| v.latex()).collect();
    let _ = writeln!(out, "% {} of {}; variables ${}$", sys.component, sys.knot, vars.join(", "));
    let _ = writeln!(out, "\\begin{{align*}}");
    let rows: Vec<String> = sys
        .equations
        .iter()
        .map(|r| format!("{} &= 0 && \\text{{{}}}", r.poly.to_latex(), latex_text(&r.note)))
        .chain(sys.inequations.iter().map(|r| format!("{} &\\ne 0 && \\text{{{}}}", r.poly.to_latex(), latex_text(&r.note))))
        .collect();
    let _ = writeln!(out, "{}", rows.join(" \\\\\n"));
    let _ = writeln!(out, "\\end{{align*}}");
}
