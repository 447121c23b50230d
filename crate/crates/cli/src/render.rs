//! Human-readable output, four decimal places.

use std::fmt::Write;

use discordant::{MeasurementDocument, FamilySpec};

use crate::input::FAMILY_HELP;
use crate::report::{AnalysisReport, CheckStatus, DiscordOut, LedgerOut, VerdictOut};
use crate::table1::Table;

fn basis(m: &MeasurementDocument) -> String {
    let vecs: Vec<String> = m
        .basis
        .iter()
        .map(|v| {
            let parts: Vec<String> = v
                .iter()
                .map(|[re, im]| {
                    if im.abs() < 5e-5 {
                        format!("{re:.4}")
                    } else {
                        format!("{re:.4}{im:+.4}i")
                    }
                })
                .collect();
            format!("({})", parts.join(", "))
        })
        .collect();
    vecs.join(" ")
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.4e}"))
}

pub fn discord(out: &mut String, d: &DiscordOut) {
    let label = match d.measure {
        discordant::DiscordMeasure::D1 => "projective D1".to_string(),
        m => m.to_string(),
    };
    let _ = writeln!(out, "{label}^{}  = {:.4}   (J = {:.4})", d.side, d.value, d.j_value);
    if let Some(m) = &d.optimal_measurement {
        let _ = writeln!(out, "  basis     {}", basis(m));
    }
    if d.degenerate {
        match d.restricted_infimum {
            Some(inf) => {
                let _ = writeln!(out, "  degenerate marginal; infimum over its eigenbases {inf:.4e}");
            }
            None => {
                let _ = writeln!(out, "  degenerate marginal; value follows the eigenbasis convention");
            }
        }
    }
    if let Some(diag) = &d.diagnostics {
        let _ = writeln!(
            out,
            "  optimizer {} starts, best #{}, {} evaluations, converged: {}",
            diag.restarts_used, diag.best_restart, diag.evaluations, diag.converged
        );
    }
}

pub fn verdict(out: &mut String, v: &VerdictOut) {
    let name = |x: String| x.to_uppercase();
    let _ = writeln!(out, "side {}: {} via {}", v.side, name(format!("{:?}", v.verdict)), name(format!("{:?}", v.method)));
    let _ = writeln!(out, "  commutator norm       {:.4e}", v.commutator_norm);
    let _ = writeln!(out, "  residual discord      {}", opt(v.residual_discord));
    let _ = writeln!(out, "  block commutator norm {}", opt(v.eigenstructure_norm));
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "  witness basis         {}", basis(w));
    }
}

pub fn ledger(out: &mut String, l: &LedgerOut) {
    let v = &l.values;
    let _ = writeln!(out, "kT = {:.4}", v.kt);
    let _ = writeln!(out, "  W+ (global demon)        {:.4}", v.w_plus);
    let _ = writeln!(out, "  W_L (local, no messages) {:.4}", v.w_local);
    let _ = writeln!(out, "  W2 (Alice knows rho_AB)  {:.4}", v.w2);
    let _ = writeln!(out, "  W3 (Alice knows rho_A)   {:.4}", v.w3);
    let _ = writeln!(out, "  W+ - W_L = {:.4}   W+ - W2 = {:.4}   W+ - W3 = {:.4}", v.delta_l, v.delta_2, v.delta_3);
    let _ = writeln!(out, "  W2 basis {}", basis(&l.measurement_w2));
}

fn list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ")
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let s = &r.state;
    let _ = writeln!(out, "state  {}x{}  purity {:.4}", s.dims[0], s.dims[1], s.purity);
    let _ = writeln!(out, "  spectrum    {}", list(&s.spectrum));
    let _ = writeln!(out, "  spectrum A  {}", list(&s.spectrum_a));
    let _ = writeln!(out, "  spectrum B  {}", list(&s.spectrum_b));
    let e = &r.entropies;
    let _ = writeln!(
        out,
        "\nentropies  S_A {:.4}  S_B {:.4}  S_AB {:.4}  I {:.4}  S(B|A) {:.4}",
        e.s_a, e.s_b, e.s_ab, e.mutual_information, e.conditional_entropy_b_given_a
    );
    let _ = writeln!(out, "\ndiscord");
    for side in [&r.discord.a, &r.discord.b] {
        for d in [&side.d1, &side.d2, &side.d3] {
            discord(&mut out, d);
        }
    }
    discord(&mut out, &r.discord.d3sym);
    let _ = writeln!(out, "\nclassification");
    verdict(&mut out, &r.classification.a);
    verdict(&mut out, &r.classification.b);
    let _ = writeln!(out, "\ndemon");
    ledger(&mut out, &r.demon);
    let _ = writeln!(out, "\nidentities");
    for c in &r.identities {
        let flag = match c.status {
            CheckStatus::Ok => "OK  ",
            CheckStatus::Warn => "WARN",
        };
        let _ = writeln!(out, "  {flag} {}  (residual {:.1e})", c.name, c.residual);
    }
    for w in &r.warnings {
        let _ = writeln!(out, "WARN {w}");
    }
    if let Some(t) = &r.timing {
        let _ = writeln!(out, "\ntime {:.1} ms", t.total_ms);
    }
    out
}

pub fn table(t: &Table) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<3} {:<54} {:>8} {:>8}  {:<10} {:<8} locally measurable (cited)",
        "#", "states", "D1^A", "D1^B", "discord", "verdict"
    );
    for r in &t.rows {
        let _ = writeln!(
            out,
            "{:<3} {:<54} {:>8.4} {:>8.4}  {:<10} {:<8} {}",
            r.row,
            r.states,
            r.d1_a,
            r.d1_b,
            r.discord,
            format!("{:?}/{:?}", r.verdict_a, r.verdict_b).to_uppercase(),
            r.locally_measurable
        );
    }
    for n in &t.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn families() -> String {
    let mut out = String::new();
    debug_assert_eq!(FAMILY_HELP.len(), FamilySpec::NAMES.len());
    for (name, help) in FAMILY_HELP {
        let _ = writeln!(out, "{name:<20} {help}");
    }
    out
}
