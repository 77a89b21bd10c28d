//! Plain-text renderings of the reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::schema::{
    CategoryJson, CategoryReport, ExtReport, FukayaReport, GramJson, LatticeReport, LemmaKJson,
    OrlovReport, ResolutionDump, SuspendReport, SuspensionCheckJson, VerificationReport,
};

fn tuple(p: &[u32]) -> String {
    let parts: Vec<String> = p.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn dims(d: &BTreeMap<usize, usize>) -> String {
    if d.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = d.iter().map(|(i, n)| format!("{i}:{n}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn category(out: &mut String, c: &CategoryJson) {
    let _ = writeln!(out, "objects ({})", c.objects.len());
    for (i, o) in c.objects.iter().enumerate() {
        let _ = writeln!(out, "  {i:>3}  {o}");
    }
    let _ = writeln!(out, "homs ({})", c.homs.len());
    for h in &c.homs {
        let _ = writeln!(
            out,
            "  h{:<3} {} -> {}  deg {}  {}",
            h.id, c.objects[h.src], c.objects[h.tgt], h.degree, h.name
        );
    }
    let _ = writeln!(out, "compositions ({})", c.comp.len());
    for e in &c.comp {
        let rhs: Vec<String> = e
            .result
            .iter()
            .map(|t| format!("{} h{}", t.coeff, t.hom))
            .collect();
        let _ = writeln!(out, "  h{} o h{} = {}", e.g, e.f, rhs.join(" + "));
    }
}

pub fn category_report(r: &CategoryReport) -> String {
    let mut s = format!("tensor model for p = {}\n", tuple(&r.p));
    category(&mut s, &r.category);
    s
}

fn suspension_check(out: &mut String, v: &SuspensionCheckJson) {
    let _ = writeln!(
        out,
        "k = {}: {} objects (expected {}), valid {}, formal {}, gauge {}: {}",
        v.k,
        v.object_count,
        v.expected_object_count,
        v.valid,
        v.formal,
        v.gauge.as_ref().map_or("n/a", |g| if g.isomorphic {
            "isomorphic"
        } else {
            "not isomorphic"
        }),
        if v.passed { "PASS" } else { "FAIL" },
    );
    for (x, y) in &v.dim_mismatches {
        let _ = writeln!(out, "  dimension mismatch at hom({x}, {y})");
    }
    if let Some(f) = &v.failure {
        let _ = writeln!(out, "  reason: {f}");
    }
}

pub fn suspend_report(r: &SuspendReport) -> String {
    let mut s = format!(
        "suspension of the tensor model for p = {} by k = {}\n",
        tuple(&r.p),
        r.k
    );
    if let Some(v) = &r.verification {
        suspension_check(&mut s, v);
    }
    if let Some(e) = &r.error {
        let _ = writeln!(s, "error: {e}");
    }
    if let Some(c) = &r.category {
        category(&mut s, c);
    }
    s
}

pub fn fukaya_report(r: &FukayaReport) -> String {
    let mut s = format!("iterated suspension for p = {}\n", tuple(&r.p));
    for v in &r.steps {
        suspension_check(&mut s, v);
    }
    if let Some(g) = &r.final_gauge {
        let _ = writeln!(
            s,
            "final comparison with the tensor model: isomorphic {}",
            g.isomorphic
        );
    }
    if let Some(e) = &r.error {
        let _ = writeln!(s, "error: {e}");
    }
    if let Some(c) = &r.category {
        category(&mut s, c);
    }
    if r.verified {
        let _ = writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" });
    }
    s
}

fn gram(out: &mut String, name: &str, labels: &[String], g: &GramJson) {
    let _ = writeln!(out, "{name} ({})", g.parity);
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    for (label, row) in labels.iter().zip(&g.gram) {
        let entries: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "  {label:>width$} [{}]", entries.join(""));
    }
}

pub fn lattice_report(r: &LatticeReport) -> String {
    let mut s = format!("lattices for p = {}\n", tuple(&r.p));
    gram(&mut s, "tensor of Cartan forms", &r.labels, &r.st);
    gram(&mut s, "Euler form E - E^T", &r.labels, &r.euler);
    let _ = writeln!(
        s,
        "upper-triangle entries: {} agree, {} disagree",
        r.agreeing,
        r.disagreeing.len()
    );
    for d in &r.disagreeing {
        let _ = writeln!(
            s,
            "  ({}, {}): Cartan tensor {}, Euler {}",
            d.row, d.col, d.st, d.euler
        );
    }
    s
}

pub fn orlov_report(r: &OrlovReport, group: &str) -> String {
    let w: Vec<String> = r.weights.iter().map(i64::to_string).collect();
    format!(
        "p = {}\nsum of 1/p_i = {}\nCalabi-Yau: {}\nell = {}\nweights = ({})\nG_p = {group} (order {})\n",
        tuple(&r.p),
        r.sum,
        r.cy,
        r.ell,
        w.join(","),
        r.order
    )
}

pub fn verification_report(r: &VerificationReport) -> String {
    let mut s = format!("suite {} for p = {}\n", r.suite, tuple(&r.p));
    for c in &r.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let time = c
            .elapsed_ms
            .map(|t| format!(" [{t} ms]"))
            .unwrap_or_default();
        let _ = writeln!(s, "{status} {}: {}{time}", c.name, c.detail);
    }
    let _ = writeln!(
        s,
        "{}",
        if r.passed {
            "all checks passed"
        } else {
            "some checks failed"
        }
    );
    s
}

fn raw(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn ext_report(r: &ExtReport, source: &str, target: &str) -> String {
    let mut s = format!(
        "Ext(k({source}), k({target})) for p = {}\nsource {}, target {}\ndimensions {}\n",
        tuple(&r.p),
        raw(&r.source),
        raw(&r.target),
        dims(&r.dims)
    );
    match &r.formula {
        Some(f) => {
            let _ = writeln!(s, "tensor formula {}", dims(f));
        }
        None => {
            let _ = writeln!(s, "tensor formula: twists outside the index set");
        }
    }
    s
}

pub fn resolution_report(r: &ResolutionDump) -> String {
    let mut s = format!(
        "free resolution of k for p = {}, length {}, window z <= {}\n",
        tuple(&r.p),
        r.length,
        r.window
    );
    for (i, t) in r.terms.iter().enumerate() {
        let _ = writeln!(s, "C^-{i}: rank {}", t.len());
        for g in t {
            let _ = writeln!(
                s,
                "  {} z={} form {:?} twist {}",
                raw(&g.degree),
                g.z,
                g.form,
                g.twist
            );
        }
    }
    let _ = writeln!(
        s,
        "d^2 = 0: {}\nhomogeneity violations: {}\nH^0 = k: {}\ndegrees checked: {}",
        r.d_squared_zero, r.homogeneity_violations, r.h0_is_k, r.degrees_checked
    );
    for f in &r.exactness_failures {
        let _ = writeln!(
            s,
            "  not exact at C^{} in degree {}",
            f.cohomological,
            raw(&f.degree)
        );
    }
    let _ = writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" });
    s
}

pub fn lemma_report(r: &LemmaKJson) -> String {
    let mut s = format!(
        "0 -> k(-{}x{}) -> k[x{}]/(x{}^{}) -> k[x{}]/(x{}^{}) -> 0 for p = {}\n",
        r.j - 1,
        r.axis,
        r.axis,
        r.axis,
        r.j,
        r.axis,
        r.axis,
        r.j - 1,
        tuple(&r.p)
    );
    let _ = writeln!(
        s,
        "linear {}, homogeneous {}, degrees checked {} (z <= {})",
        r.linear, r.homogeneous, r.degrees_checked, r.window
    );
    for f in &r.failures {
        let _ = writeln!(s, "  not exact in degree {}", raw(f));
    }
    if let Some(q) = r.quotient_iso {
        let _ = writeln!(s, "matches A/(other variables): {q}");
    }
    let _ = writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" });
    s
}
