use std::fmt::Write;

use triflag::{MoveKind, Poset};

use crate::VerifyReport;

fn kinds(k: &[MoveKind]) -> String {
    k.iter()
        .map(MoveKind::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn dot(p: &Poset) -> String {
    let mut s = String::from(
        "digraph bruhat {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n",
    );
    for (k, x) in p.elements.iter().enumerate() {
        writeln!(s, "  n{k} [label=\"{}\"];", x.notation()).unwrap();
    }
    for (&(a, b), k) in p.covers.iter().zip(&p.edge_kinds) {
        writeln!(s, "  n{a} -> n{b} [label=\"{}\"];", kinds(k)).unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn edges(p: &Poset) -> String {
    let mut s = String::new();
    for (&(a, b), k) in p.covers.iter().zip(&p.edge_kinds) {
        writeln!(
            s,
            "{} -> {}  [{}]",
            p.elements[a].notation(),
            p.elements[b].notation(),
            kinds(k)
        )
        .unwrap();
    }
    s
}

pub fn verify(r: &VerifyReport) -> String {
    let e = &r.equivalence;
    let mut s = String::new();
    writeln!(s, "shape {} {}", r.b, r.c).unwrap();
    writeln!(s, "{} elements, {} covers", e.elements, e.covers).unwrap();
    writeln!(
        s,
        "comparable pairs: {}, chains checked: {}",
        e.comparable_pairs, e.chains_checked
    )
    .unwrap();
    writeln!(
        s,
        "order equivalence and cover minimality: {}",
        if e.passed() { "ok" } else { "FAILED" }
    )
    .unwrap();
    for c in &e.counterexamples {
        writeln!(s, "  {c}").unwrap();
    }
    writeln!(s, "uncircling: {} failures", r.uncircling_failures.len()).unwrap();
    for x in &r.uncircling_failures {
        writeln!(s, "  {x}").unwrap();
    }
    if let Some(fs) = &r.families {
        let bad: Vec<_> = fs.iter().filter(|f| !f.passed()).collect();
        writeln!(
            s,
            "degeneration families: {} moves checked, {} failed",
            fs.len(),
            bad.len()
        )
        .unwrap();
        for f in bad {
            writeln!(
                s,
                "  {} {}: {}",
                f.source.notation(),
                f.mv,
                f.failures.join("; ")
            )
            .unwrap();
        }
    }
    writeln!(s, "{}", if r.passed { "pass" } else { "FAIL" }).unwrap();
    s
}
