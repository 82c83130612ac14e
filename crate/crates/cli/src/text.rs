//! Plain-text renderings of analysis results.

use std::fmt::Write;

use serde_json::{json, Value};
use sprout_core::canon::Isomorphism;
use sprout_core::geometry::ExtractionResult;
use sprout_core::gt::GtWalk;
use sprout_core::main_tree::PointReport;
use sprout_core::phi::PhiRow;
use sprout_core::{Address, AddressClass, AddressSetClass, Sprout, ValidationReport};

pub struct AddressRow {
    pub point: String,
    pub class: AddressSetClass,
    pub addresses: Vec<Address>,
}

fn class_name(c: &AddressClass) -> String {
    match c {
        AddressClass::Finite { count } => format!("finite({count})"),
        AddressClass::CountablyInfinite => "countably-infinite".into(),
        AddressClass::Uncountable => "uncountable".into(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn validation(r: &ValidationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tree: {}", yes_no(r.structural_ok));
    let _ = writeln!(out, "correct: {}", yes_no(r.is_correct));
    let _ = writeln!(out, "regular: {}", yes_no(r.is_regular));
    let _ = writeln!(out, "critical set: {}", r.critical_set.join(", "));
    let _ = writeln!(out, "sprout boundary: {}", r.sprout_boundary.join(", "));
    for v in &r.violations {
        let _ = writeln!(out, "violation [{}] {}: {}", v.rule, v.witness, v.message);
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn addresses(rows: &[AddressRow], expand: usize) -> String {
    let mut out = String::new();
    for row in rows {
        if row.addresses.is_empty() {
            let _ = writeln!(out, "{} {} ({})", row.point, class_name(&row.class.class), row.class.witness);
        }
        for a in &row.addresses {
            let _ = writeln!(out, "{} {} {}", row.point, a, a.expanded(expand));
        }
    }
    out
}

pub fn addresses_json(rows: &[AddressRow], expand: usize) -> Value {
    rows.iter()
        .map(|row| {
            json!({
                "point": row.point,
                "class": row.class,
                "addresses": row.addresses.iter().map(|a| json!({
                    "address": a,
                    "expanded": a.expanded(expand),
                })).collect::<Vec<_>>(),
            })
        })
        .collect()
}

pub fn class_line(point: &str, c: &AddressSetClass) -> String {
    format!("{point} {} ({})\n", class_name(&c.class), c.witness)
}

pub fn phi(rows: &[PhiRow]) -> String {
    let mut out = String::from("white degree image components\n");
    for r in rows {
        let comps = r.complement_components.map_or("-".to_string(), |c| c.to_string());
        let _ = writeln!(out, "{} {} {} {}", r.white, r.degree, r.image_size, comps);
    }
    out
}

pub fn walks_json(s: &Sprout, walks: &[GtWalk]) -> Value {
    walks
        .iter()
        .map(|w| match w {
            GtWalk::Infinite { vertices, address } => {
                json!({ "kind": "infinite", "vertices": vertices, "address": address })
            }
            GtWalk::ToBlack { vertices, word, black } => {
                json!({ "kind": "to_black", "vertices": vertices, "word": word, "black": s.black_name(*black) })
            }
            GtWalk::ToPoint { vertices, word, point } => {
                json!({ "kind": "to_point", "vertices": vertices, "word": word, "point": s.point_name(*point) })
            }
        })
        .collect()
}

pub fn report(rows: &[PointReport]) -> String {
    let mut out = String::new();
    for r in rows {
        let addresses: Vec<String> = r.addresses.iter().map(Address::to_string).collect();
        let _ = writeln!(
            out,
            "{}: {} order {}{} in the main tree, {} in K [{}]",
            r.location,
            r.class,
            r.ord_main_tree,
            if r.bound_only { " (bound)" } else { "" },
            r.ord_in_k,
            addresses.join(" ")
        );
    }
    out
}

pub fn isomorphism(map: &Isomorphism) -> String {
    let mut out = String::from("isomorphic\n");
    for (a, b) in map.whites.iter().chain(&map.blacks) {
        let _ = writeln!(out, "{a} -> {b}");
    }
    out
}

pub fn extraction(r: &ExtractionResult) -> String {
    let mut out = r.sprout.to_json();
    out.push('\n');
    for p in &r.points {
        let addresses: Vec<String> = p.addresses.iter().map(Address::to_string).collect();
        let kind = match (p.boundary, p.critical) {
            (true, true) => "boundary, critical",
            (true, false) => "boundary",
            _ => "critical",
        };
        let _ = writeln!(out, "{} ({kind}) ({:.9}, {:.9}) {}", p.name, p.x, p.y, addresses.join(" "));
    }
    let d = &r.diagnostics;
    let _ = writeln!(out, "tolerance {:e}, resolution {:e}, SIP margin {:e}", d.tol, d.resolution, d.sip_margin);
    out
}
