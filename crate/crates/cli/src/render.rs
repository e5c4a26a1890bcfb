//! Plain-text rendering of the library's report types.

use ramify_core::equivalence::{CompareReport, Verdict};
use ramify_core::field::NumberField;
use ramify_core::invariants::{RamificationInvariants, SquareClass};
use ramify_core::splitting::SplittingType;
use ramify_core::trace::TraceVerdict;

pub fn field_text(field: &NumberField) {
    println!("poly:         {}", field.min_poly());
    println!("degree:       {}", field.degree());
    println!("disc:         {}", field.disc());
    let (r, s) = field.signature();
    println!("signature:    ({r}, {s})");
    println!("index:        {}", field.index());
    let (num, den) = field.integral_basis();
    let rows: Vec<String> = (0..num.rows())
        .map(|i| {
            let entries: Vec<String> = num.row(i).iter().map(|x| x.to_string()).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    println!("basis:        {} / {}", rows.join(" "), den);
    if field.irreducibility_warning() {
        println!("warning:      irreducibility unresolved");
    }
}

pub fn split_text(st: &SplittingType) {
    let pairs: Vec<String> = st
        .pairs()
        .iter()
        .map(|(e, f)| format!("({e},{f})"))
        .collect();
    print!("p = {}: {}", st.place(), pairs.join(" "));
    if st.warning() {
        print!("  [irreducibility unresolved]");
    }
    println!();
}

pub fn invariants_text(inv: &RamificationInvariants) {
    println!("p = {}", inv.place);
    println!("alpha: {}", inv.alpha);
    println!("beta:  {}", inv.beta);
    println!(
        "nu:    {}",
        match inv.nu {
            Some(SquareClass::One) => "1",
            Some(SquareClass::NonResidue) => "u",
            None => "undefined",
        }
    );
    let mut flags = Vec::new();
    if inv.flags.unramified {
        flags.push("unramified");
    }
    if inv.flags.totally_split {
        flags.push("totally split");
    }
    if inv.flags.wild {
        flags.push("wild");
    }
    if flags.is_empty() {
        flags.push("tamely ramified");
    }
    println!("flags: {}", flags.join(", "));
}

pub fn verdict_text(v: &TraceVerdict) {
    let status = match v.matched.as_bool() {
        Some(true) => "match",
        Some(false) => "MISMATCH",
        None => "indeterminate",
    };
    println!(
        "p = {}: predicted {} | oracle {} | {}{}",
        v.place,
        v.predicted,
        v.oracle,
        status,
        if v.notes.is_empty() {
            String::new()
        } else {
            format!(" ({})", v.notes)
        }
    );
}

pub fn report_text(report: &CompareReport) {
    match &report.verdict {
        Verdict::DegreeMismatch { left, right } => {
            println!("degree mismatch: {left} vs {right}");
            return;
        }
        Verdict::ConsistentUpTo(b) => {
            println!("consistent with arithmetic equivalence up to {b}");
        }
        Verdict::NotEquivalent {
            witness,
            splits_left,
            splits_right,
        } => {
            println!(
                "not equivalent: at p = {witness} the fields split into {splits_left} vs {splits_right} primes"
            );
        }
    }
    if report.differences.is_empty() {
        println!("no differing places");
    } else {
        for d in &report.differences {
            println!(
                "p = {}: alpha {} vs {}{}",
                d.place,
                d.alpha_left,
                d.alpha_right,
                if d.ramified { " (ramified)" } else { "" }
            );
        }
    }
}
