//! Text and JSON rendering of reports.

use std::fmt::Write as _;

use serde_json::Value;
use sphdesign::design::PairSpectrum;
use sphdesign::exact::{format_decimal, parse_rational};
use sphdesign::report::{Analysis, EmbeddedAnalysis, TableRow};
use sphdesign::Rational;

/// Rational rendering: exact `p/q` unless `--decimal` was given.
#[derive(Clone, Copy, Debug)]
pub struct Numbers {
    pub decimal: Option<usize>,
}

impl Numbers {
    pub fn q(&self, x: &Rational) -> String {
        match self.decimal {
            Some(k) => format_decimal(x, k),
            None => x.to_string(),
        }
    }

    pub fn set<'a>(&self, xs: impl IntoIterator<Item = &'a Rational>) -> String {
        let parts: Vec<String> = xs.into_iter().map(|x| self.q(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Rewrites rational strings and `[num, den, count]` spectrum entries as decimals.
    pub fn json(&self, value: Value) -> Value {
        let Some(k) = self.decimal else {
            return value;
        };
        rewrite(value, k, false)
    }
}

fn rewrite(value: Value, k: usize, in_spectrum: bool) -> Value {
    match value {
        Value::String(s) => match parse_rational(&s) {
            Ok(x) => Value::String(format_decimal(&x, k)),
            Err(_) => Value::String(s),
        },
        Value::Array(items) if in_spectrum => Value::Array(
            items
                .into_iter()
                .map(|entry| match entry.as_array().map(Vec::as_slice) {
                    Some([Value::Number(n), Value::Number(d), count]) => {
                        let x = parse_rational(&format!("{n}/{d}")).expect("spectrum entries are rationals");
                        Value::Array(vec![Value::String(format_decimal(&x, k)), count.clone()])
                    }
                    _ => entry,
                })
                .collect(),
        ),
        Value::Array(items) => Value::Array(items.into_iter().map(|v| rewrite(v, k, false)).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(key, v)| {
                    let spectrum = key.ends_with("spectrum");
                    (key, rewrite(v, k, spectrum))
                })
                .collect(),
        ),
        other => other,
    }
}

pub fn spectrum_json(name: &str, spec: &PairSpectrum) -> Value {
    serde_json::json!({
        "lattice": name,
        "d": spec.d,
        "N": spec.size,
        "antipodal": spec.antipodal,
        "spectrum": spec.to_json(),
    })
}

pub fn spectrum_text(name: &str, spec: &PairSpectrum, nums: Numbers) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{name}: N {} in S^{}, antipodal {}", spec.size, spec.d, spec.antipodal);
    for (s, count) in spec.descending() {
        let _ = writeln!(out, "{:>12} {count}", nums.q(s));
    }
    out
}

pub fn embedded_text(e: &EmbeddedAnalysis, nums: Numbers) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "embedded code ({}, {}, {}) in R^{}",
        e.code.ambient,
        e.code.n,
        nums.q(&e.code.a),
        e.target_dim
    );
    let _ = writeln!(out, "embedded |<G,G>| {}", nums.set(&e.code.spectrum_abs));
    let _ = writeln!(
        out,
        "theorem check {}: quadratic moment {} vs 2/(d(d+3)) = {}",
        e.theorem.is_3design,
        nums.q(&e.theorem.lhs),
        nums.q(&e.theorem.rhs)
    );
    let _ = writeln!(
        out,
        "embedded 3-design {}, design strength {}",
        e.theorem.is_3design && e.venkov3_holds,
        e.design_strength
    );
    if let Some(c) = &e.rank_certificate {
        let _ = writeln!(
            out,
            "embedded gram: psd {}, rank {} (dim Harm_2 = {}), unit diagonal {}",
            c.is_psd, c.rank, c.dim_harm2, c.unit_diagonal
        );
    }
    out
}

pub fn analysis_text(a: &Analysis, nums: Numbers) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {} vectors of norm {} in rank {}", a.lattice, a.kissing, nums.q(&a.min_norm), a.d + 1);
    if !a.kissing_ok {
        let _ = writeln!(out, "kissing number differs from the catalog value");
    }
    if let Some(code) = &a.source_code {
        let _ = writeln!(
            out,
            "source code ({}, {}, {}), |(x,y)| {}",
            code.ambient,
            code.n,
            nums.q(&code.a),
            nums.set(&code.spectrum_abs)
        );
    }
    if let Some(v) = &a.venkov5 {
        let _ = writeln!(
            out,
            "venkov5 {}: quadratic {} vs {}, quartic {} vs {}",
            v.holds,
            nums.q(&v.lhs2),
            nums.q(&v.target2),
            nums.q(&v.lhs4),
            nums.q(&v.target4)
        );
    }
    let _ = writeln!(out, "design strength {}", a.design_strength);
    if let Some(e) = &a.embedded {
        out.push_str(&embedded_text(e, nums));
    }
    for w in &a.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "verdict {}", a.verdict());
    out
}

pub fn table_text(rows: &[TableRow], nums: Numbers) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} | {:<20} | {:<22} | {:<26} | verdict",
        "L", "(d+1,N,a) code", "|(x_i,x_j)|", "|<G_xi,G_xj>|"
    );
    let _ = writeln!(out, "{}", "-".repeat(96));
    for row in rows {
        let (code, src, emb) = match &row.computed {
            Some(a) => match (&a.source_code, &a.embedded) {
                (Some(s), Some(e)) => (
                    format!("({},{},{})", e.code.ambient, e.code.n, nums.q(&e.code.a)),
                    nums.set(&s.spectrum_abs),
                    nums.set(&e.code.spectrum_abs),
                ),
                _ => ("-".into(), "-".into(), "-".into()),
            },
            None => ("-".into(), "-".into(), "-".into()),
        };
        let _ = writeln!(
            out,
            "{:<8} | {:<20} | {:<22} | {:<26} | {}",
            row.expected.lattice, code, src, emb, row.verdict
        );
        for m in &row.mismatches {
            let _ = writeln!(out, "{:<8}   {m}", "");
        }
    }
    out
}
