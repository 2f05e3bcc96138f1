//! Text and JSON rendering of computation results. Both modes carry the
//! same mathematical content; JSON keys are emitted in sorted order so the
//! output is byte-stable.

use baer::abelian::FinAbelian;
use baer::collect::TheoremReport;
use baer::gamma::GammaResult;
use baer::pgroups::{CapabilityVerdict, MultiplierResult, MultiplierStructure};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// `{"p": ..., "exponents": [...], "multiplicities": [...]}` per prime.
pub fn abelian_json(g: &FinAbelian) -> Value {
    let mut out = Vec::new();
    for p in g.primes() {
        let mut exponents = Vec::new();
        let mut multiplicities = Vec::new();
        for (e, m) in g.prime_exponent_runs(p) {
            exponents.push(json!(e));
            multiplicities.push(json!(u64::try_from(&m).expect("multiplicity fits u64")));
        }
        out.push(json!({
            "p": p,
            "exponents": exponents,
            "multiplicities": multiplicities,
        }));
    }
    Value::Array(out)
}

pub fn multiplier_text(r: &MultiplierResult) -> String {
    match &r.structure {
        MultiplierStructure::Full(g) => format!("{g}  [{}]", r.provenance),
        MultiplierStructure::OrderOnly(o) => format!("order {o}  [{}]", r.provenance),
    }
}

pub fn multiplier_json(group: &str, c: u32, r: &MultiplierResult) -> Value {
    let m = match &r.structure {
        MultiplierStructure::Full(g) => json!({
            "kind": "structure",
            "factors": abelian_json(g),
            "order": g.order().to_string(),
        }),
        MultiplierStructure::OrderOnly(o) => json!({
            "kind": "order-only",
            "order": o.to_string(),
        }),
    };
    json!({
        "group": group,
        "c": c,
        "multiplier": m,
        "provenance": r.provenance.to_string(),
    })
}

pub fn capability_text(v: &CapabilityVerdict) -> String {
    format!(
        "capable: {}; c-capable: {}  [{}]",
        v.capable, v.c_capable, v.reason
    )
}

pub fn capability_json(group: &str, c: u32, v: &CapabilityVerdict) -> Value {
    json!({
        "group": group,
        "c": c,
        "capable": v.capable,
        "c_capable": v.c_capable,
        "provenance": v.reason.to_string(),
    })
}

pub fn gamma_text(r: &GammaResult) -> String {
    let mut out = String::new();
    for t in &r.terms {
        out.push_str(&format!(
            "{}  a^{} b^{}  {}  order {}\n",
            r.basis.render(&t.commutator),
            t.a_count,
            t.b_count,
            t.term,
            t.term.order()
        ));
    }
    out.push_str(&format!("total: {}  order {}", r.group, r.group.order()));
    out
}

pub fn gamma_json(a: &str, b: &str, c: u32, r: &GammaResult) -> Value {
    let terms: Vec<Value> = r
        .terms
        .iter()
        .map(|t| {
            json!({
                "commutator": r.basis.render(&t.commutator),
                "a_count": t.a_count,
                "b_count": t.b_count,
                "term": abelian_json(&t.term),
                "order": t.term.order().to_string(),
            })
        })
        .collect();
    json!({
        "a": a,
        "b": b,
        "c": c,
        "terms": terms,
        "group": abelian_json(&r.group),
        "order": r.group.order().to_string(),
    })
}

pub fn verify_text(r: &TheoremReport) -> String {
    let verdict = if r.holds {
        "Theorem 3.11 holds".to_string()
    } else {
        format!("Theorem 3.11 FAILS (defect rows {:?})", r.defect_rows)
    };
    // For odd p the presented group is E1; at p = 2 the same presentation
    // collapses to the dihedral group of order 8, so the quotient is
    // reported without that name.
    let quotient = if r.p == 2 {
        format!("presentation quotient = {}", r.quotient)
    } else {
        format!("M^({})(E1) = {}", r.c, r.quotient)
    };
    format!("{verdict}; {quotient}")
}

fn rows_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|v| json!(i64::try_from(v).expect("lattice entry fits i64")))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn verify_json(r: &TheoremReport, dump_lattice: bool) -> Value {
    let mut v = json!({
        "p": r.p,
        "c": r.c,
        "holds": r.holds,
        "ambient_rank": r.ambient_rank,
        "defect_rows": r.defect_rows,
        "quotient": abelian_json(&r.quotient),
        "free_rank": r.free_rank,
    });
    if dump_lattice {
        v["lattice"] = json!({
            "generators": rows_json(r.lattice.rows()),
            "hermite": rows_json(r.lattice.hermite()),
        });
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use baer::pgroups::{multiplier, EsVariant, GroupDescriptor};

    #[test]
    fn multiplier_text_matches_pinned_format() {
        let g = GroupDescriptor::extra_special(5, 2, EsVariant::ExpP).unwrap();
        let r = multiplier(&g, 2).unwrap();
        assert_eq!(multiplier_text(&r), "Z(5)^20  [Thm3.14(i)]");
    }

    #[test]
    fn abelian_json_shape() {
        let mut g = FinAbelian::cyclic(2, 2);
        g.add_factor(2, 1, 3u32.into());
        g.add_factor(3, 1, 1u32.into());
        let v = abelian_json(&g);
        assert_eq!(
            v,
            json!([
                {"p": 2, "exponents": [2, 1], "multiplicities": [1, 3]},
                {"p": 3, "exponents": [1], "multiplicities": [1]},
            ])
        );
    }
}
