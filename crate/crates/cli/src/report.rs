//! One builder per command. Every report is a JSON object carrying
//! `schema_version`, `command` and the `citations` it relies on.

use std::collections::BTreeSet;

use lefschetz_core::applications::{run_all, Verdict};
use lefschetz_core::brill_noether::{abel_jacobi_fibre_dims, eh_predicate, rho, singular_fibre_h0, BnError, BnQuery};
use lefschetz_core::exact::{format_rational, BigRational};
use lefschetz_core::fourmanifold::{FourManifoldLattice, HomologyClass, LatticeError};
use lefschetz_core::hilb_local::{certify, HilbError, Stratum};
use lefschetz_core::kahler_gromov::{
    duality_check, gromov_invariant, gromov_invariant_series, vanishing_profile, GromovError,
};
use lefschetz_core::pencil::{
    build_pencil, count_decision, count_numbers, count_rules, fibre_degree, virtual_dim, PencilError, CITE_KAHLER,
};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    CheckFailed,
}

#[derive(Debug)]
pub struct Report {
    pub body: Value,
    pub outcome: Outcome,
}

fn report(command: &str, citations: &[&str], fields: Value, outcome: Outcome) -> Report {
    let Value::Object(mut map) = fields else {
        unreachable!("report fields are always an object");
    };
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    map.insert("citations".into(), json!(citations));
    Report {
        body: Value::Object(map),
        outcome,
    }
}

fn value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn rational(q: &BigRational) -> Value {
    json!(format_rational(q))
}

const CITE_CHARACTERISTIC: &str = "K is characteristic: K.x = x.x mod 2";
const CITE_NOETHER: &str = "K^2 = 2e + 3 sigma and chi_h = (e + sigma) / 4";
const CITE_SERIES: &str = "c(Obs) = (1 + H)^(h1 - h2); the invariant is the coefficient of H^(h0 - 1)";
const CITE_DUALITY: &str = "|Gr(alpha)| = |Gr(kappa - alpha)| via h^i(D) = h^(2-i)(K - D)";
const CITE_ADJUNCTION: &str = "adjunction: 2g - 2 = K.W + W^2";
const CITE_EULER: &str = "e(X) + N = 2(2 - 2g) + delta";
const CITE_RESIDUAL: &str = "iota(alpha) and i(kappa - alpha) meet a fibre r and 2g - 2 - r times";
const CITE_RHO: &str = "rho = g - (s + 1)(g - r + s)";
const CITE_BN_EXISTENCE: &str = "rho >= 0: W^s_r(C) is nonempty for every curve C";
const CITE_EH: &str = "rho < -1: curves with such a system have codimension > 1 in moduli";
const CITE_AJ: &str = "Sym^r -> Pic^r has fibres of dimension r - g, one more over K - Sym^(2g-2-r)";
const CITE_NODAL: &str = "generic Abel-Jacobi fibre dimension is the same over a nodal fibre";
const CITE_KERNEL: &str = "the linearised relative equations have constant kernel dimension r^2 + 1";
const CITE_COKERNEL: &str = "the commutator differential has constant rank r^2 - r";

pub fn manifold_check(x: &FourManifoldLattice) -> Report {
    let cn = x.char_numbers();
    let fields = json!({
        "valid": true,
        "label": x.label(),
        "b1": x.b1(),
        "rank": x.rank(),
        "b_plus": x.b_plus(),
        "b_minus": x.b_minus(),
        "signature": cn.signature,
        "euler": cn.euler,
        "two_e_plus_3sigma": cn.two_e_plus_3sigma,
        "chi_h": cn.chi_h,
        "even": x.is_even(),
        "k_square": x.k_square(),
        "omega_square": rational(&x.omega_square()),
        "k_dot_omega": rational(&x.k_dot_omega()),
        "minimal": x.minimal(),
        "general_type": x.general_type(),
    });
    report(
        "manifold-check",
        &[CITE_CHARACTERISTIC, CITE_NOETHER],
        fields,
        Outcome::Success,
    )
}

pub fn manifold_invalid(e: &LatticeError) -> Report {
    let fields = json!({ "valid": false, "error": e.to_string() });
    report(
        "manifold-check",
        &[CITE_CHARACTERISTIC, CITE_NOETHER],
        fields,
        Outcome::CheckFailed,
    )
}

pub fn gromov(x: &FourManifoldLattice, d: HomologyClass, h0: i64, h0_dual: i64, r: i64) -> Result<Report, GromovError> {
    if r < 0 {
        return Err(GromovError::Negative { which: "r", value: r });
    }
    let p = vanishing_profile(x, d, h0, h0_dual)?;
    let gr = gromov_invariant(&p, r);
    let series = gromov_invariant_series(&p);
    // The two formulations coincide at r = 0, where no constraint is imposed.
    let agree = r != 0 || gr == series;
    let fields = json!({
        "class": value(p.divisor_class()),
        "profile": { "h0": p.h0(), "h1": p.h1(), "h2": p.h2() },
        "chi": p.chi(),
        "r": r,
        "gr": value(&gr),
        "series": value(&series),
        "formulations_agree": agree,
    });
    let outcome = if agree { Outcome::Success } else { Outcome::CheckFailed };
    Ok(report("gromov", &[CITE_KAHLER, CITE_SERIES], fields, outcome))
}

pub fn duality(
    x: &FourManifoldLattice,
    d: HomologyClass,
    h0: i64,
    h0_dual: i64,
    r: i64,
) -> Result<Report, GromovError> {
    if r < 0 {
        return Err(GromovError::Negative { which: "r", value: r });
    }
    let p = vanishing_profile(x, d, h0, h0_dual)?;
    let rep = duality_check(x, &p, r)?;
    let mut fields = value(&rep);
    fields["class"] = value(p.divisor_class());
    fields["dual_class"] = value(&x.canonical().sub(p.divisor_class())?);
    let outcome = if rep.holds {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    };
    Ok(report("duality", &[CITE_KAHLER, CITE_DUALITY], fields, outcome))
}

pub fn pencil(x: &FourManifoldLattice, k: u64, a: Option<&HomologyClass>) -> Result<Report, PencilError> {
    let p = build_pencil(x, k)?;
    let mut fields = value(&p);
    let mut cites = vec![CITE_ADJUNCTION, CITE_EULER];
    if let Some(a) = a {
        let fd = fibre_degree(x, &p, a)?;
        let ratio = (fd.r != 0).then(|| BigRational::new(fd.two_g_minus_2.into(), fd.r.into()));
        fields["class"] = value(a);
        fields["virtual_dim"] = json!(virtual_dim(x, a)?);
        fields["fibre_degree"] = value(&fd);
        fields["ratio"] = ratio.as_ref().map_or(Value::Null, rational);
        cites.push(CITE_RESIDUAL);
    }
    Ok(report("pencil", &cites, fields, Outcome::Success))
}

pub fn count(x: &FourManifoldLattice, a: &HomologyClass, sections: Option<(i64, i64)>) -> Result<Report, CountError> {
    let profile = sections
        .map(|(h0, h0k)| vanishing_profile(x, a.clone(), h0, h0k))
        .transpose()?;
    let v = count_decision(x, a, profile.as_ref())?;
    let fields = json!({
        "class": value(a),
        "verdict": value(&v.kind),
        "rule": v.rule,
        "reason": v.reason,
        "moduli_torus_dim": v.moduli_torus_dim,
        "numbers": value(&count_numbers(x, a)?),
        "rules_fired": value(&count_rules(x, a)?),
    });
    Ok(report("count", &[v.reason.as_str()], fields, Outcome::Success))
}

/// Errors from `count`, which touches both the Kähler and pencil layers.
#[derive(Debug, thiserror::Error)]
pub enum CountError {
    #[error(transparent)]
    Gromov(#[from] GromovError),
    #[error(transparent)]
    Pencil(#[from] PencilError),
}

pub fn bn(g: i64, r: i64, s: i64) -> Result<Report, BnError> {
    let q = BnQuery::new(g, r, s)?;
    let rho = rho(q);
    let fields = json!({
        "g": g,
        "r": r,
        "s": s,
        "rho": rho,
        "nonempty_for_every_curve": rho >= 0,
        "eh_predicate": eh_predicate(q),
    });
    Ok(report(
        "bn",
        &[CITE_RHO, CITE_BN_EXISTENCE, CITE_EH],
        fields,
        Outcome::Success,
    ))
}

pub fn aj_fibres(g: i64, r: i64) -> Result<Report, BnError> {
    let f = abel_jacobi_fibre_dims(g, r)?;
    let mut fields = value(&f);
    fields["nodal_fibre_h0"] = json!(singular_fibre_h0(r, g)?);
    Ok(report("aj-fibres", &[CITE_AJ, CITE_NODAL], fields, Outcome::Success))
}

pub fn hilb(stratum: Stratum, r: usize, samples: u64, seed: u64, outcomes: bool) -> Result<Report, HilbError> {
    let rep = certify(stratum, r, samples, seed)?;
    let outcome = if rep.failures == 0 {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    };
    let mut fields = value(&rep);
    if !outcomes {
        fields.as_object_mut().expect("object").remove("outcomes");
    }
    let cite = if stratum.is_absolute() {
        CITE_COKERNEL
    } else {
        CITE_KERNEL
    };
    Ok(report("hilb", &[cite], fields, outcome))
}

pub fn classify(x: &FourManifoldLattice, classes: &[HomologyClass]) -> Result<Report, PencilError> {
    let reports = run_all(x, classes)?;
    let cites: BTreeSet<&str> = reports
        .iter()
        .flat_map(|r| r.cited_hypotheses.iter().map(String::as_str))
        .collect();
    let cites: Vec<&str> = cites.into_iter().collect();
    let failed = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    let mut fields = Map::new();
    fields.insert("label".into(), json!(x.label()));
    fields.insert("failed".into(), json!(failed));
    fields.insert("reports".into(), value(&reports));
    let outcome = if failed == 0 {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    };
    Ok(report("classify", &cites, Value::Object(fields), outcome))
}
