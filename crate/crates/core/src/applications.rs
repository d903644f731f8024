//! Named checks over a manifold, each carrying the numbers that decide it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::exact::format_rational;
use crate::fourmanifold::{
    classify_b_plus_one, minimality_inequality, ClassifyError, FourManifoldLattice, HomologyClass, LatticeError,
};
use crate::kahler_gromov::gr_parity;
use crate::pencil::{count_decision, CountKind, PencilError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Int(i64),
    Big(BigInt),
    Rational(BigRational),
    Bool(bool),
    Text(String),
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Quantity::Int(n) => s.serialize_i64(*n),
            Quantity::Big(n) => crate::serde_bigint(n, s),
            Quantity::Rational(q) => s.serialize_str(&format_rational(q)),
            Quantity::Bool(b) => s.serialize_bool(*b),
            Quantity::Text(t) => s.serialize_str(t),
        }
    }
}

impl Quantity {
    fn int(&self) -> Option<i64> {
        match self {
            Quantity::Int(n) => Some(*n),
            _ => None,
        }
    }

    fn rational(&self) -> Option<BigRational> {
        match self {
            Quantity::Int(n) => Some(BigRational::from_integer(BigInt::from(*n))),
            Quantity::Rational(q) => Some(q.clone()),
            _ => None,
        }
    }

    fn boolean(&self) -> Option<bool> {
        match self {
            Quantity::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub verdict: Verdict,
    pub cited_hypotheses: Vec<String>,
    pub numbers: BTreeMap<String, Quantity>,
    pub detail: String,
}

struct Builder {
    numbers: BTreeMap<String, Quantity>,
}

impl Builder {
    fn new() -> Self {
        Self {
            numbers: BTreeMap::new(),
        }
    }

    fn int(mut self, k: &str, v: i64) -> Self {
        self.numbers.insert(k.into(), Quantity::Int(v));
        self
    }

    fn rat(mut self, k: &str, v: BigRational) -> Self {
        self.numbers.insert(k.into(), Quantity::Rational(v));
        self
    }

    fn flag(mut self, k: &str, v: bool) -> Self {
        self.numbers.insert(k.into(), Quantity::Bool(v));
        self
    }

    fn big(mut self, k: &str, v: BigInt) -> Self {
        self.numbers.insert(k.into(), Quantity::Big(v));
        self
    }

    fn text(mut self, k: &str, v: String) -> Self {
        self.numbers.insert(k.into(), Quantity::Text(v));
        self
    }

    fn report(
        self,
        name: impl Into<String>,
        verdict: Verdict,
        cited: &[&str],
        detail: impl Into<String>,
    ) -> CheckReport {
        CheckReport {
            check_name: name.into(),
            verdict,
            cited_hypotheses: cited.iter().map(|s| s.to_string()).collect(),
            numbers: self.numbers,
            detail: detail.into(),
        }
    }
}

pub const CHECK_MINIMALITY: &str = "minimality_inequality";
pub const CHECK_CLASSIFY: &str = "classify_b_plus_one";
pub const CHECK_INFLATION: &str = "inflation_hypothesis";
pub const CHECK_SPIN_PARITY: &str = "spin_parity";
pub const CHECK_COUNT: &str = "count_decision";
pub const CHECK_GENERAL_TYPE: &str = "general_type_classes";

const CITE_MINIMALITY: &str = "minimal with b_+ > 1 + b_1 implies 2e + 3 sigma >= 0";
const CITE_CLASSIFY: &str = "b_+ = 1, b_1 = 0, K.omega < 0: S2xS2 or CP2 # n CP2bar with n <= 8";
const CITE_INFLATION: &str = "b_+ = 1 minimal with K^2 > 0 and K.omega > 0: canonical class contains symplectic forms";
const CITE_PARITY: &str = "spin with c_1^2 = 0: Gr(K/2) = binom(2n-2, n-1) is odd iff b_+ = 3";
const CITE_HODGE: &str = "Hodge index: (alpha^2)(K^2) <= (alpha.K)^2";
const CITE_BOUNDS: &str = "0 <= alpha.omega <= K.omega";
const CITE_SIMPLE_TYPE: &str = "alpha^2 = K.alpha";

fn base_numbers(x: &FourManifoldLattice) -> Builder {
    let cn = x.char_numbers();
    Builder::new()
        .int("b_plus", x.b_plus() as i64)
        .int("b_minus", x.b_minus() as i64)
        .int("b1", x.b1() as i64)
        .int("two_e_plus_3sigma", cn.two_e_plus_3sigma)
        .flag("minimal", x.minimal())
}

pub fn minimality_report(x: &FourManifoldLattice) -> CheckReport {
    let b = base_numbers(x);
    match minimality_inequality(x) {
        Ok(v) => {
            let verdict = if v.holds { Verdict::Pass } else { Verdict::Fail };
            b.report(CHECK_MINIMALITY, verdict, &[CITE_MINIMALITY], v.message)
        }
        Err(p) => b.report(CHECK_MINIMALITY, Verdict::NotApplicable, &[CITE_MINIMALITY], p.failed),
    }
}

pub fn classify_report(x: &FourManifoldLattice) -> CheckReport {
    let b = base_numbers(x)
        .rat("k_dot_omega", x.k_dot_omega())
        .flag("even", x.is_even());
    match classify_b_plus_one(x) {
        Ok(t) => b
            .text("type", t.name())
            .report(CHECK_CLASSIFY, Verdict::Pass, &[CITE_CLASSIFY], t.name()),
        Err(ClassifyError::TooManyBlowUps {
            b_minus,
            two_e_plus_3sigma,
        }) => b.report(
            CHECK_CLASSIFY,
            Verdict::Fail,
            &[CITE_CLASSIFY],
            format!("b_- = {b_minus} > 8: 2e + 3 sigma = {two_e_plus_3sigma} contradicts K^2 > 0"),
        ),
        Err(ClassifyError::Precondition(p)) => {
            b.report(CHECK_CLASSIFY, Verdict::NotApplicable, &[CITE_CLASSIFY], p.failed)
        }
    }
}

pub fn inflation_report(x: &FourManifoldLattice) -> CheckReport {
    let k2 = x.k_square();
    let kw = x.k_dot_omega();
    let holds = x.b_plus() == 1 && x.minimal() && k2 > 0 && kw.is_positive();
    let b = base_numbers(x).int("k_square", k2).rat("k_dot_omega", kw);
    if holds {
        b.report(CHECK_INFLATION, Verdict::Pass, &[CITE_INFLATION], "hypotheses hold")
    } else {
        b.report(
            CHECK_INFLATION,
            Verdict::NotApplicable,
            &[CITE_INFLATION],
            "hypotheses do not hold",
        )
    }
}

pub fn spin_parity_report(x: &FourManifoldLattice) -> CheckReport {
    let b = base_numbers(x).flag("even", x.is_even()).int("k_square", x.k_square());
    let applicable = x.is_even() && x.b1() == 0 && x.k_square() == 0 && (x.b_plus() + 1).is_multiple_of(4);
    if !applicable {
        return b.report(
            CHECK_SPIN_PARITY,
            Verdict::NotApplicable,
            &[CITE_PARITY],
            "needs even form, b_1 = 0, c_1^2 = 0",
        );
    }
    let n = ((x.b_plus() + 1) / 4) as u32;
    let p = gr_parity(n);
    let consistent = p.odd == (x.b_plus() == 3);
    let detail = if p.odd { "odd" } else { "even" };
    b.int("n", n as i64).big("gr", p.value).flag("odd", p.odd).report(
        CHECK_SPIN_PARITY,
        if consistent { Verdict::Pass } else { Verdict::Fail },
        &[CITE_PARITY],
        detail,
    )
}

pub fn count_report(x: &FourManifoldLattice, a: &HomologyClass) -> Result<CheckReport, PencilError> {
    let n = crate::pencil::count_numbers(x, a)?;
    let v = count_decision(x, a, None)?;
    let verdict = if v.kind == CountKind::Unknown {
        Verdict::NotApplicable
    } else {
        Verdict::Pass
    };
    let kind = match &v.kind {
        CountKind::Zero => "Zero".to_string(),
        CountKind::PlusMinusOne => "PlusMinusOne".to_string(),
        CountKind::BinomialValue(b) => format!("BinomialValue({b})"),
        CountKind::Unknown => "Unknown".to_string(),
    };
    Ok(Builder::new()
        .int("a_square", n.a_square)
        .int("k_dot_a", n.k_dot_a)
        .int("virtual_dim", n.virtual_dim)
        .rat("a_dot_omega", n.a_dot_omega)
        .rat("k_dot_omega", n.k_dot_omega)
        .int("b_plus", n.b_plus as i64)
        .int("b1", n.b1 as i64)
        .flag("zero_or_canonical", a.is_zero() || a == x.canonical())
        .int("rule", v.rule as i64)
        .text("kind", kind.clone())
        .report(format!("{CHECK_COUNT}{a}"), verdict, &[v.reason.as_str()], kind))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralTypeClass {
    pub class: HomologyClass,
    pub survives: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralTypeFilter {
    pub classes: Vec<GeneralTypeClass>,
    /// Every survivor is `0` or `K`.
    pub forced_to_zero_or_k: bool,
}

/// Keeps the candidates compatible with `0 <= alpha.omega <= K.omega`,
/// `alpha^2 = K.alpha` and the Hodge index inequality.
pub fn general_type_classes(
    x: &FourManifoldLattice,
    candidates: &[HomologyClass],
) -> Result<GeneralTypeFilter, crate::fourmanifold::Precondition> {
    let k2 = x.k_square();
    let kw = x.k_dot_omega();
    let fail = |s: &str| Err(crate::fourmanifold::Precondition { failed: s.into() });
    if !x.minimal() || !x.general_type() {
        return fail("minimal and general-type flags must be declared");
    }
    if k2 <= 0 || !kw.is_positive() || !x.b_plus_exceeds_one_plus_b1() {
        return fail("needs K^2 > 0, K.omega > 0 and b_+ > 1 + b_1");
    }
    let mut classes = Vec::new();
    for a in candidates {
        let eval = || -> Result<Vec<String>, LatticeError> {
            let mut v = Vec::new();
            let aw = x.omega_dot(a)?;
            let (a2, ka) = (x.square(a)?, x.k_dot(a)?);
            if aw.is_negative() || aw > kw {
                v.push(format!("{CITE_BOUNDS} fails: alpha.omega = {}", format_rational(&aw)));
            }
            if a2 != ka {
                v.push(format!("{CITE_SIMPLE_TYPE} fails: {a2} != {ka}"));
            }
            if (a2 as i128) * (k2 as i128) > (ka as i128) * (ka as i128) {
                v.push(format!("{CITE_HODGE} fails: {a2} * {k2} > {ka}^2"));
            }
            Ok(v)
        };
        let violations = eval().unwrap_or_else(|e| vec![e.to_string()]);
        classes.push(GeneralTypeClass {
            class: a.clone(),
            survives: violations.is_empty(),
            violations,
        });
    }
    let forced_to_zero_or_k = classes
        .iter()
        .filter(|c| c.survives)
        .all(|c| c.class.is_zero() || &c.class == x.canonical());
    Ok(GeneralTypeFilter {
        classes,
        forced_to_zero_or_k,
    })
}

fn general_type_report(x: &FourManifoldLattice, classes: &[HomologyClass]) -> CheckReport {
    let b = base_numbers(x)
        .int("k_square", x.k_square())
        .rat("k_dot_omega", x.k_dot_omega());
    match general_type_classes(x, classes) {
        Ok(f) => {
            let survivors: Vec<String> = f
                .classes
                .iter()
                .filter(|c| c.survives)
                .map(|c| c.class.to_string())
                .collect();
            b.int("candidates", f.classes.len() as i64)
                .int("survivors", survivors.len() as i64)
                .flag("forced_to_zero_or_k", f.forced_to_zero_or_k)
                .report(
                    CHECK_GENERAL_TYPE,
                    Verdict::Pass,
                    &[CITE_BOUNDS, CITE_SIMPLE_TYPE, CITE_HODGE],
                    format!("survivors: [{}]", survivors.join(", ")),
                )
        }
        Err(p) => b.report(CHECK_GENERAL_TYPE, Verdict::NotApplicable, &[CITE_BOUNDS], p.failed),
    }
}

/// Every check, in a fixed order; count reports follow the class order.
pub fn run_all(x: &FourManifoldLattice, classes: &[HomologyClass]) -> Result<Vec<CheckReport>, PencilError> {
    let mut out = vec![
        minimality_report(x),
        classify_report(x),
        inflation_report(x),
        spin_parity_report(x),
    ];
    for a in classes {
        out.push(count_report(x, a)?);
    }
    if x.general_type() {
        out.push(general_type_report(x, classes));
    }
    Ok(out)
}

/// Re-derives the verdict of a report from its `numbers`. `None` when the
/// numbers are missing or the check is not recognised.
pub fn recheck(report: &CheckReport) -> Option<Verdict> {
    let n = &report.numbers;
    let int = |k: &str| n.get(k).and_then(Quantity::int);
    let flag = |k: &str| n.get(k).and_then(Quantity::boolean);
    let rat = |k: &str| n.get(k).and_then(Quantity::rational);
    let name = report.check_name.as_str();
    Some(if name == CHECK_MINIMALITY {
        if !flag("minimal")? || int("b_plus")? <= 1 + int("b1")? {
            Verdict::NotApplicable
        } else if int("two_e_plus_3sigma")? >= 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else if name == CHECK_CLASSIFY {
        if int("b_plus")? != 1 || int("b1")? != 0 || !rat("k_dot_omega")?.is_negative() {
            Verdict::NotApplicable
        } else if 9 - int("two_e_plus_3sigma")? > 8 {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    } else if name == CHECK_INFLATION {
        if int("b_plus")? == 1 && flag("minimal")? && int("k_square")? > 0 && rat("k_dot_omega")?.is_positive() {
            Verdict::Pass
        } else {
            Verdict::NotApplicable
        }
    } else if name == CHECK_SPIN_PARITY {
        if !flag("even")? || int("b1")? != 0 || int("k_square")? != 0 || (int("b_plus")? + 1) % 4 != 0 {
            Verdict::NotApplicable
        } else if flag("odd")? == (int("b_plus")? == 3) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else if name.starts_with(CHECK_COUNT) {
        let big = int("b_plus")? > 1 + int("b1")?;
        let (a2, ka, aw, kw) = (
            int("a_square")?,
            int("k_dot_a")?,
            rat("a_dot_omega")?,
            rat("k_dot_omega")?,
        );
        let zero = int("virtual_dim")? < 0 || (big && a2 != ka) || (big && (aw.is_negative() || aw > kw));
        let one = (int("b_plus")? == 1 && int("b1")? == 0 && aw.is_positive() && a2 > ka)
            || (big && flag("zero_or_canonical")?);
        if zero != one {
            Verdict::Pass
        } else {
            Verdict::NotApplicable
        }
    } else if name == CHECK_GENERAL_TYPE {
        let kw = rat("k_dot_omega")?;
        if flag("minimal")? && int("k_square")? > 0 && kw.is_positive() && int("b_plus")? > 1 + int("b1")? {
            Verdict::Pass
        } else {
            Verdict::NotApplicable
        }
    } else {
        return None;
    })
}
