//! Lefschetz pencil numerology and the standard-surface-count decision
//! procedure.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fourmanifold::{blow_up, FourManifoldLattice, HomologyClass, LatticeError};
use crate::kahler_gromov::{gromov_invariant, CohomologyProfile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PencilError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("pencil degree must be positive")]
    ZeroDegree,
    #[error("primitive symplectic class does not fit in 64-bit coordinates")]
    OmegaTooLarge,
    #[error("critical point count {0} is negative: inconsistent lattice")]
    NegativeDelta(i64),
    #[error("fibre degree of the class is zero; ratio undefined at k = {0}")]
    ZeroFibreDegree(u64),
    #[error("(b_+ + 1 - b_1) / 2 is not an integer: b_+ = {b_plus}, b_1 = {b1}")]
    HalfIntegralIndex { b_plus: usize, b1: u32 },
    #[error("b_+ must be at least 1")]
    NoPositiveDirection,
}

/// `omega` scaled to a primitive integral class: clear denominators, then
/// divide by the gcd of the numerators.
pub fn primitive_omega(x: &FourManifoldLattice) -> Result<HomologyClass, PencilError> {
    let lcm = x.omega().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.omega().iter().map(|q| (q * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.iter()
        .map(|v| (v / &gcd).to_i64().ok_or(PencilError::OmegaTooLarge))
        .collect::<Result<Vec<_>, _>>()
        .map(HomologyClass::new)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PencilData {
    pub k: u64,
    pub fibre_class: HomologyClass,
    pub genus: i64,
    pub base_points: i64,
    pub critical_points: i64,
    pub warnings: Vec<String>,
}

/// Degree-`k` pencil: fibre `W = k omega_0`, genus from adjunction, `N = W^2`
/// base points, and `delta` nodal fibres from
/// `e(X) + N = 2 (2 - 2g) + delta`.
pub fn build_pencil(x: &FourManifoldLattice, k: u64) -> Result<PencilData, PencilError> {
    if k == 0 {
        return Err(PencilError::ZeroDegree);
    }
    let w = primitive_omega(x)?.scale(i64::try_from(k).map_err(|_| LatticeError::Overflow)?)?;
    let n = x.square(&w)?;
    let genus = x.adjunction_genus(&w)?;
    let delta = x.euler() + n - (4 - 4 * genus);
    if delta < 0 {
        return Err(PencilError::NegativeDelta(delta));
    }
    let mut warnings = Vec::new();
    if genus < 2 {
        warnings.push(format!("fibre genus {genus} < 2; increase k"));
    }
    Ok(PencilData {
        k,
        fibre_class: w,
        genus,
        base_points: n,
        critical_points: delta,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibreDegree {
    /// `iota(a) . (i(W) - sum E_i)` on the blow-up at the base points.
    pub r: i64,
    /// `i(kappa - a) . (i(W) - sum E_i)`.
    pub residual: i64,
    pub two_g_minus_2: i64,
}

pub fn fibre_degree(x: &FourManifoldLattice, p: &PencilData, a: &HomologyClass) -> Result<FibreDegree, PencilError> {
    let n = usize::try_from(p.base_points).map_err(|_| LatticeError::Overflow)?;
    let xp = blow_up(x, n)?;
    let fibre = xp.include(&p.fibre_class)?;
    let fibre = fibre.sub(&xp.twist(&HomologyClass::zero(x.rank()))?)?;
    let r = xp.pairing(&xp.twist(a)?, &fibre)?;
    let residual = xp.pairing(&xp.include(&x.canonical().sub(a)?)?, &fibre)?;
    debug_assert_eq!(r, x.pairing(a, &p.fibre_class)? + p.base_points);
    Ok(FibreDegree {
        r,
        residual,
        two_g_minus_2: 2 * p.genus - 2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub k: u64,
    pub genus: i64,
    pub r: i64,
    #[serde(serialize_with = "crate::serde_rational")]
    pub ratio: BigRational,
}

/// `(k, (2g - 2) / r)` over the given degrees.
pub fn ratio_convergence(
    x: &FourManifoldLattice,
    a: &HomologyClass,
    ks: impl IntoIterator<Item = u64>,
) -> Result<Vec<RatioRow>, PencilError> {
    ks.into_iter()
        .map(|k| {
            let p = build_pencil(x, k)?;
            let fd = fibre_degree(x, &p, a)?;
            if fd.r == 0 {
                return Err(PencilError::ZeroFibreDegree(k));
            }
            let ratio = BigRational::new(BigInt::from(fd.two_g_minus_2), BigInt::from(fd.r));
            Ok(RatioRow {
                k,
                genus: p.genus,
                r: fd.r,
                ratio,
            })
        })
        .collect()
}

/// `|ratio - 1|` is non-increasing along the table.
pub fn is_monotone_toward_one(rows: &[RatioRow]) -> bool {
    let one = BigRational::one();
    rows.windows(2)
        .all(|w| (&w[1].ratio - &one).abs() <= (&w[0].ratio - &one).abs())
}

/// `(a^2 - K.a) / 2`.
pub fn virtual_dim(x: &FourManifoldLattice, a: &HomologyClass) -> Result<i64, PencilError> {
    Ok(x.virtual_dim(a)?)
}

/// `(a^2 - K.a) / 2 + (b_+ + 1 - b_1) / 2`.
pub fn family_index(x: &FourManifoldLattice, a: &HomologyClass) -> Result<i64, PencilError> {
    let t = x.b_plus() as i64 + 1 - x.b1() as i64;
    if t % 2 != 0 {
        return Err(PencilError::HalfIntegralIndex {
            b_plus: x.b_plus(),
            b1: x.b1(),
        });
    }
    Ok(virtual_dim(x, a)? + t / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionSpace {
    /// Twice the dimension, always an integer.
    pub twice_dim: i64,
    /// `None` when the formula gives a half-integer.
    pub dim: Option<i64>,
    /// `b_1 / 2` rounded down.
    pub big_r: u32,
}

/// Holomorphic sections of `f_* K`: `(b_+ - 1)/2` for even `b_1`,
/// `(b_+ - 2)/2` for odd `b_1`.
pub fn sections_of_fk_dim(b_plus: usize, b1: u32) -> Result<SectionSpace, PencilError> {
    if b_plus == 0 {
        return Err(PencilError::NoPositiveDirection);
    }
    let twice_dim = b_plus as i64 - if b1.is_multiple_of(2) { 1 } else { 2 };
    let dim = (twice_dim % 2 == 0).then_some(twice_dim / 2);
    Ok(SectionSpace {
        twice_dim,
        dim,
        big_r: b1 / 2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum CountKind {
    Zero,
    PlusMinusOne,
    BinomialValue(#[serde(serialize_with = "crate::serde_bigint")] BigInt),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceCountVerdict {
    pub kind: CountKind,
    /// 1-based index of the deciding rule; 0 when none applied.
    pub rule: u8,
    pub reason: String,
    /// Dimension of the moduli torus of sections when `b_+ = 1`.
    pub moduli_torus_dim: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountNumbers {
    pub a_square: i64,
    pub k_dot_a: i64,
    pub virtual_dim: i64,
    #[serde(serialize_with = "crate::serde_rational")]
    pub a_dot_omega: BigRational,
    #[serde(serialize_with = "crate::serde_rational")]
    pub k_dot_omega: BigRational,
    pub b_plus: usize,
    pub b1: u32,
}

pub const CITE_NEGATIVE_DIM: &str = "count vanishes when alpha^2 - K.alpha < 0";
pub const CITE_SIMPLE_TYPE: &str = "simple type: counts vanish for alpha^2 != K.alpha when b_+ > 1 + b_1";
pub const CITE_OMEGA_BOUNDS: &str = "nonzero counts need 0 <= alpha.omega <= K.omega when b_+ > 1 + b_1";
pub const CITE_B_PLUS_ONE: &str = "b_+ = 1, b_1 = 0: count is +-1 for alpha.omega > 0 and alpha^2 > K.alpha";
pub const CITE_CANONICAL: &str = "count of kappa (and of 0) is +-1 when b_+ > 1 + b_1";
pub const CITE_KAHLER: &str = "Kahler formula binom(-(h2 - r), (h0 - 1) - r)";

/// One rule that applies to the input, with the verdict it would give.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleFiring {
    pub rule: u8,
    pub kind: CountKind,
    pub citation: &'static str,
}

pub fn count_numbers(x: &FourManifoldLattice, a: &HomologyClass) -> Result<CountNumbers, PencilError> {
    Ok(CountNumbers {
        a_square: x.square(a)?,
        k_dot_a: x.k_dot(a)?,
        virtual_dim: x.virtual_dim(a)?,
        a_dot_omega: x.omega_dot(a)?,
        k_dot_omega: x.k_dot_omega(),
        b_plus: x.b_plus(),
        b1: x.b1(),
    })
}

/// Every rule among 1-5 whose hypothesis holds, in rule order.
pub fn count_rules(x: &FourManifoldLattice, a: &HomologyClass) -> Result<Vec<RuleFiring>, PencilError> {
    let n = count_numbers(x, a)?;
    let big = x.b_plus_exceeds_one_plus_b1();
    let mut out = Vec::new();
    let mut fire = |rule, kind, citation| out.push(RuleFiring { rule, kind, citation });
    if n.virtual_dim < 0 {
        fire(1, CountKind::Zero, CITE_NEGATIVE_DIM);
    }
    if big && n.a_square != n.k_dot_a {
        fire(2, CountKind::Zero, CITE_SIMPLE_TYPE);
    }
    if big && (n.a_dot_omega.is_negative() || n.a_dot_omega > n.k_dot_omega) {
        fire(3, CountKind::Zero, CITE_OMEGA_BOUNDS);
    }
    if n.b_plus == 1 && n.b1 == 0 && n.a_dot_omega.is_positive() && n.a_square > n.k_dot_a {
        fire(4, CountKind::PlusMinusOne, CITE_B_PLUS_ONE);
    }
    if big && (a.is_zero() || a == x.canonical()) {
        fire(5, CountKind::PlusMinusOne, CITE_CANONICAL);
    }
    Ok(out)
}

/// Conservative certifier for the standard surface count of `a`. Rules are
/// tried in order; a Kähler profile of `a`, when given, is used only if no
/// topological rule applies.
pub fn count_decision(
    x: &FourManifoldLattice,
    a: &HomologyClass,
    profile: Option<&CohomologyProfile>,
) -> Result<SurfaceCountVerdict, PencilError> {
    let firings = count_rules(x, a)?;
    let moduli_torus_dim = (x.b_plus() == 1).then_some(x.b1() / 2);
    let verdict = |kind, rule, reason: String| SurfaceCountVerdict {
        kind,
        rule,
        reason,
        moduli_torus_dim,
    };
    let zero = firings.iter().find(|f| f.kind == CountKind::Zero);
    let one = firings.iter().find(|f| f.kind == CountKind::PlusMinusOne);
    if let (Some(z), Some(o)) = (zero, one) {
        // Only rules 3 and 5 can meet, and only when K.omega < 0 with
        // b_+ > 1 + b_1, which no symplectic manifold satisfies.
        return Ok(verdict(
            CountKind::Unknown,
            0,
            format!(
                "hypotheses contradict each other: rule {} ({}) and rule {} ({})",
                z.rule, z.citation, o.rule, o.citation
            ),
        ));
    }
    if let Some(f) = firings.first() {
        return Ok(verdict(f.kind.clone(), f.rule, f.citation.to_string()));
    }
    if let Some(p) = profile {
        if p.divisor_class() == a && x.b1() == 0 {
            let r = x.virtual_dim(a)?;
            let v = gromov_invariant(p, r);
            return Ok(verdict(
                CountKind::BinomialValue(v.signed),
                6,
                format!("{CITE_KAHLER} with r = {r}"),
            ));
        }
    }
    Ok(verdict(CountKind::Unknown, 7, "no cited hypothesis applies".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourmanifold::catalog;

    #[test]
    fn plane_pencils() {
        let x = catalog::get("cp2").unwrap();
        let got: Vec<_> = (1..=3)
            .map(|k| {
                let p = build_pencil(&x, k).unwrap();
                (p.genus, p.base_points, p.critical_points)
            })
            .collect();
        assert_eq!(got, [(0, 1, 0), (0, 4, 3), (1, 9, 12)]);
    }

    #[test]
    fn primitive_omega_clears_denominators() {
        let mut s = catalog::get("s2xs2").unwrap().spec();
        s.omega = vec![crate::exact::ratio(2, 3), crate::exact::ratio(4, 3)];
        let x = FourManifoldLattice::new(s).unwrap();
        assert_eq!(primitive_omega(&x).unwrap(), HomologyClass::new(vec![1, 2]));
    }

    #[test]
    fn fibre_degree_of_line_on_cubic_pencil() {
        let x = catalog::get("cp2").unwrap();
        let p = build_pencil(&x, 3).unwrap();
        let fd = fibre_degree(&x, &p, &HomologyClass::new(vec![1])).unwrap();
        assert_eq!(fd.r, 12);
        assert_eq!(fd.r + fd.residual, fd.two_g_minus_2);
    }

    #[test]
    fn ratio_at_fifty() {
        let x = catalog::get("cp2").unwrap();
        let rows = ratio_convergence(&x, &HomologyClass::new(vec![1]), [50]).unwrap();
        assert_eq!(rows[0].ratio, crate::exact::ratio(47, 51));
    }

    #[test]
    fn family_index_k3() {
        let x = catalog::get("k3").unwrap();
        assert_eq!(family_index(&x, &HomologyClass::zero(x.rank())).unwrap(), 2);
    }

    #[test]
    fn section_dims() {
        assert_eq!(sections_of_fk_dim(3, 0).unwrap().dim, Some(1));
        assert_eq!(sections_of_fk_dim(3, 1).unwrap().dim, None);
        let s = sections_of_fk_dim(5, 2).unwrap();
        assert_eq!((s.dim, s.big_r), (Some(2), 1));
    }

    #[test]
    fn plane_line_is_plus_minus_one() {
        let x = catalog::get("cp2").unwrap();
        let v = count_decision(&x, &HomologyClass::new(vec![1]), None).unwrap();
        assert_eq!(
            (v.kind, v.rule, v.moduli_torus_dim),
            (CountKind::PlusMinusOne, 4, Some(0))
        );
    }

    #[test]
    fn canonical_class_on_k3() {
        let x = catalog::get("k3").unwrap();
        let v = count_decision(&x, &x.canonical().clone(), None).unwrap();
        assert_eq!(v.kind, CountKind::PlusMinusOne);
    }
}
