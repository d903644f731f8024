//! Bundled example lattices, shipped as JSON under `data/`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{lattice_from_json, FourManifoldLattice, LatticeSpec};

const ENTRIES: &[(&str, &str)] = &[
    ("cp2", include_str!("../../data/cp2.json")),
    ("s2xs2", include_str!("../../data/s2xs2.json")),
    ("cp2_8", include_str!("../../data/cp2_8.json")),
    ("cp2_9", include_str!("../../data/cp2_9.json")),
    ("k3", include_str!("../../data/k3.json")),
    ("e3", include_str!("../../data/e3.json")),
    ("e4", include_str!("../../data/e4.json")),
    ("k3x3", include_str!("../../data/k3x3.json")),
    ("quintic", include_str!("../../data/quintic.json")),
    ("t4", include_str!("../../data/t4.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

/// Raw JSON of a catalog entry.
pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Panics if a bundled file is invalid; the catalog test guards this.
pub fn get(name: &str) -> Option<FourManifoldLattice> {
    source(name).map(|s| lattice_from_json(s).unwrap_or_else(|e| panic!("catalog entry {name}: {e}")))
}

fn hyperbolic_block(form: &mut [Vec<i64>], at: usize) {
    form[at][at + 1] = 1;
    form[at + 1][at] = 1;
}

/// `-E8`, Bourbaki labelling.
fn minus_e8_block(form: &mut [Vec<i64>], at: usize) {
    for i in 0..8 {
        form[at + i][at + i] = -2;
    }
    for (a, b) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)] {
        form[at + a - 1][at + b - 1] = 1;
        form[at + b - 1][at + a - 1] = 1;
    }
}

fn int_vec(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// The elliptic surface `E(n)`, `n >= 1`, with `K = (n - 2) F`.
///
/// Even `n`: `(2n-1) H + n (-E8)`, `F = e_1` of the first hyperbolic
/// summand. Odd `n`: `(2n-1)<1> + (10n-1)<-1>`, `F` with coordinates 3 on the
/// first `n` positive vectors and 1 elsewhere.
pub fn elliptic(n: u32) -> FourManifoldLattice {
    assert!(n >= 1);
    let n = n as usize;
    let rank = 12 * n - 2;
    let mut form = vec![vec![0; rank]; rank];
    let mut omega = vec![0; rank];
    let fibre: Vec<i64> = if n.is_multiple_of(2) {
        for h in 0..2 * n - 1 {
            hyperbolic_block(&mut form, 2 * h);
        }
        for e in 0..n {
            minus_e8_block(&mut form, 2 * (2 * n - 1) + 8 * e);
        }
        omega[0] = 1;
        omega[1] = 1;
        (0..rank).map(|i| i64::from(i == 0)).collect()
    } else {
        let pos = 2 * n - 1;
        for (i, row) in form.iter_mut().enumerate() {
            row[i] = if i < pos { 1 } else { -1 };
        }
        omega[0] = 1;
        (0..rank).map(|i| if i < n { 3 } else { 1 }).collect()
    };
    let k = fibre.iter().map(|f| f * (n as i64 - 2)).collect();
    FourManifoldLattice::new(LatticeSpec {
        label: format!("E({n})"),
        b1: 0,
        form,
        canonical: k,
        omega: int_vec(&omega),
        minimal: true,
        general_type: false,
        declared_b_plus: Some(2 * n - 1),
        declared_b_minus: Some(10 * n - 1),
    })
    .expect("E(n) lattice is valid")
}

/// `(2 p_g + 1) H` with `K = 2 (e_1 + (p_g + 1) f_1)`: numerically the
/// lattice of a simply connected surface with geometric genus `p_g`,
/// `chi_h = p_g + 1` and `K^2 = 8 (p_g + 1)`.
pub fn hyperbolic(p_g: u32) -> FourManifoldLattice {
    let h = 2 * p_g as usize + 1;
    let rank = 2 * h;
    let mut form = vec![vec![0; rank]; rank];
    for i in 0..h {
        hyperbolic_block(&mut form, 2 * i);
    }
    let mut k = vec![0; rank];
    k[0] = 2;
    k[1] = 2 * (p_g as i64 + 1);
    let mut omega = vec![0; rank];
    omega[0] = 1;
    omega[1] = 1;
    FourManifoldLattice::new(LatticeSpec {
        label: format!("{h}H"),
        b1: 0,
        form,
        canonical: k,
        omega: int_vec(&omega),
        minimal: true,
        general_type: false,
        declared_b_plus: Some(h),
        declared_b_minus: Some(h),
    })
    .expect("hyperbolic lattice is valid")
}

#[cfg(test)]
mod tests {
    #[test]
    fn every_entry_validates() {
        for n in super::names() {
            super::get(n);
        }
    }

    #[test]
    fn bundled_elliptic_surfaces_match_builder() {
        for (name, n) in [("k3", 2), ("e3", 3), ("e4", 4)] {
            let file = super::get(name).unwrap();
            let built = super::elliptic(n);
            assert_eq!(file.form(), built.form());
            assert_eq!(file.canonical(), built.canonical());
            assert_eq!(file.omega(), built.omega());
        }
    }
}
