//! Finite-dimensional complex linear algebra for states and measurements:
//! pure states, density operators, POVMs, Gram matrices, and the Born rule.
//!
//! Dimensions stay tiny (≤ 8) throughout, so everything is dense
//! `nalgebra` over `Complex64` and validation eigendecompositions are
//! cheap enough to run on every construction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Which theory a strategy claims to live in. `Classical` strategies are
/// diagonal in the computational basis, `Real` ones have real entries in
/// some fixed basis, `Complex` ones are unrestricted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoryTag {
    Classical,
    Real,
    Complex,
}

impl std::fmt::Display for TheoryTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TheoryTag::Classical => write!(f, "classical"),
            TheoryTag::Real => write!(f, "real"),
            TheoryTag::Complex => write!(f, "complex"),
        }
    }
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: CVec,
}

impl PureState {
    /// Validates Euclidean norm 1 within the structural tolerance.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::from_vector(CVec::from_vec(amplitudes))
    }

    pub fn from_vector(amplitudes: CVec) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > tolerances::STRUCTURAL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amplitudes
    }

    /// |ψ⟩⟨ψ| as a density operator.
    pub fn to_density(&self) -> DensityMatrix {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::new(m).expect("projector onto a unit vector is a valid density operator")
    }

    /// Multiplies by a unit-modulus scalar. Physically a no-op; useful
    /// for phase-invariance checks.
    pub fn with_phase(&self, phase: f64) -> PureState {
        let z = Complex64::from_polar(1.0, phase);
        PureState {
            amplitudes: self.amplitudes.map(|a| a * z),
        }
    }
}

/// A positive semidefinite, Hermitian, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMat,
}

impl DensityMatrix {
    /// Validates Hermiticity, positivity, and unit trace within the
    /// structural tolerance. Eigenvalues in `[-tol, 0)` are treated as
    /// rounding and accepted; anything below `-tol` is rejected.
    pub fn new(entries: CMat) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        if entries.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let defect = hermiticity_defect(&entries);
        if defect > tolerances::STRUCTURAL {
            return Err(Error::NotHermitian(defect));
        }
        let min_eig = min_eigenvalue(&entries);
        if min_eig < -tolerances::STRUCTURAL {
            return Err(Error::NotPsd(min_eig));
        }
        let tr = trace(&entries).re;
        if (tr - 1.0).abs() > tolerances::STRUCTURAL {
            return Err(Error::InvalidTrace(tr));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn maximally_mixed(dim: usize) -> DensityMatrix {
        let m = CMat::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        DensityMatrix { entries: m }
    }

    /// Eigenvalues in ascending order (real, since the operator is
    /// Hermitian).
    pub fn eigenvalues(&self) -> Vec<f64> {
        sorted_eigenvalues(&self.entries)
    }

    /// Convex mixture `λ·self + (1-λ)·other`.
    pub fn mix(&self, other: &DensityMatrix, lambda: f64) -> Result<DensityMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let l = Complex64::new(lambda, 0.0);
        let r = Complex64::new(1.0 - lambda, 0.0);
        DensityMatrix::new(&self.entries * l + &other.entries * r)
    }

    /// Conjugation `U ρ U†`.
    pub fn rotate(&self, unitary: &CMat) -> Result<DensityMatrix> {
        if unitary.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: unitary.ncols(),
            });
        }
        DensityMatrix::new(unitary * &self.entries * unitary.adjoint())
    }
}

/// A generalized measurement: PSD effects summing to identity, one per
/// labeled outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    outcomes: Vec<String>,
    elements: Vec<CMat>,
}

impl Povm {
    pub fn new(outcomes: Vec<String>, elements: Vec<CMat>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        if outcomes.len() != elements.len() {
            return Err(Error::DimensionMismatch {
                expected: outcomes.len(),
                got: elements.len(),
            });
        }
        let dim = elements[0].nrows();
        let mut sum = CMat::zeros(dim, dim);
        for m in &elements {
            if m.nrows() != m.ncols() {
                return Err(Error::NotSquare {
                    rows: m.nrows(),
                    cols: m.ncols(),
                });
            }
            if m.nrows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: m.nrows(),
                });
            }
            let defect = hermiticity_defect(m);
            if defect > tolerances::STRUCTURAL {
                return Err(Error::NotHermitian(defect));
            }
            let min_eig = min_eigenvalue(m);
            if min_eig < -tolerances::STRUCTURAL {
                return Err(Error::NotPsd(min_eig));
            }
            sum += m;
        }
        sum -= CMat::identity(dim, dim);
        let deviation = sum.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if deviation > tolerances::STRUCTURAL {
            return Err(Error::EffectsSumNotIdentity(deviation));
        }
        Ok(Self { outcomes, elements })
    }

    /// Projective measurement onto the computational basis, outcomes
    /// labeled "0", "1", ….
    pub fn computational(dim: usize) -> Povm {
        let outcomes = (0..dim).map(|k| k.to_string()).collect();
        let elements = (0..dim)
            .map(|k| {
                let mut m = CMat::zeros(dim, dim);
                m[(k, k)] = Complex64::new(1.0, 0.0);
                m
            })
            .collect();
        Povm { outcomes, elements }
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn n_outcomes(&self) -> usize {
        self.elements.len()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn elements(&self) -> &[CMat] {
        &self.elements
    }
}

/// Pairwise inner products of an ensemble; Hermitian and PSD, with unit
/// diagonal when the states are normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: CMat,
}

impl GramMatrix {
    pub fn new(entries: CMat) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        if entries.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let defect = hermiticity_defect(&entries);
        if defect > tolerances::STRUCTURAL {
            return Err(Error::NotHermitian(defect));
        }
        let min_eig = min_eigenvalue(&entries);
        if min_eig < -tolerances::STRUCTURAL {
            return Err(Error::NotPsd(min_eig));
        }
        Ok(Self { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        sorted_eigenvalues(&self.entries)
    }

    pub fn max_entry_distance(&self, other: &GramMatrix) -> f64 {
        (&self.entries - &other.entries)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// ⟨a|b⟩, conjugating the first argument.
pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(a.amplitudes().dotc(b.amplitudes()))
}

/// Born rule: one probability `Tr(ρ Mₘ)` per outcome. Entries may dip a
/// few ulps below zero; callers that sample should clamp.
pub fn born_probabilities(state: &DensityMatrix, measurement: &Povm) -> Result<Vec<f64>> {
    if state.dim() != measurement.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            got: measurement.dim(),
        });
    }
    Ok(measurement
        .elements()
        .iter()
        .map(|m| product_trace(state.entries(), m).re)
        .collect())
}

/// Gram matrix of an ensemble, Hermitian by construction: entries below
/// the diagonal are conjugates of those above, and the diagonal is
/// exactly real.
pub fn gram_matrix(states: &[PureState]) -> Result<GramMatrix> {
    if states.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let n = states.len();
    let mut g = CMat::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let ip = inner_product(&states[a], &states[b])?;
            if a == b {
                g[(a, a)] = Complex64::new(ip.re, 0.0);
            } else {
                g[(a, b)] = ip;
                g[(b, a)] = ip.conj();
            }
        }
    }
    Ok(GramMatrix { entries: g })
}

/// Communication cost in bits: log2 of the dimension spanned by the
/// ensemble, counted as the number of eigenvalues of the normalized
/// ensemble average above `tol`. Scale-free and basis-free.
pub fn communication_cost(states: &[DensityMatrix], tol: f64) -> Result<f64> {
    if states.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let dim = states[0].dim();
    let mut avg = CMat::zeros(dim, dim);
    for s in states {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: s.dim(),
            });
        }
        avg += s.entries();
    }
    avg /= Complex64::new(states.len() as f64, 0.0);
    let rank = sorted_eigenvalues(&avg).iter().filter(|&&l| l > tol).count();
    Ok((rank as f64).log2())
}

/// Tr(ρ²) ∈ [1/dim, 1]; equals 1 exactly for projectors.
pub fn purity(state: &DensityMatrix) -> f64 {
    product_trace(state.entries(), state.entries()).re
}

/// Haar-style random unitary, deterministic for a fixed seed: complex
/// Gaussian matrix, QR, and the R-diagonal phases folded into Q.
pub fn random_unitary(dim: usize, seed: u64) -> Result<CMat> {
    if dim < 1 {
        return Err(Error::EmptyEnsemble);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z: Vec<Complex64> = (0..dim * dim)
        .map(|_| Complex64::new(standard_normal(&mut rng), standard_normal(&mut rng)))
        .collect();
    let qr = CMat::from_vec(dim, dim, z).qr();
    let r = qr.r();
    let phases = CVec::from_iterator(
        dim,
        (0..dim).map(|k| {
            let d = r[(k, k)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        }),
    );
    Ok(qr.q() * CMat::from_diagonal(&phases))
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; u is kept away from 0 so the log stays finite.
    let u: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let v: f64 = rng.random();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

pub(crate) fn trace(m: &CMat) -> Complex64 {
    (0..m.nrows()).map(|k| m[(k, k)]).sum()
}

/// Tr(a·b) without materializing the product.
pub(crate) fn product_trace(a: &CMat, b: &CMat) -> Complex64 {
    let n = a.nrows();
    let mut t = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            t += a[(i, k)] * b[(k, i)];
        }
    }
    t
}

pub(crate) fn hermiticity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn sorted_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues of a Hermitian matrix are finite"));
    ev
}

pub(crate) fn min_eigenvalue(m: &CMat) -> f64 {
    sorted_eigenvalues(m)[0]
}

pub(crate) fn is_diagonal(m: &CMat, tol: f64) -> bool {
    let n = m.nrows();
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)].norm() <= tol))
}

pub(crate) fn max_imag(m: &CMat) -> f64 {
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket(amplitudes: &[Complex64]) -> PureState {
        PureState::new(amplitudes.to_vec()).unwrap()
    }

    #[test]
    fn inner_product_conjugates_first_argument() {
        let a = ket(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let b = ket(&[c(0.0, 0.0), c(0.0, 1.0)]);
        let plus_i = ket(&[c(1.0 / 2f64.sqrt(), 0.0), c(0.0, 1.0 / 2f64.sqrt())]);
        let ab = inner_product(&a, &plus_i).unwrap();
        assert_abs_diff_eq!(ab.re, 1.0 / 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(ab.im, 0.0, epsilon = 1e-15);
        let ba = inner_product(&plus_i, &b).unwrap();
        // ⟨+i|i·e1⟩ = conj(i/√2)·i = 1/√2
        assert_abs_diff_eq!(ba.re, 1.0 / 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(ba.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn self_overlap_is_one() {
        let s = ket(&[c(0.6, 0.0), c(0.0, 0.8)]);
        let ip = inner_product(&s, &s).unwrap();
        assert_abs_diff_eq!(ip.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ip.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let a = ket(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let b = ket(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            inner_product(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pure_state_rejects_unnormalized() {
        assert!(matches!(
            PureState::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn density_matrix_rejects_bad_trace_and_negativity() {
        let two = CMat::identity(2, 2) * c(1.0, 0.0);
        assert!(matches!(DensityMatrix::new(two), Err(Error::InvalidTrace(_))));

        let neg = CMat::from_row_slice(2, 2, &[c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert!(matches!(DensityMatrix::new(neg), Err(Error::NotPsd(_))));

        let skew = CMat::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.0), c(0.3, 0.0), c(0.5, 0.0)]);
        assert!(matches!(DensityMatrix::new(skew), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn density_matrix_accepts_rounding_negative_eigenvalue() {
        let eps = 5e-10;
        let m = CMat::from_row_slice(
            2,
            2,
            &[c(1.0 + eps, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-eps, 0.0)],
        );
        assert!(DensityMatrix::new(m).is_ok());
    }

    #[test]
    fn born_on_mixed_qubit_is_uniform() {
        let rho = DensityMatrix::maximally_mixed(2);
        let p = born_probabilities(&rho, &Povm::computational(2)).unwrap();
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn born_rejects_invalid_povm() {
        let rho = DensityMatrix::maximally_mixed(2);
        let elems = vec![CMat::identity(2, 2) * c(0.5, 0.0)];
        assert!(matches!(
            Povm::new(vec!["0".into()], elems),
            Err(Error::EffectsSumNotIdentity(_))
        ));
        let m3 = Povm::computational(3);
        assert!(matches!(
            born_probabilities(&rho, &m3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gram_of_orthonormal_basis_is_identity() {
        let states: Vec<PureState> = (0..3)
            .map(|k| {
                let mut v = vec![c(0.0, 0.0); 3];
                v[k] = c(1.0, 0.0);
                ket(&v)
            })
            .collect();
        let g = gram_matrix(&states).unwrap();
        let defect = (g.entries() - CMat::identity(3, 3))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(defect < 1e-15);
    }

    #[test]
    fn communication_cost_counts_span() {
        let single = vec![ket(&[c(1.0, 0.0), c(0.0, 0.0)]).to_density()];
        assert_abs_diff_eq!(
            communication_cost(&single, tolerances::RANK).unwrap(),
            0.0
        );

        let pair = vec![
            ket(&[c(1.0, 0.0), c(0.0, 0.0)]).to_density(),
            ket(&[c(0.0, 0.0), c(1.0, 0.0)]).to_density(),
        ];
        assert_abs_diff_eq!(communication_cost(&pair, tolerances::RANK).unwrap(), 1.0);
        assert!(communication_cost(&[], tolerances::RANK).is_err());
    }

    #[test]
    fn purity_of_handmade_mixture() {
        // ½|0⟩⟨0| + ½|+⟩⟨+| has eigenvalues (2±√2)/4, so Tr ρ² = 3/4.
        let zero = ket(&[c(1.0, 0.0), c(0.0, 0.0)]).to_density();
        let plus = ket(&[c(1.0 / 2f64.sqrt(), 0.0), c(1.0 / 2f64.sqrt(), 0.0)]).to_density();
        let mix = zero.mix(&plus, 0.5).unwrap();
        assert_abs_diff_eq!(purity(&mix), 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(purity(&zero), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            purity(&DensityMatrix::maximally_mixed(2)),
            0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn random_unitary_contracts() {
        for dim in [1usize, 2, 4] {
            let u = random_unitary(dim, 42).unwrap();
            let defect = (u.adjoint() * &u - CMat::identity(dim, dim))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(defect < 1e-10, "dim {dim}: {defect}");
        }
        let a = random_unitary(3, 7).unwrap();
        let b = random_unitary(3, 7).unwrap();
        assert_eq!(a, b);
        let d1 = random_unitary(1, 3).unwrap();
        assert_abs_diff_eq!(d1[(0, 0)].norm(), 1.0, epsilon = 1e-12);
        assert!(random_unitary(0, 1).is_err());
    }
}
