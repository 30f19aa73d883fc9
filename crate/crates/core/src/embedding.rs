//! Minimal-dimension state reconstruction from Gram matrices (reverse
//! Gram-Schmidt) and Bloch-sphere geometry for qubit ensembles,
//! including the great-circle coplanarity test.

use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_6, PI};

use crate::error::{Error, Result};
use crate::quantum::{CMat, CVec, GramMatrix, PureState};
use crate::strategies::SignBranch;
use crate::tolerances;

/// Pauli expectation values of a qubit state.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Factors a Gram matrix back into state vectors of dimension equal to
/// its numerical rank (eigenvalues above `tol`).
///
/// The output follows a greedy triangular convention: the first state is
/// (1, 0, …) and each state's overlap with the newest orthonormal
/// direction is real and nonnegative, so results are deterministic and
/// a real Gram matrix factors into real states.
pub fn states_from_gram(gram: &GramMatrix, tol: f64) -> Result<Vec<PureState>> {
    let n = gram.n();
    let eigenvalues = gram.eigenvalues();
    if eigenvalues[0] < -tol {
        return Err(Error::NotPsd(eigenvalues[0]));
    }
    let rank = eigenvalues.iter().filter(|&&l| l > tol).count();
    if rank == 0 {
        return Err(Error::ZeroRankGram);
    }

    // Semidefinite Cholesky, tolerant of dependent states: a vanishing
    // pivot means the state already lives in the span built so far.
    let g = gram.entries();
    let mut l = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = g[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            if i == j {
                l[(i, i)] = Complex64::new(s.re.max(0.0).sqrt(), 0.0);
            } else if l[(j, j)].re > tol.sqrt() {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }

    (0..n)
        .map(|i| {
            let amplitudes = CVec::from_iterator(rank, (0..rank).map(|k| l[(i, k)].conj()));
            PureState::from_vector(amplitudes)
        })
        .collect()
}

/// The 4×4 overlap table of the exact message-state ensembles, entered
/// in closed form.
pub fn overlap_table(branch: SignBranch) -> GramMatrix {
    let s = branch.sign();
    let k = 1.0 / 3f64.sqrt();
    let one = Complex64::new(1.0, 0.0);
    let g01 = Complex64::from_polar(k, s * FRAC_PI_6);
    let g02 = Complex64::from_polar(k, -s * FRAC_PI_6);
    let g03 = g01;
    let g12 = Complex64::from_polar(k, -s * 5.0 * PI / 6.0);
    let g13 = Complex64::new(0.0, s * k);
    let g23 = Complex64::from_polar(k, -s * FRAC_PI_6);

    let mut m = CMat::identity(4, 4);
    m[(0, 0)] = one;
    m[(0, 1)] = g01;
    m[(0, 2)] = g02;
    m[(0, 3)] = g03;
    m[(1, 2)] = g12;
    m[(1, 3)] = g13;
    m[(2, 3)] = g23;
    for a in 0..4 {
        for b in (a + 1)..4 {
            m[(b, a)] = m[(a, b)].conj();
        }
    }
    GramMatrix::new(m).expect("closed-form overlap table is Hermitian PSD")
}

/// Pauli expectations of a pure qubit state.
pub fn bloch_vector(state: &PureState) -> Result<BlochVector> {
    if state.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: state.dim(),
        });
    }
    let a = state.amplitudes()[0];
    let b = state.amplitudes()[1];
    let t = a.conj() * b;
    Ok(BlochVector {
        x: 2.0 * t.re,
        y: 2.0 * t.im,
        z: a.norm_sqr() - b.norm_sqr(),
    })
}

/// Coplanarity result for one triple of Bloch vectors.
#[derive(Debug, Clone, Serialize)]
pub struct TripleReport {
    pub indices: [usize; 3],
    pub abs_det: f64,
    pub coplanar: bool,
}

/// Great-circle test over all four triples of a four-state qubit
/// ensemble.
#[derive(Debug, Clone, Serialize)]
pub struct GreatCircleReport {
    pub triples: Vec<TripleReport>,
    pub all_four_coplanar: bool,
    pub tol: f64,
}

/// A triple of qubit states sits on a great circle exactly when the
/// determinant of its three Bloch vectors vanishes; a whole ensemble
/// fits a rebit exactly when all of them do.
pub fn great_circle_test(states: &[PureState], tol: f64) -> Result<GreatCircleReport> {
    if states.len() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: states.len(),
        });
    }
    let bloch: Vec<BlochVector> = states.iter().map(bloch_vector).collect::<Result<_>>()?;

    let triples = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .iter()
        .map(|&idx| {
            let m = Matrix3::from_rows(&[
                nalgebra::RowVector3::new(bloch[idx[0]].x, bloch[idx[0]].y, bloch[idx[0]].z),
                nalgebra::RowVector3::new(bloch[idx[1]].x, bloch[idx[1]].y, bloch[idx[1]].z),
                nalgebra::RowVector3::new(bloch[idx[2]].x, bloch[idx[2]].y, bloch[idx[2]].z),
            ]);
            let abs_det = m.determinant().abs();
            TripleReport {
                indices: idx,
                abs_det,
                coplanar: abs_det < tol,
            }
        })
        .collect();

    // rank of the stacked 4×3 Bloch matrix decides whether one plane
    // through the origin holds all four states
    let stacked = DMatrix::from_fn(4, 3, |r, c| match c {
        0 => bloch[r].x,
        1 => bloch[r].y,
        _ => bloch[r].z,
    });
    let singular = stacked.singular_values();
    let all_four_coplanar = singular[2] < tol;

    Ok(GreatCircleReport {
        triples,
        all_four_coplanar,
        tol,
    })
}

/// CSV export of Bloch coordinates, header `label,x,y,z`, full double
/// precision.
pub fn bloch_csv(labels: &[String], states: &[PureState]) -> Result<String> {
    if labels.len() != states.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            got: states.len(),
        });
    }
    let mut out = String::from("label,x,y,z\n");
    for (label, state) in labels.iter().zip(states) {
        let b = bloch_vector(state)?;
        out.push_str(&format!("{label},{},{},{}\n", b.x, b.y, b.z));
    }
    Ok(out)
}
