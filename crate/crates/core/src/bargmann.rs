//! Bargmann invariants — traces of ordered products of density
//! operators — and the set-imaginarity witness built on them.
//!
//! Invariants are unchanged by a shared unitary rotation of the ensemble
//! and, for pure states, by per-state phases, so a non-real value rules
//! out every basis in which the ensemble could be written with real
//! amplitudes.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::quantum::{inner_product, DensityMatrix, PureState};

/// A cyclic index class, stored as its lexicographically smallest
/// rotation. Reversed tuples are distinct classes; they carry
/// conjugate values, so collapsing them would erase the sign of the
/// imaginary part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InvariantIndex {
    indices: Vec<usize>,
}

impl InvariantIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::OrderTooSmall { min: 1, got: 0 });
        }
        Ok(Self {
            indices: canonical_rotation(&indices),
        })
    }

    pub fn order(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn reversed(&self) -> InvariantIndex {
        let mut rev = self.indices.clone();
        rev.reverse();
        InvariantIndex {
            indices: canonical_rotation(&rev),
        }
    }
}

impl std::fmt::Display for InvariantIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

fn canonical_rotation(indices: &[usize]) -> Vec<usize> {
    let n = indices.len();
    let mut best: Vec<usize> = indices.to_vec();
    for shift in 1..n {
        let rotated: Vec<usize> = (0..n).map(|k| indices[(k + shift) % n]).collect();
        if rotated < best {
            best = rotated;
        }
    }
    best
}

/// An invariant together with the index class it belongs to.
#[derive(Debug, Clone, Serialize)]
pub struct BargmannInvariant {
    pub index: InvariantIndex,
    #[serde(serialize_with = "crate::serialize_complex")]
    pub value: Complex64,
}

/// Trace of the ordered product of the addressed states. First- and
/// second-order values are always real and nonnegative; imaginarity can
/// only show up at order three and beyond.
pub fn bargmann_value(states: &[DensityMatrix], index: &InvariantIndex) -> Result<BargmannInvariant> {
    check_labels(states.len(), index)?;
    let dim = states[0].dim();
    for s in states {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: s.dim(),
            });
        }
    }
    let seq = index.indices();
    let mut product = states[seq[0]].entries().clone();
    for &label in &seq[1..] {
        product *= states[label].entries();
    }
    Ok(BargmannInvariant {
        index: index.clone(),
        value: crate::quantum::trace(&product),
    })
}

/// Same invariant via the cyclic product of overlaps
/// ⟨ψ_{i₁}|ψ_{i₂}⟩⟨ψ_{i₂}|ψ_{i₃}⟩⋯⟨ψ_{i_N}|ψ_{i₁}⟩, valid for pure
/// ensembles. Kept as an independent route so the two evaluations can
/// cross-check each other.
pub fn bargmann_value_pure(states: &[PureState], index: &InvariantIndex) -> Result<BargmannInvariant> {
    check_labels(states.len(), index)?;
    let seq = index.indices();
    let mut value = Complex64::new(1.0, 0.0);
    for k in 0..seq.len() {
        let a = seq[k];
        let b = seq[(k + 1) % seq.len()];
        value *= inner_product(&states[a], &states[b])?;
    }
    Ok(BargmannInvariant {
        index: index.clone(),
        value,
    })
}

fn check_labels(count: usize, index: &InvariantIndex) -> Result<()> {
    for &label in index.indices() {
        if label >= count {
            return Err(Error::LabelOutOfRange { label, count });
        }
    }
    Ok(())
}

/// All invariants of the given order, one entry per canonical cyclic
/// class, in ascending canonical order. With `allow_repeats = false`
/// only tuples of distinct labels are enumerated.
pub fn enumerate_invariants(
    states: &[DensityMatrix],
    order: usize,
    allow_repeats: bool,
) -> Result<Vec<BargmannInvariant>> {
    enumerate_impl(states, order, allow_repeats, cfg!(feature = "parallel"))
}

pub(crate) fn enumerate_impl(
    states: &[DensityMatrix],
    order: usize,
    allow_repeats: bool,
    parallel: bool,
) -> Result<Vec<BargmannInvariant>> {
    if order < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: order });
    }
    if states.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let classes = canonical_classes(states.len(), order, allow_repeats);
    let values = exec::map_indexed(parallel, classes.len(), |k| {
        bargmann_value(states, &classes[k])
    });
    values.into_iter().collect()
}

/// Canonical representatives of all cyclic classes of `order`-tuples
/// over `0..n`, in lexicographic order.
fn canonical_classes(n: usize, order: usize, allow_repeats: bool) -> Vec<InvariantIndex> {
    let mut out = Vec::new();
    let mut tuple = vec![0usize; order];
    loop {
        let distinct_ok = allow_repeats || all_distinct(&tuple);
        if distinct_ok && canonical_rotation(&tuple) == tuple {
            out.push(InvariantIndex {
                indices: tuple.clone(),
            });
        }
        // odometer
        let mut pos = order;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

fn all_distinct(tuple: &[usize]) -> bool {
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] == tuple[j] {
                return false;
            }
        }
    }
    true
}

/// Outcome of scanning an ensemble for a non-real invariant.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub witnessed: bool,
    pub index: Option<InvariantIndex>,
    #[serde(serialize_with = "crate::serialize_opt_complex")]
    pub value: Option<Complex64>,
    pub max_order: usize,
    pub tol: f64,
}

/// Scans invariants of order 3 up to `max_order` (repeats included) in
/// canonical order and reports the first with |Im| above `tol`. A hit
/// certifies that no basis renders every state in the ensemble real.
pub fn imaginarity_witness(
    states: &[DensityMatrix],
    max_order: usize,
    tol: f64,
) -> Result<WitnessReport> {
    if max_order < 3 {
        return Err(Error::OrderTooSmall {
            min: 3,
            got: max_order,
        });
    }
    for order in 3..=max_order {
        for inv in enumerate_invariants(states, order, true)? {
            if inv.value.im.abs() > tol {
                return Ok(WitnessReport {
                    witnessed: true,
                    index: Some(inv.index),
                    value: Some(inv.value),
                    max_order,
                    tol,
                });
            }
        }
    }
    Ok(WitnessReport {
        witnessed: false,
        index: None,
        value: None,
        max_order,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::PureState;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// (|1⟩+|2⟩)/√2, (|0⟩−|2⟩)/√2, (|0⟩+|1⟩)/√2 — a real trio whose
    /// pairwise overlaps are {−1/2, 1/2, 1/2}.
    fn real_trio() -> Vec<PureState> {
        let r = 1.0 / 2f64.sqrt();
        vec![
            PureState::new(vec![c(0.0, 0.0), c(r, 0.0), c(r, 0.0)]).unwrap(),
            PureState::new(vec![c(r, 0.0), c(0.0, 0.0), c(-r, 0.0)]).unwrap(),
            PureState::new(vec![c(r, 0.0), c(r, 0.0), c(0.0, 0.0)]).unwrap(),
        ]
    }

    #[test]
    fn canonicalization_picks_smallest_rotation() {
        let i = InvariantIndex::new(vec![2, 0, 1]).unwrap();
        assert_eq!(i.indices(), &[0, 1, 2]);
        let j = InvariantIndex::new(vec![1, 3, 2]).unwrap();
        assert_eq!(j.indices(), &[1, 3, 2]);
        assert_eq!(j.reversed().indices(), &[1, 2, 3]);
        assert!(InvariantIndex::new(vec![]).is_err());
    }

    #[test]
    fn single_projector_invariant_is_one() {
        let states: Vec<DensityMatrix> = real_trio().iter().map(|s| s.to_density()).collect();
        let idx = InvariantIndex::new(vec![1]).unwrap();
        let b = bargmann_value(&states, &idx).unwrap();
        assert_abs_diff_eq!(b.value.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.value.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn trio_third_order_value() {
        // product of overlaps −1/2 · 1/2 · 1/2
        let pure = real_trio();
        let states: Vec<DensityMatrix> = pure.iter().map(|s| s.to_density()).collect();
        let idx = InvariantIndex::new(vec![0, 1, 2]).unwrap();
        let via_trace = bargmann_value(&states, &idx).unwrap().value;
        let via_overlaps = bargmann_value_pure(&pure, &idx).unwrap().value;
        assert_abs_diff_eq!(via_trace.re, -0.125, epsilon = 1e-12);
        assert_abs_diff_eq!(via_trace.im, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!((via_trace - via_overlaps).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn label_out_of_range_is_rejected() {
        let states: Vec<DensityMatrix> = real_trio().iter().map(|s| s.to_density()).collect();
        let idx = InvariantIndex::new(vec![0, 3]).unwrap();
        assert!(matches!(
            bargmann_value(&states, &idx),
            Err(Error::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn distinct_class_count_matches_combinatorics() {
        // 4·3·2 ordered triples / cyclic factor 3 = 8
        assert_eq!(canonical_classes(4, 3, false).len(), 8);
        // order 1: one class per label
        assert_eq!(canonical_classes(4, 1, true).len(), 4);
    }

    #[test]
    fn first_order_enumeration_gives_unit_traces() {
        let states: Vec<DensityMatrix> = real_trio().iter().map(|s| s.to_density()).collect();
        let invs = enumerate_invariants(&states, 1, true).unwrap();
        assert_eq!(invs.len(), 3);
        for inv in invs {
            assert_abs_diff_eq!(inv.value.re, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn enumeration_rejects_order_zero() {
        let states: Vec<DensityMatrix> = real_trio().iter().map(|s| s.to_density()).collect();
        assert!(matches!(
            enumerate_invariants(&states, 0, true),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn real_ensemble_is_not_witnessed() {
        let states: Vec<DensityMatrix> = real_trio().iter().map(|s| s.to_density()).collect();
        let report = imaginarity_witness(&states, 4, 1e-8).unwrap();
        assert!(!report.witnessed);
        assert!(report.index.is_none());
    }

    #[test]
    fn low_order_values_are_real_nonnegative() {
        let states: Vec<DensityMatrix> = real_trio().iter().map(|s| s.to_density()).collect();
        for order in 1..=2 {
            for inv in enumerate_invariants(&states, order, true).unwrap() {
                assert!(inv.value.im.abs() < 1e-12);
                assert!(inv.value.re > -1e-12);
            }
        }
    }

    #[test]
    fn parallel_and_sequential_enumeration_agree() {
        let states: Vec<DensityMatrix> = real_trio().iter().map(|s| s.to_density()).collect();
        let a = enumerate_impl(&states, 3, true, true).unwrap();
        let b = enumerate_impl(&states, 3, true, false).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.index, y.index);
            assert_eq!(x.value, y.value);
        }
    }
}
