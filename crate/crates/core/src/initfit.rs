//! Label-replacement initial distributions.
//!
//! A target distribution is approximated by a product state prepared with a
//! single column of Ry gates, followed by a classical relabeling of the
//! measurement outcomes:
//!
//! 1. Sort the target probabilities in descending order.
//! 2. Let `u_i` be the mass of the `2^n / 2^i` largest entries (`u_0 = 1`).
//! 3. Qubit `i - 1` gets the angle whose `|0>` probability `cos^2(theta/2)`
//!    equals `r_i = u_i / u_{i-1}`. Sorting makes every `r_i` at least 1/2,
//!    so every angle lies in `[0, pi/2]`.
//! 4. Outcomes of the resulting product distribution are ranked and mapped
//!    onto target labels of equal rank, so that the j-th most likely
//!    outcome is reported as the j-th most likely target label.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::LabelPermutation;
use crate::pmf::{descending_order, Pmf};
use crate::qsim::StateVector;

/// How a split ratio `r` becomes an Ry angle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleFormula {
    /// `2 acos(sqrt(r))`: the qubit reads `|0>` with probability `r`.
    #[default]
    Sqrt,
    /// `2 acos(r)`, kept for comparison runs.
    Literal,
}

impl AngleFormula {
    pub fn angle(self, ratio: f64) -> f64 {
        match self {
            AngleFormula::Sqrt => 2.0 * ratio.sqrt().acos(),
            AngleFormula::Literal => 2.0 * ratio.acos(),
        }
    }
}

/// Intermediate quantities of the angle fit.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedMass {
    /// Target probabilities, largest first.
    pub sorted_probs: Vec<f64>,
    /// `u_0 ..= u_n`, with `u_0 = 1`.
    pub half_sums: Vec<f64>,
    /// `r_1 ..= r_n`.
    pub ratios: Vec<f64>,
}

impl SortedMass {
    pub fn of(target: &Pmf) -> Self {
        let n = target.n_qubits();
        let mut sorted_probs = target.probs().to_vec();
        sorted_probs.sort_by(|a, b| b.total_cmp(a));

        let mut half_sums = Vec::with_capacity(n + 1);
        half_sums.push(1.0);
        let mut ratios = Vec::with_capacity(n);
        for i in 1..=n {
            let u: f64 = sorted_probs[..target.len() >> i].iter().sum();
            let prev = half_sums[i - 1];
            let r = if prev > 0.0 {
                // the top half of a descending run holds at least half its mass
                (u / prev).clamp(0.5, 1.0)
            } else {
                1.0
            };
            half_sums.push(u);
            ratios.push(r);
        }
        Self {
            sorted_probs,
            half_sums,
            ratios,
        }
    }
}

/// Per-qubit Ry angles for `target`; entry `q` acts on qubit `q`.
pub fn fit_angles(target: &Pmf, formula: AngleFormula) -> Vec<f64> {
    SortedMass::of(target)
        .ratios
        .into_iter()
        .map(|r| formula.angle(r))
        .collect()
}

/// Distribution of a single Ry column applied to `|0...0>`.
pub fn product_pmf(angles: &[f64]) -> Result<Pmf> {
    let mut state = StateVector::new_zero_state(angles.len())?;
    for (qubit, &angle) in angles.iter().enumerate() {
        state.apply_ry(qubit, angle)?;
    }
    Ok(state.measure_probs())
}

/// Rank-aligning relabeling for the product state prepared by `angles`.
/// Generated probabilities closer than this rank as ties.
const RANK_RESOLUTION: f64 = 1e-12;

pub fn build_permutation(target: &Pmf, angles: &[f64]) -> Result<LabelPermutation> {
    if angles.len() != target.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: target.n_qubits(),
            actual: angles.len(),
        });
    }
    // rounding keeps rotation noise from splitting exact ties such as the
    // all-pi/2 product, which would otherwise scramble the index order
    let generated: Vec<f64> = product_pmf(angles)?
        .probs()
        .iter()
        .map(|p| (p / RANK_RESOLUTION).round())
        .collect();
    let outcome_rank = descending_order(&generated);
    let label_rank = descending_order(target.probs());
    let mut mapping = vec![0; target.len()];
    for (&outcome, &label) in outcome_rank.iter().zip(&label_rank) {
        mapping[outcome] = label;
    }
    LabelPermutation::new(mapping)
}

/// Ry angles plus the readout permutation that together produce the
/// initial distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitSpec {
    pub angles: Vec<f64>,
    pub permutation: LabelPermutation,
}

impl InitSpec {
    /// Relabeled product distribution this spec prepares.
    pub fn induced_pmf(&self) -> Result<Pmf> {
        self.permutation.relabel_pmf(&product_pmf(&self.angles)?)
    }

    pub fn angles_over_pi(&self) -> Vec<f64> {
        self.angles.iter().map(|a| a / PI).collect()
    }
}

pub fn make_init_spec(target: &Pmf, formula: AngleFormula) -> Result<InitSpec> {
    let angles = fit_angles(target, formula);
    let permutation = build_permutation(target, &angles)?;
    Ok(InitSpec {
        angles,
        permutation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::bit;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn pmf(v: &[f64]) -> Pmf {
        Pmf::new(v.to_vec()).unwrap()
    }

    /// Brute-force inverse of `cos^2(theta/2) = r` on a fine grid over [0, pi].
    fn grid_angle(r: f64) -> f64 {
        let steps = 2_000_000;
        (0..=steps)
            .map(|i| PI * i as f64 / steps as f64)
            .min_by(|a, b| {
                let fa = ((a / 2.0).cos().powi(2) - r).abs();
                let fb = ((b / 2.0).cos().powi(2) - r).abs();
                fa.total_cmp(&fb)
            })
            .unwrap()
    }

    fn random_pmf(weights: Vec<f64>) -> Pmf {
        let total: f64 = weights.iter().sum();
        Pmf::new(weights.into_iter().map(|w| w / total).collect()).unwrap()
    }

    #[test]
    fn uniform_and_point_mass() {
        let angles = fit_angles(&Pmf::uniform(3), AngleFormula::Sqrt);
        assert!(angles.iter().all(|a| (a - FRAC_PI_2).abs() < 1e-12));
        let angles = fit_angles(&Pmf::point_mass(3, 5).unwrap(), AngleFormula::Sqrt);
        assert_eq!(angles, vec![0.0; 3]);
    }

    #[test]
    fn two_qubit_hand_example() {
        let target = pmf(&[0.4, 0.3, 0.2, 0.1]);
        let mass = SortedMass::of(&target);
        assert!((mass.ratios[0] - 0.7).abs() < 1e-12);
        assert!((mass.ratios[1] - 4.0 / 7.0).abs() < 1e-12);
        let angles = fit_angles(&target, AngleFormula::Sqrt);
        assert!((angles[0] - 1.1593).abs() < 1e-4);
        assert!((angles[1] - 1.4274).abs() < 1e-4);
        assert!((angles[0] - grid_angle(0.7)).abs() < 1e-5);
        assert!((angles[1] - grid_angle(4.0 / 7.0)).abs() < 1e-5);
    }

    #[test]
    fn literal_formula_leaves_the_quarter_turn() {
        // r = 1/2 gives 2 acos(1/2) = 2 pi / 3
        let angles = fit_angles(&Pmf::uniform(2), AngleFormula::Literal);
        assert!(angles.iter().all(|a| (a - 2.0 * PI / 3.0).abs() < 1e-12));
    }

    #[test]
    fn permutation_hand_example() {
        // qubit 0 (low bit) carries r = 0.7 and qubit 1 carries r = 4/7, so
        // the product over outcomes 0..4 is [0.4, 0.1714, 0.3, 0.1286]
        let angles = fit_angles(&pmf(&[0.4, 0.3, 0.2, 0.1]), AngleFormula::Sqrt);
        let product = product_pmf(&angles).unwrap();
        let expected = [0.4, 0.3 * 4.0 / 7.0, 0.7 * 3.0 / 7.0, 0.3 * 3.0 / 7.0];
        for (p, e) in product.probs().iter().zip(expected) {
            assert!((p - e).abs() < 1e-12);
        }
        let target = pmf(&[0.1, 0.4, 0.3, 0.2]);
        let perm = build_permutation(&target, &angles).unwrap();
        assert_eq!(perm.mapping(), &[1, 3, 2, 0]);

        assert!(matches!(
            build_permutation(&target, &angles[..1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn uniform_target_gives_identity() {
        let spec = make_init_spec(&Pmf::uniform(3), AngleFormula::Sqrt).unwrap();
        assert!(spec.permutation.is_identity());
        for p in spec.induced_pmf().unwrap().probs() {
            assert!((p - 0.125).abs() < 1e-12);
        }
    }

    #[test]
    fn induced_pmf_hand_example() {
        let spec = make_init_spec(&pmf(&[0.4, 0.3, 0.2, 0.1]), AngleFormula::Sqrt).unwrap();
        let induced = spec.induced_pmf().unwrap();
        let expected = [0.4, 0.3, 1.2 / 7.0, 0.9 / 7.0];
        for (p, e) in induced.probs().iter().zip(expected) {
            assert!((p - e).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_mass_splits_do_not_divide_by_zero() {
        let target = pmf(&[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let mass = SortedMass::of(&target);
        assert_eq!(mass.ratios, vec![1.0, 1.0, 1.0]);

        // mass on two labels only: the second-level split is degenerate
        let target = pmf(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.6, 0.4, 0.0]);
        let spec = make_init_spec(&target, AngleFormula::Sqrt).unwrap();
        let induced = spec.induced_pmf().unwrap();
        for (p, e) in induced.probs().iter().zip(target.probs()) {
            assert!((p - e).abs() < 1e-12);
        }
    }

    #[test]
    fn init_spec_json_shape() {
        let spec = make_init_spec(&pmf(&[0.1, 0.4, 0.3, 0.2]), AngleFormula::Sqrt).unwrap();
        let value = serde_json::to_value(&spec).unwrap();
        assert_eq!(value["permutation"], serde_json::json!([1, 3, 2, 0]));
        assert_eq!(value["angles"].as_array().unwrap().len(), 2);
        let back: InitSpec = serde_json::from_value(value).unwrap();
        assert_eq!(back, spec);
    }

    fn weights(len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0..1.0f64, len).prop_filter("non-zero", |w| w.iter().sum::<f64>() > 1e-6)
    }

    proptest! {
        #[test]
        fn angles_stay_in_quarter_turn(n in 1usize..6, seed_weights in weights(32)) {
            let target = random_pmf(seed_weights[..1 << n].to_vec().iter().map(|w| w + 1e-9).collect());
            for a in fit_angles(&target, AngleFormula::Sqrt) {
                prop_assert!((0.0..=FRAC_PI_2).contains(&a));
            }
        }

        #[test]
        fn each_split_matches_its_half_sum(w in weights(8)) {
            // mass on outcomes whose first i qubits all read 0 equals u_i
            let target = random_pmf(w);
            let mass = SortedMass::of(&target);
            let product = product_pmf(&fit_angles(&target, AngleFormula::Sqrt)).unwrap();
            for i in 1..=3 {
                let prefix: f64 = product
                    .probs()
                    .iter()
                    .enumerate()
                    .filter(|(m, _)| (0..i).all(|q| !bit(*m, q)))
                    .map(|(_, p)| p)
                    .sum();
                prop_assert!((prefix - mass.half_sums[i]).abs() <= 1e-12);
            }
        }

        #[test]
        fn ranks_align(w in weights(8)) {
            let target = random_pmf(w);
            let induced = make_init_spec(&target, AngleFormula::Sqrt).unwrap().induced_pmf().unwrap();
            prop_assert_eq!(induced.argmax(), target.argmax());
            prop_assert_eq!(induced.rank_order(), target.rank_order());
        }

        #[test]
        fn two_qubit_products_are_reproduced(r0 in 0.5..1.0f64, r1 in 0.5..1.0f64,
                                             mapping in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
            let angles = [2.0 * r0.sqrt().acos(), 2.0 * r1.sqrt().acos()];
            let perm = LabelPermutation::new(mapping).unwrap();
            let target = perm.relabel_pmf(&product_pmf(&angles).unwrap()).unwrap();
            let induced = make_init_spec(&target, AngleFormula::Sqrt).unwrap().induced_pmf().unwrap();
            for (p, t) in induced.probs().iter().zip(target.probs()) {
                prop_assert!((p - t).abs() <= 1e-12);
            }
        }

        #[test]
        fn nested_products_are_reproduced(r in prop::collection::vec(0.5..1.0f64, 3),
                                          mapping in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle()) {
            // only products whose ranked halves coincide with bit prefixes
            // are reachable from their own sorted mass
            let mut r = r;
            r.sort_by(|a, b| b.total_cmp(a));
            let angles: Vec<f64> = r.iter().map(|x| 2.0 * x.sqrt().acos()).collect();
            let product = product_pmf(&angles).unwrap();
            let mass = SortedMass::of(&product);
            let nested = (1..=3).all(|i| {
                let prefix: f64 = product.probs().iter().enumerate()
                    .filter(|(m, _)| (0..i).all(|q| !bit(*m, q)))
                    .map(|(_, p)| p).sum();
                (prefix - mass.half_sums[i]).abs() <= 1e-13
            });
            prop_assume!(nested);
            let target = LabelPermutation::new(mapping).unwrap().relabel_pmf(&product).unwrap();
            let induced = make_init_spec(&target, AngleFormula::Sqrt).unwrap().induced_pmf().unwrap();
            for (p, t) in induced.probs().iter().zip(target.probs()) {
                prop_assert!((p - t).abs() <= 1e-12);
            }
        }
    }
}
