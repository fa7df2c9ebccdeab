//! The parameterized quantum generator: an initialization stage, a first Ry
//! column, then `k` repetitions of {CZ block, Ry column}, read out through a
//! classical label permutation.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::initfit::InitSpec;
use crate::pmf::Pmf;
use crate::qsim::{self, Gate, StateVector, MAX_QUBITS};

/// First Ry column of the three-qubit normal-distribution init circuit used
/// for the log-normal target.
pub const LOGNORMAL_NORMAL_INIT_FIRST: [f64; 3] = [0.3580, 1.0903, 1.5255];
/// Second Ry column of the same circuit.
pub const LOGNORMAL_NORMAL_INIT_SECOND: [f64; 3] = [1.3651, 1.4932, -0.9092];

/// Classical relabeling applied to measurement outcomes: outcome `m` is
/// reported as label `mapping[m]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LabelPermutation {
    mapping: Vec<usize>,
}

impl LabelPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &label in &mapping {
            match seen.get_mut(label) {
                Some(s) if !*s => *s = true,
                Some(_) => {
                    return Err(Error::InvalidPermutation(format!(
                        "label {label} appears twice"
                    )))
                }
                None => {
                    return Err(Error::InvalidPermutation(format!(
                        "label {label} outside 0..{}",
                        mapping.len()
                    )))
                }
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(len: usize) -> Self {
        Self {
            mapping: (0..len).collect(),
        }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    #[inline]
    pub fn apply(&self, outcome: usize) -> usize {
        self.mapping[outcome]
    }

    /// Label-to-outcome map.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (outcome, &label) in self.mapping.iter().enumerate() {
            inv[label] = outcome;
        }
        Self { mapping: inv }
    }

    /// `out[mapping[m]] = raw[m]`.
    pub fn relabel(&self, raw: &[f64]) -> Result<Vec<f64>> {
        if raw.len() != self.mapping.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mapping.len(),
                actual: raw.len(),
            });
        }
        let mut out = vec![0.0; raw.len()];
        for (outcome, &p) in raw.iter().enumerate() {
            out[self.mapping[outcome]] = p;
        }
        Ok(out)
    }

    pub fn relabel_pmf(&self, raw: &Pmf) -> Result<Pmf> {
        Ok(Pmf::from_vec_unchecked(self.relabel(raw.probs())?))
    }
}

impl TryFrom<Vec<usize>> for LabelPermutation {
    type Error = Error;

    fn try_from(mapping: Vec<usize>) -> Result<Self> {
        Self::new(mapping)
    }
}

impl From<LabelPermutation> for Vec<usize> {
    fn from(p: LabelPermutation) -> Self {
        p.mapping
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum InitMode {
    /// One Ry column with fitted angles; the spec's permutation becomes the
    /// circuit's readout relabeling.
    OurMethod { spec: InitSpec },
    /// Hadamard on every qubit.
    UniformH,
    /// Ry(pi/2) on every qubit.
    UniformRy,
    /// Ry column, CZ chain, Ry column.
    NormalFixed { first: Vec<f64>, second: Vec<f64> },
    /// No init gates; the init column lives in the first trainable layer.
    Folded,
}

impl InitMode {
    pub fn name(&self) -> &'static str {
        match self {
            InitMode::OurMethod { .. } => "our_method",
            InitMode::UniformH => "uniform_h",
            InitMode::UniformRy => "uniform_ry",
            InitMode::NormalFixed { .. } => "normal_fixed",
            InitMode::Folded => "folded",
        }
    }

    /// Normal-distribution init for the three-qubit log-normal benchmark.
    pub fn lognormal_normal() -> Self {
        InitMode::NormalFixed {
            first: LOGNORMAL_NORMAL_INIT_FIRST.to_vec(),
            second: LOGNORMAL_NORMAL_INIT_SECOND.to_vec(),
        }
    }

    /// Per-qubit angles of a single-Ry-column init, if it is one.
    pub fn ry_column(&self, n_qubits: usize) -> Option<Vec<f64>> {
        match self {
            InitMode::OurMethod { spec } => Some(spec.angles.clone()),
            InitMode::UniformRy => Some(vec![FRAC_PI_2; n_qubits]),
            _ => None,
        }
    }

    fn gates(&self, n_qubits: usize) -> Vec<Gate> {
        let ry_column = |angles: &[f64]| -> Vec<Gate> {
            angles
                .iter()
                .enumerate()
                .map(|(qubit, &angle)| Gate::Ry { qubit, angle })
                .collect()
        };
        match self {
            InitMode::OurMethod { spec } => ry_column(&spec.angles),
            InitMode::UniformH => (0..n_qubits).map(|qubit| Gate::H { qubit }).collect(),
            InitMode::UniformRy => ry_column(&vec![FRAC_PI_2; n_qubits]),
            InitMode::NormalFixed { first, second } => {
                let mut gates = ry_column(first);
                gates.extend(
                    normal_init_pairs(n_qubits)
                        .into_iter()
                        .map(|(a, b)| Gate::Cz { a, b }),
                );
                gates.extend(ry_column(second));
                gates
            }
            InitMode::Folded => Vec::new(),
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        match self {
            InitMode::OurMethod { spec } => {
                check_len(n_qubits, spec.angles.len())?;
                check_len(1 << n_qubits, spec.permutation.len())
            }
            InitMode::NormalFixed { first, second } => {
                check_len(n_qubits, first.len())?;
                check_len(n_qubits, second.len())
            }
            _ => Ok(()),
        }
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// CZ pairs of the trainable entangling block. Three qubits use all three
/// pairs; larger registers use the nearest-neighbour ring.
pub fn entangler_pairs(n_qubits: usize) -> Vec<(usize, usize)> {
    match n_qubits {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        n => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// CZ chain between the two columns of the normal-distribution init.
pub fn normal_init_pairs(n_qubits: usize) -> Vec<(usize, usize)> {
    (0..n_qubits.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircuitDoc")]
pub struct GeneratorCircuit {
    n_qubits: usize,
    k: usize,
    init: InitMode,
    params: Vec<f64>,
    permutation: LabelPermutation,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    n_qubits: usize,
    k: usize,
    init: InitMode,
    params: Vec<f64>,
    permutation: LabelPermutation,
}

impl TryFrom<CircuitDoc> for GeneratorCircuit {
    type Error = Error;

    fn try_from(doc: CircuitDoc) -> Result<Self> {
        let circuit = GeneratorCircuit::new(doc.n_qubits, doc.k, doc.init, doc.params)?;
        circuit.with_permutation(doc.permutation)
    }
}

impl GeneratorCircuit {
    /// Builds the ansatz. `params` holds `n_qubits * (k + 1)` angles, one Ry
    /// column per layer. The readout permutation is taken from an
    /// [`InitMode::OurMethod`] init and is the identity otherwise.
    pub fn new(n_qubits: usize, k: usize, init: InitMode, params: Vec<f64>) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::QubitCount(n_qubits));
        }
        check_len(n_qubits * (k + 1), params.len())?;
        if let Some(bad) = params.iter().find(|p| !p.is_finite()) {
            return Err(Error::NonFiniteAngle(*bad));
        }
        init.validate(n_qubits)?;
        let permutation = match &init {
            InitMode::OurMethod { spec } => spec.permutation.clone(),
            _ => LabelPermutation::identity(1 << n_qubits),
        };
        Ok(Self {
            n_qubits,
            k,
            init,
            params,
            permutation,
        })
    }

    pub fn with_permutation(mut self, permutation: LabelPermutation) -> Result<Self> {
        check_len(1 << self.n_qubits, permutation.len())?;
        self.permutation = permutation;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn init(&self) -> &InitMode {
        &self.init
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    pub fn n_params(&self) -> usize {
        self.params.len()
    }

    pub fn permutation(&self) -> &LabelPermutation {
        &self.permutation
    }

    /// The Ry column of layer `layer` (0 is the column right after init).
    pub fn param_layer(&self, layer: usize) -> &[f64] {
        &self.params[layer * self.n_qubits..(layer + 1) * self.n_qubits]
    }

    fn gates_for(&self, params: &[f64]) -> Vec<Gate> {
        let n = self.n_qubits;
        let mut gates = self.init.gates(n);
        let pairs = entangler_pairs(n);
        for (layer, column) in params.chunks(n).enumerate() {
            if layer > 0 {
                gates.extend(pairs.iter().map(|&(a, b)| Gate::Cz { a, b }));
            }
            gates.extend(
                column
                    .iter()
                    .enumerate()
                    .map(|(qubit, &angle)| Gate::Ry { qubit, angle }),
            );
        }
        gates
    }

    pub fn gates(&self) -> Vec<Gate> {
        self.gates_for(&self.params)
    }

    pub fn statevector(&self) -> Result<StateVector> {
        self.statevector_with(&self.params)
    }

    /// Statevector of the same ansatz with `params` substituted.
    pub fn statevector_with(&self, params: &[f64]) -> Result<StateVector> {
        check_len(self.params.len(), params.len())?;
        let mut state = StateVector::new_zero_state(self.n_qubits)?;
        state.apply_all(&self.gates_for(params))?;
        Ok(state)
    }

    /// Relabeled output distribution.
    pub fn pmf(&self) -> Result<Pmf> {
        self.pmf_with(&self.params)
    }

    pub fn pmf_with(&self, params: &[f64]) -> Result<Pmf> {
        let raw = self.statevector_with(params)?.measure_probs();
        self.permutation.relabel_pmf(&raw)
    }

    /// `shots` relabeled measurement outcomes, seeded.
    pub fn sample(&self, shots: usize, rng_seed: u64) -> Result<Vec<usize>> {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        self.sample_with_rng(shots, &mut rng)
    }

    pub fn sample_with_rng<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> Result<Vec<usize>> {
        let raw = self.statevector()?.measure_probs();
        let outcomes = qsim::sample_outcomes(raw.probs(), shots, rng)?;
        Ok(outcomes
            .into_iter()
            .map(|m| self.permutation.apply(m))
            .collect())
    }

    /// Merges a single-Ry-column init into the first trainable layer,
    /// using `Ry(a) Ry(b) = Ry(a + b)`.
    pub fn fold_init(&self) -> Result<Self> {
        let angles = self
            .init
            .ry_column(self.n_qubits)
            .ok_or(Error::NotFoldable(self.init.name()))?;
        let mut folded = self.clone();
        for (p, a) in folded.params[..self.n_qubits].iter_mut().zip(angles) {
            *p += a;
        }
        folded.init = InitMode::Folded;
        Ok(folded)
    }
}

/// Free-function form of [`GeneratorCircuit::new`].
pub fn build_circuit(n_qubits: usize, k: usize, init: InitMode, params: Vec<f64>) -> Result<GeneratorCircuit> {
    GeneratorCircuit::new(n_qubits, k, init, params)
}
