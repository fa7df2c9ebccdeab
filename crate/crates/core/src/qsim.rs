//! Dense pure-state simulator for small registers built from Ry, CZ and H.
//!
//! Bit order: qubit `q` is bit `q` of the basis index, so qubit 0 is the
//! least significant bit. Every other module reads and writes basis indices
//! through [`bit`] and [`basis_index`].

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pmf::Pmf;

pub const MAX_QUBITS: usize = 12;

/// Value of `qubit` in basis state `index`.
#[inline]
pub fn bit(index: usize, qubit: usize) -> bool {
    (index >> qubit) & 1 == 1
}

/// Basis index of the computational state with `bits[q]` on qubit `q`.
pub fn basis_index(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (q, &b)| acc | ((b as usize) << q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum Gate {
    Ry { qubit: usize, angle: f64 },
    Cz { a: usize, b: usize },
    H { qubit: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn new_zero_state(n_qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::QubitCount(n_qubits));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitIndex {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Applies the real matrix `m` to every amplitude pair that differs only
    /// in `qubit`.
    fn apply_real_2x2(&mut self, qubit: usize, m: [[f64; 2]; 2]) {
        let stride = 1usize << qubit;
        for base in 0..self.amplitudes.len() {
            if bit(base, qubit) {
                continue;
            }
            let (i0, i1) = (base, base | stride);
            let (a0, a1) = (self.amplitudes[i0], self.amplitudes[i1]);
            self.amplitudes[i0] = a0 * m[0][0] + a1 * m[0][1];
            self.amplitudes[i1] = a0 * m[1][0] + a1 * m[1][1];
        }
    }

    pub fn apply_ry(&mut self, qubit: usize, angle: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        if !angle.is_finite() {
            return Err(Error::NonFiniteAngle(angle));
        }
        let (s, c) = (angle / 2.0).sin_cos();
        self.apply_real_2x2(qubit, [[c, -s], [s, c]]);
        Ok(())
    }

    pub fn apply_h(&mut self, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        self.apply_real_2x2(qubit, [[h, h], [h, -h]]);
        Ok(())
    }

    /// Negates every amplitude whose basis state has both qubits set.
    pub fn apply_cz(&mut self, qubit_a: usize, qubit_b: usize) -> Result<()> {
        self.check_qubit(qubit_a)?;
        self.check_qubit(qubit_b)?;
        if qubit_a == qubit_b {
            return Err(Error::SameQubit(qubit_a));
        }
        for (index, amp) in self.amplitudes.iter_mut().enumerate() {
            if bit(index, qubit_a) && bit(index, qubit_b) {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        match *gate {
            Gate::Ry { qubit, angle } => self.apply_ry(qubit, angle),
            Gate::Cz { a, b } => self.apply_cz(a, b),
            Gate::H { qubit } => self.apply_h(qubit),
        }
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    /// Born-rule distribution over basis indices.
    pub fn measure_probs(&self) -> Pmf {
        Pmf::from_vec_unchecked(self.amplitudes.iter().map(|a| a.norm_sqr()).collect())
    }

    /// Histogram of `shots` computational-basis measurements, seeded.
    pub fn sample(&self, shots: u64, rng_seed: u64) -> Result<Vec<u64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        sample_counts(self.measure_probs().probs(), shots, &mut rng)
    }
}

/// Histogram of `shots` i.i.d. draws from `probs`.
///
/// Drawn as a multinomial through successive conditional binomials, which has
/// exactly the law of the counts of independent draws at O(len) cost.
pub fn sample_counts<R: Rng + ?Sized>(probs: &[f64], shots: u64, rng: &mut R) -> Result<Vec<u64>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = shots;
    let mut remaining_mass = 1.0f64;
    let last = probs.len() - 1;
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i == last {
            counts[i] = remaining;
            break;
        }
        let cond = if remaining_mass > 0.0 {
            (p / remaining_mass).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let drawn = Binomial::new(remaining, cond)
            .map_err(|e| Error::InvalidInput(e.to_string()))?
            .sample(rng);
        counts[i] = drawn;
        remaining -= drawn;
        remaining_mass -= p;
    }
    Ok(counts)
}

/// `shots` i.i.d. outcome indices drawn from `probs`.
pub fn sample_outcomes<R: Rng + ?Sized>(probs: &[f64], shots: usize, rng: &mut R) -> Result<Vec<usize>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let dist = WeightedIndex::new(probs).map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok((0..shots).map(|_| dist.sample(rng)).collect())
}
