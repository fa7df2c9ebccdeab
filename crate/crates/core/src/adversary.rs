//! Classical side of the GAN: a 1-50-20-1 perceptron discriminator with
//! hand-written backpropagation, the non-saturating loss pair, and AMSGRAD.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pmf::Pmf;

pub const HIDDEN1: usize = 50;
pub const HIDDEN2: usize = 20;

const W1: usize = 0;
const B1: usize = W1 + HIDDEN1;
const W2: usize = B1 + HIDDEN1;
const B2: usize = W2 + HIDDEN1 * HIDDEN2;
const W3: usize = B2 + HIDDEN2;
const B3: usize = W3 + HIDDEN2;

/// `(1*50 + 50) + (50*20 + 20) + (20*1 + 1)`.
pub const PARAM_COUNT: usize = B3 + 1;

/// Floor applied to `D(x)` inside logarithms of the generator loss.
pub const LOG_FLOOR: f64 = 1e-12;

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiscriminatorConfig {
    /// Negative-side slope of the hidden leaky rectifiers.
    pub leaky_slope: f64,
    /// Factor applied to the label before it enters the network.
    pub input_scale: f64,
}

impl Default for DiscriminatorConfig {
    fn default() -> Self {
        Self {
            leaky_slope: 0.2,
            input_scale: 1.0,
        }
    }
}

/// Parameters are stored flat: `w1 (50) | b1 (50) | w2 (20x50, row-major) |
/// b2 (20) | w3 (20) | b3 (1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discriminator {
    params: Vec<f64>,
    config: DiscriminatorConfig,
}

struct Activations {
    x: f64,
    pre1: [f64; HIDDEN1],
    h1: [f64; HIDDEN1],
    pre2: [f64; HIDDEN2],
    h2: [f64; HIDDEN2],
    logit: f64,
}

impl Discriminator {
    pub fn zeros(config: DiscriminatorConfig) -> Self {
        Self {
            params: vec![0.0; PARAM_COUNT],
            config,
        }
    }

    pub fn from_params(params: Vec<f64>, config: DiscriminatorConfig) -> Result<Self> {
        if params.len() != PARAM_COUNT {
            return Err(Error::DimensionMismatch {
                expected: PARAM_COUNT,
                actual: params.len(),
            });
        }
        Ok(Self { params, config })
    }

    /// Weights and biases uniform in `+-1/sqrt(fan_in)` of their layer.
    pub fn random<R: Rng + ?Sized>(config: DiscriminatorConfig, rng: &mut R) -> Self {
        let mut params = vec![0.0; PARAM_COUNT];
        let layers = [(W1, W2, 1usize), (W2, W3, HIDDEN1), (W3, PARAM_COUNT, HIDDEN2)];
        for (start, end, fan_in) in layers {
            let bound = 1.0 / (fan_in as f64).sqrt();
            for p in &mut params[start..end] {
                *p = rng.random_range(-bound..=bound);
            }
        }
        Self { params, config }
    }

    pub fn seeded(config: DiscriminatorConfig, seed: u64) -> Self {
        Self::random(config, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    pub fn config(&self) -> DiscriminatorConfig {
        self.config
    }

    fn leaky(&self, z: f64) -> f64 {
        if z >= 0.0 {
            z
        } else {
            self.config.leaky_slope * z
        }
    }

    fn leaky_slope_at(&self, z: f64) -> f64 {
        if z >= 0.0 {
            1.0
        } else {
            self.config.leaky_slope
        }
    }

    fn activations(&self, label: f64) -> Activations {
        let p = &self.params;
        let x = label * self.config.input_scale;
        let mut pre1 = [0.0; HIDDEN1];
        let mut h1 = [0.0; HIDDEN1];
        for i in 0..HIDDEN1 {
            pre1[i] = p[W1 + i] * x + p[B1 + i];
            h1[i] = self.leaky(pre1[i]);
        }
        let mut pre2 = [0.0; HIDDEN2];
        let mut h2 = [0.0; HIDDEN2];
        for j in 0..HIDDEN2 {
            let row = &p[W2 + j * HIDDEN1..W2 + (j + 1) * HIDDEN1];
            pre2[j] = row.iter().zip(&h1).map(|(w, h)| w * h).sum::<f64>() + p[B2 + j];
            h2[j] = self.leaky(pre2[j]);
        }
        let logit = p[W3..W3 + HIDDEN2]
            .iter()
            .zip(&h2)
            .map(|(w, h)| w * h)
            .sum::<f64>()
            + p[B3];
        Activations {
            x,
            pre1,
            h1,
            pre2,
            h2,
            logit,
        }
    }

    /// Adds `upstream * d(logit)/d(params)` into `grad` and returns
    /// `upstream * d(logit)/d(label)`.
    fn backprop(&self, act: &Activations, upstream: f64, grad: &mut [f64]) -> f64 {
        let p = &self.params;
        grad[B3] += upstream;
        let mut d_pre2 = [0.0; HIDDEN2];
        for j in 0..HIDDEN2 {
            grad[W3 + j] += upstream * act.h2[j];
            d_pre2[j] = upstream * p[W3 + j] * self.leaky_slope_at(act.pre2[j]);
            grad[B2 + j] += d_pre2[j];
        }
        let mut d_h1 = [0.0; HIDDEN1];
        for (j, &d) in d_pre2.iter().enumerate() {
            let row = W2 + j * HIDDEN1;
            for i in 0..HIDDEN1 {
                grad[row + i] += d * act.h1[i];
                d_h1[i] += d * p[row + i];
            }
        }
        let mut d_x = 0.0;
        for i in 0..HIDDEN1 {
            let d_pre1 = d_h1[i] * self.leaky_slope_at(act.pre1[i]);
            grad[B1 + i] += d_pre1;
            grad[W1 + i] += d_pre1 * act.x;
            d_x += d_pre1 * p[W1 + i];
        }
        d_x * self.config.input_scale
    }

    /// Pre-sigmoid output.
    pub fn logit(&self, label: f64) -> Result<f64> {
        if !label.is_finite() {
            return Err(Error::InvalidInput(format!("discriminator input {label}")));
        }
        Ok(self.activations(label).logit)
    }

    /// Probability that `label` came from the data.
    pub fn forward(&self, label: f64) -> Result<f64> {
        self.logit(label).map(sigmoid)
    }

    /// Hidden-layer pre-activations at `label`, first layer then second.
    pub fn hidden_preactivations(&self, label: f64) -> Result<Vec<f64>> {
        if !label.is_finite() {
            return Err(Error::InvalidInput(format!("discriminator input {label}")));
        }
        let act = self.activations(label);
        Ok(act.pre1.iter().chain(&act.pre2).copied().collect())
    }

    /// `dD/dx` at `label`.
    pub fn input_gradient(&self, label: f64) -> Result<f64> {
        if !label.is_finite() {
            return Err(Error::InvalidInput(format!("discriminator input {label}")));
        }
        let act = self.activations(label);
        let d = sigmoid(act.logit);
        let mut scratch = vec![0.0; PARAM_COUNT];
        Ok(self.backprop(&act, d * (1.0 - d), &mut scratch))
    }

    /// `log max(D(m), LOG_FLOOR)` for every label `m < len`.
    pub fn log_d_table(&self, len: usize) -> Vec<f64> {
        (0..len)
            .map(|m| sigmoid(self.activations(m as f64).logit).max(LOG_FLOOR).ln())
            .collect()
    }

    /// Non-saturating generator loss `-sum_m p(m) log D(m)`.
    pub fn gen_loss_from_pmf(&self, pmf: &Pmf) -> f64 {
        -self
            .log_d_table(pmf.len())
            .iter()
            .zip(pmf.probs())
            .map(|(l, p)| p * l)
            .sum::<f64>()
    }

    /// The discriminator's minimized loss `-L_D`, with label histograms
    /// `real[m]`, `fake[m]` given as batch weights.
    pub fn disc_loss_weighted(&self, real: &[f64], fake: &[f64]) -> f64 {
        let mut loss = 0.0;
        for (m, &w) in real.iter().enumerate().filter(|(_, w)| **w != 0.0) {
            loss += w * softplus(-self.activations(m as f64).logit);
        }
        for (m, &w) in fake.iter().enumerate().filter(|(_, w)| **w != 0.0) {
            loss += w * softplus(self.activations(m as f64).logit);
        }
        loss
    }

    /// Gradient of [`Self::disc_loss_weighted`] over all parameters.
    pub fn disc_grad_weighted(&self, real: &[f64], fake: &[f64]) -> Vec<f64> {
        let mut grad = vec![0.0; PARAM_COUNT];
        for (m, &w) in real.iter().enumerate().filter(|(_, w)| **w != 0.0) {
            let act = self.activations(m as f64);
            // d softplus(-z)/dz = D - 1
            self.backprop(&act, w * (sigmoid(act.logit) - 1.0), &mut grad);
        }
        for (m, &w) in fake.iter().enumerate().filter(|(_, w)| **w != 0.0) {
            let act = self.activations(m as f64);
            self.backprop(&act, w * sigmoid(act.logit), &mut grad);
        }
        grad
    }

    /// Discriminator objective `L_D = E_real[log D] + E_fake[log(1 - D)]`
    /// over label batches.
    pub fn disc_objective(&self, real_batch: &[usize], fake_batch: &[usize]) -> Result<f64> {
        let (real, fake) = batch_weights(real_batch, fake_batch)?;
        Ok(-self.disc_loss_weighted(&real, &fake))
    }

    /// Gradient of `-L_D` over label batches (batch means).
    pub fn disc_grad(&self, real_batch: &[usize], fake_batch: &[usize]) -> Result<Vec<f64>> {
        let (real, fake) = batch_weights(real_batch, fake_batch)?;
        Ok(self.disc_grad_weighted(&real, &fake))
    }
}

/// Histogram weights of two label batches over a common label range.
fn batch_weights(real: &[usize], fake: &[usize]) -> Result<(Vec<f64>, Vec<f64>)> {
    if real.is_empty() || fake.is_empty() {
        return Err(Error::InvalidInput("discriminator batches must be non-empty".into()));
    }
    let len = real.iter().chain(fake).max().map_or(0, |m| m + 1);
    let hist = |batch: &[usize]| {
        let mut w = vec![0.0; len];
        let unit = 1.0 / batch.len() as f64;
        for &m in batch {
            w[m] += unit;
        }
        w
    };
    Ok((hist(real), hist(fake)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AmsgradConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    /// Scale the step by `sqrt(1 - beta2^t) / (1 - beta1^t)`.
    pub bias_correction: bool,
}

impl Default for AmsgradConfig {
    fn default() -> Self {
        Self {
            lr: 1e-4,
            beta1: 0.7,
            beta2: 0.99,
            eps: 1e-8,
            bias_correction: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmsgradState {
    pub config: AmsgradConfig,
    pub m: Vec<f64>,
    pub v: Vec<f64>,
    pub v_hat: Vec<f64>,
    pub step: u64,
}

impl AmsgradState {
    pub fn new(dim: usize, config: AmsgradConfig) -> Self {
        Self {
            config,
            m: vec![0.0; dim],
            v: vec![0.0; dim],
            v_hat: vec![0.0; dim],
            step: 0,
        }
    }

    /// One descent step on `params` along `grads`.
    pub fn step(&mut self, params: &mut [f64], grads: &[f64]) -> Result<()> {
        for len in [params.len(), grads.len()] {
            if len != self.m.len() {
                return Err(Error::DimensionMismatch {
                    expected: self.m.len(),
                    actual: len,
                });
            }
        }
        let AmsgradConfig {
            lr,
            beta1,
            beta2,
            eps,
            bias_correction,
        } = self.config;
        self.step += 1;
        let lr_t = if bias_correction {
            let t = self.step as i32;
            lr * (1.0 - beta2.powi(t)).sqrt() / (1.0 - beta1.powi(t))
        } else {
            lr
        };
        for i in 0..params.len() {
            let g = grads[i];
            self.m[i] = beta1 * self.m[i] + (1.0 - beta1) * g;
            self.v[i] = beta2 * self.v[i] + (1.0 - beta2) * g * g;
            self.v_hat[i] = self.v_hat[i].max(self.v[i]);
            params[i] -= lr_t * self.m[i] / (self.v_hat[i].sqrt() + eps);
        }
        Ok(())
    }
}
