//! One-hidden-layer tanh network trained by full-batch gradient descent on
//! mean squared error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ridge::active_features;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MlpConfig {
    pub hidden: usize,
    pub learning_rate: f64,
    pub epochs: usize,
}

impl Default for MlpConfig {
    fn default() -> Self {
        Self {
            hidden: 64,
            learning_rate: 0.05,
            epochs: 2000,
        }
    }
}

/// Parameters are stored flat in the order `w1, b1, w2, b2`; `w1` is
/// feature-major (`w1[f * hidden + j]` connects input `f` to unit `j`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    pub input_width: usize,
    pub hidden: usize,
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

impl Mlp {
    /// Glorot-uniform weights and zero biases, drawn from `seed`.
    pub fn init(input_width: usize, hidden: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a1 = (6.0 / (input_width + hidden) as f64).sqrt();
        let a2 = (6.0 / (hidden + 1) as f64).sqrt();
        let w1 = (0..input_width * hidden).map(|_| rng.random_range(-a1..a1)).collect();
        let w2 = (0..hidden).map(|_| rng.random_range(-a2..a2)).collect();
        Self {
            input_width,
            hidden,
            w1,
            b1: vec![0.0; hidden],
            w2,
            b2: 0.0,
        }
    }

    fn hidden_activations(&self, sample: &[usize], out: &mut [f64]) {
        out.copy_from_slice(&self.b1);
        for f in active_features(sample) {
            let row = &self.w1[f * self.hidden..(f + 1) * self.hidden];
            for (o, w) in out.iter_mut().zip(row) {
                *o += w;
            }
        }
        for o in out.iter_mut() {
            *o = o.tanh();
        }
    }

    pub fn predict(&self, sample: &[usize]) -> f64 {
        let mut h = vec![0.0; self.hidden];
        self.hidden_activations(sample, &mut h);
        self.b2 + h.iter().zip(&self.w2).map(|(a, b)| a * b).sum::<f64>()
    }

    /// Mean squared error over the samples.
    pub fn loss(&self, samples: &[&[usize]], targets: &[f64]) -> f64 {
        let total: f64 = samples
            .iter()
            .zip(targets)
            .map(|(s, y)| {
                let r = self.predict(s) - y;
                r * r
            })
            .sum();
        total / samples.len() as f64
    }

    pub fn parameter_count(&self) -> usize {
        self.w1.len() + self.b1.len() + self.w2.len() + 1
    }

    pub fn parameter(&self, i: usize) -> f64 {
        let (n1, nb1, n2) = (self.w1.len(), self.b1.len(), self.w2.len());
        match i {
            _ if i < n1 => self.w1[i],
            _ if i < n1 + nb1 => self.b1[i - n1],
            _ if i < n1 + nb1 + n2 => self.w2[i - n1 - nb1],
            _ => self.b2,
        }
    }

    pub fn set_parameter(&mut self, i: usize, value: f64) {
        let (n1, nb1, n2) = (self.w1.len(), self.b1.len(), self.w2.len());
        match i {
            _ if i < n1 => self.w1[i] = value,
            _ if i < n1 + nb1 => self.b1[i - n1] = value,
            _ if i < n1 + nb1 + n2 => self.w2[i - n1 - nb1] = value,
            _ => self.b2 = value,
        }
    }

    /// Gradient of [`Mlp::loss`], flattened in parameter order.
    pub fn gradient(&self, samples: &[&[usize]], targets: &[f64]) -> Vec<f64> {
        let mut grad = vec![0.0; self.parameter_count()];
        let mut h = vec![0.0; self.hidden];
        self.accumulate_gradient(samples, targets, &mut grad, &mut h);
        grad
    }

    fn accumulate_gradient(&self, samples: &[&[usize]], targets: &[f64], grad: &mut [f64], h: &mut [f64]) {
        let hidden = self.hidden;
        let (n1, nb1) = (self.w1.len(), self.b1.len());
        let scale = 2.0 / samples.len() as f64;
        grad.fill(0.0);
        let (g_w1, rest) = grad.split_at_mut(n1);
        let (g_b1, rest) = rest.split_at_mut(nb1);
        let (g_w2, g_b2) = rest.split_at_mut(hidden);

        for (sample, &y) in samples.iter().zip(targets) {
            self.hidden_activations(sample, h);
            let out = self.b2 + h.iter().zip(&self.w2).map(|(a, b)| a * b).sum::<f64>();
            let g_out = scale * (out - y);
            g_b2[0] += g_out;
            for j in 0..hidden {
                g_w2[j] += g_out * h[j];
                let g_pre = g_out * self.w2[j] * (1.0 - h[j] * h[j]);
                h[j] = g_pre;
                g_b1[j] += g_pre;
            }
            for f in active_features(sample) {
                let row = &mut g_w1[f * hidden..(f + 1) * hidden];
                for (g, d) in row.iter_mut().zip(h.iter()) {
                    *g += d;
                }
            }
        }
    }

    /// Full-batch gradient descent; returns the final training loss.
    pub fn train(&mut self, samples: &[&[usize]], targets: &[f64], config: &MlpConfig) -> f64 {
        let mut grad = vec![0.0; self.parameter_count()];
        let mut h = vec![0.0; self.hidden];
        let lr = config.learning_rate;
        for _ in 0..config.epochs {
            self.accumulate_gradient(samples, targets, &mut grad, &mut h);
            let (n1, nb1, n2) = (self.w1.len(), self.b1.len(), self.w2.len());
            for (p, g) in self.w1.iter_mut().zip(&grad[..n1]) {
                *p -= lr * g;
            }
            for (p, g) in self.b1.iter_mut().zip(&grad[n1..n1 + nb1]) {
                *p -= lr * g;
            }
            for (p, g) in self.w2.iter_mut().zip(&grad[n1 + nb1..n1 + nb1 + n2]) {
                *p -= lr * g;
            }
            self.b2 -= lr * grad[n1 + nb1 + n2];
        }
        self.loss(samples, targets)
    }
}
