//! Local-observable measurement: embedded two-level observables, exact
//! expectation values, the squared-concurrence formula in mean values,
//! and finite-shot simulation with uncertainty propagation.
//!
//! For a generator pair the four side-A observables act as the subspace
//! projector, σ_x, σ_y (up to sign) and σ_z on span{lo, hi} and vanish
//! elsewhere; side B mirrors them. Every product observable squares to
//! the projector pair, so its outcome probabilities over {−1, 0, +1} are
//! `p± = (T ± ⟨O⟩)/2`, `p₀ = 1 − T` with `T` the block weight. That makes
//! both the weight and the squared block concurrence measurable from mean
//! values alone, and the whole block sum estimable from counts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::error::{EofError, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::projection::{enumerate_pairs, EnumerationMode, GeneratorIndex};
use crate::reconstruction::Basis;
use crate::state::{binary_entropy, PureState};
use crate::tolerances::{EPS_SKIP, IM_RESIDUE_TOL};

/// One embedded observable: index `s` ∈ {0, 1, 2, 3} acting on the
/// `pair` subspace of a `side_dim`-dimensional side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObservableSpec {
    pub side_dim: usize,
    pub pair: GeneratorIndex,
    pub s: u8,
}

impl ObservableSpec {
    pub fn new(side_dim: usize, pair: GeneratorIndex, s: u8) -> Result<Self> {
        if s > 3 {
            return Err(EofError::Dimension(format!(
                "observable index must be in 0..=3, got {s}"
            )));
        }
        let pair = GeneratorIndex::new(pair.lo, pair.hi, side_dim)?;
        Ok(Self { side_dim, pair, s })
    }
}

/// Realizes the observable as a dense Hermitian matrix.
///
/// With `(i, j) = pair`: index 0 has ones at `(i,i)` and `(j,j)` (the
/// rank-2 projector); 1 has ones at `(i,j)` and `(j,i)`; 2 has `+i` at
/// `(i,j)` and `−i` at `(j,i)`; 3 has `+1` at `(i,i)` and `−1` at
/// `(j,j)`. All other entries vanish.
pub fn build_observable(spec: &ObservableSpec) -> Result<ComplexMatrix> {
    let spec = ObservableSpec::new(spec.side_dim, spec.pair, spec.s)?;
    let (i, j) = (spec.pair.lo - 1, spec.pair.hi - 1);
    let mut m = ComplexMatrix::zeros(spec.side_dim, spec.side_dim);
    match spec.s {
        0 => {
            m.set(i, i, C64::new(1.0, 0.0));
            m.set(j, j, C64::new(1.0, 0.0));
        }
        1 => {
            m.set(i, j, C64::new(1.0, 0.0));
            m.set(j, i, C64::new(1.0, 0.0));
        }
        2 => {
            m.set(i, j, C64::new(0.0, 1.0));
            m.set(j, i, C64::new(0.0, -1.0));
        }
        3 => {
            m.set(i, i, C64::new(1.0, 0.0));
            m.set(j, j, C64::new(-1.0, 0.0));
        }
        _ => unreachable!("validated above"),
    }
    Ok(m)
}

/// Exact mean value ⟨ψ| A ⊗ B |ψ⟩ of a product observable.
///
/// Evaluated as Tr(M† · A · M · Bᵀ) on the coefficient matrix M; the
/// imaginary residue (≤ 1e-12 for Hermitian factors) is discarded.
pub fn expectation(
    state: &PureState,
    a_spec: &ObservableSpec,
    b_spec: &ObservableSpec,
) -> Result<f64> {
    if a_spec.side_dim != state.dim_a() || b_spec.side_dim != state.dim_b() {
        return Err(EofError::Dimension(format!(
            "observable dimensions ({}, {}) do not match state dimensions ({}, {})",
            a_spec.side_dim,
            b_spec.side_dim,
            state.dim_a(),
            state.dim_b()
        )));
    }
    let a = build_observable(a_spec)?;
    let b = build_observable(b_spec)?;
    let m = state.coefficients();
    let am = a.matmul(m)?;
    let amb = am.matmul(&b.transpose())?;
    let mut value = C64::new(0.0, 0.0);
    for (x, y) in m.entries().iter().zip(amb.entries()) {
        value += x.conj() * y;
    }
    debug_assert!(
        value.im.abs() <= IM_RESIDUE_TOL,
        "imaginary residue {:.3e} exceeds tolerance",
        value.im
    );
    Ok(value.re)
}

/// Block weight as a mean value: the projector-pair expectation
/// ⟨Σ₀ ⊗ Γ₀⟩, which equals the squared-magnitude sum of the block
/// amplitudes.
pub fn weight_from_observable(
    state: &PureState,
    alpha: GeneratorIndex,
    beta: GeneratorIndex,
) -> Result<f64> {
    let a = ObservableSpec::new(state.dim_a(), alpha, 0)?;
    let b = ObservableSpec::new(state.dim_b(), beta, 0)?;
    expectation(state, &a, &b)
}

/// The eight mean values feeding the squared-concurrence formula for one
/// block.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExpectationSet {
    pub sigma0_gamma0: f64,
    pub sigma3_gamma3: f64,
    pub sigma3_gamma0: f64,
    pub sigma0_gamma3: f64,
    pub sigma0_gamma1: f64,
    pub sigma3_gamma1: f64,
    pub sigma0_gamma2: f64,
    pub sigma3_gamma2: f64,
}

/// The seven bracket observables `(s, t)` in report order, with the signs
/// their squared means carry in the formula.
const BRACKET_OBSERVABLES: [(u8, u8); 7] =
    [(3, 3), (3, 0), (0, 3), (0, 1), (3, 1), (0, 2), (3, 2)];
const BRACKET_SIGNS: [f64; 7] = [1.0, -1.0, -1.0, -1.0, 1.0, -1.0, 1.0];

impl ExpectationSet {
    /// Exact mean values for one block of a state.
    pub fn exact(state: &PureState, alpha: GeneratorIndex, beta: GeneratorIndex) -> Result<Self> {
        let pair = |s: u8, t: u8| -> Result<f64> {
            let a = ObservableSpec::new(state.dim_a(), alpha, s)?;
            let b = ObservableSpec::new(state.dim_b(), beta, t)?;
            expectation(state, &a, &b)
        };
        Ok(Self {
            sigma0_gamma0: pair(0, 0)?,
            sigma3_gamma3: pair(3, 3)?,
            sigma3_gamma0: pair(3, 0)?,
            sigma0_gamma3: pair(0, 3)?,
            sigma0_gamma1: pair(0, 1)?,
            sigma3_gamma1: pair(3, 1)?,
            sigma0_gamma2: pair(0, 2)?,
            sigma3_gamma2: pair(3, 2)?,
        })
    }

    fn bracket_means(&self) -> [f64; 7] {
        [
            self.sigma3_gamma3,
            self.sigma3_gamma0,
            self.sigma0_gamma3,
            self.sigma0_gamma1,
            self.sigma3_gamma1,
            self.sigma0_gamma2,
            self.sigma3_gamma2,
        ]
    }
}

/// Squared bracket sum Σ signs·m², shared between the exact and sampled
/// paths (the sampled path may substitute bias-corrected squares).
fn bracket_value(squared_means: &[f64; 7]) -> f64 {
    BRACKET_SIGNS
        .iter()
        .zip(squared_means)
        .map(|(sign, sq)| sign * sq)
        .sum()
}

fn concurrence_sq_raw(weight: f64, squared_means: &[f64; 7]) -> f64 {
    let c_ab = 1.0 / weight;
    0.5 + 0.5 * c_ab * c_ab * bracket_value(squared_means)
}

/// Squared block concurrence from mean values:
/// `1/2 + (1/(2⟨Σ₀Γ₀⟩²)) · (⟨Σ₃Γ₃⟩² − ⟨Σ₃Γ₀⟩² − ⟨Σ₀Γ₃⟩² − ⟨Σ₀Γ₁⟩² +
/// ⟨Σ₃Γ₁⟩² − ⟨Σ₀Γ₂⟩² + ⟨Σ₃Γ₂⟩²)`, clamped to [0, 1].
pub fn concurrence_sq_from_observables(es: &ExpectationSet) -> Result<f64> {
    if es.sigma0_gamma0 <= EPS_SKIP {
        return Err(EofError::DegenerateBlock(format!(
            "projector expectation {:.3e} is at or below the skip cutoff",
            es.sigma0_gamma0
        )));
    }
    let means = es.bracket_means();
    let squared = std::array::from_fn(|i| means[i] * means[i]);
    Ok(concurrence_sq_raw(es.sigma0_gamma0, &squared).clamp(0.0, 1.0))
}

/// Tallied projective-measurement outcomes of one observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OutcomeCounts {
    pub plus: u64,
    pub zero: u64,
    pub minus: u64,
}

impl OutcomeCounts {
    pub fn shots(&self) -> u64 {
        self.plus + self.zero + self.minus
    }

    /// Sample mean of the ±1/0 outcomes.
    pub fn mean(&self) -> f64 {
        (self.plus as f64 - self.minus as f64) / self.shots() as f64
    }

    /// Plug-in variance of the sample mean.
    pub fn mean_variance(&self) -> f64 {
        let n = self.shots() as f64;
        let second_moment = (self.plus + self.minus) as f64 / n;
        let mean = self.mean();
        ((second_moment - mean * mean) / n).max(0.0)
    }
}

/// Derives an order-independent sub-stream seed from the master seed and
/// two stream coordinates (splitmix64 rounds). The estimator uses
/// `(block index, observable index)`; sweeps may use any disjoint
/// coordinate scheme.
pub fn substream_seed(master: u64, a: u64, b: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e3779b97f4a7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
    mix(mix(mix(master) ^ a) ^ b)
}

/// Draws multinomial counts over {+1, 0, −1} from the given outcome
/// probabilities.
fn draw_counts(p_plus: f64, p_zero: f64, p_minus: f64, shots: u64, rng: &mut ChaCha8Rng) -> OutcomeCounts {
    let (p_plus, p_zero, p_minus) = {
        let (a, b, c) = (p_plus.clamp(0.0, 1.0), p_zero.clamp(0.0, 1.0), p_minus.clamp(0.0, 1.0));
        let sum = a + b + c;
        debug_assert!((sum - 1.0).abs() <= 1e-12, "probabilities sum to {sum}");
        (a / sum, b / sum, c / sum)
    };
    let plus = Binomial::new(shots, p_plus)
        .expect("clamped probability")
        .sample(rng);
    let rest = shots - plus;
    let minus = if rest == 0 || p_plus >= 1.0 {
        0
    } else {
        let conditional = (p_minus / (1.0 - p_plus)).clamp(0.0, 1.0);
        Binomial::new(rest, conditional)
            .expect("clamped probability")
            .sample(rng)
    };
    let _ = p_zero;
    OutcomeCounts {
        plus,
        zero: rest - minus,
        minus,
    }
}

/// Simulates `shots` projective measurements of `A ⊗ B` on the state.
///
/// Outcome probabilities come from the spectral projectors: with
/// `T = ⟨Σ₀⊗Γ₀⟩` and `⟨O⟩` the exact mean, `p± = (T ± ⟨O⟩)/2` and
/// `p₀ = 1 − T` (every observable here squares to the projector pair).
/// Counts are drawn from the categorical distribution with a
/// deterministic generator seeded by `stream_seed`.
pub fn sample_observable(
    state: &PureState,
    a_spec: &ObservableSpec,
    b_spec: &ObservableSpec,
    shots: u64,
    stream_seed: u64,
) -> Result<OutcomeCounts> {
    if shots == 0 {
        return Err(EofError::InvalidPlan("shots must be >= 1".into()));
    }
    let mean = expectation(state, a_spec, b_spec)?;
    let weight = weight_from_observable(state, a_spec.pair, b_spec.pair)?;
    let p_plus = (weight + mean) / 2.0;
    let p_minus = (weight - mean) / 2.0;
    let p_zero = 1.0 - weight;
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
    Ok(draw_counts(p_plus, p_zero, p_minus, shots, &mut rng))
}

/// Measurement budget: identical shot count per observable, one master
/// seed for all sub-streams.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ShotPlan {
    pub shots_per_observable: u64,
    pub master_seed: u64,
}

impl ShotPlan {
    pub fn new(shots_per_observable: u64, master_seed: u64) -> Result<Self> {
        if shots_per_observable == 0 {
            return Err(EofError::InvalidPlan("shots must be >= 1".into()));
        }
        Ok(Self {
            shots_per_observable,
            master_seed,
        })
    }
}

/// Estimator switches beyond the shot plan. Defaults: Schmidt basis,
/// sampled counts, no bias correction, no bootstrap.
#[derive(Debug, Clone, Copy)]
pub struct EstimateOptions {
    /// Basis the simulated protocol measures in; raw is not certified.
    pub basis: Basis,
    /// Replace sampled counts by exact probabilities (the shots → ∞
    /// limit; all uncertainties are then zero).
    pub exact_expectations: bool,
    /// Subtract the sample variance of each mean from its square before
    /// the bracket sum (removes the O(1/N) upward bias of squared means).
    pub bias_correction: bool,
    /// Nonparametric bootstrap replicas over resampled counts; 0 disables.
    pub bootstrap_replicas: u32,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            basis: Basis::Schmidt,
            exact_expectations: false,
            bias_correction: false,
            bootstrap_replicas: 0,
        }
    }
}

/// Per-block estimate derived from measured (or exact) mean values.
#[derive(Debug, Clone, Serialize)]
pub struct BlockEstimate {
    pub alpha: GeneratorIndex,
    pub beta: GeneratorIndex,
    #[serde(rename = "T_hat")]
    pub t_hat: f64,
    #[serde(rename = "C_hat")]
    pub c_hat: f64,
    #[serde(rename = "E_block_hat")]
    pub e_block_hat: f64,
    /// Delta-method standard error of `E_block_hat`.
    pub std_error: f64,
    /// Whether the raw squared concurrence fell outside [0, 1] and was
    /// clamped.
    pub c_sq_clamped: bool,
}

/// Shot-based estimate of the EoF with propagated uncertainties.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub mode: EnumerationMode,
    pub basis: Basis,
    pub certified: bool,
    pub shots_per_observable: u64,
    pub master_seed: u64,
    pub exact_expectations: bool,
    pub bias_correction: bool,
    pub normalization: f64,
    pub blocks: Vec<BlockEstimate>,
    /// Enumerated blocks whose measured weight fell at or below the skip
    /// cutoff.
    pub dropped_blocks: usize,
    pub e_hat: f64,
    /// Delta-method standard error of `e_hat`.
    pub std_error: f64,
    /// Bootstrap standard error when replicas were requested.
    pub bootstrap_std_error: Option<f64>,
}

/// Raw counts retained per contributing block (for the bootstrap).
struct BlockCounts {
    weight: OutcomeCounts,
    bracket: [OutcomeCounts; 7],
}

struct BlockMoments {
    t: f64,
    var_t: f64,
    means: [f64; 7],
    vars: [f64; 7],
}

/// Contribution math shared by the main pass and bootstrap replicas.
struct BlockEvaluation {
    c_sq: f64,
    c_sq_clamped: bool,
    e_block: f64,
    contribution: f64,
    var_e_block: f64,
    var_contribution: f64,
}

fn evaluate_block(moments: &BlockMoments, bias_correction: bool) -> BlockEvaluation {
    let t = moments.t;
    let squared: [f64; 7] = std::array::from_fn(|i| {
        let sq = moments.means[i] * moments.means[i];
        if bias_correction {
            sq - moments.vars[i]
        } else {
            sq
        }
    });
    let raw = concurrence_sq_raw(t, &squared);
    let c_sq = raw.clamp(0.0, 1.0);
    let c_sq_clamped = raw != c_sq;
    let u = (1.0 - c_sq).sqrt();
    let x = ((1.0 + u) / 2.0).clamp(0.5, 1.0);
    let e_block = binary_entropy(x);
    let contribution = (e_block - t.log2()) * t;

    // First-order error propagation. Near C = 1 the composite derivative
    // dE/dC² has the finite limit 1/(2 ln 2); near C = 0 the entropy slope
    // is guarded by clamping x away from 1.
    let de_dcsq = if u < 1e-8 {
        0.5 / std::f64::consts::LN_2
    } else {
        let x_guard = x.min(1.0 - 1e-15);
        let slope = ((1.0 - x_guard) / x_guard).log2();
        -slope / (4.0 * u)
    };
    let bracket = bracket_value(&squared);
    let dcsq_dt = -bracket / (t * t * t);
    let dcsq_dm: [f64; 7] = std::array::from_fn(|i| BRACKET_SIGNS[i] * moments.means[i] / (t * t));
    let df_dt = (e_block - t.log2() - 1.0 / std::f64::consts::LN_2) + t * de_dcsq * dcsq_dt;

    let mut var_csq = dcsq_dt * dcsq_dt * moments.var_t;
    let mut var_contribution = df_dt * df_dt * moments.var_t;
    for (grad, var) in dcsq_dm.iter().zip(&moments.vars) {
        var_csq += grad * grad * var;
        let df_dm = t * de_dcsq * grad;
        var_contribution += df_dm * df_dm * var;
    }
    let var_e_block = de_dcsq * de_dcsq * var_csq;

    BlockEvaluation {
        c_sq,
        c_sq_clamped,
        e_block,
        contribution,
        var_e_block,
        var_contribution,
    }
}

/// Estimates the EoF from simulated measurements with default options
/// (Schmidt basis, sampled counts). Budgets below ~100 shots per
/// observable leave the per-block concurrence estimates noise-dominated.
pub fn estimate_eof(
    state: &PureState,
    plan: &ShotPlan,
    mode: EnumerationMode,
) -> Result<EstimateReport> {
    estimate_eof_with(state, plan, mode, &EstimateOptions::default())
}

/// [`estimate_eof`] with explicit options.
pub fn estimate_eof_with(
    state: &PureState,
    plan: &ShotPlan,
    mode: EnumerationMode,
    options: &EstimateOptions,
) -> Result<EstimateReport> {
    let plan = ShotPlan::new(plan.shots_per_observable, plan.master_seed)?;
    let working = match options.basis {
        Basis::Schmidt => state.to_schmidt_basis(),
        Basis::Raw => state.clone(),
    };
    let m = working.dim_a();
    let n = working.dim_b();
    let normalization = match mode {
        EnumerationMode::Paper => 1.0 / ((m - 1) * (m - 1)) as f64,
        EnumerationMode::Rect => 1.0 / ((m - 1) * (n - 1)) as f64,
    };
    let shots = plan.shots_per_observable;

    let mut blocks = Vec::new();
    let mut retained_counts: Vec<BlockCounts> = Vec::new();
    let mut dropped = 0usize;
    let mut sum_contribution = 0.0;
    let mut var_total = 0.0;

    for (block_index, (alpha, beta)) in enumerate_pairs(m, n, mode).into_iter().enumerate() {
        let spec = |side_dim: usize, pair: GeneratorIndex, s: u8| {
            ObservableSpec::new(side_dim, pair, s)
        };
        let weight_counts = if options.exact_expectations {
            None
        } else {
            let a = spec(m, alpha, 0)?;
            let b = spec(n, beta, 0)?;
            Some(sample_observable(
                &working,
                &a,
                &b,
                shots,
                substream_seed(plan.master_seed, block_index as u64, 0),
            )?)
        };
        let (t_hat, var_t) = match &weight_counts {
            Some(counts) => (counts.mean(), counts.mean_variance()),
            None => (weight_from_observable(&working, alpha, beta)?, 0.0),
        };
        if t_hat <= EPS_SKIP {
            dropped += 1;
            continue;
        }

        let mut means = [0.0f64; 7];
        let mut vars = [0.0f64; 7];
        let mut bracket_counts: Option<[OutcomeCounts; 7]> = None;
        if options.exact_expectations {
            for (oi, &(s, t)) in BRACKET_OBSERVABLES.iter().enumerate() {
                let a = spec(m, alpha, s)?;
                let b = spec(n, beta, t)?;
                means[oi] = expectation(&working, &a, &b)?;
            }
        } else {
            let mut counts_arr = [OutcomeCounts {
                plus: 0,
                zero: 0,
                minus: 0,
            }; 7];
            for (oi, &(s, t)) in BRACKET_OBSERVABLES.iter().enumerate() {
                let a = spec(m, alpha, s)?;
                let b = spec(n, beta, t)?;
                let counts = sample_observable(
                    &working,
                    &a,
                    &b,
                    shots,
                    substream_seed(plan.master_seed, block_index as u64, 1 + oi as u64),
                )?;
                means[oi] = counts.mean();
                vars[oi] = counts.mean_variance();
                counts_arr[oi] = counts;
            }
            bracket_counts = Some(counts_arr);
        }

        let moments = BlockMoments {
            t: t_hat,
            var_t,
            means,
            vars,
        };
        let eval = evaluate_block(&moments, options.bias_correction);
        sum_contribution += eval.contribution;
        var_total += eval.var_contribution;
        blocks.push(BlockEstimate {
            alpha,
            beta,
            t_hat,
            c_hat: eval.c_sq.sqrt(),
            e_block_hat: eval.e_block,
            std_error: eval.var_e_block.sqrt(),
            c_sq_clamped: eval.c_sq_clamped,
        });
        if let (Some(weight), Some(bracket)) = (weight_counts, bracket_counts) {
            retained_counts.push(BlockCounts { weight, bracket });
        }
    }

    let e_hat = normalization * sum_contribution;
    let std_error = normalization * var_total.sqrt();

    let bootstrap_std_error = if options.bootstrap_replicas > 0 && !options.exact_expectations {
        Some(bootstrap_std(
            &retained_counts,
            normalization,
            shots,
            plan.master_seed,
            options,
        ))
    } else {
        None
    };

    Ok(EstimateReport {
        mode,
        basis: options.basis,
        certified: options.basis == Basis::Schmidt,
        shots_per_observable: shots,
        master_seed: plan.master_seed,
        exact_expectations: options.exact_expectations,
        bias_correction: options.bias_correction,
        normalization,
        blocks,
        dropped_blocks: dropped,
        e_hat,
        std_error,
        bootstrap_std_error,
    })
}

/// Nonparametric bootstrap: resample every retained count vector from its
/// empirical distribution, rerun the estimate, take the spread.
fn bootstrap_std(
    retained: &[BlockCounts],
    normalization: f64,
    shots: u64,
    master_seed: u64,
    options: &EstimateOptions,
) -> f64 {
    const BOOTSTRAP_DOMAIN: u64 = 0x626f_6f74; // disjoint from block indices
    let replicas = options.bootstrap_replicas as usize;
    let mut totals = Vec::with_capacity(replicas);
    for r in 0..replicas {
        let mut sum = 0.0;
        for (bi, counts) in retained.iter().enumerate() {
            let resample = |c: &OutcomeCounts, oi: u64, rng_seed: u64| {
                let n = c.shots() as f64;
                let mut rng = ChaCha8Rng::seed_from_u64(substream_seed(
                    rng_seed,
                    BOOTSTRAP_DOMAIN + r as u64,
                    (bi as u64) * 8 + oi,
                ));
                draw_counts(
                    c.plus as f64 / n,
                    c.zero as f64 / n,
                    c.minus as f64 / n,
                    shots,
                    &mut rng,
                )
            };
            let weight = resample(&counts.weight, 0, master_seed);
            let t_hat = weight.mean();
            if t_hat <= EPS_SKIP {
                continue;
            }
            let mut means = [0.0f64; 7];
            let mut vars = [0.0f64; 7];
            for oi in 0..7 {
                let c = resample(&counts.bracket[oi], 1 + oi as u64, master_seed);
                means[oi] = c.mean();
                vars[oi] = c.mean_variance();
            }
            let eval = evaluate_block(
                &BlockMoments {
                    t: t_hat,
                    var_t: weight.mean_variance(),
                    means,
                    vars,
                },
                options.bias_correction,
            );
            sum += eval.contribution;
        }
        totals.push(normalization * sum);
    }
    let mean = totals.iter().sum::<f64>() / totals.len() as f64;
    let var = totals.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>()
        / (totals.len().max(2) - 1) as f64;
    var.sqrt()
}
