//! Thermal averages of the GUP-perturbed oscillator in a truncated number basis.
//!
//! Work is done in units where ħΩ = 1, p = P_O·p̂ and x = X_O·x̂, with
//! P_O = √(mħΩ/2) and X_O = √(ħ/(2mΩ)). The basis is rotated by b → ib so
//! that p̂ = b + b† and every operator used here is a real symmetric band matrix.
//! H₀ is diagonal there, so e^{β′H₀}Ve^{−β′H₀} has elements e^{β′(n−k)}V_nk.

use faer::{Mat, Side};
use gupnoise_core::model::{ExperimentParams, GupParams, PhysicalConstants};
use gupnoise_core::{Error, Result};

/// Largest thermal weight allowed beyond the truncation.
pub const TAIL_LIMIT: f64 = 1e-10;

/// Safety factor on the third-order envelope (β·rms V)³·rms A.
pub const CUBIC_ENVELOPE_FACTOR: f64 = 10.0;

/// Gauss–Legendre nodes per β integration axis.
const QUADRATURE_NODES: usize = 24;

/// Real symmetric matrix stored by diagonals within a half bandwidth.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedOperator {
    n: usize,
    half_band: usize,
    data: Vec<f64>,
}

impl BandedOperator {
    pub fn zeros(n: usize, half_band: usize) -> Self {
        Self { n, half_band, data: vec![0.0; n * (2 * half_band + 1)] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(n, |_| 1.0)
    }

    pub fn diagonal(n: usize, f: impl Fn(usize) -> f64) -> Self {
        let mut m = Self::zeros(n, 0);
        (0..n).for_each(|i| m.set(i, i, f(i)));
        m
    }

    /// Symmetrised from `f` on the upper triangle within the band.
    pub fn from_fn(n: usize, half_band: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n, half_band);
        for i in 0..n {
            for j in i..(i + half_band + 1).min(n) {
                let v = f(i, j);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn half_band(&self) -> usize {
        self.half_band
    }

    fn index(&self, i: usize, j: usize) -> Option<usize> {
        let offset = j as isize - i as isize + self.half_band as isize;
        (0..=2 * self.half_band as isize)
            .contains(&offset)
            .then(|| i * (2 * self.half_band + 1) + offset as usize)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i >= self.n || j >= self.n {
            return 0.0;
        }
        self.index(i, j).map_or(0.0, |k| self.data[k])
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.index(i, j).expect("inside band");
        self.data[k] = v;
    }

    /// Columns of row i that lie inside the band.
    fn band(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.half_band)..(i + self.half_band + 1).min(self.n)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let hb = (self.half_band + other.half_band).min(self.n.saturating_sub(1));
        let mut out = Self::zeros(self.n, hb);
        for i in 0..self.n {
            for k in self.band(i) {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in other.band(k) {
                    let idx = out.index(i, j).expect("product band");
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { data: self.data.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let hb = self.half_band.max(other.half_band);
        Self::from_fn(self.n, hb, |i, j| self.get(i, j) + other.get(i, j))
    }

    /// Leading n×n block.
    pub fn truncated(&self, n: usize) -> Self {
        Self::from_fn(n, self.half_band.min(n.saturating_sub(1)), |i, j| self.get(i, j))
    }
}

/// p̂ = b + b† in the rotated basis.
fn momentum(n: usize) -> BandedOperator {
    BandedOperator::from_fn(n, 1, |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 })
}

/// x̂² = (2n+1) − b² − b†² in the rotated basis.
fn position_squared(n: usize) -> BandedOperator {
    BandedOperator::from_fn(n, 2, |i, j| match j - i {
        0 => 2.0 * i as f64 + 1.0,
        2 => -((i + 1) as f64 * (i + 2) as f64).sqrt(),
        _ => 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    Identity,
    /// x₀² (m²)
    PositionSquared,
    /// p₀² (kg²m²/s²)
    MomentumSquared,
    /// b†²b² (dimensionless)
    NormalOrderedSquare,
}

impl Observable {
    fn operator(&self, n: usize) -> BandedOperator {
        match self {
            Observable::Identity => BandedOperator::identity(n),
            Observable::PositionSquared => position_squared(n + 2).truncated(n),
            Observable::MomentumSquared => {
                let p = momentum(n + 2);
                p.matmul(&p).truncated(n)
            }
            Observable::NormalOrderedSquare => BandedOperator::diagonal(n, |i| (i * i.saturating_sub(1)) as f64),
        }
    }

    /// SI value of one dimensionless unit of the observable.
    fn unit(&self, scales: &OscillatorScales) -> f64 {
        match self {
            Observable::Identity | Observable::NormalOrderedSquare => 1.0,
            Observable::PositionSquared => scales.x_unit * scales.x_unit,
            Observable::MomentumSquared => scales.p_unit * scales.p_unit,
        }
    }
}

/// Natural units of the oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorScales {
    /// ħΩ (J)
    pub energy: f64,
    /// P_O = √(mħΩ/2)
    pub p_unit: f64,
    /// X_O = √(ħ/(2mΩ))
    pub x_unit: f64,
}

impl OscillatorScales {
    pub fn new(exp: &ExperimentParams<f64>, consts: &PhysicalConstants<f64>) -> Self {
        let (m, w, hbar) = (exp.mass, exp.omega_m, consts.hbar);
        Self { energy: hbar * w, p_unit: (m * hbar * w / 2.0).sqrt(), x_unit: (hbar / (2.0 * m * w)).sqrt() }
    }
}

/// V = −c₃p̂³ + c₄p̂⁴ in units of ħΩ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    /// c₃ = αP_O³/(mħΩ)
    pub cubic: f64,
    /// c₄ = (α²+2γ)P_O⁴/(2mħΩ)
    pub quartic: f64,
}

impl Couplings {
    pub fn from_gup(gup: &GupParams<f64>, exp: &ExperimentParams<f64>, consts: &PhysicalConstants<f64>) -> Self {
        let s = OscillatorScales::new(exp, consts);
        let m = exp.mass;
        Self {
            cubic: gup.alpha * s.p_unit.powi(3) / (m * s.energy),
            quartic: (gup.alpha * gup.alpha + 2.0 * gup.gamma) * s.p_unit.powi(4) / (2.0 * m * s.energy),
        }
    }

    /// SI GUP strengths that produce these couplings; needs c₃² ≤ c₄.
    pub fn to_gup(&self, exp: &ExperimentParams<f64>, consts: &PhysicalConstants<f64>) -> Result<GupParams<f64>> {
        let s = OscillatorScales::new(exp, consts);
        let m = exp.mass;
        let alpha = self.cubic * m * s.energy / s.p_unit.powi(3);
        let combined = self.quartic * 2.0 * m * s.energy / s.p_unit.powi(4);
        GupParams::from_si(alpha, (combined - alpha * alpha) / 2.0, consts)
    }

    pub fn scaled(&self, cubic_factor: f64, quartic_factor: f64) -> Self {
        Self { cubic: self.cubic * cubic_factor, quartic: self.quartic * quartic_factor }
    }

    fn split(&self, n: usize) -> (BandedOperator, BandedOperator) {
        let p = momentum(n + 4);
        let p2 = p.matmul(&p);
        let p3 = p2.matmul(&p);
        let p4 = p2.matmul(&p2);
        (p3.truncated(n).scaled(-self.cubic), p4.truncated(n).scaled(self.quartic))
    }
}

/// Gauss–Legendre nodes and weights on [0, 1].
fn gauss_legendre(count: usize) -> Vec<(f64, f64)> {
    let n = count as f64;
    (0..count)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut derivative = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=count {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                derivative = n * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / derivative;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let weight = 2.0 / ((1.0 - x * x) * derivative * derivative);
            ((1.0 - x) / 2.0, weight / 2.0)
        })
        .collect()
}

/// Thermal state of H₀ = n̂ (ħΩ = 1) in the truncated basis.
struct FreeThermal {
    beta: f64,
    weights: Vec<f64>,
    nodes: Vec<(f64, f64)>,
}

impl FreeThermal {
    fn new(beta: f64, n: usize) -> Self {
        let raw: Vec<f64> = (0..n).map(|k| (-beta * k as f64).exp()).collect();
        let z: f64 = raw.iter().sum();
        Self { beta, weights: raw.iter().map(|w| w / z).collect(), nodes: gauss_legendre(QUADRATURE_NODES) }
    }

    /// ⟨A⟩₀
    fn mean(&self, a: &BandedOperator) -> f64 {
        self.weights.iter().enumerate().map(|(i, w)| w * a.get(i, i)).sum()
    }

    /// ⟨e^{uH₀}Ve^{−uH₀}A⟩₀
    fn pair(&self, u: f64, v: &BandedOperator, a: &BandedOperator) -> f64 {
        let mut total = 0.0;
        for (i, w) in self.weights.iter().enumerate() {
            let mut row = 0.0;
            for k in v.band(i) {
                row += (u * (i as f64 - k as f64)).exp() * v.get(i, k) * a.get(k, i);
            }
            total += w * row;
        }
        total
    }

    /// ⟨e^{uH₀}Ve^{(s−u)H₀}We^{−sH₀}A⟩₀
    fn triple(&self, u: f64, s: f64, v: &BandedOperator, w_op: &BandedOperator, a: &BandedOperator) -> f64 {
        let mut total = 0.0;
        for (i, w) in self.weights.iter().enumerate() {
            let mut row = 0.0;
            for k in v.band(i) {
                let vik = v.get(i, k);
                if vik == 0.0 {
                    continue;
                }
                let mut inner = 0.0;
                for l in w_op.band(k) {
                    let ali = a.get(l, i);
                    if ali != 0.0 {
                        inner += (s * (k as f64 - l as f64)).exp() * w_op.get(k, l) * ali;
                    }
                }
                row += (u * (i as f64 - k as f64)).exp() * vik * inner;
            }
            total += w * row;
        }
        total
    }

    /// ∫₀^β du ⟨e^{uH₀}Ve^{−uH₀}A⟩₀
    fn single_integral(&self, v: &BandedOperator, a: &BandedOperator) -> f64 {
        self.nodes.iter().map(|&(t, wt)| wt * self.beta * self.pair(t * self.beta, v, a)).sum()
    }

    /// ∫₀^β du ∫₀^u ds ⟨e^{uH₀}Ve^{−uH₀}e^{sH₀}We^{−sH₀}A⟩₀
    fn double_integral(&self, v: &BandedOperator, w: &BandedOperator, a: &BandedOperator) -> f64 {
        let mut total = 0.0;
        for &(t, wt) in &self.nodes {
            let u = t * self.beta;
            for &(r, wr) in &self.nodes {
                let s = r * u;
                total += wt * self.beta * wr * u * self.triple(u, s, v, w, a);
            }
        }
        total
    }
}

/// The pieces of the second-order thermal average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationTerms {
    /// ⟨A⟩₀
    pub free: f64,
    /// Z₁/Z₀ = −∫⟨e^{β′H₀}Ve^{−β′H₀}⟩₀
    pub z1: f64,
    /// Z₂/Z₀ from the single-integral form (β/2)∫⟨e^{β′H₀}Ve^{−β′H₀}V⟩₀.
    pub z2: f64,
    /// The same quantity as the ordered double integral with A = 1.
    pub z2_double: f64,
    /// ∫⟨e^{β′H₀}Ve^{−β′H₀}A⟩₀
    pub first: f64,
    /// ∫∫⟨e^{β′H₀}Ve^{(β″−β′)H₀}Ve^{−β″H₀}A⟩₀
    pub second: f64,
}

impl PerturbationTerms {
    /// ⟨A⟩ = ⟨A⟩₀(1 − Z₁/Z₀ + (Z₁/Z₀)² − Z₂/Z₀) − (1 − Z₁/Z₀)·first + second.
    pub fn collected(&self) -> f64 {
        let (a, z1) = (self.free, self.z1);
        a * (1.0 - z1 + z1 * z1 - self.z2) - (1.0 - z1) * self.first + self.second
    }

    /// The uncollected expansion, using the double-integral Z₂ and ∫⟨V⟩ = −Z₁/Z₀.
    pub fn expanded(&self) -> f64 {
        let (a, mean_v) = (self.free, -self.z1);
        a + a * mean_v * mean_v - a * self.z2_double - self.first + a * mean_v + self.second - mean_v * self.first
    }

    /// Z₀/Z_H to second order.
    pub fn inverse_partition_ratio(&self) -> f64 {
        let mean_v = -self.z1;
        1.0 + mean_v + mean_v * mean_v - self.z2_double
    }
}

fn perturbation_terms(
    thermal: &FreeThermal,
    v_left: &BandedOperator,
    v_right: &BandedOperator,
    v_first: &BandedOperator,
    a: &BandedOperator,
) -> PerturbationTerms {
    let n = a.dim();
    let identity = BandedOperator::identity(n);
    let z1 = -thermal.single_integral(v_first, &identity);
    let z2 = thermal.beta / 2.0 * thermal.single_integral(v_left, v_right);
    PerturbationTerms {
        free: thermal.mean(a),
        z1,
        z2,
        z2_double: thermal.double_integral(v_left, v_right, &identity),
        first: thermal.single_integral(v_first, a),
        second: thermal.double_integral(v_left, v_right, a),
    }
}

/// Exact ⟨A⟩ and Z_H/Z₀ for H = n̂ + V by dense diagonalisation.
struct ExactThermal {
    mean: f64,
    partition_ratio: f64,
    /// Thermal population of the top 5% of levels.
    edge_weight: f64,
}

fn exact_thermal(beta: f64, v: &BandedOperator, a: &BandedOperator) -> ExactThermal {
    let n = v.dim();
    let h = Mat::<f64>::from_fn(n, n, |i, j| v.get(i, j) + if i == j { i as f64 } else { 0.0 });
    let eig = h.selfadjoint_eigendecomposition(Side::Lower);
    let energies = eig.s().column_vector();
    let u = eig.u();
    let edge = n - n / 20;

    let (mut z, mut numerator, mut edge_weight) = (0.0, 0.0, 0.0);
    for j in 0..n {
        let weight = (-beta * energies.read(j)).exp();
        if weight < 1e-300 {
            continue;
        }
        let mut expectation = 0.0;
        for i in 0..n {
            let ui = u.read(i, j);
            if ui == 0.0 {
                continue;
            }
            let mut row = 0.0;
            for k in a.band(i) {
                row += a.get(i, k) * u.read(k, j);
            }
            expectation += ui * row;
        }
        let top: f64 = (edge..n).map(|i| u.read(i, j).powi(2)).sum();
        z += weight;
        numerator += weight * expectation;
        edge_weight += weight * top;
    }
    let z0: f64 = (0..n).map(|k| (-beta * k as f64).exp()).sum();
    ExactThermal { mean: numerator / z, partition_ratio: z / z0, edge_weight: edge_weight / z }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockOracleResult {
    /// β (1/J)
    pub beta: f64,
    pub beta_hbar_omega: f64,
    pub truncation_n: usize,
    pub observable: Observable,
    /// ⟨A⟩₀
    pub unperturbed_value: f64,
    /// Tr(e^{−βH}A)/Z
    pub exact_value: f64,
    /// Second order in V, collected form.
    pub pt_value: f64,
    /// Truncated at quadratic order in (α, √γ): V₁ to second order, V₂ to first.
    pub pt_quadratic_value: f64,
    /// exact − pt
    pub residual: f64,
    /// Largest of the free tail e^{−βħΩN} and the perturbed population near the cutoff.
    pub tail_weight: f64,
    /// (β·rms V)³·rms A, the scale of third-order terms.
    pub cubic_envelope: f64,
}

fn check_tail(n: usize, beta: f64) -> Result<f64> {
    let tail = (-beta * n as f64).exp();
    if tail > TAIL_LIMIT {
        return Err(Error::Truncation { levels: n, tail, limit: TAIL_LIMIT });
    }
    Ok(tail)
}

/// Exact and second-order thermal averages of `observable` for H₀ + V₁ + V₂.
pub fn fock_thermal_oracle(
    beta_hbar_omega: f64,
    gup: &GupParams<f64>,
    exp: &ExperimentParams<f64>,
    consts: &PhysicalConstants<f64>,
    n: usize,
    observable: Observable,
) -> Result<FockOracleResult> {
    let couplings = Couplings::from_gup(gup, exp, consts);
    let scales = OscillatorScales::new(exp, consts);
    let mut result = thermal_oracle_dimensionless(beta_hbar_omega, couplings, n, &observable.operator(n))?;
    let unit = observable.unit(&scales);
    result.observable = observable;
    result.beta = beta_hbar_omega / scales.energy;
    for v in [
        &mut result.unperturbed_value,
        &mut result.exact_value,
        &mut result.pt_value,
        &mut result.pt_quadratic_value,
        &mut result.residual,
        &mut result.cubic_envelope,
    ] {
        *v *= unit;
    }
    Ok(result)
}

/// The oracle in oscillator units for an arbitrary symmetric observable.
pub fn thermal_oracle_dimensionless(
    beta: f64,
    couplings: Couplings,
    n: usize,
    a: &BandedOperator,
) -> Result<FockOracleResult> {
    let free_tail = check_tail(n, beta)?;
    let (v1, v2) = couplings.split(n);
    let v = v1.add(&v2);
    let thermal = FreeThermal::new(beta, n);

    let full = perturbation_terms(&thermal, &v, &v, &v, a);
    // Everything of order two in (α, √γ): V₁ through second order, V₂ at first order.
    let cubic_only = perturbation_terms(&thermal, &v1, &v1, &v1, a);
    let quartic_first = thermal.single_integral(&v2, a) - full.free * thermal.single_integral(&v2, &BandedOperator::identity(n));
    let quadratic = cubic_only.collected() - quartic_first;
    let exact = exact_thermal(beta, &v, a);
    let tail_weight = free_tail.max(exact.edge_weight);
    if tail_weight > TAIL_LIMIT {
        return Err(Error::Truncation { levels: n, tail: tail_weight, limit: TAIL_LIMIT });
    }

    let rms_v = thermal.mean(&v.matmul(&v)).sqrt();
    let rms_a = thermal.mean(&a.matmul(a)).sqrt();
    let cubic_envelope = (beta * rms_v).powi(3) * rms_a;
    // The dense eigensolver is only backward stable, to about Nε of ‖A‖.
    let rounding = 64.0 * n as f64 * f64::EPSILON * rms_a;
    let pt_value = full.collected();
    let residual = exact.mean - pt_value;
    if residual.abs() > CUBIC_ENVELOPE_FACTOR * cubic_envelope + rounding {
        return Err(Error::Perturbation(format!(
            "exact - second order = {residual:e} exceeds {CUBIC_ENVELOPE_FACTOR} x cubic envelope {cubic_envelope:e}"
        )));
    }
    Ok(FockOracleResult {
        beta,
        beta_hbar_omega: beta,
        truncation_n: n,
        observable: Observable::Identity,
        unperturbed_value: full.free,
        exact_value: exact.mean,
        pt_value,
        pt_quadratic_value: quadratic,
        residual,
        tail_weight,
        cubic_envelope,
    })
}

/// Agreement between the collected and expanded second-order forms on one matrix set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub collected: f64,
    pub expanded: f64,
    /// |collected − expanded| / |collected|
    pub relative_gap: f64,
    /// The collected form with A = 1.
    pub identity_value: f64,
    /// Z₀/Z_H to second order.
    pub partition_ratio_pt: f64,
    /// Z₀/Z_H from the exact trace.
    pub partition_ratio_exact: f64,
}

/// Checks that the collected second-order average equals its expansion, and that
/// A = 1 gives unity and the second-order Z₀/Z_H.
pub fn pt_identity_check(beta: f64, couplings: Couplings, n: usize, a: &BandedOperator) -> Result<IdentityReport> {
    check_tail(n, beta)?;
    let (v1, v2) = couplings.split(n);
    let v = v1.add(&v2);
    let thermal = FreeThermal::new(beta, n);
    let terms = perturbation_terms(&thermal, &v, &v, &v, a);
    let identity = BandedOperator::identity(n);
    let unit = perturbation_terms(&thermal, &v, &v, &v, &identity);
    let exact = exact_thermal(beta, &v, &identity);
    let collected = terms.collected();
    let expanded = terms.expanded();
    Ok(IdentityReport {
        collected,
        expanded,
        relative_gap: (collected - expanded).abs() / collected.abs(),
        identity_value: unit.collected(),
        partition_ratio_pt: unit.inverse_partition_ratio(),
        partition_ratio_exact: 1.0 / exact.partition_ratio,
    })
}

/// One β-integral of the free thermal state next to its high-temperature closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighTemperatureCheck {
    pub name: &'static str,
    /// SI value from the truncated basis.
    pub numerical: f64,
    pub closed_form: f64,
}

impl HighTemperatureCheck {
    pub fn relative_gap(&self) -> f64 {
        ((self.numerical - self.closed_form) / self.closed_form).abs()
    }
}

/// The four β-integrals of V₁ and V₂ against their high-temperature closed forms,
/// which use ⟨x₀²⟩ = k_BT/(mΩ²).
pub fn high_temperature_checks(
    beta_hbar_omega: f64,
    gup: &GupParams<f64>,
    exp: &ExperimentParams<f64>,
    consts: &PhysicalConstants<f64>,
    n: usize,
) -> Result<Vec<HighTemperatureCheck>> {
    check_tail(n, beta_hbar_omega)?;
    let couplings = Couplings::from_gup(gup, exp, consts);
    let scales = OscillatorScales::new(exp, consts);
    let (v1, v2) = couplings.split(n);
    let thermal = FreeThermal::new(beta_hbar_omega, n);
    let identity = BandedOperator::identity(n);
    let x2 = position_squared(n + 2).truncated(n);

    let (m, alpha) = (exp.mass, gup.alpha);
    let quartic = (gup.alpha * gup.alpha + 2.0 * gup.gamma) / (2.0 * m);
    let beta = beta_hbar_omega / scales.energy;
    let x_sq = 1.0 / (beta * m * exp.omega_m * exp.omega_m);
    let (p_o, x_o) = (scales.p_unit, scales.x_unit);
    let x_unit_sq = x_o * x_o;

    Ok(vec![
        HighTemperatureCheck {
            name: "cubic pair",
            numerical: thermal.double_integral(&v1, &v1, &identity),
            closed_form: beta * beta / 2.0 * 15.0 * alpha * alpha * x_sq.powi(3) * p_o.powi(6) / (m * m * x_o.powi(6)),
        },
        HighTemperatureCheck {
            name: "cubic pair with x0^2",
            numerical: thermal.double_integral(&v1, &v1, &x2) * x_unit_sq,
            closed_form: 15.0 * alpha * alpha * p_o.powi(6) * beta * beta / (2.0 * m * m)
                * (x_sq.powi(4) / x_o.powi(6) - 6.0 * x_sq * x_sq / (x_o * x_o)),
        },
        HighTemperatureCheck {
            name: "quartic",
            numerical: thermal.single_integral(&v2, &identity),
            closed_form: quartic * 3.0 * beta * p_o.powi(4) * x_sq * x_sq / x_o.powi(4),
        },
        HighTemperatureCheck {
            name: "quartic with x0^2",
            numerical: thermal.single_integral(&v2, &x2) * x_unit_sq,
            closed_form: quartic * 3.0 * beta * p_o.powi(4) * (x_sq.powi(3) / x_o.powi(4) - 4.0 * x_sq),
        },
    ])
}
