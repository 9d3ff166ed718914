//! Block encodings of diagonal matrices and their inverses.
//!
//! Entry magnitudes go through a fixed-point oracle into a rotation
//! cascade; the ancilla-|0⟩ amplitude of row `i` becomes
//! `(−1)^sgn sin(πϑ̃_i)`. For the forward oracle that approximates
//! `c·D_ii/M`, so the scale is `M/c`; for the inverse oracle it
//! approximates `c·m/D_ii`, so the scale of `D⁻¹` is `1/(c·m)`.
//!
//! By default the working register (sign + value digits) is folded
//! into a single rotation-family box: the register provably starts and
//! ends in |0…0⟩, so the folded gate is exactly the restriction of the
//! five-stage circuit to that subspace. The `Kept` workspace mode keeps
//! the register physically present — value oracle, arcsin oracle,
//! cascade, uncompute — and counts its qubits, for auditing.

use std::sync::Arc;

use super::fixed_point::{
    forward_quantize, inverse_extra_digits, inverse_quantize, FixedPointSpec, QuantizedAngle,
};
use super::theta::push_cascade;
use crate::circuit::{BlockEncoding, Circuit, DiagRotBox, Gate, PermBox};
use crate::error::{Error, Result};
use crate::onepair::arcsin_prescale;

/// Whether the oracle working register is folded away (it is restored
/// to |0…0⟩ exactly, so this is lossless) or kept and counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WorkspaceMode {
    #[default]
    Freed,
    Kept,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Forward,
    Inverse,
}

/// A diagonal to encode, with the magnitude range its oracle assumes.
/// Shared encoders (the difference diagonal) pass caps wider than the
/// entries themselves so both branches agree on one scale.
#[derive(Debug, Clone)]
pub struct DiagOracleSpec {
    entries: Vec<f64>,
    mode: OracleMode,
    /// M: upper bound on entry magnitudes (must be positive).
    scale_max: f64,
    /// m: lower bound on entry magnitudes (inverse mode only).
    scale_min: f64,
    fixed_point: FixedPointSpec,
    label: String,
}

impl DiagOracleSpec {
    pub fn forward(entries: Vec<f64>, fp: FixedPointSpec, label: &str) -> Result<Self> {
        let max = entries.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        Self::forward_capped(entries, max, fp, label)
    }

    pub fn forward_capped(
        entries: Vec<f64>,
        scale_max: f64,
        fp: FixedPointSpec,
        label: &str,
    ) -> Result<Self> {
        validate_entries(&entries)?;
        if scale_max <= 0.0 {
            return Err(Error::AllZeroDiagonal);
        }
        if entries.iter().any(|&x| x.abs() > scale_max * (1.0 + 1e-15)) {
            return Err(Error::InvalidConfig(format!(
                "scale cap {scale_max} below an entry magnitude"
            )));
        }
        Ok(DiagOracleSpec {
            entries,
            mode: OracleMode::Forward,
            scale_max,
            scale_min: 0.0,
            fixed_point: fp,
            label: label.to_string(),
        })
    }

    pub fn inverse(entries: Vec<f64>, fp: FixedPointSpec, label: &str) -> Result<Self> {
        let max = entries.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        let min = entries.iter().fold(f64::INFINITY, |a, &x| a.min(x.abs()));
        Self::inverse_capped(entries, max, min, fp, label)
    }

    pub fn inverse_capped(
        entries: Vec<f64>,
        scale_max: f64,
        scale_min: f64,
        fp: FixedPointSpec,
        label: &str,
    ) -> Result<Self> {
        validate_entries(&entries)?;
        if let Some(i) = entries.iter().position(|&x| x == 0.0) {
            return Err(Error::ZeroDiagonalEntry { index: i });
        }
        if !(scale_min > 0.0) || scale_max < scale_min {
            return Err(Error::InvalidConfig(format!(
                "bad magnitude range [{scale_min}, {scale_max}]"
            )));
        }
        for (i, &x) in entries.iter().enumerate() {
            if x.abs() > scale_max * (1.0 + 1e-15) || x.abs() < scale_min * (1.0 - 1e-15) {
                return Err(Error::InvalidConfig(format!(
                    "entry {i} outside the declared magnitude range"
                )));
            }
        }
        Ok(DiagOracleSpec {
            entries,
            mode: OracleMode::Inverse,
            scale_max,
            scale_min,
            fixed_point: fp,
            label: label.to_string(),
        })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn mode(&self) -> OracleMode {
        self.mode
    }

    pub fn fixed_point(&self) -> FixedPointSpec {
        self.fixed_point
    }

    pub fn scale_max(&self) -> f64 {
        self.scale_max
    }

    pub fn scale_min(&self) -> f64 {
        self.scale_min
    }

    pub fn mu(&self) -> f64 {
        self.scale_max / self.scale_min
    }

    /// Input-register fractional digits: `t+1` forward, `t'+1` inverse.
    pub fn input_digits(&self) -> u32 {
        match self.mode {
            OracleMode::Forward => self.fixed_point.t + 1,
            OracleMode::Inverse => self.fixed_point.t + inverse_extra_digits(self.mu()) + 1,
        }
    }

    /// Scale factor of the encoded matrix: `M/c` forward, `1/(c·m)`
    /// inverse (the published `c/m` does not match the circuit, whose
    /// block entry is `c·m/D_ii`).
    pub fn alpha(&self) -> f64 {
        let c = arcsin_prescale();
        match self.mode {
            OracleMode::Forward => self.scale_max / c,
            OracleMode::Inverse => 1.0 / (c * self.scale_min),
        }
    }

    /// Analytic per-entry tolerance at this precision: the encoded
    /// diagonal satisfies `|target_i − α·block_ii| ≤ eps_budget`.
    pub fn eps_budget(&self) -> f64 {
        match self.mode {
            OracleMode::Forward => forward_entry_tolerance(self.scale_max, self.fixed_point.t),
            OracleMode::Inverse => inverse_entry_tolerance(self.scale_min, self.fixed_point.t),
        }
    }

    pub fn quantized(&self) -> Result<Vec<QuantizedAngle>> {
        self.entries
            .iter()
            .map(|&d| match self.mode {
                OracleMode::Forward => Ok(forward_quantize(d, self.scale_max, self.fixed_point.t)),
                OracleMode::Inverse => {
                    inverse_quantize(d, self.scale_max, self.scale_min, self.fixed_point.t)
                }
            })
            .collect()
    }

    fn system_qubits(&self) -> Result<u32> {
        let len = self.entries.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::NotPowerOfTwo { len });
        }
        Ok(len.trailing_zeros())
    }
}

fn validate_entries(entries: &[f64]) -> Result<()> {
    if entries.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidConfig("diagonal entries must be finite".into()));
    }
    Ok(())
}

/// `|D_ii − (M/c)·block_ii| ≤ Mπ/(c·2^t)`.
pub fn forward_entry_tolerance(scale_max: f64, t: u32) -> f64 {
    scale_max * std::f64::consts::PI / (arcsin_prescale() * (1u64 << t) as f64)
}

/// `|1/D_ii − (1/(c·m))·block_ii| ≤ π/(c·m·2^t)`.
pub fn inverse_entry_tolerance(scale_min: f64, t: u32) -> f64 {
    std::f64::consts::PI / (arcsin_prescale() * scale_min * (1u64 << t) as f64)
}

pub fn build_diag_encoding(spec: &DiagOracleSpec) -> Result<BlockEncoding> {
    build_diag_encoding_with(spec, WorkspaceMode::Freed)
}

pub fn build_diag_encoding_with(
    spec: &DiagOracleSpec,
    mode: WorkspaceMode,
) -> Result<BlockEncoding> {
    let n = spec.system_qubits()? as usize;
    let quants = spec.quantized()?;
    if !spec.fixed_point.includes_sign && quants.iter().any(|q| q.negative) {
        return Err(Error::InvalidConfig(
            "negative entries need the sign qubit enabled".into(),
        ));
    }
    match mode {
        WorkspaceMode::Freed => folded_encoding(spec, n, &quants),
        WorkspaceMode::Kept => audit_encoding(spec, n, &quants),
    }
}

fn folded_encoding(
    spec: &DiagOracleSpec,
    n: usize,
    quants: &[QuantizedAngle],
) -> Result<BlockEncoding> {
    let mut circuit = Circuit::new(1 + n);
    circuit.set_registers(vec![("anc".into(), 0..1), ("system".into(), 1..1 + n)]);
    let (sin_cos, signs): (Vec<(f64, f64)>, Vec<f64>) = quants
        .iter()
        .map(|q| {
            let a = std::f64::consts::PI * q.fraction;
            ((a.sin(), a.cos()), if q.negative { -1.0 } else { 1.0 })
        })
        .unzip();
    circuit.push(Gate::diag_rot(DiagRotBox {
        name: format!("diag_rot({})", spec.label),
        target: 0,
        system: (1..1 + n).collect(),
        sin_cos: Arc::new(sin_cos),
        signs: Arc::new(signs),
    }))?;
    BlockEncoding::new(circuit, n, 1, spec.alpha(), spec.eps_budget())
}

/// Five-stage circuit with the working register physically present:
/// value oracle, arcsin oracle, rotation cascade, and the two
/// uncomputations. The register is sign + (one integer digit for the
/// inverse, whose scaled input can equal 1) + value digits; it is
/// counted in `m` in this mode.
fn audit_encoding(
    spec: &DiagOracleSpec,
    n: usize,
    quants: &[QuantizedAngle],
) -> Result<BlockEncoding> {
    let digits = spec.input_digits() as usize;
    let int_bits = match spec.mode {
        OracleMode::Forward => 0usize,
        OracleMode::Inverse => 1,
    };
    let sign_bits = spec.fixed_point.includes_sign as usize;
    let reg = sign_bits + int_bits + digits;
    let width = 1 + reg + n;
    let mut circuit = Circuit::new(width);
    circuit.set_registers(vec![
        ("anc".into(), 0..1),
        ("workspace".into(), 1..1 + reg),
        ("system".into(), 1 + reg..width),
    ]);

    let value_width = int_bits + digits;
    let value_mask: Vec<u64> = quants
        .iter()
        .map(|q| ((q.negative as u64) << value_width | q.value_bits) << n)
        .collect();
    let angle_mask: Vec<u64> = quants.iter().map(|q| (q.value_bits ^ q.angle_bits) << n).collect();
    let reg_and_system: Vec<usize> = (1..width).collect();
    let sys_bits = n as u64;
    let make_box = |name: String, masks: Vec<u64>| {
        let masks = Arc::new(masks);
        PermBox {
            name,
            qubits: reg_and_system.clone(),
            eval: Arc::new(move |x: u64| x ^ masks[(x & ((1 << sys_bits) - 1)) as usize]),
            involution: true,
        }
    };
    let value_box = make_box(format!("value_oracle({})", spec.label), value_mask);
    let angle_box = make_box(format!("arcsin_oracle({})", spec.label), angle_mask);
    if reg + n <= 14 {
        value_box.validate_bijective()?;
        angle_box.validate_bijective()?;
    }

    circuit.push(Gate::perm(value_box.clone()))?;
    circuit.push(Gate::perm(angle_box.clone()))?;
    // Angle digits are left-aligned after sign and integer wires; the
    // cascade reads the top t+1 of them.
    let frac_start = 1 + sign_bits + int_bits;
    let cascade_wires: Vec<usize> =
        (frac_start..frac_start + spec.fixed_point.frac_digits() as usize).collect();
    let sign_wire = spec.fixed_point.includes_sign.then_some(1);
    push_cascade(&mut circuit, 0, sign_wire, &cascade_wires)?;
    circuit.push(Gate::perm(angle_box))?;
    circuit.push(Gate::perm(value_box))?;

    BlockEncoding::new(circuit, n, 1 + reg, spec.alpha(), spec.eps_budget())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::extract_block;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(t: u32) -> FixedPointSpec {
        FixedPointSpec::new(t).unwrap()
    }

    fn off_diagonal_max(block: &nalgebra::DMatrix<f64>) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..block.nrows() {
            for j in 0..block.ncols() {
                if i != j {
                    worst = worst.max(block[(i, j)].abs());
                }
            }
        }
        worst
    }

    #[test]
    fn constant_diagonal_encodes_c_times_identity() {
        let m = 3.0;
        let spec = DiagOracleSpec::forward(vec![m; 4], fp(10), "d").unwrap();
        let be = build_diag_encoding(&spec).unwrap();
        assert_relative_eq!(be.alpha, m / arcsin_prescale());
        let block = extract_block(&be).unwrap();
        let quant = 1.0 / (1u64 << 10) as f64;
        for i in 0..4 {
            assert!((block[(i, i)] - arcsin_prescale()).abs() <= quant);
        }
        assert_eq!(off_diagonal_max(&block), 0.0);
    }

    #[test]
    fn signed_diagonal_meets_theorem_tolerance() {
        let t = 12;
        let entries = vec![1.0, -1.0];
        let spec = DiagOracleSpec::forward(entries.clone(), fp(t), "d").unwrap();
        let be = build_diag_encoding(&spec).unwrap();
        let block = extract_block(&be).unwrap();
        let tol = forward_entry_tolerance(1.0, t);
        for (i, &d) in entries.iter().enumerate() {
            assert!((d - be.alpha * block[(i, i)]).abs() <= tol);
        }
    }

    #[test]
    fn random_diagonal_is_diagonal_and_within_tolerance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let entries: Vec<f64> = (0..8).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let t = 10;
        let spec = DiagOracleSpec::forward(entries.clone(), fp(t), "d").unwrap();
        let be = build_diag_encoding(&spec).unwrap();
        let block = extract_block(&be).unwrap();
        let m = entries.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        let tol = forward_entry_tolerance(m, t);
        for (i, &d) in entries.iter().enumerate() {
            assert!((d - be.alpha * block[(i, i)]).abs() <= tol);
        }
        assert!(off_diagonal_max(&block) <= 1e-13);
    }

    #[test]
    fn inverse_of_uniform_magnitudes_hits_plus_minus_c() {
        // |D_ii| = m for every i makes the encoded entry ±c up to 2^{-t}.
        let t = 10;
        let spec = DiagOracleSpec::inverse(vec![0.5, -0.5, 0.5, -0.5], fp(t), "d").unwrap();
        assert_eq!(spec.input_digits(), t + 1); // mu = 1 adds no digits
        let be = build_diag_encoding(&spec).unwrap();
        let block = extract_block(&be).unwrap();
        for (i, &d) in [0.5f64, -0.5, 0.5, -0.5].iter().enumerate() {
            let expect = d.signum() * arcsin_prescale();
            assert!((block[(i, i)] - expect).abs() <= (1.0 / (1u64 << t) as f64) * 4.0);
        }
    }

    #[test]
    fn inverse_tracks_reciprocals() {
        let t = 12;
        let entries = vec![1.0, 2.0, 4.0, 1.0];
        let spec = DiagOracleSpec::inverse(entries.clone(), fp(t), "d").unwrap();
        let be = build_diag_encoding(&spec).unwrap();
        let block = extract_block(&be).unwrap();
        let tol = inverse_entry_tolerance(1.0, t);
        for (i, &d) in entries.iter().enumerate() {
            assert!((1.0 / d - be.alpha * block[(i, i)]).abs() <= tol);
        }
        assert!(off_diagonal_max(&block) <= 1e-13);
    }

    #[test]
    fn inverse_rejects_zero_entries() {
        match DiagOracleSpec::inverse(vec![1.0, 0.0], fp(6), "d") {
            Err(Error::ZeroDiagonalEntry { index }) => assert_eq!(index, 1),
            other => panic!("expected zero-entry error, got {other:?}"),
        }
    }

    #[test]
    fn forward_rejects_all_zero() {
        assert!(matches!(
            DiagOracleSpec::forward(vec![0.0; 4], fp(6), "d"),
            Err(Error::AllZeroDiagonal)
        ));
    }

    #[test]
    fn audit_form_matches_folded_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let entries: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let spec = DiagOracleSpec::forward(entries, fp(6), "d").unwrap();
        let folded = build_diag_encoding(&spec).unwrap();
        let audit = build_diag_encoding_with(&spec, WorkspaceMode::Kept).unwrap();
        // Workspace counted: ancilla + sign + 7 digits.
        assert_eq!(audit.m, 1 + 1 + 7);
        let a = extract_block(&folded).unwrap();
        let b = extract_block(&audit).unwrap();
        assert!((a - b).amax() <= 1e-13);
    }

    #[test]
    fn audit_form_restores_workspace_exactly() {
        let spec = DiagOracleSpec::inverse(vec![1.0, -2.0, 0.5, 1.5], fp(4), "d").unwrap();
        let audit = build_diag_encoding_with(&spec, WorkspaceMode::Kept).unwrap();
        let width = audit.circuit.width();
        // Workspace wires are 1..m; any amplitude with a set workspace
        // bit after the circuit would be leakage.
        let ws_mask: usize = (1..audit.m).map(|q| 1usize << (width - 1 - q)).sum();
        for j in 0..audit.size() {
            let out =
                crate::circuit::apply(&audit.circuit, &crate::circuit::basis_state(width, j))
                    .unwrap();
            let leak: f64 = out
                .iter()
                .enumerate()
                .filter(|(s, _)| s & ws_mask != 0)
                .map(|(_, a)| a.norm_sqr())
                .sum();
            assert!(leak <= 1e-24, "workspace leakage {leak}");
        }
    }
}
