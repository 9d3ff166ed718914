//! Rotation cascade turning a fixed-point angle register into an
//! amplitude: on |ϑ⟩|0⟩ the ancilla ends in
//! `(−1)^sgn·sin(πϑ)|0⟩ + cos(πϑ)|1⟩`.
//!
//! Digit `j` of ϑ (weight 2^{−(j+1)}) controls `Ry(π/2^j)` on the
//! ancilla. The drawn order of the published circuit puts the
//! controlled-Z first, where it acts on a still-|0⟩ ancilla and does
//! nothing; here it follows the cascade so the sign actually lands in
//! the encoded amplitude, and the final X moves it to the |0⟩ slot.

use super::FixedPointSpec;
use crate::circuit::{Circuit, Gate};
use crate::error::Result;

/// Cascade + sign + swap gates onto an existing circuit. `frac_wires`
/// lists the angle digits most significant first.
pub(crate) fn push_cascade(
    circuit: &mut Circuit,
    ancilla: usize,
    sign: Option<usize>,
    frac_wires: &[usize],
) -> Result<()> {
    for (j, &wire) in frac_wires.iter().enumerate() {
        let angle = std::f64::consts::PI / (1u64 << j) as f64;
        circuit.push(Gate::cry(wire, ancilla, angle))?;
    }
    if let Some(s) = sign {
        circuit.push(Gate::cz(s, ancilla))?;
    }
    circuit.push(Gate::x(ancilla))?;
    Ok(())
}

/// Standalone cascade over `t+3` wires: ancilla, sign, then the `t+1`
/// angle digits most significant first.
pub fn build_theta_cascade(spec: &FixedPointSpec) -> Result<Circuit> {
    let digits = spec.frac_digits() as usize;
    let mut circuit = Circuit::new(2 + digits);
    circuit.set_registers(vec![
        ("ancilla".into(), 0..1),
        ("sign".into(), 1..2),
        ("digits".into(), 2..2 + digits),
    ]);
    let wires: Vec<usize> = (2..2 + digits).collect();
    push_cascade(&mut circuit, 0, Some(1), &wires)?;
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::unitary;
    use approx::assert_relative_eq;

    /// Input basis index for (sign, digit bits) with the ancilla at |0⟩.
    fn input_index(t: u32, sign: bool, bits: u64) -> usize {
        let digits = t + 1;
        ((sign as u64) << digits | bits) as usize
    }

    #[test]
    fn zero_angle_leaves_sin_amplitude_zero() {
        let spec = FixedPointSpec::new(2).unwrap();
        let c = build_theta_cascade(&spec).unwrap();
        let u = unitary(&c).unwrap();
        let col = input_index(2, false, 0);
        // sin(0) = 0 in the ancilla-|0⟩ slot; all weight on |1⟩ after the X.
        assert_relative_eq!(u[(col, col)].re, 0.0, epsilon = 1e-15);
        let one_slot = col + (1usize << (2 + 2 - 1 + 1)); // ancilla bit set
        assert_relative_eq!(u[(one_slot, col)].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn half_angle_has_unit_sin_amplitude() {
        // ϑ = 0.5 = .100 with t = 2: sin(π/2) = 1.
        let spec = FixedPointSpec::new(2).unwrap();
        let c = build_theta_cascade(&spec).unwrap();
        let u = unitary(&c).unwrap();
        let col = input_index(2, false, 0b100);
        assert_relative_eq!(u[(col, col)].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn quarter_angle_matches_lemma_amplitudes() {
        // ϑ = +0.25 (t = 2, bits .010): amplitudes sin(π/4), cos(π/4)
        // coincide, matching the published statement both before and
        // after the final X.
        let spec = FixedPointSpec::new(2).unwrap();
        let c = build_theta_cascade(&spec).unwrap();
        let u = unitary(&c).unwrap();
        let col = input_index(2, false, 0b010);
        let anc_mask = 1usize << (c.width() - 1);
        let expect = (std::f64::consts::FRAC_PI_4).sin();
        assert_relative_eq!(u[(col, col)].re, expect, max_relative = 1e-14);
        assert_relative_eq!(u[(col | anc_mask, col)].re, expect, max_relative = 1e-14);
    }

    #[test]
    fn full_grid_matches_signed_sines() {
        // Every t = 4 input ϑ = k/32 with both signs, against cos/sin.
        let t = 4u32;
        let spec = FixedPointSpec::new(t).unwrap();
        let c = build_theta_cascade(&spec).unwrap();
        let u = unitary(&c).unwrap();
        let anc_mask = 1usize << (c.width() - 1);
        for sign in [false, true] {
            for bits in 0u64..(1 << (t + 1)) {
                let frac = bits as f64 / (1u64 << (t + 1)) as f64;
                let col = input_index(t, sign, bits);
                let sg = if sign { -1.0 } else { 1.0 };
                let angle = std::f64::consts::PI * frac;
                assert_relative_eq!(u[(col, col)].re, sg * angle.sin(), epsilon = 1e-12);
                assert_relative_eq!(u[(col | anc_mask, col)].re, angle.cos(), epsilon = 1e-12);
            }
        }
    }
}
