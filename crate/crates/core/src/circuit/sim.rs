//! Statevector kernels. Amplitudes live in one dense `Vec<Complex64>`;
//! each gate walks the vector once with stride arithmetic and controlled
//! gates skip non-matching amplitude blocks.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Circuit, Control, Gate, GateKind};
use crate::error::{Error, Result};

const UNITARY_CAP: usize = 14;

/// |index⟩ over `width` qubits, qubit 0 = most significant bit.
pub fn basis_state(width: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << width];
    v[index] = Complex64::new(1.0, 0.0);
    v
}

#[inline]
fn bit_mask(width: usize, qubit: usize) -> usize {
    1usize << (width - 1 - qubit)
}

fn control_masks(width: usize, controls: &[Control]) -> (usize, usize) {
    let mut mask = 0usize;
    let mut val = 0usize;
    for c in controls {
        let m = bit_mask(width, c.qubit);
        mask |= m;
        if !c.anti {
            val |= m;
        }
    }
    (mask, val)
}

/// Apply one gate in place. `scratch` must have the same length as
/// `state`; only permutation boxes use it.
fn apply_gate(gate: &Gate, width: usize, state: &mut Vec<Complex64>, scratch: &mut Vec<Complex64>) {
    let (cmask, cval) = control_masks(width, &gate.controls);
    let len = state.len();
    match &gate.kind {
        GateKind::H { q } => {
            let t = bit_mask(width, *q);
            let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
            for s in 0..len {
                if s & t == 0 && s & cmask == cval {
                    let a = state[s];
                    let b = state[s | t];
                    state[s] = (a + b) * inv_sqrt2;
                    state[s | t] = (a - b) * inv_sqrt2;
                }
            }
        }
        GateKind::X { q } => {
            let t = bit_mask(width, *q);
            for s in 0..len {
                if s & t == 0 && s & cmask == cval {
                    state.swap(s, s | t);
                }
            }
        }
        GateKind::Z { q } => {
            let t = bit_mask(width, *q);
            for s in 0..len {
                if s & t != 0 && s & cmask == cval {
                    state[s] = -state[s];
                }
            }
        }
        GateKind::Ry { q, theta } => {
            let t = bit_mask(width, *q);
            let (sn, cs) = (theta / 2.0).sin_cos();
            for s in 0..len {
                if s & t == 0 && s & cmask == cval {
                    let a = state[s];
                    let b = state[s | t];
                    state[s] = a * cs - b * sn;
                    state[s | t] = a * sn + b * cs;
                }
            }
        }
        GateKind::Swap { a, b } => {
            let ma = bit_mask(width, *a);
            let mb = bit_mask(width, *b);
            for s in 0..len {
                if s & ma != 0 && s & mb == 0 && s & cmask == cval {
                    state.swap(s, s ^ ma ^ mb);
                }
            }
        }
        GateKind::Perm(p) => {
            let positions: Vec<usize> = p.qubits.iter().map(|&q| bit_mask(width, q)).collect();
            scratch.copy_from_slice(state);
            for s in 0..len {
                if s & cmask == cval {
                    let mut local = 0u64;
                    for &m in &positions {
                        local = (local << 1) | ((s & m != 0) as u64);
                    }
                    let mapped = (p.eval)(local);
                    let mut d = s;
                    for (k, &m) in positions.iter().enumerate() {
                        let bit = (mapped >> (positions.len() - 1 - k)) & 1;
                        if bit == 1 {
                            d |= m;
                        } else {
                            d &= !m;
                        }
                    }
                    scratch[d] = state[s];
                }
            }
            std::mem::swap(state, scratch);
        }
        GateKind::DiagRot(d) => {
            let t = bit_mask(width, d.target);
            let positions: Vec<usize> = d.system.iter().map(|&q| bit_mask(width, q)).collect();
            let table = d.sin_cos.as_slice();
            let signs = d.signs.as_slice();
            for s in 0..len {
                if s & t == 0 && s & cmask == cval {
                    let mut i = 0usize;
                    for &m in &positions {
                        i = (i << 1) | ((s & m != 0) as usize);
                    }
                    let (sn, cs) = table[i];
                    let sg = signs[i];
                    let a0 = state[s];
                    let a1 = state[s | t];
                    state[s] = (a0 * sn + a1 * cs) * sg;
                    state[s | t] = a0 * cs - a1 * sn;
                }
            }
        }
    }
}

/// In-place circuit application with a caller-owned scratch buffer, so
/// column sweeps can reuse allocations.
pub fn apply_in_place(
    circuit: &Circuit,
    state: &mut Vec<Complex64>,
    scratch: &mut Vec<Complex64>,
) -> Result<()> {
    let len = 1usize << circuit.width();
    if state.len() != len {
        return Err(Error::DimensionMismatch { expected: len, got: state.len() });
    }
    scratch.resize(len, Complex64::new(0.0, 0.0));
    for gate in circuit.gates() {
        apply_gate(gate, circuit.width(), state, scratch);
    }
    Ok(())
}

/// `U · state` with gates applied left to right as drawn.
pub fn apply(circuit: &Circuit, state: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = state.to_vec();
    let mut scratch = Vec::new();
    apply_in_place(circuit, &mut out, &mut scratch)?;
    Ok(out)
}

/// Dense circuit unitary, column `j` = `apply(circuit, |j⟩)`.
pub fn unitary(circuit: &Circuit) -> Result<DMatrix<Complex64>> {
    let w = circuit.width();
    if w > UNITARY_CAP {
        return Err(Error::WidthTooLarge { width: w, max: UNITARY_CAP });
    }
    let dim = 1usize << w;
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    let mut scratch = Vec::new();
    let mut col = Vec::new();
    for j in 0..dim {
        col.clear();
        col.resize(dim, Complex64::new(0.0, 0.0));
        col[j] = Complex64::new(1.0, 0.0);
        apply_in_place(circuit, &mut col, &mut scratch)?;
        for i in 0..dim {
            m[(i, j)] = col[i];
        }
    }
    Ok(m)
}
