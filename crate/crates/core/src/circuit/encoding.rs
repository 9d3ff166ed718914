//! Block encodings: a circuit plus (α, m, ε) metadata, block extraction
//! by column simulation, and product composition.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{apply_in_place, Circuit, Gate};
use crate::error::{Error, Result};

/// Simulation cap for block extraction: total qubits.
pub const EXTRACT_CAP: usize = 26;

/// A unitary circuit whose top-left `N×N` block, after projecting the
/// first `m` wires onto |0…0⟩, approximates `A / alpha` within
/// `eps_budget`. Ancillas are wires `0..m`, the system register is
/// `m..m+n`.
#[derive(Debug, Clone)]
pub struct BlockEncoding {
    pub circuit: Circuit,
    /// System qubits.
    pub n: usize,
    /// Persistent ancilla count.
    pub m: usize,
    /// Scale factor: the block stores `A / alpha`.
    pub alpha: f64,
    /// Analytic bound on `‖A − α·block‖₂`.
    pub eps_budget: f64,
}

impl BlockEncoding {
    pub fn new(circuit: Circuit, n: usize, m: usize, alpha: f64, eps_budget: f64) -> Result<Self> {
        if circuit.width() != n + m {
            return Err(Error::DimensionMismatch { expected: n + m, got: circuit.width() });
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidConfig(format!("scale must be positive, got {alpha}")));
        }
        if eps_budget < 0.0 || !eps_budget.is_finite() {
            return Err(Error::InvalidConfig(format!("bad error budget {eps_budget}")));
        }
        Ok(BlockEncoding { circuit, n, m, alpha, eps_budget })
    }

    pub fn size(&self) -> usize {
        1usize << self.n
    }
}

/// Trivial (1, 0)-encoding of the identity. Useful as a composition unit.
pub fn identity_encoding(n: usize) -> BlockEncoding {
    let mut circuit = Circuit::new(n);
    circuit.set_registers(vec![("system".into(), 0..n)]);
    BlockEncoding { circuit, n, m: 0, alpha: 1.0, eps_budget: 0.0 }
}

/// Read the encoded block: simulate each column |0^m⟩|j⟩ and collect the
/// amplitudes of |0^m⟩|i⟩. All of our gates are real, so imaginary
/// residue above 1e-12 is a bug and reported as such. Columns run in
/// parallel, each on its own statevector.
pub fn extract_block(be: &BlockEncoding) -> Result<DMatrix<f64>> {
    let width = be.n + be.m;
    if width > EXTRACT_CAP {
        return Err(Error::ResourceLimit { qubits: width, max: EXTRACT_CAP });
    }
    let n = be.size();
    let len = 1usize << width;
    let columns: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|j| -> Result<Vec<f64>> {
            let mut state = vec![Complex64::new(0.0, 0.0); len];
            // Ancillas are the high bits, so |0^m⟩|j⟩ has index j.
            state[j] = Complex64::new(1.0, 0.0);
            let mut scratch = Vec::new();
            apply_in_place(&be.circuit, &mut state, &mut scratch)?;
            let mut col = Vec::with_capacity(n);
            for amp in state.iter().take(n) {
                if amp.im.abs() > 1e-12 {
                    return Err(Error::ComplexLeak { imag: amp.im });
                }
                col.push(amp.re);
            }
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DMatrix::from_fn(n, n, |i, j| columns[j][i]))
}

/// Product of two encodings: `first` runs first, `second` after it, so
/// the result encodes `A·B` when `second` encodes `A` and `first`
/// encodes `B`. Metadata follows the product rule
/// `(αβ, a+b, α·ε_B + β·ε_A)`.
///
/// Layout: `second`'s ancillas end on wires `0..a`, `first`'s on
/// `a..a+b`. `first` runs on the ancilla wires adjacent to the system;
/// swap gates then park its outputs in the fresh top block so `second`
/// finds zeroed ancillas in the adjacent slots.
pub fn compose(first: &BlockEncoding, second: &BlockEncoding) -> Result<BlockEncoding> {
    if first.n != second.n {
        return Err(Error::SystemSizeMismatch { left: first.n, right: second.n });
    }
    let n = first.n;
    let (a, b) = (second.m, first.m);
    let width = a + b + n;
    let mut circuit = Circuit::new(width);
    circuit.set_registers(vec![("anc".into(), 0..a + b), ("system".into(), a + b..width)]);
    circuit.append_shifted(&first.circuit, a)?;
    for i in 0..a.min(b) {
        circuit.push(Gate::swap(i, a.max(b) + i))?;
    }
    circuit.append_shifted(&second.circuit, b)?;
    BlockEncoding::new(
        circuit,
        n,
        a + b,
        second.alpha * first.alpha,
        second.alpha * first.eps_budget + first.alpha * second.eps_budget,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn identity_extracts_identity() {
        let be = identity_encoding(2);
        let block = extract_block(&be).unwrap();
        assert_eq!(block, DMatrix::identity(4, 4));
    }

    #[test]
    fn compose_identities_is_identity() {
        let be = compose(&identity_encoding(2), &identity_encoding(2)).unwrap();
        assert_eq!(be.alpha, 1.0);
        assert_eq!(be.m, 0);
        let block = extract_block(&be).unwrap();
        assert_eq!(block, DMatrix::identity(4, 4));
    }

    #[test]
    fn compose_rejects_mismatched_systems() {
        assert!(compose(&identity_encoding(1), &identity_encoding(2)).is_err());
    }

    #[test]
    fn three_factor_metadata_follows_product_rule() {
        // Single-ancilla factors with distinct scales and budgets.
        let enc = |alpha: f64, eps: f64| {
            let mut c = Circuit::new(2);
            c.push(Gate::h(0)).unwrap();
            c.push(Gate::h(0)).unwrap();
            BlockEncoding::new(c, 1, 1, alpha, eps).unwrap()
        };
        let (a, b, c) = (enc(2.0, 1e-3), enc(3.0, 1e-4), enc(5.0, 1e-5));
        // Chain encodes A · B · C with C applied first.
        let cb = compose(&c, &b).unwrap();
        let cba = compose(&cb, &a).unwrap();
        assert_eq!(cba.m, 3);
        assert_relative_eq!(cba.alpha, 30.0);
        let expected = 2.0 * 3.0 * 1e-5 + 2.0 * 5.0 * 1e-4 + 3.0 * 5.0 * 1e-3;
        assert_relative_eq!(cba.eps_budget, expected, max_relative = 1e-12);
    }

    #[test]
    fn block_encoding_validates_metadata() {
        let c = Circuit::new(3);
        assert!(BlockEncoding::new(c.clone(), 2, 2, 1.0, 0.0).is_err());
        assert!(BlockEncoding::new(c.clone(), 2, 1, 0.0, 0.0).is_err());
        assert!(BlockEncoding::new(c, 2, 1, 1.0, -1.0).is_err());
    }
}
