//! Uniform-weight linear combination of two block encodings. One fresh
//! ancilla in a Hadamard frame selects between the branch circuits;
//! the closing X turns the sum into a difference. The branches must
//! share system size, ancilla count and scale; the combined encoding
//! is `(Â ± B̂)/2` at scale `2α`.

use crate::circuit::{BlockEncoding, Circuit, Gate};
use crate::error::{Error, Result};

fn lcu_combine(a: &BlockEncoding, b: &BlockEncoding, difference: bool) -> Result<BlockEncoding> {
    if a.n != b.n {
        return Err(Error::SystemSizeMismatch { left: a.n, right: b.n });
    }
    if a.m != b.m {
        return Err(Error::AncillaMismatch { left: a.m, right: b.m });
    }
    let scale = a.alpha.max(b.alpha).max(1.0);
    if (a.alpha - b.alpha).abs() > 1e-12 * scale {
        return Err(Error::ScaleMismatch { left: a.alpha, right: b.alpha });
    }
    let width = 1 + a.m + a.n;
    let mut circuit = Circuit::new(width);
    circuit.set_registers(vec![("anc".into(), 0..1 + a.m), ("system".into(), 1 + a.m..width)]);
    circuit.push(Gate::h(0))?;
    for g in a.circuit.gates() {
        circuit.push(g.shifted(1).anti_controlled(0))?;
    }
    for g in b.circuit.gates() {
        circuit.push(g.shifted(1).controlled(0))?;
    }
    circuit.push(Gate::h(0))?;
    if difference {
        circuit.push(Gate::x(0))?;
    }
    BlockEncoding::new(circuit, a.n, a.m + 1, 2.0 * a.alpha, a.eps_budget + b.eps_budget)
}

/// Encodes `(A − B) / (2α)`; `a` is the minuend.
pub fn lcu_difference(a: &BlockEncoding, b: &BlockEncoding) -> Result<BlockEncoding> {
    lcu_combine(a, b, true)
}

/// Encodes `(A + B) / (2α)`.
pub fn lcu_sum(a: &BlockEncoding, b: &BlockEncoding) -> Result<BlockEncoding> {
    lcu_combine(a, b, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::extract_block;
    use crate::encoders::{build_diag_encoding, DiagOracleSpec, FixedPointSpec};

    fn diag_enc(entries: Vec<f64>, cap: f64) -> BlockEncoding {
        let fp = FixedPointSpec::new(8).unwrap();
        build_diag_encoding(&DiagOracleSpec::forward_capped(entries, cap, fp, "d").unwrap())
            .unwrap()
    }

    #[test]
    fn difference_of_equal_branches_is_zero() {
        let a = diag_enc(vec![0.8, -0.4, 0.1, 0.9], 1.0);
        let b = diag_enc(vec![0.8, -0.4, 0.1, 0.9], 1.0);
        let be = lcu_difference(&a, &b).unwrap();
        assert_eq!(be.m, 2);
        let block = extract_block(&be).unwrap();
        assert!(block.amax() <= 1e-14);
    }

    #[test]
    fn sum_averages_the_blocks() {
        let a = diag_enc(vec![0.8, -0.4, 0.1, 0.9], 1.0);
        let b = diag_enc(vec![0.2, 0.5, -0.6, 0.3], 1.0);
        let ba = extract_block(&a).unwrap();
        let bb = extract_block(&b).unwrap();
        let be = lcu_sum(&a, &b).unwrap();
        let block = extract_block(&be).unwrap();
        assert!((block - (ba + bb) / 2.0).amax() <= 1e-13);
    }

    #[test]
    fn difference_subtracts_the_blocks() {
        let a = diag_enc(vec![0.8, -0.4, 0.1, 0.9], 1.0);
        let b = diag_enc(vec![0.2, 0.5, -0.6, 0.3], 1.0);
        let ba = extract_block(&a).unwrap();
        let bb = extract_block(&b).unwrap();
        let be = lcu_difference(&a, &b).unwrap();
        let block = extract_block(&be).unwrap();
        assert!((block - (ba - bb) / 2.0).amax() <= 1e-13);
    }

    #[test]
    fn rejects_scale_mismatch() {
        let a = diag_enc(vec![0.8, -0.4, 0.1, 0.9], 1.0);
        let b = diag_enc(vec![0.2, 0.5, -0.6, 0.3], 2.0);
        assert!(matches!(lcu_difference(&a, &b), Err(Error::ScaleMismatch { .. })));
    }
}
