//! Exact block encoding of the unit lower-triangular all-ones matrix.
//!
//! A Hadamard layer on the first `n` wires prepares the uniform column,
//! a block-diagonal cascade of controlled increments shifts it, and a
//! closing Hadamard layer projects out `L/N`. The shift register spans
//! one overflow wire plus the system register; its overflow bit
//! produces the zeros above the diagonal. The construction is exact:
//! the encoding error is zero.

use super::shift::push_increment;
use crate::circuit::{BlockEncoding, Circuit, Gate};
use crate::error::Result;

/// `(N, n+1, 0)` encoding of `L`. Wires: `0..n` prepare register,
/// `n` overflow, `n+1..2n+1` system.
pub fn build_l_encoding(n: u32) -> Result<BlockEncoding> {
    let n = n as usize;
    let width = 2 * n + 1;
    let mut circuit = Circuit::new(width);
    circuit.set_registers(vec![("anc".into(), 0..n + 1), ("system".into(), n + 1..width)]);
    for q in 0..n {
        circuit.push(Gate::h(q))?;
    }
    // Prepare-register wire j carries bit 2^{n-1-j} of the shift count k;
    // Z_{2N}^{2^p} = increment on the top n+1-p wires of the shift
    // register. Emitted bottom wire first, matching the drawn cascade.
    for j in (0..n).rev() {
        let power = n - 1 - j;
        let wires: Vec<usize> = (n..n + (n + 1 - power)).collect();
        push_increment(&mut circuit, &wires, Some(j))?;
    }
    for q in 0..n {
        circuit.push(Gate::h(q))?;
    }
    BlockEncoding::new(circuit, n, n + 1, (1u64 << n) as f64, 0.0)
}
