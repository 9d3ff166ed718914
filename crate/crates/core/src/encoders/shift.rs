//! Cyclic increment circuits: `x → x+1 mod 2^width` as a cascade of
//! multi-controlled X gates. With qubit 0 the most significant bit,
//! each target is controlled on every less significant wire.

use crate::circuit::{Circuit, Gate};
use crate::error::Result;

/// Append the increment on `wires` (most significant first), with an
/// optional extra control wire.
pub(crate) fn push_increment(
    circuit: &mut Circuit,
    wires: &[usize],
    control: Option<usize>,
) -> Result<()> {
    let w = wires.len();
    for k in 0..w {
        let mut controls: Vec<usize> = wires[k + 1..].to_vec();
        if let Some(c) = control {
            controls.push(c);
        }
        circuit.push(Gate::mcx(&controls, wires[k]))?;
    }
    Ok(())
}

/// Standalone downshift circuit: permutes |x⟩ → |x+1 mod 2^width⟩.
pub fn build_shift_circuit(width: u32) -> Result<Circuit> {
    let mut circuit = Circuit::new(width as usize);
    circuit.set_registers(vec![("register".into(), 0..width as usize)]);
    let wires: Vec<usize> = (0..width as usize).collect();
    push_increment(&mut circuit, &wires, None)?;
    Ok(circuit)
}
