//! Gate-level circuit IR and statevector simulator.
//!
//! Qubit 0 is the top wire of a diagram and the most significant bit of
//! the basis-state index, so the top-left block of a unitary is read
//! directly from the leading amplitudes. Gates apply left to right as
//! drawn.

mod encoding;
mod netlist;
mod sim;

pub use encoding::{compose, extract_block, identity_encoding, BlockEncoding};
pub use netlist::to_netlist;
pub use sim::{apply, apply_in_place, basis_state, unitary};

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Classical bijection over the computational basis of a wire subset.
/// Oracles (value tables, arcsin tables, index arithmetic) enter the
/// simulator through this without ever being expanded to a dense matrix.
#[derive(Clone)]
pub struct PermBox {
    pub name: String,
    /// Wires the box acts on, most significant local bit first.
    pub qubits: Vec<usize>,
    pub eval: Arc<dyn Fn(u64) -> u64 + Send + Sync>,
    /// True when eval is its own inverse; required for dagger support.
    pub involution: bool,
}

impl PermBox {
    /// Check bijectivity by enumeration. Feasible for small boxes only;
    /// larger oracles are exercised through the unitarity tests.
    pub fn validate_bijective(&self) -> Result<()> {
        let w = self.qubits.len();
        if w > 20 {
            return Ok(());
        }
        let size = 1u64 << w;
        let mut seen = vec![false; size as usize];
        for x in 0..size {
            let y = (self.eval)(x);
            if y >= size {
                return Err(Error::InvalidGate(format!(
                    "black box {} maps {x} out of range",
                    self.name
                )));
            }
            if seen[y as usize] {
                return Err(Error::InvalidGate(format!(
                    "black box {} is not a bijection (collision at {y})",
                    self.name
                )));
            }
            seen[y as usize] = true;
        }
        if self.involution {
            for x in 0..size {
                if (self.eval)((self.eval)(x)) != x {
                    return Err(Error::InvalidGate(format!(
                        "black box {} claims to be an involution but is not",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PermBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermBox").field("name", &self.name).field("qubits", &self.qubits).finish()
    }
}

/// One rotation per system basis state, applied to a single target
/// qubit: for basis value `i` the target sees
/// `[[s·sinθ, s·cosθ], [cosθ, −sinθ]]` with `s = ±1`. This is the
/// compiled form of a diagonal-oracle stage (value oracle, arcsin
/// oracle, rotation cascade, uncompute) whose working register starts
/// and ends in |0…0⟩ exactly.
#[derive(Clone)]
pub struct DiagRotBox {
    pub name: String,
    pub target: usize,
    /// Wires carrying the basis value, most significant first.
    pub system: Vec<usize>,
    /// (sinθ_i, cosθ_i) per basis value.
    pub sin_cos: Arc<Vec<(f64, f64)>>,
    /// ±1 per basis value.
    pub signs: Arc<Vec<f64>>,
}

impl fmt::Debug for DiagRotBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiagRotBox")
            .field("name", &self.name)
            .field("target", &self.target)
            .field("system", &self.system)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum GateKind {
    H { q: usize },
    X { q: usize },
    Z { q: usize },
    Ry { q: usize, theta: f64 },
    Swap { a: usize, b: usize },
    Perm(PermBox),
    DiagRot(DiagRotBox),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    /// Anti-controls fire on |0⟩.
    pub anti: bool,
}

#[derive(Debug, Clone)]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn h(q: usize) -> Self {
        Gate { kind: GateKind::H { q }, controls: vec![] }
    }
    pub fn x(q: usize) -> Self {
        Gate { kind: GateKind::X { q }, controls: vec![] }
    }
    pub fn z(q: usize) -> Self {
        Gate { kind: GateKind::Z { q }, controls: vec![] }
    }
    pub fn ry(q: usize, theta: f64) -> Self {
        Gate { kind: GateKind::Ry { q, theta }, controls: vec![] }
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Gate { kind: GateKind::Swap { a, b }, controls: vec![] }
    }
    pub fn cx(c: usize, t: usize) -> Self {
        Gate::x(t).controlled(c)
    }
    pub fn cz(c: usize, t: usize) -> Self {
        Gate::z(t).controlled(c)
    }
    pub fn cry(c: usize, t: usize, theta: f64) -> Self {
        Gate::ry(t, theta).controlled(c)
    }
    pub fn toffoli(c0: usize, c1: usize, t: usize) -> Self {
        Gate::x(t).controlled(c0).controlled(c1)
    }
    pub fn mcx(controls: &[usize], t: usize) -> Self {
        let mut g = Gate::x(t);
        for &c in controls {
            g = g.controlled(c);
        }
        g
    }
    pub fn cswap(c: usize, a: usize, b: usize) -> Self {
        Gate::swap(a, b).controlled(c)
    }
    pub fn perm(b: PermBox) -> Self {
        Gate { kind: GateKind::Perm(b), controls: vec![] }
    }
    pub fn diag_rot(b: DiagRotBox) -> Self {
        Gate { kind: GateKind::DiagRot(b), controls: vec![] }
    }

    pub fn controlled(mut self, q: usize) -> Self {
        self.controls.push(Control { qubit: q, anti: false });
        self
    }

    pub fn anti_controlled(mut self, q: usize) -> Self {
        self.controls.push(Control { qubit: q, anti: true });
        self
    }

    /// All wires the gate touches, targets first.
    pub fn qubits(&self) -> Vec<usize> {
        let mut qs = match &self.kind {
            GateKind::H { q } | GateKind::X { q } | GateKind::Z { q } | GateKind::Ry { q, .. } => {
                vec![*q]
            }
            GateKind::Swap { a, b } => vec![*a, *b],
            GateKind::Perm(p) => p.qubits.clone(),
            GateKind::DiagRot(d) => {
                let mut v = vec![d.target];
                v.extend_from_slice(&d.system);
                v
            }
        };
        qs.extend(self.controls.iter().map(|c| c.qubit));
        qs
    }

    /// Same gate on wires shifted by `delta`.
    pub fn shifted(&self, delta: usize) -> Gate {
        let kind = match &self.kind {
            GateKind::H { q } => GateKind::H { q: q + delta },
            GateKind::X { q } => GateKind::X { q: q + delta },
            GateKind::Z { q } => GateKind::Z { q: q + delta },
            GateKind::Ry { q, theta } => GateKind::Ry { q: q + delta, theta: *theta },
            GateKind::Swap { a, b } => GateKind::Swap { a: a + delta, b: b + delta },
            GateKind::Perm(p) => GateKind::Perm(PermBox {
                name: p.name.clone(),
                qubits: p.qubits.iter().map(|q| q + delta).collect(),
                eval: p.eval.clone(),
                involution: p.involution,
            }),
            GateKind::DiagRot(d) => GateKind::DiagRot(DiagRotBox {
                name: d.name.clone(),
                target: d.target + delta,
                system: d.system.iter().map(|q| q + delta).collect(),
                sin_cos: d.sin_cos.clone(),
                signs: d.signs.clone(),
            }),
        };
        Gate {
            kind,
            controls: self
                .controls
                .iter()
                .map(|c| Control { qubit: c.qubit + delta, anti: c.anti })
                .collect(),
        }
    }

    pub fn dagger(&self) -> Result<Gate> {
        let kind = match &self.kind {
            GateKind::Ry { q, theta } => GateKind::Ry { q: *q, theta: -theta },
            GateKind::Perm(p) => {
                if !p.involution {
                    return Err(Error::InvalidGate(format!(
                        "cannot invert non-involutive black box {}",
                        p.name
                    )));
                }
                self.kind.clone()
            }
            GateKind::DiagRot(d) => {
                return Err(Error::InvalidGate(format!(
                    "cannot invert rotation-family box {}",
                    d.name
                )));
            }
            other => other.clone(),
        };
        Ok(Gate { kind, controls: self.controls.clone() })
    }
}

/// Ordered gate list over a fixed number of wires, with named register
/// ranges for bookkeeping and netlist dumps.
#[derive(Debug, Clone)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    registers: Vec<(String, Range<usize>)>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit { width, gates: Vec::new(), registers: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn registers(&self) -> &[(String, Range<usize>)] {
        &self.registers
    }

    pub fn set_registers(&mut self, regs: Vec<(String, Range<usize>)>) {
        self.registers = regs;
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        for &q in &qs {
            if q >= self.width {
                return Err(Error::InvalidGate(format!(
                    "qubit {q} out of range for width {}",
                    self.width
                )));
            }
        }
        let mut sorted = qs.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGate(format!("duplicate qubit in gate {:?}", gate.kind)));
        }
        if let GateKind::Ry { theta, .. } = gate.kind {
            if !theta.is_finite() {
                return Err(Error::InvalidGate("non-finite rotation angle".into()));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Gate list reversed with every gate inverted; realizes U†, and for
    /// real circuits the transpose.
    pub fn reversed_dagger(&self) -> Result<Circuit> {
        let mut out = Circuit::new(self.width);
        out.registers = self.registers.clone();
        for g in self.gates.iter().rev() {
            out.gates.push(g.dagger()?);
        }
        Ok(out)
    }

    /// Append another circuit with all its wires shifted by `delta`.
    pub fn append_shifted(&mut self, other: &Circuit, delta: usize) -> Result<()> {
        for g in other.gates() {
            self.push(g.shifted(delta))?;
        }
        Ok(())
    }
}
