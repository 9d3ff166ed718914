//! Plain-text netlist dump, one gate per line. Anti-controls carry a
//! `!` prefix. Angles print with 17 significant digits.

use std::fmt::Write;

use super::{Circuit, Control, GateKind};

fn ctrl_list(controls: &[Control]) -> String {
    controls
        .iter()
        .map(|c| if c.anti { format!("!q{}", c.qubit) } else { format!("q{}", c.qubit) })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn to_netlist(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# width {}", circuit.width());
    for (name, range) in circuit.registers() {
        let _ = writeln!(out, "# register {} {}..{}", name, range.start, range.end);
    }
    for gate in circuit.gates() {
        let cs = &gate.controls;
        let line = match &gate.kind {
            GateKind::H { q } => match cs.len() {
                0 => format!("H q{q}"),
                1 => format!("CH {} -> q{q}", ctrl_list(cs)),
                _ => format!("MCH {} -> q{q}", ctrl_list(cs)),
            },
            GateKind::X { q } => match cs.len() {
                0 => format!("X q{q}"),
                1 => format!("CX {} -> q{q}", ctrl_list(cs)),
                2 => format!("TOFF {} -> q{q}", ctrl_list(cs)),
                _ => format!("MCX {} -> q{q}", ctrl_list(cs)),
            },
            GateKind::Z { q } => match cs.len() {
                0 => format!("Z q{q}"),
                1 => format!("CZ {} -> q{q}", ctrl_list(cs)),
                _ => format!("MCZ {} -> q{q}", ctrl_list(cs)),
            },
            GateKind::Ry { q, theta } => match cs.len() {
                0 => format!("RY q{q} theta={theta:.16e}"),
                1 => format!("CRY {} -> q{q} theta={theta:.16e}", ctrl_list(cs)),
                _ => format!("MCRY {} -> q{q} theta={theta:.16e}", ctrl_list(cs)),
            },
            GateKind::Swap { a, b } => match cs.len() {
                0 => format!("SWAP q{a} q{b}"),
                _ => format!("CSWAP {} -> q{a} q{b}", ctrl_list(cs)),
            },
            GateKind::Perm(p) => {
                let qs =
                    p.qubits.iter().map(|q| format!("q{q}")).collect::<Vec<_>>().join(",");
                match cs.len() {
                    0 => format!("BBOX {} qs=[{qs}]", p.name),
                    _ => format!("CBBOX [{}] {} qs=[{qs}]", ctrl_list(cs), p.name),
                }
            }
            GateKind::DiagRot(d) => {
                let mut qs = vec![format!("q{}", d.target)];
                qs.extend(d.system.iter().map(|q| format!("q{q}")));
                let qs = qs.join(",");
                match cs.len() {
                    0 => format!("BBOX {} qs=[{qs}]", d.name),
                    _ => format!("CBBOX [{}] {} qs=[{qs}]", ctrl_list(cs), d.name),
                }
            }
        };
        let _ = writeln!(out, "{line}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    #[test]
    fn netlist_covers_gate_forms() {
        let mut c = Circuit::new(4);
        c.set_registers(vec![("anc".into(), 0..2), ("system".into(), 2..4)]);
        c.push(Gate::h(3)).unwrap();
        c.push(Gate::cry(0, 3, std::f64::consts::FRAC_PI_4)).unwrap();
        c.push(Gate::toffoli(0, 1, 2)).unwrap();
        c.push(Gate::x(1).anti_controlled(0)).unwrap();
        let text = to_netlist(&c);
        assert!(text.contains("# width 4"));
        assert!(text.contains("# register anc 0..2"));
        assert!(text.contains("H q3"));
        assert!(text.contains("CRY q0 -> q3 theta=7.85398163397448"));
        assert!(text.contains("TOFF q0 q1 -> q2"));
        assert!(text.contains("CX !q0 -> q1"));
    }
}
