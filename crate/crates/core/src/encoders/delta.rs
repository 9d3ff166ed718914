//! Block encoding of the difference diagonal Δ_z, built from the two
//! generators alone.
//!
//! Branch 0 encodes diag(z) as the product of the forward oracle on `v`
//! and the inverse oracle on `u`. Branch 1 does the same with the
//! shifted generators `v↓ = (0, v_0, …, v_{N−2})` and
//! `u↓ = (u_{N−1}, u_0, …, u_{N−2})`; the leading zero of `v↓` makes
//! the first shifted entry vanish, so an LCU difference leaves
//! `Δ_z = diag(z_0, z_1 − z_0, …)`. Both branches run their oracles
//! against the global `M_v` and `m_u`, which keeps their scales equal
//! as the LCU requires.

use super::diag::{
    build_diag_encoding_with, forward_entry_tolerance, inverse_entry_tolerance, DiagOracleSpec,
    WorkspaceMode,
};
use super::fixed_point::FixedPointSpec;
use super::lcu::lcu_difference;
use crate::circuit::{compose, BlockEncoding};
use crate::error::{Error, Result};
use crate::onepair::OnePairMatrix;

/// Entry-level bound of the difference-diagonal encoding,
/// `2(ε_v/m_u + M_v·ε_u)` with the per-oracle tolerances at digit
/// budget `t`.
pub fn delta_z_bound(max_v: f64, min_u: f64, t: u32) -> f64 {
    let eps_v = forward_entry_tolerance(max_v, t);
    let eps_u = inverse_entry_tolerance(min_u, t);
    2.0 * (eps_v / min_u + max_v * eps_u)
}

pub fn build_delta_z_encoding(one_pair: &OnePairMatrix, fp: FixedPointSpec) -> Result<BlockEncoding> {
    build_delta_z_encoding_with(one_pair, fp, WorkspaceMode::Freed)
}

pub fn build_delta_z_encoding_with(
    one_pair: &OnePairMatrix,
    fp: FixedPointSpec,
    mode: WorkspaceMode,
) -> Result<BlockEncoding> {
    let u = one_pair.u();
    let v = one_pair.v();
    if let Some(i) = u.iter().position(|&x| x == 0.0) {
        return Err(Error::ZeroGenerator { index: i });
    }
    let stats = one_pair.stats();
    let n = one_pair.size();

    let branch = |vv: Vec<f64>, uu: Vec<f64>, tag: &str| -> Result<BlockEncoding> {
        let dv = DiagOracleSpec::forward_capped(vv, stats.max_v, fp, &format!("v{tag}"))?;
        let du = DiagOracleSpec::inverse_capped(
            uu,
            stats.max_u,
            stats.min_u,
            fp,
            &format!("u{tag}_inv"),
        )?;
        compose(&build_diag_encoding_with(&dv, mode)?, &build_diag_encoding_with(&du, mode)?)
    };

    let plain = branch(v.to_vec(), u.to_vec(), "")?;
    let mut v_down = vec![0.0];
    v_down.extend_from_slice(&v[..n - 1]);
    let mut u_down = vec![u[n - 1]];
    u_down.extend_from_slice(&u[..n - 1]);
    let shifted = branch(v_down, u_down, "_shift")?;

    let mut be = lcu_difference(&plain, &shifted)?;
    be.eps_budget = delta_z_bound(stats.max_v, stats.min_u, fp.t);
    Ok(be)
}
