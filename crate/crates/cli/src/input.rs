//! Reading functors from files or from the built-in fixtures.

use std::path::Path;

use anyhow::Context;
use clap::Args;
use mackey_core::mackey::{burnside, constant_z, dual_z, from_json, CyclicGroupSpec, MackeyFunctor};

use crate::Failure;

pub const BUILTINS: [&str; 3] = ["burnside", "constant_Z", "dual_Z"];

/// `--p` and `--n`; for built-in fixtures and sphere literals they default to `C_2`.
#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// the prime p of G = C_{p^n}
    #[arg(long)]
    pub p: Option<u64>,
    /// the exponent n of G = C_{p^n}
    #[arg(long)]
    pub n: Option<usize>,
}

impl GroupArgs {
    pub fn spec(&self) -> Result<CyclicGroupSpec, Failure> {
        CyclicGroupSpec::new(self.p.unwrap_or(2), self.n.unwrap_or(1)).map_err(Failure::input)
    }

    fn check_against(&self, spec: CyclicGroupSpec, source: &str) -> Result<(), Failure> {
        let p_ok = self.p.is_none_or(|p| p == spec.p());
        let n_ok = self.n.is_none_or(|n| n == spec.n());
        if p_ok && n_ok {
            Ok(())
        } else {
            Err(Failure::input(anyhow::anyhow!("{source} is over {spec}, which contradicts --p/--n")))
        }
    }
}

pub fn read_file(path: &str) -> Result<MackeyFunctor, Failure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}")).map_err(Failure::input)?;
    from_json(&text).with_context(|| format!("in {path}")).map_err(Failure::input)
}

pub fn is_builtin(source: &str) -> bool {
    BUILTINS.contains(&source) && !Path::new(source).exists()
}

/// A file path, or a built-in name when no file of that name exists.
pub fn load(source: &str, group: &GroupArgs) -> Result<MackeyFunctor, Failure> {
    load_near(source, group, None)
}

/// Like [`load`], but built-ins without `--p`/`--n` take the group of `near`.
pub fn load_near(source: &str, group: &GroupArgs, near: Option<CyclicGroupSpec>) -> Result<MackeyFunctor, Failure> {
    if is_builtin(source) {
        let spec = match near {
            Some(s) if group.p.is_none() && group.n.is_none() => s,
            _ => group.spec()?,
        };
        return Ok(match source {
            "burnside" => burnside(spec),
            "constant_Z" => constant_z(spec),
            _ => dual_z(spec),
        });
    }
    let m = read_file(source)?;
    group.check_against(m.spec(), source)?;
    Ok(m)
}
