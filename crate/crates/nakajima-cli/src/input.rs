//! Reading instances, modules and dimension vectors from JSON files.
//!
//! An instance file (`--algebra`) holds the three quiver-core documents together:
//!
//! ```json
//! { "quiver": { "type": "A", "rank": 2, "arrows": [[1, 2]] },
//!   "auto": { "tau": 1, "sigma_shift": 0 },
//!   "config": "all",
//!   "bound": 9 }
//! ```
//!
//! `bound` is optional. A dimension vector is either a list in object order or an
//! object keyed by object labels (missing labels count as 0).

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use nakajima::field::Field;
use nakajima::orbitcat::Nakajima;
use nakajima::present::Presentation;
use nakajima::quiver::{AutoSpec, Configuration, DynkinQuiver, FramedRepetition};
use nakajima::repmod::Module;
use nakajima::schema::{config_from_json, AutoJson, QuiverJson};
use serde_json::Value;

use crate::error::CliError;

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[derive(Args, Clone, Debug, Default)]
pub struct InstanceArgs {
    /// Instance file holding quiver, automorphism and configuration.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    #[arg(long)]
    pub quiver: Option<PathBuf>,
    /// Automorphism file; defaults to τ.
    #[arg(long)]
    pub auto: Option<PathBuf>,
    /// Configuration file; defaults to all vertices.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Degree bound for presentations over S.
    #[arg(long)]
    pub bound: Option<u32>,
}

pub struct Instance {
    pub quiver: DynkinQuiver,
    pub auto: AutoSpec,
    pub config: Configuration,
    pub bound: Option<u32>,
}

fn quiver_from(v: &Value) -> Result<DynkinQuiver, CliError> {
    let q: QuiverJson = serde_json::from_value(v.clone()).map_err(|e| CliError::Input(format!("quiver: {e}")))?;
    Ok(q.to_quiver()?)
}

fn auto_from(v: &Value) -> Result<AutoSpec, CliError> {
    let f: AutoJson = serde_json::from_value(v.clone()).map_err(|e| CliError::Input(format!("automorphism: {e}")))?;
    Ok(f.to_spec()?)
}

impl InstanceArgs {
    pub fn load(&self) -> Result<Instance, CliError> {
        let bundle = self.algebra.as_deref().map(read_json).transpose()?;
        let part = |key: &str, file: &Option<PathBuf>| -> Result<Option<Value>, CliError> {
            match file {
                Some(p) => read_json(p).map(Some),
                None => Ok(bundle.as_ref().and_then(|b| b.get(key).cloned())),
            }
        };
        let quiver = part("quiver", &self.quiver)?.ok_or_else(|| CliError::Input("no quiver given (use --quiver or --algebra)".into()))?;
        let quiver = quiver_from(&quiver)?;
        let auto = part("auto", &self.auto)?.map(|v| auto_from(&v)).transpose()?.unwrap_or_else(AutoSpec::tau);
        let config = part("config", &self.config)?.map(|v| config_from_json(&v)).transpose()?.unwrap_or(Configuration::All);
        let bound = self.bound.or_else(|| bundle.as_ref().and_then(|b| b.get("bound")).and_then(Value::as_u64).map(|b| b as u32));
        Ok(Instance { quiver, auto, config, bound })
    }
}

impl Instance {
    pub fn framed(&self) -> Result<FramedRepetition, CliError> {
        Ok(FramedRepetition::new(self.quiver.clone(), self.auto.clone(), self.config.clone())?)
    }

    pub fn build<F: Field>(&self) -> Result<Nakajima<F>, CliError> {
        Ok(Nakajima::build(self.framed()?, self.bound)?)
    }
}

pub fn load_module<F: Field>(pres: &Arc<Presentation<F>>, path: &Path) -> Result<Module<F>, CliError> {
    Ok(Module::from_json(pres.clone(), &read_json(path)?)?)
}

/// A dimension vector over the objects of `pres`.
pub fn load_vector<F: Field>(pres: &Presentation<F>, path: &Path) -> Result<Vec<usize>, CliError> {
    parse_vector(pres, &read_json(path)?)
}

pub fn parse_vector<F: Field>(pres: &Presentation<F>, v: &Value) -> Result<Vec<usize>, CliError> {
    let objs = pres.cat.objects();
    let entry = |x: &Value| x.as_u64().map(|n| n as usize).ok_or_else(|| CliError::Input(format!("{x} is not a non-negative integer")));
    match v {
        Value::Array(list) => {
            if list.len() != objs.len() {
                return Err(CliError::Input(format!("vector of length {} for {} objects", list.len(), objs.len())));
            }
            list.iter().map(entry).collect()
        }
        Value::Object(map) => {
            let mut out = vec![0; objs.len()];
            for (k, x) in map {
                let i = objs.iter().position(|o| &o.label == k).ok_or_else(|| CliError::Input(format!("unknown object {k}")))?;
                out[i] = entry(x)?;
            }
            Ok(out)
        }
        _ => Err(CliError::Input("a dimension vector is a list or an object".into())),
    }
}
