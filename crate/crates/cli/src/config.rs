//! Flag and config-file handling. Every option may come from a TOML file
//! given with `--config`; flags win over the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use eqcdj::analysis::PartnerSizes;
use eqcdj::decoherence::Method;
use eqcdj::method2::recommended_params;
use eqcdj::{BooleanOracle, Caps, EnsembleDims, OracleClass, OracleParams};
use serde::Deserialize;

use crate::CliError;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_251_014;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CurveArg {
    /// Overlap probability p^(m).
    P,
    /// Error probability ε^(m).
    Eps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PartnersArg {
    Equal,
    OddNeighbour,
    Envelope,
}

impl From<PartnersArg> for PartnerSizes {
    fn from(p: PartnersArg) -> Self {
        match p {
            PartnersArg::Equal => PartnerSizes::Equal,
            PartnersArg::OddNeighbour => PartnerSizes::OddNeighbour,
            PartnersArg::Envelope => PartnerSizes::Envelope,
        }
    }
}

/// Options shared by all subcommands.
#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    /// TOML file with any of the options below (flags take precedence).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Truth table as a string of 2^M characters in {0,1}.
    #[arg(long, global = true)]
    pub oracle: Option<String>,
    /// File holding a truth table.
    #[arg(long, global = true)]
    pub oracle_file: Option<PathBuf>,
    /// Named oracle: f1..f6 or m3-entangled.
    #[arg(long, global = true)]
    pub preset: Option<String>,

    /// Number of x-register ensembles (curve order for `curves`/`fit`).
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Particles per x ensemble; repeat per ensemble or give once for all.
    #[arg(long, global = true)]
    pub n: Option<Vec<usize>>,
    /// Particles in the y-ensemble (defaults to the first --n).
    #[arg(long, global = true)]
    pub n0: Option<usize>,
    /// Encoding: 1 (parity) or 2 (coherent state).
    #[arg(long, global = true)]
    pub method: Option<u8>,
    /// `zero`, `recommended`, or a TOML file with `j`, `j-const`, `f1-multiplier`.
    #[arg(long, global = true)]
    pub params: Option<String>,

    /// τ grid as start:stop:count or a comma list.
    #[arg(long, global = true)]
    pub tau_grid: Option<String>,
    /// Comma-separated list of N.
    #[arg(long, global = true)]
    pub n_grid: Option<String>,
    /// Γt grid as start:stop:count or a comma list.
    #[arg(long, global = true)]
    pub gamma_t_grid: Option<String>,

    /// Curve family for `curves`.
    #[arg(long, value_enum, global = true)]
    pub kind: Option<CurveArg>,
    /// Partner-ensemble sizes for `fit`.
    #[arg(long, value_enum, global = true)]
    pub partners: Option<PartnersArg>,
    /// Random j draws per oracle for `oracle-verify`.
    #[arg(long, global = true)]
    pub j_draws: Option<usize>,

    /// Output CSV path (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write a plotting script next to the CSV.
    #[arg(long, global = true)]
    pub plot_script: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cap on dense state dimension (env EQCDJ_CAP).
    #[arg(long, global = true, env = "EQCDJ_CAP")]
    pub cap: Option<usize>,
    /// Cap on Π(N+1) for density matrices.
    #[arg(long, global = true)]
    pub density_cap: Option<usize>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $dst.$f.is_none() { $dst.$f = $src.$f; } )*
    };
}

impl Options {
    /// Fills unset flags from the config file, if any.
    pub fn resolve(mut self) -> Result<Options, CliError> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        let file: Options = toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display())))?;
        overlay!(self, file; oracle, oracle_file, preset, m, n, n0, method, params, tau_grid, n_grid,
            gamma_t_grid, kind, partners, j_draws, out, plot_script, seed, cap, density_cap);
        Ok(self)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn caps(&self) -> Caps {
        let mut caps = self.cap.map(Caps::with_state_cap).unwrap_or_default();
        if let Some(d) = self.density_cap {
            caps.density_dim = d;
        }
        caps
    }

    pub fn method(&self) -> Result<Method, CliError> {
        match self.method.unwrap_or(1) {
            1 => Ok(Method::One),
            2 => Ok(Method::Two),
            other => Err(CliError::Validation(format!("--method must be 1 or 2, got {other}"))),
        }
    }

    /// The single oracle source, or `None` if none was given.
    pub fn oracle(&self) -> Result<Option<BooleanOracle>, CliError> {
        let given = [self.oracle.is_some(), self.oracle_file.is_some(), self.preset.is_some()];
        match given.iter().filter(|&&g| g).count() {
            0 => return Ok(None),
            1 => {}
            _ => return Err(CliError::Validation("give only one of --oracle, --oracle-file, --preset".into())),
        }
        let oracle = if let Some(t) = &self.oracle {
            BooleanOracle::parse(t)?
        } else if let Some(p) = &self.oracle_file {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", p.display())))?;
            BooleanOracle::parse(&text)?
        } else {
            BooleanOracle::preset(self.preset.as_deref().unwrap_or_default())?
        };
        if let Some(m) = self.m {
            if m != oracle.m() {
                return Err(CliError::Validation(format!("--m {m} disagrees with oracle of M = {}", oracle.m())));
            }
        }
        Ok(Some(oracle))
    }

    /// The given oracle, or every constant and balanced oracle of `--m`.
    pub fn oracles(&self) -> Result<Vec<BooleanOracle>, CliError> {
        if let Some(o) = self.oracle()? {
            return Ok(vec![o]);
        }
        let m = self.m.unwrap_or(2);
        let mut all = vec![BooleanOracle::constant(m, false)?, BooleanOracle::constant(m, true)?];
        all.extend(eqcdj::oracle::enumerate_balanced(m)?);
        Ok(all)
    }

    /// Ensemble sizes for an M-input oracle, `default_n` per ensemble if
    /// `--n` is absent.
    pub fn dims(&self, m: usize, default_n: usize) -> Result<EnsembleDims, CliError> {
        let n = self.n.clone().unwrap_or_else(|| vec![default_n]);
        let n_x = match n.len() {
            1 => vec![n[0]; m],
            len if len == m => n,
            len => return Err(CliError::Validation(format!("{len} values of --n for M = {m}"))),
        };
        let n0 = self.n0.unwrap_or(n_x[0]);
        Ok(EnsembleDims::new(n0, n_x)?)
    }

    /// Oracle parameters for one oracle; `default` names the choice used
    /// when `--params` is absent.
    pub fn params_for(&self, oracle: &BooleanOracle, default: &str) -> Result<OracleParams, CliError> {
        match self.params.as_deref().unwrap_or(default) {
            "zero" => Ok(OracleParams::zero()),
            "recommended" => Ok(match oracle.class() {
                OracleClass::Balanced => recommended_params(oracle)?,
                _ => OracleParams::zero(),
            }),
            path => {
                let p = read_params(Path::new(path))?;
                let keep = p.j_map.into_iter().filter(|(x, _)| oracle.f_set().contains(x)).collect();
                Ok(OracleParams { j_map: keep, ..p })
            }
        }
    }

    pub fn tau_grid(&self) -> Result<Vec<f64>, CliError> {
        parse_real_grid(self.tau_grid.as_deref().unwrap_or("0:1:201"), "--tau-grid")
    }

    pub fn gamma_t_grid(&self) -> Result<Vec<f64>, CliError> {
        let g = parse_real_grid(self.gamma_t_grid.as_deref().unwrap_or("0,0.01,0.1,1"), "--gamma-t-grid")?;
        if g.iter().any(|&v| v < 0.0) {
            return Err(CliError::Validation("--gamma-t-grid values must be >= 0".into()));
        }
        Ok(g)
    }

    pub fn n_grid(&self) -> Result<Option<Vec<usize>>, CliError> {
        let Some(text) = &self.n_grid else { return Ok(None) };
        let v = text
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Validation(format!("--n-grid: {e}")))?;
        if v.is_empty() {
            return Err(CliError::Validation("--n-grid is empty".into()));
        }
        Ok(Some(v))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ParamsFile {
    #[serde(default)]
    j: BTreeMap<String, i64>,
    #[serde(default)]
    j_const: i64,
    f1_multiplier: Option<i64>,
}

fn read_params(path: &Path) -> Result<OracleParams, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("--params: cannot read {}: {e}", path.display())))?;
    let f: ParamsFile = toml::from_str(&text).map_err(|e| CliError::Validation(format!("--params: {e}")))?;
    let mut j_map = BTreeMap::new();
    for (k, v) in f.j {
        let x = k.parse::<usize>().map_err(|_| CliError::Validation(format!("--params: bad x key {k:?}")))?;
        j_map.insert(x, v);
    }
    Ok(OracleParams { j_map, j_const: f.j_const, f1_multiplier: f.f1_multiplier })
}

/// `start:stop:count` (inclusive, evenly spaced) or `a,b,c`.
pub fn parse_real_grid(text: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    let bad = |msg: String| CliError::Validation(format!("{flag}: {msg}"));
    let grid = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("expected start:stop:count, got {text:?}")));
        }
        let start: f64 = parts[0].trim().parse().map_err(|e| bad(format!("{e}")))?;
        let stop: f64 = parts[1].trim().parse().map_err(|e| bad(format!("{e}")))?;
        let count: usize = parts[2].trim().parse().map_err(|e| bad(format!("{e}")))?;
        match count {
            0 => Vec::new(),
            1 => vec![start],
            _ => (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect(),
        }
    } else {
        text.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>().map_err(|e| bad(format!("{e}"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    if grid.is_empty() {
        return Err(bad("grid is empty".into()));
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(bad("grid values must be finite".into()));
    }
    Ok(grid)
}
