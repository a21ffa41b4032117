use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generators::FamilySpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Oracle,
    Witness,
    Both,
}

impl Mode {
    pub fn runs_oracle(self) -> bool {
        matches!(self, Mode::Oracle | Mode::Both)
    }

    pub fn runs_witness(self) -> bool {
        matches!(self, Mode::Witness | Mode::Both)
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" | "oracle-only" => Ok(Mode::Oracle),
            "witness" | "witness-only" => Ok(Mode::Witness),
            "both" => Ok(Mode::Both),
            _ => Err(Error::InvalidParameter(format!(
                "mode must be oracle, witness or both, got `{s}`"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Oracle => "oracle",
            Mode::Witness => "witness",
            Mode::Both => "both",
        })
    }
}

/// Family tag plus whatever size parameters are fixed for the whole sweep.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FamilyTemplate {
    pub tag: String,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub d: Option<usize>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub copies: Option<usize>,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub path: Option<PathBuf>,
}

impl FamilyTemplate {
    /// Builds and validates the family described by the tag and sizes.
    pub fn spec(&self) -> Result<FamilySpec> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| Error::InvalidParameter(format!("family {} needs `{name}`", self.tag)))
        };
        let spec = match self.tag.as_str() {
            "complete" => FamilySpec::Complete {
                n: need(self.n, "n")?,
            },
            "complete_bipartite" => FamilySpec::CompleteBipartite {
                a: need(self.a, "a")?,
                b: need(self.b, "b")?,
            },
            "hypercube" => FamilySpec::Hypercube {
                dim: need(self.d, "d")?,
            },
            "grid" => FamilySpec::Grid {
                rows: need(self.rows, "rows")?,
                cols: need(self.cols, "cols")?,
            },
            "random_regular" => FamilySpec::RandomRegular {
                n: need(self.n, "n")?,
                r: need(self.r, "r")?,
            },
            "disjoint_cliques" => FamilySpec::DisjointCliques {
                copies: need(self.copies, "copies")?,
                r: need(self.r, "r")?,
            },
            "from_file" => FamilySpec::FromFile {
                path: self.path.clone().ok_or_else(|| {
                    Error::InvalidParameter("family from_file needs `path`".into())
                })?,
            },
            "" => return Err(Error::InvalidParameter("no family given".into())),
            other => return Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// One grid line. Size fields override the template; exactly one of
/// `epsilon`, `c` and `p` fixes the retention probability.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GridPoint {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub d: Option<usize>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub copies: Option<usize>,
    pub epsilon: Option<f64>,
    pub c: Option<f64>,
    pub p: Option<f64>,
    pub trials: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub family: FamilyTemplate,
    pub grid: Vec<GridPoint>,
    pub trials: usize,
    /// `None` means the caller did not set one; sweeps then use 0.
    pub master_seed: Option<u64>,
    pub mode: Mode,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    /// Supercriticality margin for witness runs at grid points that give
    /// `p` or `c` instead of `epsilon`.
    pub epsilon: Option<f64>,
    /// Overrides the witness sprinkling horizon.
    pub ell: Option<usize>,
    /// Trial seeds ignore the grid index, so samples across a `p` grid are
    /// nested per trial.
    pub coupled: bool,
    /// Fill the `runtime_ms` column (makes output timing-dependent).
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            family: FamilyTemplate::default(),
            grid: Vec::new(),
            trials: 1,
            master_seed: None,
            mode: Mode::Oracle,
            out: None,
            threads: None,
            epsilon: None,
            ell: None,
            coupled: false,
            timing: false,
        }
    }
}

/// How a grid point fixes the retention probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Retention {
    /// `p = (1 + eps)/r`.
    Epsilon(f64),
    /// `p = c/n` for complete graphs, `c/r` otherwise.
    MeanDegree(f64),
    Explicit(f64),
}

/// A grid point with everything filled in.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedPoint {
    pub spec: FamilySpec,
    pub retention: Retention,
    pub trials: usize,
}

impl ExperimentConfig {
    pub fn seed(&self) -> u64 {
        self.master_seed.unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::InvalidParameter("sweep grid has no points".into()));
        }
        if self.trials < 1 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidParameter("threads must be >= 1".into()));
        }
        for i in 0..self.grid.len() {
            self.resolve(i).map_err(|e| Error::GridPoint {
                index: i,
                source: Box::new(e),
            })?;
        }
        Ok(())
    }

    pub fn resolve(&self, index: usize) -> Result<ResolvedPoint> {
        let g = &self.grid[index];
        let mut merged = self.family.clone();
        merged.n = g.n.or(merged.n);
        merged.r = g.r.or(merged.r);
        merged.d = g.d.or(merged.d);
        merged.rows = g.rows.or(merged.rows);
        merged.cols = g.cols.or(merged.cols);
        merged.copies = g.copies.or(merged.copies);
        let spec = merged.spec()?;
        let retention = match (g.epsilon, g.c, g.p) {
            (Some(e), None, None) if e > 0.0 => Retention::Epsilon(e),
            (None, Some(c), None) if c > 0.0 => Retention::MeanDegree(c),
            (None, None, Some(p)) if (0.0..=1.0).contains(&p) => Retention::Explicit(p),
            (None, None, None) => {
                return Err(Error::InvalidParameter(
                    "grid point needs one of epsilon, c or p".into(),
                ))
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "grid point needs exactly one valid epsilon > 0, c > 0 or p in [0, 1]".into(),
                ))
            }
        };
        let trials = g.trials.unwrap_or(self.trials);
        if trials < 1 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        Ok(ResolvedPoint {
            spec,
            retention,
            trials,
        })
    }
}

fn parse_num<T: FromStr>(value: &str, key: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad value `{value}` for `{key}`")))
}

fn parse_bool(value: &str, key: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::InvalidParameter(format!(
            "bad value `{value}` for `{key}`"
        ))),
    }
}

impl ExperimentConfig {
    /// Applies one top-level `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let f = &mut self.family;
        match key {
            "family" => f.tag = value.to_string(),
            "n" => f.n = Some(parse_num(value, key)?),
            "r" => f.r = Some(parse_num(value, key)?),
            "d" => f.d = Some(parse_num(value, key)?),
            "rows" => f.rows = Some(parse_num(value, key)?),
            "cols" => f.cols = Some(parse_num(value, key)?),
            "copies" => f.copies = Some(parse_num(value, key)?),
            "a" => f.a = Some(parse_num(value, key)?),
            "b" => f.b = Some(parse_num(value, key)?),
            "path" => f.path = Some(PathBuf::from(value)),
            "trials" => self.trials = parse_num(value, key)?,
            "seed" => self.master_seed = Some(parse_num(value, key)?),
            "mode" => self.mode = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            "threads" => self.threads = Some(parse_num(value, key)?),
            "epsilon" => self.epsilon = Some(parse_num(value, key)?),
            "ell" => self.ell = Some(parse_num(value, key)?),
            "coupled" => self.coupled = parse_bool(value, key)?,
            "timing" => self.timing = parse_bool(value, key)?,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown config key `{key}`"
                )))
            }
        }
        Ok(())
    }
}

/// Drops whitespace around `=` so `c = 1.2` reads like `c=1.2`.
fn tighten_assignments(line: &str) -> String {
    let parts: Vec<&str> = line.split('=').map(str::trim).collect();
    parts.join("=")
}

fn parse_grid_line(line: &str) -> Result<GridPoint> {
    let mut point = GridPoint::default();
    for tok in tighten_assignments(line).split_ascii_whitespace() {
        let (key, value) = tok.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!("grid entry `{tok}` is not key=value"))
        })?;
        match key {
            "n" => point.n = Some(parse_num(value, key)?),
            "r" => point.r = Some(parse_num(value, key)?),
            "d" => point.d = Some(parse_num(value, key)?),
            "rows" => point.rows = Some(parse_num(value, key)?),
            "cols" => point.cols = Some(parse_num(value, key)?),
            "copies" => point.copies = Some(parse_num(value, key)?),
            "epsilon" => point.epsilon = Some(parse_num(value, key)?),
            "c" => point.c = Some(parse_num(value, key)?),
            "p" => point.p = Some(parse_num(value, key)?),
            "trials" => point.trials = Some(parse_num(value, key)?),
            _ => return Err(Error::InvalidParameter(format!("unknown grid key `{key}`"))),
        }
    }
    Ok(point)
}

/// Parses the line-oriented config format. `origin` names the source in
/// error messages.
pub fn parse_config(text: &str, origin: &str) -> Result<ExperimentConfig> {
    let mut config = ExperimentConfig::default();
    let mut in_grid = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let wrap = |e: Error| Error::Parse {
            path: origin.to_string(),
            line: i + 1,
            message: e.to_string(),
        };
        if line.starts_with('[') {
            if line == "[grid]" {
                in_grid = true;
                continue;
            }
            return Err(wrap(Error::InvalidParameter(format!(
                "unknown section {line}"
            ))));
        }
        if in_grid {
            config.grid.push(parse_grid_line(line).map_err(wrap)?);
        } else {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| wrap(Error::InvalidParameter("expected `key = value`".into())))?;
            config.set(key.trim(), value.trim()).map_err(wrap)?;
        }
    }
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# threshold sweep
family = complete
trials = 20
seed = 7
mode = oracle

[grid]
n=3000 c=0.8 trials=200
n=3000 c = 1.2   # supercritical
";

    #[test]
    fn parses_sample() {
        let c = parse_config(SAMPLE, "sample").unwrap();
        assert_eq!(c.family.tag, "complete");
        assert_eq!(
            (c.trials, c.master_seed, c.mode),
            (20, Some(7), Mode::Oracle)
        );
        assert_eq!(c.grid.len(), 2);
        assert_eq!(c.grid[0].trials, Some(200));
        let p = c.resolve(1).unwrap();
        assert_eq!(p.spec, FamilySpec::Complete { n: 3000 });
        assert_eq!(p.retention, Retention::MeanDegree(1.2));
        assert_eq!(p.trials, 20);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_unknown_keys_and_empty_grids() {
        assert!(parse_config("colour = red\n", "x").is_err());
        assert!(parse_config("[grid]\nr=3 zeta=1\n", "x").is_err());
        assert!(parse_config("[grid]\nr=3 c\n", "x").is_err());
        let c = parse_config("family = complete\nn = 5\n", "x").unwrap();
        assert!(c.validate().is_err());
        let c = parse_config("family = complete\n[grid]\nn=5 c=1 p=0.2\n", "x").unwrap();
        assert!(c.validate().is_err());
    }
}
