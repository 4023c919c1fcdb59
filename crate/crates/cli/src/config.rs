use ghurwitz_core::rational::{self, Rational};
use ghurwitz_core::spec::MatrixKind;
use ghurwitz_core::{Error, Result};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Build,
    CheckTnn,
    CheckS,
    Equivalence,
    QuasiStability,
    Sector,
}

/// `exact` refuses windows whose coefficients are only approximate;
/// `approx` accepts them and reports their tail bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Approx,
}

fn rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::format))
}

/// Every parameter that can change a verdict. Reports embed it verbatim;
/// the thread count is deliberately absent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<String>,
    pub rows: Option<(i64, i64)>,
    pub cols: Option<(i64, i64)>,
    pub max_order: usize,
    pub mode: Mode,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(serialize_with = "rationals")]
    pub grid: Vec<Rational>,
    pub cap_window: usize,
    pub count: usize,
    /// Matrix kind for `build`/`check-tnn` when the inputs are bare series.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<MatrixKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_offset: Option<i64>,
    /// Terms kept from the `1/z` side of an infinite product.
    pub exp_terms: usize,
}

impl RunConfig {
    /// Defaults for `command`, matching the sizes the harnesses were tuned for.
    pub fn new(command: Command) -> Self {
        let (max_order, count) = match command {
            Command::Equivalence => (4, 50),
            Command::QuasiStability => (4, 100),
            Command::Sector => (4, 20),
            _ => (0, 0),
        };
        RunConfig {
            command,
            inputs: Vec::new(),
            rows: None,
            cols: None,
            max_order,
            mode: Mode::Exact,
            tol: 1e-9,
            samples: 1000,
            seed: 0,
            m: 3,
            grid: default_grid(),
            cap_window: 16,
            count,
            kind: None,
            row_offset: None,
            exp_terms: 32,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, w) in [("rows", self.rows), ("cols", self.cols)] {
            if let Some((a, b)) = w {
                if a > b {
                    return Err(Error::Range(format!("{name} bounds {a}:{b} are not ordered")));
                }
            }
        }
        if self.max_order == 0
            && matches!(
                self.command,
                Command::Equivalence | Command::QuasiStability | Command::Sector
            )
        {
            return Err(Error::Range("order must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Range("tolerance must be positive".into()));
        }
        if self.grid.iter().any(|g| g < &Rational::from_integer(0.into())) {
            return Err(Error::Range("grid values must be nonnegative".into()));
        }
        if self.samples == 0 && self.command == Command::CheckS {
            return Err(Error::Range("at least one sample is needed".into()));
        }
        if self.exp_terms == 0 {
            return Err(Error::Range("at least one expansion term is needed".into()));
        }
        if self.cap_window == 0 {
            return Err(Error::Range("window cap must be positive".into()));
        }
        Ok(())
    }

    /// `rows`/`cols` if given, otherwise `1..=n` for both.
    pub fn square_window(&self, n: usize) -> ((i64, i64), (i64, i64)) {
        let d = (1, n as i64);
        (self.rows.unwrap_or(d), self.cols.unwrap_or(d))
    }
}

pub fn default_grid() -> Vec<Rational> {
    ["0", "1/2", "1", "2"]
        .iter()
        .map(|s| rational::parse(s).expect("literal"))
        .collect()
}

/// `"a:b"` with inclusive ends.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("expected a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(Error::Range(format!("range {s:?} is empty")));
    }
    Ok((a, b))
}

/// Comma-separated rationals, e.g. `"0,1/2,1,2"`.
pub fn parse_grid(s: &str) -> Result<Vec<Rational>> {
    let v = s.split(',').map(rational::parse).collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        return Err(Error::Parse("empty grid".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_grids() {
        assert_eq!(parse_range("1:8").unwrap(), (1, 8));
        assert_eq!(parse_range("-3: 3").unwrap(), (-3, 3));
        assert!(parse_range("3:1").is_err());
        assert!(parse_range("3").is_err());
        assert_eq!(parse_grid("0,1/2,1,2").unwrap(), default_grid());
        assert!(parse_grid("0,x").is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::new(Command::Equivalence);
        assert!(c.validate().is_ok());
        c.tol = 0.0;
        assert!(c.validate().is_err());
        c.tol = 1e-9;
        c.rows = Some((4, 1));
        assert!(c.validate().is_err());
    }

    #[test]
    fn serialized_config_has_no_thread_count() {
        let c = RunConfig::new(Command::QuasiStability);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"command\":\"quasi-stability\""));
        assert!(s.contains("\"grid\":[\"0\",\"1/2\",\"1\",\"2\"]"));
        assert!(!s.contains("thread"));
    }
}
