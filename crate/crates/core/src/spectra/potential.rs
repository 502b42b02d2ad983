//! Potentials: closed forms, sampled profiles and the `kind:key=val,...`
//! mini-language used to name them on the command line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constants::check_dim;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_line, integrate_to_infinity, Quad, QuadConfig};
use crate::special::sphere_area;

/// Piecewise-linear samples on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sampled {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl Sampled {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::input(format!(
                "grid has {} points but {} values",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < 3 {
            return Err(Error::input("a sampled potential needs at least 3 points"));
        }
        if let Some(i) = grid.iter().chain(&values).position(|v| !v.is_finite()) {
            return Err(Error::input(format!("non-finite sample at position {i}")));
        }
        if let Some(w) = grid.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::input(format!("grid not strictly increasing at index {}", w + 1)));
        }
        Ok(Self { grid, values })
    }

    pub fn start(&self) -> f64 {
        self.grid[0]
    }

    pub fn end(&self) -> f64 {
        *self.grid.last().expect("at least three samples")
    }

    /// Linear interpolation; +∞ outside the sampled interval.
    pub fn eval(&self, x: f64) -> f64 {
        let g = &self.grid;
        if x < g[0] || x > self.end() || x.is_nan() {
            return f64::INFINITY;
        }
        let i = g.partition_point(|&p| p <= x).clamp(1, g.len() - 1);
        let (x0, x1) = (g[i - 1], g[i]);
        let w = (x - x0) / (x1 - x0);
        self.values[i - 1] * (1.0 - w) + self.values[i] * w
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// The shape of a potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialKind {
    /// V = 1 on the cube (0, π/ε)^d, Dirichlet conditions on its boundary.
    Box { eps: f64 },
    /// V = A²|x|² + B.
    Harmonic { a: f64, b: f64 },
    /// V = c|x|^p.
    Power { c: f64, p: f64 },
    /// V = −c sech²(a|x|).
    Sech2 { c: f64, a: f64 },
    /// Dirichlet well of radius R with an optional inner profile (V = 0 if absent).
    Well { radius: f64, inner: Option<Sampled> },
    /// Samples with Dirichlet conditions at both ends of the grid.
    Sampled(Sampled),
}

/// How V behaves far away, which decides integrability of G(V).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Asymptotics {
    /// V → +∞.
    Confining,
    /// V tends to the given finite limit.
    Limit(f64),
    /// The operator lives on a bounded domain.
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    #[serde(flatten)]
    pub kind: PotentialKind,
    pub d: u32,
}

impl Potential {
    pub fn new(kind: PotentialKind, d: u32) -> Result<Self> {
        check_dim(d)?;
        let pos = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
            }
        };
        match &kind {
            PotentialKind::Box { eps } => pos("eps", *eps)?,
            PotentialKind::Harmonic { a, b } => {
                pos("A", *a)?;
                if !b.is_finite() {
                    return Err(Error::domain("B must be finite"));
                }
            }
            PotentialKind::Power { c, p } => {
                pos("c", *c)?;
                pos("p", *p)?;
            }
            PotentialKind::Sech2 { c, a } => {
                pos("c", *c)?;
                pos("a", *a)?;
            }
            PotentialKind::Well { radius, inner } => {
                pos("R", *radius)?;
                if let Some(s) = inner {
                    let lo = if d == 1 { -*radius } else { 0.0 };
                    if s.start() > lo || s.end() < *radius {
                        return Err(Error::input(format!(
                            "inner profile covers [{}, {}] but the well needs [{lo}, {radius}]",
                            s.start(),
                            s.end()
                        )));
                    }
                }
            }
            PotentialKind::Sampled(s) => {
                if d > 1 && s.start() < 0.0 {
                    return Err(Error::input("radial samples must have r ≥ 0"));
                }
            }
        }
        Ok(Self { kind, d })
    }

    pub fn harmonic(a: f64, b: f64, d: u32) -> Result<Self> {
        Self::new(PotentialKind::Harmonic { a, b }, d)
    }

    pub fn boxed(eps: f64, d: u32) -> Result<Self> {
        Self::new(PotentialKind::Box { eps }, d)
    }

    /// V at a point (d = 1) or at radius r (radial potentials).
    pub fn value(&self, x: f64) -> f64 {
        match &self.kind {
            PotentialKind::Box { eps } => {
                if x > 0.0 && x < std::f64::consts::PI / eps {
                    1.0
                } else {
                    f64::INFINITY
                }
            }
            PotentialKind::Harmonic { a, b } => a * a * x * x + b,
            PotentialKind::Power { c, p } => c * x.abs().powf(*p),
            PotentialKind::Sech2 { c, a } => {
                let s = 1.0 / (a * x).cosh();
                -c * s * s
            }
            PotentialKind::Well { radius, inner } => {
                if x.abs() >= *radius {
                    f64::INFINITY
                } else {
                    inner.as_ref().map_or(0.0, |s| s.eval(x))
                }
            }
            PotentialKind::Sampled(s) => s.eval(x),
        }
    }

    pub fn min_value(&self) -> f64 {
        match &self.kind {
            PotentialKind::Box { .. } => 1.0,
            PotentialKind::Harmonic { b, .. } => *b,
            PotentialKind::Power { .. } => 0.0,
            PotentialKind::Sech2 { c, .. } => -c,
            PotentialKind::Well { inner, .. } => inner.as_ref().map_or(0.0, Sampled::min_value),
            PotentialKind::Sampled(s) => s.min_value(),
        }
    }

    pub fn asymptotics(&self) -> Asymptotics {
        match &self.kind {
            PotentialKind::Harmonic { .. } | PotentialKind::Power { .. } => Asymptotics::Confining,
            PotentialKind::Sech2 { .. } => Asymptotics::Limit(0.0),
            _ => Asymptotics::Bounded,
        }
    }

    /// Interval carrying the Dirichlet problem for bounded-domain kinds
    /// (radial kinds report [0, R]).
    pub fn bounded_domain(&self) -> Option<(f64, f64)> {
        match &self.kind {
            PotentialKind::Box { eps } => Some((0.0, std::f64::consts::PI / eps)),
            PotentialKind::Well { radius, .. } => {
                Some((if self.d == 1 { -*radius } else { 0.0 }, *radius))
            }
            PotentialKind::Sampled(s) => Some((s.start(), s.end())),
            _ => None,
        }
    }

    /// ∫_{ℝ^d} g(V(x)) dx, with g(+∞) taken as 0.
    ///
    /// Fails with a domain error when the integral diverges: either g does
    /// not vanish at the limiting value of V, or the integrand blows up.
    pub fn integrate(&self, g: impl Fn(f64) -> f64, cfg: QuadConfig) -> Result<Quad> {
        let gv = |v: f64| if v == f64::INFINITY { 0.0 } else { g(v) };
        if let Asymptotics::Limit(l) = self.asymptotics() {
            let tail = gv(l);
            if tail != 0.0 {
                return Err(Error::domain(format!(
                    "∫G(V) diverges: G at the limiting value V = {l} is {tail}"
                )));
            }
        }
        let d = self.d;
        let radial_weight = sphere_area(d);
        let r = match (&self.kind, d) {
            (PotentialKind::Box { eps }, _) => {
                let vol = (std::f64::consts::PI / eps).powi(d as i32);
                return Ok(Quad {
                    value: vol * gv(1.0),
                    error: 0.0,
                    evaluations: 1,
                });
            }
            (PotentialKind::Harmonic { .. }, 1)
            | (PotentialKind::Power { .. }, 1)
            | (PotentialKind::Sech2 { .. }, 1) => {
                integrate_line(|x| gv(self.value(x)), cfg)
            }
            (PotentialKind::Harmonic { .. }, _)
            | (PotentialKind::Power { .. }, _)
            | (PotentialKind::Sech2 { .. }, _) => integrate_to_infinity(
                |r| radial_weight * gv(self.value(r)) * r.powi(d as i32 - 1),
                0.0,
                cfg,
            ),
            _ => {
                let (a, b) = self.bounded_domain().expect("bounded kind");
                let w = if d == 1 { 1.0 } else { radial_weight };
                let breaks: Vec<f64> = match &self.kind {
                    PotentialKind::Sampled(s) => s.grid.clone(),
                    PotentialKind::Well { inner: Some(s), .. } => {
                        let mut v: Vec<f64> = s.grid.iter().copied().filter(|x| *x > a && *x < b).collect();
                        v.insert(0, a);
                        v.push(b);
                        v
                    }
                    _ => vec![a, b],
                };
                piecewise(&breaks, |x| w * gv(self.value(x)) * x.abs().powi(d as i32 - 1), cfg)
            }
        };
        match r {
            Ok(q) if q.value.is_finite() => Ok(q),
            Ok(_) | Err(Error::Numeric { .. }) => {
                Err(Error::domain("∫G(V) diverges or fails to converge"))
            }
            Err(e) => Err(e),
        }
    }
}

fn piecewise(breaks: &[f64], f: impl Fn(f64) -> f64, cfg: QuadConfig) -> Result<Quad> {
    let mut total = Quad { value: 0.0, error: 0.0, evaluations: 0 };
    // Many short panels: split the relative tolerance across them and rely on
    // the absolute floor for near-empty ones.
    let cfg = QuadConfig { max_intervals: 200, ..cfg };
    for w in breaks.windows(2) {
        let q = integrate(&f, w[0], w[1], cfg)?;
        total.value += q.value;
        total.error += q.error;
        total.evaluations += q.evaluations;
    }
    Ok(total)
}

/// A potential as written in the mini-language, before any files are read.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    pub kind: String,
    pub params: BTreeMap<String, String>,
}

const KINDS: [(&str, &[&str]); 6] = [
    ("box", &["eps"]),
    ("harmonic", &["A", "B"]),
    ("power", &["c", "p"]),
    ("sech2", &["c", "a"]),
    ("well", &["R", "file"]),
    ("sampled", &["file"]),
];

/// Parses `kind:key=val,key=val`. Keys are checked against the kind.
pub fn parse_potential_spec(text: &str) -> Result<PotentialSpec> {
    let text = text.trim();
    let (kind, rest) = match text.split_once(':') {
        Some((k, r)) => (k.trim(), r),
        None => (text, ""),
    };
    let allowed = KINDS
        .iter()
        .find(|(k, _)| *k == kind)
        .map(|(_, keys)| *keys)
        .ok_or_else(|| Error::input(format!("unknown potential kind `{kind}`")))?;
    let mut params = BTreeMap::new();
    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::input(format!("expected key=value, got `{item}`")))?;
        let (k, v) = (k.trim(), v.trim());
        if !allowed.contains(&k) {
            return Err(Error::input(format!("`{k}` is not a parameter of `{kind}`")));
        }
        if v.is_empty() {
            return Err(Error::input(format!("empty value for `{k}`")));
        }
        if params.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::input(format!("duplicate parameter `{k}`")));
        }
    }
    Ok(PotentialSpec {
        kind: kind.to_string(),
        params,
    })
}

impl PotentialSpec {
    fn num(&self, key: &str, default: Option<f64>) -> Result<f64> {
        match self.params.get(key) {
            Some(v) => v
                .parse::<f64>()
                .map_err(|_| Error::input(format!("`{key}={v}` is not a number"))),
            None => default.ok_or_else(|| Error::MissingInput(format!("`{}` needs `{key}`", self.kind))),
        }
    }

    /// Builds the potential; `load` turns a `file=` value into samples.
    pub fn build(&self, d: u32, load: impl Fn(&str) -> Result<Sampled>) -> Result<Potential> {
        let kind = match self.kind.as_str() {
            "box" => PotentialKind::Box { eps: self.num("eps", None)? },
            "harmonic" => PotentialKind::Harmonic {
                a: self.num("A", None)?,
                b: self.num("B", Some(0.0))?,
            },
            "power" => PotentialKind::Power {
                c: self.num("c", Some(1.0))?,
                p: self.num("p", None)?,
            },
            "sech2" => PotentialKind::Sech2 {
                c: self.num("c", None)?,
                a: self.num("a", Some(1.0))?,
            },
            "well" => PotentialKind::Well {
                radius: self.num("R", None)?,
                inner: self.params.get("file").map(|f| load(f)).transpose()?,
            },
            "sampled" => {
                let f = self
                    .params
                    .get("file")
                    .ok_or_else(|| Error::MissingInput("`sampled` needs `file`".into()))?;
                PotentialKind::Sampled(load(f)?)
            }
            other => return Err(Error::input(format!("unknown potential kind `{other}`"))),
        };
        Potential::new(kind, d)
    }
}

/// Parses whitespace- or comma-separated two-column text `x V(x)`.
/// Blank lines and `#` comments are skipped.
pub fn parse_two_column(text: &str) -> Result<Sampled> {
    let mut grid = Vec::new();
    let mut values = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty());
        let mut next = |what: &str| -> Result<f64> {
            let tok = cols
                .next()
                .ok_or_else(|| Error::parse(n + 1, format!("missing {what} column")))?;
            tok.parse::<f64>()
                .map_err(|_| Error::parse(n + 1, format!("`{tok}` is not a number")))
        };
        let x = next("x")?;
        let v = next("value")?;
        if cols.next().is_some() {
            return Err(Error::parse(n + 1, "more than two columns"));
        }
        grid.push(x);
        values.push(v);
    }
    Sampled::new(grid, values)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SampleJson {
    Pairs(Vec<[f64; 2]>),
    Columns { x: Vec<f64>, v: Vec<f64> },
}

/// Parses samples from JSON: either `[[x, v], ...]` or `{"x": [...], "v": [...]}`.
pub fn parse_samples_json(text: &str) -> Result<Sampled> {
    match serde_json::from_str::<SampleJson>(text)? {
        SampleJson::Pairs(p) => Sampled::new(p.iter().map(|r| r[0]).collect(), p.iter().map(|r| r[1]).collect()),
        SampleJson::Columns { x, v } => Sampled::new(x, v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        let s = parse_potential_spec("harmonic:A=1,B=0").unwrap();
        let p = s.build(1, |_| unreachable!()).unwrap();
        assert_eq!(p.kind, PotentialKind::Harmonic { a: 1.0, b: 0.0 });
        assert!(parse_potential_spec("harmonic:Q=1").is_err());
        assert!(parse_potential_spec("blob:x=1").is_err());
        assert!(parse_potential_spec("box:eps").is_err());
        assert!(matches!(
            parse_potential_spec("box:").unwrap().build(1, |_| unreachable!()),
            Err(Error::MissingInput(_))
        ));
    }

    #[test]
    fn two_column_parser() {
        let s = parse_two_column("# x v\n0 1\n0.5, 2\n1 3 # end\n").unwrap();
        assert_eq!(s.grid, vec![0.0, 0.5, 1.0]);
        assert!((s.eval(0.25) - 1.5).abs() < 1e-15);
        assert_eq!(s.eval(2.0), f64::INFINITY);
        assert!(matches!(parse_two_column("0 1\n1 x\n2 3"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_two_column("0 1\n0 2\n1 3").is_err());
    }

    #[test]
    fn json_samples() {
        let a = parse_samples_json("[[0,1],[1,2],[2,5]]").unwrap();
        let b = parse_samples_json(r#"{"x":[0,1,2],"v":[1,2,5]}"#).unwrap();
        assert_eq!(a, b);
        assert!(parse_samples_json("[[0,1]]").is_err());
    }

    #[test]
    fn gaussian_integral() {
        let v = Potential::harmonic(1.0, 0.0, 1).unwrap();
        let q = v.integrate(|v| (-v).exp(), QuadConfig::rel(1e-12)).unwrap();
        assert!((q.value - std::f64::consts::PI.sqrt()).abs() < 1e-11);
        let v3 = Potential::harmonic(1.0, 0.0, 3).unwrap();
        let q = v3.integrate(|v| (-v).exp(), QuadConfig::rel(1e-12)).unwrap();
        assert!((q.value - std::f64::consts::PI.powf(1.5)).abs() < 1e-10);
    }

    #[test]
    fn divergent_integral_is_domain_error() {
        let v = Potential::new(PotentialKind::Sech2 { c: 2.0, a: 1.0 }, 1).unwrap();
        assert!(matches!(v.integrate(|v| (-v).exp(), QuadConfig::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn well_profile_must_cover() {
        let s = Sampled::new(vec![0.0, 0.5, 1.0], vec![0.0; 3]).unwrap();
        let r = Potential::new(PotentialKind::Well { radius: 1.0, inner: Some(s) }, 1);
        assert!(r.is_err());
    }
}
