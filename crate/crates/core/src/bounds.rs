//! Catalan numbers and evaluators for the exponential ratio bounds.
//!
//! Every bound is reported as a per-point base `b`, meaning a count of at
//! most `b^N` (up to polynomial factors) times the number of triangulations.
//! Absolute bases multiply by [`TRIANGULATION_BASE`].

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Imported bound: every point set has fewer than `30^N` triangulations.
pub const TRIANGULATION_BASE: f64 = 30.0;

/// Imported bound: every plane graph has `O(5.2852^N)` spanning trees.
pub const SPANNING_TREES_PER_GRAPH_BASE: f64 = 5.2852;

/// The edge density at which the exactly-`cN` base peaks.
pub const PEAK_DENSITY: f64 = 19.0 / 12.0;

/// Argument tolerance of the one-dimensional optimizers.
pub const OPTIMIZER_TOLERANCE: f64 = 1e-9;

/// `k`-th Catalan number from `C_0 = 1`, `C_k = sum C_i C_{k-1-i}`.
pub fn catalan(k: usize) -> BigUint {
    CatalanTable::new(k).values.pop().expect("table has k + 1 entries")
}

/// `C_0 ..= C_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalanTable {
    pub values: Vec<BigUint>,
}

impl CatalanTable {
    pub fn new(k: usize) -> Self {
        let mut values: Vec<BigUint> = Vec::with_capacity(k + 1);
        values.push(BigUint::one());
        for m in 1..=k {
            let next = (0..m).map(|i| &values[i] * &values[m - 1 - i]).sum();
            values.push(next);
        }
        CatalanTable { values }
    }

    pub fn get(&self, k: usize) -> &BigUint {
        &self.values[k]
    }

    /// Checks the recurrence and `C_{i+1} >= 2^i` for every `i >= 1` in range.
    pub fn check(&self) -> Result<()> {
        let v = &self.values;
        if v.first() != Some(&BigUint::one()) || v.get(1).is_some_and(|c| *c != BigUint::one()) {
            return Err(Error::IdentityViolation("C_0 = C_1 = 1 fails".into()));
        }
        for m in 1..v.len() {
            let sum: BigUint = (0..m).map(|i| &v[i] * &v[m - 1 - i]).sum();
            if sum != v[m] {
                return Err(Error::IdentityViolation(format!("Catalan recurrence fails at {m}")));
            }
        }
        for i in 1..v.len().saturating_sub(1) {
            if v[i + 1] < BigUint::one() << i {
                return Err(Error::IdentityViolation(format!("C_{} < 2^{i}", i + 1)));
            }
        }
        Ok(())
    }
}

/// An evaluated bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    /// Per-point exponential base of the ratio to the triangulation count.
    pub base: f64,
    /// Optimizer location: the threshold `a*`, the density `k'/N`, or `t`.
    pub optimizer: Option<f64>,
    /// `base * 30`, the base of the absolute bound.
    pub absolute_base: Option<f64>,
}

impl BoundReport {
    fn new(name: &str, base: f64, optimizer: Option<f64>) -> Self {
        BoundReport {
            name: name.to_string(),
            base,
            optimizer,
            absolute_base: Some(base * TRIANGULATION_BASE),
        }
    }
}

/// `x ln x` with the limit value 0 at `x = 0`.
fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Per-point entropy base of `C(N, xN)`: `1 / (x^x (1-x)^(1-x))`, in logs.
fn ln_binomial_base(x: f64) -> f64 {
    -xlnx(x) - xlnx(1.0 - x)
}

fn check_density(function: &'static str, c: f64, open_at_zero: bool) -> Result<()> {
    let ok = if open_at_zero {
        c > 0.0 && c < 3.0
    } else {
        (0.0..3.0).contains(&c)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::DomainError {
            function,
            value: c,
            expected: if open_at_zero { "0 < c < 3" } else { "0 <= c < 3" },
        })
    }
}

/// The index density maximizing the summand in the exactly-`cN` count:
/// `t = (sqrt((7/2)^2 + 3c + c^2) - 5/2 - c) / 2`.
pub fn t_of(c: f64) -> Result<f64> {
    check_density("t", c, false)?;
    Ok(0.5 * ((3.5f64.powi(2) + 3.0 * c + c * c).sqrt() - 2.5 - c))
}

fn ln_b_with_t(c: f64, t: f64) -> f64 {
    2.5 * 5f64.ln()
        - 8f64.ln()
        - xlnx(c + t - 0.5)
        - xlnx(3.0 - c - t)
        - t * if t == 0.0 { 0.0 } else { (2.0 * t).ln() }
        - xlnx(0.5 - t)
}

/// Per-point base for graphs with exactly `cN` edges:
/// `5^(5/2) / (8 (c+t-1/2)^(c+t-1/2) (3-c-t)^(3-c-t) (2t)^t (1/2-t)^(1/2-t))`
/// with `0^0 = 1`.
pub fn b_of(c: f64) -> Result<f64> {
    let t = t_of(c)?;
    Ok(ln_b_with_t(c, t).exp())
}

/// Graphs with exactly `cN` edges.
pub fn pgc_bound(c: f64) -> Result<BoundReport> {
    check_density("pgc", c, true)?;
    Ok(BoundReport::new("exactly-cN-edges", b_of(c)?, Some(t_of(c)?)))
}

/// Graphs with at most `cN` edges: `B(c)` below the peak density, `4 sqrt 3`
/// above it.
pub fn pgcc_bound(c: f64) -> Result<BoundReport> {
    check_density("pgcc", c, true)?;
    let base = if c <= PEAK_DENSITY { b_of(c)? } else { 4.0 * 3f64.sqrt() };
    Ok(BoundReport::new("at-most-cN-edges", base, Some(t_of(c)?)))
}

/// Graphs with at least `cN` edges: `B(c)` above the peak density, `4 sqrt 3`
/// below it.
pub fn pgccc_bound(c: f64) -> Result<BoundReport> {
    check_density("pgccc", c, true)?;
    let base = if c >= PEAK_DENSITY { b_of(c)? } else { 4.0 * 3f64.sqrt() };
    Ok(BoundReport::new("at-least-cN-edges", base, Some(t_of(c)?)))
}

/// Quadrangulations have `2N + O(1)` edges, so their base is `B(2)`.
pub fn quadrangulation_bound() -> Result<BoundReport> {
    let mut r = pgc_bound(2.0)?;
    r.name = "quadrangulations".into();
    Ok(r)
}

fn check_hull(n: usize, h: usize) -> Result<()> {
    if h < 3 || h > n {
        return Err(Error::DomainError {
            function: "pg_tri_ratio",
            value: h as f64,
            expected: "3 <= h <= N",
        });
    }
    Ok(())
}

/// Natural log of the crossing-free graph to triangulation ratio bound:
/// `(4 sqrt 3)^N / 2^h` for `h <= N/2`, `8^N (3/8)^h` otherwise.
pub fn pg_tri_ln_ratio(n: usize, h: usize) -> Result<f64> {
    check_hull(n, h)?;
    let (n, h) = (n as f64, h as f64);
    Ok(if 2.0 * h <= n {
        n * (4.0 * 3f64.sqrt()).ln() - h * 2f64.ln()
    } else {
        n * 8f64.ln() + h * (3.0f64 / 8.0).ln()
    })
}

pub fn pg_tri_ratio(n: usize, h: usize) -> Result<f64> {
    Ok(pg_tri_ln_ratio(n, h)?.exp())
}

/// `pg_tri_ratio(n, h)^(1/n)`.
pub fn pg_tri_base(n: usize, h: usize) -> Result<f64> {
    Ok((pg_tri_ln_ratio(n, h)? / n as f64).exp())
}

/// All crossing-free graphs, hull size negligible: base `4 sqrt 3`.
pub fn plane_graph_bound() -> BoundReport {
    BoundReport::new("plane-graphs", 4.0 * 3f64.sqrt(), None)
}

/// Golden-section search for the minimum of a unimodal function on `[lo, hi]`.
fn golden_min(
    name: &'static str,
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64> {
    let (a0, b0) = (lo, hi);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..500 {
        if hi - lo <= OPTIMIZER_TOLERANCE {
            let x = 0.5 * (lo + hi);
            if !x.is_finite() || x - a0 <= OPTIMIZER_TOLERANCE || b0 - x <= OPTIMIZER_TOLERANCE {
                return Err(Error::ConvergenceFailure(name));
            }
            return Ok(x);
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    Err(Error::ConvergenceFailure(name))
}

/// Log of the per-point base of `C(N/2, xN) (5/(1/2+x))^((1/2+x)N) 2^(-xN)`.
pub fn spanning_tree_ln_first(x: f64) -> f64 {
    0.5 * ln_binomial_base(2.0 * x) + (0.5 + x) * (5.0 / (0.5 + x)).ln() - x * 2f64.ln()
}

/// Log of `5.2852 * 2^(-x)`.
pub fn spanning_tree_ln_second(x: f64) -> f64 {
    SPANNING_TREES_PER_GRAPH_BASE.ln() - x * 2f64.ln()
}

/// Spanning trees: the threshold `a*` minimizing the larger of the two sum
/// estimates, and the resulting base.
pub fn spanning_tree_ratio() -> Result<BoundReport> {
    let objective = |x: f64| spanning_tree_ln_first(x).max(spanning_tree_ln_second(x));
    let a = golden_min("spanning_tree_ratio", objective, 1e-6, 0.25)?;
    Ok(BoundReport::new("spanning-trees", objective(a).exp(), Some(a)))
}

/// Forests: the component density `x = k/N` maximizing the smaller of
/// `B(1 - x)` and `base(C(N-1, k-1)) * spanning`, with `spanning` taken from
/// [`spanning_tree_ratio`].
pub fn forest_ratio() -> Result<BoundReport> {
    let spanning = spanning_tree_ratio()?.base.ln();
    let ln_g1 = |x: f64| ln_b_with_t(1.0 - x, t_of(1.0 - x).unwrap_or(f64::NAN));
    let ln_g2 = |x: f64| ln_binomial_base(x) + spanning;
    let objective = |x: f64| -ln_g1(x).min(ln_g2(x));
    let x = golden_min("forest_ratio", objective, 1e-6, 0.5)?;
    Ok(BoundReport::new("forests", (-objective(x)).exp(), Some(x)))
}

/// Every constant reported by the CLI.
pub fn all_bounds() -> Result<Vec<BoundReport>> {
    Ok(vec![
        plane_graph_bound(),
        spanning_tree_ratio()?,
        forest_ratio()?,
        quadrangulation_bound()?,
        pgcc_bound(1.0)?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub c: f64,
    pub t: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

/// Samples `(c, t(c), B(c))` on `c_min, c_min + step, ... <= c_max`.
pub fn emit_curve(c_min: f64, c_max: f64, step: f64) -> Result<Vec<CurvePoint>> {
    if !(0.0 <= c_min && c_min < c_max && c_max < 3.0) {
        return Err(Error::DomainError {
            function: "emit_curve",
            value: c_min,
            expected: "0 <= c_min < c_max < 3",
        });
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::DomainError {
            function: "emit_curve",
            value: step,
            expected: "step > 0",
        });
    }
    let count = ((c_max - c_min) / step + 1e-9).floor() as usize;
    (0..=count)
        .map(|i| {
            let c = c_min + i as f64 * step;
            Ok(CurvePoint {
                c,
                t: t_of(c)?,
                b: b_of(c)?,
            })
        })
        .collect()
}

/// CSV with header `c,t,B`.
pub fn curve_csv(curve: &[CurvePoint]) -> String {
    let mut out = String::from("c,t,B\n");
    for p in curve {
        out.push_str(&format!("{},{},{}\n", p.c, p.t, p.b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(2), BigUint::from(2u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(6), BigUint::from(132u32));
        CatalanTable::new(60).check().unwrap();
    }

    #[test]
    fn t_and_b_values() {
        assert!((t_of(PEAK_DENSITY).unwrap() - 1.0 / 6.0).abs() < 1e-12);
        assert!((t_of(0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((b_of(PEAK_DENSITY).unwrap() - 4.0 * 3f64.sqrt()).abs() < 1e-9);
        assert!((b_of(2.0).unwrap() - 6.1406).abs() < 5e-4);
        assert!((b_of(0.0).unwrap() - 2f64.powf(2.5) / 8.0).abs() < 1e-12);
        assert!(t_of(3.0).is_err());
        assert!(t_of(-0.1).is_err());
    }

    #[test]
    fn t_stays_in_range_and_decreases() {
        let mut prev = f64::INFINITY;
        for i in 0..3000 {
            let c = i as f64 * 1e-3;
            let t = t_of(c).unwrap();
            assert!((0.0..0.5 + 1e-15).contains(&t));
            assert!((-1e-12..=2.5 + 1e-12).contains(&(c - 0.5 + t)));
            assert!(t <= prev);
            prev = t;
        }
    }

    #[test]
    fn branch_selection() {
        let r = 4.0 * 3f64.sqrt();
        assert_eq!(pgcc_bound(2.0).unwrap().base, r);
        assert_eq!(pgccc_bound(2.0).unwrap().base, b_of(2.0).unwrap());
        assert_eq!(pgcc_bound(1.0).unwrap().base, b_of(1.0).unwrap());
        assert_eq!(pgccc_bound(1.0).unwrap().base, r);
        assert!(pgc_bound(0.0).is_err());
    }

    #[test]
    fn pg_tri_branches_meet() {
        for n in (6..40).step_by(2) {
            let h = n / 2;
            let a = n as f64 * (4.0 * 3f64.sqrt()).ln() - h as f64 * 2f64.ln();
            let b = n as f64 * 8f64.ln() + h as f64 * (3.0f64 / 8.0).ln();
            assert!((a - b).abs() < 1e-9 * a.abs());
        }
        assert!((pg_tri_base(10, 10).unwrap() - 3.0).abs() < 1e-12);
        assert!((pg_tri_base(1_000_000_000_000, 3).unwrap() - 6.9283).abs() < 1e-4);
        assert!(pg_tri_ratio(5, 2).is_err());
    }

    #[test]
    fn optimized_constants() {
        let st = spanning_tree_ratio().unwrap();
        assert!((st.optimizer.unwrap() - 0.1687).abs() < 1e-3);
        assert!((st.base - 4.7022).abs() < 5e-4);
        assert!((st.absolute_base.unwrap() - 141.07).abs() < 0.05);
        let fr = forest_ratio().unwrap();
        assert!((fr.optimizer.unwrap() - 0.0285).abs() < 1e-3);
    }

    #[test]
    fn curve_peaks_at_peak_density() {
        let curve = emit_curve(0.01, 2.99, 1e-3).unwrap();
        let best = curve
            .iter()
            .max_by(|a, b| a.b.total_cmp(&b.b))
            .unwrap();
        assert!((best.c - PEAK_DENSITY).abs() <= 1e-3);
        assert!(curve_csv(&curve[..2]).starts_with("c,t,B\n0.01,"));
        assert!(emit_curve(1.0, 0.5, 0.1).is_err());
        assert!(emit_curve(0.0, 1.0, 0.0).is_err());
    }
}
