use std::io::Write;

use crate::builtin::{alpha_pair, moving_set_pair};
use crate::error::Result;
use crate::scalar::Scalar;

use super::{DivergenceMeasure, Pbagd};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<T: Scalar = f64> {
    pub t: usize,
    pub alpha: Option<T>,
    pub value: T,
}

/// PBAGD between the α-parametrized pair for every `(t, α)` combination,
/// `t` outermost.
pub fn alpha_curve<T: Scalar>(alphas: &[T], ts: &[usize]) -> Result<Vec<CurvePoint<T>>> {
    let measure = Pbagd::default();
    let mut out = Vec::with_capacity(alphas.len() * ts.len());
    for &t in ts {
        for &alpha in alphas {
            let (m1, m2) = alpha_pair(alpha, t);
            out.push(CurvePoint {
                t,
                alpha: Some(alpha),
                value: measure.evaluate(&m1, &m2)?,
            });
        }
    }
    Ok(out)
}

/// Default α grid: 0.05, 0.10, ..., 0.95.
pub fn default_alphas<T: Scalar>() -> Vec<T> {
    (1..=19).map(|k| T::of(k as f64 * 0.05)).collect()
}

/// PBAGD of the moving-set pair for each `t`, using `measure`.
pub fn moving_set_curve<T: Scalar>(
    measure: &dyn DivergenceMeasure<T>,
    ts: &[usize],
) -> Result<Vec<CurvePoint<T>>> {
    ts.iter()
        .map(|&t| {
            let (m1, m2) = moving_set_pair(t);
            Ok(CurvePoint {
                t,
                alpha: None,
                value: measure.evaluate(&m1, &m2)?,
            })
        })
        .collect()
}

/// Writes `t,alpha,value` rows (alpha column omitted when absent).
pub fn write_curve<T: Scalar, W: Write>(
    points: &[CurvePoint<T>],
    out: W,
    precision: Option<usize>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let with_alpha = points.iter().any(|p| p.alpha.is_some());
    let fmt = |x: T| match precision {
        Some(p) => format!("{:.*}", p, x.as_f64()),
        None => format!("{}", x.as_f64()),
    };
    if with_alpha {
        w.write_record(["t", "alpha", "value"])?;
    } else {
        w.write_record(["t", "value"])?;
    }
    for p in points {
        let mut row = vec![p.t.to_string()];
        if with_alpha {
            row.push(
                p.alpha
                    .map(|a| format!("{:.2}", a.as_f64()))
                    .unwrap_or_default(),
            );
        }
        row.push(fmt(p.value));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
