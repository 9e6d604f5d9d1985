//! Lower bounds on the smallest achievable coherence of `N` unit vectors in `F^M`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::Field;

/// Values within this distance are treated as tied when picking the best bound.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundName {
    Welch,
    Orthoplex,
    Toth,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoplexBound {
    /// `1/√M`, present when `N > D + 1`.
    pub value: Option<f64>,
    /// `N` is beyond the count at which the orthoplex bound can be attained,
    /// so any optimal frame has strictly larger coherence.
    pub saturation_impossible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub welch: f64,
    pub orthoplex: Option<f64>,
    pub toth: Option<f64>,
    pub best: f64,
    pub best_name: BoundName,
    pub orthoplex_saturation_impossible: bool,
}

/// `√((N-M) / (M(N-1)))`.
pub fn welch_bound(n: usize, m: usize) -> Result<f64> {
    if m == 0 || n <= m {
        return Err(Error::NotApplicable(format!(
            "Welch bound needs N > M >= 1, got N = {n}, M = {m}"
        )));
    }
    let (n, m) = (n as f64, m as f64);
    Ok(((n - m) / (m * (n - 1.0))).sqrt())
}

pub fn orthoplex_bound(n: usize, m: usize, field: Field) -> OrthoplexBound {
    if m == 0 {
        return OrthoplexBound {
            value: None,
            saturation_impossible: false,
        };
    }
    let d = field.embedding_dim(m);
    let ceiling = match field {
        Field::Complex => 2 * (m * m - 1),
        Field::Real => (m + 2) * (m - 1),
    };
    OrthoplexBound {
        value: (n > d + 1).then(|| 1.0 / (m as f64).sqrt()),
        saturation_impossible: n > ceiling,
    }
}

/// `½ csc(Nπ / (6(N-2)))`, valid for `N >= 3` vectors in `C^2`.
pub fn toth_bound(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::NotApplicable(format!(
            "Toth bound needs N >= 3, got {n}"
        )));
    }
    let angle = n as f64 * PI / (6.0 * (n as f64 - 2.0));
    Ok(0.5 / angle.sin())
}

/// The cap-packing inequality on `R^3` the Toth coherence bound is derived
/// from: any `N` unit vectors have some pair with inner product at least
/// `½ csc²(Nπ / (6(N-2))) - 1`.
pub fn toth_sphere_bound(n: usize) -> Result<f64> {
    let half_csc = toth_bound(n)?;
    Ok(2.0 * half_csc * half_csc - 1.0)
}

/// All applicable bounds and the largest of them. Ties prefer Welch, then orthoplex.
pub fn best_bound(n: usize, m: usize, field: Field) -> Result<BoundReport> {
    let welch = welch_bound(n, m)?;
    let ortho = orthoplex_bound(n, m, field);
    let toth = if field == Field::Complex && m == 2 {
        Some(toth_bound(n)?)
    } else {
        None
    };

    let mut best = welch;
    let mut best_name = BoundName::Welch;
    for (value, name) in [(ortho.value, BoundName::Orthoplex), (toth, BoundName::Toth)] {
        if let Some(v) = value {
            if v > best + TIE_TOL {
                best = v;
                best_name = name;
            }
        }
    }
    Ok(BoundReport {
        welch,
        orthoplex: ortho.value,
        toth,
        best,
        best_name,
        orthoplex_saturation_impossible: ortho.saturation_impossible,
    })
}
