//! Structural facts about biangular tight frames, checked by computation.
//!
//! - Every biangular tight frame is equidistributed ([`check_btf_equidistributed`]).
//! - For odd `N` both multiplicities of an equidistributed biangular frame are
//!   even ([`check_even_multiplicities`]).
//! - No tight biangular frame of 5 vectors in `C^2` reaches the optimal
//!   coherence `1/√2` ([`verify_tight_biangular_5_2`], replaying the case
//!   analysis on the embedded sphere, and [`brute_force_embedded_search`],
//!   an independent exhaustive search over Gram matrices).

use std::collections::HashSet;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::analysis::{angle_set, common_row, tightness_with_tol};
use crate::bounds::{orthoplex_bound, welch_bound};
use crate::error::{Error, Result};
use crate::frame::{Field, Frame, Tolerances};

/// Angles and multiplicities of an equidistributed biangular tight frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BtfProfile {
    pub angles: (f64, f64),
    pub multiplicities: (usize, usize),
    pub n: usize,
    pub m: usize,
    /// `|m₁c₁² + m₂c₂² - (N-M)/M|`.
    pub identity_residual: f64,
}

pub fn check_btf_equidistributed(frame: &Frame) -> Result<BtfProfile> {
    check_btf_equidistributed_with(frame, &Tolerances::default())
}

pub fn check_btf_equidistributed_with(frame: &Frame, tol: &Tolerances) -> Result<BtfProfile> {
    let summary = angle_set(frame, tol.cluster)?;
    if summary.k() != 2 {
        return Err(Error::NotBiangular { k: summary.k() });
    }
    let tight = tightness_with_tol(frame, tol.tight(frame.len()));
    if !tight.is_tight {
        return Err(Error::NotTight {
            defect: tight.defect,
        });
    }
    let row = common_row(&summary).ok_or(Error::NotEquidistributed)?;
    let (c1, c2) = (summary.angles[0], summary.angles[1]);
    let (n, m) = (frame.len(), frame.dim());
    let lhs = row[0] as f64 * c1 * c1 + row[1] as f64 * c2 * c2;
    let rhs = (n as f64 - m as f64) / m as f64;
    Ok(BtfProfile {
        angles: (c1, c2),
        multiplicities: (row[0], row[1]),
        n,
        m,
        identity_residual: (lhs - rhs).abs(),
    })
}

/// Whether both multiplicities are even. Must be true for odd `N`; a `false`
/// means the profile cannot come from a genuine frame.
pub fn check_even_multiplicities(profile: &BtfProfile) -> Result<bool> {
    if profile.n.is_multiple_of(2) {
        return Err(Error::NNotOdd { n: profile.n });
    }
    let (m1, m2) = profile.multiplicities;
    Ok(m1 % 2 == 0 && m2 % 2 == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StatementId {
    /// Tight 5-vector Grassmannian frames in `C^2` have at least three angles.
    #[serde(rename = "thm54")]
    TightBiangular52,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub branch: String,
    pub refutation: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseCertificate {
    pub statement_id: StatementId,
    /// Number of terminal branches of the case tree.
    pub branches_explored: usize,
    /// Terminal branches that end in a sign assignment for the last coordinates.
    pub sign_branches: usize,
    pub all_refuted: bool,
    /// Smallest norm of `Σ y_j` over all sign assignments.
    pub min_zero_sum_defect: f64,
    pub witness_log: Vec<Witness>,
}

const LABEL_TOL: f64 = 1e-12;

/// Replays the case analysis showing that a tight biangular frame of 5
/// vectors in `C^2` cannot have coherence `1/√2`.
///
/// Every quantity that drives a branch (the optimal coherence, the forced
/// second angle, the embedded inner products, the coordinates of the points)
/// is computed here rather than asserted.
pub fn verify_tight_biangular_5_2() -> CaseCertificate {
    const N: usize = 5;
    const M: usize = 2;
    let mut log = Vec::new();
    let mut refuted = Vec::new();
    let mut note = |branch: String, refutation: String, ok: bool, log: &mut Vec<Witness>| {
        log.push(Witness { branch, refutation });
        refuted.push(ok);
    };

    let mu = orthoplex_bound(N, M, Field::Complex)
        .value
        .expect("orthoplex bound applies to 5 vectors in C^2");
    let welch = welch_bound(N, M).expect("N > M");

    // One angle: equiangular frames sit on the Welch bound.
    note(
        "one angle (equiangular)".into(),
        format!("coherence would equal the Welch bound {welch:.12} < optimal {mu:.12}"),
        welch < mu - LABEL_TOL,
        &mut log,
    );

    // Two angles c1 = mu > c2; multiplicities sum to N - 1 and are positive.
    let target = (N as f64 - M as f64) / M as f64;
    let mut c2 = None;
    for m1 in 1..(N - 1) {
        let m2 = N - 1 - m1;
        if m1 % 2 == 1 || m2 % 2 == 1 {
            note(
                format!("two angles, multiplicities ({m1}, {m2})"),
                "N is odd, so N·m_k pairs would have to be counted twice: multiplicities must be even".into(),
                true,
                &mut log,
            );
            continue;
        }
        let sq = (target - m1 as f64 * mu * mu) / m2 as f64;
        c2 = Some(sq.sqrt());
    }
    let c2 = c2.expect("the parity-compatible split exists");

    // Embedded inner products <y_j, y_l> = (M |<φ_j, φ_l>|² - 1) / (M - 1).
    let embed_ip = |c: f64| (M as f64 * c * c - 1.0) / (M as f64 - 1.0);
    let (a, b) = (embed_ip(mu), embed_ip(c2));
    let per_vector: [f64; 4] = [a, a, b, b];
    log.push(Witness {
        branch: "setup".into(),
        refutation: format!(
            "optimal coherence {mu:.12}, forced second angle {c2:.12}, embedded inner products per vector {per_vector:?}"
        ),
    });

    // y1 = e1, y2 = e2 (an a-partner of y1), y3 = the other a-partner of y1.
    // Labels: 0 stands for inner product a, 1 for b.
    let mut sign_branches = 0;
    let mut min_defect = f64::INFINITY;
    for label_23 in [0u8, 1] {
        let mut labels = [[None::<u8>; N]; N];
        let set = |labels: &mut [[Option<u8>; N]; N], i: usize, j: usize, v: u8| {
            labels[i][j] = Some(v);
            labels[j][i] = Some(v);
        };
        set(&mut labels, 0, 1, 0);
        set(&mut labels, 0, 2, 0);
        set(&mut labels, 0, 3, 1);
        set(&mut labels, 0, 4, 1);
        set(&mut labels, 1, 2, label_23);
        if label_23 == 0 {
            match propagate_labels(&mut labels, [2, 2]) {
                Err(vertex) => note(
                    format!("<y2,y3> = {a}"),
                    format!(
                        "y1, y2, y3 are mutually at {a}, forcing y{} to have more than two partners at {b}",
                        vertex + 1
                    ),
                    true,
                    &mut log,
                ),
                Ok(()) => note(format!("<y2,y3> = {a}"), "no contradiction found".into(), false, &mut log),
            }
            continue;
        }
        // <y2,y3> = b: y2 still needs one more a-partner among y4, y5.
        for (case, a_partner) in [("i", 3usize), ("ii", 4usize)] {
            let mut labels = labels;
            let other = 7 - a_partner;
            set(&mut labels, 1, a_partner, 0);
            set(&mut labels, 1, other, 1);
            let value = |lab: Option<u8>| if lab == Some(0) { a } else { b };
            // first two coordinates are inner products with y1 = e1, y2 = e2
            let heads: Vec<[f64; 2]> = (2..N)
                .map(|k| [value(labels[0][k]), value(labels[1][k])])
                .collect();
            let tails: Vec<f64> = heads
                .iter()
                .map(|h| (1.0 - h[0] * h[0] - h[1] * h[1]).max(0.0).sqrt())
                .collect();
            for signs in 0..(1u32 << tails.len()) {
                sign_branches += 1;
                let mut sum = [1.0, 1.0, 0.0];
                let mut sign_text = Vec::new();
                for (k, (h, t)) in heads.iter().zip(&tails).enumerate() {
                    let s = if signs >> k & 1 == 1 { -1.0 } else { 1.0 };
                    sum[0] += h[0];
                    sum[1] += h[1];
                    sum[2] += s * t;
                    sign_text.push(format!("{}{:.6}", if s > 0.0 { "+" } else { "-" }, t));
                }
                let defect = (sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]).sqrt();
                min_defect = min_defect.min(defect);
                note(
                    format!("<y2,y3> = {b}, case ({case}), third coordinates {}", sign_text.join(" ")),
                    format!("sum of embedded points has norm {defect:.6}, but a tight frame embeds to a zero sum"),
                    defect > 1e-9,
                    &mut log,
                );
            }
        }
    }
    CaseCertificate {
        statement_id: StatementId::TightBiangular52,
        branches_explored: refuted.len(),
        sign_branches,
        all_refuted: refuted.iter().all(|&r| r),
        min_zero_sum_defect: min_defect,
        witness_log: log,
    }
}

/// Fills labels forced by per-vertex label counts until nothing changes.
/// Returns the index of a vertex whose counts cannot be met.
#[allow(clippy::needless_range_loop)]
fn propagate_labels<const N: usize>(
    labels: &mut [[Option<u8>; N]; N],
    need: [usize; 2],
) -> std::result::Result<(), usize> {
    loop {
        let mut changed = false;
        for v in 0..N {
            let mut count = [0usize; 2];
            let mut open = Vec::new();
            for u in 0..N {
                if u == v {
                    continue;
                }
                match labels[v][u] {
                    Some(l) => count[l as usize] += 1,
                    None => open.push(u),
                }
            }
            if count[0] > need[0] || count[1] > need[1] {
                return Err(v);
            }
            let fill = if count[0] == need[0] {
                Some(1)
            } else if count[1] == need[1] {
                Some(0)
            } else {
                None
            };
            if let Some(l) = fill {
                for u in open {
                    labels[v][u] = Some(l);
                    labels[u][v] = Some(l);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

const MAX_POINTS: usize = 8;
const MAX_DIM: usize = 3;
const EIG_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-8;

/// Searches for `n` unit vectors in `R^d` such that every vector's inner
/// products with the others form the multiset `profile`, optionally summing
/// to zero.
///
/// Every labelled assignment of profile values to pairs is enumerated (up to
/// isomorphism), turned into a candidate Gram matrix and accepted when it is
/// positive semidefinite of rank at most `d`.
pub fn brute_force_embedded_search(
    profile: &[f64],
    n: usize,
    d: usize,
    zero_sum: bool,
) -> Result<Option<Vec<Vec<f64>>>> {
    if n > MAX_POINTS || d > MAX_DIM {
        return Err(Error::SizeExceeded(format!(
            "desk-scale search supports N <= {MAX_POINTS}, d <= {MAX_DIM}; got N = {n}, d = {d}"
        )));
    }
    if n == 0 || d == 0 || profile.len() != n - 1 {
        return Err(Error::ShapeMismatch(format!(
            "profile must have N - 1 = {} entries, got {}",
            n.saturating_sub(1),
            profile.len()
        )));
    }
    if profile.iter().any(|v| !(-1.0..=1.0).contains(v)) {
        return Err(Error::ShapeMismatch(
            "inner products must lie in [-1, 1]".into(),
        ));
    }

    let mut values: Vec<f64> = Vec::new();
    let mut need: Vec<usize> = Vec::new();
    let mut sorted = profile.to_vec();
    sorted.sort_by(f64::total_cmp);
    for v in sorted {
        match values.last() {
            Some(&last) if (v - last).abs() <= LABEL_TOL => *need.last_mut().unwrap() += 1,
            _ => {
                values.push(v);
                need.push(1);
            }
        }
    }

    let mut search = Enumeration {
        n,
        need: &need,
        labels: vec![vec![0u8; n]; n],
        remaining: vec![need.clone(); n],
        seen: HashSet::new(),
        candidates: Vec::new(),
    };
    search.assign(0, 1);

    for labels in search.candidates {
        let gram = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                1.0
            } else {
                values[labels[i][j] as usize]
            }
        });
        if let Some(points) = realize(&gram, d, zero_sum) {
            return Ok(Some(points));
        }
    }
    Ok(None)
}

struct Enumeration<'a> {
    n: usize,
    need: &'a [usize],
    labels: Vec<Vec<u8>>,
    remaining: Vec<Vec<usize>>,
    seen: HashSet<Vec<u8>>,
    candidates: Vec<Vec<Vec<u8>>>,
}

impl Enumeration<'_> {
    fn assign(&mut self, i: usize, j: usize) {
        if i + 1 >= self.n {
            let key = canonical_form(&self.labels);
            if self.seen.insert(key) {
                self.candidates.push(self.labels.clone());
            }
            return;
        }
        if j == self.n {
            if self.remaining[i].iter().any(|&r| r != 0) {
                return;
            }
            self.assign(i + 1, i + 2);
            return;
        }
        for label in 0..self.need.len() {
            if self.remaining[i][label] == 0 || self.remaining[j][label] == 0 {
                continue;
            }
            // vertices 1..n are interchangeable, so row 0 is taken nondecreasing
            if i == 0 && j > 1 && (label as u8) < self.labels[0][j - 1] {
                continue;
            }
            self.labels[i][j] = label as u8;
            self.labels[j][i] = label as u8;
            self.remaining[i][label] -= 1;
            self.remaining[j][label] -= 1;
            self.assign(i, j + 1);
            self.remaining[i][label] += 1;
            self.remaining[j][label] += 1;
        }
    }
}

/// Lexicographically smallest upper triangle (ordered column by column) over
/// all vertex relabelings, found by branch and bound.
fn canonical_form(labels: &[Vec<u8>]) -> Vec<u8> {
    let n = labels.len();
    let mut best: Option<Vec<u8>> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut prefix = Vec::with_capacity(n * (n - 1) / 2);
    extend_canonical(labels, &mut perm, &mut used, &mut prefix, &mut best);
    best.unwrap_or_default()
}

fn extend_canonical(
    labels: &[Vec<u8>],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    prefix: &mut Vec<u8>,
    best: &mut Option<Vec<u8>>,
) {
    let n = labels.len();
    if perm.len() == n {
        if best.as_deref().is_none_or(|b| prefix.as_slice() < b) {
            *best = Some(prefix.clone());
        }
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        let start = prefix.len();
        prefix.extend(perm.iter().map(|&u| labels[u][v]));
        let keep = match best {
            Some(b) => prefix[..] <= b[..prefix.len()],
            None => true,
        };
        if keep {
            used[v] = true;
            perm.push(v);
            extend_canonical(labels, perm, used, prefix, best);
            perm.pop();
            used[v] = false;
        }
        prefix.truncate(start);
    }
}

/// Factors a candidate Gram matrix into points in `R^d` if it is PSD with rank at most `d`.
fn realize(gram: &DMatrix<f64>, d: usize, zero_sum: bool) -> Option<Vec<Vec<f64>>> {
    let n = gram.nrows();
    if zero_sum && gram.sum().abs() > RESIDUAL_TOL {
        return None;
    }
    let eig = SymmetricEigen::new(gram.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    if eig.eigenvalues[order[n - 1]] < -EIG_TOL {
        return None;
    }
    if n > d && eig.eigenvalues[order[d]] > EIG_TOL {
        return None;
    }
    let points: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            (0..d)
                .map(|k| match order.get(k) {
                    Some(&i) => eig.eigenvalues[i].max(0.0).sqrt() * eig.eigenvectors[(j, i)],
                    None => 0.0,
                })
                .collect()
        })
        .collect();
    let mut residual: f64 = 0.0;
    for j in 0..n {
        for l in 0..n {
            let ip: f64 = points[j].iter().zip(&points[l]).map(|(x, y)| x * y).sum();
            residual = residual.max((ip - gram[(j, l)]).abs());
        }
    }
    if zero_sum {
        let norm = (0..d)
            .map(|k| points.iter().map(|p| p[k]).sum::<f64>().powi(2))
            .sum::<f64>()
            .sqrt();
        residual = residual.max(norm);
    }
    (residual <= RESIDUAL_TOL).then_some(points)
}
