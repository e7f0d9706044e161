//! Upper bounds on the largest dual-graph diameter of an (S2) complex with
//! facet size `d` on `n` vertices.

use serde::Serialize;

use crate::error::{Error, Result};

/// Every applicable bound; `None` marks a bound whose hypotheses fail (or
/// whose value does not fit in 64 bits).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBounds {
    pub d: usize,
    pub n: usize,
    /// `max(2n - 10, n - 2)`, for `d = 3`.
    pub thm32: Option<u64>,
    /// `2^(d-2) (n - d)`.
    pub thm35: Option<u64>,
    /// 8, for codimension 5.
    pub thm36: Option<u64>,
    /// 14, for codimension 6.
    pub thm37: Option<u64>,
    /// `floor(3 · 2^((c-5)/2) · c)` with `c = n - d ≥ 2`.
    pub thm38: Option<u64>,
    /// 3, for codimension 3.
    pub codim3: Option<u64>,
    /// 6, for codimension 4.
    pub codim4: Option<u64>,
    /// The other bounds evaluated at `(c, 2c)`.
    pub klee_walkup_reduced: Option<u64>,
    pub best: u64,
}

impl UpperBounds {
    /// `(name, value)` for every applicable entry.
    pub fn entries(&self) -> Vec<(&'static str, u64)> {
        [
            ("thm32", self.thm32),
            ("thm35", self.thm35),
            ("thm36", self.thm36),
            ("thm37", self.thm37),
            ("thm38", self.thm38),
            ("codim3", self.codim3),
            ("codim4", self.codim4),
            ("klee_walkup_reduced", self.klee_walkup_reduced),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

struct Direct {
    thm32: Option<u64>,
    thm35: Option<u64>,
    thm36: Option<u64>,
    thm37: Option<u64>,
    thm38: Option<u64>,
    codim3: Option<u64>,
    codim4: Option<u64>,
}

impl Direct {
    fn min(&self) -> Option<u64> {
        [
            self.thm32,
            self.thm35,
            self.thm36,
            self.thm37,
            self.thm38,
            self.codim3,
            self.codim4,
        ]
        .into_iter()
        .flatten()
        .min()
    }
}

fn direct(d: usize, n: usize) -> Direct {
    let (d64, n64) = (d as u64, n as u64);
    let c = n64 - d64;
    Direct {
        thm32: (d == 3).then(|| (2 * n64).saturating_sub(10).max(n64 - 2)),
        thm35: 1u64
            .checked_shl((d - 2) as u32)
            .filter(|_| d - 2 < 64)
            .and_then(|p| p.checked_mul(c)),
        thm36: (c == 5).then_some(8),
        thm37: (c == 6).then_some(14),
        thm38: if c >= 2 { thm38(c) } else { None },
        codim3: (c == 3).then_some(3),
        codim4: (c == 4).then_some(6),
    }
}

/// `floor(3 · 2^((c-5)/2) · c) = floor(sqrt(9 c² 2^c / 32))`, exactly.
fn thm38(c: u64) -> Option<u64> {
    let square = 9u128
        .checked_mul(c as u128 * c as u128)?
        .checked_mul(1u128.checked_shl(c as u32).filter(|_| c < 128)?)?
        / 32;
    u64::try_from(square.isqrt()).ok()
}

/// Evaluates every bound for `2 ≤ d < n`.
pub fn bounds(d: usize, n: usize) -> Result<UpperBounds> {
    if d < 2 || n <= d {
        return Err(Error::BadParams(format!(
            "bounds need 2 <= d < n, got d={d}, n={n}"
        )));
    }
    let c = n - d;
    let own = direct(d, n);
    let klee_walkup_reduced = if c >= 2 { direct(c, 2 * c).min() } else { None };
    let best = own
        .min()
        .into_iter()
        .chain(klee_walkup_reduced)
        .min()
        .expect("thm35 applies whenever it fits");
    Ok(UpperBounds {
        d,
        n,
        thm32: own.thm32,
        thm35: own.thm35,
        thm36: own.thm36,
        thm37: own.thm37,
        thm38: own.thm38,
        codim3: own.codim3,
        codim4: own.codim4,
        klee_walkup_reduced,
        best,
    })
}

/// True when `diameter` respects every bound for `(d, n)`.
pub fn within_bounds(d: usize, n: usize, diameter: usize) -> Result<bool> {
    Ok(diameter as u64 <= bounds(d, n)?.best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = bounds(3, 7).unwrap();
        assert_eq!(b.thm32, Some(5));
        assert_eq!(b.best, 5);
        assert_eq!(bounds(3, 9).unwrap().best, 8);
        assert_eq!(bounds(3, 9).unwrap().thm32, Some(8));
        assert_eq!(bounds(4, 8).unwrap().best, 6);
        assert_eq!(bounds(4, 8).unwrap().codim4, Some(6));
    }

    #[test]
    fn thm38_is_exact_floor() {
        for c in 2..40u64 {
            let exact = 3.0 * 2f64.powf((c as f64 - 5.0) / 2.0) * c as f64;
            let got = thm38(c).unwrap();
            // float check away from integer boundaries only
            if (exact - exact.round()).abs() > 1e-6 {
                assert_eq!(got, exact.floor() as u64, "c={c}");
            }
        }
        assert_eq!(thm38(5), Some(15));
        assert_eq!(thm38(2), Some(2));
    }

    #[test]
    fn huge_d_does_not_overflow() {
        let b = bounds(100, 103).unwrap();
        assert_eq!(b.thm35, None);
        assert_eq!(b.best, 3);
    }

    #[test]
    fn codim_one() {
        let b = bounds(5, 6).unwrap();
        assert_eq!(b.thm38, None);
        assert_eq!(b.klee_walkup_reduced, None);
        assert_eq!(b.best, 8);
    }

    #[test]
    fn bad_params() {
        assert!(bounds(1, 3).is_err());
        assert!(bounds(4, 4).is_err());
    }
}
