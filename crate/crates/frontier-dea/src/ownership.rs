//! Ownership concentration ratios and percentage brackets.
//!
//! A concentration ratio CR_k is the sum of the k largest shareholder stakes
//! of a firm, in percent of paid-up capital. Ratios are binned into the
//! half-open brackets (0,10], (10,30], (30,50], (50,70], (70,90], (90,100],
//! so integer bracket labels stay truthful for integer-valued data.

use crate::error::{Error, Result};

/// One firm-year's disclosed shareholder stakes, in percent. Input order is
/// irrelevant; sorting happens inside [`cr`].
#[derive(Debug, Clone, PartialEq)]
pub struct ShareRegister {
    pub firm_id: String,
    pub year: i32,
    stakes: Vec<f64>,
}

impl ShareRegister {
    /// Validates every stake in (0, 100] and the total at most 100 (within
    /// 1e-6 for rounding in published reports). An empty stake list is a
    /// valid register with nothing disclosed.
    pub fn new(firm_id: impl Into<String>, year: i32, stakes: Vec<f64>) -> Result<Self> {
        let firm_id = firm_id.into();
        for &s in &stakes {
            if !(s.is_finite() && s > 0.0 && s <= 100.0) {
                return Err(Error::Validation(format!(
                    "firm {firm_id}: stake {s} outside (0, 100]"
                )));
            }
        }
        let total: f64 = stakes.iter().sum();
        if total > 100.0 + 1e-6 {
            return Err(Error::Validation(format!(
                "firm {firm_id}: stakes sum to {total}, exceeding 100%"
            )));
        }
        Ok(Self {
            firm_id,
            year,
            stakes,
        })
    }

    pub fn stakes(&self) -> &[f64] {
        &self.stakes
    }

    /// Number of stakes present.
    pub fn disclosed_count(&self) -> usize {
        self.stakes.len()
    }
}

/// Sum of the `k` largest stakes. `truncated` is set when fewer than `k`
/// stakes were disclosed and the sum covers all of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationRatio {
    pub k: usize,
    pub value: f64,
    pub truncated: bool,
}

/// Compute CR_k for a register.
pub fn cr(register: &ShareRegister, k: usize) -> Result<ConcentrationRatio> {
    if k == 0 {
        return Err(Error::Validation("concentration order k must be >= 1".into()));
    }
    if register.stakes.is_empty() {
        return Err(Error::Validation(format!(
            "firm {}: no disclosed shareholders",
            register.firm_id
        )));
    }
    let mut sorted = register.stakes.clone();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("stakes are finite"));
    let take = k.min(sorted.len());
    let value: f64 = sorted[..take].iter().sum();
    Ok(ConcentrationRatio {
        k,
        value,
        truncated: register.stakes.len() < k,
    })
}

/// The six percentage brackets, partitioning (0, 100].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bracket {
    UpTo10,
    From11To30,
    From31To50,
    From51To70,
    From71To90,
    Over90,
}

impl Bracket {
    pub const ALL: [Bracket; 6] = [
        Bracket::UpTo10,
        Bracket::From11To30,
        Bracket::From31To50,
        Bracket::From51To70,
        Bracket::From71To90,
        Bracket::Over90,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Bracket::UpTo10 => "\u{2264}10",
            Bracket::From11To30 => "11\u{2013}30",
            Bracket::From31To50 => "31\u{2013}50",
            Bracket::From51To70 => "51\u{2013}70",
            Bracket::From71To90 => "71\u{2013}90",
            Bracket::Over90 => ">90",
        }
    }

    /// ASCII identifier used in CSV headers and JSON keys.
    pub fn key(self) -> &'static str {
        match self {
            Bracket::UpTo10 => "up_to_10",
            Bracket::From11To30 => "from_11_to_30",
            Bracket::From31To50 => "from_31_to_50",
            Bracket::From51To70 => "from_51_to_70",
            Bracket::From71To90 => "from_71_to_90",
            Bracket::Over90 => "over_90",
        }
    }

    /// Half-open interval (low, high] covered by this bracket.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            Bracket::UpTo10 => (0.0, 10.0),
            Bracket::From11To30 => (10.0, 30.0),
            Bracket::From31To50 => (30.0, 50.0),
            Bracket::From51To70 => (50.0, 70.0),
            Bracket::From71To90 => (70.0, 90.0),
            Bracket::Over90 => (90.0, 100.0),
        }
    }

    pub fn index(self) -> usize {
        Bracket::ALL.iter().position(|b| *b == self).expect("listed")
    }
}

impl std::fmt::Display for Bracket {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// The unique bracket containing `value`.
pub fn bracket_of(value: f64) -> Result<Bracket> {
    if !(value.is_finite() && value > 0.0 && value <= 100.0) {
        return Err(Error::Validation(format!(
            "percentage {value} outside (0, 100]"
        )));
    }
    let bracket = Bracket::ALL
        .into_iter()
        .find(|b| {
            let (lo, hi) = b.bounds();
            value > lo && value <= hi
        })
        .expect("brackets cover (0, 100]");
    Ok(bracket)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn register(stakes: &[f64]) -> ShareRegister {
        ShareRegister::new("F", 2010, stakes.to_vec()).unwrap()
    }

    #[test]
    fn sole_owner() {
        let r = cr(&register(&[100.0]), 1).unwrap();
        assert_eq!(r.value, 100.0);
        assert!(!r.truncated);
    }

    #[test]
    fn top_k_sums_sorted() {
        let reg = register(&[20.0, 40.0, 10.0, 5.0, 3.0]);
        let r2 = cr(&reg, 2).unwrap();
        assert_eq!(r2.value, 60.0);
        assert!(!r2.truncated);
        let r4 = cr(&reg, 4).unwrap();
        assert_eq!(r4.value, 75.0);
    }

    #[test]
    fn fewer_than_k_disclosed() {
        let r = cr(&register(&[40.0, 20.0]), 4).unwrap();
        assert_eq!(r.value, 60.0);
        assert!(r.truncated);
    }

    #[test]
    fn empty_register_errors() {
        let reg = ShareRegister::new("F", 2010, vec![]).unwrap();
        assert!(matches!(cr(&reg, 1), Err(Error::Validation(_))));
    }

    #[test]
    fn zero_k_errors() {
        assert!(matches!(
            cr(&register(&[50.0]), 0),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn invalid_stakes_rejected() {
        assert!(ShareRegister::new("F", 2010, vec![0.0]).is_err());
        assert!(ShareRegister::new("F", 2010, vec![101.0]).is_err());
        assert!(ShareRegister::new("F", 2010, vec![-5.0]).is_err());
        assert!(ShareRegister::new("F", 2010, vec![60.0, 50.0]).is_err());
    }

    #[test]
    fn bracket_lookup() {
        assert_eq!(bracket_of(40.0).unwrap(), Bracket::From31To50);
        assert_eq!(bracket_of(95.0).unwrap(), Bracket::Over90);
        assert_eq!(bracket_of(100.0).unwrap(), Bracket::Over90);
    }

    #[test]
    fn bracket_boundaries_are_half_open() {
        assert_eq!(bracket_of(10.0).unwrap(), Bracket::UpTo10);
        assert_eq!(bracket_of(10.000001).unwrap(), Bracket::From11To30);
        assert_eq!(bracket_of(30.0).unwrap(), Bracket::From11To30);
        assert_eq!(bracket_of(90.0).unwrap(), Bracket::From71To90);
    }

    #[test]
    fn bracket_domain_errors() {
        assert!(bracket_of(0.0).is_err());
        assert!(bracket_of(-1.0).is_err());
        assert!(bracket_of(100.0001).is_err());
        assert!(bracket_of(f64::NAN).is_err());
    }

    #[test]
    fn monotone_in_k() {
        let reg = register(&[30.0, 25.0, 20.0, 10.0, 5.0]);
        let mut prev = 0.0;
        for k in 1..=7 {
            let v = cr(&reg, k).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn permutation_invariant() {
        let a = cr(&register(&[5.0, 40.0, 20.0]), 2).unwrap();
        let b = cr(&register(&[40.0, 20.0, 5.0]), 2).unwrap();
        let c = cr(&register(&[20.0, 5.0, 40.0]), 2).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(b.value, c.value);
    }

    #[test]
    fn brackets_partition_the_domain() {
        let mut v = 0.001_f64;
        while v <= 100.0 {
            let hits = Bracket::ALL
                .iter()
                .filter(|b| {
                    let (lo, hi) = b.bounds();
                    v > lo && v <= hi
                })
                .count();
            assert_eq!(hits, 1, "value {v} must land in exactly one bracket");
            v += 0.37;
        }
    }
}
