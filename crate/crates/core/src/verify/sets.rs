//! The integer families on which cyclic complexity has special behavior.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetId {
    /// Powers of two, `2^i` for `i >= 0`.
    P2,
    /// `2^k - 1` for `k >= 1`.
    A,
    /// `2^k + 1` for `k >= 2`.
    B,
    /// `12 * 2^k - 3` for `k >= 0`.
    D,
    /// `(2^(2i+1) + 1) * 2^j` for `i >= 1`, `j >= 0`.
    J,
    /// `4m + 3` for `m` in `J`.
    FourJPlus3,
    /// `2m + 3` for `m` in `J`.
    TwoJPlus3,
    /// `2m - 5` for `m` in `J`.
    TwoJMinus5,
}

impl SetId {
    pub const ALL: [SetId; 8] = [
        SetId::P2,
        SetId::A,
        SetId::B,
        SetId::D,
        SetId::J,
        SetId::FourJPlus3,
        SetId::TwoJPlus3,
        SetId::TwoJMinus5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetId::P2 => "P2",
            SetId::A => "A",
            SetId::B => "B",
            SetId::D => "D",
            SetId::J => "J",
            SetId::FourJPlus3 => "4J+3",
            SetId::TwoJPlus3 => "2J+3",
            SetId::TwoJMinus5 => "2J-5",
        }
    }

    pub fn contains(self, n: u64) -> bool {
        match self {
            SetId::P2 => n.is_power_of_two(),
            SetId::A => n >= 1 && n.checked_add(1).is_none_or(u64::is_power_of_two),
            SetId::B => n >= 5 && (n - 1).is_power_of_two(),
            SetId::D => {
                let m = n as u128 + 3;
                m.is_multiple_of(3) && (m / 3).is_power_of_two() && m / 3 >= 4
            }
            SetId::J => in_j(n),
            SetId::FourJPlus3 => n >= 3 && (n - 3).is_multiple_of(4) && in_j((n - 3) / 4),
            SetId::TwoJPlus3 => n >= 3 && (n - 3).is_multiple_of(2) && in_j((n - 3) / 2),
            SetId::TwoJMinus5 => (n + 5).is_multiple_of(2) && in_j((n + 5) / 2),
        }
    }
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        SetId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(&key))
            .ok_or_else(|| Error::UnknownSet(s.to_string()))
    }
}

/// `n = m * 2^j` with `m` odd and `m - 1` a power of two with odd exponent at least 3.
fn in_j(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let m = n >> n.trailing_zeros();
    if m < 9 {
        return false;
    }
    let e = m - 1;
    e.is_power_of_two() && e.trailing_zeros() % 2 == 1
}

/// Membership by set name (`P2`, `A`, `B`, `D`, `J`, `4J+3`, `2J+3`, `2J-5`).
pub fn in_set(name: &str, n: u64) -> Result<bool> {
    Ok(name.parse::<SetId>()?.contains(n))
}

/// The element of `J` with parameters `(i, j)`.
pub fn j_element(i: u32, j: u32) -> u64 {
    ((1u64 << (2 * i + 1)) + 1) << j
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(id: SetId, below: u64) -> Vec<u64> {
        (0..below).filter(|&n| id.contains(n)).collect()
    }

    #[test]
    fn small_members() {
        assert_eq!(members(SetId::P2, 40), [1, 2, 4, 8, 16, 32]);
        assert_eq!(members(SetId::A, 40), [1, 3, 7, 15, 31]);
        assert_eq!(members(SetId::B, 40), [5, 9, 17, 33]);
        assert_eq!(members(SetId::D, 100), [9, 21, 45, 93]);
        assert_eq!(members(SetId::J, 80), [9, 18, 33, 36, 66, 72]);
        assert_eq!(members(SetId::FourJPlus3, 160), [39, 75, 135, 147]);
        assert_eq!(members(SetId::TwoJPlus3, 80), [21, 39, 69, 75]);
        assert_eq!(members(SetId::TwoJMinus5, 80), [13, 31, 61, 67]);
    }

    #[test]
    fn named_lookup() {
        assert!(in_set("J", 9).unwrap());
        assert!(!in_set("J", 12).unwrap());
        assert!(in_set("A", 31).unwrap());
        assert!(in_set("D", 45).unwrap());
        assert!(in_set("4j+3", 39).unwrap());
        assert!(matches!(in_set("K", 1), Err(Error::UnknownSet(_))));
        assert!(SetId::A.contains(u64::MAX));
        assert!(!SetId::D.contains(u64::MAX));
    }

    #[test]
    fn j_by_generation() {
        let mut generated: Vec<u64> = Vec::new();
        for i in 1..=10 {
            for j in 0..=20 {
                let n = j_element(i, j);
                if n < 1 << 22 {
                    generated.push(n);
                }
            }
        }
        generated.sort_unstable();
        assert_eq!(members(SetId::J, 1 << 22), generated);
    }
}
