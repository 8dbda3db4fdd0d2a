//! Membership and minimum-weight certification through power sums.
//!
//! A set `S` of nonzero field elements is the support of a word of the
//! narrow-sense BCH code of designed distance `d` iff
//! `p_j = Σ_(x ∈ S) x^j` vanishes for `j = 1, ..., d - 1`. The extended code
//! adds a parity coordinate at 0, which only enters through `|S|` being
//! even, and its designed distance `d` is one more, so the range shrinks to
//! `j <= d - 2`. A member of weight exactly `d` is a minimum-weight word.
//!
//! This module only looks at element sets: it never consults how a support
//! was built.

use crate::construct::CodewordSupport;
use crate::error::{Error, Result};
use crate::gf2m::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub member: bool,
    pub weight: u64,
    pub claimed_distance: u64,
    pub is_min_weight: bool,
    /// The smallest `j` with `p_j != 0`, and `p_j`. A parity failure of an
    /// extended support is reported as `(0, 1)`, since `p_0` counts every
    /// element including 0. `None` when the only failure is `0 ∈ S` for a
    /// non-extended code.
    pub failing_syndrome: Option<(u64, Elem)>,
}

/// `d(m, s, i) = 2^(m-1-s) - 2^(m-1-i-s)`.
pub fn designed_distance(m: u32, s: u32, i: u32) -> Result<u64> {
    if !(2..=63).contains(&m) || 2 * i > m || s > m - 2 * i {
        return Err(Error::BadRange { m, s, i });
    }
    if i == 0 {
        return Ok(0);
    }
    Ok((1u64 << (m - 1 - s)) - (1u64 << (m - 1 - i - s)))
}

/// `p_1, ..., p_(j_max)` by direct exponentiation, skipping 0.
pub fn power_sums(field: &Field, cw: &CodewordSupport, j_max: u64) -> Vec<Elem> {
    (1..=j_max)
        .map(|j| {
            cw.elems
                .iter()
                .filter(|x| !x.is_zero())
                .fold(Elem::ZERO, |acc, &x| {
                    acc + field.pow(x, j as i64).expect("x is nonzero")
                })
        })
        .collect()
}

/// `p_(2j mod n) = p_j^2` for every `j <= j_max`, where `n = 2^m - 1`.
pub fn conjugacy_holds(field: &Field, cw: &CodewordSupport, j_max: u64) -> bool {
    let n = field.order();
    let p = power_sums(field, cw, n.min(2 * j_max));
    (1..=j_max.min(n)).all(|j| {
        let k = (2 * j) % n;
        let pk = if k == 0 {
            p[n as usize - 1]
        } else {
            p[k as usize - 1]
        };
        pk == field.square(p[j as usize - 1])
    })
}

/// The smallest representatives of the 2-cyclotomic cosets modulo
/// `2^m - 1` that meet `1..=j_max`. Every `j` in that range is
/// `leader · 2^k mod (2^m - 1)` for a leader not larger than `j`, and
/// `p_(2j) = p_j^2`, so checking leaders covers the whole range.
pub fn coset_leaders(m: u32, j_max: u64) -> Vec<u64> {
    let n = (1u64 << m) - 1;
    let rot = |j: u64| ((j << 1) | (j >> (m - 1))) & n;
    (1..=j_max.min(n - 1))
        .filter(|&j| {
            let mut r = rot(j);
            while r != j {
                if r < j {
                    return false;
                }
                r = rot(r);
            }
            true
        })
        .collect()
}

fn syndrome_range(cw: &CodewordSupport) -> Result<u64> {
    let d = cw.claimed_distance;
    if d < 2 || (cw.extended && !d.is_multiple_of(2)) {
        return Err(Error::BadDistanceParity(d));
    }
    Ok(if cw.extended { d - 2 } else { d - 1 })
}

/// The first leader `j` with `p_j != 0`.
fn first_nonzero_syndrome(field: &Field, cw: &CodewordSupport, j_max: u64) -> Option<(u64, Elem)> {
    let leaders = coset_leaders(field.m(), j_max);
    let nonzero = cw.elems.iter().copied().filter(|x| !x.is_zero());
    if let Some((log, exp)) = field.log_exp_tables() {
        let n = field.order();
        let logs: Vec<u64> = nonzero.map(|x| log[x.bits() as usize] as u64).collect();
        for j in leaders {
            let p = logs
                .iter()
                .fold(0u32, |acc, &l| acc ^ exp[((l * j) % n) as usize]);
            if p != 0 {
                return Some((j, Elem(p)));
            }
        }
    } else {
        let xs: Vec<Elem> = nonzero.collect();
        for j in leaders {
            let p = xs.iter().fold(Elem::ZERO, |acc, &x| {
                acc + field.pow(x, j as i64).expect("x is nonzero")
            });
            if !p.is_zero() {
                return Some((j, p));
            }
        }
    }
    None
}

pub fn is_member(field: &Field, cw: &CodewordSupport) -> Result<bool> {
    Ok(is_min_weight(field, cw)?.member)
}

pub fn is_min_weight(field: &Field, cw: &CodewordSupport) -> Result<Verdict> {
    let j_max = syndrome_range(cw)?;
    let weight = cw.elems.len() as u64;
    let failing_syndrome = if cw.extended && !weight.is_multiple_of(2) {
        Some((0, Elem::ONE))
    } else {
        first_nonzero_syndrome(field, cw, j_max)
    };
    let zero_ok = cw.extended || !cw.elems.contains(&Elem::ZERO);
    let member = zero_ok && failing_syndrome.is_none();
    Ok(Verdict {
        member,
        weight,
        claimed_distance: cw.claimed_distance,
        is_min_weight: member && weight == cw.claimed_distance,
        failing_syndrome,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn field(m: u32) -> Field {
        Field::with_default(m).unwrap()
    }

    fn support(elems: &[u32], d: u64, extended: bool) -> CodewordSupport {
        CodewordSupport {
            elems: elems.iter().map(|&b| Elem(b)).collect(),
            claimed_distance: d,
            extended,
        }
    }

    #[test]
    fn distances() {
        assert_eq!(designed_distance(4, 0, 2), Ok(6));
        assert_eq!(designed_distance(8, 0, 3), Ok(112));
        for m in 6..=20 {
            assert_eq!(designed_distance(m, m - 6, 3), Ok(28));
        }
        assert_eq!(designed_distance(16, 10, 2), Ok(24));
        assert_eq!(
            designed_distance(8, 3, 3),
            Err(Error::BadRange { m: 8, s: 3, i: 3 })
        );
        assert_eq!(
            designed_distance(1, 0, 0),
            Err(Error::BadRange { m: 1, s: 0, i: 0 })
        );
    }

    #[test]
    fn power_sum_basics() {
        let f = field(6);
        assert!(power_sums(&f, &support(&[], 4, true), 5)
            .iter()
            .all(|p| p.is_zero()));
        assert_eq!(power_sums(&f, &support(&[7], 4, true), 1), [Elem(7)]);
        assert_eq!(power_sums(&f, &support(&[7, 9], 4, true), 1), [Elem(7 ^ 9)]);
        assert_eq!(power_sums(&f, &support(&[0, 7], 4, true), 1), [Elem(7)]);
    }

    #[test]
    fn leaders_cover_range() {
        for m in [4, 5, 8] {
            let n = (1u64 << m) - 1;
            let jmax = n / 2;
            let leaders = coset_leaders(m, jmax);
            for j in 1..=jmax {
                let covered = leaders.iter().any(|&l| (0..m).any(|k| (l << k) % n == j));
                assert!(covered, "m={m} j={j}");
            }
        }
        assert_eq!(coset_leaders(4, 14), [1, 3, 5, 7]);
    }

    #[test]
    fn conjugacy_self_test() {
        let f = field(7);
        let cw = support(&[1, 2, 3, 17, 40, 99, 100], 4, true);
        assert!(conjugacy_holds(&f, &cw, 127));
    }

    #[test]
    fn fast_path_agrees_with_direct_sums() {
        let f = field(8);
        let cw = support(&[1, 5, 9, 33, 77, 200, 201, 250], 20, true);
        let direct = power_sums(&f, &cw, 18);
        let first = direct
            .iter()
            .position(|p| !p.is_zero())
            .map(|k| (k as u64 + 1, direct[k]));
        assert_eq!(first_nonzero_syndrome(&f, &cw, 18), first);
        let big = Field::with_default(28).unwrap();
        let cw = support(&[1, 5, 9, 33], 6, true);
        let direct = power_sums(&big, &cw, 4);
        let first = direct
            .iter()
            .position(|p| !p.is_zero())
            .map(|k| (k as u64 + 1, direct[k]));
        assert_eq!(first_nonzero_syndrome(&big, &cw, 4), first);
    }

    #[test]
    fn parity_and_zero_rules() {
        let f = field(6);
        let v = is_min_weight(&f, &support(&[3], 4, true)).unwrap();
        assert!(!v.member && v.failing_syndrome == Some((0, Elem::ONE)));
        assert_eq!(
            is_member(&f, &support(&[], 5, true)),
            Err(Error::BadDistanceParity(5))
        );
        let empty = is_min_weight(&f, &support(&[], 4, true)).unwrap();
        assert!(empty.member && !empty.is_min_weight);
        let with_zero = is_min_weight(&f, &support(&[0], 2, false)).unwrap();
        assert!(!with_zero.member && with_zero.failing_syndrome.is_none());
    }

    #[test]
    fn whole_field_is_in_every_extended_code() {
        // Σ_(x != 0) x^j = 0 for 0 < j < 2^m - 1
        let f = field(5);
        let all: BTreeSet<Elem> = f.elements().collect();
        let cw = CodewordSupport {
            elems: all,
            claimed_distance: 32,
            extended: true,
        };
        let v = is_min_weight(&f, &cw).unwrap();
        assert!(v.member && v.is_min_weight);
    }

    #[test]
    fn subspaces_of_codim_one_are_members() {
        // a hyperplane through 0 is a minimum-weight word of the extended
        // code of designed distance 2^(m-1)
        let f = field(6);
        let plane: BTreeSet<Elem> = f.elements().filter(|&x| !f.trace(x)).collect();
        let cw = CodewordSupport {
            elems: plane,
            claimed_distance: 32,
            extended: true,
        };
        assert!(is_min_weight(&f, &cw).unwrap().is_min_weight);
    }
}
