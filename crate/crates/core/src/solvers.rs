//! Solvers for the quadratic-form system
//!
//! ```text
//!   Σ_(j odd) f_ℓ(b_j, b_(j+1)) = 0,   ℓ = 1, ..., i-1,
//!   f_ℓ(x1, x2) = x1^(2^ℓ) x2 + x1 x2^(2^ℓ),
//! ```
//!
//! in `2i` unknowns with GF(2)-independent entries. A solution determines a
//! minimum-weight codeword of the extended BCH code of designed distance
//! `2^(m-1) - 2^(m-1-i)` (see [`crate::construct`]).
//!
//! Where a construction leaves a choice open, it is pinned: `v = 1`,
//! `v' = α` for the odd-m `i = 2` solver, `(x, y) = (1, α)` for the even-m
//! one, and the two smallest roots in the heuristic `i = 3` solver.

use std::collections::HashMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2m::{Elem, Field};
use crate::gflinalg::independent;
use crate::linearized::affine_cubic_roots;

/// Seeded generator used by every probabilistic solver.
pub type SolverRng = ChaCha8Rng;

pub fn solver_rng(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Which construction produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    I2Even,
    I2Odd,
    I2Composite,
    I3Even,
    I3Heuristic,
    I4Div4,
    BruteForce,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::I2Even,
        Method::I2Odd,
        Method::I2Composite,
        Method::I3Even,
        Method::I3Heuristic,
        Method::I4Div4,
        Method::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::I2Even => "i2-even",
            Method::I2Odd => "i2-odd",
            Method::I2Composite => "i2-composite",
            Method::I3Even => "i3-even",
            Method::I3Heuristic => "i3-heuristic",
            Method::I4Div4 => "i4",
            Method::BruteForce => "brute-force",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }

    /// Half the number of unknowns this method solves for.
    pub fn i(self) -> u32 {
        match self {
            Method::I2Even | Method::I2Odd | Method::I2Composite | Method::BruteForce => 2,
            Method::I3Even | Method::I3Heuristic => 3,
            Method::I4Div4 => 4,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The default solver for `(m, i)`: deterministic where one exists,
/// otherwise the probabilistic or heuristic route. `None` when no
/// construction covers the cell.
pub fn route(m: u32, i: u32) -> Option<Method> {
    match i {
        2 if m >= 4 && m.is_multiple_of(2) => Some(Method::I2Even),
        2 if m >= 5 => Some(Method::I2Odd),
        3 if m >= 6 && m.is_multiple_of(2) => Some(Method::I3Even),
        3 if m >= 7 => Some(Method::I3Heuristic),
        4 if m >= 8 && m.is_multiple_of(4) => Some(Method::I4Div4),
        _ => None,
    }
}

/// `(b_1, ..., b_2i)` satisfying the system with independent entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionVector {
    b: Vec<Elem>,
}

impl SolutionVector {
    /// Accepts `b` only if it solves the system and is independent.
    pub fn new(field: &Field, b: Vec<Elem>) -> Result<SolutionVector> {
        if b.len() < 4 || !b.len().is_multiple_of(2) || !check_system(field, &b) || !independent(&b)
        {
            return Err(Error::InvalidSolution);
        }
        Ok(SolutionVector { b })
    }

    pub fn i(&self) -> u32 {
        self.b.len() as u32 / 2
    }

    pub fn entries(&self) -> &[Elem] {
        &self.b
    }
}

/// Retry limits of the randomized solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RetryCaps {
    pub i2_odd: u32,
    pub i3_even: u32,
    pub i3_heuristic: u32,
}

impl Default for RetryCaps {
    fn default() -> Self {
        RetryCaps {
            i2_odd: 64,
            i3_even: 256,
            i3_heuristic: 4096,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverReport {
    pub solution: SolutionVector,
    /// Attempts consumed, 1 for deterministic solvers.
    pub trials: u32,
    /// Seed of the probabilistic solvers; `None` for deterministic ones.
    pub rng_seed: Option<u64>,
    pub method: Method,
}

/// `x1^(2^j) x2 + x1 x2^(2^j)`.
pub fn f_j(field: &Field, j: u32, x1: Elem, x2: Elem) -> Elem {
    field.mul(field.frobenius(x1, j as i64), x2) + field.mul(x1, field.frobenius(x2, j as i64))
}

/// True iff the `2i`-tuple satisfies all `i - 1` equations. Independence is
/// not checked here.
pub fn check_system(field: &Field, b: &[Elem]) -> bool {
    assert!(
        b.len().is_multiple_of(2),
        "system needs an even number of unknowns"
    );
    let i = b.len() as u32 / 2;
    (1..i).all(|l| {
        b.chunks_exact(2)
            .fold(Elem::ZERO, |acc, p| acc + f_j(field, l, p[0], p[1]))
            .is_zero()
    })
}

fn report(
    field: &Field,
    b: Vec<Elem>,
    trials: u32,
    seed: Option<u64>,
    method: Method,
) -> SolverReport {
    let solution = SolutionVector::new(field, b).expect("construction yields a valid solution");
    SolverReport {
        solution,
        trials,
        rng_seed: seed,
        method,
    }
}

fn f4_generator(field: &Field) -> Elem {
    field
        .subfield(2)
        .expect("F4 is a subfield for even m")
        .generator
}

/// `i = 2`, even `m >= 4`: `(1, α, c, cα)` with `c` generating F4*.
pub fn solve_i2_even(field: &Field) -> Result<SolverReport> {
    let m = field.m();
    if !m.is_multiple_of(2) || m < 4 {
        return Err(Error::BadParity("even m >= 4"));
    }
    let c = f4_generator(field);
    let (x, y) = (Elem::ONE, field.alpha());
    let b = vec![x, y, field.mul(c, x), field.mul(c, y)];
    Ok(report(field, b, 1, None, Method::I2Even))
}

/// The odd-m candidate `(∛(v²/(c+v)), ∛((c+v)²/v), ∛(v'²/(c+v')), ∛((c+v')²/v'))`.
/// Both pair-values `f_1` equal `c`.
pub fn i2_odd_candidate(field: &Field, v: Elem, v2: Elem, c: Elem) -> Result<[Elem; 4]> {
    let cbrt = |z: Elem| field.cube_roots(z)[0];
    let pair = |v: Elem| -> Result<(Elem, Elem)> {
        let cv = c + v;
        Ok((
            cbrt(field.div(field.square(v), cv)?),
            cbrt(field.div(field.square(cv), v)?),
        ))
    };
    let (b1, b2) = pair(v)?;
    let (b3, b4) = pair(v2)?;
    Ok([b1, b2, b3, b4])
}

/// `i = 2`, odd `m >= 5`: probabilistic, redraws `c` until independent.
pub fn solve_i2_odd(field: &Field, seed: u64, cap: u32) -> Result<SolverReport> {
    let m = field.m();
    if m.is_multiple_of(2) || m < 5 {
        return Err(Error::BadParity("odd m >= 5"));
    }
    let (v, v2) = (Elem::ONE, field.alpha());
    let mut rng = solver_rng(seed);
    for trial in 1..=cap {
        let c = loop {
            let c = field.random(&mut rng);
            if c != Elem::ZERO && c != v && c != v2 {
                break c;
            }
        };
        let b = i2_odd_candidate(field, v, v2, c)?;
        if independent(&b) {
            return Ok(report(field, b.to_vec(), trial, Some(seed), Method::I2Odd));
        }
    }
    Err(Error::RetriesExhausted(cap))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A split `m = ell · t` usable by [`solve_i2_composite`], smallest `ell` first.
pub fn composite_split(m: u32) -> Option<(u32, u32)> {
    (2..m)
        .filter(|ell| m.is_multiple_of(*ell))
        .map(|ell| (ell, m / ell))
        .find(|&(ell, t)| valid_split(ell, t))
}

fn valid_split(ell: u32, t: u32) -> bool {
    ell.min(t) >= 2 && ell.max(t) >= 3 && gcd(ell, t) == 1
}

/// `i = 2`, `m = ell · t` with coprime factors: `(1, x, a, b)` where `a`, `b`
/// generate GF(2^ell), GF(2^t) and `x^2 + x = a^2 b + a b^2`.
pub fn solve_i2_composite(field: &Field, ell: u32, t: u32) -> Result<SolverReport> {
    if ell * t != field.m() || !valid_split(ell, t) {
        return Err(Error::BadFactorization { ell, t });
    }
    let a = field.subfield(ell)?.generator;
    let b = field.subfield(t)?.generator;
    let w = field.mul(field.square(a), b) + field.mul(a, field.square(b));
    let x = field.artin_schreier(w)[0];
    Ok(report(
        field,
        vec![Elem::ONE, x, a, b],
        1,
        None,
        Method::I2Composite,
    ))
}

/// One draw of the even-m `i = 3` solver for a given `y`: accepts when
/// `y ∉ F4` and `c²y + cy²` is a nonzero cube `1/d³`, returning
/// `(1, c, d, dy, dc, dc²y)` with the smallest cube root.
pub fn i3_even_attempt(field: &Field, c: Elem, y: Elem) -> Option<Vec<Elem>> {
    if field.in_subfield(y, 2) {
        return None;
    }
    let z = field.mul(field.square(c), y) + field.mul(c, field.square(y));
    let r = *field.cube_roots(z).iter().find(|r| !r.is_zero())?;
    let d = field.inv(r).ok()?;
    let dy = field.mul(d, y);
    let dc = field.mul(d, c);
    let dc2y = field.mul(dc, field.mul(c, y));
    Some(vec![Elem::ONE, c, d, dy, dc, dc2y])
}

/// True iff `c²y + cy²` has a nonzero cube root.
pub fn i3_even_cube_event(field: &Field, c: Elem, y: Elem) -> bool {
    let z = field.mul(field.square(c), y) + field.mul(c, field.square(y));
    field.cube_roots(z).iter().any(|r| !r.is_zero())
}

/// `i = 3`, even `m >= 6`: draws `y` until the cube-root event holds.
pub fn solve_i3_even(field: &Field, seed: u64, cap: u32) -> Result<SolverReport> {
    let m = field.m();
    if !m.is_multiple_of(2) || m < 6 {
        return Err(Error::BadParity("even m >= 6"));
    }
    let c = f4_generator(field);
    let mut rng = solver_rng(seed);
    for trial in 1..=cap {
        let y = field.random(&mut rng);
        if let Some(b) = i3_even_attempt(field, c, y) {
            return Ok(report(field, b, trial, Some(seed), Method::I3Even));
        }
    }
    Err(Error::RetriesExhausted(cap))
}

/// `i = 3`, any `m >= 6` (meant for odd m): random independent `b_1..b_4`,
/// then `b_5, b_6` from the roots of `c1 X^3 + c2 X + c1^2`.
pub fn solve_i3_heuristic(field: &Field, seed: u64, cap: u32) -> Result<SolverReport> {
    if field.m() < 6 {
        return Err(Error::BadDegree("m >= 6"));
    }
    let mut rng = solver_rng(seed);
    for trial in 1..=cap {
        let head = loop {
            let b: Vec<Elem> = (0..4).map(|_| field.random_nonzero(&mut rng)).collect();
            if independent(&b) {
                break b;
            }
        };
        let c1 = f_j(field, 1, head[0], head[1]) + f_j(field, 1, head[2], head[3]);
        if c1.is_zero() {
            continue;
        }
        let c2 = f_j(field, 2, head[0], head[1]) + f_j(field, 2, head[2], head[3]);
        let roots = affine_cubic_roots(field, c1, c2)?;
        if roots.len() < 3 {
            continue;
        }
        let mut b = head;
        b.extend_from_slice(&roots[..2]);
        if independent(&b) {
            return Ok(report(field, b, trial, Some(seed), Method::I3Heuristic));
        }
    }
    Err(Error::RetriesExhausted(cap))
}

/// `i = 4`, `4 | m`, `m >= 8`: `(1, y, c, cy, d, dy, dc, dcy)` with `y ∉ F16`,
/// `c` generating F4* and `d` of order 5 in F16.
pub fn solve_i4(field: &Field) -> Result<SolverReport> {
    let m = field.m();
    if !m.is_multiple_of(4) || m < 8 {
        return Err(Error::BadDegree("4 | m and m >= 8"));
    }
    let y = (0..m)
        .map(|k| Elem(1 << k))
        .find(|&u| !field.in_subfield(u, 4))
        .expect("the polynomial basis is not contained in F16");
    let c = f4_generator(field);
    let d = field
        .subfield(4)?
        .elements
        .into_iter()
        .find(|&x| x != Elem::ONE && field.pow(x, 5).ok() == Some(Elem::ONE))
        .expect("F16* has elements of order 5");
    let cy = field.mul(c, y);
    let dc = field.mul(d, c);
    let b = vec![
        Elem::ONE,
        y,
        c,
        cy,
        d,
        field.mul(d, y),
        dc,
        field.mul(dc, y),
    ];
    Ok(report(field, b, 1, None, Method::I4Div4))
}

/// Largest `m` the exhaustive `i = 2` scan accepts.
pub const BRUTE_FORCE_MAX_M: u32 = 6;

/// Every independent solution `(b_1, b_2, b_3, b_4)` of `f_1(b_1, b_2) =
/// f_1(b_3, b_4)`, in lexicographic order. Pairs are bucketed by their
/// `f_1` value, so the scan only pairs up candidates that can match.
pub fn brute_force_solutions(field: &Field) -> Result<Vec<[Elem; 4]>> {
    if field.m() > BRUTE_FORCE_MAX_M {
        return Err(Error::TooLarge(field.m()));
    }
    let mut buckets: HashMap<Elem, Vec<(Elem, Elem)>> = HashMap::new();
    let mut pairs = Vec::new();
    for x in field.elements() {
        for y in field.elements() {
            buckets.entry(f_j(field, 1, x, y)).or_default().push((x, y));
            pairs.push((x, y));
        }
    }
    let mut out = Vec::new();
    for (x, y) in pairs {
        if !independent(&[x, y]) {
            continue;
        }
        for &(u, v) in &buckets[&f_j(field, 1, x, y)] {
            let b = [x, y, u, v];
            if independent(&b) {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// Exhaustive scan for `i = 2`, `m <= 6`; returns the lexicographically
/// first independent solution.
pub fn brute_force_solver(field: &Field, i: u32) -> Result<SolverReport> {
    if i != 2 {
        return Err(Error::Unsupported(
            "exhaustive scan is implemented for i = 2 only",
        ));
    }
    let all = brute_force_solutions(field)?;
    let trials = all.len() as u32;
    let first = all.into_iter().next().ok_or(Error::NoSolution)?;
    Ok(report(
        field,
        first.to_vec(),
        trials.max(1),
        None,
        Method::BruteForce,
    ))
}

/// Runs `method` with the given seed and caps.
pub fn solve(field: &Field, method: Method, seed: u64, caps: RetryCaps) -> Result<SolverReport> {
    match method {
        Method::I2Even => solve_i2_even(field),
        Method::I2Odd => solve_i2_odd(field, seed, caps.i2_odd),
        Method::I2Composite => {
            let (ell, t) = composite_split(field.m()).ok_or(Error::BadFactorization {
                ell: field.m(),
                t: 1,
            })?;
            solve_i2_composite(field, ell, t)
        }
        Method::I3Even => solve_i3_even(field, seed, caps.i3_even),
        Method::I3Heuristic => solve_i3_heuristic(field, seed, caps.i3_heuristic),
        Method::I4Div4 => solve_i4(field),
        Method::BruteForce => brute_force_solver(field, 2),
    }
}
