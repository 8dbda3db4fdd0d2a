//! Codeword supports from solutions of the quadratic-form system, and the
//! support-level transforms between codes of different lengths.
//!
//! A solution `b_1, ..., b_2i` completed to a basis with dual basis
//! `b'_1, ..., b'_m` gives the Boolean function `x_1 x_2 + ... + x_(2i-1) x_(2i)`
//! in the coordinates `x_j = Tr(b_j x)`. Its support is
//!
//! ```text
//!   S_0 = M · (b'_1, ..., b'_2i) + span(b'_(2i+1), ..., b'_m),
//! ```
//!
//! where `M` lists the `2^(2i-1) - 2^(i-1)` zeros of the form. Collapsing the
//! first `s` directions of the subspace with their annihilator `A` gives the
//! support `A(S_0)` of a minimum-weight word at designed distance
//! `d(m, s, i) = 2^(m-1-s) - 2^(m-1-i-s)`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gf2m::{Elem, Field};
use crate::gflinalg::{
    complete_to_basis, dual_basis, independent, span, BitMatrix, BitVector, XorBasis,
};
use crate::linearized::{annihilator, image_map_for_subspace};
use crate::solvers::{Method, SolutionVector};

/// Largest support [`expand`] will enumerate.
pub const MAX_EXPANDED: u64 = 1 << 24;

/// All `x ∈ GF(2)^(2i)` with `x_1 x_2 + ... + x_(2i-1) x_(2i) = 1`, one per
/// row in lexicographic order (`x_1` most significant).
pub fn quadform_rows(i: u32) -> BitMatrix {
    assert!((1..=15).contains(&i), "quadratic form needs 1 <= i <= 15");
    let n = 2 * i as usize;
    let rows: Vec<BitVector> = (0u64..1 << n)
        .map(|v| {
            (0..n)
                .map(|k| (v >> (n - 1 - k)) & 1 == 1)
                .collect::<Vec<bool>>()
        })
        .filter(|x| x.chunks_exact(2).filter(|p| p[0] && p[1]).count() % 2 == 1)
        .map(|x| BitVector::from_bools(&x))
        .collect();
    BitMatrix::from_rows(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportMeta {
    pub m: u32,
    pub i: u32,
    pub s: u32,
    pub method: Option<Method>,
}

/// A support in factored form `X + span(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSpec {
    /// One point per row of [`quadform_rows`], in row order.
    pub x: Vec<Elem>,
    pub basis: Vec<Elem>,
    pub meta: SupportMeta,
}

/// The set of coordinates where a codeword is 1, with the distance of the
/// code it is claimed to be a minimum-weight word of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodewordSupport {
    pub elems: BTreeSet<Elem>,
    pub claimed_distance: u64,
    /// Whether the code carries the parity coordinate at 0.
    pub extended: bool,
}

impl CodewordSupport {
    pub fn weight(&self) -> usize {
        self.elems.len()
    }
}

fn family_distance(m: u32, s: u32, i: u32) -> u64 {
    (1u64 << (m - 1 - s)) - (1u64 << (m - 1 - i - s))
}

/// Assembles `X` and `B` for `c(i, s)` from a solution.
pub fn build_support(field: &Field, sol: &SolutionVector, s: u32) -> Result<SupportSpec> {
    let m = field.m();
    let i = sol.i();
    if 2 * i > m || s > m - 2 * i {
        return Err(Error::BadS {
            s,
            max: m.saturating_sub(2 * i),
        });
    }
    let basis = complete_to_basis(field, sol.entries())?;
    let dual = dual_basis(field, &basis);
    let b = dual.elems();
    let (head, rest) = b.split_at(2 * i as usize);
    let (v, tail) = rest.split_at(s as usize);
    let a = annihilator(field, v)?;
    let head: Vec<Elem> = head.iter().map(|&e| a.eval(field, e)).collect();
    let rows = quadform_rows(i);
    let x = (0..rows.rows())
        .map(|r| {
            let row = rows.row(r);
            (0..head.len())
                .filter(|&k| row.get(k))
                .fold(Elem::ZERO, |acc, k| acc + head[k])
        })
        .collect();
    let basis = tail.iter().map(|&e| a.eval(field, e)).collect();
    Ok(SupportSpec {
        x,
        basis,
        meta: SupportMeta {
            m,
            i,
            s,
            method: None,
        },
    })
}

/// The explicit set `X + span(B)`.
pub fn expand(spec: &SupportSpec) -> Result<CodewordSupport> {
    let SupportMeta { m, i, s, .. } = spec.meta;
    let size = (spec.x.len() as u64) << spec.basis.len();
    if size > MAX_EXPANDED {
        return Err(Error::TooLarge(m));
    }
    let shifts = span(&spec.basis);
    let elems: BTreeSet<Elem> = spec
        .x
        .iter()
        .flat_map(|&x| shifts.iter().map(move |&v| x + v))
        .collect();
    if elems.len() as u64 != size {
        return Err(Error::CollisionDetected);
    }
    Ok(CodewordSupport {
        elems,
        claimed_distance: family_distance(m, s, i),
        extended: true,
    })
}

/// `S -> A(S)` for the annihilator `A` of `span(v_basis)`: a codeword of the
/// code with distance `⌈d / 2^s⌉`.
pub fn down_convert(
    field: &Field,
    cw: &CodewordSupport,
    v_basis: &[Elem],
) -> Result<CodewordSupport> {
    if !cw.extended {
        return Err(Error::NotExtended);
    }
    let a = annihilator(field, v_basis)?.to_map(field);
    let fiber = 1usize << v_basis.len();
    let mut counts: HashMap<Elem, usize> = HashMap::new();
    for &x in &cw.elems {
        *counts.entry(a.apply(x)).or_default() += 1;
    }
    if counts.values().any(|&c| c != fiber) {
        return Err(Error::NotCosetUnion);
    }
    let d = cw.claimed_distance.div_ceil(fiber as u64);
    if !d.is_multiple_of(2) {
        return Err(Error::BadDistanceParity(cw.claimed_distance));
    }
    Ok(CodewordSupport {
        elems: counts.into_keys().collect(),
        claimed_distance: d,
        extended: true,
    })
}

/// `S -> B^(-1)(S)` for the image map `B` of `U = span(u_basis)`: a codeword
/// of the code with distance `d · 2^(m-k)`.
pub fn up_convert(
    field: &Field,
    cw: &CodewordSupport,
    u_basis: &[Elem],
) -> Result<CodewordSupport> {
    if !cw.extended {
        return Err(Error::NotExtended);
    }
    if !independent(u_basis) {
        return Err(Error::DependentGenerators);
    }
    let mut xb = XorBasis::new();
    for u in u_basis {
        xb.insert(u.bits());
    }
    if cw.elems.iter().any(|x| !xb.contains(x.bits())) {
        return Err(Error::SupportNotInU);
    }
    let b = image_map_for_subspace(field, u_basis)?;
    let scale = field.m() - u_basis.len() as u32;
    let elems: BTreeSet<Elem> = b
        .preimage(field, cw.elems.iter().copied())
        .into_iter()
        .collect();
    debug_assert_eq!(elems.len(), cw.elems.len() << scale);
    Ok(CodewordSupport {
        elems,
        claimed_distance: cw.claimed_distance << scale,
        extended: true,
    })
}

/// Zeros of `x -> Tr(β x^(2^i + 1))` on GF(2^(2i)), with `β` the smallest
/// element of GF(2^(2i)) outside GF(2^i). Weight `2^(2i-1) - 2^(i-1)`.
pub fn gold_support(field: &Field, i: u32) -> Result<CodewordSupport> {
    if i == 0 || !field.m().is_multiple_of(2 * i) {
        return Err(Error::BadDegree("2i to divide m"));
    }
    let mut sub = field.subfield(2 * i)?.elements;
    sub.sort();
    let beta = *sub
        .iter()
        .find(|&&x| !field.in_subfield(x, i))
        .expect("GF(2^i) is a proper subfield");
    let e = (1i64 << i) + 1;
    let mut elems = BTreeSet::new();
    for &x in &sub {
        let y = field.mul(beta, field.pow(x, e)?);
        if field.trace_rel(y, 1, 2 * i)?.is_zero() {
            elems.insert(x);
        }
    }
    Ok(CodewordSupport {
        elems,
        claimed_distance: family_distance(2 * i, 0, i),
        extended: true,
    })
}

/// The six-element support `{0, 1, 1+y^4, y+y^2+y^4, y^2+y^3+y^4, y+y^3+y^4}`
/// of a weight-6 word.
pub fn gk_support(field: &Field, y: Elem) -> Result<CodewordSupport> {
    if field.m() < 4 {
        return Err(Error::BadDegree("m >= 4"));
    }
    let y2 = field.square(y);
    let y3 = field.mul(y2, y);
    let y4 = field.square(y2);
    let pts = [
        Elem::ZERO,
        Elem::ONE,
        Elem::ONE + y4,
        y + y2 + y4,
        y2 + y3 + y4,
        y + y3 + y4,
    ];
    let elems: BTreeSet<Elem> = pts.into_iter().collect();
    if elems.len() != 6 {
        return Err(Error::DegenerateY);
    }
    Ok(CodewordSupport {
        elems,
        claimed_distance: 6,
        extended: true,
    })
}

/// A basis of `span(core)` extended by `extra` greedily chosen unit vectors.
fn widen(field: &Field, core: &[Elem], extra: u32) -> Result<Vec<Elem>> {
    let mut xb = XorBasis::new();
    let mut out = Vec::new();
    for &c in core {
        if xb.insert(c.bits()) {
            out.push(c);
        }
    }
    let target = out.len() + extra as usize;
    if target > field.m() as usize {
        return Err(Error::BadS {
            s: extra,
            max: field.m() - out.len() as u32,
        });
    }
    for k in 0..field.m() {
        if out.len() == target {
            break;
        }
        if xb.insert(1 << k) {
            out.push(Elem(1 << k));
        }
    }
    Ok(out)
}

/// Up-converts `cw` through `U = span(cw) + (s more unit directions)`.
/// For the Gold support of parameter `i` this is `c(i, s)`-sized.
pub fn lift(field: &Field, cw: &CodewordSupport, s: u32) -> Result<CodewordSupport> {
    let core: Vec<Elem> = cw.elems.iter().copied().collect();
    let u = widen(field, &core, s)?;
    up_convert(field, cw, &u)
}

/// The Gold support up-converted to designed distance `d(m, s, i)`.
pub fn gold_codeword(field: &Field, i: u32, s: u32) -> Result<CodewordSupport> {
    let g = gold_support(field, i)?;
    lift(field, &g, s)
}

/// The six-point support up-converted to designed distance `d(m, s, 2)`.
pub fn gk_codeword(field: &Field, y: Elem, s: u32) -> Result<CodewordSupport> {
    let g = gk_support(field, y)?;
    lift(field, &g, s)
}

/// `(x + S) \ {0}`: a word of the non-extended code with distance `d - 1`.
pub fn puncture(cw: &CodewordSupport, x: Elem) -> Result<CodewordSupport> {
    if !cw.extended {
        return Err(Error::NotExtended);
    }
    if !cw.elems.contains(&x) {
        return Err(Error::XNotInSupport);
    }
    let elems = cw
        .elems
        .iter()
        .map(|&e| e + x)
        .filter(|e| !e.is_zero())
        .collect();
    Ok(CodewordSupport {
        elems,
        claimed_distance: cw.claimed_distance - 1,
        extended: false,
    })
}

/// The support of `c(i, s)` found by evaluating a Boolean function at every
/// field element instead of assembling `X + span(B)`.
///
/// For `s = 0` the function is `x_1 x_2 + ... + x_(2i-1) x_(2i)` in the
/// coordinates `x_j = Tr(b_j x)`. For `s > 0` it is
/// `(x_1 x_2 + ... + x_(2i-1) x_(2i)) (1 + x_(2i+1)) ... (1 + x_(2i+s))` in
/// the coordinates of a basis `D` whose dual starts with `A(b'_1..b'_2i)`,
/// continues with `s` directions outside the image of `A`, and ends with
/// `A(b'_(2i+s+1)..b'_m)`.
pub fn boolean_support(field: &Field, sol: &SolutionVector, s: u32) -> Result<BTreeSet<Elem>> {
    let m = field.m();
    let i = sol.i() as usize;
    if m > 24 {
        return Err(Error::TooLarge(m));
    }
    if 2 * i as u32 > m || s > m - 2 * i as u32 {
        return Err(Error::BadS {
            s,
            max: m.saturating_sub(2 * i as u32),
        });
    }
    let s = s as usize;
    let coords: Vec<Elem> = if s == 0 {
        sol.entries().to_vec()
    } else {
        let dual = dual_basis(field, &complete_to_basis(field, sol.entries())?);
        let b = dual.elems();
        let a = annihilator(field, &b[2 * i..2 * i + s])?;
        let image: Vec<Elem> = b[..2 * i]
            .iter()
            .chain(&b[2 * i + s..])
            .map(|&e| a.eval(field, e))
            .collect();
        let full = complete_to_basis(field, &image)?;
        let (kept, extra) = full.elems().split_at(image.len());
        let mut ordered = image[..2 * i].to_vec();
        ordered.extend_from_slice(extra);
        ordered.extend_from_slice(&kept[2 * i..]);
        let ordered = crate::gflinalg::Basis::new(field, ordered)?;
        dual_basis(field, &ordered).elems()[..2 * i + s].to_vec()
    };
    let tr = |d: Elem, x: Elem| field.trace(field.mul(d, x));
    let mut out = BTreeSet::new();
    for x in field.elements() {
        let q = (0..i)
            .filter(|&k| tr(coords[2 * k], x) & tr(coords[2 * k + 1], x))
            .count()
            % 2
            == 1;
        if q && (2 * i..2 * i + s).all(|j| !tr(coords[j], x)) {
            out.insert(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{route, solve, RetryCaps};

    fn field(m: u32) -> Field {
        Field::with_default(m).unwrap()
    }

    fn solution(f: &Field, i: u32) -> SolutionVector {
        let method = route(f.m(), i).unwrap();
        solve(f, method, 7, RetryCaps::default()).unwrap().solution
    }

    #[test]
    fn quadform_row_counts() {
        let r1 = quadform_rows(1);
        assert_eq!((r1.rows(), r1.cols()), (1, 2));
        assert!(r1.get(0, 0) && r1.get(0, 1));
        assert_eq!(quadform_rows(2).rows(), 6);
        assert_eq!(quadform_rows(3).rows(), 28);
        assert_eq!(quadform_rows(4).rows(), 120);
        // lexicographic: the first i = 2 row is 0011
        let r2 = quadform_rows(2);
        assert_eq!(
            (0..4).map(|k| r2.get(0, k)).collect::<Vec<_>>(),
            [false, false, true, true]
        );
    }

    #[test]
    fn weight_ledger() {
        for m in 4..=12 {
            let f = field(m);
            for i in 2..=4 {
                if route(m, i).is_none() {
                    continue;
                }
                let sol = solution(&f, i);
                for s in 0..=m - 2 * i {
                    let spec = build_support(&f, &sol, s).unwrap();
                    assert_eq!(spec.x.len() as u64, (1 << (2 * i - 1)) - (1 << (i - 1)));
                    assert_eq!(spec.basis.len() as u32, m - 2 * i - s);
                    assert!(independent(&spec.basis));
                    let cw = expand(&spec).unwrap();
                    assert_eq!(cw.weight() as u64, family_distance(m, s, i));
                    assert_eq!(cw.claimed_distance, family_distance(m, s, i));
                }
            }
        }
    }

    #[test]
    fn small_cases() {
        let f = field(8);
        let spec = build_support(&f, &solution(&f, 3), 0).unwrap();
        assert_eq!((spec.x.len(), spec.basis.len()), (28, 2));
        assert_eq!(expand(&spec).unwrap().weight(), 112);
        let f = field(4);
        let spec = build_support(&f, &solution(&f, 2), 0).unwrap();
        assert_eq!((spec.x.len(), spec.basis.len()), (6, 0));
        assert!(matches!(
            build_support(&f, &solution(&f, 2), 1),
            Err(Error::BadS { s: 1, max: 0 })
        ));
    }

    #[test]
    fn boolean_cross_check() {
        for m in [6, 7, 8, 9] {
            let f = field(m);
            for i in [2, 3] {
                if route(m, i).is_none() {
                    continue;
                }
                let sol = solution(&f, i);
                for s in 0..=m - 2 * i {
                    let built = expand(&build_support(&f, &sol, s).unwrap()).unwrap();
                    assert_eq!(
                        built.elems,
                        boolean_support(&f, &sol, s).unwrap(),
                        "m={m} i={i} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn down_chain_matches_direct() {
        let f = field(10);
        let sol = solution(&f, 3);
        let dual = dual_basis(&f, &complete_to_basis(&f, sol.entries()).unwrap());
        let b = dual.elems();
        let c0 = expand(&build_support(&f, &sol, 0).unwrap()).unwrap();
        let c1 = down_convert(&f, &c0, &b[6..7]).unwrap();
        assert_eq!(c1, expand(&build_support(&f, &sol, 1).unwrap()).unwrap());
        let a1 = annihilator(&f, &b[6..7]).unwrap();
        let c2 = down_convert(&f, &c1, &[a1.eval(&f, b[7])]).unwrap();
        assert_eq!(c2, expand(&build_support(&f, &sol, 2).unwrap()).unwrap());
        assert_eq!(c2.weight() * 4, c0.weight());
    }

    #[test]
    fn down_is_a_coset_collapse() {
        let f = field(8);
        let sol = solution(&f, 2);
        let dual = dual_basis(&f, &complete_to_basis(&f, sol.entries()).unwrap());
        let v = &dual.elems()[4..6];
        let c0 = expand(&build_support(&f, &sol, 0).unwrap()).unwrap();
        let c2 = down_convert(&f, &c0, v).unwrap();
        let a = annihilator(&f, v).unwrap();
        for y in &c2.elems {
            let fiber = c0.elems.iter().filter(|&&x| a.eval(&f, x) == *y).count();
            assert_eq!(fiber, 4);
        }
        assert_eq!(down_convert(&f, &c0, &[]).unwrap(), c0);
    }

    #[test]
    fn down_rejects_non_cosets_and_odd_distance() {
        let f = field(6);
        let cw = gk_support(&f, f.alpha()).unwrap();
        assert_eq!(
            down_convert(&f, &cw, &[Elem(0b100000)]),
            Err(Error::NotCosetUnion)
        );
        let odd = CodewordSupport {
            elems: BTreeSet::new(),
            claimed_distance: 12,
            extended: true,
        };
        assert_eq!(
            down_convert(&f, &odd, &[Elem(1), Elem(2)]),
            Err(Error::BadDistanceParity(12))
        );
    }

    #[test]
    fn round_trips() {
        let f = field(8);
        let sol = solution(&f, 2);
        let dual = dual_basis(&f, &complete_to_basis(&f, sol.entries()).unwrap());
        let v = &dual.elems()[4..6];
        let c0 = expand(&build_support(&f, &sol, 0).unwrap()).unwrap();
        let c2 = down_convert(&f, &c0, v).unwrap();
        let image = annihilator(&f, v).unwrap().to_map(&f).images().to_vec();
        let u: Vec<Elem> = {
            let mut xb = XorBasis::new();
            image.into_iter().filter(|e| xb.insert(e.bits())).collect()
        };
        assert_eq!(u.len(), 6);
        let back = up_convert(&f, &c2, &u).unwrap();
        assert_eq!(back, c0);
        assert_eq!(down_convert(&f, &back, v).unwrap(), c2);
        let full: Vec<Elem> = (0..8).map(|k| Elem(1 << k)).collect();
        assert_eq!(up_convert(&f, &c0, &full).unwrap(), c0);
    }

    #[test]
    fn up_rejects_outside_support() {
        let f = field(8);
        let cw = gold_support(&f, 2).unwrap();
        assert_eq!(
            up_convert(&f, &cw, &[Elem(1), Elem(2)]),
            Err(Error::SupportNotInU)
        );
    }

    #[test]
    fn gold_weights() {
        for (i, m) in [(1, 4), (2, 4), (2, 8), (3, 6), (3, 12), (4, 8)] {
            let g = gold_support(&field(m), i).unwrap();
            assert_eq!(
                g.weight() as u64,
                family_distance(2 * i, 0, i),
                "i={i} m={m}"
            );
            assert!(g.elems.contains(&Elem::ZERO));
        }
        assert_eq!(
            gold_support(&field(9), 3),
            Err(Error::BadDegree("2i to divide m"))
        );
        let lifted = gold_codeword(&field(8), 2, 0).unwrap();
        assert_eq!(lifted.weight(), 96);
        assert_eq!(lifted.claimed_distance, family_distance(8, 0, 2));
    }

    #[test]
    fn gk_shapes() {
        let f = field(8);
        assert_eq!(gk_support(&f, f.alpha()).unwrap().weight(), 6);
        let w = f.subfield(2).unwrap().generator;
        assert_eq!(gk_support(&f, w), Err(Error::DegenerateY));
        assert_eq!(gk_support(&f, Elem::ONE), Err(Error::DegenerateY));
        for s in 0..=4 {
            let cw = gk_codeword(&f, f.alpha(), s).unwrap();
            assert_eq!(cw.weight() as u64, family_distance(8, s, 2));
        }
    }

    #[test]
    fn puncture_shape() {
        let f = field(8);
        let cw = gk_support(&f, f.alpha()).unwrap();
        let x = *cw.elems.iter().nth(3).unwrap();
        let p = puncture(&cw, x).unwrap();
        assert_eq!((p.weight(), p.claimed_distance, p.extended), (5, 5, false));
        assert!(!p.elems.contains(&Elem::ZERO));
        assert_eq!(puncture(&cw, Elem(0x80)), Err(Error::XNotInSupport));
        assert_eq!(puncture(&p, Elem::ONE), Err(Error::NotExtended));
    }

    #[test]
    fn expansion_detects_collisions() {
        let spec = SupportSpec {
            x: vec![Elem(1), Elem(3)],
            basis: vec![Elem(2)],
            meta: SupportMeta {
                m: 4,
                i: 1,
                s: 0,
                method: None,
            },
        };
        assert_eq!(expand(&spec), Err(Error::CollisionDetected));
    }
}
