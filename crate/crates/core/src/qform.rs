//! Quadratic forms over the p-adic integers: Jordan decompositions, local
//! invariants, and isometry testing.
//!
//! Odd p is decided completely. Over Z_2 the decision is deliberately
//! partial: it is complete on two-scale forms whose scale-1 part is even
//! (the family produced by tame trace decompositions), and returns
//! `Indeterminate` outside it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::{nonresidue_unit, SquareClass};
use crate::matrix::IntMatrix;
use crate::place::Place;
use crate::symbols::{rational_mod, valuation};

/// Symmetric integer Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramMatrix(IntMatrix);

impl GramMatrix {
    pub fn new(m: IntMatrix) -> Result<GramMatrix> {
        if !m.is_symmetric() {
            return Err(Error::InvalidArgument(
                "Gram matrix must be symmetric".into(),
            ));
        }
        Ok(GramMatrix(m))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn det(&self) -> BigInt {
        self.0.det()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }
}

/// A unimodular Jordan constituent at an odd prime: `<1, ..., 1, d>` with
/// `d` trivial or the non-residue class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OddBlock {
    pub scale: u32,
    pub dim: usize,
    pub nonresidue: bool,
}

/// A Jordan constituent over Z_2: a diagonal odd part (units mod 8, sorted)
/// plus hyperbolic-plane and `[[2,1],[1,2]]` blocks. Two copies of the latter
/// fold into two hyperbolic planes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoBlock {
    pub scale: u32,
    pub diag: Vec<u8>,
    pub u_count: usize,
    pub v_count: usize,
}

impl TwoBlock {
    pub fn rank(&self) -> usize {
        self.diag.len() + 2 * (self.u_count + self.v_count)
    }

    fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    fn det8(&self) -> u8 {
        let mut d = 1u32;
        for &x in &self.diag {
            d = d * x as u32 % 8;
        }
        for _ in 0..self.u_count {
            d = d * 7 % 8;
        }
        for _ in 0..self.v_count {
            d = d * 3 % 8;
        }
        d as u8
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum FormKind {
    Real { plus: usize, minus: usize },
    Odd { blocks: Vec<OddBlock> },
    Two { blocks: Vec<TwoBlock> },
}

/// A quadratic form over Z_p (or over the reals) in Jordan shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PAdicForm {
    place: Place,
    kind: FormKind,
}

impl PAdicForm {
    pub fn real(plus: usize, minus: usize) -> PAdicForm {
        PAdicForm {
            place: Place::Real,
            kind: FormKind::Real { plus, minus },
        }
    }

    /// Form over Z_p for odd p from (scale, dim, nonresidue) data.
    pub fn odd(p: &BigInt, blocks: Vec<OddBlock>) -> PAdicForm {
        assert!(p.is_odd() && *p > BigInt::one());
        let mut merged: Vec<OddBlock> = Vec::new();
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.scale);
        for b in blocks {
            if b.dim == 0 {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.scale == b.scale => {
                    last.dim += b.dim;
                    last.nonresidue ^= b.nonresidue;
                }
                _ => merged.push(b),
            }
        }
        PAdicForm {
            place: Place::Finite(p.clone()),
            kind: FormKind::Odd { blocks: merged },
        }
    }

    /// Form over Z_2 from raw constituents; normalizes scale order, diagonal
    /// order, and the `V + V = U + U` relation.
    pub fn two(blocks: Vec<TwoBlock>) -> PAdicForm {
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.scale);
        let mut merged: Vec<TwoBlock> = Vec::new();
        for b in blocks {
            if b.is_empty() {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.scale == b.scale => {
                    last.diag.extend(b.diag);
                    last.u_count += b.u_count;
                    last.v_count += b.v_count;
                }
                _ => merged.push(b),
            }
        }
        for b in &mut merged {
            b.diag.sort_unstable();
            b.u_count += b.v_count / 2 * 2;
            b.v_count %= 2;
        }
        PAdicForm {
            place: Place::finite(2),
            kind: FormKind::Two { blocks: merged },
        }
    }

    /// Unimodular diagonal form from integer entries that are units at the
    /// place (nonzero reals, odd integers at 2, prime-to-p integers at odd p).
    pub fn unimodular_diag(place: &Place, entries: &[BigInt]) -> Result<PAdicForm> {
        match place {
            Place::Real => {
                let mut plus = 0;
                let mut minus = 0;
                for e in entries {
                    if e.is_zero() {
                        return Err(Error::InvalidArgument("zero diagonal entry".into()));
                    }
                    if e.is_positive() {
                        plus += 1;
                    } else {
                        minus += 1;
                    }
                }
                Ok(PAdicForm::real(plus, minus))
            }
            Place::Finite(p) if *p == BigInt::from(2) => {
                let mut diag = Vec::with_capacity(entries.len());
                for e in entries {
                    if e.is_even() {
                        return Err(Error::InvalidArgument(format!("{e} is not a 2-adic unit")));
                    }
                    diag.push(u8::try_from(&e.mod_floor(&BigInt::from(8))).unwrap());
                }
                Ok(PAdicForm::two(vec![TwoBlock {
                    scale: 0,
                    diag,
                    u_count: 0,
                    v_count: 0,
                }]))
            }
            Place::Finite(p) => {
                let mut nonres = false;
                for e in entries {
                    match SquareClass::of(e, p)? {
                        SquareClass::One => {}
                        SquareClass::NonResidue => nonres = !nonres,
                    }
                }
                Ok(PAdicForm::odd(
                    p,
                    vec![OddBlock {
                        scale: 0,
                        dim: entries.len(),
                        nonresidue: nonres,
                    }],
                ))
            }
        }
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            FormKind::Real { plus, minus } => plus + minus,
            FormKind::Odd { blocks } => blocks.iter().map(|b| b.dim).sum(),
            FormKind::Two { blocks } => blocks.iter().map(TwoBlock::rank).sum(),
        }
    }

    pub fn signature(&self) -> Option<(usize, usize)> {
        match &self.kind {
            FormKind::Real { plus, minus } => Some((*plus, *minus)),
            _ => None,
        }
    }

    pub fn odd_blocks(&self) -> Option<&[OddBlock]> {
        match &self.kind {
            FormKind::Odd { blocks } => Some(blocks),
            _ => None,
        }
    }

    pub fn two_blocks(&self) -> Option<&[TwoBlock]> {
        match &self.kind {
            FormKind::Two { blocks } => Some(blocks),
            _ => None,
        }
    }

    /// Orthogonal sum; both forms must live over the same place.
    pub fn direct_sum(&self, other: &PAdicForm) -> Result<PAdicForm> {
        if self.place != other.place {
            return Err(Error::PlaceMismatch);
        }
        Ok(match (&self.kind, &other.kind) {
            (
                FormKind::Real { plus, minus },
                FormKind::Real {
                    plus: p2,
                    minus: m2,
                },
            ) => PAdicForm::real(plus + p2, minus + m2),
            (FormKind::Odd { blocks }, FormKind::Odd { blocks: b2 }) => {
                let p = self.place.prime().unwrap();
                PAdicForm::odd(p, blocks.iter().chain(b2).copied().collect())
            }
            (FormKind::Two { blocks }, FormKind::Two { blocks: b2 }) => {
                PAdicForm::two(blocks.iter().chain(b2).cloned().collect())
            }
            _ => unreachable!("same place implies same kind"),
        })
    }

    /// Diagonal entries of a rational diagonalization, for Hasse-Witt
    /// computations (hyperbolic constituents diagonalize over Q_2).
    fn diagonal_entries(&self) -> Vec<BigInt> {
        match &self.kind {
            FormKind::Real { plus, minus } => {
                let mut v = vec![BigInt::one(); *plus];
                v.extend(vec![BigInt::from(-1); *minus]);
                v
            }
            FormKind::Odd { blocks } => {
                let p = self.place.prime().unwrap();
                let u = nonresidue_unit(&self.place);
                let mut v = Vec::new();
                for b in blocks {
                    let s = p.pow(b.scale);
                    for _ in 0..b.dim - 1 {
                        v.push(s.clone());
                    }
                    if b.nonresidue {
                        v.push(&s * &u);
                    } else {
                        v.push(s.clone());
                    }
                }
                v
            }
            FormKind::Two { blocks } => {
                let two = BigInt::from(2);
                let mut v = Vec::new();
                for b in blocks {
                    let s = two.pow(b.scale);
                    for &d in &b.diag {
                        v.push(&s * BigInt::from(d));
                    }
                    let s2 = two.pow(b.scale + 1);
                    for _ in 0..b.u_count {
                        v.push(s2.clone());
                        v.push(-&s2);
                    }
                    for _ in 0..b.v_count {
                        v.push(s2.clone());
                        v.push(BigInt::from(3) * &s2);
                    }
                }
                v
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!(self.to_string())
    }
}

/// `k` hyperbolic planes scaled by `2^scale`, over Z_2.
pub fn hyperbolic_sum(k: usize, scale: u32) -> PAdicForm {
    PAdicForm::two(vec![TwoBlock {
        scale,
        diag: vec![],
        u_count: k,
        v_count: 0,
    }])
}

impl fmt::Display for PAdicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FormKind::Real { plus, minus } => write!(f, "sig({plus},{minus})"),
            FormKind::Odd { blocks } => {
                if blocks.is_empty() {
                    return write!(f, "0");
                }
                let p = self.place.prime().unwrap();
                let u = nonresidue_unit(&self.place);
                let parts: Vec<String> = blocks
                    .iter()
                    .map(|b| {
                        let mut entries = vec!["1".to_string(); b.dim - 1];
                        entries.push(if b.nonresidue {
                            u.to_string()
                        } else {
                            "1".to_string()
                        });
                        let body = format!("<{}>", entries.join(","));
                        if b.scale == 0 {
                            body
                        } else {
                            format!("{}*{}", p.pow(b.scale), body)
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
            FormKind::Two { blocks } => {
                if blocks.is_empty() {
                    return write!(f, "0");
                }
                let mut parts = Vec::new();
                for b in blocks {
                    let prefix = |s: &str| {
                        if b.scale == 0 {
                            s.to_string()
                        } else {
                            format!("{}*{}", BigInt::from(2).pow(b.scale), s)
                        }
                    };
                    if !b.diag.is_empty() {
                        let entries: Vec<String> = b.diag.iter().map(|d| d.to_string()).collect();
                        parts.push(prefix(&format!("<{}>", entries.join(","))));
                    }
                    if b.u_count == 1 {
                        parts.push(prefix("U"));
                    } else if b.u_count > 1 {
                        parts.push(prefix(&format!("U^{}", b.u_count)));
                    }
                    if b.v_count == 1 {
                        parts.push(prefix("V"));
                    }
                }
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// Valuation and unit class of the determinant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DetClass {
    Real { sign: i8 },
    Odd { valuation: u64, class: SquareClass },
    Two { valuation: u64, unit_mod8: u8 },
}

pub fn det_square_class(form: &PAdicForm) -> DetClass {
    match &form.kind {
        FormKind::Real { minus, .. } => DetClass::Real {
            sign: if minus % 2 == 0 { 1 } else { -1 },
        },
        FormKind::Odd { blocks } => {
            let mut valuation = 0u64;
            let mut class = SquareClass::One;
            for b in blocks {
                valuation += b.scale as u64 * b.dim as u64;
                if b.nonresidue {
                    class = class.product(SquareClass::NonResidue);
                }
            }
            DetClass::Odd { valuation, class }
        }
        FormKind::Two { blocks } => {
            let mut valuation = 0u64;
            let mut unit = 1u32;
            for b in blocks {
                valuation += b.scale as u64 * b.diag.len() as u64
                    + 2 * b.scale as u64 * (b.u_count + b.v_count) as u64;
                unit = unit * b.det8() as u32 % 8;
            }
            DetClass::Two {
                valuation,
                unit_mod8: unit as u8,
            }
        }
    }
}

/// Hasse-Witt invariant (product of Hilbert symbols over a diagonalization);
/// finite places only.
pub fn hasse_witt(form: &PAdicForm) -> Result<i32> {
    if form.place.is_real() {
        return Err(Error::InvalidArgument(
            "Hasse-Witt invariant is computed at finite places".into(),
        ));
    }
    let entries = form.diagonal_entries();
    let mut acc = 1;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            acc *= crate::symbols::hilbert_int(&entries[i], &entries[j], &form.place)?;
        }
    }
    Ok(acc)
}

/// Outcome of a Z_p isometry test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Isometry {
    Isometric,
    NotIsometric,
    Indeterminate,
}

impl Isometry {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Isometry::Isometric => Some(true),
            Isometry::NotIsometric => Some(false),
            Isometry::Indeterminate => None,
        }
    }

    pub fn to_json(self) -> Value {
        match self.as_bool() {
            Some(b) => json!(b),
            None => json!("indeterminate"),
        }
    }
}

/// Decide isometry over Z_p. Odd p and the real place are complete; p = 2 is
/// decided on the odd-diagonal/even two-scale family and `Indeterminate`
/// elsewhere (identical forms are always isometric).
pub fn isometric_zp(a: &PAdicForm, b: &PAdicForm) -> Result<Isometry> {
    if a.place != b.place {
        return Err(Error::PlaceMismatch);
    }
    if a == b {
        return Ok(Isometry::Isometric);
    }
    match (&a.kind, &b.kind) {
        (FormKind::Real { .. }, FormKind::Real { .. })
        | (FormKind::Odd { .. }, FormKind::Odd { .. }) => {
            // canonical representations: structural equality is isometry
            Ok(Isometry::NotIsometric)
        }
        (FormKind::Two { blocks }, FormKind::Two { blocks: b2 }) => {
            if !in_restricted_family(blocks) || !in_restricted_family(b2) {
                return Ok(Isometry::Indeterminate);
            }
            // Per scale: rank, type (odd iff some diagonal entry), det mod 8.
            // Together with the total Hasse-Witt invariant this decides the
            // family: the scale-1 part is even and so classified by rank and
            // det8, while sign walking between the scales is blocked by the
            // parity of even determinants.
            let inv = |bs: &[TwoBlock]| -> ((usize, bool, u8), (usize, bool, u8)) {
                let mut scale0 = (0usize, false, 1u8);
                let mut scale1 = (0usize, false, 1u8);
                for b in bs {
                    let data = (b.rank(), !b.diag.is_empty(), b.det8());
                    if b.scale == 0 {
                        scale0 = data;
                    } else {
                        scale1 = data;
                    }
                }
                (scale0, scale1)
            };
            if inv(blocks) != inv(b2) {
                return Ok(Isometry::NotIsometric);
            }
            Ok(if hasse_witt(a)? == hasse_witt(b)? {
                Isometry::Isometric
            } else {
                Isometry::NotIsometric
            })
        }
        _ => unreachable!("same place implies same kind"),
    }
}

/// The decidable 2-adic family: scales 0 and 1 only, with the scale-1
/// constituent of even type. Scale 0 may mix diagonal entries with planes
/// (a unimodular constituent containing an odd vector is diagonalizable, so
/// the mix is just a non-diagonal presentation of an odd-type form).
fn in_restricted_family(blocks: &[TwoBlock]) -> bool {
    blocks.iter().all(|b| match b.scale {
        0 => true,
        1 => b.diag.is_empty(),
        _ => false,
    })
}

/// Jordan decomposition of a nondegenerate symmetric integer matrix over the
/// completion at `place`.
pub fn jordan_decompose(g: &GramMatrix, place: &Place) -> Result<PAdicForm> {
    if g.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = g.dim();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(g.matrix().get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    match place {
        Place::Real => {
            let mut plus = 0;
            let mut minus = 0;
            while !active.is_empty() {
                let pivot = match active.iter().find(|&&i| !m[i][i].is_zero()) {
                    Some(&i) => i,
                    None => {
                        // all diagonal zero: make one nonzero with e_i += e_j
                        let (&i, &j) = active
                            .iter()
                            .flat_map(|i| active.iter().map(move |j| (i, j)))
                            .find(|&(&i, &j)| i != j && !m[i][j].is_zero())
                            .expect("nondegenerate block");
                        row_col_add(&mut m, &active, i, j);
                        i
                    }
                };
                if m[pivot][pivot].is_positive() {
                    plus += 1;
                } else {
                    minus += 1;
                }
                schur_eliminate(&mut m, &mut active, pivot);
            }
            Ok(PAdicForm::real(plus, minus))
        }
        Place::Finite(p) if *p != BigInt::from(2) => {
            let pl = place.clone();
            let mut blocks: Vec<OddBlock> = Vec::new();
            while !active.is_empty() {
                let (vmin, i, j) = min_valuation_entry(&m, &active, &pl);
                let pivot = match active
                    .iter()
                    .find(|&&k| !m[k][k].is_zero() && valuation(&m[k][k], &pl).unwrap() == vmin)
                {
                    Some(&k) => k,
                    None => {
                        // minimum lives off the diagonal; p odd makes the
                        // diagonal catch it after one transvection
                        row_col_add(&mut m, &active, i, j);
                        debug_assert_eq!(valuation(&m[i][i], &pl).unwrap(), vmin);
                        i
                    }
                };
                let val = valuation(&m[pivot][pivot], &pl).unwrap();
                assert!(val >= 0, "integral lattice has nonnegative scales");
                let unit = &m[pivot][pivot] / BigRational::from_integer(p.pow(val as u32));
                let nonres = rational_class(&unit, p)? == SquareClass::NonResidue;
                blocks.push(OddBlock {
                    scale: val as u32,
                    dim: 1,
                    nonresidue: nonres,
                });
                schur_eliminate(&mut m, &mut active, pivot);
            }
            Ok(PAdicForm::odd(p, blocks))
        }
        _ => {
            // p = 2
            let pl = place.clone();
            let two = BigInt::from(2);
            let mut blocks: Vec<TwoBlock> = Vec::new();
            while !active.is_empty() {
                let (vmin, i, j) = min_valuation_entry(&m, &active, &pl);
                assert!(vmin >= 0);
                if let Some(&k) = active
                    .iter()
                    .find(|&&k| !m[k][k].is_zero() && valuation(&m[k][k], &pl).unwrap() == vmin)
                {
                    let unit = &m[k][k] / BigRational::from_integer(two.pow(vmin as u32));
                    let d8 = u8::try_from(&rational_mod(&unit, &BigInt::from(8))).unwrap();
                    blocks.push(TwoBlock {
                        scale: vmin as u32,
                        diag: vec![d8],
                        u_count: 0,
                        v_count: 0,
                    });
                    schur_eliminate(&mut m, &mut active, k);
                } else {
                    // even 2x2 pivot at (i, j)
                    let det = &m[i][i] * &m[j][j] - &m[i][j] * &m[i][j];
                    let scaled_det = det / BigRational::from_integer(two.pow(2 * vmin as u32));
                    let d8 = u8::try_from(&rational_mod(&scaled_det, &BigInt::from(8))).unwrap();
                    debug_assert!(d8 == 3 || d8 == 7);
                    blocks.push(TwoBlock {
                        scale: vmin as u32,
                        diag: vec![],
                        u_count: usize::from(d8 == 7),
                        v_count: usize::from(d8 == 3),
                    });
                    schur_eliminate_pair(&mut m, &mut active, i, j);
                }
            }
            Ok(PAdicForm::two(blocks))
        }
    }
}

/// Least valuation over the active block, returning a witness entry
/// (preferring an off-diagonal witness for the 2x2 case).
fn min_valuation_entry(
    m: &[Vec<BigRational>],
    active: &[usize],
    place: &Place,
) -> (i64, usize, usize) {
    let mut best: Option<(i64, usize, usize)> = None;
    for (a, &i) in active.iter().enumerate() {
        for &j in &active[a..] {
            if m[i][j].is_zero() {
                continue;
            }
            let v = valuation(&m[i][j], place).unwrap();
            if best.is_none_or(|(bv, _, _)| v < bv) {
                best = Some((v, i, j));
            } else if let Some((bv, bi, bj)) = best {
                // prefer an off-diagonal witness at equal valuation
                if v == bv && bi == bj && i != j {
                    best = Some((v, i, j));
                }
            }
        }
    }
    best.expect("nondegenerate block has a nonzero entry")
}

/// Basis change `e_i <- e_i + e_j` on a symmetric matrix.
fn row_col_add(m: &mut [Vec<BigRational>], active: &[usize], i: usize, j: usize) {
    for &l in active {
        let t = &m[i][l] + &m[j][l];
        m[i][l] = t;
    }
    for &l in active {
        let t = &m[l][i] + &m[l][j];
        m[l][i] = t;
    }
}

/// Split off the pivot index: `m[k][l] -= m[k][i] m[i][l] / m[i][i]`.
fn schur_eliminate(m: &mut Vec<Vec<BigRational>>, active: &mut Vec<usize>, pivot: usize) {
    active.retain(|&k| k != pivot);
    let piv = m[pivot][pivot].clone();
    for &k in active.iter() {
        if m[k][pivot].is_zero() {
            continue;
        }
        let c = &m[k][pivot] / &piv;
        for l in 0..m.len() {
            let t = &m[k][l] - &c * &m[pivot][l];
            m[k][l] = t;
        }
    }
    for &k in active.iter() {
        m[k][pivot] = BigRational::zero();
    }
    // restore symmetry of the remaining block from the row updates
    for a in 0..active.len() {
        for b in 0..a {
            let (i, j) = (active[a], active[b]);
            let t = m[i][j].clone();
            m[j][i] = t;
        }
    }
}

/// Split off a 2x2 block on (i, j): subtract `B^{-1}`-weighted rows.
fn schur_eliminate_pair(
    m: &mut Vec<Vec<BigRational>>,
    active: &mut Vec<usize>,
    i: usize,
    j: usize,
) {
    active.retain(|&k| k != i && k != j);
    let (a, b, c) = (m[i][i].clone(), m[j][j].clone(), m[i][j].clone());
    let det = &a * &b - &c * &c;
    for &k in active.iter() {
        let (ri, rj) = (m[k][i].clone(), m[k][j].clone());
        if ri.is_zero() && rj.is_zero() {
            continue;
        }
        // (x, y) = B^{-1} (ri, rj)
        let x = (&b * &ri - &c * &rj) / &det;
        let y = (&a * &rj - &c * &ri) / &det;
        for l in 0..m.len() {
            let t = &m[k][l] - &x * &m[i][l] - &y * &m[j][l];
            m[k][l] = t;
        }
    }
    for &k in active.iter() {
        m[k][i] = BigRational::zero();
        m[k][j] = BigRational::zero();
    }
    for a in 0..active.len() {
        for b in 0..a {
            let (i2, j2) = (active[a], active[b]);
            let t = m[i2][j2].clone();
            m[j2][i2] = t;
        }
    }
}

/// Square class of a p-integral rational unit at an odd prime.
fn rational_class(u: &BigRational, p: &BigInt) -> Result<SquareClass> {
    SquareClass::of(&(u.numer() * u.denom()), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gram(rows: &[&[i64]]) -> GramMatrix {
        GramMatrix::new(IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ))
        .unwrap()
    }

    #[test]
    fn jordan_examples() {
        // [[2,1],[1,3]] over Z_5: <2> + 5*<2>
        let f = jordan_decompose(&gram(&[&[2, 1], &[1, 3]]), &Place::finite(5)).unwrap();
        assert_eq!(f.to_string(), "<2> + 5*<2>");
        // identity over any p
        let id = gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        for p in [2i64, 3, 7] {
            let f = jordan_decompose(&id, &Place::finite(p)).unwrap();
            assert_eq!(f.dim(), 3);
            match det_square_class(&f) {
                DetClass::Odd { valuation, class } => {
                    assert_eq!(valuation, 0);
                    assert_eq!(class, SquareClass::One);
                }
                DetClass::Two {
                    valuation,
                    unit_mod8,
                } => {
                    assert_eq!((valuation, unit_mod8), (0, 1));
                }
                DetClass::Real { .. } => unreachable!(),
            }
        }
        // antidiag(1,1) over Z_2 is a single hyperbolic plane at scale 0
        let f = jordan_decompose(&gram(&[&[0, 1], &[1, 0]]), &Place::finite(2)).unwrap();
        assert_eq!(f.to_string(), "U");
        assert_eq!(
            det_square_class(&f),
            DetClass::Two {
                valuation: 0,
                unit_mod8: 7
            }
        );
        // singular rejected
        assert!(matches!(
            jordan_decompose(&gram(&[&[1, 1], &[1, 1]]), &Place::finite(3)),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn jordan_real_signature() {
        let f = jordan_decompose(&gram(&[&[2, 0], &[0, -2]]), &Place::Real).unwrap();
        assert_eq!(f.signature(), Some((1, 1)));
        let f = jordan_decompose(&gram(&[&[0, 1], &[1, 0]]), &Place::Real).unwrap();
        assert_eq!(f.signature(), Some((1, 1)));
        let f = jordan_decompose(&gram(&[&[2, 1], &[1, 3]]), &Place::Real).unwrap();
        assert_eq!(f.signature(), Some((2, 0)));
    }

    #[test]
    fn det_class_examples() {
        // <2> + 5*<2> over Z_5: det = 4 * 5, valuation 1, unit class trivial
        let f = jordan_decompose(&gram(&[&[2, 1], &[1, 3]]), &Place::finite(5)).unwrap();
        assert_eq!(
            det_square_class(&f),
            DetClass::Odd {
                valuation: 1,
                class: SquareClass::One
            }
        );
    }

    #[test]
    fn hasse_witt_examples() {
        // <1,1> over Z_5
        let f =
            PAdicForm::unimodular_diag(&Place::finite(5), &[BigInt::one(), BigInt::one()]).unwrap();
        assert_eq!(hasse_witt(&f).unwrap(), 1);
        // <1,...,1,(-1)^{f-1},(-5)^{f-1}> over Z_2 has invariant (-1)^{f-1};
        // the exponent applies to the values
        for f_deg in 1usize..=4 {
            let entries: Vec<BigInt> = if f_deg == 1 {
                vec![BigInt::one()]
            } else {
                let mut v = vec![BigInt::one(); f_deg - 2];
                v.push(BigInt::from(-1).pow(f_deg as u32 - 1));
                v.push(BigInt::from(-5).pow(f_deg as u32 - 1));
                v
            };
            let form = PAdicForm::unimodular_diag(&Place::finite(2), &entries).unwrap();
            let expected = if (f_deg - 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(hasse_witt(&form).unwrap(), expected, "f = {f_deg}");
        }
        // <2,5> over Z_2: (2,5)_2 = -1
        let g = gram(&[&[2, 0], &[0, 5]]);
        let form = jordan_decompose(&g, &Place::finite(2)).unwrap();
        assert_eq!(hasse_witt(&form).unwrap(), -1);
        // real place rejected
        assert!(hasse_witt(&PAdicForm::real(1, 1)).is_err());
    }

    #[test]
    fn isometry_examples() {
        let p5 = Place::finite(5);
        // <1,2> vs <2,2> over Z_5: determinant classes differ
        let a = PAdicForm::unimodular_diag(&p5, &[BigInt::one(), BigInt::from(2)]).unwrap();
        let b = PAdicForm::unimodular_diag(&p5, &[BigInt::from(2), BigInt::from(2)]).unwrap();
        assert_eq!(isometric_zp(&a, &b).unwrap(), Isometry::NotIsometric);
        assert_eq!(isometric_zp(&a, &a).unwrap(), Isometry::Isometric);
        // <1> + 5<1> vs <4> + 5<4>: 4 is a square
        let c = jordan_decompose(&gram(&[&[1, 0], &[0, 5]]), &p5).unwrap();
        let d = jordan_decompose(&gram(&[&[4, 0], &[0, 20]]), &p5).unwrap();
        assert_eq!(isometric_zp(&c, &d).unwrap(), Isometry::Isometric);
        // mismatched places
        let r = PAdicForm::real(1, 0);
        assert!(matches!(isometric_zp(&a, &r), Err(Error::PlaceMismatch)));
    }

    #[test]
    fn two_adic_family_decisions() {
        // V + V = U + U normalization makes these equal
        let vv = PAdicForm::two(vec![TwoBlock {
            scale: 1,
            diag: vec![],
            u_count: 0,
            v_count: 2,
        }]);
        let uu = hyperbolic_sum(2, 1);
        assert_eq!(vv, uu);
        // U vs V at scale 1 differ (det8 7 vs 3)
        let u1 = hyperbolic_sum(1, 1);
        let v1 = PAdicForm::two(vec![TwoBlock {
            scale: 1,
            diag: vec![],
            u_count: 0,
            v_count: 1,
        }]);
        assert_eq!(isometric_zp(&u1, &v1).unwrap(), Isometry::NotIsometric);
        // <1,1> vs <3,3>: same rank/det8 1*1=1 vs 9=1, Hasse distinguishes
        let p2 = Place::finite(2);
        let a = PAdicForm::unimodular_diag(&p2, &[BigInt::one(), BigInt::one()]).unwrap();
        let b = PAdicForm::unimodular_diag(&p2, &[BigInt::from(3), BigInt::from(3)]).unwrap();
        assert_eq!(isometric_zp(&a, &b).unwrap(), Isometry::NotIsometric);
        // <1,1> vs <5,5> are isometric (both det 1, Hasse +1)
        let c = PAdicForm::unimodular_diag(&p2, &[BigInt::from(5), BigInt::from(5)]).unwrap();
        assert_eq!(isometric_zp(&a, &c).unwrap(), Isometry::Isometric);
        // outside the family: scale-2 block
        let far = PAdicForm::two(vec![TwoBlock {
            scale: 2,
            diag: vec![1],
            u_count: 0,
            v_count: 0,
        }]);
        let far2 = PAdicForm::two(vec![TwoBlock {
            scale: 2,
            diag: vec![5],
            u_count: 0,
            v_count: 0,
        }]);
        assert_eq!(isometric_zp(&far, &far2).unwrap(), Isometry::Indeterminate);
        // identical forms outside the family are still isometric
        assert_eq!(isometric_zp(&far, &far).unwrap(), Isometry::Isometric);
    }

    #[test]
    fn hyperbolic_sum_shape() {
        assert_eq!(hyperbolic_sum(0, 1).dim(), 0);
        let h = hyperbolic_sum(1, 1);
        assert_eq!(h.to_string(), "2*U");
        assert_eq!(
            det_square_class(&h),
            DetClass::Two {
                valuation: 2,
                unit_mod8: 7
            }
        );
        assert_eq!(hyperbolic_sum(3, 0).dim(), 6);
    }

    fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> GramMatrix {
        loop {
            let mut m = IntMatrix::zero(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let x = BigInt::from(rng.gen_range(-20i64..=20));
                    *m.get_mut(i, j) = x.clone();
                    *m.get_mut(j, i) = x;
                }
            }
            if !m.det().is_zero() {
                return GramMatrix::new(m).unwrap();
            }
        }
    }

    #[test]
    fn jordan_preserves_dim_and_det_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let places = [
            Place::Real,
            Place::finite(2),
            Place::finite(3),
            Place::finite(5),
            Place::finite(7),
        ];
        for trial in 0..500 {
            let n = 1 + trial % 5;
            let g = random_symmetric(&mut rng, n);
            let det = g.det();
            for place in &places {
                let f = jordan_decompose(&g, place).unwrap();
                assert_eq!(f.dim(), n);
                match det_square_class(&f) {
                    DetClass::Real { sign } => {
                        assert_eq!(sign > 0, det.is_positive());
                    }
                    DetClass::Odd { valuation, class } => {
                        let p = place.prime().unwrap();
                        assert_eq!(valuation, crate::arith::int_valuation(&det, p));
                        let unit = &det / p.pow(valuation as u32);
                        assert_eq!(class, SquareClass::of(&unit, p).unwrap());
                    }
                    DetClass::Two {
                        valuation,
                        unit_mod8,
                    } => {
                        let p = BigInt::from(2);
                        assert_eq!(valuation, crate::arith::int_valuation(&det, &p));
                        let unit = &det / p.pow(valuation as u32);
                        assert_eq!(BigInt::from(unit_mod8), unit.mod_floor(&BigInt::from(8)));
                    }
                }
            }
        }
    }

    /// Gram matrix of the Kronecker product of two forms.
    fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let (n, m) = (a.rows(), b.rows());
        let mut out = IntMatrix::zero(n * m, n * m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        *out.get_mut(i * m + k, j * m + l) = a.get(i, j) * b.get(k, l);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn hyperbolic_tensor_unimodular_is_hyperbolic() {
        // H (x) T = H^dim(T) for 2-adically unimodular T: compare Jordan
        // invariants (rank, type, det8 per scale, Hasse-Witt).
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = IntMatrix::from_rows(vec![
            vec![BigInt::zero(), BigInt::one()],
            vec![BigInt::one(), BigInt::zero()],
        ]);
        let mut tested = 0;
        while tested < 40 {
            let n = 1 + tested % 4;
            let t = random_symmetric(&mut rng, n);
            if t.det().is_even() {
                continue;
            }
            tested += 1;
            let prod = GramMatrix::new(kronecker(&h, t.matrix())).unwrap();
            let left = jordan_decompose(&prod, &Place::finite(2)).unwrap();
            let right = hyperbolic_sum(n, 0);
            assert_eq!(left.dim(), right.dim());
            assert_eq!(det_square_class(&left), det_square_class(&right));
            assert_eq!(hasse_witt(&left).unwrap(), hasse_witt(&right).unwrap());
            // both live at a single scale 0 of even type
            let lb = left.two_blocks().unwrap();
            assert_eq!(lb.len(), 1);
            assert_eq!(lb[0].scale, 0);
            assert!(lb[0].diag.is_empty());
        }
    }

    #[test]
    fn odd_isometry_is_basis_independent() {
        // conjugating by a unimodular integer matrix preserves the verdict
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = 2 + (rng.gen_range(0..3) as usize);
            let g = random_symmetric(&mut rng, n);
            // random unimodular: product of elementary row ops applied symmetrically
            let mut u = IntMatrix::identity(n);
            for _ in 0..6 {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                if i == j {
                    j = (j + 1) % n;
                }
                let c = BigInt::from(rng.gen_range(-3i64..=3));
                for k in 0..n {
                    let t = u.get(i, k) + &c * u.get(j, k);
                    *u.get_mut(i, k) = t;
                }
            }
            let conj = GramMatrix::new(u.mul(g.matrix()).mul(&u.transpose())).unwrap();
            for p in [3i64, 5, 7] {
                let a = jordan_decompose(&g, &Place::finite(p)).unwrap();
                let b = jordan_decompose(&conj, &Place::finite(p)).unwrap();
                assert_eq!(isometric_zp(&a, &b).unwrap(), Isometry::Isometric);
            }
        }
    }

    #[test]
    fn hasse_witt_matches_direct_product_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..80 {
            let n = 1 + rng.gen_range(0..4) as usize;
            let entries: Vec<BigInt> = (0..n)
                .map(|_| loop {
                    let x = rng.gen_range(-15i64..=15);
                    if x != 0 {
                        break BigInt::from(x);
                    }
                })
                .collect();
            let mut diag = IntMatrix::zero(n, n);
            for (i, e) in entries.iter().enumerate() {
                *diag.get_mut(i, i) = e.clone();
            }
            let g = GramMatrix::new(diag).unwrap();
            for p in [2i64, 3, 5] {
                let place = Place::finite(p);
                let form = jordan_decompose(&g, &place).unwrap();
                let mut direct = 1;
                for i in 0..n {
                    for j in i + 1..n {
                        direct *=
                            crate::symbols::hilbert_int(&entries[i], &entries[j], &place).unwrap();
                    }
                }
                assert_eq!(hasse_witt(&form).unwrap(), direct, "{entries:?} at {p}");
            }
        }
    }
}
