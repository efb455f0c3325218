//! Merging and assimilation steps on alternating forms.
//!
//! The `*_in` functions rewrite a window of a larger word held by a
//! [`Rewriter`] and record their costs in an [`Audit`]. The public wrappers
//! run them on a standalone word and return the trace.

use thiserror::Error;

use crate::altform::{power_ac, rho, sigma, AltFormError, AltPiece, AltShape, DafDescriptor};
use crate::audit::{Audit, AuditMode, Check};
use crate::dyadic::{merge_sequence_pair, merge_sequence_point, DyadicError, DyadicInterval, Interval, MergeStep, Side};
use crate::fxf::{alg1_in, shuffle_cost, shuffle_in, Front};
use crate::rewriting::{MoveSink, Rewriter, Trace};
use crate::words::{exponent_sum, Letter, Word, A, A_INV, C, C_INV};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubroutineError {
    #[error("piece index {i} out of range for {k} pieces")]
    IndexOutOfRange { i: usize, k: usize },
    #[error("shape does not fit the operation")]
    ShapeMismatch,
    #[error("x and y must be base letters with opposite exponents")]
    BadXY,
    #[error("positions do not match the descriptor")]
    PositionMismatch,
    #[error("subwords are not adjacent")]
    NotAdjacent,
    #[error(transparent)]
    AltForm(#[from] AltFormError),
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
}

/// The trace of one standalone call, its result and the checked bounds.
#[derive(Debug, Clone)]
pub struct Run<T> {
    pub trace: Trace,
    pub output: T,
    pub audit: Audit,
}

fn run<T>(start: Word, f: impl FnOnce(&mut Rewriter<Vec<crate::rewriting::Move>>, &mut Audit) -> T) -> Run<T> {
    let mut rw = Rewriter::new(&start, Vec::new());
    let mut audit = Audit::new(AuditMode::Full);
    let output = f(&mut rw, &mut audit);
    let (_, moves) = rw.into_parts();
    Run {
        trace: Trace { start, moves },
        output,
        audit,
    }
}

/// `136 (l(v_i v_{i+1}) + |xi(v_1 .. v_{i-1})|)^2`.
pub fn alg2_bound(pair_len: usize, prefix_xi: i64) -> u64 {
    136 * (pair_len as u64 + prefix_xi.unsigned_abs()).pow(2)
}

/// `2176 l(theta)^2`.
pub fn charged_bound(theta: DyadicInterval) -> u64 {
    2176 * theta.len().pow(2)
}

pub(crate) fn alg2_in<S: MoveSink>(
    rw: &mut Rewriter<S>,
    audit: &mut Audit,
    base: usize,
    shape: &mut AltShape,
    i: usize,
    theta: Option<DyadicInterval>,
) -> u64 {
    let offset = base + shape.offset_of(i);
    let (p, q) = (&shape.pieces[i], &shape.pieces[i + 1]);
    let window = p.flat_len() + q.flat_len();
    let prefix_xi = if i == 0 { 0 } else { shape.pieces[i - 1].beta };
    let lambda = p.lambda.concat(&q.lambda);
    let merged = AltPiece {
        alpha: prefix_xi + exponent_sum(&lambda),
        lambda,
        mu: p.mu.concat(&q.mu),
        beta: q.beta,
    };
    let pair_len = p.piece_len() + q.piece_len();
    let target = merged.flatten();
    let cost = alg1_in(rw, audit, offset, window, &target);
    audit.check(Check::Alg2, cost, alg2_bound(pair_len, prefix_xi));
    if let Some(theta) = theta {
        audit.charge(theta);
        audit.check(Check::Alg2Charged, cost, charged_bound(theta));
    }
    shape.pieces.splice(i..=i + 1, [merged]);
    cost
}

/// Runs the merges `steps` on a shape whose pieces correspond to `cover`.
fn run_merges<S: MoveSink>(
    rw: &mut Rewriter<S>,
    audit: &mut Audit,
    base: usize,
    shape: &mut AltShape,
    cover: &mut Vec<DyadicInterval>,
    steps: &[MergeStep],
) {
    for step in steps {
        alg2_in(rw, audit, base, shape, step.k, Some(step.left));
        step.apply(cover).expect("merge step matches the cover");
    }
}

pub(crate) fn alg3_in<S: MoveSink>(
    rw: &mut Rewriter<S>,
    audit: &mut Audit,
    base: usize,
    left: DafDescriptor,
    right: DafDescriptor,
) -> DafDescriptor {
    let (u, v) = match (left.host_positions, right.host_positions) {
        (None, _) => return right,
        (_, None) => return left,
        (Some(u), Some(v)) => (u, v),
    };
    let steps = merge_sequence_pair(u, v).expect("adjacent subwords");
    let mut shape = left.shape;
    shape.pieces.extend(right.shape.pieces);
    let mut cover = left.partition;
    cover.extend(right.partition);
    run_merges(rw, audit, base, &mut shape, &mut cover, &steps);
    DafDescriptor {
        host_positions: Some(u.join(v).expect("adjacent subwords")),
        partition: cover,
        shape,
    }
}

/// Moves the carried letter at `cur` one place right.
fn carry_past<S: MoveSink>(rw: &mut Rewriter<S>, cur: &mut usize) {
    let (z, n) = (rw.word()[*cur], rw.word()[*cur + 1]);
    if n == z.inverse() {
        rw.reduce(*cur);
        rw.expand(*cur, n);
    } else if n != z {
        rw.swap(*cur);
    }
    *cur += 1;
}

pub fn alg4_bound(k: usize, tau_len: usize) -> u64 {
    2 * k as u64 + tau_len as u64
}

pub(crate) fn alg4_in<S: MoveSink>(
    rw: &mut Rewriter<S>,
    audit: &mut Audit,
    pos: usize,
    shape: &mut AltShape,
    eps: i64,
) -> u64 {
    let before = rw.cost();
    let tau_len = shape.flat_len();
    let k = shape.k();
    let mut cur = pos;
    for piece in &mut shape.pieces {
        for _ in 0..piece.rho_len() {
            carry_past(rw, &mut cur);
        }
        // c^e -> (c a^-1)^e a^e
        let j = cur;
        if eps > 0 {
            rw.expand(cur + 1, A_INV);
        } else {
            rw.expand(cur, A);
            rw.swap(cur + 1);
        }
        cur += 2;
        for _ in 0..2 * piece.alpha.unsigned_abs() {
            carry_past(rw, &mut cur);
        }
        if piece.alpha * eps < 0 {
            rw.reduce(j + 1);
            rw.reduce(j);
            cur -= 4;
        }
        piece.alpha += eps;
        for _ in 0..piece.sigma_len() {
            carry_past(rw, &mut cur);
        }
        // a^e -> (a c^-1)^e c^e
        let j = cur;
        if eps > 0 {
            rw.expand(cur + 1, C_INV);
        } else {
            rw.expand(cur, C);
            rw.swap(cur + 1);
        }
        cur += 2;
        for _ in 0..2 * piece.beta.unsigned_abs() {
            carry_past(rw, &mut cur);
        }
        if piece.beta * eps < 0 {
            rw.reduce(j + 1);
            rw.reduce(j);
            cur -= 4;
        }
        piece.beta += eps;
    }
    rw.reduce(cur);
    let cost = rw.cost() - before;
    audit.check(Check::Alg4, cost, alg4_bound(k, tau_len));
    cost
}

/// Rewrites the single letter at `pos` into `target`.
fn convert_letter<S: MoveSink>(rw: &mut Rewriter<S>, audit: &mut Audit, pos: usize, target: &[Letter]) {
    let front = if shuffle_cost(target, Front::Ab) <= shuffle_cost(target, Front::Cd) {
        Front::Ab
    } else {
        Front::Cd
    };
    let cost = shuffle_in(rw, pos, 1, target, front);
    audit.check(Check::Alg5Letter, cost, 2);
}

fn c_power(m: i64) -> impl Iterator<Item = Letter> {
    std::iter::repeat_n(if m >= 0 { C } else { C_INV }, m.unsigned_abs() as usize)
}

fn single_piece(l: Letter, alpha: i64, beta: i64) -> AltPiece {
    let (lambda, mu) = if l.is_ab() {
        (Word::from_letters([l]), Word::empty())
    } else {
        (Word::empty(), Word::from_letters([l]))
    };
    AltPiece {
        lambda,
        mu,
        alpha,
        beta,
    }
}

fn ab_xi(l: Letter) -> i64 {
    if l.is_ab() {
        l.exponent()
    } else {
        0
    }
}

pub fn alg5_bound(tau_len: usize) -> u64 {
    3 * tau_len as u64 + 4
}

pub(crate) fn valid_xy(x: Letter, y: Letter) -> bool {
    !x.is_s() && !y.is_s() && x.exponent() == -y.exponent()
}

/// `x tau y` at `pos` to the PAF of `x v y` over the pieces `x, v_1.., y`.
pub(crate) fn alg5_in<S: MoveSink>(
    rw: &mut Rewriter<S>,
    audit: &mut Audit,
    pos: usize,
    x: Letter,
    tau: &AltShape,
    y: Letter,
) -> AltShape {
    let before = rw.cost();
    let e = x.exponent();
    let tau_len = tau.flat_len();

    let x_piece = single_piece(x, ab_xi(x), e);
    let mut x_target = x_piece.flatten().into_letters();
    x_target.extend(c_power(e));
    convert_letter(rw, audit, pos, &x_target);

    let y_piece = single_piece(y, e + ab_xi(y), 0);
    let mut y_target: Vec<Letter> = c_power(-e).collect();
    if y.is_ab() {
        y_target.extend(rho(&[y]).iter());
    } else {
        y_target.extend(power_ac(y.exponent()).iter());
        y_target.extend(sigma(&[y]).iter());
    }
    convert_letter(rw, audit, pos + x_target.len() + tau_len, &y_target);

    let mut inner = tau.clone();
    alg4_in(rw, audit, pos + x_piece.flat_len(), &mut inner, e);

    let mut pieces = Vec::with_capacity(tau.k() + 2);
    pieces.push(x_piece);
    pieces.extend(inner.pieces);
    pieces.push(y_piece);
    let cost = rw.cost() - before;
    audit.check(Check::Alg5, cost, alg5_bound(tau_len));
    AltShape { pieces }
}

/// From the PAF over `{x}, mdc(V), {y}` to the DAF of `x v y`.
pub(crate) fn alg6_in<S: MoveSink>(
    rw: &mut Rewriter<S>,
    audit: &mut Audit,
    base: usize,
    mut shape: AltShape,
    v: Option<Interval>,
    mut cover: Vec<DyadicInterval>,
    x_hat: i64,
) -> DafDescriptor {
    let with_x = match v {
        Some(v) => {
            let steps = merge_sequence_point(v, Side::Left);
            run_merges(rw, audit, base, &mut shape, &mut cover, &steps);
            Interval::new(x_hat, v.hi()).expect("x precedes v")
        }
        None => Interval::point(x_hat),
    };
    let steps = merge_sequence_point(with_x, Side::Right);
    run_merges(rw, audit, base, &mut shape, &mut cover, &steps);
    DafDescriptor {
        host_positions: Some(Interval::new(x_hat, with_x.hi() + 1).expect("nonempty")),
        partition: cover,
        shape,
    }
}

/// Merges pieces `i` and `i + 1` (1-based `i`) of the PAF `shape`.
pub fn alg2_merge_pieces(shape: &AltShape, i: usize) -> Result<Run<AltShape>, SubroutineError> {
    let k = shape.k();
    if i == 0 || i >= k {
        return Err(SubroutineError::IndexOutOfRange { i, k });
    }
    check_paf(shape)?;
    let mut out = shape.clone();
    Ok(run(shape.flatten(), |rw, audit| {
        alg2_in(rw, audit, 0, &mut out, i - 1, None);
        out
    }))
}

/// Whether `shape` is the PAF of its underlying pieces.
fn check_paf(shape: &AltShape) -> Result<(), SubroutineError> {
    let pieces: Vec<Word> = shape
        .pieces
        .iter()
        .map(|p| p.lambda.concat(&p.mu))
        .collect();
    match AltShape::paf(&pieces) {
        Ok(s) if s == *shape => Ok(()),
        _ => Err(SubroutineError::ShapeMismatch),
    }
}

/// Two DAFs of adjacent balanced subwords `u v` and the merges that join
/// their covers.
#[derive(Debug, Clone)]
pub struct MergeContext {
    pub left: DafDescriptor,
    pub right: DafDescriptor,
    pub steps: Vec<MergeStep>,
}

impl MergeContext {
    /// `u = w[u_range]`, `v = w[v_range]`.
    pub fn new(
        w: &[Letter],
        u_range: std::ops::Range<usize>,
        v_range: std::ops::Range<usize>,
    ) -> Result<MergeContext, SubroutineError> {
        if u_range.end != v_range.start {
            return Err(SubroutineError::NotAdjacent);
        }
        let (_, left) = crate::altform::daf(w, u_range)?;
        let (_, right) = crate::altform::daf(w, v_range)?;
        let steps = match (left.host_positions, right.host_positions) {
            (Some(u), Some(v)) => merge_sequence_pair(u, v)?,
            _ => Vec::new(),
        };
        Ok(MergeContext { left, right, steps })
    }

    pub fn start_word(&self) -> Word {
        self.left.word().concat(&self.right.word())
    }
}

pub fn alg3_merge_daf(ctx: &MergeContext) -> Result<Run<DafDescriptor>, SubroutineError> {
    if let (Some(u), Some(v)) = (ctx.left.host_positions, ctx.right.host_positions) {
        if u.hi() + 1 != v.lo() {
            return Err(SubroutineError::NotAdjacent);
        }
    }
    let (left, right) = (ctx.left.clone(), ctx.right.clone());
    Ok(run(ctx.start_word(), |rw, audit| alg3_in(rw, audit, 0, left, right)))
}

/// `c^eps tau c^-eps` to the shape with every exponent shifted by `eps`.
pub fn alg4_pass_c(shape: &AltShape, eps: i64) -> Result<Run<AltShape>, SubroutineError> {
    if eps.abs() != 1 || !shape.is_well_formed() {
        return Err(SubroutineError::ShapeMismatch);
    }
    let c = if eps > 0 { C } else { C_INV };
    let mut start = vec![c];
    shape.write_flat(&mut start);
    start.push(c.inverse());
    let mut out = shape.clone();
    Ok(run(Word::from_letters(start), |rw, audit| {
        alg4_in(rw, audit, 0, &mut out, eps);
        out
    }))
}

/// `x tau y` to the PAF of `x v y` with respect to `x, v_1, ..., v_k, y`.
pub fn alg5_assimilate_i(x: Letter, tau: &AltShape, y: Letter) -> Result<Run<AltShape>, SubroutineError> {
    if !valid_xy(x, y) {
        return Err(SubroutineError::BadXY);
    }
    check_paf(tau)?;
    let mut start = vec![x];
    tau.write_flat(&mut start);
    start.push(y);
    Ok(run(Word::from_letters(start), |rw, audit| alg5_in(rw, audit, 0, x, tau, y)))
}

/// The output of [`alg5_assimilate_i`] to the DAF of `x v y`, where `v` has
/// descriptor `desc` and `x`, `y` sit at `x_pos`, `y_pos` of the host.
pub fn alg6_assimilate_ii(
    bar_tau: &AltShape,
    desc: &DafDescriptor,
    x_pos: i64,
    y_pos: i64,
) -> Result<Run<DafDescriptor>, SubroutineError> {
    let ok = match desc.host_positions {
        Some(v) => v.lo() == x_pos + 1 && v.hi() + 1 == y_pos,
        None => y_pos == x_pos + 1,
    };
    if !ok || bar_tau.k() != desc.shape.k() + 2 || desc.partition.len() != desc.shape.k() {
        return Err(SubroutineError::PositionMismatch);
    }
    check_paf(bar_tau)?;
    let mut cover = vec![DyadicInterval::unit(x_pos)];
    cover.extend(desc.partition.iter().copied());
    cover.push(DyadicInterval::unit(y_pos));
    let shape = bar_tau.clone();
    let v = desc.host_positions;
    Ok(run(bar_tau.flatten(), |rw, audit| alg6_in(rw, audit, 0, shape, v, cover, x_pos)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::altform::{daf, paf_shape, DafDescriptor};
    use crate::fxf::fxf_equal;
    use crate::rewriting::verify_trace;
    use crate::testutil::{arb_balanced, w};
    use crate::words::{B, B_INV, D, D_INV};
    use proptest::prelude::*;

    fn check<T>(r: &Run<T>, end: &Word) {
        let rep = verify_trace(&r.trace).unwrap();
        assert_eq!(&rep.end, end);
        assert!(r.audit.is_clean(), "{}", r.audit);
    }

    #[test]
    fn alg2_examples() {
        let s = paf_shape(&w("bD"), &[1, 1]).unwrap();
        let r = alg2_merge_pieces(&s, 1).unwrap();
        check(&r, &w("bCcAaD"));
        assert!(r.trace.cost() <= 136 * 4);

        let s = paf_shape(&w("aA"), &[1, 1]).unwrap();
        let r = alg2_merge_pieces(&s, 1).unwrap();
        check(&r, &paf_shape(&w("aA"), &[2]).unwrap().flatten());
        assert!(fxf_equal(&verify_trace(&r.trace).unwrap().end, &w("aA")).unwrap());

        let s = paf_shape(&w("aA"), &[2]).unwrap();
        assert_eq!(
            alg2_merge_pieces(&s, 1).unwrap_err(),
            SubroutineError::IndexOutOfRange { i: 1, k: 1 }
        );
    }

    #[test]
    fn alg3_examples() {
        let host = w("aA");
        let ctx = MergeContext::new(&host, 0..1, 1..2).unwrap_err();
        assert!(matches!(ctx, SubroutineError::AltForm(AltFormError::NotBalanced)));

        // Balanced neighbours: "aB" then "Ba" is not balanced, so use bA.
        let host = w("aBbA");
        let ctx = MergeContext::new(&host, 0..2, 2..4).unwrap();
        assert_eq!(ctx.steps.len(), 1);
        let r = alg3_merge_daf(&ctx).unwrap();
        check(&r, &daf(&host, 0..4).unwrap().0);

        let ctx = MergeContext::new(&host, 0..0, 0..4).unwrap();
        let r = alg3_merge_daf(&ctx).unwrap();
        assert!(r.trace.moves.is_empty());

        // A balanced s-free word has even length, so the split of [5,20]
        // is taken at [5,8] and [9,20].
        let mut letters = vec![A; 5];
        let mut v = w("abcdabcdabcdabcd").into_letters();
        crate::testutil::balance(&mut v[..4]);
        crate::testutil::balance(&mut v[4..]);
        letters.extend(v);
        let ctx = MergeContext::new(&letters, 5..9, 9..21).unwrap();
        assert_eq!(ctx.steps, merge_sequence_pair(Interval::new(5, 8).unwrap(), Interval::new(9, 20).unwrap()).unwrap());
        let r = alg3_merge_daf(&ctx).unwrap();
        let (end, desc) = daf(&letters, 5..21).unwrap();
        check(&r, &end);
        assert_eq!(r.output, desc);
        let sizes: Vec<u64> = r.output.partition.iter().map(|d| d.len()).collect();
        assert_eq!(sizes, vec![1, 2, 8, 4, 1]);
    }

    #[test]
    fn alg4_examples() {
        let r = alg4_pass_c(&AltShape::default(), 1).unwrap();
        assert_eq!(r.trace.cost(), 0);
        check(&r, &Word::empty());

        let one = AltShape {
            pieces: vec![AltPiece {
                lambda: Word::empty(),
                mu: Word::empty(),
                alpha: 1,
                beta: 0,
            }],
        };
        let r = alg4_pass_c(&one, 1).unwrap();
        check(&r, &w("cAcAaC"));
        assert!(fxf_equal(&r.trace.start, &w("cAcAaC")).unwrap());

        let r = alg4_pass_c(&one, -1).unwrap();
        check(&r, &w("cA"));
        assert_eq!(alg4_pass_c(&one, 2).unwrap_err(), SubroutineError::ShapeMismatch);
    }

    #[test]
    fn alg5_examples() {
        let empty = AltShape::default();
        let r = alg5_assimilate_i(A, &empty, A_INV).unwrap();
        check(&r, &paf_shape(&w("aA"), &[1, 1]).unwrap().flatten());
        let r = alg5_assimilate_i(C, &empty, C_INV).unwrap();
        check(&r, &paf_shape(&w("cC"), &[1, 1]).unwrap().flatten());
        assert_eq!(alg5_assimilate_i(A, &empty, B).unwrap_err(), SubroutineError::BadXY);
        assert_eq!(alg5_assimilate_i(crate::words::S, &empty, A_INV).unwrap_err(), SubroutineError::BadXY);
    }

    /// Every base letter, rewritten at either end, costs at most 2.
    #[test]
    fn letter_conversions_are_cheap() {
        for x in Letter::base() {
            for y in Letter::base().filter(|y| y.exponent() == -x.exponent()) {
                let r = alg5_assimilate_i(x, &AltShape::default(), y).unwrap();
                let stat = r.audit.stat(Check::Alg5Letter);
                assert_eq!(stat.checked, 2);
                assert_eq!(stat.violations, 0, "{x} {y} {:?}", r.audit.violations());
                let pieces = [vec![x], vec![y]];
                check(&r, &AltShape::paf(&pieces).unwrap().flatten());
            }
        }
    }

    #[test]
    fn alg6_examples() {
        // v empty, x and y at 0 and 1.
        let bar = paf_shape(&w("bD"), &[1, 1]).unwrap();
        let r = alg6_assimilate_ii(&bar, &DafDescriptor::default(), 0, 1).unwrap();
        let (end, desc) = daf(&w("bD"), 0..2).unwrap();
        check(&r, &end);
        assert_eq!(r.output, desc);
        assert_eq!(desc.partition, vec![DyadicInterval::new(1, 0)]);

        // v at [1,2], x at 0, y at 3.
        let host = w("aBbA");
        let (_, vd) = daf(&host, 1..3).unwrap();
        let bar = AltShape::paf(&[w("a"), w("B"), w("b"), w("A")]).unwrap();
        let r = alg6_assimilate_ii(&bar, &vd, 0, 3).unwrap();
        let (end, desc) = daf(&host, 0..4).unwrap();
        check(&r, &end);
        assert_eq!(desc.partition, vec![DyadicInterval::new(2, 0)]);
        assert_eq!(r.output, desc);

        // v at [5,6], x at 4, y at 7.
        let host = w("ccccaBbA");
        let (_, vd) = daf(&host, 5..7).unwrap();
        let r = alg6_assimilate_ii(&bar, &vd, 4, 7).unwrap();
        assert_eq!(r.output.partition, vec![DyadicInterval::new(2, 1)]);
        check(&r, &daf(&host, 4..8).unwrap().0);

        assert_eq!(
            alg6_assimilate_ii(&bar, &vd, 3, 7).unwrap_err(),
            SubroutineError::PositionMismatch
        );
    }

    fn arb_xy() -> impl Strategy<Value = (Letter, Letter)> {
        (0usize..8, 0usize..4).prop_map(|(x, y)| {
            let x = Letter::from_code(x).unwrap();
            let ys: Vec<Letter> = Letter::base().filter(|y| y.exponent() == -x.exponent()).collect();
            (x, ys[y])
        })
    }

    fn arb_cuts(len: usize, cuts: Vec<usize>) -> Vec<usize> {
        let mut part = Vec::new();
        let mut left = len;
        for c in cuts {
            if left == 0 {
                break;
            }
            let c = c.min(left);
            part.push(c);
            left -= c;
        }
        if left > 0 {
            part.push(left);
        }
        part
    }

    proptest! {
        #[test]
        fn assimilation_reaches_the_daf(v in arb_balanced(60), (x, y) in arb_xy(), offset in 1usize..40) {
            let mut host = vec![B; offset - 1];
            host.push(x);
            host.extend(v.iter());
            host.push(y);
            host.extend([D, D_INV, B_INV]);
            let (tau, vd) = daf(&host, offset..offset + v.len()).unwrap();
            let r5 = alg5_assimilate_i(x, &vd.shape, y).unwrap();
            let rep = verify_trace(&r5.trace).unwrap();
            prop_assert_eq!(r5.trace.start.len(), tau.len() + 2);
            prop_assert_eq!(&rep.end, &r5.output.flatten());
            prop_assert!(r5.audit.is_clean());
            let x_hat = offset as i64 - 1;
            let r6 = alg6_assimilate_ii(&r5.output, &vd, x_hat, x_hat + v.len() as i64 + 1).unwrap();
            let (end, desc) = daf(&host, offset - 1..offset + v.len() + 1).unwrap();
            prop_assert_eq!(verify_trace(&r6.trace).unwrap().end, end);
            prop_assert_eq!(r6.output, desc);
            prop_assert!(r6.audit.is_clean(), "{}", r6.audit);
        }

        #[test]
        fn alg3_reaches_the_daf(u in arb_balanced(40), v in arb_balanced(40), offset in 0usize..70) {
            let mut host = vec![A; offset];
            host.extend(u.iter());
            host.extend(v.iter());
            let mid = offset + u.len();
            let ctx = MergeContext::new(&host, offset..mid, mid..mid + v.len()).unwrap();
            let r = alg3_merge_daf(&ctx).unwrap();
            let (end, desc) = daf(&host, offset..mid + v.len()).unwrap();
            prop_assert_eq!(verify_trace(&r.trace).unwrap().end, end);
            prop_assert_eq!(r.output, desc);
            prop_assert!(r.audit.is_clean(), "{}", r.audit);
        }

        #[test]
        fn alg4_shifts_exponents(v in arb_balanced(40), eps in prop_oneof![Just(1i64), Just(-1i64)], offset in 0usize..50) {
            let mut host = vec![A; offset];
            host.extend(v.iter());
            let (_, d) = daf(&host, offset..offset + v.len()).unwrap();
            let r = alg4_pass_c(&d.shape, eps).unwrap();
            let mut shifted = d.shape.clone();
            for p in &mut shifted.pieces {
                p.alpha += eps;
                p.beta += eps;
            }
            prop_assert_eq!(&r.output, &shifted);
            prop_assert_eq!(verify_trace(&r.trace).unwrap().end, shifted.flatten());
            prop_assert!(r.audit.is_clean());
        }

        #[test]
        fn alg2_any_adjacent_pair(v in arb_balanced(40), cuts in proptest::collection::vec(1usize..5, 1..12), i in 0usize..12) {
            let part = arb_cuts(v.len(), cuts);
            prop_assume!(part.len() >= 2);
            let i = 1 + i % (part.len() - 1);
            let s = paf_shape(&v, &part).unwrap();
            let r = alg2_merge_pieces(&s, i).unwrap();
            let mut merged = part.clone();
            merged[i - 1] += merged[i];
            merged.remove(i);
            let target = paf_shape(&v, &merged).unwrap();
            prop_assert_eq!(verify_trace(&r.trace).unwrap().end, target.flatten());
            prop_assert_eq!(r.output, target);
            prop_assert!(r.audit.is_clean());
        }
    }
}
