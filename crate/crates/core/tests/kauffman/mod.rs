//! Desk-scale Kauffman bracket oracle for braid closures, computed as a
//! state sum over planar matchings. Independent of the R-matrix machinery:
//! only loop counting and Laurent arithmetic.

use qknot_core::exactalg::LaurentPoly;

/// A planar matching of `n` bottom and `n` top points. Points are indexed
/// `0..n` (bottom) and `n..2n` (top); `pair[i]` is the partner of `i`.
#[derive(Clone, Debug, PartialEq)]
struct Matching {
    n: usize,
    pair: Vec<usize>,
}

/// Where a strand walk currently sits while gluing two matchings: at a
/// middle point about to leave through the upper or lower diagram, or done
/// at a boundary point of the composite.
enum Walk {
    Mid { m: usize, via_top: bool },
    Boundary(usize),
}

impl Matching {
    fn identity(n: usize) -> Self {
        let mut pair = vec![0; 2 * n];
        for i in 0..n {
            pair[i] = n + i;
            pair[n + i] = i;
        }
        Matching { n, pair }
    }

    /// The cup-cap generator joining bottom `i, i+1` and top `i, i+1`.
    fn e(n: usize, i: usize) -> Self {
        let mut m = Self::identity(n);
        m.pair[i] = i + 1;
        m.pair[i + 1] = i;
        m.pair[n + i] = n + i + 1;
        m.pair[n + i + 1] = n + i;
        m
    }

    /// Stacks `top` above `self`, returning the composite matching and the
    /// number of closed loops created in the middle layer.
    fn compose(&self, top: &Matching) -> (Matching, usize) {
        let n = self.n;
        // One step of a strand walk through the middle: leave the middle
        // point `m` through the indicated diagram. Composite boundary
        // encoding: 0..n bottom, n..2n top.
        let step = |m: usize, via_top: bool| -> Walk {
            if via_top {
                let p = top.pair[m];
                if p >= n {
                    Walk::Boundary(n + (p - n))
                } else {
                    // Arrived at middle p through `top`; leave through `self`.
                    Walk::Mid { m: p, via_top: false }
                }
            } else {
                let p = self.pair[n + m];
                if p < n {
                    Walk::Boundary(p)
                } else {
                    Walk::Mid { m: p - n, via_top: true }
                }
            }
        };
        let mut mid_seen = vec![false; n];
        let mut pair = vec![usize::MAX; 2 * n];
        let connect = |a: usize, b: usize, pair: &mut Vec<usize>| {
            pair[a] = b;
            pair[b] = a;
        };
        for start in 0..2 * n {
            if pair[start] != usize::MAX {
                continue;
            }
            // First hop out of the composite boundary point.
            let mut state = if start < n {
                let p = self.pair[start];
                if p < n {
                    connect(start, p, &mut pair);
                    continue;
                }
                Walk::Mid { m: p - n, via_top: true }
            } else {
                let p = top.pair[n + (start - n)];
                if p >= n {
                    connect(start, n + (p - n), &mut pair);
                    continue;
                }
                Walk::Mid { m: p, via_top: false }
            };
            loop {
                match state {
                    Walk::Boundary(end) => {
                        connect(start, end, &mut pair);
                        break;
                    }
                    Walk::Mid { m, via_top } => {
                        mid_seen[m] = true;
                        state = step(m, via_top);
                    }
                }
            }
        }
        // Closed loops: cycles of middle points never reached from the
        // boundary.
        let mut loops = 0;
        for m0 in 0..n {
            if mid_seen[m0] {
                continue;
            }
            loops += 1;
            let mut state = Walk::Mid { m: m0, via_top: true };
            loop {
                match state {
                    Walk::Boundary(_) => unreachable!("closed loop reached the boundary"),
                    Walk::Mid { m, via_top } => {
                        if mid_seen[m] {
                            break;
                        }
                        mid_seen[m] = true;
                        state = step(m, via_top);
                    }
                }
            }
        }
        (Matching { n, pair }, loops)
    }

    /// Closes the matching by joining top `i` to bottom `i`, returning the
    /// total number of loops.
    fn closure_loops(&self) -> usize {
        let n = self.n;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut x = start;
            loop {
                seen[x] = true;
                let y = self.pair[x];
                seen[y] = true;
                // Closure arc: top i <-> bottom i.
                x = if y < n { y + n } else { y - n };
                if x == start {
                    break;
                }
            }
        }
        loops
    }
}

fn delta() -> LaurentPoly {
    // -(q + q^{-1}) at A = q^{1/2}.
    LaurentPoly::q().add(&LaurentPoly::monomial(-1, 1)).neg()
}

/// The unnormalized Kauffman bracket of the closure of a braid word at
/// `A = q^{1/2}`: every loop contributes a factor `-(q + q^{-1})`.
pub fn closure_bracket(word: &[i64], strands: usize) -> LaurentPoly {
    let c = word.len();
    let d = delta();
    let mut total = LaurentPoly::zero();
    for state in 0..(1u32 << c) {
        let mut diagram = Matching::identity(strands);
        let mut loops = 0usize;
        let mut a_exp = 0i64;
        for (k, &g) in word.iter().enumerate() {
            let pick_e = state & (1 << k) != 0;
            // Positive crossing: A * id + A^{-1} * e.
            // Negative crossing: A^{-1} * id + A * e.
            let positive = g > 0;
            a_exp += match (positive, pick_e) {
                (true, false) | (false, true) => 1,
                _ => -1,
            };
            if pick_e {
                let i = g.unsigned_abs() as usize - 1;
                let (next, new_loops) = diagram.compose(&Matching::e(strands, i));
                diagram = next;
                loops += new_loops;
            }
        }
        loops += diagram.closure_loops();
        let mut term = LaurentPoly::monomial(a_exp, 2);
        for _ in 0..loops {
            term = term.mul(&d);
        }
        total = total.add(&term);
    }
    total
}

/// Loop count of the all-A smoothing of the closure (`id` for positive
/// crossings, `e` for negative ones).
pub fn all_a_loops(word: &[i64], strands: usize) -> usize {
    let mut diagram = Matching::identity(strands);
    let mut loops = 0usize;
    for &g in word {
        if g < 0 {
            let i = g.unsigned_abs() as usize - 1;
            let (next, new_loops) = diagram.compose(&Matching::e(strands, i));
            diagram = next;
            loops += new_loops;
        }
    }
    loops + diagram.closure_loops()
}
