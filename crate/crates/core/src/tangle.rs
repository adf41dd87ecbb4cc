//! Tangle diagrams as validated stacks of elementary slices, with a
//! line-oriented text format, JSON export, component tracing and writhe.
//!
//! A diagram is read bottom to top. Every boundary is a left-to-right list
//! of strand endpoints `(label; direction)`; the label of an up-endpoint is
//! the color `mu` of its component, a down-endpoint carries the dual label
//! `mu^*`. The slice alphabet:
//!
//! * `cross_pos i` / `cross_neg i` - positive/negative crossing of strands
//!   `i, i+1` (orientation-blind);
//! * `cup_cw i [mu]` - clockwise cup of color `mu`, creating `(mu; up)`
//!   `(mu^*; down)` at position `i` (the coevaluation);
//! * `cup_ccw i [mu]` - counter-clockwise cup, creating `(mu^*; down)`
//!   `(mu; up)` (the quantum cotrace);
//! * `cap_cw i` - clockwise cap, consuming `(a; up) (a^*; down)` (the
//!   quantum trace);
//! * `cap_ccw i` - counter-clockwise cap, consuming `(a; down) (a^*; up)`
//!   (the evaluation);
//! * `twist_pos i` / `twist_neg i` - a `+-1` ribbon twist on strand `i`.
//!
//! Cups and caps are named by the rotation sense of the strand through the
//! extremum; a cap must consume one up and one down strand with mutually
//! dual labels. The writhe of a component counts its self-crossings with
//! orientation signs (`cross_pos` between parallel strands is `+1`,
//! between anti-parallel strands `-1`) plus `+-1` for each twist slice, in
//! the blackboard framing.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::cartan::{CartanData, Weight};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

/// One strand endpoint on a horizontal boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrandState {
    pub label: Weight,
    pub dir: Dir,
}

impl StrandState {
    pub fn new(label: Weight, dir: Dir) -> Self {
        StrandState { label, dir }
    }

    /// The color of the component through this endpoint.
    pub fn color(&self, cd: &CartanData) -> Weight {
        match self.dir {
            Dir::Up => self.label.clone(),
            Dir::Down => cd.dual_weight(&self.label),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceKind {
    CrossPos,
    CrossNeg,
    CupCw,
    CupCcw,
    CapCw,
    CapCcw,
    TwistPos,
    TwistNeg,
}

impl SliceKind {
    pub fn name(self) -> &'static str {
        match self {
            SliceKind::CrossPos => "cross_pos",
            SliceKind::CrossNeg => "cross_neg",
            SliceKind::CupCw => "cup_cw",
            SliceKind::CupCcw => "cup_ccw",
            SliceKind::CapCw => "cap_cw",
            SliceKind::CapCcw => "cap_ccw",
            SliceKind::TwistPos => "twist_pos",
            SliceKind::TwistNeg => "twist_neg",
        }
    }

    pub fn is_cup(self) -> bool {
        matches!(self, SliceKind::CupCw | SliceKind::CupCcw)
    }

    pub fn is_cap(self) -> bool {
        matches!(self, SliceKind::CapCw | SliceKind::CapCcw)
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, SliceKind::CrossPos | SliceKind::CrossNeg)
    }
}

/// An elementary slice; `color` is the cup payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub kind: SliceKind,
    pub pos: usize,
    pub color: Option<Weight>,
}

impl Slice {
    pub fn new(kind: SliceKind, pos: usize) -> Self {
        Slice { kind, pos, color: None }
    }

    pub fn cup(kind: SliceKind, pos: usize, color: Weight) -> Self {
        Slice { kind, pos, color: Some(color) }
    }
}

/// A validated tangle diagram. `boundaries[h]` is the strand list below
/// slice `h`; the last entry is the top boundary.
#[derive(Clone, Debug)]
pub struct Tangle {
    pub cd: Arc<CartanData>,
    pub slices: Vec<Slice>,
    boundaries: Vec<Vec<StrandState>>,
}

impl Tangle {
    /// Validates a slice stack over the given bottom boundary.
    pub fn new(cd: Arc<CartanData>, bottom: Vec<StrandState>, slices: Vec<Slice>) -> Result<Self> {
        for s in &bottom {
            if s.label.rank() != cd.rank {
                return Err(Error::validation(format!(
                    "bottom label {} has wrong rank for {}",
                    s.label, cd.lie_type
                )));
            }
            if !s.color(&cd).is_dominant() {
                return Err(Error::validation(format!(
                    "bottom strand color must be dominant, got label {}",
                    s.label
                )));
            }
        }
        let mut boundaries = vec![bottom];
        for (k, slice) in slices.iter().enumerate() {
            let cur = boundaries.last().unwrap();
            let next = apply_slice(&cd, cur, slice).map_err(|e| {
                let msg = match e {
                    Error::Validation(m) => m,
                    other => other.to_string(),
                };
                Error::validation(format!("slice {k}: {msg}"))
            })?;
            boundaries.push(next);
        }
        Ok(Tangle { cd, slices, boundaries })
    }

    pub fn bottom(&self) -> &[StrandState] {
        &self.boundaries[0]
    }

    pub fn top(&self) -> &[StrandState] {
        self.boundaries.last().unwrap()
    }

    /// Boundary below slice `h` (`h = slices.len()` gives the top).
    pub fn boundary(&self, h: usize) -> &[StrandState] {
        &self.boundaries[h]
    }

    pub fn is_closed(&self) -> bool {
        self.bottom().is_empty() && self.top().is_empty()
    }

    /// Renders the text form; `parse` inverts this exactly.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "algebra {}", self.cd.lie_type).unwrap();
        let bottom: Vec<String> = self
            .bottom()
            .iter()
            .map(|s| {
                format!(
                    "[{};{}]",
                    s.label,
                    match s.dir {
                        Dir::Up => "up",
                        Dir::Down => "down",
                    }
                )
            })
            .collect();
        if bottom.is_empty() {
            writeln!(out, "bottom:").unwrap();
        } else {
            writeln!(out, "bottom: {}", bottom.join(" ")).unwrap();
        }
        for s in &self.slices {
            match &s.color {
                Some(c) => writeln!(out, "{} {} [{}]", s.kind.name(), s.pos, c).unwrap(),
                None => writeln!(out, "{} {}", s.kind.name(), s.pos).unwrap(),
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strand = |s: &StrandState| {
            serde_json::json!({
                "label": s.label.to_string(),
                "dir": match s.dir { Dir::Up => "up", Dir::Down => "down" },
            })
        };
        serde_json::json!({
            "algebra": self.cd.lie_type.to_string(),
            "bottom": self.bottom().iter().map(strand).collect::<Vec<_>>(),
            "top": self.top().iter().map(strand).collect::<Vec<_>>(),
            "slices": self.slices.iter().map(|s| serde_json::json!({
                "kind": s.kind.name(),
                "pos": s.pos,
                "color": s.color.as_ref().map(|c| c.to_string()),
            })).collect::<Vec<_>>(),
            "closed": self.is_closed(),
        })
    }
}

fn apply_slice(cd: &CartanData, cur: &[StrandState], slice: &Slice) -> Result<Vec<StrandState>> {
    let p = slice.pos;
    let mut next = cur.to_vec();
    match slice.kind {
        SliceKind::CrossPos | SliceKind::CrossNeg => {
            if p + 1 >= cur.len() {
                return Err(Error::validation(format!(
                    "boundary mismatch: crossing at position {p} needs two strands, width is {}",
                    cur.len()
                )));
            }
            next.swap(p, p + 1);
        }
        SliceKind::CupCw | SliceKind::CupCcw => {
            if p > cur.len() {
                return Err(Error::validation(format!(
                    "boundary mismatch: cup at position {p}, width is {}",
                    cur.len()
                )));
            }
            let mu = slice
                .color
                .clone()
                .ok_or_else(|| Error::validation("cup is missing its color"))?;
            if mu.rank() != cd.rank {
                return Err(Error::validation(format!(
                    "cup color {mu} has wrong rank for {}",
                    cd.lie_type
                )));
            }
            if !mu.is_dominant() {
                return Err(Error::validation(format!("cup color must be dominant, got {mu}")));
            }
            let mu_star = cd.dual_weight(&mu);
            let pair = match slice.kind {
                SliceKind::CupCw => [
                    StrandState::new(mu, Dir::Up),
                    StrandState::new(mu_star, Dir::Down),
                ],
                _ => [
                    StrandState::new(mu_star, Dir::Down),
                    StrandState::new(mu, Dir::Up),
                ],
            };
            next.splice(p..p, pair);
        }
        SliceKind::CapCw | SliceKind::CapCcw => {
            if p + 1 >= cur.len() {
                return Err(Error::validation(format!(
                    "boundary mismatch: cap at position {p} needs two strands, width is {}",
                    cur.len()
                )));
            }
            let (a, b) = (&cur[p], &cur[p + 1]);
            let want = match slice.kind {
                SliceKind::CapCw => (Dir::Up, Dir::Down),
                _ => (Dir::Down, Dir::Up),
            };
            if (a.dir, b.dir) != want {
                return Err(Error::validation(format!(
                    "cap orientation violation at position {p}: expected ({:?}, {:?}), found ({:?}, {:?})",
                    want.0, want.1, a.dir, b.dir
                )));
            }
            if cd.dual_weight(&a.label) != b.label {
                return Err(Error::validation(format!(
                    "cap duality violation at position {p}: labels {} and {} are not mutually dual",
                    a.label, b.label
                )));
            }
            next.drain(p..p + 2);
        }
        SliceKind::TwistPos | SliceKind::TwistNeg => {
            if p >= cur.len() {
                return Err(Error::validation(format!(
                    "boundary mismatch: twist at position {p}, width is {}",
                    cur.len()
                )));
            }
        }
    }
    Ok(next)
}

// ---------------------------------------------------------------------------
// Parsing.

/// Parses the line-oriented tangle format. Errors carry 1-based line
/// numbers.
pub fn parse_tangle(text: &str) -> Result<Tangle> {
    let mut cd: Option<Arc<CartanData>> = None;
    let mut bottom: Option<Vec<StrandState>> = None;
    let mut slices = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ln = ln + 1;
        let err = |msg: String| Error::parse(format!("line {ln}: {msg}"));
        if let Some(rest) = line.strip_prefix("algebra") {
            if cd.is_some() {
                return Err(err("duplicate algebra line".into()));
            }
            let lt = rest.trim();
            let data = CartanData::from_name(lt).map_err(|e| err(e.to_string()))?;
            cd = Some(Arc::new(data));
            continue;
        }
        if let Some(rest) = line.strip_prefix("bottom:") {
            if bottom.is_some() {
                return Err(err("duplicate bottom line".into()));
            }
            if cd.is_none() {
                return Err(err("bottom before algebra".into()));
            }
            let mut states = Vec::new();
            for tok in rest.split_whitespace() {
                states.push(parse_strand(tok).map_err(|e| err(e.to_string()))?);
            }
            bottom = Some(states);
            continue;
        }
        // Slice lines.
        let mut parts = line.split_whitespace();
        let kind = match parts.next() {
            Some("cross_pos") => SliceKind::CrossPos,
            Some("cross_neg") => SliceKind::CrossNeg,
            Some("cup_cw") => SliceKind::CupCw,
            Some("cup_ccw") => SliceKind::CupCcw,
            Some("cap_cw") => SliceKind::CapCw,
            Some("cap_ccw") => SliceKind::CapCcw,
            Some("twist_pos") => SliceKind::TwistPos,
            Some("twist_neg") => SliceKind::TwistNeg,
            Some(other) => return Err(err(format!("unknown directive {other:?}"))),
            None => continue,
        };
        let pos: usize = parts
            .next()
            .ok_or_else(|| err("missing position".into()))?
            .parse()
            .map_err(|_| err("bad position".into()))?;
        let color = match parts.next() {
            Some(tok) if kind.is_cup() => {
                let inner = tok
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(|| err(format!("cup color must be bracketed, got {tok:?}")))?;
                Some(inner.parse::<Weight>().map_err(|e| err(e.to_string()))?)
            }
            Some(tok) => return Err(err(format!("unexpected token {tok:?}"))),
            None if kind.is_cup() => return Err(err("cup is missing its color".into())),
            None => None,
        };
        if parts.next().is_some() {
            return Err(err("trailing tokens".into()));
        }
        slices.push(Slice { kind, pos, color });
    }
    let cd = cd.ok_or_else(|| Error::parse("missing algebra line"))?;
    let bottom = bottom.ok_or_else(|| Error::parse("missing bottom line"))?;
    Tangle::new(cd, bottom, slices)
}

fn parse_strand(tok: &str) -> Result<StrandState> {
    let inner = tok
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(format!("strand must look like [w;dir], got {tok:?}")))?;
    let (w, d) = inner
        .split_once(';')
        .ok_or_else(|| Error::parse(format!("strand must look like [w;dir], got {tok:?}")))?;
    let dir = match d.trim() {
        "up" => Dir::Up,
        "down" => Dir::Down,
        other => return Err(Error::parse(format!("bad direction {other:?}"))),
    };
    Ok(StrandState::new(w.parse()?, dir))
}

// ---------------------------------------------------------------------------
// Components and writhe.

/// Per-component color and writhe of a closed tangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInfo {
    pub label: Weight,
    pub writhe: i64,
}

#[derive(Clone, Debug)]
pub struct ComponentData {
    pub components: Vec<ComponentInfo>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Traces the link components of a closed tangle and computes per-component
/// writhe in the blackboard framing.
pub fn trace_components(t: &Tangle) -> Result<ComponentData> {
    if !t.is_closed() {
        return Err(Error::validation("component tracing requires a closed tangle"));
    }
    // Segment ids: offsets[h] + i for endpoint i of boundary h.
    let heights = t.slices.len() + 1;
    let mut offsets = vec![0usize; heights];
    let mut total = 0;
    for h in 0..heights {
        offsets[h] = total;
        total += t.boundary(h).len();
    }
    let mut uf = UnionFind::new(total);
    let seg = |h: usize, i: usize| offsets[h] + i;
    for (h, slice) in t.slices.iter().enumerate() {
        let w = t.boundary(h).len();
        let p = slice.pos;
        match slice.kind {
            SliceKind::CrossPos | SliceKind::CrossNeg => {
                for i in 0..w {
                    let j = if i == p {
                        p + 1
                    } else if i == p + 1 {
                        p
                    } else {
                        i
                    };
                    uf.union(seg(h, i), seg(h + 1, j));
                }
            }
            SliceKind::CupCw | SliceKind::CupCcw => {
                uf.union(seg(h + 1, p), seg(h + 1, p + 1));
                for i in 0..w {
                    let j = if i < p { i } else { i + 2 };
                    uf.union(seg(h, i), seg(h + 1, j));
                }
            }
            SliceKind::CapCw | SliceKind::CapCcw => {
                uf.union(seg(h, p), seg(h, p + 1));
                for i in 0..w {
                    if i == p || i == p + 1 {
                        continue;
                    }
                    let j = if i < p { i } else { i - 2 };
                    uf.union(seg(h, i), seg(h + 1, j));
                }
            }
            SliceKind::TwistPos | SliceKind::TwistNeg => {
                for i in 0..w {
                    uf.union(seg(h, i), seg(h + 1, i));
                }
            }
        }
    }
    // Writhe per root.
    let mut writhe: std::collections::HashMap<usize, i64> = Default::default();
    let mut colors: std::collections::HashMap<usize, Weight> = Default::default();
    let mut order: Vec<usize> = Vec::new();
    for (h, slice) in t.slices.iter().enumerate() {
        let p = slice.pos;
        match slice.kind {
            SliceKind::CrossPos | SliceKind::CrossNeg => {
                let (r1, r2) = (uf.find(seg(h, p)), uf.find(seg(h, p + 1)));
                if r1 == r2 {
                    let bd = t.boundary(h);
                    let parallel = bd[p].dir == bd[p + 1].dir;
                    let base = if slice.kind == SliceKind::CrossPos { 1 } else { -1 };
                    let sign = if parallel { base } else { -base };
                    *writhe.entry(r1).or_insert(0) += sign;
                }
            }
            SliceKind::TwistPos | SliceKind::TwistNeg => {
                let r = uf.find(seg(h, p));
                let sign = if slice.kind == SliceKind::TwistPos { 1 } else { -1 };
                *writhe.entry(r).or_insert(0) += sign;
            }
            _ => {}
        }
    }
    // Colors: every up-endpoint of a component carries its color; check
    // consistency across the component.
    for h in 0..heights {
        for (i, s) in t.boundary(h).iter().enumerate() {
            let r = uf.find(seg(h, i));
            let color = s.color(&t.cd);
            match colors.get(&r) {
                None => {
                    colors.insert(r, color);
                    order.push(r);
                }
                Some(c) if *c == color => {}
                Some(c) => {
                    return Err(Error::internal(format!(
                        "component has inconsistent colors {c} and {color}"
                    )));
                }
            }
        }
    }
    let components = order
        .into_iter()
        .map(|r| ComponentInfo {
            label: colors[&r].clone(),
            writhe: writhe.get(&r).copied().unwrap_or(0),
        })
        .collect();
    Ok(ComponentData { components })
}

// ---------------------------------------------------------------------------
// Braid closures.

/// The mirror image of a diagram: every crossing and twist changes sign,
/// cups and caps are unchanged. Writhes negate; closed invariants are sent
/// to their bar involution.
pub fn mirror(t: &Tangle) -> Tangle {
    let slices = t
        .slices
        .iter()
        .map(|s| {
            let kind = match s.kind {
                SliceKind::CrossPos => SliceKind::CrossNeg,
                SliceKind::CrossNeg => SliceKind::CrossPos,
                SliceKind::TwistPos => SliceKind::TwistNeg,
                SliceKind::TwistNeg => SliceKind::TwistPos,
                other => other,
            };
            Slice { kind, pos: s.pos, color: s.color.clone() }
        })
        .collect();
    Tangle::new(t.cd.clone(), t.bottom().to_vec(), slices)
        .expect("mirroring preserves validity")
}

/// Builds the Markov closure of a braid word. Generators are signed
/// 1-based indices: `+k` is a positive crossing of strands `k, k+1`,
/// `-k` the negative one. `labels[j]` colors the strand starting at
/// bottom position `j`.
pub fn braid_closure(
    cd: &Arc<CartanData>,
    word: &[i64],
    labels: &[Weight],
) -> Result<Tangle> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::validation("braid closure needs at least one strand"));
    }
    for &g in word {
        let k = g.unsigned_abs() as usize;
        if g == 0 || k >= n {
            return Err(Error::validation(format!(
                "braid generator {g} out of range for {n} strands"
            )));
        }
    }
    let mut slices = Vec::new();
    // Nested cups: after k cups the boundary is
    // lab_1 ... lab_k lab_k^* ... lab_1^* (all braid strands up).
    for (k, lam) in labels.iter().enumerate() {
        slices.push(Slice::cup(SliceKind::CupCw, k, lam.clone()));
    }
    for &g in word {
        let k = g.unsigned_abs() as usize;
        let kind = if g > 0 { SliceKind::CrossPos } else { SliceKind::CrossNeg };
        slices.push(Slice::new(kind, k - 1));
    }
    for k in (0..n).rev() {
        slices.push(Slice::new(SliceKind::CapCw, k));
    }
    Tangle::new(cd.clone(), Vec::new(), slices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(name: &str) -> Arc<CartanData> {
        Arc::new(CartanData::from_name(name).unwrap())
    }

    #[test]
    fn zero_crossing_unknot() {
        let t = parse_tangle("algebra A1\nbottom:\ncup_cw 0 [1]\ncap_cw 0\n").unwrap();
        assert!(t.is_closed());
        let comps = trace_components(&t).unwrap();
        assert_eq!(comps.components.len(), 1);
        assert_eq!(comps.components[0].writhe, 0);
        assert_eq!(comps.components[0].label, Weight(vec![1]));
    }

    #[test]
    fn trefoil_closure() {
        let c = cd("A1");
        let w1 = Weight(vec![1]);
        let t = braid_closure(&c, &[1, 1, 1], &[w1.clone(), w1.clone()]).unwrap();
        assert!(t.is_closed());
        let comps = trace_components(&t).unwrap();
        assert_eq!(comps.components.len(), 1);
        assert_eq!(comps.components[0].writhe, 3);
    }

    #[test]
    fn empty_word_closure_is_unknot() {
        let c = cd("A1");
        let t = braid_closure(&c, &[], &[Weight(vec![2])]).unwrap();
        let comps = trace_components(&t).unwrap();
        assert_eq!(comps.components.len(), 1);
        assert_eq!(comps.components[0].writhe, 0);
        assert_eq!(comps.components[0].label, Weight(vec![2]));
    }

    #[test]
    fn two_component_unlink_closure() {
        let c = cd("A1");
        let w1 = Weight(vec![1]);
        // sigma_1 sigma_1^{-1} closes to a 2-component unlink.
        let t = braid_closure(&c, &[1, -1], &[w1.clone(), w1.clone()]).unwrap();
        let comps = trace_components(&t).unwrap();
        assert_eq!(comps.components.len(), 2);
        assert!(comps.components.iter().all(|ci| ci.writhe == 0));
    }

    #[test]
    fn twist_writhe() {
        let t = parse_tangle("algebra A1\nbottom:\ncup_cw 0 [1]\ntwist_pos 0\ncap_cw 0\n").unwrap();
        let comps = trace_components(&t).unwrap();
        assert_eq!(comps.components[0].writhe, 1);
    }

    #[test]
    fn kink_has_negative_orientation_writhe() {
        // cup_cw then cross_pos joins anti-parallel strands: writhe -1.
        let t =
            parse_tangle("algebra A1\nbottom:\ncup_cw 0 [1]\ncross_pos 0\ncap_ccw 0\n").unwrap();
        let comps = trace_components(&t).unwrap();
        assert_eq!(comps.components[0].writhe, -1);
    }

    #[test]
    fn cap_orientation_violation() {
        // Two cups then a cap joining two up-strands.
        let text = "algebra A1\nbottom:\ncup_cw 0 [1]\ncup_cw 0 [1]\ncap_cw 1\n";
        let err = parse_tangle(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("slice 2"), "{msg}");
        assert!(msg.contains("orientation"), "{msg}");
    }

    #[test]
    fn cap_duality_violation() {
        let text = "algebra A2\nbottom: [1,0;up] [0,2;down]\ncap_cw 0\n";
        let err = parse_tangle(text).unwrap_err();
        assert!(err.to_string().contains("duality"), "{err}");
    }

    #[test]
    fn boundary_mismatch_reports_slice() {
        let text = "algebra A1\nbottom:\ncup_cw 0 [1]\ncross_pos 5\n";
        let err = parse_tangle(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("slice 1") && msg.contains("boundary mismatch"), "{msg}");
    }

    #[test]
    fn parse_render_roundtrip() {
        let c = cd("A2");
        let w = Weight(vec![1, 0]);
        let t = braid_closure(&c, &[1, -1], &[w.clone(), w.clone()]).unwrap();
        let text = t.render();
        let t2 = parse_tangle(&text).unwrap();
        assert_eq!(t.slices, t2.slices);
        assert_eq!(t.bottom(), t2.bottom());
        assert_eq!(t2.render(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_tangle("algebra A1\nbottom:\nfrob 0\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse_tangle("algebra Q7\nbottom:\n").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        let err = parse_tangle("algebra A1\nbottom: [1;sideways]\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn open_tangle_boundaries() {
        let text = "algebra A1\nbottom: [1;up] [1;up]\ncross_pos 0\n";
        let t = parse_tangle(text).unwrap();
        assert!(!t.is_closed());
        assert_eq!(t.top().len(), 2);
        assert!(trace_components(&t).is_err());
    }

    #[test]
    fn figure8_closure() {
        let c = cd("A1");
        let w = Weight(vec![1]);
        let t = braid_closure(&c, &[1, -2, 1, -2], &[w.clone(), w.clone(), w.clone()]).unwrap();
        let comps = trace_components(&t).unwrap();
        assert_eq!(comps.components.len(), 1);
        assert_eq!(comps.components[0].writhe, 0);
    }
}
