//! Minimal winning coalitions of two-dimensional games in `O(n log n)`.
//!
//! Write `A1`/`A2` for the players attaining the grand coalition's maximum
//! in the first/second coordinate, and `M` for everyone else (the idle
//! players). Every winning coalition contains `A1` or `A2`. When the two
//! busy sets intersect, the game reduces to "contains `A1` or contains
//! `A2`". Otherwise every minimal winning coalition is one of:
//!
//! * `A1 ∪ {y}` with `y ∈ A2`, or `A2 ∪ {x}` with `x ∈ A1` (cross type);
//! * `A1 ∪ D` or `A1 ∪ D ∪ {p}` where `D` is a prefix of `M` sorted by
//!   first coordinate and `p` is an idle anchor attaining the coalition's
//!   second-coordinate maximum (side one), and the mirror image (side two).
//!
//! The prefix of side one is determined by the coalition's second
//! coordinate maximum `h`: it holds every idle player whose first coordinate
//! is at least `h + q1(N) - q2(N)`. Besides one family per distinct idle
//! second coordinate above `q2(A1)`, there is a family for `h = q2(A1)`,
//! where `A1` itself supplies the maximum.

use crate::error::{Error, Result};
use crate::model::{Coalition, Game, Weight};

const NONE: usize = usize::MAX;
/// Position slot of a busy player.
const NOT_IDLE: u32 = u32::MAX;

/// Which busy set a one-sided coalition contains in full.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Contains `A1(N)`, avoids `A2(N)`.
    One,
    /// Contains `A2(N)`, avoids `A1(N)`.
    Two,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

/// Busy/idle decomposition of the grand coalition with both idle orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BusySplit {
    n: usize,
    w: Vec<[Weight; 2]>,
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    /// Idle players in ascending id order.
    pub idle: Vec<usize>,
    /// Idle players by first coordinate, descending; ties by ascending id.
    pub order1: Vec<usize>,
    /// Idle players by second coordinate, descending; ties by ascending id.
    pub order2: Vec<usize>,
    /// Weights along `order1` and `order2`, kept next to the orders so the
    /// scans stay sequential.
    ranked1: Vec<[Weight; 2]>,
    ranked2: Vec<[Weight; 2]>,
    pos1: Vec<u32>,
    pos2: Vec<u32>,
    pub q1n: u64,
    pub q2n: u64,
    /// `q1(A2(N))`.
    pub q1_a2: u64,
    /// `q2(A1(N))`.
    pub q2_a1: u64,
    pub intersecting: bool,
}

impl BusySplit {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.idle.len()
    }

    pub fn m1(&self) -> usize {
        self.a1.len()
    }

    pub fn m2(&self) -> usize {
        self.a2.len()
    }

    pub fn weight(&self, j: usize) -> [u64; 2] {
        self.w[j].map(u64::from)
    }

    pub fn busy(&self, side: Side) -> &[usize] {
        match side {
            Side::One => &self.a1,
            Side::Two => &self.a2,
        }
    }

    fn ranked(&self, side: Side) -> &[[Weight; 2]] {
        match side {
            Side::One => &self.ranked1,
            Side::Two => &self.ranked2,
        }
    }

    pub fn order(&self, side: Side) -> &[usize] {
        match side {
            Side::One => &self.order1,
            Side::Two => &self.order2,
        }
    }

    /// 0-based position of an idle player in `order(side)`.
    pub fn position(&self, side: Side, j: usize) -> Option<usize> {
        let p = match side {
            Side::One => self.pos1[j],
            Side::Two => self.pos2[j],
        };
        (p != NOT_IDLE).then_some(p as usize)
    }

    pub fn is_idle(&self, j: usize) -> bool {
        self.pos1[j] != NOT_IDLE
    }

    pub(crate) fn view(&self, side: Side) -> View<'_> {
        View { split: self, side }
    }
}

/// Side-generic accessors. For side one the "own" coordinate is the first
/// one (maximized by `A1`) and the "cross" coordinate is the second.
#[derive(Clone, Copy)]
pub(crate) struct View<'a> {
    pub split: &'a BusySplit,
    pub side: Side,
}

impl<'a> View<'a> {
    pub fn own(&self, j: usize) -> u64 {
        u64::from(self.split.w[j][self.own_dim()])
    }

    pub fn cross(&self, j: usize) -> u64 {
        u64::from(self.split.w[j][1 - self.own_dim()])
    }

    fn own_dim(&self) -> usize {
        match self.side {
            Side::One => 0,
            Side::Two => 1,
        }
    }

    pub fn own_busy(&self) -> &'a [usize] {
        self.split.busy(self.side)
    }

    pub fn other_busy(&self) -> &'a [usize] {
        self.split.busy(self.side.other())
    }

    /// Idle players by own coordinate, descending.
    pub fn own_order(&self) -> &'a [usize] {
        self.split.order(self.side)
    }

    /// `(own, cross)` along the own order.
    fn own_ranked(&self) -> impl ExactSizeIterator<Item = (u64, u64)> + 'a {
        let d = self.own_dim();
        self.split
            .ranked(self.side)
            .iter()
            .map(move |x| (u64::from(x[d]), u64::from(x[1 - d])))
    }

    /// `(own, cross)` along the cross order.
    fn cross_ranked(&self) -> impl ExactSizeIterator<Item = (u64, u64)> + 'a {
        let d = self.own_dim();
        self.split
            .ranked(self.side.other())
            .iter()
            .map(move |x| (u64::from(x[d]), u64::from(x[1 - d])))
    }

    /// Idle players by cross coordinate, descending.
    pub fn cross_order(&self) -> &'a [usize] {
        self.split.order(self.side.other())
    }

    pub fn pos(&self, j: usize) -> usize {
        self.split.position(self.side, j).expect("idle player")
    }

    /// Grand-coalition maximum of the own coordinate.
    pub fn own_max(&self) -> u64 {
        match self.side {
            Side::One => self.split.q1n,
            Side::Two => self.split.q2n,
        }
    }

    pub fn cross_max(&self) -> u64 {
        match self.side {
            Side::One => self.split.q2n,
            Side::Two => self.split.q1n,
        }
    }

    /// Cross coordinate supplied by the own busy set, `q2(A1)` for side one.
    pub fn own_busy_cross(&self) -> u64 {
        match self.side {
            Side::One => self.split.q2_a1,
            Side::Two => self.split.q1_a2,
        }
    }

    /// Own coordinate of the other busy set, `q1(A2)` for side one.
    pub fn other_busy_own(&self) -> u64 {
        match self.side {
            Side::One => self.split.q1_a2,
            Side::Two => self.split.q2_a1,
        }
    }

    /// Offset `L` such that an idle player must join a coalition whose cross
    /// maximum is `h` exactly when its own coordinate is at least `h + L`.
    pub fn offset(&self) -> i64 {
        self.own_max() as i64 - self.cross_max() as i64
    }

    /// Number of idle players whose own coordinate is at least `threshold`.
    pub fn prefix_len(&self, threshold: i64) -> usize {
        self.own_order()
            .partition_point(|&t| self.own(t) as i64 >= threshold)
    }

    /// Whether the own busy set, on its own, loses.
    pub fn own_busy_loses(&self) -> bool {
        let q_busy = self.own_max() + self.own_busy_cross();
        let best_idle = self.own_order().first().map_or(0, |&t| self.own(t));
        let q_rest = self.cross_max() + self.other_busy_own().max(best_idle);
        q_busy <= q_rest
    }
}

pub fn split_busy(game: &Game) -> Result<BusySplit> {
    if game.k() != 2 {
        return Err(Error::Dimension(game.k()));
    }
    let n = game.n();
    if n >= NOT_IDLE as usize {
        return Err(Error::Parameter(format!(
            "{n} players exceed the supported size"
        )));
    }
    let w: Vec<[Weight; 2]> = (0..n)
        .map(|j| [game.weight(j, 0), game.weight(j, 1)])
        .collect();
    let q1n = w.iter().map(|x| x[0]).max().unwrap_or(0);
    let q2n = w.iter().map(|x| x[1]).max().unwrap_or(0);
    let a1: Vec<usize> = (0..n).filter(|&j| w[j][0] == q1n).collect();
    let a2: Vec<usize> = (0..n).filter(|&j| w[j][1] == q2n).collect();
    let intersecting = a1.iter().any(|j| a2.binary_search(j).is_ok());
    let idle: Vec<usize> = (0..n)
        .filter(|&j| w[j][0] != q1n && w[j][1] != q2n)
        .collect();
    let (order1, ranked1) = descending(&idle, &w, 0);
    let (order2, ranked2) = descending(&idle, &w, 1);
    let mut pos1 = vec![NOT_IDLE; n];
    let mut pos2 = vec![NOT_IDLE; n];
    for (p, (&j1, &j2)) in order1.iter().zip(&order2).enumerate() {
        pos1[j1] = p as u32;
        pos2[j2] = p as u32;
    }
    let q1_a2 = a2.iter().map(|&j| u64::from(w[j][0])).max().unwrap_or(0);
    let q2_a1 = a1.iter().map(|&j| u64::from(w[j][1])).max().unwrap_or(0);
    Ok(BusySplit {
        n,
        w,
        a1,
        a2,
        idle,
        order1,
        order2,
        ranked1,
        ranked2,
        pos1,
        pos2,
        q1n: u64::from(q1n),
        q2n: u64::from(q2n),
        q1_a2,
        q2_a1,
        intersecting,
    })
}

/// Idle players by coordinate `dim`, descending, ties by index. Radix sort
/// is stable and `idle` is ascending, so ties keep index order.
fn descending(idle: &[usize], w: &[[Weight; 2]], dim: usize) -> (Vec<usize>, Vec<[Weight; 2]>) {
    let mut keyed: Vec<([Weight; 2], usize)> = idle.iter().map(|&j| (w[j], j)).collect();
    radsort::sort_by_key(&mut keyed, |(x, _)| Weight::MAX - x[dim]);
    keyed.into_iter().map(|(x, j)| (j, x)).unzip()
}

/// Per-side candidate data. Rows follow the cross order: row `r` belongs to
/// the idle player `cross_order[r]`, so the family scan reads it
/// sequentially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCandidates {
    pub side: Side,
    /// Cross coordinate of the row's player.
    pub cross: Vec<u64>,
    /// Own coordinate of the row's player.
    pub own: Vec<u64>,
    /// Length of the own-order prefix `D_i`: idle players whose own
    /// coordinate is at least `cross(i) + L`. This is `x(i)` on side one and
    /// `y(i)` on side two.
    pub cutoff: Vec<usize>,
    /// Cross-coordinate maximum over `D_i \ {i}` (0 when empty).
    pub cross_excl: Vec<u64>,
    /// `true` when `i` lies outside its own prefix, so the candidate
    /// `busy ∪ D_i ∪ {i}` has one more member than the prefix.
    pub outside: Vec<bool>,
    /// Own coordinate of the first player after the prefix (0 past the end).
    pub next_own: Vec<u64>,
    /// Cross-coordinate maximum over the first `k` players of the own order
    /// (`prefix_cross_max[0] = 0`).
    pub prefix_cross_max: Vec<u64>,
}

impl SideCandidates {
    /// Row of idle player `i`.
    pub fn row(&self, split: &BusySplit, i: usize) -> usize {
        split
            .position(self.side.other(), i)
            .expect("candidates exist for idle players only")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateTable {
    pub one: SideCandidates,
    pub two: SideCandidates,
}

impl CandidateTable {
    pub fn side(&self, side: Side) -> &SideCandidates {
        match side {
            Side::One => &self.one,
            Side::Two => &self.two,
        }
    }
}

/// Candidate tables for both sides. Requires disjoint busy sets.
pub fn build_candidates(split: &BusySplit) -> Result<CandidateTable> {
    if split.intersecting {
        return Err(Error::Precondition(
            "candidate tables need disjoint busy sets".into(),
        ));
    }
    Ok(CandidateTable {
        one: side_candidates(split.view(Side::One)),
        two: side_candidates(split.view(Side::Two)),
    })
}

fn side_candidates(v: View<'_>) -> SideCandidates {
    let m = v.own_order().len();
    let own_sorted: Vec<u64> = v.own_ranked().map(|(o, _)| o).collect();

    // Top-two prefix maxima of the cross coordinate along the own order.
    let mut best = vec![(0u64, NONE); m + 1];
    let mut second = vec![0u64; m + 1];
    for (p, (_, c)) in v.own_ranked().enumerate() {
        let (b, bp) = best[p];
        if bp == NONE || c > b {
            best[p + 1] = (c, p);
            second[p + 1] = if bp == NONE { 0 } else { b };
        } else {
            best[p + 1] = (b, bp);
            second[p + 1] = second[p].max(c);
        }
    }
    let prefix_cross_max: Vec<u64> = best.iter().map(|&(b, _)| b).collect();

    let rows = v.cross_order();
    let mut cross = Vec::with_capacity(m);
    let mut own = Vec::with_capacity(m);
    let mut cutoff = Vec::with_capacity(m);
    let mut cross_excl = Vec::with_capacity(m);
    let mut outside = Vec::with_capacity(m);
    let mut next_own = Vec::with_capacity(m);
    // Walking the cross order, thresholds fall and prefixes grow.
    let offset = v.offset();
    let mut ptr = 0;
    for (&i, (o, c)) in rows.iter().zip(v.cross_ranked()) {
        let threshold = c as i64 + offset;
        while ptr < m && own_sorted[ptr] as i64 >= threshold {
            ptr += 1;
        }
        let pos = v.pos(i);
        let (b, bp) = best[ptr];
        cross.push(c);
        own.push(o);
        cutoff.push(ptr);
        cross_excl.push(if bp == pos { second[ptr] } else { b });
        outside.push(pos >= ptr);
        next_own.push(own_sorted.get(ptr).copied().unwrap_or(0));
    }
    SideCandidates {
        side: v.side,
        cross,
        own,
        cutoff,
        cross_excl,
        outside,
        next_own,
        prefix_cross_max,
    }
}

/// Constant-time test of whether the candidate in row `r` is minimal
/// winning with its anchor supplying the cross maximum: the anchor must be
/// busy in it, it must win, and the anchor must be swing.
pub(crate) fn anchor_accepted(v: View<'_>, cand: &SideCandidates, r: usize) -> bool {
    let h = cand.cross[r];
    let excl = cand.cross_excl[r];
    let busy = h >= excl.max(v.own_busy_cross());
    let winning = v.own_max() + h > v.other_busy_own() + v.cross_max();
    let rest_own = v.other_busy_own().max(cand.next_own[r]).max(cand.own[r]);
    let swing = v.own_max() + v.own_busy_cross().max(excl) <= v.cross_max() + rest_own;
    busy && winning && swing
}

/// Materializes the candidate `busy ∪ D_i ∪ {i}` for idle player `i`.
pub fn candidate_coalition(
    split: &BusySplit,
    table: &CandidateTable,
    side: Side,
    i: usize,
) -> Coalition {
    let cand = table.side(side);
    let v = split.view(side);
    let r = cand.row(split, i);
    v.own_busy()
        .iter()
        .copied()
        .chain(v.own_order()[..cand.cutoff[r]].iter().copied())
        .chain(std::iter::once(i))
        .collect()
}

/// Verdict of the constant-time test for the candidate anchored at `i`.
pub fn candidate_accepted(split: &BusySplit, table: &CandidateTable, side: Side, i: usize) -> bool {
    let cand = table.side(side);
    anchor_accepted(split.view(side), cand, cand.row(split, i))
}

/// One minimal winning coalition in compact form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MwcEntry {
    /// The busy set of `side` alone (intersecting busy sets only).
    Busy(Side),
    /// The busy set of `base` plus one busy player of the other side.
    Cross { base: Side, extra: usize },
    /// The busy set of `side`, the first `prefix` idle players of that
    /// side's order, and optionally one more idle anchor.
    OneSided {
        side: Side,
        prefix: usize,
        anchor: Option<usize>,
    },
}

/// A one-sided minimal winning coalition with its cardinality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideMwc {
    pub prefix: usize,
    pub anchor: Option<usize>,
    pub size: usize,
}

/// Per-side bookkeeping. `list` is ordered by non-decreasing prefix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SideSummary {
    pub list: Vec<SideMwc>,
    /// 1-based index into `list` of the first coalition whose prefix
    /// contains the idle player (indexed by player id); `list.len() + 1`
    /// when none does.
    pub tau: Vec<usize>,
    /// Whether the idle player is the extra anchor of a coalition in `list`.
    pub sigma: Vec<bool>,
    /// Index into `list` of the coalition anchored at the player, if any.
    pub anchored: Vec<Option<usize>>,
}

impl SideSummary {
    pub fn count(&self) -> usize {
        self.list.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwcCollection {
    pub split: BusySplit,
    pub table: Option<CandidateTable>,
    entries: Vec<MwcEntry>,
    pub one: SideSummary,
    pub two: SideSummary,
    /// `A1(N) ∪ {y}` is minimal winning for every `y ∈ A2(N)`.
    pub cross_one: bool,
    /// `A2(N) ∪ {x}` is minimal winning for every `x ∈ A1(N)`.
    pub cross_two: bool,
}

impl MwcCollection {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn n(&self) -> usize {
        self.split.n
    }

    pub fn entries(&self) -> &[MwcEntry] {
        &self.entries
    }

    pub fn side(&self, side: Side) -> &SideSummary {
        match side {
            Side::One => &self.one,
            Side::Two => &self.two,
        }
    }

    /// When both cross families exist and `m1 = m2 = 1` they coincide.
    pub fn cross_coincide(&self) -> bool {
        self.cross_one && self.cross_two && self.split.m1() == 1 && self.split.m2() == 1
    }

    pub fn materialize(&self, entry: &MwcEntry) -> Coalition {
        let s = &self.split;
        match *entry {
            MwcEntry::Busy(side) => Coalition::new(s.busy(side).iter().copied()),
            MwcEntry::Cross { base, extra } => {
                Coalition::new(s.busy(base).iter().copied().chain(std::iter::once(extra)))
            }
            MwcEntry::OneSided {
                side,
                prefix,
                anchor,
            } => Coalition::new(
                s.busy(side)
                    .iter()
                    .copied()
                    .chain(s.order(side)[..prefix].iter().copied())
                    .chain(anchor),
            ),
        }
    }

    /// All coalitions, materialized, in canonical order.
    pub fn coalitions(&self) -> Vec<Coalition> {
        let mut out: Vec<Coalition> = self.entries.iter().map(|e| self.materialize(e)).collect();
        out.sort();
        out
    }
}

pub fn compute_mwc2(game: &Game) -> Result<MwcCollection> {
    let split = split_busy(game)?;
    if split.intersecting {
        return Ok(intersecting_collection(split));
    }
    let table = build_candidates(&split)?;

    let a1_loses = split.view(Side::One).own_busy_loses();
    let a2_loses = split.view(Side::Two).own_busy_loses();
    let (m1, m2) = (split.m1(), split.m2());
    let cross_one = a1_loses
        && if m1 == 1 {
            m2 >= 2 || a2_loses
        } else {
            m2 >= 2
        };
    let cross_two = a2_loses
        && if m2 == 1 {
            m1 >= 2 || a1_loses
        } else {
            m1 >= 2
        };

    let mut entries = Vec::new();
    if cross_one {
        entries.extend(split.a2.iter().map(|&y| MwcEntry::Cross {
            base: Side::One,
            extra: y,
        }));
    }
    if cross_two && !(cross_one && m1 == 1 && m2 == 1) {
        entries.extend(split.a1.iter().map(|&x| MwcEntry::Cross {
            base: Side::Two,
            extra: x,
        }));
    }

    let one = side_mwc(split.view(Side::One), &table.one);
    let two = side_mwc(split.view(Side::Two), &table.two);
    for (side, summary) in [(Side::One, &one), (Side::Two, &two)] {
        entries.extend(summary.list.iter().map(|c| MwcEntry::OneSided {
            side,
            prefix: c.prefix,
            anchor: c.anchor,
        }));
    }

    Ok(MwcCollection {
        split,
        table: Some(table),
        entries,
        one,
        two,
        cross_one,
        cross_two,
    })
}

fn intersecting_collection(split: BusySplit) -> MwcCollection {
    let a1 = Coalition::new(split.a1.iter().copied());
    let a2 = Coalition::new(split.a2.iter().copied());
    let mut entries = Vec::new();
    // A1 and A2 both win; each is minimal unless the other sits strictly
    // inside it.
    if !(a2.is_subset(&a1) && a2 != a1) {
        entries.push(MwcEntry::Busy(Side::One));
    }
    if !(a1.is_subset(&a2)) {
        entries.push(MwcEntry::Busy(Side::Two));
    }
    MwcCollection {
        split,
        table: None,
        entries,
        one: SideSummary::default(),
        two: SideSummary::default(),
        cross_one: false,
        cross_two: false,
    }
}

fn side_mwc(v: View<'_>, cand: &SideCandidates) -> SideSummary {
    let n = v.split.n;
    let own_busy = v.own_busy().len();
    let base_cross = v.own_busy_cross();
    let mut list = Vec::new();

    // Families whose cross maximum comes from idle anchors, largest first so
    // prefixes grow.
    let order = v.cross_order();
    let mut start = 0;
    while start < order.len() {
        let h = cand.cross[start];
        let end = start + cand.cross[start..].iter().take_while(|&&c| c == h).count();
        if h > base_cross {
            let prefix = cand.cutoff[start];
            let rows: Vec<usize> = (start..end)
                .filter(|&r| anchor_accepted(v, cand, r))
                .collect();
            if rows.iter().any(|&r| !cand.outside[r]) {
                // An anchor inside the shared prefix makes every candidate of
                // the group the same coalition.
                list.push(SideMwc {
                    prefix,
                    anchor: None,
                    size: own_busy + prefix,
                });
            } else {
                let mut accepted: Vec<usize> = rows.into_iter().map(|r| order[r]).collect();
                accepted.sort_unstable();
                list.extend(accepted.into_iter().map(|i| SideMwc {
                    prefix,
                    anchor: Some(i),
                    size: own_busy + prefix + 1,
                }));
            }
        }
        start = end;
    }

    // The family where the own busy set supplies the cross maximum.
    let threshold = base_cross as i64 + v.offset();
    let prefix = v.prefix_len(threshold);
    if (v.other_busy_own() as i64) < threshold && cand.prefix_cross_max[prefix] <= base_cross {
        list.push(SideMwc {
            prefix,
            anchor: None,
            size: own_busy + prefix,
        });
    }

    let mut tau = vec![list.len() + 1; n];
    let mut sigma = vec![false; n];
    let mut anchored = vec![None; n];
    let mut k = 0;
    for (pos, &j) in v.own_order().iter().enumerate() {
        while k < list.len() && list[k].prefix <= pos {
            k += 1;
        }
        tau[j] = k + 1;
    }
    for (idx, c) in list.iter().enumerate() {
        if let Some(a) = c.anchor {
            sigma[a] = true;
            anchored[a] = Some(idx);
        }
    }
    SideSummary {
        list,
        tau,
        sigma,
        anchored,
    }
}

/// `|MWC| <= n + 1`.
pub fn mwc_count_bound_check(collection: &MwcCollection, n: usize) -> bool {
    collection.len() <= n + 1
}
