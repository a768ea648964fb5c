//! Front diagrams of Legendrian knots as Morse event words.
//!
//! A front is encoded as a left-to-right sequence of events on horizontal
//! strands numbered from the top (1-based):
//!
//! * `L i` — left cusp: two new strands appear at positions i, i+1;
//! * `R i` — right cusp: the strands at positions i, i+1 meet and vanish;
//! * `X i` — crossing of the strands at positions i and i+1 (the strand
//!   descending from position i to i+1 has the more negative slope and is
//!   in front);
//! * `* i` — base point on strand i in the gap following the previous event;
//! * `*o`  — base point in the loop of the preceding right cusp (on the
//!   lower arc of its resolution loop).
//!
//! If no `*` token is present the base point defaults to the loop of the
//! last right cusp. The knot is oriented by traversal from the base point in
//! the direction of increasing x.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// The three kinds of front events.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    LeftCusp,
    RightCusp,
    Crossing,
}

/// One event of the Morse word, at 1-based strand position `pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontEvent {
    pub kind: EventKind,
    pub pos: usize,
}

/// Location of the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasePoint {
    /// On strand `strand` in gap `gap` (the region left of event `gap`,
    /// i.e. between events `gap-1` and `gap`; gaps are numbered 0..=n).
    Segment { gap: usize, strand: usize },
    /// On the lower arc of the resolution loop of right-cusp event `event`.
    Loop { event: usize },
}

/// What a Reeb chord of the resolved diagram came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChordSource {
    Crossing,
    RightCusp,
    /// Added by a stabilization step of a tame-isomorphism script.
    Stabilization,
}

/// A Reeb chord of the resolution: a front crossing or a right cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chord {
    pub id: usize,
    /// Index of the originating event.
    pub event: usize,
    pub source: ChordSource,
    pub degree: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrontError {
    #[error("syntax error in front word: bad token `{0}`")]
    BadToken(String),
    #[error("event {index} ({token}): strand position out of range")]
    PositionOutOfRange { index: usize, token: String },
    #[error("front does not close up: {0} strands remain after the last event")]
    NotClosed(usize),
    #[error("front word has no events")]
    Empty,
    #[error("front is a link with more than one component; only knots are supported")]
    MultiComponent,
    #[error("duplicate base point")]
    DuplicateBasePoint,
    #[error("invalid base point location")]
    BadBasePoint,
    #[error("base point loop marker must follow a right cusp")]
    LoopMarkerNotAfterRightCusp,
}

/// A validated front diagram with its traversal-derived data.
#[derive(Clone, Debug)]
pub struct FrontDiagram {
    pub events: Vec<FrontEvent>,
    pub base: BasePoint,
    /// Strand count in each gap; `counts[g]` is the number of strands in gap
    /// g (left of event g); `counts.len() == events.len() + 1`.
    pub counts: Vec<usize>,
    /// Per gap, per strand (1-based; index 0 unused): does the knot
    /// orientation run east (increasing x) on that segment?
    pub dir_east: Vec<Vec<bool>>,
    /// Maslov potential per segment, same indexing as `dir_east`.
    pub potential: Vec<Vec<i64>>,
    pub chords: Vec<Chord>,
    pub writhe: i64,
    pub tb: i64,
    pub rot: i64,
}

impl FrontDiagram {
    /// Parse and validate a front word.
    pub fn parse(text: &str) -> Result<FrontDiagram, FrontError> {
        let mut events: Vec<FrontEvent> = Vec::new();
        let mut base: Option<BasePoint> = None;
        let mut counts: Vec<usize> = vec![0];
        for raw in text.split_whitespace() {
            let (head, rest) = raw.split_at(1);
            let n = counts.last().copied().unwrap();
            match head {
                "L" | "R" | "X" => {
                    let pos: usize = rest
                        .parse()
                        .map_err(|_| FrontError::BadToken(raw.to_string()))?;
                    let kind = match head {
                        "L" => EventKind::LeftCusp,
                        "R" => EventKind::RightCusp,
                        _ => EventKind::Crossing,
                    };
                    let ok = match kind {
                        EventKind::LeftCusp => pos >= 1 && pos <= n + 1,
                        EventKind::RightCusp | EventKind::Crossing => pos >= 1 && pos + 1 <= n,
                    };
                    if !ok {
                        return Err(FrontError::PositionOutOfRange {
                            index: events.len(),
                            token: raw.to_string(),
                        });
                    }
                    events.push(FrontEvent { kind, pos });
                    counts.push(match kind {
                        EventKind::LeftCusp => n + 2,
                        EventKind::RightCusp => n - 2,
                        EventKind::Crossing => n,
                    });
                }
                "*" => {
                    if base.is_some() {
                        return Err(FrontError::DuplicateBasePoint);
                    }
                    if rest == "o" {
                        match events.last() {
                            Some(e) if e.kind == EventKind::RightCusp => {
                                base = Some(BasePoint::Loop { event: events.len() - 1 });
                            }
                            _ => return Err(FrontError::LoopMarkerNotAfterRightCusp),
                        }
                    } else {
                        let strand: usize = rest
                            .parse()
                            .map_err(|_| FrontError::BadToken(raw.to_string()))?;
                        if strand < 1 || strand > n {
                            return Err(FrontError::BadBasePoint);
                        }
                        base = Some(BasePoint::Segment { gap: events.len(), strand });
                    }
                }
                _ => return Err(FrontError::BadToken(raw.to_string())),
            }
        }
        if events.is_empty() {
            return Err(FrontError::Empty);
        }
        let remaining = *counts.last().unwrap();
        if remaining != 0 {
            return Err(FrontError::NotClosed(remaining));
        }
        let base = match base {
            Some(b) => b,
            None => {
                let last_r = events
                    .iter()
                    .rposition(|e| e.kind == EventKind::RightCusp)
                    .expect("a closed front has at least one right cusp");
                BasePoint::Loop { event: last_r }
            }
        };
        FrontDiagram::build(events, counts, base)
    }

    fn build(
        events: Vec<FrontEvent>,
        counts: Vec<usize>,
        base: BasePoint,
    ) -> Result<FrontDiagram, FrontError> {
        let _n = events.len();
        let mut dir_east: Vec<Vec<Option<bool>>> =
            counts.iter().map(|&c| vec![None; c + 1]).collect();
        let mut potential: Vec<Vec<i64>> = counts.iter().map(|&c| vec![0; c + 1]).collect();

        // Starting node and heading of the traversal.
        let (start_gap, start_strand, start_east) = match base {
            BasePoint::Segment { gap, strand } => (gap, strand, true),
            BasePoint::Loop { event } => {
                // Orientation runs east at the base point, which sits on the
                // lower arc of the resolution loop; the knot therefore enters
                // the cusp eastbound on the upper strand and exits westbound
                // on the lower strand. The walk starts at the exit.
                let i = events[event].pos;
                (event, i + 1, false)
            }
        };

        // Walk the knot, assigning directions and potentials.
        let mut gap = start_gap;
        let mut strand = start_strand;
        let mut east = start_east;
        let mut mu: i64 = 0;
        let mut visited = 0usize;
        let total_segments: usize = counts.iter().sum();
        let mut down_cusps = 0i64;
        let mut up_cusps = 0i64;
        loop {
            if dir_east[gap][strand].is_some() {
                // Returned to the start before covering the whole front, or
                // inconsistent seeding of an in-loop base point.
                break;
            }
            dir_east[gap][strand] = Some(east);
            potential[gap][strand] = mu;
            visited += 1;
            // Step across the next event in the direction of travel.
            if east {
                let ev = events[gap]; // event to the east of this gap
                match ev.kind {
                    EventKind::LeftCusp => {
                        strand = if strand < ev.pos { strand } else { strand + 2 };
                        gap += 1;
                    }
                    EventKind::Crossing => {
                        if strand == ev.pos {
                            strand = ev.pos + 1;
                        } else if strand == ev.pos + 1 {
                            strand = ev.pos;
                        }
                        gap += 1;
                    }
                    EventKind::RightCusp => {
                        if strand == ev.pos {
                            // over the top of the cusp, heading back west below
                            strand = ev.pos + 1;
                            east = false;
                            down_cusps += 1;
                            mu -= 1;
                        } else if strand == ev.pos + 1 {
                            strand = ev.pos;
                            east = false;
                            up_cusps += 1;
                            mu += 1;
                        } else {
                            if strand > ev.pos + 1 {
                                strand -= 2;
                            }
                            gap += 1;
                        }
                    }
                }
            } else {
                let ev = events[gap - 1]; // event to the west of this gap
                match ev.kind {
                    EventKind::LeftCusp => {
                        if strand == ev.pos {
                            strand = ev.pos + 1;
                            east = true;
                            down_cusps += 1;
                            mu -= 1;
                        } else if strand == ev.pos + 1 {
                            strand = ev.pos;
                            east = true;
                            up_cusps += 1;
                            mu += 1;
                        } else {
                            if strand > ev.pos + 1 {
                                strand -= 2;
                            }
                            gap -= 1;
                        }
                    }
                    EventKind::Crossing => {
                        if strand == ev.pos {
                            strand = ev.pos + 1;
                        } else if strand == ev.pos + 1 {
                            strand = ev.pos;
                        }
                        gap -= 1;
                    }
                    EventKind::RightCusp => {
                        if strand >= ev.pos {
                            strand += 2;
                        }
                        gap -= 1;
                    }
                }
            }
            if gap == start_gap && strand == start_strand && east == start_east {
                break;
            }
        }
        if visited != total_segments {
            return Err(FrontError::MultiComponent);
        }

        Self::finish(events, counts, base, dir_east, potential, down_cusps, up_cusps)
    }

    fn finish(
        events: Vec<FrontEvent>,
        counts: Vec<usize>,
        base: BasePoint,
        dir_east: Vec<Vec<Option<bool>>>,
        potential: Vec<Vec<i64>>,
        down_cusps: i64,
        up_cusps: i64,
    ) -> Result<FrontDiagram, FrontError> {
        let dir_east: Vec<Vec<bool>> = dir_east
            .into_iter()
            .map(|row| row.into_iter().map(|d| d.unwrap_or(true)).collect())
            .collect();
        let rot = (down_cusps - up_cusps) / 2;
        let mut d = FrontDiagram {
            events,
            base,
            counts,
            dir_east,
            potential,
            chords: Vec::new(),
            writhe: 0,
            tb: 0,
            rot,
        };
        d.recompute_signs_and_chords();
        Ok(d)
    }

    fn recompute_signs_and_chords(&mut self) {
        let mut writhe = 0i64;
        let mut right_cusps = 0i64;
        let mut chords = Vec::new();
        for (g, ev) in self.events.iter().enumerate() {
            match ev.kind {
                EventKind::Crossing => {
                    let i = ev.pos;
                    // descending strand occupies position i on the left
                    let o = if self.dir_east[g][i] { (1i64, -1i64) } else { (-1, 1) };
                    let u = if self.dir_east[g][i + 1] { (1i64, 1i64) } else { (-1, -1) };
                    let det = o.0 * u.1 - o.1 * u.0;
                    writhe += det.signum();
                    let degree = self.potential[g][i] - self.potential[g][i + 1];
                    chords.push(Chord {
                        id: chords.len(),
                        event: g,
                        source: ChordSource::Crossing,
                        degree,
                    });
                }
                EventKind::RightCusp => {
                    right_cusps += 1;
                    // The potential difference is 1 except at the cusp whose
                    // loop holds the base point, where the potential cut runs
                    // through the cusp and the difference is 1 - 2 rot.
                    let i = ev.pos;
                    let degree = self.potential[g][i] - self.potential[g][i + 1];
                    chords.push(Chord {
                        id: chords.len(),
                        event: g,
                        source: ChordSource::RightCusp,
                        degree,
                    });
                }
                EventKind::LeftCusp => {}
            }
        }
        self.writhe = writhe;
        self.tb = writhe - right_cusps;
        self.chords = chords;
    }

    /// Number of right cusps.
    pub fn right_cusps(&self) -> usize {
        self.events
            .iter()
            .filter(|e| e.kind == EventKind::RightCusp)
            .count()
    }

    /// Number of front crossings.
    pub fn crossings(&self) -> usize {
        self.events
            .iter()
            .filter(|e| e.kind == EventKind::Crossing)
            .count()
    }

    /// (tb, rot).
    pub fn classical_invariants(&self) -> (i64, i64) {
        (self.tb, self.rot)
    }

    /// Degree of t in the grading: |t| = 2 rot.
    pub fn t_degree(&self) -> i64 {
        2 * self.rot
    }

    /// The chord generated at event `e`, if any.
    pub fn chord_at_event(&self, e: usize) -> Option<&Chord> {
        self.chords.iter().find(|c| c.event == e)
    }

    /// Does the knot orientation run east on the lower loop arc of the
    /// right cusp at event `e`? (True iff the upper in-strand is eastbound.)
    pub fn loop_lower_arc_east(&self, e: usize) -> bool {
        let i = self.events[e].pos;
        self.dir_east[e][i]
    }

    /// Canonical printed form of the word.
    pub fn print_word(&self) -> String {
        let mut tokens: Vec<String> = Vec::new();
        for (g, ev) in self.events.iter().enumerate() {
            let letter = match ev.kind {
                EventKind::LeftCusp => "L",
                EventKind::RightCusp => "R",
                EventKind::Crossing => "X",
            };
            tokens.push(format!("{letter}{}", ev.pos));
            match self.base {
                BasePoint::Segment { gap, strand } if gap == g + 1 => {
                    tokens.push(format!("*{strand}"));
                }
                BasePoint::Loop { event } if event == g => {
                    tokens.push("*o".to_string());
                }
                _ => {}
            }
        }
        tokens.join(" ")
    }

    /// Insert a stabilization zigzag on the segment `(gap, strand)`.
    ///
    /// `positive` selects S₊ (rot + 1); otherwise S₋ (rot − 1). In both
    /// cases tb drops by 1.
    pub fn stabilize(
        &self,
        gap: usize,
        strand: usize,
        positive: bool,
    ) -> Result<FrontDiagram, FrontError> {
        if gap == 0 || gap > self.events.len() || strand == 0 || strand > self.counts[gap] {
            return Err(FrontError::BadBasePoint);
        }
        for &downward in &[true, false] {
            let d = self.insert_zigzag(gap, strand, downward)?;
            if d.rot == self.rot + if positive { 1 } else { -1 } {
                debug_assert_eq!(d.tb, self.tb - 1);
                return Ok(d);
            }
        }
        unreachable!("one zigzag direction must realize each stabilization sign")
    }

    fn insert_zigzag(
        &self,
        gap: usize,
        strand: usize,
        downward: bool,
    ) -> Result<FrontDiagram, FrontError> {
        let mut events = Vec::new();
        let mut base = self.base;
        for (g, ev) in self.events.iter().enumerate() {
            if g == gap {
                if downward {
                    events.push(FrontEvent { kind: EventKind::LeftCusp, pos: strand + 1 });
                    events.push(FrontEvent { kind: EventKind::RightCusp, pos: strand });
                } else {
                    events.push(FrontEvent { kind: EventKind::LeftCusp, pos: strand });
                    events.push(FrontEvent { kind: EventKind::RightCusp, pos: strand + 1 });
                }
            }
            events.push(*ev);
        }
        match &mut base {
            BasePoint::Segment { gap: bg, .. } if *bg >= gap => *bg += 2,
            BasePoint::Loop { event } if *event >= gap => *event += 2,
            _ => {}
        }
        let mut counts = vec![0usize];
        for ev in &events {
            let n = *counts.last().unwrap();
            counts.push(match ev.kind {
                EventKind::LeftCusp => n + 2,
                EventKind::RightCusp => n - 2,
                EventKind::Crossing => n,
            });
        }
        FrontDiagram::build(events, counts, base)
    }
}

impl fmt::Display for FrontDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.print_word())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_parses_and_has_expected_invariants() {
        let d = FrontDiagram::parse("L1 *2 R1").unwrap();
        assert_eq!(d.crossings(), 0);
        assert_eq!(d.right_cusps(), 1);
        assert_eq!(d.classical_invariants(), (-1, 0));
        assert_eq!(d.chords.len(), 1);
        assert_eq!(d.chords[0].degree, 1);
    }

    #[test]
    fn trefoil_parses_and_has_expected_invariants() {
        let d = FrontDiagram::parse("L1 L3 X2 X2 X2 R1 *2 R1").unwrap();
        assert_eq!(d.crossings(), 3);
        assert_eq!(d.right_cusps(), 2);
        assert_eq!(d.classical_invariants(), (1, 0));
        // all three crossings have degree 0, cusps degree 1
        let degs: Vec<i64> = d.chords.iter().map(|c| c.degree).collect();
        assert_eq!(degs, vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn unclosed_word_rejected() {
        assert!(matches!(
            FrontDiagram::parse("L1 L1 R1"),
            Err(FrontError::NotClosed(2))
        ));
    }

    #[test]
    fn two_component_link_rejected() {
        // two disjoint stacked unknots
        assert!(matches!(
            FrontDiagram::parse("L1 L3 R3 R1"),
            Err(FrontError::MultiComponent)
        ));
    }

    #[test]
    fn round_trip_printing() {
        for w in ["L1 *2 R1", "L1 L3 X2 X2 X2 R1 *2 R1", "L1 L3 X2 X2 X2 R1 R1 *o"] {
            let d = FrontDiagram::parse(w).unwrap();
            assert_eq!(d.print_word(), w);
            let d2 = FrontDiagram::parse(&d.print_word()).unwrap();
            assert_eq!(d2.print_word(), w);
        }
    }

    #[test]
    fn default_base_point_is_last_right_cusp_loop() {
        let d = FrontDiagram::parse("L1 R1").unwrap();
        assert_eq!(d.base, BasePoint::Loop { event: 1 });
    }

    #[test]
    fn stabilizations_change_classical_invariants_correctly() {
        let d = FrontDiagram::parse("L1 *2 R1").unwrap();
        let sp = d.stabilize(1, 2, true).unwrap();
        assert_eq!(sp.classical_invariants(), (-2, 1));
        let sm = d.stabilize(1, 2, false).unwrap();
        assert_eq!(sm.classical_invariants(), (-2, -1));
        let spm = sp.stabilize(1, 2, false).unwrap();
        let smp = sm.stabilize(1, 2, true).unwrap();
        assert_eq!(spm.classical_invariants(), smp.classical_invariants());
        assert_eq!(spm.classical_invariants(), (-3, 0));
    }
}
