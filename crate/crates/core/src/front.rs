//! Front projections as words of Morse events.
//!
//! Strand positions are counted from the top (level 1). Reading left to
//! right, `L i` opens a cusp whose two branches occupy levels `i` and `i+1`,
//! `R i` closes the branches at levels `i` and `i+1`, and `X i` crosses the
//! strands at levels `i` and `i+1`. Fronts carry no crossing data: the
//! strand moving from level `i` down to level `i+1` is always in front.
//!
//! Between cusps the front is a graph over the horizontal axis, so the knot
//! splits into *arcs*, each running from a left cusp to a right cusp. An
//! orientation is a choice of direction per arc, alternating at every cusp.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    LeftCusp,
    RightCusp,
    Crossing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrontEvent {
    pub kind: EventKind,
    /// 1-based, counted from the top.
    pub level: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Names a strand of the front: the one at `level` (1-based) immediately
/// after event number `after_event` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrandHint {
    pub after_event: usize,
    pub level: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrontError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("event {event} ({text}) needs level in 1..={max} but got {level}")]
    LevelOutOfBounds {
        event: usize,
        text: String,
        level: usize,
        max: usize,
    },
    #[error("front ends with {0} open strands")]
    NonzeroFinal(usize),
    #[error("front has {0} components; only knots are supported")]
    MultiComponent(usize),
    #[error("front has no events")]
    Empty,
    #[error("no strand at level {level} after event {after_event}")]
    NoSuchStrand { after_event: usize, level: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrontInvariants {
    pub writhe: i64,
    pub right_cusps: i64,
    pub down_cusps: i64,
    pub up_cusps: i64,
    pub tb: i64,
    pub rot: i64,
}

/// Where an arc meets a cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CuspEnd {
    event: usize,
    upper: bool,
}

#[derive(Clone, Copy, Debug)]
struct Arc {
    left: CuspEnd,
    right: CuspEnd,
}

#[derive(Clone, Copy, Debug)]
struct CrossingArcs {
    over: usize,
    under: usize,
}

/// A validated single-component front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontDiagram {
    events: Vec<FrontEvent>,
}

/// Arcs, crossings and cusp partners derived from an event word.
struct Layout {
    arcs: Vec<Arc>,
    crossings: Vec<CrossingArcs>,
    /// For each event index that is a cusp, the two arcs meeting there as
    /// (upper branch, lower branch).
    cusp_arcs: Vec<Option<(usize, usize)>>,
}

impl fmt::Display for FrontEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            EventKind::LeftCusp => 'L',
            EventKind::RightCusp => 'R',
            EventKind::Crossing => 'X',
        };
        write!(f, "{} {}", c, self.level)
    }
}

impl FrontEvent {
    pub fn left(level: usize) -> Self {
        FrontEvent {
            kind: EventKind::LeftCusp,
            level,
        }
    }

    pub fn right(level: usize) -> Self {
        FrontEvent {
            kind: EventKind::RightCusp,
            level,
        }
    }

    pub fn crossing(level: usize) -> Self {
        FrontEvent {
            kind: EventKind::Crossing,
            level,
        }
    }
}

fn layout(events: &[FrontEvent]) -> Result<Layout, FrontError> {
    let mut arcs: Vec<Arc> = Vec::new();
    let mut crossings = Vec::new();
    let mut cusp_arcs = vec![None; events.len()];
    // open arcs, top to bottom
    let mut strands: Vec<usize> = Vec::new();
    let placeholder = CuspEnd {
        event: usize::MAX,
        upper: false,
    };
    for (index, ev) in events.iter().enumerate() {
        let n = strands.len();
        let max = match ev.kind {
            EventKind::LeftCusp => n + 1,
            _ => n.saturating_sub(1),
        };
        if ev.level < 1 || ev.level > max {
            return Err(FrontError::LevelOutOfBounds {
                event: index + 1,
                text: ev.to_string(),
                level: ev.level,
                max,
            });
        }
        let i = ev.level - 1;
        match ev.kind {
            EventKind::LeftCusp => {
                let upper = arcs.len();
                for is_upper in [true, false] {
                    arcs.push(Arc {
                        left: CuspEnd {
                            event: index,
                            upper: is_upper,
                        },
                        right: placeholder,
                    });
                }
                strands.splice(i..i, [upper, upper + 1]);
                cusp_arcs[index] = Some((upper, upper + 1));
            }
            EventKind::RightCusp => {
                let (a, b) = (strands[i], strands[i + 1]);
                arcs[a].right = CuspEnd {
                    event: index,
                    upper: true,
                };
                arcs[b].right = CuspEnd {
                    event: index,
                    upper: false,
                };
                strands.drain(i..i + 2);
                cusp_arcs[index] = Some((a, b));
            }
            EventKind::Crossing => {
                crossings.push(CrossingArcs {
                    over: strands[i],
                    under: strands[i + 1],
                });
                strands.swap(i, i + 1);
            }
        }
    }
    if !strands.is_empty() {
        return Err(FrontError::NonzeroFinal(strands.len()));
    }
    Ok(Layout {
        arcs,
        crossings,
        cusp_arcs,
    })
}

impl Layout {
    /// The arc sharing a cusp with `arc` at the given end.
    fn partner(&self, arc: usize, at_right: bool) -> usize {
        let end = if at_right {
            self.arcs[arc].right
        } else {
            self.arcs[arc].left
        };
        let (u, l) = self.cusp_arcs[end.event].expect("arc ends at a cusp");
        if u == arc {
            l
        } else {
            u
        }
    }

    /// Cycles of arcs; each entry lists arcs with their direction
    /// (`true` = traversed rightward), starting rightward.
    fn components(&self) -> Vec<Vec<(usize, bool)>> {
        let mut seen = vec![false; self.arcs.len()];
        let mut out = Vec::new();
        // start each component on a lower left-cusp branch, scanning by arc id
        // (arc ids follow left-cusp order, lower branch = odd id)
        for start in (1..self.arcs.len()).step_by(2) {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let (mut arc, mut rightward) = (start, true);
            loop {
                seen[arc] = true;
                cycle.push((arc, rightward));
                arc = self.partner(arc, rightward);
                rightward = !rightward;
                if arc == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }
}

impl FrontDiagram {
    pub fn from_events(events: Vec<FrontEvent>) -> Result<Self, FrontError> {
        if events.is_empty() {
            return Err(FrontError::Empty);
        }
        let lay = layout(&events)?;
        let count = lay.components().len();
        if count != 1 {
            return Err(FrontError::MultiComponent(count));
        }
        Ok(FrontDiagram { events })
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    /// Strand count immediately after each event.
    pub fn strand_profile(&self) -> Vec<usize> {
        let mut n = 0usize;
        self.events
            .iter()
            .map(|e| {
                match e.kind {
                    EventKind::LeftCusp => n += 2,
                    EventKind::RightCusp => n -= 2,
                    EventKind::Crossing => {}
                }
                n
            })
            .collect()
    }

    fn layout(&self) -> Layout {
        layout(&self.events).expect("validated on construction")
    }

    /// The oriented traversal: arcs with direction, starting on the lower
    /// branch of the first left cusp, moving right.
    fn traversal(&self) -> (Layout, Vec<i64>) {
        let lay = self.layout();
        let mut dir = vec![0i64; lay.arcs.len()];
        for (arc, rightward) in lay.components().remove(0) {
            dir[arc] = if rightward { 1 } else { -1 };
        }
        (lay, dir)
    }

    pub fn invariants(&self) -> FrontInvariants {
        let (lay, dir) = self.traversal();
        let writhe: i64 = lay
            .crossings
            .iter()
            .map(|c| dir[c.over] * dir[c.under])
            .sum();
        let (mut down, mut up) = (0i64, 0i64);
        for (index, ev) in self.events.iter().enumerate() {
            let Some((upper, lower)) = lay.cusp_arcs[index] else {
                continue;
            };
            // a cusp is entered along the branch pointing into it
            let into_cusp = if ev.kind == EventKind::RightCusp { 1 } else { -1 };
            if dir[upper] == into_cusp {
                down += 1;
            } else {
                debug_assert_eq!(dir[lower], into_cusp);
                up += 1;
            }
        }
        let right_cusps = self
            .events
            .iter()
            .filter(|e| e.kind == EventKind::RightCusp)
            .count() as i64;
        FrontInvariants {
            writhe,
            right_cusps,
            down_cusps: down,
            up_cusps: up,
            tb: writhe - right_cusps,
            rot: (down - up) / 2,
        }
    }

    pub fn writhe(&self) -> i64 {
        self.invariants().writhe
    }

    /// Adds a zigzag on the named strand. Both zigzag shapes are tried and
    /// the one moving the rotation number in the requested direction is kept.
    pub fn stabilize(&self, sign: Sign, hint: StrandHint) -> Result<FrontDiagram, FrontError> {
        let no_strand = FrontError::NoSuchStrand {
            after_event: hint.after_event,
            level: hint.level,
        };
        let profile = self.strand_profile();
        let n = *profile.get(hint.after_event).ok_or_else(|| no_strand.clone())?;
        if hint.level < 1 || hint.level > n {
            return Err(no_strand);
        }
        let rot = self.invariants().rot;
        let want = match sign {
            Sign::Plus => rot + 1,
            Sign::Minus => rot - 1,
        };
        let j = hint.level;
        let shapes = [
            [FrontEvent::left(j + 1), FrontEvent::right(j)],
            [FrontEvent::left(j), FrontEvent::right(j + 1)],
        ];
        for shape in shapes {
            let mut events = self.events.clone();
            let at = hint.after_event + 1;
            events.splice(at..at, shape);
            let d = FrontDiagram::from_events(events)?;
            if d.invariants().rot == want {
                return Ok(d);
            }
        }
        unreachable!("the two zigzags change the rotation number by opposite signs")
    }

    /// Strands available as stabilization sites, in event order.
    pub fn strand_hints(&self) -> Vec<StrandHint> {
        self.strand_profile()
            .iter()
            .enumerate()
            .flat_map(|(after_event, &n)| (1..=n).map(move |level| StrandHint { after_event, level }))
            .collect()
    }

    /// Writes the diagram in the line format read by [`parse_front`].
    pub fn to_text(&self) -> String {
        self.events.iter().map(|e| format!("{e}\n")).collect()
    }
}

pub fn writhe(d: &FrontDiagram) -> i64 {
    d.writhe()
}

pub fn invariants(d: &FrontDiagram) -> FrontInvariants {
    d.invariants()
}

pub fn stabilize_diagram(
    d: &FrontDiagram,
    sign: Sign,
    hint: StrandHint,
) -> Result<FrontDiagram, FrontError> {
    d.stabilize(sign, hint)
}

/// Reads one event per line (`L i`, `R i`, `X i`); `#` starts a comment.
pub fn parse_front(text: &str) -> Result<FrontDiagram, FrontError> {
    let mut events = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: &str| FrontError::Syntax {
            line: n + 1,
            message: message.to_string(),
        };
        let mut chars = line.chars();
        let kind = match chars.next() {
            Some('L') => EventKind::LeftCusp,
            Some('R') => EventKind::RightCusp,
            Some('X') => EventKind::Crossing,
            _ => return Err(syntax("expected an event `L i`, `R i` or `X i`")),
        };
        let level = chars
            .as_str()
            .trim()
            .parse::<usize>()
            .map_err(|_| syntax("expected a positive level after the event letter"))?;
        events.push(FrontEvent { kind, level });
    }
    FrontDiagram::from_events(events)
}
