//! Test oracles that recompute facts about fronts without going through the
//! library's own traversal code.

#![allow(dead_code)]

use legknots::front::{EventKind, FrontEvent};

/// One pass of the knot through a crossing.
#[derive(Clone, Copy, Debug)]
struct Pass {
    crossing: usize,
    over: bool,
}

/// Number of Fox 3-colorings of the knot diagram underlying a front
/// (3 for the unknot, 9 for a trefoil). Crossings are resolved with the
/// strand going from level i to level i+1 in front.
pub fn fox_three_colorings(events: &[FrontEvent]) -> usize {
    // front arcs: id -> passes in left-to-right order, plus cusp partners
    let mut passes: Vec<Vec<Pass>> = Vec::new();
    let mut left_partner: Vec<usize> = Vec::new();
    let mut right_partner: Vec<usize> = Vec::new();
    let mut strands: Vec<usize> = Vec::new();
    let mut crossings = 0;
    for ev in events {
        let i = ev.level - 1;
        match ev.kind {
            EventKind::LeftCusp => {
                let a = passes.len();
                passes.push(vec![]);
                passes.push(vec![]);
                left_partner.extend([a + 1, a]);
                right_partner.extend([usize::MAX, usize::MAX]);
                strands.insert(i, a + 1);
                strands.insert(i, a);
            }
            EventKind::RightCusp => {
                let (a, b) = (strands[i], strands[i + 1]);
                right_partner[a] = b;
                right_partner[b] = a;
                strands.drain(i..i + 2);
            }
            EventKind::Crossing => {
                let (over, under) = (strands[i], strands[i + 1]);
                passes[over].push(Pass { crossing: crossings, over: true });
                passes[under].push(Pass { crossing: crossings, over: false });
                strands.swap(i, i + 1);
                crossings += 1;
            }
        }
    }
    // walk the knot once
    let mut walk: Vec<Pass> = Vec::new();
    let (mut arc, mut rightward) = (0usize, true);
    loop {
        let mut p = passes[arc].clone();
        if !rightward {
            p.reverse();
        }
        walk.extend(p);
        arc = if rightward { right_partner[arc] } else { left_partner[arc] };
        rightward = !rightward;
        if arc == 0 && rightward {
            break;
        }
    }
    // diagram arcs are maximal runs between under-passes
    let unders: Vec<usize> = (0..walk.len()).filter(|&k| !walk[k].over).collect();
    if unders.is_empty() {
        return 3;
    }
    let segments = unders.len();
    // segment s starts right after unders[s] and ends at unders[s+1]
    let mut segment_at = vec![0usize; walk.len()];
    for (s, &u) in unders.iter().enumerate() {
        let next = unders[(s + 1) % segments];
        let mut k = (u + 1) % walk.len();
        loop {
            segment_at[k] = s;
            if k == next {
                break;
            }
            k = (k + 1) % walk.len();
        }
    }
    // crossing -> (over segment, incoming under segment, outgoing under segment)
    let mut rel = vec![(0usize, 0usize, 0usize); crossings];
    for (k, p) in walk.iter().enumerate() {
        if p.over {
            rel[p.crossing].0 = segment_at[k];
        }
    }
    for (s, &u) in unders.iter().enumerate() {
        let c = walk[u].crossing;
        rel[c].1 = segment_at[u];
        rel[c].2 = s;
    }
    let mut count = 0;
    let total = 3usize.pow(segments as u32);
    for code in 0..total {
        let color = |s: usize| (code / 3usize.pow(s as u32)) % 3;
        if rel
            .iter()
            .all(|&(o, a, b)| (2 * color(o) + 6 - color(a) - color(b)) % 3 == 0)
        {
            count += 1;
        }
    }
    count
}

pub fn events(word: &str) -> Vec<FrontEvent> {
    word.split(',')
        .map(|t| {
            let t = t.trim();
            let level = t[1..].trim().parse().unwrap();
            match &t[..1] {
                "L" => FrontEvent::left(level),
                "R" => FrontEvent::right(level),
                _ => FrontEvent::crossing(level),
            }
        })
        .collect()
}

/// `(writhe, tb, rot)` by walking the knot point by point through the event
/// list, oriented from the lower branch of the first left cusp.
pub fn walk_invariants(events: &[FrontEvent]) -> (i64, i64, i64) {
    // state: gap g sits between events g-1 and g; level counted from 1
    let start = (1usize, events[0].level + 1, 1i64);
    let (mut gap, mut level, mut dir) = start;
    let mut writhe = 0i64;
    let (mut down, mut up) = (0i64, 0i64);
    // crossing index -> direction of the over pass / under pass
    let mut over_dir = vec![0i64; events.len()];
    let mut under_dir = vec![0i64; events.len()];
    loop {
        if dir > 0 {
            let ev = events[gap];
            let i = ev.level;
            match ev.kind {
                EventKind::Crossing => {
                    if level == i {
                        over_dir[gap] = 1;
                        level = i + 1;
                    } else if level == i + 1 {
                        under_dir[gap] = 1;
                        level = i;
                    }
                    gap += 1;
                }
                EventKind::LeftCusp => {
                    if level >= i {
                        level += 2;
                    }
                    gap += 1;
                }
                EventKind::RightCusp => {
                    if level == i {
                        down += 1;
                        level = i + 1;
                        dir = -1;
                    } else if level == i + 1 {
                        up += 1;
                        level = i;
                        dir = -1;
                    } else {
                        if level > i + 1 {
                            level -= 2;
                        }
                        gap += 1;
                    }
                }
            }
        } else {
            let ev = events[gap - 1];
            let i = ev.level;
            match ev.kind {
                EventKind::Crossing => {
                    // the over strand is at i+1 on the right, i on the left
                    if level == i + 1 {
                        over_dir[gap - 1] = -1;
                        level = i;
                    } else if level == i {
                        under_dir[gap - 1] = -1;
                        level = i + 1;
                    }
                    gap -= 1;
                }
                EventKind::RightCusp => {
                    if level >= i {
                        level += 2;
                    }
                    gap -= 1;
                }
                EventKind::LeftCusp => {
                    if level == i {
                        down += 1;
                        level = i + 1;
                        dir = 1;
                    } else if level == i + 1 {
                        up += 1;
                        level = i;
                        dir = 1;
                    } else {
                        if level > i + 1 {
                            level -= 2;
                        }
                        gap -= 1;
                    }
                }
            }
        }
        if (gap, level, dir) == start {
            break;
        }
    }
    for (k, ev) in events.iter().enumerate() {
        if ev.kind == EventKind::Crossing {
            writhe += over_dir[k] * under_dir[k];
        }
    }
    let right = events.iter().filter(|e| e.kind == EventKind::RightCusp).count() as i64;
    (writhe, writhe - right, (down - up) / 2)
}
