//! A singular knot diagram for any chord diagram.
//!
//! The circle is drawn as a polygon with the `2n` chord endpoints spread
//! around it. At the smaller endpoint `a` of each chord the curve leaves the
//! circle, runs straight across to the larger endpoint `b`, pokes outwards
//! through the circle there and returns the same way: a thin finger. The
//! outward poke meets the circle in the double point of that chord. Every
//! other self-intersection of the drawing becomes an ordinary crossing with
//! the earlier visit on top, so the diagram is descending apart from the
//! double points. Crossing signs are read off the geometry, which keeps the
//! resulting codes (and all their resolutions) planar.

use std::f64::consts::TAU;

use crate::gauss_diagram::ChordDiagram;
use crate::knot_codes::{RawPassage, Role, Sign, SingularCode, SingularPassage, Visit};

#[derive(Clone, Copy)]
struct Pt {
    x: f64,
    y: f64,
}

fn polar(r: f64, theta: f64) -> Pt {
    Pt { x: r * theta.cos(), y: r * theta.sin() }
}

fn sub(a: Pt, b: Pt) -> Pt {
    Pt { x: a.x - b.x, y: a.y - b.y }
}

fn cross(a: Pt, b: Pt) -> f64 {
    a.x * b.y - a.y * b.x
}

#[derive(Clone, Copy, PartialEq)]
enum Tag {
    Arc,
    /// The outward segment of the finger of this chord.
    Poke(usize),
    Finger,
}

struct Event {
    segment: usize,
    t: f64,
    crossing: usize,
}

pub fn realize_chord_diagram(d: &ChordDiagram) -> SingularCode {
    if d.is_empty() {
        return SingularCode::default();
    }
    let m = d.n_endpoints();
    let step = TAU / m as f64;
    // Irregular spacing keeps the drawing free of triple points.
    let theta = |p: usize| {
        let jitter = (p as f64 * 0.618_033_988_75 + 0.3).fract() - 0.5;
        step * (p as f64 + 0.5 + 0.2 * jitter)
    };
    let (eta, eta_tip) = (0.12 * step, 0.08 * step);
    let max_arc = TAU / 96.0;

    let mut pts = vec![polar(1.0, 0.0)];
    let mut tags = vec![Tag::Arc];
    let mut angle = 0.0;
    let arc_to = |pts: &mut Vec<Pt>, tags: &mut Vec<Tag>, angle: &mut f64, target: f64| {
        let k = ((target - *angle) / max_arc).ceil().max(1.0) as usize;
        for i in 1..k {
            pts.push(polar(1.0, *angle + (target - *angle) * i as f64 / k as f64));
            tags.push(Tag::Arc);
        }
        *angle = target;
    };
    for (k, &(a, b)) in d.chords().iter().enumerate() {
        let (ta, tb) = (theta(a), theta(b));
        arc_to(&mut pts, &mut tags, &mut angle, ta - eta);
        let finger = [
            (polar(1.0, ta - eta), Tag::Finger),
            (polar(0.95, tb - eta_tip), Tag::Poke(k)),
            (polar(1.15, tb - eta_tip), Tag::Finger),
            (polar(1.15, tb + eta_tip), Tag::Finger),
            (polar(0.95, tb + eta_tip), Tag::Finger),
            (polar(1.0, ta + eta), Tag::Arc),
        ];
        for (p, tag) in finger {
            pts.push(p);
            tags.push(tag);
        }
        angle = ta + eta;
    }
    arc_to(&mut pts, &mut tags, &mut angle, TAU);

    let n = pts.len();
    let seg = |i: usize| (pts[i], sub(pts[(i + 1) % n], pts[i]));
    let mut events = Vec::new();
    // Per crossing: Ok(chord) for a double point, Err(sign) otherwise.
    let mut kinds: Vec<Result<usize, Sign>> = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let ((p, r), (q, s)) = (seg(i), seg(j));
            let denom = cross(r, s);
            if denom.abs() < 1e-12 {
                continue;
            }
            let t = cross(sub(q, p), s) / denom;
            let u = cross(sub(q, p), r) / denom;
            if !(0.0 < t && t < 1.0 && 0.0 < u && u < 1.0) {
                continue;
            }
            let c = kinds.len();
            kinds.push(match (tags[i], tags[j]) {
                (Tag::Poke(k), Tag::Arc) | (Tag::Arc, Tag::Poke(k)) => Ok(k),
                // Segment i is visited first and passes over.
                _ => Err(if denom > 0.0 { Sign::Positive } else { Sign::Negative }),
            });
            events.push(Event { segment: i, t, crossing: c });
            events.push(Event { segment: j, t: u, crossing: c });
        }
    }
    events.sort_by(|x, y| x.segment.cmp(&y.segment).then(x.t.total_cmp(&y.t)));

    let mut names: Vec<Option<String>> = vec![None; kinds.len()];
    let (mut doubles, mut ordinary) = (0, 0);
    let mut passages = Vec::with_capacity(events.len());
    for e in &events {
        let first = names[e.crossing].is_none();
        if first {
            names[e.crossing] = Some(match kinds[e.crossing] {
                Ok(_) => {
                    doubles += 1;
                    format!("d{doubles}")
                }
                Err(_) => {
                    ordinary += 1;
                    ordinary.to_string()
                }
            });
        }
        let label = names[e.crossing].clone().expect("named above");
        passages.push(match kinds[e.crossing] {
            Ok(_) => SingularPassage::DoublePoint { label, visit: if first { Visit::First } else { Visit::Second } },
            Err(sign) => {
                SingularPassage::Crossing(RawPassage::new(label, if first { Role::Over } else { Role::Under }, sign))
            }
        });
    }
    SingularCode::new(passages).expect("drawing yields a valid singular code")
}
