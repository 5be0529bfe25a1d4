use crate::knot::Diagram;

use super::{Letter, Presentation, Word};

/// Maps every diagram edge to its Wirtinger arc: edges are glued along
/// over-strands. Arcs are numbered by their smallest edge.
pub fn wirtinger_arcs(d: &Diagram) -> (Vec<usize>, usize) {
    if d.crossings.is_empty() {
        return (vec![0], 1);
    }
    let mut parent: Vec<usize> = (0..d.arc_count).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for c in &d.crossings {
        let (a, b) = c.over();
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            parent[hi] = lo;
        }
    }
    let mut index = vec![usize::MAX; d.arc_count];
    let mut arc_of = vec![0; d.arc_count];
    let mut count = 0;
    for e in 0..d.arc_count {
        let r = find(&mut parent, e);
        if index[r] == usize::MAX {
            index[r] = count;
            count += 1;
        }
        arc_of[e] = index[r];
    }
    (arc_of, count)
}

/// One generator per arc; at a crossing with incoming under-arc `a`,
/// outgoing under-arc `c` and over-arc `x` of sign `ε` the relator is
/// `x^ε a x^-ε c^-1`. The last crossing's relator is dropped.
pub fn wirtinger(d: &Diagram) -> Presentation {
    let (arc_of, count) = wirtinger_arcs(d);
    let n = d.crossings.len();
    let mut rels = Vec::with_capacity(n.saturating_sub(1));
    for c in d.crossings.iter().take(n.saturating_sub(1)) {
        let (ui, uo) = c.under();
        let (a, b) = (arc_of[ui], arc_of[uo]);
        let x = arc_of[c.over().0];
        let inv = c.sign < 0;
        rels.push(Word::new([Letter::new(x, inv), Letter::new(a, false), Letter::new(x, !inv), Letter::new(b, true)]));
    }
    Presentation::new(count, rels).expect("arc indices are in range")
}
