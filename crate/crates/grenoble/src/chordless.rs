use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{Graph, Parity, Path, VertSet};

/// Parity constraint for cycle enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityFilter {
    Even,
    Odd,
    Any,
}

impl ParityFilter {
    fn admits(self, len: usize) -> bool {
        match self {
            ParityFilter::Even => len % 2 == 0,
            ParityFilter::Odd => len % 2 == 1,
            ParityFilter::Any => true,
        }
    }
}

/// Calls `f` for every chordless path from `a` to `b` whose vertices stay in
/// `allowed`, in lexicographic DFS order. Returns whether the visitor stopped.
///
/// Each partial-path extension costs one budget tick, so the walk fails fast
/// instead of silently truncating on dense inputs.
pub fn visit_chordless_paths<F>(
    g: &Graph,
    a: usize,
    b: usize,
    allowed: VertSet,
    budget: &mut Budget,
    f: &mut F,
) -> Result<bool>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if a == b {
        return Err(Error::invalid("path endpoints must differ"));
    }
    if !g.contains(a) || !g.contains(b) {
        return Err(Error::invalid("path endpoints must be in the graph"));
    }
    if !allowed.contains(a) || !allowed.contains(b) {
        return Ok(false);
    }
    let mut path = vec![a];
    let ext = allowed.intersect(g.vertices()).without(a);
    let flow = extend_path(g, b, &mut path, ext, budget, f)?;
    Ok(flow.is_break())
}

fn extend_path<F>(
    g: &Graph,
    b: usize,
    path: &mut Vec<usize>,
    ext_allowed: VertSet,
    budget: &mut Budget,
    f: &mut F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let last = *path.last().unwrap();
    // ext_allowed excludes everything adjacent or equal to path[..len-1],
    // so any candidate keeps the path chordless.
    for w in g.neighbors(last).intersect(ext_allowed).iter() {
        budget.tick()?;
        if w == b {
            path.push(b);
            let flow = f(path);
            path.pop();
            if flow.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        } else {
            path.push(w);
            let next = ext_allowed.minus(g.closed_neighbors(last));
            let flow = extend_path(g, b, path, next, budget, f)?;
            path.pop();
            if flow.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// All chordless paths from `a` to `b`, in deterministic DFS order.
pub fn enumerate_chordless_paths(
    g: &Graph,
    a: usize,
    b: usize,
    budget: &mut Budget,
) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    visit_chordless_paths(g, a, b, g.vertices(), budget, &mut |p| {
        out.push(Path::from_trusted(p.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// True if some chordless path from `a` to `b` has the given parity.
pub fn exists_chordless_path_with_parity(
    g: &Graph,
    a: usize,
    b: usize,
    allowed: VertSet,
    parity: Parity,
    budget: &mut Budget,
) -> Result<bool> {
    visit_chordless_paths(g, a, b, allowed, budget, &mut |p| {
        if Parity::of_len(p.len() - 1) == parity {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
}

/// Calls `f` for every chordless cycle of length at least `min_len` matching
/// the parity filter. Cycles are reported once, starting at their smallest
/// vertex with the smaller neighbor second. Returns whether the visitor stopped.
pub fn visit_chordless_cycles<F>(
    g: &Graph,
    min_len: usize,
    parity: ParityFilter,
    budget: &mut Budget,
    f: &mut F,
) -> Result<bool>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if min_len < 4 {
        return Err(Error::invalid("cycle enumeration requires min_len >= 4"));
    }
    let verts = g.vertices();
    for s in verts.iter() {
        let above: VertSet = verts.iter().filter(|&v| v > s).collect();
        for v1 in g.neighbors(s).intersect(above).iter() {
            let mut path = vec![v1];
            let ext = above.without(v1);
            let flow = extend_cycle(g, s, v1, min_len, parity, &mut path, ext, budget, f)?;
            if flow.is_break() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn extend_cycle<F>(
    g: &Graph,
    s: usize,
    v1: usize,
    min_len: usize,
    parity: ParityFilter,
    path: &mut Vec<usize>,
    ext_allowed: VertSet,
    budget: &mut Budget,
    f: &mut F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let last = *path.last().unwrap();
    let s_nbrs = g.neighbors(s);
    for w in g.neighbors(last).intersect(ext_allowed).iter() {
        budget.tick()?;
        if s_nbrs.contains(w) {
            // Closing vertex: only v1 and w may touch s, so the cycle is a hole.
            let len = path.len() + 2;
            if len >= min_len && parity.admits(len) && v1 < w {
                let mut cycle = Vec::with_capacity(len);
                cycle.push(s);
                cycle.extend_from_slice(path);
                cycle.push(w);
                if f(&cycle).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        } else {
            path.push(w);
            let next = ext_allowed.minus(g.closed_neighbors(last));
            let flow = extend_cycle(g, s, v1, min_len, parity, path, next, budget, f)?;
            path.pop();
            if flow.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// All chordless cycles of length at least `min_len` matching the parity
/// filter, each in canonical vertex order.
pub fn enumerate_chordless_cycles(
    g: &Graph,
    min_len: usize,
    parity: ParityFilter,
    budget: &mut Budget,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    visit_chordless_cycles(g, min_len, parity, budget, &mut |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// First chordless cycle matching the filter, if any.
pub fn find_chordless_cycle(
    g: &Graph,
    min_len: usize,
    parity: ParityFilter,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    visit_chordless_cycles(g, min_len, parity, budget, &mut |c| {
        found = Some(c.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}
