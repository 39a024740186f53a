//! Close-by-One enumeration of closed attribute sets.
//!
//! Each closed intent is generated exactly once from its canonical parent:
//! extending intent `B` by attribute `j` is accepted only when the closure
//! adds nothing below `j` that `B` did not already contain.

use crate::context::{AttributeSet, FormalContext, ObjectSet};
use crate::error::{Error, Result};

/// Walks every concept whose extent has at least `min_extent` objects and
/// calls `visit` with its extent and intent. Returns the number of concepts
/// visited, or a ceiling error as soon as more than `ceiling` are found.
///
/// Extents only shrink along a branch, so the support bound prunes whole
/// subtrees.
pub(crate) fn for_each_concept<F>(
    ctx: &FormalContext,
    min_extent: usize,
    ceiling: usize,
    mut visit: F,
) -> Result<usize>
where
    F: FnMut(&ObjectSet, &AttributeSet),
{
    let extent = ctx.all_objects();
    if extent.len() < min_extent {
        return Ok(0);
    }
    let intent = ctx.intent_of(&extent);
    let mut walker = Walker {
        ctx,
        min_extent,
        ceiling,
        seen: 0,
        visit: &mut visit,
    };
    walker.descend(&extent, &intent, 0)?;
    Ok(walker.seen)
}

struct Walker<'a, F> {
    ctx: &'a FormalContext,
    min_extent: usize,
    ceiling: usize,
    seen: usize,
    visit: &'a mut F,
}

impl<F> Walker<'_, F>
where
    F: FnMut(&ObjectSet, &AttributeSet),
{
    fn descend(&mut self, extent: &ObjectSet, intent: &AttributeSet, start: usize) -> Result<()> {
        self.seen += 1;
        if self.seen > self.ceiling {
            return Err(Error::Ceiling {
                ceiling: self.ceiling,
            });
        }
        (self.visit)(extent, intent);
        for j in start..self.ctx.n_attributes() {
            if intent.contains(j) {
                continue;
            }
            let column = self.ctx.column(j);
            if extent.intersection_len(column) < self.min_extent {
                continue;
            }
            let child_extent = extent.intersection(column);
            let child_intent = self.ctx.intent_of(&child_extent);
            if child_intent.agrees_below(intent, j) {
                self.descend(&child_extent, &child_intent, j + 1)?;
            }
        }
        Ok(())
    }
}
