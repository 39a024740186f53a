//! Burmeister `.cxt` files.
//!
//! ```text
//! B
//! <name, possibly empty>
//! <|G|>
//! <|M|>
//! <one line per object name>
//! <one line per attribute name>
//! <|G| rows of |M| characters from {'.', 'X'}>
//! ```
//!
//! The reader also accepts lowercase `x` and blank separator lines after
//! the counts, as written by other tools. The writer always produces the
//! canonical layout above.

use std::fmt::Write as _;

use super::FormalContext;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let l = self.lines.get(self.pos).copied().ok_or_else(|| {
            Error::parse(self.pos + 1, format!("unexpected end of file, expected {what}"))
        })?;
        self.pos += 1;
        Ok((self.pos, l.trim_end_matches('\r')))
    }

    fn next_nonblank(&mut self, what: &str) -> Result<(usize, &'a str)> {
        loop {
            let (n, l) = self.next(what)?;
            if !l.trim().is_empty() {
                return Ok((n, l));
            }
        }
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let (n, l) = self.next_nonblank(what)?;
        l.trim()
            .parse()
            .map_err(|_| Error::parse(n, format!("{what} must be a number, got {l:?}")))
    }
}

pub fn read_cxt(text: &str) -> Result<FormalContext> {
    let mut lines = Lines {
        lines: text.lines().collect(),
        pos: 0,
    };
    let (n, header) = lines.next("header")?;
    if header.trim() != "B" {
        return Err(Error::parse(n, "first line must be 'B'"));
    }
    let (_, name) = lines.next("context name")?;
    let n_g = lines.count("object count")?;
    let n_m = lines.count("attribute count")?;

    let mut objects = Vec::with_capacity(n_g);
    for i in 0..n_g {
        let (_, l) = if i == 0 {
            lines.next_nonblank("object name")?
        } else {
            lines.next("object name")?
        };
        objects.push(l.to_string());
    }
    let mut attributes = Vec::with_capacity(n_m);
    for _ in 0..n_m {
        attributes.push(lines.next("attribute name")?.1.to_string());
    }

    let mut rows = Vec::with_capacity(n_g);
    for _ in 0..n_g {
        let (n, l) = if n_m > 0 {
            lines.next_nonblank("incidence row")?
        } else {
            lines.next("incidence row")?
        };
        if l.chars().count() != n_m {
            return Err(Error::parse(
                n,
                format!("row has {} cells, expected {n_m}", l.chars().count()),
            ));
        }
        let mut row = BitSet::empty(n_m);
        for (m, c) in l.chars().enumerate() {
            match c {
                'X' | 'x' => row.insert(m),
                '.' => {}
                other => return Err(Error::parse(n, format!("unexpected cell {other:?}"))),
            }
        }
        rows.push(row);
    }
    FormalContext::new(name, objects, attributes, rows)
}

pub fn write_cxt(ctx: &FormalContext) -> String {
    let mut out = String::new();
    out.push_str("B\n");
    let _ = writeln!(out, "{}", ctx.name());
    let _ = writeln!(out, "{}", ctx.n_objects());
    let _ = writeln!(out, "{}", ctx.n_attributes());
    for n in ctx.object_names() {
        let _ = writeln!(out, "{n}");
    }
    for n in ctx.attribute_names() {
        let _ = writeln!(out, "{n}");
    }
    for row in ctx.rows() {
        for m in 0..ctx.n_attributes() {
            out.push(if row.contains(m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}
