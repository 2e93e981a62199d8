//! The grid model: row and column permutations.

use finlab_core::colouring::{grid_colouring, grid_weight};
use finlab_core::{Atom, Colour, FinSet, GridShape};
use serde::{Deserialize, Serialize};

use super::{build, pass_if, Report, Verdict, Witness};
use crate::aut::{complete_aut, PartialAut};
use crate::error::{FmError, Result};
use crate::model::{Model, ModelSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    Row,
    Column,
}

/// Two fresh copies of one line of `x` beyond everything in `x` and the
/// support: the sum `x △ π(x) △ π'(x)` meets two more lines than `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlusTwo {
    pub support: FinSet,
    pub atom: Atom,
    pub axis: Axis,
    pub line: u64,
    pub copies: [u64; 2],
    pub y: FinSet,
    pub z: FinSet,
    pub sum: FinSet,
    pub weights: [usize; 2],
    pub colours: [Colour; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridWitness {
    pub model: ModelSpec,
    pub x: FinSet,
    pub pi: PartialAut,
    pub image: FinSet,
    pub weight: usize,
    pub plus_two: Option<PlusTwo>,
}

fn line_swap(g: GridShape, axis: Axis, i: u64, j: u64) -> impl Fn(Atom) -> Atom {
    move |a| {
        let (r, c) = g.coords(a).expect("grid atom");
        let swap = |v: u64| {
            if v == i {
                j
            } else if v == j {
                i
            } else {
                v
            }
        };
        match axis {
            Axis::Row => g.atom(swap(r), c).unwrap(),
            Axis::Column => g.atom(r, swap(c)).unwrap(),
        }
    }
}

fn plus_two(g: GridShape, x: &FinSet, support: &FinSet) -> Result<Option<PlusTwo>> {
    let coords =
        |s: &FinSet| -> Result<Vec<(u64, u64)>> { s.iter().map(|a| Ok(g.coords(a)?)).collect() };
    let f = coords(support)?;
    // N exceeds every index used by the support
    let bound = f.iter().map(|&(i, j)| i.max(j) + 1).max().unwrap_or(0);
    let xs = coords(x)?;
    let pick = xs
        .iter()
        .find(|c| c.0 >= bound)
        .map(|&c| (Axis::Row, c))
        .or_else(|| xs.iter().find(|c| c.1 >= bound).map(|&c| (Axis::Column, c)));
    let Some((axis, (i, j))) = pick else {
        return Ok(None);
    };
    let (line, used, limit) = match axis {
        Axis::Row => (i, xs.iter().map(|c| c.0).max().unwrap(), g.rows),
        Axis::Column => (j, xs.iter().map(|c| c.1).max().unwrap(), g.cols),
    };
    let first = (used + 1).max(bound);
    if first + 1 >= limit {
        return Err(FmError::NoExtension(format!(
            "grid has no two free {axis:?} lines beyond {used}"
        )));
    }
    let copies = [first, first + 1];
    let y: FinSet = x.iter().map(line_swap(g, axis, line, copies[0])).collect();
    let z: FinSet = x.iter().map(line_swap(g, axis, line, copies[1])).collect();
    let sum = x.sym_diff(&y).sym_diff(&z);
    Ok(Some(PlusTwo {
        support: support.clone(),
        atom: g.atom(i, j)?,
        axis,
        line,
        copies,
        weights: [grid_weight(g, x)?, grid_weight(g, &sum)?],
        colours: [grid_colouring(g, x)?, grid_colouring(g, &sum)?],
        y,
        z,
        sum,
    }))
}

impl GridWitness {
    pub fn replay(&self) -> Result<Verdict> {
        let model = build(&self.model)?;
        let g = model
            .grid()
            .ok_or_else(|| FmError::invalid("grid replays need the grid model"))?;
        model.respects(self.pi.map())?;
        let image = self.pi.image_of(&self.x)?;
        let mut ok = image == self.image
            && grid_weight(g, &self.x)? == self.weight
            && grid_weight(g, &image)? == self.weight;
        if let Some(p) = &self.plus_two {
            let again = plus_two(g, &self.x, &p.support)?;
            ok &= again.as_ref() == Some(p)
                && p.weights[1] == p.weights[0] + 2
                && p.colours[0] != p.colours[1]
                && !p.support.iter().any(|a| {
                    line_swap(g, p.axis, p.line, p.copies[0])(a) != a
                        || line_swap(g, p.axis, p.line, p.copies[1])(a) != a
                });
        }
        Ok(pass_if(ok))
    }
}

/// Checks that a row/column permutation preserves the grid weight of `x`,
/// and replays the two-fresh-lines construction for `x` against `support`.
pub fn grid_invariance_check(
    model: &Model,
    x: &FinSet,
    pi: &PartialAut,
    support: &FinSet,
) -> Result<Report> {
    let g = model
        .grid()
        .ok_or_else(|| FmError::invalid("grid replays need the grid model"))?;
    let full = complete_aut(model, pi, x)?;
    let image = full.image_of(x)?;
    let (extra, note) = match plus_two(g, x, support) {
        Ok(Some(p)) => (Some(p), None),
        Ok(None) => (
            None,
            Some("x lies inside the lines touched by the support".to_string()),
        ),
        Err(FmError::NoExtension(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };
    let w = GridWitness {
        model: *model.spec(),
        x: x.clone(),
        image,
        weight: grid_weight(g, x)?,
        pi: full,
        plus_two: extra,
    };
    let verdict = w.replay()?;
    let r = Report::new(verdict, Witness::Grid(w));
    Ok(match note {
        Some(n) => r.note(format!("two-line construction skipped: {n}")),
        None => r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_swap_keeps_weight() {
        let m = Model::build(ModelSpec::Grid { rows: 3, cols: 3 }).unwrap();
        // cell (1,1) under the row swap (1 2)
        let pi = PartialAut::new([(Atom(4), Atom(7))]).unwrap();
        let r = grid_invariance_check(&m, &FinSet::from([4]), &pi, &FinSet::empty()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let Witness::Grid(w) = &r.witness else {
            panic!()
        };
        assert_eq!(w.weight, 2);
        assert_eq!(w.image, FinSet::from([7]));
        // only row 2 lies beyond x, so two copies do not fit
        assert!(w.plus_two.is_none());
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn plus_two_construction() {
        let m = Model::build(ModelSpec::Grid { rows: 6, cols: 30 }).unwrap();
        let g = m.grid().unwrap();
        let x: FinSet = [(0, 0), (1, 3), (2, 3)]
            .iter()
            .map(|&(i, j)| g.atom(i, j).unwrap())
            .collect();
        let support = FinSet::from_iter([g.atom(0, 0).unwrap()]);
        let r = grid_invariance_check(&m, &x, &PartialAut::default(), &support).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let Witness::Grid(w) = &r.witness else {
            panic!()
        };
        let p = w.plus_two.as_ref().unwrap();
        assert_eq!((p.axis, p.line, p.copies), (Axis::Row, 1, [3, 4]));
        assert_eq!(p.weights, [5, 7]);
        assert!(r.reverify().unwrap());
    }

    #[test]
    fn non_factoring_map_rejected() {
        let m = Model::build(ModelSpec::Grid { rows: 3, cols: 3 }).unwrap();
        let pi = PartialAut::new([(Atom(0), Atom(4)), (Atom(1), Atom(8))]).unwrap();
        assert!(matches!(
            grid_invariance_check(&m, &FinSet::from([0, 1]), &pi, &FinSet::empty()),
            Err(FmError::ConstraintViolation(_))
        ));
    }
}
