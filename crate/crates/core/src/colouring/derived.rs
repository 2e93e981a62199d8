use std::sync::Arc;

use super::{Arity, Colour, Colouring, Domain, Rule};
use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet};

fn exact_arity(c: &Colouring) -> Result<usize> {
    match c.arity() {
        Arity::Exactly(n) => Ok(n),
        other => Err(Error::invalid(format!(
            "expected a colouring of n-subsets, got {other:?}"
        ))),
    }
}

fn order_min(order: &[Atom], x: &FinSet) -> Result<Atom> {
    for a in x.iter() {
        if !order.contains(&a) {
            return Err(Error::Domain(format!("{a} is not in the given order")));
        }
    }
    order
        .iter()
        .copied()
        .find(|&a| x.contains(a))
        .ok_or_else(|| Error::invalid("empty set has no minimum"))
}

/// `d(x) = c(x \ {min x})` with the minimum taken in `order`.
pub fn min_drop_colouring(c: &Colouring, order: &[Atom], x: &FinSet) -> Result<Colour> {
    let n = exact_arity(c)?;
    if x.len() != n + 1 {
        return Err(Error::ArityMismatch {
            expected: n + 1,
            got: x.len(),
        });
    }
    let m = order_min(order, x)?;
    c.colour(&x.without(m))
}

/// [`min_drop_colouring`] as a colouring of `(n+1)`-subsets of the same
/// ground set.
pub fn min_drop(c: &Colouring, order: Vec<Atom>) -> Result<Colouring> {
    let n = exact_arity(c)?;
    let inner = c.clone();
    let domain = Domain::new(c.ground().clone(), Arity::Exactly(n + 1));
    Ok(Colouring::new(
        format!("min-drop({})", c.name()),
        domain,
        Rule::Custom(Arc::new(move |x| min_drop_colouring(&inner, &order, x))),
    ))
}

/// For each `(n-1)`-subset `s` of `y`, are there two one-point extensions
/// into the ground set with different colours?
pub fn is_dense(c: &Colouring, y: &FinSet) -> Result<bool> {
    let n = exact_arity(c)?;
    if n == 0 {
        return Err(Error::invalid("density needs n >= 1"));
    }
    if y.len() < n - 1 {
        return Err(Error::invalid(format!(
            "witness set has {} points, need at least {}",
            y.len(),
            n - 1
        )));
    }
    if !y.is_subset(c.ground()) {
        return Err(Error::Domain("witness set escapes the ground set".into()));
    }
    for s in y.subsets_of_size(n - 1) {
        if boundary_value(c, c.ground(), &s)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The common colour of `c(s ∪ {x})` over `x ∈ y \ s`, if there is one.
/// With no extensions at all the answer is vacuously `Zero`.
pub fn boundary_value(c: &Colouring, y: &FinSet, s: &FinSet) -> Result<Option<Colour>> {
    let mut seen: Option<Colour> = None;
    for x in y.difference(s).iter() {
        let col = c.colour(&s.with(x))?;
        match seen {
            None => seen = Some(col),
            Some(prev) if prev != col => return Ok(None),
            _ => {}
        }
    }
    Ok(Some(seen.unwrap_or(Colour::Zero)))
}

/// `d(s) = 0` iff all one-point extensions of `s` inside the ground set
/// share a colour.
pub fn boundary_colouring(c: &Colouring) -> Result<Colouring> {
    let n = exact_arity(c)?;
    if n < 2 {
        return Err(Error::invalid("boundary colouring needs n >= 2"));
    }
    let inner = c.clone();
    let domain = Domain::new(c.ground().clone(), Arity::Exactly(n - 1));
    Ok(Colouring::new(
        format!("boundary({})", c.name()),
        domain,
        Rule::Custom(Arc::new(move |s| {
            Ok(Colour::from_bit(
                boundary_value(&inner, inner.ground(), s)?.is_none(),
            ))
        })),
    ))
}

/// `e(s)` = the constant colour of the extensions of `s`, for `s ⊆ y'`.
/// Every `(n-1)`-subset of `y'` is checked up front.
pub fn value_colouring(c: &Colouring, y_prime: &FinSet) -> Result<Colouring> {
    let n = exact_arity(c)?;
    if n < 2 {
        return Err(Error::invalid("value colouring needs n >= 2"));
    }
    if !y_prime.is_subset(c.ground()) {
        return Err(Error::Domain("Y' escapes the ground set".into()));
    }
    let mut table = std::collections::BTreeMap::new();
    for s in y_prime.subsets_of_size(n - 1) {
        match boundary_value(c, c.ground(), &s)? {
            Some(col) => {
                table.insert(s, col);
            }
            None => {
                return Err(Error::NotConstant(format!(
                    "extensions of {s} take both colours"
                )))
            }
        }
    }
    let mut e = Colouring::table(Domain::new(y_prime.clone(), Arity::Exactly(n - 1)), table)?;
    e.name = format!("value({})", c.name());
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u64]) -> FinSet {
        FinSet::from_ids(ids.iter().copied())
    }

    fn natural(n: u64) -> Vec<Atom> {
        (0..n).map(Atom).collect()
    }

    fn single_edge() -> Colouring {
        Colouring::from_fn(
            "edge12",
            Domain::new(set(&[1, 2, 3, 4, 5]), Arity::Exactly(2)),
            |x| Colour::from_bit(*x == FinSet::from_ids([1, 2])),
        )
    }

    #[test]
    fn min_drop_examples() {
        let parity = Colouring::from_fn("parity", Domain::range(10, Arity::Exactly(1)), |x| {
            Colour::from_bit(x.least().unwrap().id() % 2 == 1)
        });
        assert_eq!(
            min_drop_colouring(&parity, &natural(10), &set(&[2, 5])).unwrap(),
            Colour::One
        );
        assert!(matches!(
            min_drop_colouring(&parity, &natural(10), &set(&[2])),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        ));
        let k = Colouring::from_fn("k", Domain::range(6, Arity::Exactly(2)), |_| Colour::One);
        let d = min_drop(&k, natural(6)).unwrap();
        for x in FinSet::range(6).subsets_of_size(3) {
            assert_eq!(d.colour(&x).unwrap(), Colour::One);
        }
    }

    #[test]
    fn min_drop_respects_given_order() {
        let c = Colouring::from_fn("c", Domain::range(4, Arity::Exactly(1)), |x| {
            Colour::from_bit(x.least().unwrap().id() == 0)
        });
        let reversed: Vec<Atom> = (0..4).rev().map(Atom).collect();
        // min under the reversed order is 3, leaving {0}
        assert_eq!(
            min_drop_colouring(&c, &reversed, &set(&[0, 3])).unwrap(),
            Colour::One
        );
        assert_eq!(
            min_drop_colouring(&c, &natural(4), &set(&[0, 3])).unwrap(),
            Colour::Zero
        );
    }

    #[test]
    fn density_examples() {
        let k = Colouring::from_fn("k", Domain::range(6, Arity::Exactly(2)), |_| Colour::Zero);
        assert!(!is_dense(&k, &FinSet::range(6)).unwrap());
        let parity = Colouring::pairs("sum-parity", 6, |a, b| Colour::from_bit((a + b) % 2 == 1));
        assert!(is_dense(&parity, &FinSet::range(6)).unwrap());
        let triples =
            Colouring::from_fn("t", Domain::range(6, Arity::Exactly(3)), |_| Colour::Zero);
        assert!(matches!(
            is_dense(&triples, &set(&[0])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn boundary_and_value_examples() {
        let c = single_edge();
        let d = boundary_colouring(&c).unwrap();
        assert_eq!(d.colour(&set(&[1])).unwrap(), Colour::One);
        assert_eq!(d.colour(&set(&[3])).unwrap(), Colour::Zero);

        let e = value_colouring(&c, &set(&[3, 4, 5])).unwrap();
        for s in set(&[3, 4, 5]).subsets_of_size(1) {
            assert_eq!(e.colour(&s).unwrap(), Colour::Zero);
        }
        assert!(matches!(
            value_colouring(&c, &set(&[1, 3])),
            Err(Error::NotConstant(_))
        ));

        let k = Colouring::from_fn("k", Domain::range(5, Arity::Exactly(3)), |_| Colour::One);
        let d = boundary_colouring(&k).unwrap();
        let e = value_colouring(&k, &FinSet::range(5)).unwrap();
        for s in FinSet::range(5).subsets_of_size(2) {
            assert_eq!(d.colour(&s).unwrap(), Colour::Zero);
            assert_eq!(e.colour(&s).unwrap(), Colour::One);
        }
    }
}
