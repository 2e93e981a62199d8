//! Compact text forms for sets on the command line.
//!
//! * set: `1,2,7` or `0..4,9` (ranges are half-open); `{}` or the empty
//!   string is the empty set
//! * family: sets separated by `;`, e.g. `1,2;3;{}`
//! * map: `from:to` pairs separated by `,`, e.g. `0:5,1:1`

use finlab_core::{Atom, FinSet, SetFamily};

fn id(s: &str) -> Result<u64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{}` is not a non-negative integer", s.trim()))
}

pub fn finset(s: &str) -> Result<FinSet, String> {
    let s = s.trim();
    let s = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(s);
    let mut ids = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (id(lo)?, id(hi)?);
                if hi < lo || hi - lo > 1 << 20 {
                    return Err(format!("bad range `{item}`"));
                }
                ids.extend(lo..hi);
            }
            None => ids.push(id(item)?),
        }
    }
    Ok(FinSet::from_ids(ids))
}

pub fn family(s: &str) -> Result<SetFamily, String> {
    if s.trim().is_empty() {
        return Ok(SetFamily::default());
    }
    s.split(';')
        .map(finset)
        .collect::<Result<Vec<_>, _>>()
        .map(SetFamily::new)
}

pub fn atom_map(s: &str) -> Result<Vec<(Atom, Atom)>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| format!("`{pair}` is not of the form from:to"))?;
            Ok((Atom(id(a)?), Atom(id(b)?)))
        })
        .collect()
}
