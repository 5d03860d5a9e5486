//! Parsers for poset and ideal strings given on the command line.
//!
//! Posets:
//! * `hier:m,n` for `H(m, n)`
//! * `antichain:n`
//! * `n=4; cover=1<2,3<4`, where `i<j` means `i` lies below `j`
//!
//! Ideals: `;`-separated generator lists such as `1,3,4;2`. Each list is
//! closed downward; `{}` or an empty list stands for the empty ideal.

use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_ELEMENTS};
use crate::poset::{IdealFamily, Poset};

fn parse_usize(token: &str, what: &str) -> Result<usize> {
    token
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected {what}, got {token:?}")))
}

pub fn parse_poset(spec: &str) -> Result<Poset> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("hier:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("expected hier:m,n, got {spec:?}")));
        }
        return Poset::hierarchical(parse_usize(parts[0], "m")?, parse_usize(parts[1], "n")?);
    }
    if let Some(rest) = spec.strip_prefix("antichain:") {
        return Poset::antichain(parse_usize(rest, "n")?);
    }
    let mut n = None;
    let mut covers = Vec::new();
    for clause in spec.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let (key, value) = clause
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {clause:?}")))?;
        match key.trim() {
            "n" => n = Some(parse_usize(value, "n")?),
            "cover" => {
                for pair in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    let (lo, hi) = pair
                        .split_once('<')
                        .ok_or_else(|| Error::Parse(format!("expected i<j, got {pair:?}")))?;
                    covers.push((parse_usize(lo, "element")?, parse_usize(hi, "element")?));
                }
            }
            other => return Err(Error::Parse(format!("unknown poset key {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse(format!("poset spec {spec:?} is missing n=")))?;
    Poset::from_covers(n, &covers)
}

fn parse_set(list: &str, n: usize) -> Result<SubsetMask> {
    let list = list.trim().trim_start_matches('{').trim_end_matches('}');
    let mut elements = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let e = parse_usize(token, "element")?;
        if e == 0 || e > n || e > MAX_ELEMENTS {
            return Err(Error::ElementOutOfRange { element: e, n });
        }
        elements.push(e);
    }
    Ok(SubsetMask::from_elements(elements))
}

/// Generator lists closed into a family of ideals of `poset`.
pub fn parse_ideals(poset: &Poset, spec: &str) -> Result<IdealFamily> {
    let generators = spec
        .split(';')
        .map(|list| parse_set(list, poset.n()))
        .collect::<Result<Vec<_>>>()?;
    IdealFamily::from_generators(poset, generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_forms() {
        let p = parse_poset("hier:2,5").unwrap();
        assert_eq!(p.n(), 5);
        assert!(p.precedes(1, 3));
        let p = parse_poset("n=4; cover=1<2,3<4").unwrap();
        assert!(p.precedes(1, 2) && !p.precedes(2, 1) && !p.precedes(1, 3));
        assert_eq!(parse_poset("antichain:3").unwrap().n(), 3);
        assert!(parse_poset("hier:3").is_err());
        assert!(parse_poset("cover=1<2").is_err());
        assert!(parse_poset("n=2; cover=1<2,2<1").is_err());
    }

    #[test]
    fn ideal_lists_are_closed() {
        let p = parse_poset("hier:2,5").unwrap();
        let f = parse_ideals(&p, "1,3,4").unwrap();
        assert_eq!(f.members(), &[SubsetMask::from_elements([1, 2, 3, 4])]);
        let f = parse_ideals(&p, "1;2").unwrap();
        assert_eq!(f.len(), 2);
        let f = parse_ideals(&p, "{}").unwrap();
        assert_eq!(f.members(), &[SubsetMask::EMPTY]);
        assert!(parse_ideals(&p, "6").is_err());
        assert!(parse_ideals(&p, "x").is_err());
    }
}
