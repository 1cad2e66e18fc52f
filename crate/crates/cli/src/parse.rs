use critical_model::Direction;
use fock_oracle::LatticeSpec;

/// `NHxNV`, e.g. `3x5`.
pub fn lattice(s: &str) -> Result<LatticeSpec, String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected NHxNV, got {s:?}"))?;
    let nh = a.trim().parse().map_err(|_| format!("bad horizontal size in {s:?}"))?;
    let nv = b.trim().parse().map_err(|_| format!("bad vertical size in {s:?}"))?;
    LatticeSpec::new(nh, nv).map_err(|e| e.to_string())
}

pub fn direction(s: &str) -> Result<Direction, String> {
    s.trim().parse::<Direction>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsizeList(pub Vec<usize>);

/// Comma-separated items, each `n`, `a..b` (inclusive) or `a..b:step`.
pub fn usize_list(s: &str) -> Result<UsizeList, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad number {t:?} in {s:?}"));
        match item.split_once("..") {
            None => out.push(num(item)?),
            Some((a, rest)) => {
                let (b, step) = match rest.split_once(':') {
                    Some((b, st)) => (b, num(st)?),
                    None => (rest, 1),
                };
                let (a, b) = (num(a)?, num(b)?);
                if step == 0 || a > b {
                    return Err(format!("empty range {item:?}"));
                }
                out.extend((a..=b).step_by(step));
            }
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(UsizeList(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattices() {
        let l = lattice("3x5").unwrap();
        assert_eq!((l.nh, l.nv), (3, 5));
        assert!(lattice("3").is_err());
        assert!(lattice("0x3").is_err());
        assert!(lattice("ax3").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(usize_list("3..8").unwrap().0, vec![3, 4, 5, 6, 7, 8]);
        assert_eq!(usize_list("5..11:2,15").unwrap().0, vec![5, 7, 9, 11, 15]);
        assert!(usize_list("8..3").is_err());
        assert!(usize_list("1..3:0").is_err());
        assert!(usize_list("x").is_err());
    }

    #[test]
    fn directions() {
        assert_eq!(direction("n-2n").unwrap(), Direction::NTwoN);
        assert!(direction("up").is_err());
    }
}
