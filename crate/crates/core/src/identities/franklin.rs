use crate::partition::Partition;

use super::IdentityError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FranklinOutcome {
    Moved(Partition),
    FixedPoint,
}

/// Franklin's involution on partitions into distinct parts.
///
/// With `s` the smallest part and `r` the length of the run
/// `π₁, π₁−1, π₁−2, …`: if `s ≤ r`, the smallest part is removed and the
/// `s` largest parts each grow by one; otherwise the `r` largest parts each
/// shrink by one and a new part `r` is appended. When the run covers every
/// part and `s ∈ {r, r+1}` neither move is possible and `π` is fixed.
pub fn franklin(p: &Partition) -> Result<FranklinOutcome, IdentityError> {
    if !p.is_distinct() {
        return Err(IdentityError::NotDistinct(p.clone()));
    }
    let parts = p.parts();
    let len = parts.len();
    let s = p.smallest() as usize;
    let r = parts
        .iter()
        .enumerate()
        .take_while(|&(i, &v)| v as usize + i == parts[0] as usize)
        .count();

    if r == len && (s == r || s == r + 1) {
        return Ok(FranklinOutcome::FixedPoint);
    }
    let mut out = parts.to_vec();
    if s <= r {
        out.pop();
        for v in &mut out[..s] {
            *v += 1;
        }
    } else {
        for v in &mut out[..r] {
            *v -= 1;
        }
        out.push(r as u32);
    }
    Ok(FranklinOutcome::Moved(Partition::from_sorted_unchecked(out)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn moves_and_fixed_points() {
        let moved = franklin(&p(&[5, 3])).unwrap();
        assert_eq!(moved, FranklinOutcome::Moved(p(&[4, 3, 1])));
        let q = p(&[4, 3, 1]);
        assert_eq!((q.size(), q.perimeter()), (8, 6));
        assert_eq!(franklin(&q).unwrap(), FranklinOutcome::Moved(p(&[5, 3])));

        assert_eq!(franklin(&p(&[4, 3])).unwrap(), FranklinOutcome::FixedPoint);
        assert_eq!(franklin(&p(&[1])).unwrap(), FranklinOutcome::FixedPoint);
        assert_eq!(franklin(&p(&[2])).unwrap(), FranklinOutcome::FixedPoint);
        assert_eq!(franklin(&p(&[3, 2])).unwrap(), FranklinOutcome::FixedPoint);
        assert_eq!(franklin(&p(&[2, 1])).unwrap(), FranklinOutcome::Moved(p(&[3])));
    }

    #[test]
    fn rejects_repeated_parts() {
        assert!(matches!(franklin(&p(&[2, 2])), Err(IdentityError::NotDistinct(_))));
    }
}
