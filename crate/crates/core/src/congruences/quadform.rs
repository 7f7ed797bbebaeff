//! Representations by binary quadratic forms x^2 + d y^2, by exhaustive
//! search over y.

use crate::Int;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct QuadFormRep {
    pub target: Int,
    pub d: u64,
    pub x: u64,
    pub y: u64,
    pub found: bool,
}

/// First representation `target = x^2 + d*y^2` with `x, y >= 0`, scanning y
/// upward from zero.
pub fn quadform_rep(target: &Int, d: u64) -> QuadFormRep {
    let miss = |t: &Int| QuadFormRep { target: t.clone(), d, x: 0, y: 0, found: false };
    if target.is_negative() || target.is_zero() {
        return miss(target);
    }
    let di = Int::from(d);
    let mut y = Int::zero();
    loop {
        let rest = target - &di * &y * &y;
        if rest.is_negative() {
            return miss(target);
        }
        let x = rest.sqrt();
        if &x * &x == rest {
            return QuadFormRep {
                target: target.clone(),
                d,
                x: u64::try_from(&x).expect("desk-scale representation"),
                y: u64::try_from(&y).expect("desk-scale representation"),
                found: true,
            };
        }
        y += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let r = quadform_rep(&Int::from(29), 7);
        assert!(r.found);
        assert_eq!((r.x, r.y), (1, 2));
        let r = quadform_rep(&Int::from(37), 21);
        assert!(r.found);
        assert_eq!((r.x, r.y), (4, 1));
        assert!(!quadform_rep(&Int::from(11), 21).found);
        assert!(!quadform_rep(&Int::from(0), 5).found);
    }

    proptest! {
        #[test]
        fn roundtrip(t in 1u64..200_000, d in 1u64..200) {
            let rep = quadform_rep(&Int::from(t), d);
            if rep.found {
                prop_assert_eq!(rep.x as u128 * rep.x as u128 + d as u128 * rep.y as u128 * rep.y as u128,
                                t as u128);
            }
        }

        #[test]
        fn finds_planted(x in 0u64..300, y in 0u64..300, d in 1u64..64) {
            let t = Int::from(x * x + d * y * y);
            if t > Int::zero() {
                prop_assert!(quadform_rep(&t, d).found);
            }
        }
    }
}
