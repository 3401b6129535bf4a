//! Reduced Burau representation of `B_5` specialized to GF(5).

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::gfmat::GfMat;

/// Image of `σ_i` (1 ≤ i ≤ 4) with parameter `t`.
pub fn burau_generator(i: usize, t: i64) -> Result<GfMat> {
    let s = t;
    Ok(match i {
        1 => GfMat::new([[1 - s, s, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
        2 => GfMat::new([[1, 0, 0, 0], [0, 1 - s, s, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
        3 => GfMat::new([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1 - s, s], [0, 0, 1, 0]]),
        4 => GfMat::new([[1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1], [0, 0, 0, -s]]),
        _ => return Err(Error::IndexOutOfRange { index: i, min: 1, max: 4 }),
    })
}

/// Image of a five-strand braid with parameter `t ≢ 0 (mod 5)`, letters multiplied left to right.
pub fn burau(w: &BraidWord, t: i64) -> Result<GfMat> {
    if w.n() != 5 {
        return Err(Error::StrandMismatch(5, w.n()));
    }
    if t.rem_euclid(5) == 0 {
        return Err(Error::Validation("t must be a unit mod 5".into()));
    }
    let mut gens = Vec::with_capacity(4);
    for i in 1..=4 {
        let g = burau_generator(i, t)?;
        let inv = g.inverse().expect("det = -t is a unit");
        gens.push((g, inv));
    }
    Ok(w.letters().iter().fold(GfMat::identity(), |acc, &l| {
        let (g, inv) = &gens[l.unsigned_abs() as usize - 1];
        acc.mul(if l > 0 { g } else { inv })
    }))
}

/// Image at `t = 2`.
pub fn burau_t2(w: &BraidWord) -> Result<GfMat> {
    burau(w, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::words_equal;
    use proptest::prelude::*;

    fn w(l: &[i32]) -> BraidWord {
        BraidWord::new(5, l.to_vec()).unwrap()
    }

    #[test]
    fn generator_images() {
        let s1 = burau_t2(&w(&[1])).unwrap();
        assert_eq!(s1, GfMat::new([[4, 2, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));
        let s4 = burau_t2(&w(&[4])).unwrap();
        assert_eq!(s4, GfMat::new([[1, 0, 0, 4], [0, 1, 0, 4], [0, 0, 1, 4], [0, 0, 0, 3]]));
        for i in 1..=4 {
            // det = -t
            assert_eq!(burau_t2(&w(&[i])).unwrap().det(), 3);
        }
        assert!(burau_t2(&BraidWord::identity(5)).unwrap().is_identity());
        assert!(burau_t2(&BraidWord::identity(4)).is_err());
        assert!(burau(&w(&[1]), 10).is_err());
    }

    #[test]
    fn braid_relations() {
        for t in 1..5 {
            for i in 1..=4 {
                for j in 1..=4 {
                    let (a, b) = match (i - j as i32).abs() {
                        0 => continue,
                        1 => (w(&[i, j, i]), w(&[j, i, j])),
                        _ => (w(&[i, j]), w(&[j, i])),
                    };
                    assert_eq!(burau(&a, t).unwrap(), burau(&b, t).unwrap(), "σ{i}, σ{j}, t={t}");
                }
            }
        }
    }

    fn word(max: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1..=4i32, any::<bool>()), 0..=max)
            .prop_map(|v| BraidWord::new(5, v.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn homomorphism(a in word(10), b in word(10)) {
            let ab = burau_t2(&a.compose(&b).unwrap()).unwrap();
            prop_assert_eq!(ab, burau_t2(&a).unwrap().mul(&burau_t2(&b).unwrap()));
            prop_assert!(burau_t2(&a.compose(&a.invert()).unwrap()).unwrap().is_identity());
            let e = (a.exponent_sum() + b.exponent_sum()).rem_euclid(4) as u32;
            prop_assert_eq!(ab.det() as i64, 3i64.pow(e) % 5);
            // a and a·(σ1σ2σ1)(σ2σ1σ2)⁻¹ are the same braid
            let a2 = a.compose(&w(&[1, 2, 1, -2, -1, -2])).unwrap();
            prop_assert!(words_equal(&a, &a2).unwrap());
            prop_assert_eq!(burau_t2(&a).unwrap(), burau_t2(&a2).unwrap());
        }
    }
}
