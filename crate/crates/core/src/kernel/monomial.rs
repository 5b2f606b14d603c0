use std::cmp::Ordering;

use super::signature::Parity;

/// `t_1^{k_1} ⋯ t_r^{k_r} θ_{i_1} ⋯ θ_{i_l}` with `i_1 < ⋯ < i_l`.
///
/// The odd factors are kept as a bitmask (bit `j` is `θ_{j+1}`), which makes
/// the increasing-index normal form automatic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    even: Vec<u32>,
    odd: u64,
}

/// Number of transpositions needed to sort `θ_A θ_B` into increasing order,
/// modulo 2. Assumes `A ∩ B = ∅`.
pub(crate) fn merge_sign_is_negative(a: u64, b: u64) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // factors of `a` with index greater than j must pass over θ_j
        swaps += if j == 63 { 0 } else { (a >> (j + 1)).count_ones() };
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

impl Monomial {
    pub fn new(even: Vec<u32>, odd: u64) -> Self {
        Monomial { even, odd }
    }

    pub fn one(r: usize) -> Self {
        Monomial {
            even: vec![0; r],
            odd: 0,
        }
    }

    pub fn even_exponents(&self) -> &[u32] {
        &self.even
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    /// Odd indices in increasing order (zero based).
    pub fn odd_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.odd;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(j)
            }
        })
    }

    pub fn odd_degree(&self) -> usize {
        self.odd.count_ones() as usize
    }

    pub fn total_degree(&self) -> usize {
        self.even.iter().map(|&k| k as usize).sum::<usize>() + self.odd_degree()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.odd_degree())
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.even.iter().all(|&k| k == 0)
    }

    /// Product with its sign, or `None` when an odd factor repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let even = self
            .even
            .iter()
            .zip(&other.even)
            .map(|(a, b)| a + b)
            .collect();
        let negative = merge_sign_is_negative(self.odd, other.odd);
        Some((
            Monomial {
                even,
                odd: self.odd | other.odd,
            },
            negative,
        ))
    }

    /// `∂_{t_i}` of the monomial: the exponent it brings down, and the result.
    pub fn d_even(&self, i: usize) -> Option<(u32, Monomial)> {
        let k = self.even[i];
        if k == 0 {
            return None;
        }
        let mut even = self.even.clone();
        even[i] -= 1;
        Some((k, Monomial { even, odd: self.odd }))
    }

    /// Left derivative `∂_{θ_j}`: removing θ_j from position m gives the sign `(-1)^(m-1)`.
    pub fn d_odd(&self, j: usize) -> Option<(bool, Monomial)> {
        let bit = 1u64 << j;
        if self.odd & bit == 0 {
            return None;
        }
        let before = (self.odd & (bit - 1)).count_ones();
        Some((
            before % 2 == 1,
            Monomial {
                even: self.even.clone(),
                odd: self.odd & !bit,
            },
        ))
    }
}

/// Graded lexicographic order over `t_1, …, t_r, θ_1, …, θ_s`:
/// total degree first, then the earlier variable with the larger exponent wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.even.cmp(&other.even))
            .then_with(|| {
                let diff = self.odd ^ other.odd;
                if diff == 0 {
                    Ordering::Equal
                } else if self.odd & (diff & diff.wrapping_neg()) != 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(mask: u64) -> Monomial {
        Monomial::new(vec![], mask)
    }

    #[test]
    fn merge_signs() {
        // θ1·θ2 = θ1θ2 ; θ2·θ1 = -θ1θ2
        assert_eq!(odd(0b01).mul(&odd(0b10)), Some((odd(0b11), false)));
        assert_eq!(odd(0b10).mul(&odd(0b01)), Some((odd(0b11), true)));
        assert_eq!(odd(0b01).mul(&odd(0b01)), None);
        // θ2θ3 · θ1 = θ1θ2θ3 after two swaps
        assert_eq!(odd(0b110).mul(&odd(0b001)), Some((odd(0b111), false)));
        // θ3 · θ1θ2 : two swaps
        assert_eq!(odd(0b100).mul(&odd(0b011)), Some((odd(0b111), false)));
        // θ2 · θ1θ3 : one swap
        assert_eq!(odd(0b010).mul(&odd(0b101)), Some((odd(0b111), true)));
    }

    #[test]
    fn left_derivative_sign() {
        let m = odd(0b11);
        assert_eq!(m.d_odd(0), Some((false, odd(0b10))));
        assert_eq!(m.d_odd(1), Some((true, odd(0b01))));
        assert_eq!(odd(0b01).d_odd(1), None);
    }

    #[test]
    fn grlex() {
        let m = |e: Vec<u32>, o: u64| Monomial::new(e, o);
        assert!(m(vec![2, 0], 0) > m(vec![1, 1], 0));
        assert!(m(vec![1, 1], 0) > m(vec![0, 2], 0));
        assert!(m(vec![0, 0], 0b01) > m(vec![0, 0], 0b10));
        assert!(m(vec![1, 0], 0) > m(vec![0, 0], 0b01));
        assert!(m(vec![0, 0], 0b11) > m(vec![1, 0], 0));
        assert!(m(vec![0, 0], 0b101) > m(vec![0, 0], 0b110));
    }
}
