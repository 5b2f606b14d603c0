//! Grassmann arithmetic on `Λ_s` written from scratch on bitmasks, kept apart
//! from the polynomial kernel so the two can check each other.
//!
//! Bit `j` of a mask stands for `θ_{j+1}`; a mask is the product of its
//! generators in increasing order.

/// `+1`, `-1` or `0`, and the product mask, for `θ_a · θ_b`.
pub fn mul(a: u32, b: u32) -> (i64, u32) {
    if a & b != 0 {
        return (0, 0);
    }
    // Move each generator of `b` leftwards past the larger generators of `a`.
    let mut swaps = 0u32;
    for j in 0..32 {
        if b >> j & 1 == 1 {
            for i in (j + 1)..32 {
                if a >> i & 1 == 1 {
                    swaps += 1;
                }
            }
        }
    }
    (if swaps.is_multiple_of(2) { 1 } else { -1 }, a | b)
}

/// Left derivative `∂_{θ_{j+1}}` of a monomial.
pub fn d(j: u32, m: u32) -> (i64, u32) {
    if m >> j & 1 == 0 {
        return (0, 0);
    }
    let before = (0..j).filter(|&i| m >> i & 1 == 1).count();
    (if before % 2 == 0 { 1 } else { -1 }, m & !(1 << j))
}

/// `0` for even monomials, `1` for odd ones.
pub fn parity(m: u32) -> u32 {
    m.count_ones() % 2
}

/// Dense element of `Λ_s` as `2^s` integer coefficients indexed by mask.
pub fn mul_dense(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len()];
    for (ma, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (mb, &cb) in b.iter().enumerate() {
            if cb == 0 {
                continue;
            }
            let (sign, m) = mul(ma as u32, mb as u32);
            if sign != 0 {
                out[m as usize] += sign * ca * cb;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommuting_generators() {
        assert_eq!(mul(0b01, 0b10), (1, 0b11));
        assert_eq!(mul(0b10, 0b01), (-1, 0b11));
        assert_eq!(mul(0b01, 0b01), (0, 0));
        assert_eq!(mul(0b101, 0b010), (-1, 0b111));
    }

    #[test]
    fn left_derivative_signs() {
        assert_eq!(d(0, 0b11), (1, 0b10));
        assert_eq!(d(1, 0b11), (-1, 0b01));
        assert_eq!(d(2, 0b11), (0, 0));
    }

    #[test]
    fn associativity_on_all_triples() {
        for a in 0..16u32 {
            for b in 0..16u32 {
                for c in 0..16u32 {
                    let (s1, ab) = mul(a, b);
                    let (s2, l) = mul(ab, c);
                    let (s3, bc) = mul(b, c);
                    let (s4, r) = mul(a, bc);
                    let left = if s1 == 0 { 0 } else { s1 * s2 };
                    let right = if s3 == 0 { 0 } else { s3 * s4 };
                    assert_eq!(left, right);
                    if left != 0 {
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }
}
