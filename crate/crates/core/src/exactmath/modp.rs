//! Machine-word modular helpers for the enumeration hot paths.

/// p^e as i128.
pub fn pow(p: i128, e: u32) -> i128 {
    p.checked_pow(e).expect("prime power overflows i128")
}

/// Euclidean remainder in [0, m).
#[inline]
pub fn rem(a: i128, m: i128) -> i128 {
    a.rem_euclid(m)
}

/// v_p(x) capped at `cap` (x = 0 gives `cap`).
#[inline]
pub fn val_capped(mut x: i128, p: i128, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    while v < cap && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// v_p(x), None for zero.
pub fn val(x: i128, p: i128) -> Option<u32> {
    if x == 0 {
        None
    } else {
        Some(val_capped(x, p, u32::MAX))
    }
}

/// Inverse of a modulo m, if gcd(a, m) = 1.
pub fn inv(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1) = (rem(a, m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 == 1 {
        Some(rem(s0, m))
    } else if m == 1 {
        Some(0)
    } else {
        None
    }
}

/// a^e mod m.
pub fn pow_mod(a: i128, mut e: u64, m: i128) -> i128 {
    let mut base = rem(a, m);
    let mut r = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    r
}
