//! Angular-momentum coupling coefficients.
//!
//! Wigner 3-j symbols evaluated with the Racah formula. Arguments are given
//! in doubled-integer form (`two_j = 2j`) so half-integer momenta are exact.
//! For the small momenta used here (j ≤ 5) a factorial table in `f64` is
//! accurate to well below 1e-14.

/// Factorials 0!..=30! (30! ≈ 2.65e32, exactly representable operations in f64
/// are not guaranteed, but the relative error stays below 1e-15 in this range).
fn fact(n: i32) -> f64 {
    debug_assert!((0..=30).contains(&n));
    const TABLE_LEN: usize = 31;
    static TABLE: std::sync::OnceLock<[f64; TABLE_LEN]> = std::sync::OnceLock::new();
    let t = TABLE.get_or_init(|| {
        let mut t = [1.0; TABLE_LEN];
        for i in 1..TABLE_LEN {
            t[i] = t[i - 1] * i as f64;
        }
        t
    });
    t[n as usize]
}

fn triangle_ok(two_j1: i32, two_j2: i32, two_j3: i32) -> bool {
    two_j3 >= (two_j1 - two_j2).abs() && two_j3 <= two_j1 + two_j2 && (two_j1 + two_j2 + two_j3) % 2 == 0
}

/// Wigner 3-j symbol ⎛ j1 j2 j3 ⎞ with all arguments doubled.
///          ⎝ m1 m2 m3 ⎠
///
/// Returns 0 for violated selection rules (m out of range, m1+m2+m3 ≠ 0,
/// triangle violation).
pub fn wigner_3j(
    two_j1: i32,
    two_j2: i32,
    two_j3: i32,
    two_m1: i32,
    two_m2: i32,
    two_m3: i32,
) -> f64 {
    if two_m1 + two_m2 + two_m3 != 0
        || !triangle_ok(two_j1, two_j2, two_j3)
        || two_m1.abs() > two_j1
        || two_m2.abs() > two_j2
        || two_m3.abs() > two_j3
        || (two_j1 + two_m1) % 2 != 0
        || (two_j2 + two_m2) % 2 != 0
        || (two_j3 + two_m3) % 2 != 0
    {
        return 0.0;
    }

    // All the following are guaranteed integers (halves of even sums).
    let h = |x: i32| {
        debug_assert!(x % 2 == 0);
        x / 2
    };
    let jjj = h(two_j1 + two_j2 - two_j3);
    let jj_j = h(two_j1 - two_j2 + two_j3);
    let j_jj = h(-two_j1 + two_j2 + two_j3);
    let jsum = h(two_j1 + two_j2 + two_j3);

    let delta = (fact(jjj) * fact(jj_j) * fact(j_jj) / fact(jsum + 1)).sqrt();

    let norm = (fact(h(two_j1 + two_m1))
        * fact(h(two_j1 - two_m1))
        * fact(h(two_j2 + two_m2))
        * fact(h(two_j2 - two_m2))
        * fact(h(two_j3 + two_m3))
        * fact(h(two_j3 - two_m3)))
    .sqrt();

    let k_min = 0
        .max(h(two_j2 - two_j3 - two_m1))
        .max(h(two_j1 - two_j3 + two_m2));
    let k_max = jjj
        .min(h(two_j1 - two_m1))
        .min(h(two_j2 + two_m2));

    let mut sum = 0.0;
    for k in k_min..=k_max {
        let den = fact(k)
            * fact(jjj - k)
            * fact(h(two_j1 - two_m1) - k)
            * fact(h(two_j2 + two_m2) - k)
            * fact(h(two_j3 - two_j2 + two_m1) + k)
            * fact(h(two_j3 - two_j1 - two_m2) + k);
        sum += if k % 2 == 0 { 1.0 } else { -1.0 } / den;
    }

    let phase = if h(two_j1 - two_j2 - two_m3) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    phase * delta * norm * sum
}

/// Clebsch-Gordan coefficient ⟨j1 m1; j2 m2 | j3 m3⟩ with doubled arguments.
pub fn clebsch_gordan(
    two_j1: i32,
    two_j2: i32,
    two_j3: i32,
    two_m1: i32,
    two_m2: i32,
    two_m3: i32,
) -> f64 {
    let phase = if (two_j1 - two_j2 + two_m3) % 4 == 0 {
        1.0
    } else {
        -1.0
    };
    phase
        * ((two_j3 + 1) as f64).sqrt()
        * wigner_3j(two_j1, two_j2, two_j3, two_m1, two_m2, -two_m3)
}
