use super::CodeError;

/// Smallest `r` with `r (r - 1) >= 2 s`, the optimal redundancy of a
/// 3-server PIR code of dimension `s`.
///
/// Seeded from `ceil(sqrt(2s + 1/4) + 1/2)` and then corrected with exact
/// integer comparisons, so perfect values `2s = r(r-1)` never round the
/// wrong way.
pub fn rho3(s: usize) -> usize {
    let seed = ((2.0 * s as f64 + 0.25).sqrt() + 0.5).ceil() as usize;
    let mut r = seed;
    while !lower_bound_ok(s, r) {
        r += 1;
    }
    while r > 0 && lower_bound_ok(s, r - 1) {
        r -= 1;
    }
    r
}

/// Lowest possible redundancy of a `k`-server PIR code of dimension `s`,
/// for the server counts where it is known exactly.
pub fn rho(s: usize, k: usize) -> Result<usize, CodeError> {
    if s == 0 {
        return Err(CodeError::InvalidDimension { s });
    }
    match k {
        2 => Ok(1),
        3 => Ok(rho3(s)),
        4 => Ok(rho3(s) + 1),
        _ => Err(CodeError::UnsupportedK { k }),
    }
}

/// The necessary condition `r (r - 1) >= 2 s` satisfied by every
/// `k`-server PIR code with `k >= 3`.
pub fn lower_bound_ok(s: usize, r: usize) -> bool {
    let r = r as u128;
    r * r.saturating_sub(1) >= 2 * s as u128
}
