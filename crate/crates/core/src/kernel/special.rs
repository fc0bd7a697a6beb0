use crate::field::scale_exp;

/// The golden ratio.
pub const TAU: f64 = 1.618_033_988_749_895;

/// `phi(t) = (e^t - 1) / t` with `phi(0) = 1`.
pub fn phi_stable(t: f64) -> f64 {
    if t.abs() < 0.5 {
        let mut term: f64 = 1.0;
        let mut sum = 1.0;
        let mut n = 1.0;
        while term.abs() > f64::EPSILON * 0.25 * sum {
            n += 1.0;
            term *= t / n;
            sum += term;
        }
        sum
    } else {
        t.exp_m1() / t
    }
}

/// Second divided difference `exp[a, b, c]`, including confluent nodes.
pub fn exp_divdiff2(a: f64, b: f64, c: f64) -> f64 {
    let mut n = [a, b, c];
    n.sort_by(f64::total_cmp);
    let (lo, p, q) = (n[0], n[1] - n[0], n[2] - n[0]);
    if q < 2.0 {
        // sum_{k>=0} h_k(p, q) / (k + 2)!, h_k complete homogeneous in {0, p, q}
        let mut h = 1.0;
        let mut pk = 1.0;
        let mut fact = 2.0;
        let mut sum = 0.5;
        let mut k = 0.0;
        loop {
            k += 1.0;
            pk *= p;
            h = q * h + pk;
            fact *= k + 2.0;
            let term = h / fact;
            sum += term;
            if term <= f64::EPSILON * 0.25 * sum {
                break;
            }
        }
        scale_exp(sum, lo)
    } else if p <= 700.0 {
        scale_exp((p.exp() * phi_stable(q - p) - phi_stable(p)) / q, lo)
    } else {
        scale_exp((phi_stable(q - p) - (-p).exp() * phi_stable(p)) / q, lo + p)
    }
}
