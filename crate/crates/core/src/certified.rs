//! Certified values and the tail brackets used by the modular engine.

use std::fmt;

/// Relative slack, in units of machine epsilon, charged for floating-point
/// summation on top of a truncation bracket.
pub(crate) const ROUNDING_ULPS: f64 = 16.0;

/// An estimate together with a bound on its distance to the true value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedValue {
    pub estimate: f64,
    pub error_bound: f64,
}

impl CertifiedValue {
    pub fn exact(value: f64) -> Self {
        CertifiedValue {
            estimate: value,
            error_bound: 0.0,
        }
    }

    pub fn lower(&self) -> f64 {
        self.estimate - self.error_bound
    }

    pub fn upper(&self) -> f64 {
        self.estimate + self.error_bound
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower() <= value && value <= self.upper()
    }

    pub fn is_exact(&self) -> bool {
        self.error_bound == 0.0
    }

    /// Raises both interval endpoints to `exponent > 0`; the lower endpoint is
    /// clamped at zero since the values certified here are nonnegative.
    pub fn powf(&self, exponent: f64) -> Self {
        if self.is_exact() {
            return CertifiedValue::exact(self.estimate.max(0.0).powf(exponent));
        }
        let lo = self.lower().max(0.0).powf(exponent);
        let hi = self.upper().powf(exponent);
        CertifiedValue {
            estimate: 0.5 * (lo + hi),
            error_bound: outward(0.5 * (hi - lo), 0.5 * (lo + hi)),
        }
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.estimate, self.error_bound)
    }
}

/// Widens a half-width by a few ulps of itself and of the center it
/// brackets.
pub(crate) fn outward(half_width: f64, center: f64) -> f64 {
    half_width * (1.0 + 4.0 * f64::EPSILON) + 4.0 * f64::EPSILON * center.abs()
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// A symmetric enclosure of a partial or tail sum: `center ± (half_width +
/// rounding)`, where `half_width` is the truncation error (shrinks as more
/// terms are summed exactly) and `rounding` is floating-point slack (does
/// not).
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Bracket {
    pub center: f64,
    pub half_width: f64,
    pub rounding: f64,
}

impl Bracket {
    pub const ZERO: Bracket = Bracket {
        center: 0.0,
        half_width: 0.0,
        rounding: 0.0,
    };

    /// A compensated sum of a few positive terms.
    pub fn summed(v: f64) -> Self {
        Bracket {
            center: v,
            half_width: 0.0,
            rounding: 4.0 * f64::EPSILON * v.abs(),
        }
    }

    pub fn scale(self, c: f64) -> Self {
        let center = self.center * c;
        Bracket {
            center,
            half_width: self.half_width * c.abs(),
            rounding: self.rounding * c.abs() + 2.0 * f64::EPSILON * center.abs(),
        }
    }

    pub fn plus(self, other: Bracket) -> Self {
        let center = self.center + other.center;
        Bracket {
            center,
            half_width: self.half_width + other.half_width,
            rounding: self.rounding + other.rounding + 2.0 * f64::EPSILON * center.abs(),
        }
    }

    /// Total radius, rounded outward.
    pub fn radius(&self) -> f64 {
        outward(self.half_width + self.rounding, self.center)
    }
}

/// `B_{2j} / (2j)!` for `j = 1..=6`.
const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];

/// Correction terms kept in the Euler–Maclaurin expansion; the next one
/// bounds the remainder.
const EM_TERMS: usize = 5;

/// Encloses `Σ_{k ≥ start} (offset + slope·k)^{-p}` for `p > 1`, `slope > 0`.
///
/// The summand is completely monotone, so the Euler–Maclaurin remainder
/// after `EM_TERMS` corrections has the sign of the first omitted term and
/// is no larger in magnitude. The enclosure is centred on the sum including
/// that term, with the term's magnitude as half-width.
pub(crate) fn affine_power_tail(offset: f64, slope: f64, p: f64, start: u64) -> Bracket {
    let u = offset + slope * start as f64;
    debug_assert!(u > 0.0 && slope > 0.0 && p > 1.0);
    let f0 = u.powf(-p);
    let mut sum = CompensatedSum::default();
    sum.add(u.powf(1.0 - p) / (slope * (p - 1.0)));
    sum.add(0.5 * f0);

    // |f^{(2j-1)}(start)| = slope^{2j-1} (p)_{2j-1} u^{-p-2j+1}
    let mut deriv = slope * p * f0 / u;
    let mut next_term = 0.0;
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = coeff * deriv;
        if j == EM_TERMS {
            next_term = term;
            break;
        }
        sum.add(term);
        let n = (2 * j + 1) as f64;
        deriv *= slope * slope * (p + n) * (p + n + 1.0) / (u * u);
    }
    let center = sum.value() + next_term;
    Bracket {
        center,
        half_width: outward(next_term.abs(), center),
        rounding: 28.0 * f64::EPSILON * center.abs(),
    }
}

/// Encloses `Σ_{k=a}^{b} (offset + slope·k)^{-p}` for `p > 1`, `slope > 0`,
/// `a ≤ b`, without differencing two tails.
///
/// Finite-range Euler–Maclaurin with all six tabulated corrections; the
/// remainder is bounded by the magnitude of the last one. The integral
/// `(u_a^{1−p} − u_b^{1−p}) / (s(p−1))` is formed with `expm1`/`ln_1p` so
/// that it keeps full relative accuracy when `p` is close to 1.
pub(crate) fn affine_power_run(offset: f64, slope: f64, p: f64, a: u64, b: u64) -> Bracket {
    debug_assert!(a <= b && slope > 0.0 && p > 1.0);
    // The corrections only shrink once u ≫ slope·(p + 2j); sum the first
    // terms directly until then.
    let mut a = a;
    let mut lead = CompensatedSum::default();
    while offset + slope * a as f64 <= slope * (p + 12.0) {
        lead.add((offset + slope * a as f64).powf(-p));
        if a == b {
            return Bracket::summed(lead.value());
        }
        a += 1;
    }
    let lead = Bracket::summed(lead.value());
    let ua = offset + slope * a as f64;
    let ub = offset + slope * b as f64;
    debug_assert!(ua > 0.0);
    let ln_ratio = (slope * (b - a) as f64 / ua).ln_1p();
    let integral = -ua.powf(1.0 - p) * ((1.0 - p) * ln_ratio).exp_m1() / (slope * (p - 1.0));
    let (fa, fb) = (ua.powf(-p), ub.powf(-p));
    let mut sum = CompensatedSum::default();
    sum.add(integral);
    sum.add(0.5 * (fa + fb));

    // D_j(t) = slope^{2j-1} (p)_{2j-1} u^{-p-2j+1}; term_j = c_j (D_j(a) - D_j(b))
    let mut da = slope * p * fa / ua;
    let mut db = slope * p * fb / ub;
    let mut last = 0.0;
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        last = coeff * (da - db);
        sum.add(last);
        let n = (2 * j + 1) as f64;
        let grow = slope * slope * (p + n) * (p + n + 1.0);
        da *= grow / (ua * ua);
        db *= grow / (ub * ub);
    }
    let center = sum.value();
    lead.plus(Bracket {
        center,
        half_width: outward(last.abs(), center),
        rounding: 28.0 * f64::EPSILON * center.abs(),
    })
}
