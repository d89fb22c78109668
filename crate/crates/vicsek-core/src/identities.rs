//! Machine verification of the extension-coefficient algebra.
//!
//! Every equality among `R, f_2, alpha, beta, chi, delta` is checked two
//! ways: as an exact integer-coefficient polynomial identity after clearing
//! denominators, and as a grid equality on the working domain. The
//! inequality families stay grid checks (with endpoint refinement), since
//! that is all downstream code relies on.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decimation::{branch_inverse, r_apply, Branch, ExtensionCoefficients};
use crate::report::{CheckReport, SuiteReport};
use crate::Result;

/// Grid tolerance; the polynomial checks are exact.
pub const GRID_TOL: f64 = 1e-12;

/// Dense polynomial with exact integer coefficients, `coeffs[i] * x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<i128>);

impl Poly {
    pub fn new(coeffs: &[i128]) -> Poly {
        let mut v = coeffs.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly(v)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut out = vec![0i128; n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(&out)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i128) -> Poly {
        Poly::new(&self.0.iter().map(|c| c * k).collect::<Vec<_>>())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0i128; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(&out)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.0.iter().rev() {
            acc = acc * x + c as f64;
        }
        acc
    }
}

// Building blocks of the coefficient algebra.
fn p_r() -> Poly {
    Poly::new(&[0, 15, -48, 36])
}
fn p_f2() -> Poly {
    Poly::new(&[4, -21, 18])
}
fn p_a() -> Poly {
    Poly::new(&[9, -42, 36])
}
fn p_b() -> Poly {
    Poly::new(&[6, -24, 18])
}
fn p_c() -> Poly {
    Poly::new(&[1])
}
fn p_d() -> Poly {
    Poly::new(&[2, -3])
}
/// `D = 1/gamma = 3(4 - 29x + 60x^2 - 36x^3)`.
fn p_gamma_denom() -> Poly {
    Poly::new(&[12, -87, 180, -108])
}

type Evaluator = Box<dyn Fn(f64) -> f64>;

/// One equality case: a difference polynomial that must vanish identically,
/// plus left/right numeric evaluators for the grid spot-check.
pub struct IdentityCase {
    pub name: &'static str,
    pub difference: Poly,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
    /// Open-ish grid domain (endpoints nudged by the grid driver).
    pub domain: (f64, f64),
}

fn co(lambda: f64) -> ExtensionCoefficients {
    ExtensionCoefficients::at(lambda).expect("grid domain avoids the poles")
}

/// The equality suite: the two cubic factorizations plus the seven
/// coefficient identities, each cleared to an integer polynomial.
pub fn equality_cases() -> Vec<IdentityCase> {
    let domain = (0.0, 1.0 / 6.0);
    let two_l_minus_1 = Poly::new(&[-1, 2]);
    let mut cases = Vec::new();
    cases.push(IdentityCase {
        name: "cubic-factorization",
        // R - 3x(1-2x)(5-6x)
        difference: p_r().sub(
            &Poly::new(&[0, 3])
                .mul(&Poly::new(&[1, -2]))
                .mul(&Poly::new(&[5, -6])),
        ),
        lhs: Box::new(r_apply),
        rhs: Box::new(|x| 3.0 * x * (1.0 - 2.0 * x) * (5.0 - 6.0 * x)),
        domain,
    });
    cases.push(IdentityCase {
        name: "three-r-minus-four",
        // 3R - 4 - (6x-1) f2
        difference: p_r()
            .scale(3)
            .sub(&Poly::new(&[4]))
            .sub(&Poly::new(&[-1, 6]).mul(&p_f2())),
        lhs: Box::new(|x| 3.0 * r_apply(x) - 4.0),
        rhs: Box::new(|x| (6.0 * x - 1.0) * crate::decimation::f2(x)),
        domain,
    });
    cases.push(IdentityCase {
        name: "gamma-equals-chi",
        // cross-multiplied: D (1 - c)
        difference: p_gamma_denom().mul(&Poly::new(&[1]).sub(&p_c())),
        lhs: Box::new(|x| co(x).gamma),
        rhs: Box::new(|x| co(x).chi),
        domain,
    });
    cases.push(IdentityCase {
        name: "one-plus-3alpha-minus-3chi",
        // (D + 3a - 3c)(2x-1) - (2x-3) D
        difference: p_gamma_denom()
            .add(&p_a().scale(3))
            .sub(&p_c().scale(3))
            .mul(&two_l_minus_1)
            .sub(&Poly::new(&[-3, 2]).mul(&p_gamma_denom())),
        lhs: Box::new(|x| {
            let c = co(x);
            1.0 + 3.0 * c.alpha - 3.0 * c.chi
        }),
        rhs: Box::new(|x| (2.0 * x - 3.0) / (2.0 * x - 1.0)),
        domain,
    });
    cases.push(IdentityCase {
        name: "one-plus-3beta-minus-3delta",
        // (D + 3b - 3d)(2x-1) - (2x-2) D
        difference: p_gamma_denom()
            .add(&p_b().scale(3))
            .sub(&p_d().scale(3))
            .mul(&two_l_minus_1)
            .sub(&Poly::new(&[-2, 2]).mul(&p_gamma_denom())),
        lhs: Box::new(|x| {
            let c = co(x);
            1.0 + 3.0 * c.beta - 3.0 * c.delta
        }),
        rhs: Box::new(|x| (2.0 * x - 2.0) / (2.0 * x - 1.0)),
        domain,
    });
    cases.push(IdentityCase {
        name: "one-minus-beta-minus-3delta",
        // (D - b - 3d) - 54 x (x-1)(1-2x)
        difference: p_gamma_denom().sub(&p_b()).sub(&p_d().scale(3)).sub(
            &Poly::new(&[0, 54])
                .mul(&Poly::new(&[-1, 1]))
                .mul(&Poly::new(&[1, -2])),
        ),
        lhs: Box::new(|x| {
            let c = co(x);
            1.0 - c.beta - 3.0 * c.delta
        }),
        rhs: Box::new(|x| {
            // 18 (x-1) R / (D (5-6x)) in its reduced form 18 x (x-1) / f2
            18.0 * x * (x - 1.0) / crate::decimation::f2(x)
        }),
        domain,
    });
    cases.push(IdentityCase {
        name: "one-minus-alpha-minus-3chi",
        // (D - a - 3c) + 3R
        difference: p_gamma_denom()
            .sub(&p_a())
            .sub(&p_c().scale(3))
            .add(&p_r().scale(3)),
        lhs: Box::new(|x| {
            let c = co(x);
            1.0 - c.alpha - 3.0 * c.chi
        }),
        rhs: Box::new(|x| -3.0 * r_apply(x) * co(x).chi),
        domain,
    });
    cases.push(IdentityCase {
        name: "beta-minus-delta",
        // (b - d)(3-6x) - D
        difference: p_b()
            .sub(&p_d())
            .mul(&Poly::new(&[3, -6]))
            .sub(&p_gamma_denom()),
        lhs: Box::new(|x| {
            let c = co(x);
            c.beta - c.delta
        }),
        rhs: Box::new(|x| 1.0 / (3.0 - 6.0 * x)),
        domain,
    });
    cases.push(IdentityCase {
        name: "alpha-minus-one",
        // (a - D) - 3(R - 1)
        difference: p_a()
            .sub(&p_gamma_denom())
            .sub(&p_r().sub(&Poly::new(&[1])).scale(3)),
        lhs: Box::new(|x| co(x).alpha - 1.0),
        rhs: Box::new(|x| 3.0 * (r_apply(x) - 1.0) * co(x).chi),
        domain,
    });
    cases
}

/// A deliberately broken case for exercising the failure path end to end.
pub fn injected_fault_case() -> IdentityCase {
    IdentityCase {
        name: "injected-fault",
        difference: Poly::new(&[0, 1]),
        lhs: Box::new(|x| x + 1e-3),
        rhs: Box::new(|x| x),
        domain: (0.0, 1.0 / 6.0),
    }
}

/// Checks one equality case: exact coefficient comparison plus a grid
/// residual scan.
pub fn check_identity(case: &IdentityCase, grid_size: usize) -> CheckReport {
    assert!(grid_size >= 2);
    let coeff_ok = case.difference.is_zero();
    let mut worst = 0.0f64;
    let mut worst_x = f64::NAN;
    for x in grid(case.domain, grid_size) {
        let dev = libm::fabs((case.lhs)(x) - (case.rhs)(x));
        if dev > worst {
            worst = dev;
            worst_x = x;
        }
    }
    let pass = coeff_ok && worst <= GRID_TOL;
    let details = if coeff_ok {
        format!("coefficients vanish; worst grid residual {worst:.3e} at {worst_x:.8}")
    } else {
        format!(
            "nonzero difference polynomial {:?}; worst grid residual {worst:.3e} at {worst_x:.8}",
            case.difference.coeffs()
        )
    };
    CheckReport {
        name: String::from(case.name),
        pass,
        details,
        witnesses: Vec::new(),
        extremes: vec![
            (String::from("worst_grid_residual"), worst),
            (String::from("worst_grid_lambda"), worst_x),
        ],
    }
}

/// Uniform grid over an open interval, nudged off both endpoints and
/// augmented with points `1e-8` of the span away from each endpoint.
fn grid(domain: (f64, f64), size: usize) -> Vec<f64> {
    let (lo, hi) = domain;
    let span = hi - lo;
    let mut points = Vec::with_capacity(size + 2);
    points.push(lo + 1e-8 * span);
    for i in 1..=size {
        points.push(lo + span * i as f64 / (size as f64 + 1.0));
    }
    points.push(hi - 1e-8 * span);
    points
}

fn scan_inequality(
    name: &'static str,
    domain: (f64, f64),
    include_hi: bool,
    grid_size: usize,
    check: impl Fn(f64) -> (bool, f64),
) -> CheckReport {
    let mut pass = true;
    let mut worst_x = f64::NAN;
    let mut observed_min = f64::INFINITY;
    let mut observed_max = f64::NEG_INFINITY;
    let mut points = grid(domain, grid_size);
    if include_hi {
        points.push(domain.1);
    }
    for x in points {
        let (ok, value) = check(x);
        observed_min = observed_min.min(value);
        observed_max = observed_max.max(value);
        if !ok && pass {
            pass = false;
            worst_x = x;
        }
    }
    CheckReport {
        name: String::from(name),
        pass,
        details: if pass {
            format!(
                "holds on {grid_size}-point grid over ({}, {}]",
                domain.0, domain.1
            )
        } else {
            format!("violated at lambda = {worst_x}")
        },
        witnesses: Vec::new(),
        extremes: vec![
            (String::from("observed_min"), observed_min),
            (String::from("observed_max"), observed_max),
        ],
    }
}

/// The four inequality families on their stated domains.
pub fn check_inequalities(grid_size: usize) -> Result<Vec<CheckReport>> {
    let lambda_1 = 1.0 / 6.0;
    // lambda_2 is computed, not assumed.
    let lambda_2 = branch_inverse(Branch::Phi1, lambda_1)?;
    let mut out = Vec::new();
    out.push(scan_inequality(
        "alpha-beta-in-unit-interval",
        (0.0, lambda_2),
        true,
        grid_size,
        |x| {
            let c = co(x);
            let ok = c.alpha > 0.0 && c.alpha < 1.0 && c.beta > 0.0 && c.beta < 1.0;
            (ok, c.alpha)
        },
    ));
    out.push(scan_inequality(
        "delta-in-unit-interval",
        (0.0, lambda_1),
        false,
        grid_size,
        |x| {
            let c = co(x);
            (c.delta > 0.0 && c.delta < 1.0, c.delta)
        },
    ));
    out.push(scan_inequality(
        "affine-sums-negative",
        (0.0, lambda_1),
        true,
        grid_size,
        |x| {
            let c = co(x);
            let s1 = 1.0 - c.alpha - 3.0 * c.chi;
            let s2 = 1.0 - c.beta - 3.0 * c.delta;
            (s1 < 0.0 && s2 < 0.0, s1.max(s2))
        },
    ));
    out.push(scan_inequality(
        "beta-gt-delta-and-alpha-gt-chi",
        (0.0, lambda_1),
        false,
        grid_size,
        |x| {
            let c = co(x);
            (c.beta > c.delta && c.alpha > c.chi, c.beta - c.delta)
        },
    ));
    out.push(scan_inequality(
        "chi-quadratic-bracket",
        (0.0, lambda_1),
        true,
        grid_size,
        |x| {
            let v = co(x).chi * (1.0 - 3.75 * x + 2.25 * x * x);
            (v > 0.08 && v < 0.22, v)
        },
    ));
    Ok(out)
}

/// The full identity suite.
pub fn verify_identities(grid_size: usize) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new("identities");
    for case in equality_cases() {
        suite.push(check_identity(&case, grid_size));
    }
    for rep in check_inequalities(grid_size)? {
        suite.push(rep);
    }
    // Sampled coefficient sanity at the actual sequence eigenvalues.
    let table = crate::decimation::LambdaTable::with_levels(6)?;
    let mut ok = true;
    for m in 2..=6 {
        let c = table.coefficients(m);
        ok &= c.alpha > 0.0 && c.alpha < 1.0;
        ok &= c.beta > 0.0 && c.beta < 1.0;
        ok &= c.delta > 0.0 && c.delta < 1.0;
    }
    let mut spot = CheckReport::passing("unit-interval-at-sequence-eigenvalues");
    spot.pass = ok;
    spot.details = String::from("alpha, beta, delta at lambda_2..lambda_6");
    suite.push(spot);
    Ok(suite)
}
