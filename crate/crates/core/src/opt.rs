//! The inducibility objective and its maximization.
//!
//! For `k > l` the objective is
//!
//! ```text
//! F(a, d) = a (1-a)^m d^k (1-d)^l + c (1-a) a^m (1-d),   c = (k-1)^(k-1) l^l / (m-1)^(m-1)
//! ```
//!
//! maximized over `[0, 1/2] x [0, k/m]`; for `k = l` it is the one-variable
//! `2^(-2k) (a (1-a)^(2k) + (1-a) a^(2k))` over `[0, 1/2]`. The maximum is the
//! supremum of `s(G)`, and multiplying by `(m+1)!/(k! l!)` gives the
//! inducibility.

use crate::error::{Error, Result};
use crate::rational::{int, pow, to_f64, Rational};
use crate::star::StarSpec;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

const GRID: usize = 1024;
const WIDTH: f64 = 1e-14;
const MAX_SWEEPS: usize = 10_000;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptResult {
    pub k: usize,
    pub l: usize,
    pub alpha_star: f64,
    /// `None` when `k = l`.
    pub d_star: Option<f64>,
    pub opt_value: f64,
    pub inducibility: f64,
    /// Objective improvement of the last refinement sweep.
    pub tol: f64,
    /// The formula is only proven for `m >= 6`.
    pub conjectural: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaylorApprox {
    pub alpha_hat: f64,
    pub d_hat: f64,
    pub value_hat: f64,
}

fn check_unit(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: x,
            domain: "[0, 1]",
        })
    }
}

/// Concave, non-decreasing majorant of `x^k (1-x)^l`: the tangent line
/// through the origin up to `(k-1)/(m-1)`, the polynomial itself up to `k/m`,
/// then constant at its maximum `k^k l^l / m^m`.
pub fn f_majorant(x: f64, spec: &StarSpec) -> Result<f64> {
    check_unit("x", x)?;
    Ok(Majorant::new(spec).eval(x))
}

/// [`f_majorant`] with its constants evaluated once.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Majorant {
    k: i32,
    l: i32,
    lo: f64,
    hi: f64,
    slope: f64,
    top: f64,
}

impl Majorant {
    pub(crate) fn new(spec: &StarSpec) -> Self {
        let (k, l, m) = (spec.k(), spec.l(), spec.m());
        Majorant {
            k: k as i32,
            l: l as i32,
            lo: (k - 1) as f64 / (m - 1) as f64,
            hi: k as f64 / m as f64,
            slope: to_f64(&spec.tangent_slope()),
            top: to_f64(&spec.lambda0()),
        }
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        if x <= self.lo {
            self.slope * x
        } else if x <= self.hi {
            x.powi(self.k) * (1.0 - x).powi(self.l)
        } else {
            self.top
        }
    }
}

/// `F(a, d)` for `k > l`.
pub fn objective_f(alpha: f64, d: f64, spec: &StarSpec) -> Result<f64> {
    if spec.is_symmetric() {
        return Err(Error::WrongBranch("objective_f", "k > l"));
    }
    check_unit("alpha", alpha)?;
    check_unit("d", d)?;
    Ok(eval_f(alpha, d, &Coeffs::new(spec)))
}

/// The `k = l` objective, including the `2^(-2k)` factor.
pub fn objective_sym(alpha: f64, spec: &StarSpec) -> Result<f64> {
    if !spec.is_symmetric() {
        return Err(Error::WrongBranch("objective_sym", "k = l"));
    }
    check_unit("alpha", alpha)?;
    Ok(eval_sym(alpha, spec.m()))
}

/// `F(a, d)` in exact arithmetic.
pub fn objective_f_exact(alpha: &Rational, d: &Rational, spec: &StarSpec) -> Result<Rational> {
    if spec.is_symmetric() {
        return Err(Error::WrongBranch("objective_f_exact", "k > l"));
    }
    let (k, l, m) = (spec.k(), spec.l(), spec.m());
    let one = int(1);
    let a1 = &one - alpha;
    let d1 = &one - d;
    let first = product_unreduced(&[alpha.clone(), pow(&a1, m), pow(d, k), pow(&d1, l)]);
    let second = product_unreduced(&[spec.tangent_slope(), a1, pow(alpha, m), d1]);
    Ok(sum_once(&first, &second))
}

// Multiplies without intermediate gcds; the caller reduces once.
fn product_unreduced(fs: &[Rational]) -> Rational {
    let (mut n, mut d) = (BigInt::from(1), BigInt::from(1));
    for f in fs {
        n *= f.numer();
        d *= f.denom();
    }
    Rational::new_raw(n, d)
}

fn sum_once(a: &Rational, b: &Rational) -> Rational {
    Rational::new(
        a.numer() * b.denom() + b.numer() * a.denom(),
        a.denom() * b.denom(),
    )
}

/// The `k = l` objective in exact arithmetic.
pub fn objective_sym_exact(alpha: &Rational, spec: &StarSpec) -> Result<Rational> {
    if !spec.is_symmetric() {
        return Err(Error::WrongBranch("objective_sym_exact", "k = l"));
    }
    let m = spec.m();
    let a1 = int(1) - alpha;
    let two_m = Rational::from_integer(num_traits::pow(BigInt::from(2), m));
    Ok((alpha * pow(&a1, m) + &a1 * pow(alpha, m)) / two_m)
}

struct Coeffs {
    k: i32,
    l: i32,
    m: i32,
    c: f64,
}

impl Coeffs {
    fn new(spec: &StarSpec) -> Self {
        Coeffs {
            k: spec.k() as i32,
            l: spec.l() as i32,
            m: spec.m() as i32,
            c: to_f64(&spec.tangent_slope()),
        }
    }
}

fn eval_f(a: f64, d: f64, q: &Coeffs) -> f64 {
    a * (1.0 - a).powi(q.m) * d.powi(q.k) * (1.0 - d).powi(q.l)
        + q.c * (1.0 - a) * a.powi(q.m) * (1.0 - d)
}

fn grad_f(a: f64, d: f64, q: &Coeffs) -> (f64, f64) {
    let m = q.m as f64;
    let dk = d.powi(q.k) * (1.0 - d).powi(q.l);
    let da = ((1.0 - a).powi(q.m) - m * a * (1.0 - a).powi(q.m - 1)) * dk
        + q.c * (1.0 - d) * (m * a.powi(q.m - 1) * (1.0 - a) - a.powi(q.m));
    let dd = a
        * (1.0 - a).powi(q.m)
        * (q.k as f64 * d.powi(q.k - 1) * (1.0 - d).powi(q.l)
            - q.l as f64 * d.powi(q.k) * (1.0 - d).powi(q.l - 1))
        - q.c * (1.0 - a) * a.powi(q.m);
    (da, dd)
}

fn eval_sym(a: f64, m: usize) -> f64 {
    let mi = m as i32;
    (a * (1.0 - a).powi(mi) + (1.0 - a) * a.powi(mi)) / 2f64.powi(mi)
}

fn grad_sym(a: f64, m: usize) -> f64 {
    let mi = m as i32;
    let mf = m as f64;
    ((1.0 - a).powi(mi) - mf * a * (1.0 - a).powi(mi - 1) - a.powi(mi)
        + mf * (1.0 - a) * a.powi(mi - 1))
        / 2f64.powi(mi)
}

/// Golden-section maximization of a unimodal `f` on `[lo, hi]`, followed by
/// bisection on the derivative when it changes sign around the result.
fn line_max(f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > WIDTH {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
        if x1 >= x2 {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    polish_root(&df, x, lo.min(x - 1e-6), hi.max(x + 1e-6))
        .filter(|r| f(*r) >= f(x))
        .unwrap_or(x)
}

fn polish_root(df: impl Fn(f64) -> f64, x: f64, lo: f64, hi: f64) -> Option<f64> {
    let (mut lo, mut hi) = (lo, hi);
    if !(df(lo) > 0.0 && df(hi) < 0.0) || !(lo <= x && x <= hi) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if df(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Maximizes the objective of the matching branch.
///
/// A 1024-point grid per axis brackets the global maximum; coordinate-wise
/// golden-section refinement with derivative bisection then runs until the
/// coordinates move less than `1e-14` and the objective gains less than
/// `tol`.
pub fn solve_opt(spec: &StarSpec, tol: f64) -> Result<OptResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain {
            name: "tol",
            value: tol,
            domain: "(0, inf)",
        });
    }
    if spec.k() == 1 && spec.l() == 1 {
        return Err(Error::PathStar);
    }
    let prefactor = to_f64(&spec.prefactor());
    let conjectural = spec.m() < 6;
    if spec.is_symmetric() {
        let m = spec.m();
        let h = 0.5 / (GRID - 1) as f64;
        let best = (0..GRID)
            .map(|i| (i, eval_sym(i as f64 * h, m)))
            .fold((0, f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });
        let lo = (best.0 as f64 - 1.0).max(0.0) * h;
        let hi = ((best.0 + 1) as f64 * h).min(0.5);
        let a = line_max(|x| eval_sym(x, m), |x| grad_sym(x, m), lo, hi);
        let value = eval_sym(a, m);
        return Ok(OptResult {
            k: spec.k(),
            l: spec.l(),
            alpha_star: a,
            d_star: None,
            opt_value: value,
            inducibility: prefactor * value,
            tol: (value - best.1).abs().min(tol),
            conjectural,
        });
    }

    let q = Coeffs::new(spec);
    let d_max = spec.k() as f64 / spec.m() as f64;
    let ha = 0.5 / (GRID - 1) as f64;
    let hd = d_max / (GRID - 1) as f64;
    let (bi, bj, _) = (0..GRID)
        .into_par_iter()
        .map(|i| {
            let a = i as f64 * ha;
            (0..GRID)
                .map(|j| (i, j, eval_f(a, j as f64 * hd, &q)))
                .fold((0, 0, f64::MIN), |acc, x| if x.2 > acc.2 { x } else { acc })
        })
        .reduce(
            || (0, 0, f64::MIN),
            |x, y| {
                if y.2 > x.2 || (y.2 == x.2 && (y.0, y.1) < (x.0, x.1)) {
                    y
                } else {
                    x
                }
            },
        );

    let (mut a, mut d) = (bi as f64 * ha, bj as f64 * hd);
    // second start at the expansion point (1/(m+1), k/m)
    let (a0, d0) = (1.0 / (spec.m() + 1) as f64, d_max);
    if eval_f(a0, d0, &q) > eval_f(a, d, &q) {
        (a, d) = (a0, d0);
    }
    let mut gain = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let before = eval_f(a, d, &q);
        let na = line_max(
            |x| eval_f(x, d, &q),
            |x| grad_f(x, d, &q).0,
            (a - 2.0 * ha).max(0.0),
            (a + 2.0 * ha).min(0.5),
        );
        let nd = line_max(
            |y| eval_f(na, y, &q),
            |y| grad_f(na, y, &q).1,
            (d - 2.0 * hd).max(0.0),
            (d + 2.0 * hd).min(d_max),
        );
        let after = eval_f(na, nd, &q);
        let moved = (na - a).abs().max((nd - d).abs());
        if after >= before {
            gain = after - before;
            a = na;
            d = nd;
        } else {
            gain = 0.0;
        }
        if moved < WIDTH && gain < tol {
            break;
        }
    }
    let value = eval_f(a, d, &q);
    Ok(OptResult {
        k: spec.k(),
        l: spec.l(),
        alpha_star: a,
        d_star: Some(d),
        opt_value: value,
        inducibility: prefactor * value,
        tol: gain,
        conjectural,
    })
}

/// Leading-order expansion of the maximizer and the maximum around
/// `(1/(m+1), k/m)`, with the higher-order terms dropped.
pub fn taylor_approx(spec: &StarSpec) -> Result<TaylorApprox> {
    if spec.is_symmetric() {
        return Err(Error::WrongBranch("taylor_approx", "k > l"));
    }
    let (k, l, m) = (spec.k() as f64, spec.l() as f64, spec.m() as f64);
    let mi = spec.m() as i32;
    let alpha_hat = (1.0 + l / (k * m.powi(mi - 2))) / (m + 1.0);
    let d_hat = (k / m) * (1.0 - l / (k * m.powi(mi)));
    let lead = to_f64(&spec.lambda0()) * (m / (m + 1.0)).powi(mi) / (m + 1.0);
    // c * l / (m+1)^(m+1), the second term of F at the expansion point
    let second = to_f64(&spec.tangent_slope()) * l / (m + 1.0).powi(mi + 1);
    let value_hat = lead + second * (1.0 + l / (2.0 * k * m.powi(mi - 3)));
    Ok(TaylorApprox {
        alpha_hat,
        d_hat,
        value_hat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn spec(k: usize, l: usize) -> StarSpec {
        StarSpec::new(k, l).unwrap()
    }

    #[test]
    fn majorant_values() {
        let s = spec(2, 1);
        assert!((f_majorant(0.5, &s).unwrap() - 0.125).abs() < 1e-15);
        assert!((f_majorant(1.0, &s).unwrap() - 4.0 / 27.0).abs() < 1e-15);
        assert_eq!(f_majorant(0.0, &s).unwrap(), 0.0);
        assert!(f_majorant(1.5, &s).is_err());
        assert!(f_majorant(-0.1, &s).is_err());
    }

    #[test]
    fn objective_values() {
        let s = spec(2, 1);
        let v = objective_f(0.3, 9.0 / 14.0, &s).unwrap();
        assert!((v - 0.016875).abs() < 1e-15);
        assert_eq!(objective_f(0.0, 0.4, &s).unwrap(), 0.0);
        assert_eq!(objective_f(0.2, 1.0, &s).unwrap(), 0.0);
        assert!(matches!(
            objective_f(0.2, 0.5, &spec(3, 3)),
            Err(Error::WrongBranch(..))
        ));

        let e = objective_f_exact(&frac(3, 10), &frac(9, 14), &s).unwrap();
        assert_eq!(e * int(12), frac(81, 400));

        let s33 = spec(3, 3);
        assert_eq!(objective_sym(0.0, &s33).unwrap(), 0.0);
        assert_eq!(objective_sym(0.5, &s33).unwrap(), 2f64.powi(-12));
        assert_eq!(
            objective_sym_exact(&frac(1, 2), &s33).unwrap(),
            frac(1, 4096)
        );
        assert!(objective_sym(1.0 / 7.0, &s33).unwrap() > objective_sym(1.0 / 6.0, &s33).unwrap());
        assert!(objective_sym(0.2, &s).is_err());
    }

    #[test]
    fn gradients_match_central_differences() {
        for (k, l) in [(2, 1), (4, 2), (7, 3)] {
            let q = Coeffs::new(&spec(k, l));
            for &(a, d) in &[(0.1, 0.3), (0.25, 0.6), (0.4, 0.1)] {
                let h = 1e-6;
                let (ga, gd) = grad_f(a, d, &q);
                let na = (eval_f(a + h, d, &q) - eval_f(a - h, d, &q)) / (2.0 * h);
                let nd = (eval_f(a, d + h, &q) - eval_f(a, d - h, &q)) / (2.0 * h);
                assert!((ga - na).abs() < 1e-8 && (gd - nd).abs() < 1e-8);
            }
        }
        let h = 1e-6;
        let g = grad_sym(0.2, 6);
        assert!((g - (eval_sym(0.2 + h, 6) - eval_sym(0.2 - h, 6)) / (2.0 * h)).abs() < 1e-9);
    }

    #[test]
    fn rejected_inputs() {
        assert!(matches!(
            solve_opt(&spec(1, 1), 1e-12),
            Err(Error::PathStar)
        ));
        assert!(solve_opt(&spec(2, 1), 0.0).is_err());
        assert!(taylor_approx(&spec(3, 3)).is_err());
    }

    #[test]
    fn conjectural_flag() {
        assert!(solve_opt(&spec(2, 1), 1e-12).unwrap().conjectural);
        assert!(solve_opt(&spec(3, 2), 1e-12).unwrap().conjectural);
        assert!(!solve_opt(&spec(5, 1), 1e-12).unwrap().conjectural);
        assert!(!solve_opt(&spec(3, 3), 1e-12).unwrap().conjectural);
    }

    #[test]
    fn s21_maximum() {
        let r = solve_opt(&spec(2, 1), 1e-12).unwrap();
        assert!((r.inducibility - 0.2025).abs() < 1e-9);
        assert!((r.alpha_star - 0.3).abs() < 1e-6);
        assert!((r.d_star.unwrap() - 9.0 / 14.0).abs() < 1e-6);
    }

    #[test]
    fn grid_oracle_4_2() {
        let s = spec(4, 2);
        let r = solve_opt(&s, 1e-12).unwrap();
        // F written out for (4,2): c = 3^3 2^2 / 5^5
        let c = 108.0 / 3125.0;
        let f = |a: f64, d: f64| {
            a * (1.0 - a).powi(6) * d.powi(4) * (1.0 - d).powi(2)
                + c * (1.0 - a) * a.powi(6) * (1.0 - d)
        };
        let best = (0..=5000usize)
            .into_par_iter()
            .map(|i| {
                let a = i as f64 * 1e-4;
                (0..=6667usize).fold((a, 0.0, f64::MIN), |b, j| {
                    let d = j as f64 * 1e-4;
                    let v = f(a, d);
                    if v > b.2 {
                        (a, d, v)
                    } else {
                        b
                    }
                })
            })
            .reduce(
                || (0.0, 0.0, f64::MIN),
                |x, y| {
                    if y.2 > x.2 || (y.2 == x.2 && y.0 < x.0) {
                        y
                    } else {
                        x
                    }
                },
            );
        assert!((r.alpha_star - best.0).abs() <= 1e-4);
        assert!((r.d_star.unwrap() - best.1).abs() <= 1e-4);
        assert!(r.opt_value >= best.2);
        assert!((objective_f(best.0, best.1, &s).unwrap() - best.2).abs() <= 1e-18);
    }

    #[test]
    fn grid_oracle_3_3() {
        let s = spec(3, 3);
        let r = solve_opt(&s, 1e-12).unwrap();
        let (mut ba, mut bv) = (0.0, f64::MIN);
        for i in 0..=500_000 {
            let a = i as f64 * 1e-6;
            let v = objective_sym(a, &s).unwrap();
            if v > bv {
                ba = a;
                bv = v;
            }
        }
        assert!((r.alpha_star - ba).abs() <= 1e-6);
        assert!(r.opt_value >= bv);
        assert!(r.d_star.is_none());
    }

    #[test]
    fn taylor_expansions() {
        let s = spec(4, 2);
        let t = taylor_approx(&s).unwrap();
        let r = solve_opt(&s, 1e-12).unwrap();
        assert!((t.value_hat - r.opt_value).abs() / r.opt_value <= 1e-7);

        let t = taylor_approx(&spec(5, 1)).unwrap();
        assert!(t.alpha_hat > 1.0 / 7.0 && t.alpha_hat < 1.01 / 7.0);

        let s = spec(10, 3);
        let t = taylor_approx(&s).unwrap();
        let r = solve_opt(&s, 1e-12).unwrap();
        assert!((t.alpha_hat - r.alpha_star).abs() <= 1e-6);
    }

    #[test]
    fn beats_anchor_point() {
        for k in 2..9 {
            for l in 1..k {
                let s = spec(k, l);
                let m = s.m() as f64;
                let r = solve_opt(&s, 1e-12).unwrap();
                let anchor = objective_f(1.0 / (m + 1.0), k as f64 / m, &s).unwrap();
                assert!(r.opt_value >= anchor, "{k} {l} {:?} {anchor}", r);
            }
        }
    }
}
