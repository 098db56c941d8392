//! Exact arithmetic: rationals (backed by `num-rational`), dense polynomials
//! over ℚ, and the rational function field ℚ(u).

mod parse;
mod poly;
mod ratfun;

pub use num_rational::BigRational as Rational;
pub use parse::parse_ratfun;
pub use poly::{poly_gcd, poly_lcm, Poly};
pub use ratfun::{rf_arith, rf_eval, rf_make, RatFun, RfOp};

/// Small-integer rational, mostly for tests and builders.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `a`, `-a`, or `a/b` with integer `a`, `b`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() || t.contains(char::is_whitespace) {
        return None;
    }
    t.parse::<Rational>().ok()
}
