use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{poly_gcd, Poly};
use crate::error::{Error, Result};

/// Element of ℚ(u) in canonical form: `num/den` coprime, `den` monic,
/// zero stored as `0/1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// Field operation selector for [`rf_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFun {
    /// Reduces `num/den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.degree() == Some(0) {
            let inv = den.lead().unwrap().recip();
            return RatFun { num: num.scale(&inv), den: Poly::one() };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        let inv = den.lead().unwrap().recip();
        if inv.is_one() {
            RatFun { num, den }
        } else {
            RatFun { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn u() -> Self {
        Self::from_poly(Poly::u())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_poly(Poly::constant(q))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value if this is an element of ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.num.degree(), self.den.is_one()) {
            (None, _) => Some(BigRational::zero()),
            (Some(0), true) => Some(self.num.coeffs()[0].clone()),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Integer power; negative exponents fail on zero.
    pub fn powi(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::Pole(fmt_q(t)));
        }
        Ok(self.num.eval(t) / d)
    }
}

fn fmt_q(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rf_make(num: Poly, den: Poly) -> Result<RatFun> {
    RatFun::new(num, den)
}

pub fn rf_arith(a: &RatFun, b: &RatFun, op: RfOp) -> Result<RatFun> {
    Ok(match op {
        RfOp::Add => a + b,
        RfOp::Sub => a - b,
        RfOp::Mul => a * b,
        RfOp::Div => a.checked_div(b)?,
    })
}

pub fn rf_eval(a: &RatFun, point: &BigRational) -> Result<BigRational> {
    a.eval(point)
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFun::from_poly(&self.num + &rhs.num);
            }
            return RatFun::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::reduce(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        RatFun::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $f(self, rhs: RatFun) -> RatFun {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $f(self, rhs: &RatFun) -> RatFun {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> Self {
        RatFun::from_int(n)
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn make_examples() {
        let a = rf_make(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(a, RatFun::from_poly(p(&[1, 1])));
        let b = rf_make(p(&[0, 2]), p(&[2])).unwrap();
        assert_eq!(b, RatFun::u());
        let c = rf_make(p(&[1, 1]), p(&[0, -1, 1])).unwrap();
        assert_eq!(c.num(), &p(&[1, 1]));
        assert_eq!(c.den(), &p(&[0, -1, 1]));
        assert_eq!(rf_make(p(&[1]), Poly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn monic_denominator_and_zero() {
        let a = rf_make(p(&[3]), p(&[0, -2])).unwrap();
        assert_eq!(a.den(), &p(&[0, 1]));
        assert_eq!(a.num(), &Poly::constant(q(-3, 2)));
        let z = rf_make(Poly::zero(), p(&[5, 7])).unwrap();
        assert_eq!(z, RatFun::zero());
        assert!(z.den().is_one());
    }

    #[test]
    fn arith_examples() {
        let u2 = RatFun::u().pow(2);
        let m = RatFun::one().checked_div(&u2).unwrap();
        // (-1/u^2)(-u^2) = 1
        assert!(rf_arith(&-&m, &-&u2, RfOp::Mul).unwrap().is_one());
        let dashed = rf_make(p(&[1, 1]), p(&[0, -1, 1])).unwrap();
        let back = dashed.inv().unwrap();
        assert!(rf_arith(&-&dashed, &-&back, RfOp::Mul).unwrap().is_one());
        let s = rf_arith(&u2, &RatFun::from_int(-1), RfOp::Add).unwrap();
        assert_eq!(s, RatFun::from_poly(p(&[-1, 0, 1])));
        assert_eq!(rf_arith(&u2, &RatFun::zero(), RfOp::Div), Err(Error::DivisionByZero));
    }

    #[test]
    fn eval_examples() {
        let a = rf_make(p(&[0, -1, 1]), p(&[1, 1])).unwrap();
        assert_eq!(rf_eval(&a, &q(3, 1)).unwrap(), q(3, 2));
        let b = rf_make(p(&[2, 1]), p(&[3, 1])).unwrap();
        assert_eq!(b.eval(&q(0, 1)).unwrap(), q(2, 3));
        let pole = rf_make(p(&[1]), p(&[-1, 1])).unwrap();
        assert!(matches!(pole.eval(&q(1, 1)), Err(Error::Pole(_))));
    }

    #[test]
    fn display_forms() {
        let a = rf_make(p(&[0, -1, 1]), p(&[1, 1])).unwrap();
        assert_eq!(a.to_string(), "(u^2-u)/(u+1)");
        let b = rf_make(p(&[-1]), p(&[0, 0, 1])).unwrap();
        assert_eq!(b.to_string(), "-1/u^2");
        assert_eq!(RatFun::from_rational(q(3, 2)).to_string(), "3/2");
    }
}
