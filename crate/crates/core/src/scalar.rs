//! Exact scalars: arbitrary-precision rationals and elements of cyclotomic
//! fields `Q(zeta_m)`.
//!
//! A cyclotomic element is stored in the power basis `1, zeta, ..., zeta^(phi(m)-1)`
//! and is always reduced modulo the m-th cyclotomic polynomial. Elements whose
//! non-constant coordinates vanish are collapsed to [`Scalar::Rational`], so
//! equality is structural within one order.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The field `Q(zeta_m)` with its defining polynomial.
#[derive(Debug)]
struct CyclotomicField {
    order: u32,
    /// Monic cyclotomic polynomial, lowest degree first; length `phi(m) + 1`.
    modulus: Vec<BigRational>,
}

impl CyclotomicField {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduce a polynomial modulo the cyclotomic polynomial.
    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.degree();
        if poly.len() > deg {
            for top in (deg..poly.len()).rev() {
                let c = std::mem::take(&mut poly[top]);
                if c.is_zero() {
                    continue;
                }
                for j in 0..deg {
                    if !self.modulus[j].is_zero() {
                        let idx = top - deg + j;
                        poly[idx] = &poly[idx] - &c * &self.modulus[j];
                    }
                }
            }
            poly.truncate(deg);
        }
        poly.resize(deg, BigRational::zero());
        poly
    }
}

fn field(order: u32) -> Arc<CyclotomicField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&order) {
        return f.clone();
    }
    let f = Arc::new(CyclotomicField {
        order,
        modulus: cyclotomic_polynomial(order),
    });
    cache.lock().unwrap().insert(order, f.clone());
    f
}

/// Coefficients (lowest degree first) of the m-th cyclotomic polynomial,
/// computed as `(x^m - 1) / prod_{d | m, d < m} Phi_d(x)`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigRational> {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut num = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let qlen = rem.len() - dd;
    let mut quot = vec![BigRational::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = &rem[i + dd] / &lead;
        if !c.is_zero() {
            for j in 0..=dd {
                rem[i + j] = &rem[i + j] - &c * &den[j];
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u32
}

/// Element of `Q(zeta_m)` with at least one non-rational coordinate.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Scalar::Cyclotomic(self.clone()))
    }
}

/// An exact field element.
#[derive(Clone)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` in lowest terms. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// Build an element of `Q(zeta_m)` from power-basis coordinates of any
    /// length; the input is reduced modulo the cyclotomic polynomial.
    pub fn cyclotomic(order: u32, coeffs: Vec<BigRational>) -> Self {
        if order <= 2 {
            // zeta_1 = 1, zeta_2 = -1
            let z = if order == 1 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            let mut acc = BigRational::zero();
            let mut pow = BigRational::one();
            for c in coeffs {
                acc += c * &pow;
                pow *= &z;
            }
            return Scalar::Rational(acc);
        }
        let f = field(order);
        let coeffs = f.reduce(coeffs);
        Self::normalize(f, coeffs)
    }

    fn normalize(field: Arc<CyclotomicField>, coeffs: Vec<BigRational>) -> Self {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Scalar::Rational(coeffs.into_iter().next().unwrap_or_else(BigRational::zero))
        } else {
            Scalar::Cyclotomic(Cyclotomic { field, coeffs })
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Cyclotomic(_) => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic(_) => None,
        }
    }

    /// Cyclotomic order of the representation (1 for rationals).
    pub fn order(&self) -> u32 {
        match self {
            Scalar::Rational(_) => 1,
            Scalar::Cyclotomic(c) => c.order(),
        }
    }

    fn coords_in(&self, target: &Arc<CyclotomicField>) -> Vec<BigRational> {
        let deg = target.degree();
        match self {
            Scalar::Rational(r) => {
                let mut v = vec![BigRational::zero(); deg];
                v[0] = r.clone();
                v
            }
            Scalar::Cyclotomic(c) => {
                if c.field.order == target.order {
                    return c.coeffs.clone();
                }
                let step = (target.order / c.field.order) as usize;
                let mut poly = vec![BigRational::zero(); (c.coeffs.len() - 1) * step + 1];
                for (i, a) in c.coeffs.iter().enumerate() {
                    poly[i * step] = a.clone();
                }
                target.reduce(poly)
            }
        }
    }

    /// Common field for a binary operation, or `None` when both are rational.
    fn common_field(a: &Scalar, b: &Scalar) -> Result<Option<Arc<CyclotomicField>>> {
        match (a, b) {
            (Scalar::Rational(_), Scalar::Rational(_)) => Ok(None),
            (Scalar::Cyclotomic(c), Scalar::Rational(_)) | (Scalar::Rational(_), Scalar::Cyclotomic(c)) => {
                Ok(Some(c.field.clone()))
            }
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => {
                let (m1, m2) = (x.field.order, y.field.order);
                if m2 % m1 == 0 {
                    Ok(Some(y.field.clone()))
                } else if m1 % m2 == 0 {
                    Ok(Some(x.field.clone()))
                } else {
                    Err(Error::IncompatibleCyclotomicOrders(m1, m2))
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match Self::common_field(self, other)? {
            None => Ok(Scalar::Rational(self.rat() + other.rat())),
            Some(f) => {
                let a = self.coords_in(&f);
                let b = other.coords_in(&f);
                let s = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                Ok(Self::normalize(f, s))
            }
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match Self::common_field(self, other)? {
            None => Ok(Scalar::Rational(self.rat() * other.rat())),
            Some(f) => {
                if let Scalar::Rational(r) = self {
                    return Ok(other.scale_rational(r, &f));
                }
                if let Scalar::Rational(r) = other {
                    return Ok(self.scale_rational(r, &f));
                }
                let a = self.coords_in(&f);
                let b = other.coords_in(&f);
                let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                let reduced = f.reduce(prod);
                Ok(Self::normalize(f, reduced))
            }
        }
    }

    fn scale_rational(&self, r: &BigRational, f: &Arc<CyclotomicField>) -> Scalar {
        let coords = self.coords_in(f).into_iter().map(|c| c * r).collect();
        Self::normalize(f.clone(), coords)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Cyclotomic(c) => {
                // Solve (multiplication by c) * u = 1 in the power basis.
                let f = &c.field;
                let deg = f.degree();
                let mut cols = Vec::with_capacity(deg);
                let mut basis = vec![BigRational::zero(); deg];
                for j in 0..deg {
                    basis.iter_mut().for_each(|b| *b = BigRational::zero());
                    basis[j] = BigRational::one();
                    let mut prod = vec![BigRational::zero(); 2 * deg - 1];
                    for (i, x) in c.coeffs.iter().enumerate() {
                        prod[i + j] += x;
                    }
                    cols.push(f.reduce(prod));
                }
                let mut rhs = vec![BigRational::zero(); deg];
                rhs[0] = BigRational::one();
                let sol = solve_dense(deg, |i, j| cols[j][i].clone(), rhs).ok_or(Error::DivisionByZero)?;
                Ok(Self::normalize(f.clone(), sol))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    fn rat(&self) -> &BigRational {
        match self {
            Scalar::Rational(r) => r,
            Scalar::Cyclotomic(_) => unreachable!("rational expected"),
        }
    }
}

/// Gaussian elimination for a small dense square system over Q.
fn solve_dense(
    n: usize,
    entry: impl Fn(usize, usize) -> BigRational,
    rhs: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| entry(i, j)).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot).skip(col) {
                    *x = &*x - &(p * &factor);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// A primitive m-th root of unity `zeta_m`.
pub fn primitive_root(m: u32) -> Scalar {
    assert!(m >= 1, "order must be positive");
    match m {
        1 => Scalar::one(),
        2 => Scalar::from_int(-1),
        _ => Scalar::cyclotomic(m, vec![BigRational::zero(), BigRational::one()]),
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                let (m1, m2) = (a.order(), b.order());
                if m1 == m2 {
                    return a.coeffs == b.coeffs;
                }
                let f = field(m1.lcm(&m2));
                self.coords_in(&f) == other.coords_in(&f)
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&fmt_rational(r)),
            Scalar::Cyclotomic(c) => {
                let parts: Vec<String> = c.coeffs.iter().map(fmt_rational).collect();
                write!(f, "[{}]@zeta_{}", parts.join(","), c.order())
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((body, order)) = s.split_once("@zeta_") {
            let order: u32 = order
                .trim()
                .parse()
                .map_err(|_| Error::parse("scalar", format!("bad cyclotomic order in {s:?}")))?;
            if order == 0 {
                return Err(Error::parse("scalar", "cyclotomic order must be positive"));
            }
            let inner = body
                .trim()
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::parse("scalar", format!("expected [c0,...] in {s:?}")))?;
            let coeffs = inner
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| parse_rational(p).ok_or_else(|| Error::parse("scalar", format!("bad coefficient {p:?}"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Scalar::cyclotomic(order, coeffs));
        }
        parse_rational(s)
            .map(Scalar::Rational)
            .ok_or_else(|| Error::parse("scalar", format!("cannot parse {s:?} as p/q")))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                field: c.field.clone(),
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            other => -&other,
        }
    }
}

// The operator impls panic on incompatible cyclotomic orders and on division
// by zero; the `checked_*` methods report these as errors.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident, $fast:tt) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) {
                    return Scalar::Rational(a $fast b);
                }
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl Scalar {
    /// Absolute value for rationals; used only by display helpers.
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(s("1/3") + s("1/6"), s("1/2"));
        assert_eq!(s("2/7") / s("2/7"), Scalar::one());
        assert_eq!(s("4/6").to_string(), "2/3");
        assert_eq!(s("-3").to_string(), "-3");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = primitive_root(4);
        assert_eq!(&i * &i, Scalar::from_int(-1));
        assert!((&i * &i).is_rational());
    }

    #[test]
    fn small_roots() {
        assert_eq!(primitive_root(1), Scalar::one());
        assert_eq!(primitive_root(2), Scalar::from_int(-1));
    }

    #[test]
    fn cyclotomic_polynomials() {
        let c: Vec<String> = cyclotomic_polynomial(6).iter().map(|x| x.to_string()).collect();
        assert_eq!(c, ["1", "-1", "1"]);
        assert_eq!(cyclotomic_polynomial(12).len() as u32 - 1, euler_phi(12));
    }

    #[test]
    fn primitive_roots_have_exact_order() {
        for m in 1..=12u32 {
            let z = primitive_root(m);
            let mut p = Scalar::one();
            for j in 1..=m {
                p = &p * &z;
                if j < m {
                    assert!(!p.is_one(), "zeta_{m}^{j} = 1");
                } else {
                    assert!(p.is_one(), "zeta_{m}^{m} != 1");
                }
            }
        }
    }

    #[test]
    fn promotion_between_dividing_orders() {
        let z4 = primitive_root(4);
        let z8 = primitive_root(8);
        assert_eq!(&z8 * &z8, z4);
        assert_eq!((&z8 * &z8).order(), 8);
        let z3 = primitive_root(3);
        assert_eq!(z3.checked_add(&z4), Err(Error::IncompatibleCyclotomicOrders(3, 4)));
    }

    #[test]
    fn cyclotomic_inverse() {
        let z5 = primitive_root(5);
        let x = &z5 + &Scalar::from_int(2);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Scalar::one());
    }

    #[test]
    fn string_round_trip() {
        for text in ["0", "-7/3", "[1,2]@zeta_3", "[0,1/2,0,-1]@zeta_5"] {
            let v = s(text);
            assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v);
        }
        assert_eq!(s("[0,1]@zeta_4").to_string(), "[0,1]@zeta_4");
        assert!("1/0".parse::<Scalar>().is_err());
    }
}
