use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, rpow, to_f64, Rational};
use super::ExactError;

/// Sparse Laurent polynomial in `z_1..z_nvars` with exact rational coefficients.
///
/// Variables are addressed 0-based throughout this type. Terms are kept in a
/// `BTreeMap`, so iteration (and serialization) is lexicographic in the exponent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

/// Right-hand side of a substitution `z_i ↦ ...`.
#[derive(Clone, Debug)]
pub enum Subst {
    /// A nonzero rational value; the variable disappears.
    Value(Rational),
    /// `coeff · z^exp`, e.g. `z_i ↦ z_i⁻¹` or `z_i ↦ ξ z_i`.
    Monomial { coeff: Rational, exp: Vec<i32> },
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Vec<i32>, c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// The variable `z_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = e;
        Self::monomial(exp, Rational::one())
    }

    /// Builds from raw terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(ExactError::Dimension {
                    left: nvars,
                    right: exp.len(),
                });
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<i32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exp: &[i32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_dims(&self, other: &Self) -> Result<(), ExactError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(ExactError::Dimension {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_dims(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_dims(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_dims(other)?;
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    fn map_exponents(&self, f: impl Fn(&mut Vec<i32>)) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            f(&mut e);
            r.add_term(e, c.clone());
        }
        r
    }

    /// `z_i ↔ z_j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        self.map_exponents(|e| e.swap(i, j))
    }

    /// `z_i ↦ z_i⁻¹`.
    pub fn invert_var(&self, i: usize) -> Self {
        self.map_exponents(|e| e[i] = -e[i])
    }

    /// `z_i ↦ c·z_i`.
    pub fn scale_var(&self, i: usize, c: &Rational) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x * rpow(c, e[i] as i64));
        }
        r
    }

    /// `z ↦ c·z` in every variable.
    pub fn scale_all_vars(&self, c: &Rational) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            let deg: i64 = e.iter().map(|&v| v as i64).sum();
            r.add_term(e.clone(), x * rpow(c, deg));
        }
        r
    }

    /// Simultaneous substitution; `nvars` is unchanged (a variable set to a
    /// value simply no longer occurs).
    pub fn specialize(&self, assignment: &[(usize, Subst)]) -> Result<Self, ExactError> {
        for (i, s) in assignment {
            if *i >= self.nvars {
                return Err(ExactError::Index {
                    index: *i,
                    len: self.nvars,
                });
            }
            match s {
                Subst::Value(v) if v.is_zero() => return Err(ExactError::Pole { var: *i }),
                Subst::Monomial { coeff, .. } if coeff.is_zero() => {
                    return Err(ExactError::Pole { var: *i })
                }
                Subst::Monomial { exp, .. } if exp.len() != self.nvars => {
                    return Err(ExactError::Dimension {
                        left: self.nvars,
                        right: exp.len(),
                    })
                }
                _ => {}
            }
        }
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let mut nc = c.clone();
            for (i, _) in assignment {
                ne[*i] = 0;
            }
            for (i, s) in assignment {
                let k = e[*i];
                match s {
                    Subst::Value(v) => nc *= rpow(v, k as i64),
                    Subst::Monomial { coeff, exp } => {
                        nc *= rpow(coeff, k as i64);
                        for (slot, x) in ne.iter_mut().zip(exp) {
                            *slot += k * x;
                        }
                    }
                }
            }
            r.add_term(ne, nc);
        }
        Ok(r)
    }

    /// Full evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ExactError> {
        if point.len() != self.nvars {
            return Err(ExactError::Dimension {
                left: self.nvars,
                right: point.len(),
            });
        }
        if let Some(i) = point.iter().position(|x| x.is_zero()) {
            if self.terms.keys().any(|e| e[i] < 0) {
                return Err(ExactError::Pole { var: i });
            }
        }
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    t *= rpow(x, k as i64);
                }
            }
            s += t;
        }
        Ok(s)
    }

    /// Value at `z = (1, …, 1)`: the sum of coefficients.
    pub fn at_ones(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(Complex64::new(to_f64(c), 0.0), |acc, (&k, x)| {
                        acc * x.powi(k)
                    })
            })
            .sum()
    }

    /// Formal partial derivative in `z_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                r.add_term(ne, c * Rational::from_integer(e[i].into()));
            }
        }
        r
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] != 0)
    }

    /// Minimum and maximum exponent of `z_i`, if nonzero.
    pub fn exponent_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Removes an absent variable, shifting later indices down.
    pub fn remove_var(&self, i: usize) -> Result<Self, ExactError> {
        if self.depends_on(i) {
            return Err(ExactError::VariablePresent { var: i });
        }
        let mut r = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.remove(i);
            r.add_term(ne, c.clone());
        }
        Ok(r)
    }

    /// Embeds into one more variable, inserting a fresh `z` at position `pos`.
    pub fn insert_var(&self, pos: usize) -> Self {
        let mut r = Self::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.insert(pos, 0);
            r.add_term(ne, c.clone());
        }
        r
    }

    /// `(p − p|_{z_i↔z_j}) / (z_i − z_j)`, computed monomial by monomial.
    pub fn divided_difference(&self, i: usize, j: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (a, b) = (e[i], e[j]);
            let (lo, hi, sign) = match a.cmp(&b) {
                std::cmp::Ordering::Equal => continue,
                std::cmp::Ordering::Greater => (b, a, c.clone()),
                std::cmp::Ordering::Less => (a, b, -c),
            };
            for k in 0..(hi - lo) {
                let mut ne = e.clone();
                ne[i] = lo + k;
                ne[j] = hi - 1 - k;
                r.add_term(ne, sign.clone());
            }
        }
        r
    }

    /// `(p − p|_{z_i↦z_i⁻¹}) / (z_i − z_i⁻¹)`.
    pub fn reflection_difference(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let a = e[i];
            if a == 0 {
                continue;
            }
            let sign = if a > 0 { c.clone() } else { -c };
            let n = a.abs();
            for k in 0..n {
                let mut ne = e.clone();
                ne[i] = n - 1 - 2 * k;
                r.add_term(ne, sign.clone());
            }
        }
        r
    }

    /// True when the polynomial is unchanged by `z_i ↔ z_j`.
    pub fn is_symmetric_in(&self, i: usize, j: usize) -> bool {
        self.swap_vars(i, j) == *self
    }

    pub fn is_inversion_symmetric(&self, i: usize) -> bool {
        self.invert_var(i) == *self
    }
}

/// `e_k` of the given polynomials (typically monomials); `e_0 = 1`.
pub fn elementary_symmetric(
    k: usize,
    vars: &[LaurentPoly],
    nvars: usize,
) -> Result<LaurentPoly, ExactError> {
    if k > vars.len() {
        return Err(ExactError::Index {
            index: k,
            len: vars.len(),
        });
    }
    // e[j] after processing a prefix of vars
    let mut e = vec![LaurentPoly::zero(nvars); k + 1];
    e[0] = LaurentPoly::one(nvars);
    for v in vars {
        for j in (1..=k).rev() {
            let t = e[j - 1].try_mul(v)?;
            e[j] += &t;
        }
    }
    Ok(e.swap_remove(k))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$f(rhs).expect("LaurentPoly operands must share nvars")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars, "LaurentPoly operands must share nvars");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars, "LaurentPoly operands must share nvars");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&Rational> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &Rational) -> LaurentPoly {
        self.scale(rhs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("z{}", i + 1)
                    } else {
                        format!("z{}^{}", i + 1, k)
                    }
                })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n > 0 || c.is_negative() {
                write!(f, "{}{}", if n > 0 { " " } else { "" }, sign)?;
                if n > 0 {
                    write!(f, " ")?;
                }
            }
            let a = c.abs();
            if mono.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", format_rational(&a))?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    exp: Vec<i32>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct WirePoly {
    nvars: usize,
    terms: Vec<WireTerm>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WirePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| WireTerm {
                    exp: e.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = WirePoly::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(w.terms.len());
        for t in w.terms {
            let n = t.num.parse().map_err(D::Error::custom)?;
            let d: num_bigint::BigInt = t.den.parse().map_err(D::Error::custom)?;
            if d.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            terms.push((t.exp, Rational::new(n, d)));
        }
        LaurentPoly::from_terms(w.nvars, terms).map_err(D::Error::custom)
    }
}
