use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Rational};
use super::ExactError;

/// Violated [`ParamPoint`] invariant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("s must differ from 0, 1 and -1 (got {0})")]
    BadS(String),
    #[error("parameter {name} must differ from 1")]
    EqualsOne { name: &'static str },
    #[error("parameter {name} must be nonzero")]
    Zero { name: &'static str },
    #[error("{name} must differ from 1")]
    ProductOne { name: &'static str },
    #[error("stochastic rates require s > 0 and alpha, beta, gamma, delta > 0 ({0} is not)")]
    NonPositiveRate(&'static str),
    #[error("physical regime for 0<t<1 requires a,c<0 and 0<b,d<1 ({0})")]
    Regime(&'static str),
    #[error("fugacity must be nonzero")]
    ZeroFugacity,
}

/// Model parameters. `s = t^{1/2}` is the fundamental rational; `t = s²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamPoint {
    s: Rational,
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
    xi: Option<Rational>,
    t: Rational,
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
    delta: Rational,
}

impl ParamPoint {
    pub fn new(
        s: Rational,
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
    ) -> Result<Self, ParamError> {
        let one = Rational::one();
        if s.is_zero() || s.abs() == one {
            return Err(ParamError::BadS(format_rational(&s)));
        }
        for (name, v) in [("a", &a), ("b", &b), ("c", &c), ("d", &d)] {
            if v.is_zero() {
                return Err(ParamError::Zero { name });
            }
            if *v == one {
                return Err(ParamError::EqualsOne { name });
            }
        }
        if &a * &b == one {
            return Err(ParamError::ProductOne { name: "ab" });
        }
        if &c * &d == one {
            return Err(ParamError::ProductOne { name: "cd" });
        }
        let t = &s * &s;
        let bulk = &s - s.recip();
        let lab = (&a - &one) * (&b - &one);
        let lcd = (&c - &one) * (&d - &one);
        let alpha = &bulk * &a * &b / &lab;
        let gamma = -&bulk / &lab;
        let beta = &bulk * &c * &d / &lcd;
        let delta = -&bulk / &lcd;
        Ok(ParamPoint {
            s,
            a,
            b,
            c,
            d,
            xi: None,
            t,
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    /// Parses five `"p/q"` strings in the order `s, a, b, c, d`.
    pub fn parse(s: &str, a: &str, b: &str, c: &str, d: &str) -> Result<Self, ExactError> {
        Ok(Self::new(
            parse_rational(s)?,
            parse_rational(a)?,
            parse_rational(b)?,
            parse_rational(c)?,
            parse_rational(d)?,
        )?)
    }

    pub fn with_xi(mut self, xi: Rational) -> Result<Self, ParamError> {
        if xi.is_zero() {
            return Err(ParamError::ZeroFugacity);
        }
        self.xi = Some(xi);
        Ok(self)
    }

    /// Same `s` (and fugacity) with new boundary parameters.
    pub fn with_boundary(
        &self,
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
    ) -> Result<Self, ParamError> {
        let mut p = Self::new(self.s.clone(), a, b, c, d)?;
        p.xi = self.xi.clone();
        Ok(p)
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }
    pub fn t(&self) -> &Rational {
        &self.t
    }
    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn c(&self) -> &Rational {
        &self.c
    }
    pub fn d(&self) -> &Rational {
        &self.d
    }
    pub fn xi(&self) -> Option<&Rational> {
        self.xi.as_ref()
    }
    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }
    pub fn beta(&self) -> &Rational {
        &self.beta
    }
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }
    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    /// `s − 1/s`, the prefactor of the current formula.
    pub fn bulk_gap(&self) -> Rational {
        &self.s - self.s.recip()
    }

    /// Positive rates, as required for a stochastic process.
    pub fn check_stochastic(&self) -> Result<(), ParamError> {
        if !self.s.is_positive() {
            return Err(ParamError::NonPositiveRate("s"));
        }
        for (n, v) in [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("delta", &self.delta),
        ] {
            if !v.is_positive() {
                return Err(ParamError::NonPositiveRate(n));
            }
        }
        Ok(())
    }

    /// The regime `a,c < 0`, `0 < b,d < 1` with `0 < t < 1`.
    pub fn check_physical_regime(&self) -> Result<(), ParamError> {
        let one = Rational::one();
        if !(self.s.is_positive() && self.t < one) {
            return Err(ParamError::Regime("needs 0 < s < 1"));
        }
        if !self.a.is_negative() {
            return Err(ParamError::Regime("a must be negative"));
        }
        if !self.c.is_negative() {
            return Err(ParamError::Regime("c must be negative"));
        }
        if !(self.b.is_positive() && self.b < one) {
            return Err(ParamError::Regime("b must lie in (0,1)"));
        }
        if !(self.d.is_positive() && self.d < one) {
            return Err(ParamError::Regime("d must lie in (0,1)"));
        }
        Ok(())
    }

    pub fn is_physical(&self) -> bool {
        self.check_physical_regime().is_ok() && self.check_stochastic().is_ok()
    }
}

/// Text form used in parameter files and JSON outputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRecord {
    pub s: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<String>,
}

impl From<&ParamPoint> for ParamRecord {
    fn from(p: &ParamPoint) -> Self {
        ParamRecord {
            s: format_rational(&p.s),
            a: format_rational(&p.a),
            b: format_rational(&p.b),
            c: format_rational(&p.c),
            d: format_rational(&p.d),
            xi: p.xi.as_ref().map(format_rational),
        }
    }
}

impl TryFrom<&ParamRecord> for ParamPoint {
    type Error = ExactError;
    fn try_from(r: &ParamRecord) -> Result<Self, ExactError> {
        let p = ParamPoint::parse(&r.s, &r.a, &r.b, &r.c, &r.d)?;
        match &r.xi {
            Some(x) => Ok(p.with_xi(parse_rational(x)?)?),
            None => Ok(p),
        }
    }
}

impl Serialize for ParamPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ParamRecord::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParamPoint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = ParamRecord::deserialize(deserializer)?;
        ParamPoint::try_from(&r).map_err(serde::de::Error::custom)
    }
}
