use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// Site occupation. The order `Empty < Second < First` matches the integer
/// encoding −1, 0, +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    Empty,
    Second,
    First,
}

impl Site {
    pub const ALL: [Site; 3] = [Site::Empty, Site::Second, Site::First];

    pub fn value(self) -> i8 {
        match self {
            Site::Empty => -1,
            Site::Second => 0,
            Site::First => 1,
        }
    }

    pub fn from_value(v: i8) -> Option<Site> {
        match v {
            -1 => Some(Site::Empty),
            0 => Some(Site::Second),
            1 => Some(Site::First),
            _ => None,
        }
    }

    pub fn ascii(self) -> char {
        match self {
            Site::Empty => 'o',
            Site::Second => '*',
            Site::First => 'x',
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Site::Empty => '◦',
            Site::Second => '∗',
            Site::First => '•',
        }
    }

    pub fn from_char(c: char) -> Option<Site> {
        match c {
            'o' | '◦' => Some(Site::Empty),
            '*' | '∗' => Some(Site::Second),
            'x' | '•' => Some(Site::First),
            _ => None,
        }
    }
}

/// A particle configuration `w ∈ {◦,∗,•}^N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration(Vec<Site>);

impl Configuration {
    pub fn new(sites: Vec<Site>) -> Self {
        Configuration(sites)
    }

    /// Parses the ASCII key (`o`, `*`, `x`) or the symbolic form.
    pub fn parse(s: &str) -> Result<Self, ModelError> {
        s.chars()
            .map(|c| Site::from_char(c).ok_or_else(|| ModelError::BadWord(s.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(Configuration)
    }

    pub fn sites(&self) -> &[Site] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based site access.
    pub fn site(&self, i: usize) -> Site {
        self.0[i]
    }

    pub fn count(&self, kind: Site) -> usize {
        self.0.iter().filter(|&&s| s == kind).count()
    }

    pub fn first_class(&self) -> usize {
        self.count(Site::First)
    }

    pub fn second_class(&self) -> usize {
        self.count(Site::Second)
    }

    pub fn with_site(&self, i: usize, kind: Site) -> Self {
        let mut v = self.0.clone();
        v[i] = kind;
        Configuration(v)
    }

    /// Exchange of sites `i` and `i+1` (0-based).
    pub fn swapped(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        Configuration(v)
    }

    pub fn key(&self) -> String {
        self.0.iter().map(|s| s.ascii()).collect()
    }

    pub fn values(&self) -> Vec<i8> {
        self.0.iter().map(|s| s.value()).collect()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Configuration) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Configuration(v)
    }

    pub fn push(&self, kind: Site) -> Self {
        let mut v = self.0.clone();
        v.push(kind);
        Configuration(v)
    }

    pub fn prepend(&self, kind: Site) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(kind);
        v.extend_from_slice(&self.0);
        Configuration(v)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.key())
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Configuration::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// All configurations of length `n` with exactly `m` second-class particles,
/// in lexicographic order.
#[derive(Clone, Debug)]
pub struct Sector {
    n: usize,
    m: usize,
    configs: Vec<Configuration>,
    index: HashMap<Configuration, usize>,
}

impl Sector {
    pub fn new(n: usize, m: usize) -> Result<Self, ModelError> {
        if m > n {
            return Err(ModelError::Sector { n, m });
        }
        let mut words: Vec<Vec<Site>> = vec![Vec::new()];
        for _ in 0..n {
            words = words
                .into_iter()
                .flat_map(|w| {
                    Site::ALL.iter().map(move |&s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        let configs: Vec<Configuration> = words
            .into_iter()
            .map(Configuration)
            .filter(|c| c.second_class() == m)
            .collect();
        let index = configs
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(Sector {
            n,
            m,
            configs,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of first-class-or-hole sites, `k = N − m`.
    pub fn k(&self) -> usize {
        self.n - self.m
    }

    pub fn configs(&self) -> &[Configuration] {
        &self.configs
    }

    pub fn dim(&self) -> usize {
        self.configs.len()
    }

    pub fn index_of(&self, c: &Configuration) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// The reference word `◦^k ∗^m`.
    pub fn reference(&self) -> Configuration {
        let mut v = vec![Site::Empty; self.k()];
        v.extend(std::iter::repeat_n(Site::Second, self.m));
        Configuration(v)
    }
}

/// `C(n, m) · 2^{n−m}`.
pub fn sector_size(n: usize, m: usize) -> usize {
    let mut c: usize = 1;
    for i in 0..m {
        c = c * (n - i) / (i + 1);
    }
    c << (n - m)
}
