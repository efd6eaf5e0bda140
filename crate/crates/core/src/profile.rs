//! Tensor-factor structure of a Hilbert space and bipartitions of it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered subsystem dimensions with party labels.
///
/// Party 0 is the slowest-varying tensor index, so a basis ket `|a b c>` has
/// flat index `(a * n_B + b) * n_C + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionProfile {
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl DimensionProfile {
    /// Profile with default labels `A`, `B`, `C`, ...
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        let labels = (0..dims.len()).map(default_label).collect();
        Self::with_labels(dims, labels)
    }

    pub fn with_labels(dims: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidProfile("no parties".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidProfile(format!("party dimension {d} < 2")));
        }
        if labels.len() != dims.len() {
            return Err(Error::InvalidProfile(format!(
                "{} labels for {} parties",
                labels.len(),
                dims.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(['|', 'x', ',']) {
                return Err(Error::InvalidProfile(format!("bad label '{l}'")));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidProfile(format!("duplicate label '{l}'")));
            }
        }
        Ok(Self { dims, labels })
    }

    /// Single-party profile of dimension `n`.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// Parses `"2x3"`, `"2x2x2"`, or `"4"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let dims = spec
            .trim()
            .split('x')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidProfile(format!("cannot parse '{spec}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Product of the dimensions of the given parties.
    pub fn dim_of(&self, parties: &[usize]) -> usize {
        parties.iter().map(|&p| self.dims[p]).product()
    }

    /// Profile restricted to `parties`, in the given order.
    pub fn restrict(&self, parties: &[usize]) -> Result<Self> {
        for &p in parties {
            if p >= self.parties() {
                return Err(Error::PartyIndex { index: p, parties: self.parties() });
            }
        }
        Self::with_labels(
            parties.iter().map(|&p| self.dims[p]).collect(),
            parties.iter().map(|&p| self.labels[p].clone()).collect(),
        )
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `A|B` for two parties, `A|BC...` otherwise.
    pub fn default_cut(&self) -> Result<Bipartition> {
        if self.parties() < 2 {
            return Err(Error::InvalidCut("profile has a single party".into()));
        }
        Bipartition::new(vec![0], (1..self.parties()).collect(), self.parties())
    }
}

impl fmt::Display for DimensionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("P{i}")
    }
}

/// Split of a profile's parties into two nonempty groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    pub fn new(mut left: Vec<usize>, mut right: Vec<usize>, parties: usize) -> Result<Self> {
        left.sort_unstable();
        right.sort_unstable();
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidCut("both sides must be nonempty".into()));
        }
        let mut all: Vec<usize> = left.iter().chain(right.iter()).copied().collect();
        all.sort_unstable();
        if all != (0..parties).collect::<Vec<_>>() {
            return Err(Error::InvalidCut(format!(
                "groups {left:?}|{right:?} do not partition {parties} parties"
            )));
        }
        Ok(Self { left, right })
    }

    /// Parses `"A|BC"` against the profile's labels.
    pub fn parse(spec: &str, profile: &DimensionProfile) -> Result<Self> {
        let (l, r) = spec
            .split_once('|')
            .ok_or_else(|| Error::InvalidCut(format!("'{spec}' has no '|'")))?;
        let left = parse_group(l.trim(), profile)?;
        let right = parse_group(r.trim(), profile)?;
        Self::new(left, right, profile.parties())
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Both sides, left first.
    pub fn sides(&self) -> [&[usize]; 2] {
        [&self.left, &self.right]
    }

    pub fn display(&self, profile: &DimensionProfile) -> String {
        let name = |g: &[usize]| -> String {
            g.iter().map(|&p| profile.labels()[p].as_str()).collect()
        };
        format!("{}|{}", name(&self.left), name(&self.right))
    }
}

fn parse_group(mut s: &str, profile: &DimensionProfile) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    while !s.is_empty() {
        // longest label that prefixes the remainder
        let hit = profile
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| s.starts_with(l.as_str()))
            .max_by_key(|(_, l)| l.len());
        match hit {
            Some((i, l)) => {
                if out.contains(&i) {
                    return Err(Error::InvalidCut(format!("party '{l}' repeated")));
                }
                out.push(i);
                s = s[l.len()..].trim_start_matches(',');
            }
            None => return Err(Error::InvalidCut(format!("unknown party in '{s}'"))),
        }
    }
    Ok(out)
}
