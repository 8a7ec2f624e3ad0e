use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation exponent of one generator.
///
/// `Unbounded` stands for a power-series variable (no relation `x^r = 0`);
/// arithmetic is then exact below the working cap and everything at or above
/// the cap is discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Truncation {
    Finite(u32),
    Unbounded { unbounded_cap: u32 },
}

impl Truncation {
    /// First exponent that is dropped.
    pub fn bound(self) -> u32 {
        match self {
            Truncation::Finite(r) => r,
            Truncation::Unbounded { unbounded_cap } => unbounded_cap,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Truncation::Finite(_))
    }
}

/// `Z[x_1..x_m]/(x_1^{r_1}..x_m^{r_m})` with every generator in filtration `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingShape {
    truncations: Vec<Truncation>,
    filtration: u32,
}

impl RingShape {
    pub fn new(truncations: Vec<Truncation>, filtration: u32) -> Result<Self> {
        if truncations.is_empty() {
            return Err(Error::InvalidShape("at least one variable required".into()));
        }
        if filtration == 0 {
            return Err(Error::InvalidShape("filtration degree must be positive".into()));
        }
        for t in &truncations {
            match *t {
                Truncation::Finite(r) if r < 2 => return Err(Error::InvalidShape(format!("truncation {r} < 2"))),
                Truncation::Unbounded { unbounded_cap } if unbounded_cap < 2 => {
                    return Err(Error::InvalidShape(format!("working cap {unbounded_cap} < 2")))
                }
                _ => {}
            }
        }
        Ok(RingShape {
            truncations,
            filtration,
        })
    }

    /// `Z[x]/(x^r)` in filtration 1.
    ///
    /// Panics if `r < 2`.
    pub fn univariate(r: u32) -> Self {
        Self::new(vec![Truncation::Finite(r)], 1).expect("truncation must be at least 2")
    }

    pub fn with_filtration(mut self, filtration: u32) -> Result<Self> {
        if filtration == 0 {
            return Err(Error::InvalidShape("filtration degree must be positive".into()));
        }
        self.filtration = filtration;
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.truncations.len()
    }

    pub fn truncations(&self) -> &[Truncation] {
        &self.truncations
    }

    pub fn filtration(&self) -> u32 {
        self.filtration
    }

    pub fn bound(&self, var: usize) -> u32 {
        self.truncations[var].bound()
    }

    /// The single truncation exponent of a one-variable shape.
    pub fn univariate_bound(&self) -> Option<u32> {
        (self.truncations.len() == 1).then(|| self.truncations[0].bound())
    }

    pub fn contains(&self, exponent: &[u32]) -> bool {
        exponent.len() == self.truncations.len() && exponent.iter().zip(&self.truncations).all(|(&e, t)| e < t.bound())
    }

    /// Same shape with every bound replaced.
    pub fn with_bounds(&self, truncations: Vec<Truncation>) -> Result<Self> {
        Self::new(truncations, self.filtration)
    }
}

impl fmt::Display for RingShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[")?;
        let m = self.num_vars();
        for i in 0..m {
            if i > 0 {
                write!(f, ",")?;
            }
            if m == 1 {
                write!(f, "x")?;
            } else {
                write!(f, "x{}", i + 1)?;
            }
        }
        write!(f, "]/(")?;
        for (i, t) in self.truncations.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let name = if m == 1 { "x".to_string() } else { format!("x{}", i + 1) };
            match t {
                Truncation::Finite(r) => write!(f, "{name}^{r}")?,
                Truncation::Unbounded { unbounded_cap } => write!(f, "{name}^inf[cap {unbounded_cap}]")?,
            }
        }
        write!(f, "), |x| = {}", self.filtration)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_truncations() {
        assert!(RingShape::new(vec![Truncation::Finite(1)], 1).is_err());
        assert!(RingShape::new(vec![], 1).is_err());
        assert!(RingShape::new(vec![Truncation::Finite(3)], 0).is_err());
        assert!(RingShape::new(vec![Truncation::Unbounded { unbounded_cap: 1 }], 1).is_err());
    }

    #[test]
    fn contains_respects_bounds() {
        let s = RingShape::new(
            vec![Truncation::Finite(3), Truncation::Unbounded { unbounded_cap: 5 }],
            2,
        )
        .unwrap();
        assert!(s.contains(&[2, 4]));
        assert!(!s.contains(&[3, 0]));
        assert!(!s.contains(&[0, 5]));
        assert!(!s.contains(&[0]));
    }
}
