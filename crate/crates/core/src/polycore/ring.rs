use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polycore::monomial::MAX_VARS;

/// Graded polynomial ring: an ordered list of variable names. The
/// coefficient field is the type parameter of the polynomials living in it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Arc<Vec<String>>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        if names.len() < 2 {
            return Err(Error::InvalidRing("at least two variables are required".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables are supported")));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Ring { names: Arc::new(names) })
    }

    /// `x,y,z,w` style names for up to four variables, `x0..xn` beyond.
    pub fn standard(nvars: usize) -> Ring {
        let names: Vec<String> = match nvars {
            2 => vec!["x", "y"],
            3 => vec!["x", "y", "z"],
            4 => vec!["x", "y", "z", "w"],
            _ => return Ring::new(&(0..nvars).map(|i| format!("x{i}")).collect::<Vec<_>>()).expect("valid names"),
        }
        .into_iter()
        .map(String::from)
        .collect();
        Ring::new(&names).expect("valid names")
    }

    /// Ring on the first `k` variables of `self`.
    pub fn truncated(&self, k: usize) -> Ring {
        Ring::new(&self.names[..k]).expect("prefix of a valid ring")
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        assert!(Ring::new(&["x"]).is_err());
        assert!(Ring::new(&["x", "x"]).is_err());
        assert!(Ring::new(&["x", "2y"]).is_err());
        assert_eq!(Ring::standard(4).names(), &["x", "y", "z", "w"]);
        assert_eq!(Ring::standard(5).index_of("x4"), Some(4));
    }
}
