use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
}

/// Variable names, which variables are invertible, and the monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    names: Vec<String>,
    invertible: Vec<bool>,
    order: MonomialOrder,
}

/// Rings are shared between every polynomial that lives in them.
pub type Ring = Arc<RingSpec>;

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(names: &[S], invertible: &[bool], order: MonomialOrder) -> Result<Ring> {
        if names.len() != invertible.len() {
            return Err(Error::InvalidRing("names and invertibility flags differ in length".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(RingSpec { names, invertible: invertible.to_vec(), order }))
    }

    pub fn polynomial(names: &[&str]) -> Ring {
        Self::new(names, &vec![false; names.len()], MonomialOrder::DegRevLex).expect("valid names")
    }

    pub fn laurent(names: &[&str]) -> Ring {
        Self::new(names, &vec![true; names.len()], MonomialOrder::DegRevLex).expect("valid names")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn invertible_flags(&self) -> &[bool] {
        &self.invertible
    }

    pub fn has_invertible(&self) -> bool {
        self.invertible.iter().any(|&b| b)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(RingSpec { order, ..self.clone() })
    }

    /// Same variables, none of them invertible.
    pub fn polynomial_part(&self) -> Ring {
        Arc::new(RingSpec { invertible: vec![false; self.nvars()], ..self.clone() })
    }

    /// Same variables and flags; ignores the monomial order.
    pub fn same_variables(&self, other: &RingSpec) -> bool {
        self.names == other.names && self.invertible == other.invertible
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[")?;
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if self.invertible[i] {
                write!(f, "{n}^±1")?;
            } else {
                write!(f, "{n}")?;
            }
        }
        write!(f, "]")
    }
}

/// Checks that two rings agree on variables, for binary operations.
pub(crate) fn check_same(a: &RingSpec, b: &RingSpec) -> Result<()> {
    if a.same_variables(b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{a} vs {b}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(RingSpec::new(&["x", "x"], &[false, false], MonomialOrder::Lex).is_err());
        assert!(RingSpec::new(&["1x"], &[false], MonomialOrder::Lex).is_err());
        assert!(RingSpec::new(&["x"], &[false, true], MonomialOrder::Lex).is_err());
    }

    #[test]
    fn display_marks_invertible() {
        let r = RingSpec::new(&["u", "z"], &[true, false], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(r.to_string(), "Q[u^±1, z]");
    }
}
