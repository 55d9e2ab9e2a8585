//! Operation signatures and their doubled versions.

use std::fmt;

use crate::error::{arg_err, Result};

/// An ordered family of operation symbols, each with an arity of at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let ops: Vec<(String, usize)> = ops.into_iter().map(|(n, a)| (n.into(), a)).collect();
        for (i, (name, arity)) in ops.iter().enumerate() {
            if name.is_empty() {
                return arg_err("operation names must be non-empty");
            }
            if *arity < 2 {
                return arg_err(format!(
                    "operation `{name}` has arity {arity}, need at least 2"
                ));
            }
            if ops[..i].iter().any(|(n, _)| n == name) {
                return arg_err(format!("duplicate operation name `{name}`"));
            }
        }
        Ok(Signature { ops })
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].1
    }

    pub fn name(&self, op: usize) -> &str {
        &self.ops[op].0
    }

    pub fn arities(&self) -> Vec<usize> {
        self.ops.iter().map(|&(_, a)| a).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|(n, _)| n == name)
    }

    pub fn ops(&self) -> impl Iterator<Item = (&str, usize)> {
        self.ops.iter().map(|(n, a)| (n.as_str(), *a))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (n, a)) in self.ops.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{a}")?;
        }
        write!(f, "}}")
    }
}

/// The signature with one copy `f^k` of every base symbol `f` per argument slot `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoubledSignature {
    base: Signature,
    doubled: Signature,
    // doubled symbol index -> (base symbol index, superscript k in 1..=arity)
    origin: Vec<(usize, usize)>,
    // base symbol index -> index of f^1 in the doubled signature
    first: Vec<usize>,
}

impl DoubledSignature {
    pub fn base(&self) -> &Signature {
        &self.base
    }

    pub fn signature(&self) -> &Signature {
        &self.doubled
    }

    /// Base symbol and superscript of a doubled symbol.
    pub fn origin(&self, op: usize) -> (usize, usize) {
        self.origin[op]
    }

    /// Index of `f^k` for base symbol `f`.
    pub fn symbol(&self, base_op: usize, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.base.arity(base_op));
        self.first[base_op] + k - 1
    }
}

/// Doubles a signature: `f` of arity `n` becomes `f^1, …, f^n`, all of arity `n`.
pub fn double_signature(sig: &Signature) -> DoubledSignature {
    let mut ops = Vec::new();
    let mut origin = Vec::new();
    let mut first = Vec::new();
    for (i, (name, arity)) in sig.ops().enumerate() {
        first.push(ops.len());
        for k in 1..=arity {
            ops.push((format!("{name}^{k}"), arity));
            origin.push((i, k));
        }
    }
    DoubledSignature {
        base: sig.clone(),
        doubled: Signature { ops },
        origin,
        first,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_signatures() {
        assert!(Signature::new([("mul", 1)]).is_err());
        assert!(Signature::new([("mul", 2), ("mul", 3)]).is_err());
        assert!(Signature::new([("", 2)]).is_err());
    }

    #[test]
    fn doubling_binary() {
        let d = double_signature(&Signature::new([("mul", 2)]).unwrap());
        let names: Vec<_> = d.signature().ops().collect();
        assert_eq!(names, vec![("mul^1", 2), ("mul^2", 2)]);
        assert_eq!(d.origin(1), (0, 2));
    }

    #[test]
    fn doubling_ternary_and_mixed() {
        let d = double_signature(&Signature::new([("tau", 3)]).unwrap());
        assert_eq!(d.signature().len(), 3);
        assert!(d.signature().ops().all(|(_, a)| a == 3));
        let mixed = Signature::new([("mul", 2), ("tau", 3)]).unwrap();
        let d = double_signature(&mixed);
        assert_eq!(d.signature().len(), 5);
        assert_eq!(d.symbol(1, 2), 3);
        assert_eq!(d.signature().name(3), "tau^2");
    }
}
