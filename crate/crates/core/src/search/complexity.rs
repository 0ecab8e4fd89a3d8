//! Complexity measures for tuples, modular-dependent pairs and mixed triples.

use crate::error::{Error, Result};
use crate::modfun::SingularModulus;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexityKind {
    /// max of `|D|` over the entries of a tuple of singular moduli
    Tuple,
    /// min over witnesses of `max(N, |a|, |b|, c)`
    ModularDependentPair,
    /// max of the root-of-unity order and the two isogeny degrees to it
    IsogenousTriple,
    /// `max(|D|, M, N)` for a singular, a dependent and a torsion coordinate
    SingularTriple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub value: i64,
    /// whether the value enters the aggregate
    pub counted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub kind: ComplexityKind,
    pub components: Vec<Component>,
    pub delta: u64,
}

impl ComplexityReport {
    /// Build a report whose `delta` is the max of `|value|` over counted components.
    pub fn new(kind: ComplexityKind, components: Vec<Component>) -> ComplexityReport {
        let delta = components.iter().filter(|c| c.counted).map(|c| c.value.unsigned_abs()).max().unwrap_or(0);
        ComplexityReport { kind, components, delta }
    }

    /// Recompute the aggregate from the components.
    pub fn is_consistent(&self) -> bool {
        ComplexityReport::new(self.kind, self.components.clone()).delta == self.delta
    }

    pub fn component(&self, name: &str) -> Option<i64> {
        self.components.iter().find(|c| c.name == name).map(|c| c.value)
    }
}

pub(crate) fn counted(name: impl Into<String>, value: i64) -> Component {
    Component { name: name.into(), value, counted: true }
}

pub(crate) fn extra(name: impl Into<String>, value: i64) -> Component {
    Component { name: name.into(), value, counted: false }
}

/// Per-entry `|D|` and their maximum.
pub fn complexity_of_tuple(sigmas: &[SingularModulus]) -> Result<ComplexityReport> {
    if sigmas.is_empty() {
        return Err(Error::Domain("complexity of an empty tuple".into()));
    }
    Ok(complexity_of_discriminants(&sigmas.iter().map(|s| s.discriminant().value()).collect::<Vec<_>>()))
}

pub(crate) fn complexity_of_discriminants(ds: &[i64]) -> ComplexityReport {
    let comps = ds.iter().enumerate().map(|(i, &d)| counted(format!("D{}", i + 1), d)).collect();
    ComplexityReport::new(ComplexityKind::Tuple, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modfun::singular_moduli;
    use crate::qforms::Discriminant;

    fn sm(d: i64) -> SingularModulus {
        singular_moduli(Discriminant::new(d).unwrap()).unwrap().remove(0)
    }

    #[test]
    fn tuple_complexity() {
        assert_eq!(complexity_of_tuple(&[sm(-3)]).unwrap().delta, 3);
        let r = complexity_of_tuple(&[sm(-4), sm(-11)]).unwrap();
        assert_eq!(r.delta, 11);
        assert_eq!(r.component("D1"), Some(-4));
        assert!(r.is_consistent());
        assert!(complexity_of_tuple(&[]).is_err());
    }

    #[test]
    fn uncounted_components_are_ignored() {
        let r = ComplexityReport::new(ComplexityKind::SingularTriple, vec![counted("M", 2), extra("B", 99)]);
        assert_eq!(r.delta, 2);
    }
}
