//! A finite quotient of a profinite group with marked Frobenius and inertia elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedProfinite {
    pub quotient: Arc<FiniteGroup>,
    pub frobenius: Option<usize>,
    pub inertia_marks: BTreeMap<String, usize>,
}

impl MarkedProfinite {
    pub fn new(quotient: Arc<FiniteGroup>, frobenius: Option<usize>, inertia_marks: BTreeMap<String, usize>) -> Result<Self> {
        let n = quotient.order();
        if let Some(f) = frobenius.filter(|&f| f >= n) {
            return Err(Error::domain(format!("frobenius element {f} is not in {}", quotient.name())));
        }
        if let Some((label, g)) = inertia_marks.iter().find(|(_, &g)| g >= n) {
            return Err(Error::domain(format!("inertia mark {label} = {g} is not in {}", quotient.name())));
        }
        Ok(MarkedProfinite { quotient, frobenius, inertia_marks })
    }

    pub fn unmarked(quotient: Arc<FiniteGroup>) -> Self {
        MarkedProfinite { quotient, frobenius: None, inertia_marks: BTreeMap::new() }
    }

    pub fn inertia(&self, label: &str) -> Option<usize> {
        self.inertia_marks.get(label).copied()
    }
}
