//! Name-keyed registries of interchangeable algorithms.

use std::collections::BTreeMap;
use std::sync::Arc;

use hyperflex_exact::{DescartesIsolator, RootIsolator, SturmIsolator};

use crate::error::{Error, Result};
use crate::wronskian::{BlockWronskian, FullWronskian, ToeplitzWronskian, WronskianStrategy};

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: BTreeMap<String, Arc<T>>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: BTreeMap::new() }
    }

    pub fn register(&mut self, name: &str, item: Arc<T>) {
        self.entries.insert(name.to_string(), item);
    }

    pub fn get(&self, name: &str) -> Result<Arc<T>> {
        self.entries.get(name).cloned().ok_or_else(|| Error::UnknownStrategy {
            kind: self.kind,
            name: name.to_string(),
        })
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}

pub fn wronskian_registry() -> Registry<dyn WronskianStrategy> {
    let mut r: Registry<dyn WronskianStrategy> = Registry::new("wronskian");
    r.register("block", Arc::new(BlockWronskian));
    r.register("toeplitz", Arc::new(ToeplitzWronskian));
    r.register("full", Arc::new(FullWronskian));
    r
}

pub fn isolator_registry() -> Registry<dyn RootIsolator> {
    let mut r: Registry<dyn RootIsolator> = Registry::new("root isolation");
    r.register("descartes", Arc::new(DescartesIsolator));
    r.register("sturm", Arc::new(SturmIsolator));
    r
}

/// The algorithms a computation runs with.
#[derive(Clone)]
pub struct Toolkit {
    pub wronskian: Arc<dyn WronskianStrategy>,
    pub isolator: Arc<dyn RootIsolator>,
}

impl Default for Toolkit {
    fn default() -> Self {
        Toolkit { wronskian: Arc::new(BlockWronskian), isolator: Arc::new(DescartesIsolator) }
    }
}

impl Toolkit {
    pub fn from_names(wronskian: &str, isolator: &str) -> Result<Self> {
        Ok(Toolkit {
            wronskian: wronskian_registry().get(wronskian)?,
            isolator: isolator_registry().get(isolator)?,
        })
    }
}

impl std::fmt::Debug for Toolkit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Toolkit({}, {})", self.wronskian.name(), self.isolator.name())
    }
}
