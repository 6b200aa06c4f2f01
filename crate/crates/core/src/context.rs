//! Shared state for a batch of computations over one algebra: the Weyl group
//! enumerated so far and every multiplicity table built so far.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::cache::DiskCache;
use crate::cartan::AffineAlgebra;
use crate::characters::{weight_multiplicities, MultTable};
use crate::error::Result;
use crate::weyl::{WeylElement, WeylEnumeration};

/// Safe to share between threads. Tables and layers are published once and
/// never mutated; a deeper table for the same weight replaces the shallower one.
#[derive(Debug)]
pub struct Context {
    alg: AffineAlgebra,
    weyl: RwLock<WeylEnumeration>,
    tables: RwLock<HashMap<Vec<i64>, Arc<MultTable>>>,
    disk: Option<DiskCache>,
}

impl Context {
    pub fn new(alg: AffineAlgebra) -> Self {
        Context {
            weyl: RwLock::new(WeylEnumeration::new(&alg)),
            alg,
            tables: RwLock::new(HashMap::new()),
            disk: None,
        }
    }

    pub fn with_disk_cache(alg: AffineAlgebra, cache: DiskCache) -> Self {
        Context {
            disk: Some(cache),
            ..Context::new(alg)
        }
    }

    pub fn algebra(&self) -> &AffineAlgebra {
        &self.alg
    }

    /// A table for `L_lambda` with truncation at least `trunc`.
    pub fn table(&self, lambda: &[i64], trunc: i64) -> Result<Arc<MultTable>> {
        if let Some(t) = self.tables.read().unwrap().get(lambda) {
            if t.trunc() >= trunc {
                return Ok(t.clone());
            }
        }
        let fresh = match self.disk.as_ref().map(|d| d.load(&self.alg, lambda, trunc)).transpose()? {
            Some(Some(t)) => Arc::new(t),
            _ => {
                let t = weight_multiplicities(&self.alg, lambda, trunc)?;
                if let Some(d) = &self.disk {
                    d.store(&t)?;
                }
                Arc::new(t)
            }
        };
        let mut tables = self.tables.write().unwrap();
        let slot = tables.entry(lambda.to_vec()).or_insert_with(|| fresh.clone());
        if slot.trunc() < fresh.trunc() {
            *slot = fresh;
        }
        Ok(slot.clone())
    }

    /// Weyl layers of lengths `0..=max_length`.
    pub fn weyl_layers(&self, max_length: usize) -> Vec<Arc<[WeylElement]>> {
        {
            let en = self.weyl.read().unwrap();
            if en.max_length() >= max_length {
                return (0..=max_length).map(|p| en.layer(p).unwrap()).collect();
            }
        }
        let mut en = self.weyl.write().unwrap();
        en.ensure(max_length);
        (0..=max_length).map(|p| en.layer(p).unwrap()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_reused_and_deepened() {
        let ctx = Context::new(AffineAlgebra::from_id("A1~1".parse().unwrap()));
        let a = ctx.table(&[1, 0], 4).unwrap();
        let b = ctx.table(&[1, 0], 3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let c = ctx.table(&[1, 0], 6).unwrap();
        assert_eq!(c.trunc(), 6);
        assert_eq!(c.slice(ctx.algebra(), 4), *a);
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let alg = AffineAlgebra::from_id("A2~1".parse().unwrap());
        let cold = Context::with_disk_cache(alg.clone(), DiskCache::new(dir.path()));
        let t1 = cold.table(&[0, 1, 0], 3).unwrap();
        let warm = Context::with_disk_cache(alg, DiskCache::new(dir.path()));
        let t2 = warm.table(&[0, 1, 0], 2).unwrap();
        assert_eq!(*t1, *t2);
    }

    #[test]
    fn layers_grow_on_demand() {
        let ctx = Context::new(AffineAlgebra::from_id("A1~1".parse().unwrap()));
        assert_eq!(ctx.weyl_layers(0).len(), 1);
        let l = ctx.weyl_layers(5);
        assert_eq!(l.iter().map(|x| x.len()).collect::<Vec<_>>(), vec![1, 2, 2, 2, 2, 2]);
    }
}
