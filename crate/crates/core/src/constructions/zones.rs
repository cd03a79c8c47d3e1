//! Zone partitions of the block indices and the copy/conjugation
//! machinery built on them.
//!
//! A zone system partitions `[1, w)` into infinitely many infinite sets
//! `Z_n`, each enumerated by a computable bijection `theta_n`.  A
//! blockwise map `h` can be copied onto any zone (acting on block
//! `theta_n(k)` the way `h` acts on block `k`), and a permutation `psi`
//! of zone indices induces a conjugator translating zone `Z_m` onto
//! `Z_{psi(m)}` block by block.

use crate::homeo::{BlockSystem, Chart, Homeo, HomeoError, Perm, Piece, Schematic};
use std::collections::BTreeSet;
use std::rc::Rc;

/// A provided partition rule for zones.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ZoneRule {
    /// `Z_n = {i : i = n (mod m)}` for `n` in `1..=m`; exactly `m` zones.
    Residue { modulus: u64 },
    /// `Z_n = {2^(n-1) * odd}`; infinitely many zones.
    Dyadic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ZoneSystem {
    rule: ZoneRule,
}

impl ZoneSystem {
    pub fn residue(modulus: u64) -> Result<Self, HomeoError> {
        if modulus == 0 {
            return Err(HomeoError::Domain("residue rule needs modulus >= 1".into()));
        }
        Ok(ZoneSystem { rule: ZoneRule::Residue { modulus } })
    }

    pub fn dyadic() -> Self {
        ZoneSystem { rule: ZoneRule::Dyadic }
    }

    /// The zone index containing block `i`.
    pub fn zone_of(&self, i: u64) -> u64 {
        assert!(i >= 1);
        match self.rule {
            ZoneRule::Residue { modulus } => (i - 1) % modulus + 1,
            ZoneRule::Dyadic => i.trailing_zeros() as u64 + 1,
        }
    }

    /// The `k`-th element of zone `n` (`theta_n(k)`).
    pub fn theta(&self, n: u64, k: u64) -> u64 {
        assert!(n >= 1 && k >= 1);
        match self.rule {
            ZoneRule::Residue { modulus } => {
                assert!(n <= modulus, "zone index out of range");
                n + (k - 1) * modulus
            }
            ZoneRule::Dyadic => (2 * k - 1) << (n - 1),
        }
    }

    /// Position of block `i` inside its zone `n` (`theta_n^{-1}(i)`).
    pub fn theta_inv(&self, n: u64, i: u64) -> Result<u64, HomeoError> {
        if self.zone_of(i) != n {
            return Err(HomeoError::Domain(format!("block {i} is not in zone {n}")));
        }
        Ok(match self.rule {
            ZoneRule::Residue { modulus } => (i - n) / modulus + 1,
            ZoneRule::Dyadic => ((i >> (n - 1)) + 1) / 2,
        })
    }

    pub fn zone_count(&self) -> Option<u64> {
        match self.rule {
            ZoneRule::Residue { modulus } => Some(modulus),
            ZoneRule::Dyadic => None,
        }
    }
}

/// A computable set of zone indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZoneSel {
    Finite(BTreeSet<u64>),
    /// All zones except the listed ones.
    Cofinite(BTreeSet<u64>),
}

impl ZoneSel {
    pub fn contains(&self, n: u64) -> bool {
        match self {
            ZoneSel::Finite(s) => s.contains(&n),
            ZoneSel::Cofinite(s) => !s.contains(&n),
        }
    }
}

/// `h` copied simultaneously onto every zone in the selection: on block
/// `i` of a selected zone `Z_n` it acts as `h` on block `theta_n^{-1}(i)`
/// transported along the canonical translation, elsewhere as the
/// identity.
struct ZoneUnionMap {
    h: Homeo,
    zs: ZoneSystem,
    sel: ZoneSel,
}

impl Schematic for ZoneUnionMap {
    fn block_chart(&self, sys: &BlockSystem, i: u64) -> Chart {
        let n = self.zs.zone_of(i);
        if !self.sel.contains(n) {
            return Chart::new(vec![Piece::identity(sys.block(i))]).unwrap();
        }
        let j = self.zs.theta_inv(n, i).expect("i is in zone n");
        let pieces = self
            .h
            .block_chart(j)
            .pieces()
            .iter()
            .map(|p| Piece {
                src: sys.shift_interval(&p.src, j, i),
                dst: sys.shift_interval(&p.dst, j, i),
            })
            .collect();
        Chart::new(pieces).expect("translated blockwise chart stays disjoint")
    }

    fn source_blocks(&self, _sys: &BlockSystem, j: u64) -> Vec<u64> {
        vec![j]
    }

    fn blockwise(&self) -> bool {
        true
    }

    fn active_hint(&self) -> Option<BTreeSet<u64>> {
        let ZoneSel::Finite(zones) = &self.sel else { return None };
        let inner = self.h.active_hint()?;
        let mut out = BTreeSet::new();
        for &n in zones {
            for &k in &inner {
                out.insert(self.zs.theta(n, k));
            }
        }
        Some(out)
    }
}

/// Simultaneous copies of a blockwise `h` over the selected zones.
pub fn zone_union(h: &Homeo, zs: ZoneSystem, sel: ZoneSel) -> Result<Homeo, HomeoError> {
    if !h.is_blockwise_certified() {
        return Err(HomeoError::Domain(
            "zone copies require a map fixing every block setwise".into(),
        ));
    }
    if let (Some(count), ZoneSel::Finite(zones)) = (zs.zone_count(), &sel) {
        if zones.iter().any(|&n| n == 0 || n > count) {
            return Err(HomeoError::Domain("zone index out of range".into()));
        }
    }
    Ok(Homeo::schematic(h.alpha(), Rc::new(ZoneUnionMap { h: h.clone(), zs, sel })))
}

/// The copy of `h` supported on the single zone `Z_n`.
pub fn copy_into_zones(h: &Homeo, zs: ZoneSystem, n: u64) -> Result<Homeo, HomeoError> {
    zone_union(h, zs, ZoneSel::Finite(BTreeSet::from([n])))
}

/// Conjugator induced by a permutation of zone indices: block
/// `i = theta_m(k)` is translated canonically onto `theta_{psi(m)}(k)`.
struct ZoneConjMap {
    zs: ZoneSystem,
    psi: Perm,
}

impl ZoneConjMap {
    fn target_block(&self, i: u64) -> u64 {
        let m = self.zs.zone_of(i);
        let k = self.zs.theta_inv(m, i).expect("i is in its own zone");
        self.zs.theta(self.psi.apply(m), k)
    }
}

impl Schematic for ZoneConjMap {
    fn block_chart(&self, sys: &BlockSystem, i: u64) -> Chart {
        let j = self.target_block(i);
        Chart::new(vec![Piece::new(sys.block(i), sys.block(j)).expect("equal block types")])
            .unwrap()
    }

    fn source_blocks(&self, _sys: &BlockSystem, j: u64) -> Vec<u64> {
        let m = self.zs.zone_of(j);
        let k = self.zs.theta_inv(m, j).expect("j is in its own zone");
        vec![self.zs.theta(self.psi.inverse_apply(m), k)]
    }
}

/// The blockwise zone conjugator for `psi`.  With the residue rule,
/// `psi` must permute `1..=m`.
pub fn zone_conjugator(alpha: u64, zs: ZoneSystem, psi: &Perm) -> Result<Homeo, HomeoError> {
    if let (Some(count), Some(support)) = (zs.zone_count(), psi.support_hint()) {
        if support.iter().any(|&n| n > count) {
            return Err(HomeoError::Domain(
                "psi moves a zone index beyond the zone count".into(),
            ));
        }
    }
    Ok(Homeo::schematic(alpha, Rc::new(ZoneConjMap { zs, psi: psi.clone() })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn zone_rules_partition() {
        let r = ZoneSystem::residue(3).unwrap();
        let d = ZoneSystem::dyadic();
        for i in 1..=64 {
            for zs in [r, d] {
                let n = zs.zone_of(i);
                let k = zs.theta_inv(n, i).unwrap();
                assert_eq!(zs.theta(n, k), i);
            }
        }
        assert_eq!(r.zone_of(7), 1);
        assert_eq!(d.zone_of(12), 3);
        assert_eq!(d.theta(3, 2), 12);
        assert!(d.theta_inv(2, 5).is_err());
    }

    #[test]
    fn copy_acts_only_on_the_zone() {
        // h swaps the first two atoms of every block.
        let sys = BlockSystem::new(1);
        let mut pieces = Vec::new();
        for i in 1..=6 {
            let (b, _) = sys.block(i);
            pieces.push(Piece::new((b.clone(), b.succ()), (b.succ(), b.succ().succ())).unwrap());
            pieces.push(Piece::new((b.succ(), b.succ().succ()), (b.clone(), b.succ())).unwrap());
        }
        let h = Homeo::from_global_chart(1, Chart::new(pieces).unwrap()).unwrap();
        let odds = ZoneSystem::residue(2).unwrap();
        let h1 = copy_into_zones(&h, odds, 1).unwrap();
        // Zone 1 = odd blocks: block 1 moves, block 2 does not.
        assert_eq!(h1.eval(&o("1")).unwrap(), o("2"));
        assert_eq!(h1.eval(&o("w+1")).unwrap(), o("w+1"));
        assert_eq!(h1.eval(&o("w*2+1")).unwrap(), o("w*2+2"));
        assert!(h1.is_blockwise_certified());
        // Identity copies to the identity; the empty union is trivial.
        let id = Homeo::identity(1);
        let idc = copy_into_zones(&id, odds, 1).unwrap();
        assert_eq!(idc.eval(&o("5")).unwrap(), o("5"));
        let none = zone_union(&h, odds, ZoneSel::Finite(BTreeSet::new())).unwrap();
        assert_eq!(none.eval(&o("1")).unwrap(), o("1"));
        // Non-blockwise input is rejected.
        assert!(copy_into_zones(&Homeo::lift(1, &Perm::zigzag()), odds, 1).is_err());
    }

    #[test]
    fn conjugator_translates_zones() {
        let zs = ZoneSystem::residue(2).unwrap();
        let psi = Perm::transposition(1, 2);
        let k = zone_conjugator(1, zs, &psi).unwrap();
        // Block 1 (zone 1, position 1) goes to block 2 (zone 2, position 1).
        assert_eq!(k.pi_of(1).unwrap(), 2);
        assert_eq!(k.pi_of(2).unwrap(), 1);
        assert_eq!(k.pi_of(3).unwrap(), 4);
        assert_eq!(k.eval(&o("w*2+5")).unwrap(), o("w*3+5"));
        assert_eq!(k.eval_inv(&o("w*3+5")).unwrap(), o("w*2+5"));
        // psi out of range for the residue rule is rejected.
        assert!(zone_conjugator(1, zs, &Perm::transposition(1, 3)).is_err());
    }
}
