//! Sparse vectors and an incremental row-echelon structure.

use std::collections::BTreeMap;

use super::{FieldElem, Scalar};

/// Sorted `(index, value)` pairs with no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Scalar::one())] }
    }

    /// Entries need not be sorted or distinct; duplicates are summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            if v.is_zero() {
                continue;
            }
            let e = m.entry(i).or_default();
            *e = e.add(&v);
        }
        Self::from_map(m)
    }

    pub fn from_map(m: BTreeMap<usize, Scalar>) -> Self {
        SparseVec { entries: m.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// Caller guarantees sorted, distinct, nonzero.
    pub fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(d: &[Scalar]) -> Self {
        SparseVec {
            entries: d.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut d = vec![Scalar::zero(); n];
        for (i, v) in &self.entries {
            d[*i] = v.clone();
        }
        d
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect() }
    }

    /// `self + c * o`
    pub fn add_scaled(&self, c: &Scalar, o: &SparseVec) -> SparseVec {
        if c.is_zero() || o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + o.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < o.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = o.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, o.entries[b].1.mul(c)));
                b += 1;
            } else {
                let v = self.entries[a].1.add(&o.entries[b].1.mul(c));
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, o: &SparseVec) -> SparseVec {
        self.add_scaled(&Scalar::one(), o)
    }

    pub fn sub(&self, o: &SparseVec) -> SparseVec {
        self.add_scaled(&Scalar::int(-1), o)
    }

    pub fn dot(&self, o: &SparseVec) -> Scalar {
        let (mut a, mut b) = (0, 0);
        let mut acc = Scalar::zero();
        while a < self.entries.len() && b < o.entries.len() {
            let (ia, ib) = (self.entries[a].0, o.entries[b].0);
            if ia < ib {
                a += 1;
            } else if ib < ia {
                b += 1;
            } else {
                acc = acc.add(&self.entries[a].1.mul(&o.entries[b].1));
                a += 1;
                b += 1;
            }
        }
        acc
    }

    pub fn dot_dense(&self, d: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, v) in &self.entries {
            if !d[*i].is_zero() {
                acc = acc.add(&v.mul(&d[*i]));
            }
        }
        acc
    }

    /// Re-index entries through `f`; entries mapped to `None` are dropped.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))))
    }

    /// Keep only entries with index in `[lo, hi)`, shifted down by `lo`.
    pub fn slice(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, v)| (i - lo, v.clone()))
                .collect(),
        }
    }

    pub fn shift(&self, by: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + by, v.clone())).collect() }
    }
}

/// Accumulator for building sparse vectors term by term.
#[derive(Default, Clone, Debug)]
pub struct SparseAcc {
    map: BTreeMap<usize, Scalar>,
}

impl SparseAcc {
    pub fn new() -> Self {
        SparseAcc { map: BTreeMap::new() }
    }
    pub fn add(&mut self, i: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(e) => {
                *e = e.add(v);
                if e.is_zero() {
                    self.map.remove(&i);
                }
            }
            None => {
                self.map.insert(i, v.clone());
            }
        }
    }
    pub fn add_vec(&mut self, c: &Scalar, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.entries() {
            self.add(*i, &x.mul(c));
        }
    }
    pub fn finish(self) -> SparseVec {
        SparseVec::from_map(self.map)
    }
}

/// Row echelon form built incrementally. Every stored row has a leading
/// entry equal to one at its pivot column, and no stored row has a nonzero
/// entry at the pivot of a row inserted before it.
///
/// Optionally tracks, for each row, its expression as a combination of the
/// inserted vectors (numbered in insertion order).
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    by_pivot: BTreeMap<usize, usize>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), combos: Vec::new(), by_pivot: BTreeMap::new(), track: false, inserted: 0 }
    }

    pub fn tracked(ncols: usize) -> Self {
        Echelon { track: true, ..Echelon::new(ncols) }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.by_pivot.keys().copied().collect()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.by_pivot.contains_key(&c)
    }

    fn reduce_impl(&self, v: &SparseVec, want_combo: bool) -> (SparseVec, SparseAcc) {
        let mut acc: BTreeMap<usize, Scalar> = v.entries().iter().cloned().collect();
        let mut combo = SparseAcc::new();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).next().map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            cursor = c + 1;
            let Some(&r) = self.by_pivot.get(&c) else { continue };
            let f = x.neg();
            for (j, y) in self.rows[r].entries() {
                let upd = y.mul(&f);
                match acc.get_mut(j) {
                    Some(e) => {
                        *e = e.add(&upd);
                        if e.is_zero() {
                            acc.remove(j);
                        }
                    }
                    None => {
                        acc.insert(*j, upd);
                    }
                }
            }
            if want_combo {
                combo.add_vec(&f, &self.combos[r]);
            }
        }
        (SparseVec::from_map(acc), combo)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_impl(v, false).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns the new pivot if `v` was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let idx = self.inserted;
        self.inserted += 1;
        let (r, combo) = self.reduce_impl(v, self.track);
        let (p, lead) = r.leading()?;
        let inv = lead.inv();
        let row = r.scale(&inv);
        if self.track {
            let mut c = combo;
            c.add(idx, &Scalar::one());
            self.combos.push(c.finish().scale(&inv));
        } else {
            self.combos.push(SparseVec::new());
        }
        self.by_pivot.insert(p, self.rows.len());
        self.rows.push(row);
        Some(p)
    }

    /// When `v` is in the span, its coefficients with respect to the inserted
    /// vectors (tracked mode only).
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "express requires a tracked echelon");
        let (r, combo) = self.reduce_impl(v, true);
        if !r.is_zero() {
            return None;
        }
        Some(combo.finish().neg())
    }

    /// Canonical reduced row echelon basis, sorted by pivot.
    pub fn rref(&self) -> Vec<SparseVec> {
        let order: Vec<usize> = self.by_pivot.values().copied().collect();
        let mut rows: Vec<SparseVec> = order.iter().map(|&r| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = self.by_pivot.keys().copied().collect();
        for i in (0..rows.len()).rev() {
            let p = pivots[i];
            let (done, todo) = rows.split_at_mut(i);
            let ri = &todo[0];
            for rk in done.iter_mut() {
                let c = rk.get(p);
                if !c.is_zero() {
                    *rk = rk.add_scaled(&c.neg(), ri);
                }
            }
        }
        rows
    }

    /// Basis of the null space of the row space (as equations).
    pub fn kernel(&self) -> Vec<SparseVec> {
        kernel_from_rref(&self.rref(), self.ncols)
    }
}

/// Kernel of a matrix given by its RREF rows: one vector per free column.
pub fn kernel_from_rref(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap().0).collect();
    let is_pivot: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    // column -> list of (pivot, value)
    let mut by_col: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        for (j, v) in row.entries().iter().skip(1) {
            by_col.entry(*j).or_default().push((pivots[r], v.neg()));
        }
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if is_pivot.contains(&f) {
            continue;
        }
        let mut pairs = by_col.remove(&f).unwrap_or_default();
        pairs.push((f, Scalar::one()));
        pairs.sort_by_key(|(i, _)| *i);
        out.push(SparseVec::from_sorted(pairs));
    }
    out
}

/// Kernel of the system whose rows are `eqs`, over `ncols` unknowns.
pub fn sparse_kernel(eqs: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new(ncols);
    for r in eqs {
        if e.rank() == ncols {
            break;
        }
        e.insert(r);
    }
    e.kernel()
}

/// Canonical RREF basis of the span of `vs`.
pub fn span_rref(vs: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new(ncols);
    for v in vs {
        e.insert(v);
    }
    e.rref()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(d: &[i64]) -> SparseVec {
        SparseVec::from_dense(&d.iter().map(|&x| Scalar::int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn echelon_kernel() {
        let eqs = vec![sv(&[1, 1, 0]), sv(&[2, 2, 0])];
        let k = sparse_kernel(&eqs, 3);
        assert_eq!(k, vec![sv(&[-1, 1, 0]), sv(&[0, 0, 1])]);
    }

    #[test]
    fn tracked_express() {
        let mut e = Echelon::tracked(3);
        e.insert(&sv(&[1, 2, 0]));
        e.insert(&sv(&[0, 1, 1]));
        let c = e.express(&sv(&[2, 5, 1])).unwrap();
        assert_eq!(c, sv(&[2, 1]));
        assert!(e.express(&sv(&[0, 0, 1])).is_none());
    }
}
