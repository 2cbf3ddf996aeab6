//! Finite-poset combinatorics: Möbius function, θ-sums, reduced Euler
//! characteristic of the order complex, and the maximal-element counting
//! inversion. Möbius values are exact arbitrary-precision integers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bitset::ElemSet;
use crate::report::{Status, VerificationReport};
use crate::{Error, Result};

pub struct Poset {
    n: usize,
    leq: Vec<bool>,
    topo: Vec<usize>,
    /// Optional subgroup labels tying poset elements back to element-id sets.
    pub labels: Option<Vec<ElemSet>>,
    /// Where this poset came from (filter provenance for reports).
    pub provenance: String,
    memo: Mutex<HashMap<usize, Arc<Vec<BigInt>>>>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn from_leq(n: usize, leq: Vec<bool>, provenance: String) -> Result<Poset> {
        if leq.len() != n * n {
            return Err(Error::Domain("leq matrix has wrong shape".into()));
        }
        for x in 0..n {
            if !leq[x * n + x] {
                return Err(Error::Domain("leq is not reflexive".into()));
            }
            for y in 0..n {
                if x != y && leq[x * n + y] && leq[y * n + x] {
                    return Err(Error::Domain("leq is not antisymmetric".into()));
                }
                for z in 0..n {
                    if leq[x * n + y] && leq[y * n + z] && !leq[x * n + z] {
                        return Err(Error::Domain("leq is not transitive".into()));
                    }
                }
            }
        }
        let topo = topo_order(n, &leq);
        Ok(Poset {
            n,
            leq,
            topo,
            labels: None,
            provenance,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// Poset of subgroups ordered by inclusion. The list must be deduplicated.
    pub fn from_subgroups(subs: Vec<ElemSet>, provenance: String) -> Poset {
        let n = subs.len();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = subs[x].is_subset(&subs[y]);
            }
        }
        let topo = topo_order(n, &leq);
        Poset {
            n,
            leq,
            topo,
            labels: Some(subs),
            provenance,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Index of the element labeled by the given subgroup.
    pub fn position_of(&self, s: &ElemSet) -> Option<usize> {
        self.labels
            .as_ref()
            .and_then(|ls| ls.iter().position(|l| l == s))
    }

    /// The row μ(x, ·), memoized.
    pub fn mobius_row(&self, x: usize) -> Arc<Vec<BigInt>> {
        if let Some(row) = self.memo.lock().unwrap().get(&x) {
            return row.clone();
        }
        let row = Arc::new(self.mobius_row_with_topo(x, &self.topo));
        self.memo.lock().unwrap().insert(x, row.clone());
        row
    }

    /// Compute μ(x, ·) along an explicit linear extension (used to check that
    /// the values do not depend on the order chosen).
    pub fn mobius_row_with_topo(&self, x: usize, topo: &[usize]) -> Vec<BigInt> {
        let mut row = vec![BigInt::zero(); self.n];
        row[x] = BigInt::one();
        for &y in topo {
            if y == x || !self.leq(x, y) {
                continue;
            }
            let mut sum = BigInt::zero();
            for z in 0..self.n {
                if z != y && self.leq(x, z) && self.leq(z, y) {
                    sum += &row[z];
                }
            }
            row[y] = -sum;
        }
        row
    }

    pub fn mobius(&self, x: usize, y: usize) -> BigInt {
        self.mobius_row(x)[y].clone()
    }

    /// θ(x) = Σ_{x ≤ y} μ(x, y).
    pub fn theta(&self, x: usize) -> BigInt {
        let row = self.mobius_row(x);
        (0..self.n)
            .filter(|&y| self.leq(x, y))
            .map(|y| row[y].clone())
            .sum()
    }

    /// Number of chains of each size, by dynamic programming over the order.
    fn chain_counts(&self) -> Vec<BigInt> {
        // ending[y] = counts of chains ending at y, indexed by size-1
        let mut ending: Vec<Vec<BigInt>> = vec![Vec::new(); self.n];
        for &y in &self.topo {
            let mut counts = vec![BigInt::one()]; // the chain {y}
            for z in 0..self.n {
                if z != y && self.leq(z, y) {
                    for (k, c) in ending[z].iter().enumerate() {
                        if counts.len() <= k + 1 {
                            counts.push(BigInt::zero());
                        }
                        counts[k + 1] += c;
                    }
                }
            }
            ending[y] = counts;
        }
        let mut total: Vec<BigInt> = Vec::new();
        for counts in &ending {
            for (k, c) in counts.iter().enumerate() {
                if total.len() <= k {
                    total.push(BigInt::zero());
                }
                total[k] += c;
            }
        }
        total
    }

    /// χ̃(ΔP) = −1 + Σ_k (−1)^k · (number of chains of k+1 elements).
    pub fn reduced_euler_characteristic(&self) -> BigInt {
        let mut chi = -BigInt::one();
        for (k, c) in self.chain_counts().iter().enumerate() {
            if k % 2 == 0 {
                chi += c;
            } else {
                chi -= c;
            }
        }
        chi
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|y| y == x || !self.leq(x, y)))
            .collect()
    }

    /// Number of maximal elements lying above x.
    pub fn nu_max(&self, x: usize) -> usize {
        self.maximal_elements()
            .iter()
            .filter(|&&z| self.leq(x, z))
            .count()
    }

    /// The poset with artificial bounds 0̂ (index n) and 1̂ (index n+1) added.
    pub fn bounded_extension(&self) -> Poset {
        let m = self.n + 2;
        let bot = self.n;
        let top = self.n + 1;
        let mut leq = vec![false; m * m];
        for x in 0..self.n {
            for y in 0..self.n {
                leq[x * m + y] = self.leq(x, y);
            }
        }
        for x in 0..m {
            leq[x * m + x] = true;
            leq[bot * m + x] = true;
            leq[x * m + top] = true;
        }
        let topo = topo_order(m, &leq);
        Poset {
            n: m,
            leq,
            topo,
            labels: None,
            provenance: format!("{}+bounds", self.provenance),
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// μ(0̂, 1̂) in the bounded extension.
    pub fn mobius_bounds(&self) -> BigInt {
        let ext = self.bounded_extension();
        ext.mobius(self.n, self.n + 1)
    }

    /// The induced subposet on the elements selected by the predicate.
    pub fn filter<F: Fn(usize) -> bool>(&self, keep: F, provenance: String) -> Poset {
        let idx: Vec<usize> = (0..self.n).filter(|&x| keep(x)).collect();
        let m = idx.len();
        let mut leq = vec![false; m * m];
        for (a, &x) in idx.iter().enumerate() {
            for (b, &y) in idx.iter().enumerate() {
                leq[a * m + b] = self.leq(x, y);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| idx.iter().map(|&x| ls[x].clone()).collect());
        let topo = topo_order(m, &leq);
        Poset {
            n: m,
            leq,
            topo,
            labels,
            provenance,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Checks the counting inversion: if ν(y) ≡ 1 (mod m) for all y, then
    /// θ(x) ≡ 0 (mod m) for every non-maximal x. Reports the first violation.
    pub fn check_max_congruence(&self, m: u64) -> VerificationReport {
        let mut rep = VerificationReport::new("max-congruence", &self.provenance);
        rep.put("modulus", m);
        let maxima = self.maximal_elements();
        for y in 0..self.n {
            let nu = self.nu_max(y) as u64;
            if !crate::cong1(nu, m) {
                // hypothesis fails; nothing to check
                rep.status = Status::Boundary;
                rep.put("hypothesis_failed_at", y);
                return rep;
            }
        }
        for x in 0..self.n {
            if maxima.contains(&x) {
                continue;
            }
            let theta = self.theta(x);
            let ok = if m == 0 {
                theta.is_zero()
            } else {
                (&theta % BigInt::from(m)).is_zero()
            };
            if !ok {
                rep.status = Status::Fail;
                rep.put_big("theta", &theta);
                rep.put("witness_index", x);
                if let Some(ls) = &self.labels {
                    rep.witness(&ls[x]);
                }
                return rep;
            }
        }
        rep.status = Status::Pass;
        rep
    }

    /// Hasse-diagram dump: JSON array of {id, covers:[ids]}.
    pub fn dump_covers(&self) -> String {
        let mut out = String::from("[");
        for x in 0..self.n {
            let covers: Vec<usize> = (0..self.n)
                .filter(|&z| {
                    z != x
                        && self.leq(z, x)
                        && !(0..self.n)
                            .any(|w| w != x && w != z && self.leq(z, w) && self.leq(w, x))
                })
                .collect();
            if x > 0 {
                out.push(',');
            }
            out.push_str(&format!(
                "{{\"id\":{},\"covers\":{:?}}}",
                x, covers
            ));
        }
        out.push(']');
        out
    }
}

fn topo_order(n: usize, leq: &[bool]) -> Vec<usize> {
    // Kahn's algorithm with smallest-index tie-breaking
    let mut below = vec![0usize; n];
    for x in 0..n {
        below[x] = (0..n).filter(|&z| z != x && leq[z * n + x]).count();
    }
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .find(|&x| !done[x] && below[x] == 0)
            .expect("leq is acyclic");
        done[next] = true;
        order.push(next);
        for x in 0..n {
            if !done[x] && leq[next * n + x] {
                below[x] -= 1;
            }
        }
    }
    order
}
