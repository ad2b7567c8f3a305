use serde::Serialize;

use crate::algebra::{center_verdict, CenterVerdict};
use crate::classify::lemmas::catalog;
use crate::classify::statistics::statistics;
use crate::classify::witness::find_graded_iso;
use crate::error::{Error, Result};
use crate::forms::CubicForm;
use crate::z2lin::{guard, Signature, MAX_ENUM_DIM};

/// How a class of the partition is justified.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassVerdict {
    /// Several signatures joined by verified witnesses, with a statistics
    /// value no other class has.
    Witnessed,
    /// A single signature whose statistics value no other class has.
    SeparatedByStatistics,
    /// The statistics value is shared with another class.
    Undetermined,
}

/// One signature of a row.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ClassEntry {
    pub p: usize,
    pub q: usize,
    pub s: u64,
    pub class: usize,
}

/// One class of a row.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassInfo {
    pub members: Vec<[usize; 2]>,
    pub verdict: ClassVerdict,
}

/// The graded isomorphism classes for one dimension.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassRow {
    pub n: usize,
    /// Signatures from `(n,0)` to `(0,n)`.
    pub entries: Vec<ClassEntry>,
    pub classes: Vec<ClassInfo>,
}

impl ClassRow {
    pub fn class_members(&self) -> Vec<Vec<Signature>> {
        self.classes
            .iter()
            .map(|c| c.members.iter().map(|&[p, q]| Signature::new(p, q)).collect())
            .collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let parent = self.0[i];
        if parent == i {
            return i;
        }
        let root = self.find(parent);
        self.0[i] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Partitions the signatures of dimension `n` (`3 <= n <= 12`).
///
/// Up to `n = 8` every pair with equal statistics is decided by exhaustive
/// search. Above that, classes are joined only by catalogue witnesses.
pub fn classification_row(n: usize) -> Result<ClassRow> {
    if !(3..=12).contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: 3, max: 12 });
    }
    let sigs: Vec<Signature> = Signature::all_with_n(n).collect();
    let stats: Vec<u64> = sigs.iter().map(|&s| statistics(s)).collect::<Result<_>>()?;
    let index = |s: Signature| s.q;
    let mut uf = UnionFind((0..sigs.len()).collect());

    if n <= MAX_ENUM_DIM {
        for i in 0..sigs.len() {
            for j in i + 1..sigs.len() {
                if stats[i] == stats[j]
                    && uf.find(i) != uf.find(j)
                    && find_graded_iso(sigs[i], sigs[j])?.is_some()
                {
                    uf.union(i, j);
                }
            }
        }
    } else {
        for lw in catalog(n)? {
            if lw.witness.verify() {
                uf.union(index(lw.witness.src()), index(lw.witness.dst()));
            }
        }
    }

    let mut roots: Vec<usize> = Vec::new();
    let mut entries = Vec::with_capacity(sigs.len());
    for (i, &sig) in sigs.iter().enumerate() {
        let root = uf.find(i);
        let class = match roots.iter().position(|&r| r == root) {
            Some(c) => c,
            None => {
                roots.push(root);
                roots.len() - 1
            }
        };
        entries.push(ClassEntry {
            p: sig.p,
            q: sig.q,
            s: stats[i],
            class,
        });
    }
    let classes = (0..roots.len())
        .map(|c| {
            let members: Vec<&ClassEntry> = entries.iter().filter(|e| e.class == c).collect();
            let s = members[0].s;
            let shared = entries.iter().any(|e| e.class != c && e.s == s);
            let verdict = if shared {
                ClassVerdict::Undetermined
            } else if members.len() > 1 {
                ClassVerdict::Witnessed
            } else {
                ClassVerdict::SeparatedByStatistics
            };
            ClassInfo {
                members: members.iter().map(|e| [e.p, e.q]).collect(),
                verdict,
            }
        })
        .collect();
    Ok(ClassRow {
        n,
        entries,
        classes,
    })
}

/// The computed structure of `O_{p,q}` next to two printed predicates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SimplicityReport {
    pub p: usize,
    pub q: usize,
    /// From the homogeneous center.
    pub computed: CenterVerdict,
    /// The comparison-table predicate: simple iff `n != 0 mod 4`, or
    /// `n = 0 mod 4` with `p, q` even.
    pub table_simple: bool,
    /// The direct-sum lemma: `n = 0 mod 4` with `p, q` even decomposes.
    pub lemma_decomposes: bool,
    /// Set when the table predicate disagrees with the computation.
    pub discrepancy_flag: bool,
}

/// Compares the computed center with the printed simplicity statements.
pub fn simplicity_report(sig: Signature) -> Result<SimplicityReport> {
    guard("simplicity_report", sig.n(), 10)?;
    let form = CubicForm::alpha_pq(sig)?;
    let computed = center_verdict(&form)?;
    let n = sig.n();
    let even = sig.p % 2 == 0 && sig.q % 2 == 0;
    let table_simple = n % 4 != 0 || even;
    let lemma_decomposes = n % 4 == 0 && even;
    Ok(SimplicityReport {
        p: sig.p,
        q: sig.q,
        computed,
        table_simple,
        lemma_decomposes,
        discrepancy_flag: table_simple != (computed != CenterVerdict::SplitsSum),
    })
}
