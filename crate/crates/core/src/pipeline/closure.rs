//! Conjugation closures C(t, X, k) at transvection-group granularity, the
//! span/cycle checks on them, and the search for a fully word-witnessed
//! transvection group inside the subgroup spanned by a two-way pair.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::field::Field;
use crate::linalg::{span_rank, Matrix};
use crate::transvection::{recognize, TransvectionGroup};
use crate::word::{Distinguished, GenSet, Word};

use super::entry::{sym, GWord, GroupEntry};
use super::{Certificate, PipelineError};

/// One reached group with the conjugation depth at which it appeared.
#[derive(Clone)]
pub struct ClosureItem<F: Field> {
    pub entry: Rc<GroupEntry<F>>,
    pub depth: usize,
}

/// Deterministically ordered set of reached groups.
pub struct Closure<F: Field> {
    pub items: Vec<ClosureItem<F>>,
    pub index: BTreeMap<TransvectionGroup<F>, usize>,
    pub depth_reached: usize,
}

impl<F: Field> Closure<F> {
    pub fn contains(&self, g: &TransvectionGroup<F>) -> bool {
        self.index.contains_key(g)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Direction coordinates of every reached group.
    pub fn lines(&self) -> Vec<Vec<F::Elem>> {
        self.items
            .iter()
            .map(|it| it.entry.group.line.clone())
            .collect()
    }

    /// Functional coordinates of every reached group.
    pub fn functionals(&self) -> Vec<Vec<F::Elem>> {
        self.items
            .iter()
            .map(|it| it.entry.group.functional.clone())
            .collect()
    }

    /// Group-level adjacency: edge i → j iff functional_j(line_i) ≠ 0.
    pub fn adjacency(&self, field: &F) -> Vec<Vec<bool>> {
        let m = self.items.len();
        let mut adj = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let p = self.items[j]
                    .entry
                    .group
                    .pairing_from(field, &self.items[i].entry.group);
                adj[i][j] = !field.is_zero(&p);
            }
        }
        adj
    }
}

/// BFS of conjugates of `seed` by generators of X, deduplicated at group
/// granularity, up to depth `max_depth`; `stop` is evaluated after every
/// completed round and ends the closure early when it returns true.
pub fn conjugation_closure<F: Field>(
    x: &GenSet<F>,
    seed: Rc<GroupEntry<F>>,
    max_depth: usize,
    mut stop: impl FnMut(&Closure<F>) -> bool,
) -> Closure<F> {
    let mut closure = Closure {
        items: vec![ClosureItem {
            entry: seed,
            depth: 0,
        }],
        index: BTreeMap::new(),
        depth_reached: 0,
    };
    closure
        .index
        .insert(closure.items[0].entry.group.clone(), 0);
    let mut frontier: Vec<usize> = vec![0];
    if stop(&closure) {
        return closure;
    }
    // Precompute generator inverses once.
    let inverses: Vec<Matrix<F>> = x
        .gens
        .iter()
        .map(|g| g.inverse().expect("generators are invertible"))
        .collect();
    for depth in 1..=max_depth {
        let mut next = Vec::new();
        for &idx in &frontier {
            let inner = closure.items[idx].entry.clone();
            for (gi, g) in x.gens.iter().enumerate() {
                for inv in [false, true] {
                    let (mat, word) = if inv {
                        (&inverses[gi], Word::gen_inv(gi))
                    } else {
                        (g, Word::gen(gi))
                    };
                    let conj = GroupEntry::conjugated(GWord::X(word), mat, &inner);
                    if closure.index.contains_key(&conj.group) {
                        continue;
                    }
                    closure.index.insert(conj.group.clone(), closure.items.len());
                    next.push(closure.items.len());
                    closure.items.push(ClosureItem { entry: conj, depth });
                }
            }
        }
        closure.depth_reached = depth;
        if next.is_empty() {
            break;
        }
        frontier = next;
        if stop(&closure) {
            break;
        }
    }
    closure
}

/// Conclusions checked on a depth-n closure: the directions span V and the
/// group graph contains a directed cycle (of length at most n), reported
/// as the minimal one in BFS order.
pub struct SpanCycleReport {
    pub spans: bool,
    pub span_rank: usize,
    pub cycle: Option<Vec<usize>>,
}

pub fn check_theorem_span_cycle<F: Field>(field: &F, closure: &Closure<F>) -> SpanCycleReport {
    let n = closure.items[0].entry.group.n();
    let rank = span_rank(field, &closure.lines());
    let adj = closure.adjacency(field);
    let cycle = minimal_directed_cycle(&adj);
    SpanCycleReport {
        spans: rank == n,
        span_rank: rank,
        cycle,
    }
}

/// Shortest directed cycle in an adjacency matrix; roots are scanned in
/// index order and ties keep the first find, so the result is
/// deterministic.
pub fn minimal_directed_cycle(adj: &[Vec<bool>]) -> Option<Vec<usize>> {
    let m = adj.len();
    let mut best: Option<Vec<usize>> = None;
    for root in 0..m {
        // BFS from root; shortest path back to root closes the cycle.
        let mut dist = vec![usize::MAX; m];
        let mut parent = vec![usize::MAX; m];
        let mut queue = std::collections::VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        let mut found: Option<usize> = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for w in 0..m {
                if !adj[u][w] {
                    continue;
                }
                if w == root {
                    found = Some(u);
                    break 'bfs;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if let Some(last) = found {
            let mut path = vec![last];
            let mut cur = last;
            while cur != root {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    best
}

/// Outcome of the transvection-group search: the group entry carries a
/// word for every proper member.
pub struct FoundGroup<F: Field> {
    pub entry: Rc<GroupEntry<F>>,
    /// Closure used for the search (empty when the group came from X).
    pub closure: Option<Closure<F>>,
    pub cycle_len: Option<usize>,
    pub bfs_elements: usize,
    pub max_member_len: u64,
}

/// Find a whole transvection group with per-member witness words.
///
/// A distinguished whole group in X is returned directly; otherwise the
/// generators are scanned for a complete group, and failing that the
/// depth-n conjugation closure yields a minimal directed cycle
/// (r_1, ..., r_k), the two-way pair (r_1, s_2) with
/// s_2 = (r_2···r_{k-1}) r_k (r_2···r_{k-1})^{-1}, and a BFS inside the
/// subgroup generated by that pair assigns a word to every member of some
/// group.
pub fn find_transvection_group<F: Field>(
    x: &GenSet<F>,
) -> Result<FoundGroup<F>, PipelineError> {
    let field = &x.field;
    let stage = "find_transvection_group";
    if let Distinguished::Group(g) = &x.distinguished {
        return Ok(FoundGroup {
            entry: GroupEntry::x_group(field, g.clone()),
            closure: None,
            cycle_len: None,
            bfs_elements: 0,
            max_member_len: 1,
        });
    }
    // A full group already listed in X member by member?
    if let Some(p) = field.elements().map(|e| e.len() as u64) {
        let mut buckets: BTreeMap<TransvectionGroup<F>, Vec<(F::Elem, usize)>> = BTreeMap::new();
        for (i, g) in x.gens.iter().enumerate() {
            if let Some(t) = recognize(g).proper() {
                let (grp, c) = TransvectionGroup::of(&t);
                buckets.entry(grp).or_default().push((c, i));
            }
        }
        for (grp, members) in buckets {
            let mut seen: BTreeMap<F::Elem, usize> = BTreeMap::new();
            for (c, i) in members {
                seen.entry(c).or_insert(i);
            }
            if seen.len() as u64 == p - 1 {
                let words = seen
                    .into_iter()
                    .map(|(c, i)| (c, GWord::X(Word::gen(i))))
                    .collect();
                return Ok(FoundGroup {
                    entry: GroupEntry::table(field, grp.clone(), words),
                    closure: None,
                    cycle_len: None,
                    bfs_elements: 0,
                    max_member_len: 1,
                });
            }
        }
    }
    let Some(elements) = field.elements() else {
        return Err(PipelineError::new(
            stage,
            Certificate::Internal(
                "over an infinite field the generating set must contain a whole group".into(),
            ),
        ));
    };
    let n = x.n;
    let t = x.distinguished_transvection();
    let seed_word = match &x.distinguished {
        Distinguished::Transvection(i) => Word::gen(*i),
        Distinguished::Group(_) => unreachable!("handled above"),
    };
    let seed = GroupEntry::x_single(field, &t, seed_word);
    let closure = conjugation_closure(x, seed, n, |_| false);
    let report = check_theorem_span_cycle(field, &closure);
    if !report.spans {
        return Err(PipelineError::new(
            stage,
            Certificate::SpanDefect {
                dimension: n,
                got: report.span_rank,
            },
        ));
    }
    let Some(cycle) = report.cycle else {
        return Err(PipelineError::new(stage, Certificate::NoDirectedCycle));
    };
    let k = cycle.len();
    let r1 = closure.items[cycle[0]].entry.clone();
    let s2 = if k == 2 {
        closure.items[cycle[1]].entry.clone()
    } else {
        // s_2 = (r_2 ... r_{k-1}) r_k (r_2 ... r_{k-1})^{-1}
        let mids: Vec<Rc<GroupEntry<F>>> = cycle[1..k - 1]
            .iter()
            .map(|&i| closure.items[i].entry.clone())
            .collect();
        let rk = closure.items[cycle[k - 1]].entry.clone();
        let mut g_mat = Matrix::identity(field, n);
        let mut g_parts = Vec::new();
        for m in &mids {
            g_mat = g_mat.mul(&m.rep().matrix());
            g_parts.push(sym(m, field.one()));
        }
        GroupEntry::conjugated(GWord::concat(g_parts), &g_mat, &rk)
    };
    // The pair (r_1, s_2) must be two-way.
    let p_fwd = s2.group.pairing_from(field, &r1.group);
    let p_bwd = r1.group.pairing_from(field, &s2.group);
    if field.is_zero(&p_fwd) || field.is_zero(&p_bwd) {
        return Err(PipelineError::new(
            stage,
            Certificate::Internal("constructed pair (r1, s2) is not two-way".into()),
        ));
    }
    // BFS inside <r1, s2> until some transvection group has words for all
    // of its proper members.
    let a_mat = r1.rep().matrix();
    let b_mat = s2.rep().matrix();
    let steps: Vec<(Matrix<F>, GWord<F>)> = vec![
        (a_mat.clone(), sym(&r1, field.one())),
        (
            a_mat.inverse().expect("transvections invert"),
            sym(&r1, field.one()).inverse(),
        ),
        (b_mat.clone(), sym(&s2, field.one())),
        (
            b_mat.inverse().expect("transvections invert"),
            sym(&s2, field.one()).inverse(),
        ),
    ];
    let proper_count = elements.len() - 1;
    let mut member_words: BTreeMap<TransvectionGroup<F>, BTreeMap<F::Elem, GWord<F>>> =
        BTreeMap::new();
    let mut visited: HashMap<Vec<F::Elem>, ()> = HashMap::new();
    let key_of = |m: &Matrix<F>| -> Vec<F::Elem> { m.rows().concat() };
    let id = Matrix::identity(field, n);
    visited.insert(key_of(&id), ());
    let mut frontier: Vec<(Matrix<F>, GWord<F>)> = vec![(id, GWord::Identity)];
    let cap = 20 * elements.len().pow(3) + 64;
    let mut max_member_len = 0u64;
    'bfs: while !frontier.is_empty() {
        let mut next = Vec::new();
        for (m, w) in &frontier {
            for (smat, sword) in &steps {
                let nm = m.mul(smat);
                let key = key_of(&nm);
                if visited.contains_key(&key) {
                    continue;
                }
                visited.insert(key, ());
                let nw = GWord::concat(vec![w.clone(), sword.clone()]);
                if let Some(tv) = recognize(&nm).proper() {
                    let (grp, c) = TransvectionGroup::of(&tv);
                    let slot = member_words.entry(grp.clone()).or_default();
                    slot.entry(c).or_insert_with(|| nw.clone());
                    if slot.len() == proper_count {
                        let words: Vec<(F::Elem, GWord<F>)> = member_words
                            .remove(&grp)
                            .unwrap()
                            .into_iter()
                            .collect();
                        max_member_len = words
                            .iter()
                            .map(|(_, w)| w.len(field))
                            .max()
                            .unwrap_or(0);
                        let entry = GroupEntry::table(field, grp, words);
                        let bfs_elements = visited.len();
                        return Ok(FoundGroup {
                            entry,
                            closure: Some(closure),
                            cycle_len: Some(k),
                            bfs_elements,
                            max_member_len,
                        });
                    }
                }
                next.push((nm, nw));
                if visited.len() > cap {
                    break 'bfs;
                }
            }
        }
        frontier = next;
    }
    Err(PipelineError::new(
        stage,
        Certificate::CapExceeded {
            what: "subgroup BFS for a full transvection group".into(),
            cap,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn elementary(f: &PrimeField, n: usize, i: usize, j: usize, lam: i64) -> Matrix<PrimeField> {
        let mut m = Matrix::identity(f, n);
        m.set(i, j, f.from_i64(lam));
        m
    }

    fn all_elementaries(f: &PrimeField, n: usize) -> Vec<Matrix<PrimeField>> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(elementary(f, n, i, j, 1));
                }
            }
        }
        out
    }

    #[test]
    fn closure_depth_zero_is_seed() {
        let f = PrimeField::new(3).unwrap();
        let gens = all_elementaries(&f, 3);
        let x = GenSet::new(f, 3, gens, Distinguished::Transvection(0)).unwrap();
        let t = x.distinguished_transvection();
        let seed = GroupEntry::x_single(&f, &t, Word::gen(0));
        let c = conjugation_closure(&x, seed, 0, |_| false);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn closure_depth_one_matches_direct_enumeration() {
        let f = PrimeField::new(3).unwrap();
        let gens = all_elementaries(&f, 3);
        let x = GenSet::new(f.clone(), 3, gens.clone(), Distinguished::Transvection(0)).unwrap();
        let t = x.distinguished_transvection();
        let seed = GroupEntry::x_single(&f, &t, Word::gen(0));
        let c = conjugation_closure(&x, seed, 1, |_| false);
        // oracle: conjugate t by every generator and its inverse, dedup groups
        let mut expect = std::collections::BTreeSet::new();
        expect.insert(t.group());
        for g in &gens {
            for m in [g.clone(), g.inverse().unwrap()] {
                let conj = t.conjugate_by(&m).unwrap();
                expect.insert(conj.group());
            }
        }
        let got: std::collections::BTreeSet<_> =
            c.index.keys().cloned().collect();
        assert_eq!(got, expect);
        // every reached entry's word evaluates to its member matrices
        for it in &c.items {
            for lam in 0..3u64 {
                let gw = it.entry.member_gword(&lam);
                assert_eq!(gw.to_word(&x).evaluate(&x).unwrap(), it.entry.member_matrix(&lam));
            }
        }
    }

    #[test]
    fn theorem_span_cycle_on_elementaries() {
        let f = PrimeField::new(3).unwrap();
        let gens = all_elementaries(&f, 3);
        let x = GenSet::new(f.clone(), 3, gens, Distinguished::Transvection(0)).unwrap();
        let t = x.distinguished_transvection();
        let seed = GroupEntry::x_single(&f, &t, Word::gen(0));
        let c = conjugation_closure(&x, seed, 3, |_| false);
        let rep = check_theorem_span_cycle(&f, &c);
        assert!(rep.spans);
        let cyc = rep.cycle.expect("directed cycle exists");
        assert!(cyc.len() >= 2 && cyc.len() <= 3);
    }

    #[test]
    fn find_group_direct_from_x() {
        // X contains the whole group of 1+E12 over F_3: members 1+E12, 1+2E12.
        let f = PrimeField::new(3).unwrap();
        let gens = vec![
            elementary(&f, 3, 0, 1, 1),
            elementary(&f, 3, 0, 1, 2),
            elementary(&f, 3, 1, 2, 1),
        ];
        let x = GenSet::new(f, 3, gens, Distinguished::Transvection(0)).unwrap();
        let found = find_transvection_group(&x).unwrap();
        assert!(found.closure.is_none());
        assert_eq!(found.max_member_len, 1);
    }

    #[test]
    fn find_group_via_bfs() {
        let f = PrimeField::new(3).unwrap();
        // Two elementaries only: 1+E12 and 1+E21 span a two-way pair but do
        // not generate SL(3,3); add the cycle fix-up so X generates.
        let gens = vec![
            elementary(&f, 3, 0, 1, 1),
            elementary(&f, 3, 1, 0, 1),
            // signed 3-cycle permutation with det 1
            Matrix::from_rows(
                &f,
                vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
            )
            .unwrap(),
        ];
        let x = GenSet::new(f.clone(), 3, gens, Distinguished::Transvection(0)).unwrap();
        let found = find_transvection_group(&x).unwrap();
        // all p-1 = 2 proper members are word-witnessed and verify
        let entry = found.entry;
        for lam in 1..3u64 {
            let gw = entry.member_gword(&lam);
            let m = gw.to_word(&x).evaluate(&x).unwrap();
            assert_eq!(m, entry.member_matrix(&lam));
        }
    }

    #[test]
    fn find_group_f2_degenerates() {
        let f = PrimeField::new(2).unwrap();
        let gens = vec![
            elementary(&f, 3, 0, 1, 1),
            Matrix::from_rows(&f, vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap(),
        ];
        let x = GenSet::new(f.clone(), 3, gens, Distinguished::Transvection(0)).unwrap();
        let found = find_transvection_group(&x).unwrap();
        let entry = found.entry;
        let gw = entry.member_gword(&1);
        assert_eq!(
            gw.to_word(&x).evaluate(&x).unwrap(),
            entry.member_matrix(&1)
        );
    }
}
