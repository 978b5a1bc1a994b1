//! Words over a generating set, stored as straight-line programs.
//!
//! A [`Word`] is a DAG of shared nodes (generator references, concatenation,
//! inversion, transvection powers); evaluation and length run once per
//! distinct node. The expanded length over X counts generator symbols:
//! concatenation adds, inversion preserves, and a power node costs
//! `repeat_cost(λ)` copies of its base over F_p and one symbol when the
//! member comes from the distinguished whole group in X.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::TvError;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::transvection::{recognize, Recognized, Transvection, TransvectionGroup};

/// A symmetric generating set of SL(n, K) with a distinguished transvection
/// or whole transvection group.
#[derive(Clone, Debug)]
pub struct GenSet<F: Field> {
    pub field: F,
    pub n: usize,
    pub gens: Vec<Matrix<F>>,
    pub distinguished: Distinguished<F>,
    /// Words are always over X ∪ X^{-1} ∪ {1}; the flag only records how
    /// the set was declared.
    pub symmetric: bool,
}

#[derive(Clone, Debug)]
pub enum Distinguished<F: Field> {
    /// Index of a generator that is a transvection.
    Transvection(usize),
    /// A whole transvection group contained in the generating set; its
    /// members are available as single generator symbols.
    Group(TransvectionGroup<F>),
}

impl<F: Field> GenSet<F> {
    pub fn new(
        field: F,
        n: usize,
        gens: Vec<Matrix<F>>,
        distinguished: Distinguished<F>,
    ) -> Result<Self, TvError> {
        for (i, g) in gens.iter().enumerate() {
            if g.n != n {
                return Err(TvError::Precondition(format!("generator {i} has wrong size")));
            }
            if !field.is_one(&g.det()) {
                return Err(TvError::Precondition(format!("generator {i} has det != 1")));
            }
        }
        match &distinguished {
            Distinguished::Transvection(i) => {
                let m = gens
                    .get(*i)
                    .ok_or_else(|| TvError::Precondition("distinguished index out of range".into()))?;
                if recognize(m).proper().is_none() {
                    return Err(TvError::Precondition(
                        "distinguished generator is not a transvection".into(),
                    ));
                }
            }
            Distinguished::Group(g) => {
                if g.n() != n {
                    return Err(TvError::Precondition("distinguished group has wrong size".into()));
                }
            }
        }
        Ok(GenSet {
            field,
            n,
            gens,
            distinguished,
            symmetric: true,
        })
    }

    /// The distinguished transvection (the canonical generator when a
    /// whole group is distinguished).
    pub fn distinguished_transvection(&self) -> Transvection<F> {
        match &self.distinguished {
            Distinguished::Transvection(i) => recognize(&self.gens[*i])
                .proper()
                .expect("validated at construction"),
            Distinguished::Group(g) => g.rep(&self.field),
        }
    }

    pub fn distinguished_group(&self) -> TransvectionGroup<F> {
        match &self.distinguished {
            Distinguished::Transvection(i) => recognize(&self.gens[*i])
                .proper()
                .expect("validated at construction")
                .group(),
            Distinguished::Group(g) => g.clone(),
        }
    }
}

#[derive(Debug)]
enum Node<F: Field> {
    Identity,
    /// X[index]^{±1}.
    Gen { index: usize, inv: bool },
    /// Member of the distinguished whole group at parameter λ.
    GroupGen { exp: F::Elem },
    Concat(Word<F>, Word<F>),
    Inverse(Word<F>),
    /// t^λ where the base evaluates to a transvection.
    Power { base: Word<F>, exp: F::Elem },
}

/// A word over a generating set; cheap to clone and share.
#[derive(Clone, Debug)]
pub struct Word<F: Field>(Rc<Node<F>>);

impl<F: Field> Word<F> {
    pub fn identity() -> Self {
        Word(Rc::new(Node::Identity))
    }

    pub fn gen(index: usize) -> Self {
        Word(Rc::new(Node::Gen { index, inv: false }))
    }

    pub fn gen_inv(index: usize) -> Self {
        Word(Rc::new(Node::Gen { index, inv: true }))
    }

    pub fn group_gen(field: &F, exp: F::Elem) -> Self {
        if field.is_zero(&exp) {
            Word::identity()
        } else {
            Word(Rc::new(Node::GroupGen { exp }))
        }
    }

    pub fn concat(a: &Word<F>, b: &Word<F>) -> Self {
        match (&*a.0, &*b.0) {
            (Node::Identity, _) => b.clone(),
            (_, Node::Identity) => a.clone(),
            _ => Word(Rc::new(Node::Concat(a.clone(), b.clone()))),
        }
    }

    pub fn concat_all(words: &[Word<F>]) -> Self {
        let mut acc = Word::identity();
        for w in words {
            acc = Word::concat(&acc, w);
        }
        acc
    }

    pub fn inverse(&self) -> Self {
        match &*self.0 {
            Node::Identity => self.clone(),
            Node::Gen { index, inv } => Word(Rc::new(Node::Gen {
                index: *index,
                inv: !inv,
            })),
            _ => Word(Rc::new(Node::Inverse(self.clone()))),
        }
    }

    /// g w g^{-1}.
    pub fn conjugate(g: &Word<F>, w: &Word<F>) -> Self {
        Word::concat(&Word::concat(g, w), &g.inverse())
    }

    /// [a, b] = a b a^{-1} b^{-1}.
    pub fn commutator(a: &Word<F>, b: &Word<F>) -> Self {
        Word::concat(
            &Word::concat(a, b),
            &Word::concat(&a.inverse(), &b.inverse()),
        )
    }

    pub fn power(field: &F, base: &Word<F>, exp: F::Elem) -> Self {
        if field.is_zero(&exp) {
            Word::identity()
        } else if field.is_one(&exp) {
            base.clone()
        } else {
            Word(Rc::new(Node::Power {
                base: base.clone(),
                exp,
            }))
        }
    }

    fn key(&self) -> usize {
        Rc::as_ptr(&self.0) as usize
    }

    /// Exact evaluation against a generating set; memoized per node.
    pub fn evaluate(&self, x: &GenSet<F>) -> Result<Matrix<F>, TvError> {
        let mut memo: HashMap<usize, Matrix<F>> = HashMap::new();
        self.eval_inner(x, &mut memo)
    }

    fn eval_inner(
        &self,
        x: &GenSet<F>,
        memo: &mut HashMap<usize, Matrix<F>>,
    ) -> Result<Matrix<F>, TvError> {
        if let Some(m) = memo.get(&self.key()) {
            return Ok(m.clone());
        }
        let f = &x.field;
        let out = match &*self.0 {
            Node::Identity => Matrix::identity(f, x.n),
            Node::Gen { index, inv } => {
                let g = x
                    .gens
                    .get(*index)
                    .ok_or_else(|| TvError::Precondition(format!("generator {index} out of range")))?;
                if *inv {
                    g.inverse()
                        .map_err(|_| TvError::Precondition("singular generator".into()))?
                } else {
                    g.clone()
                }
            }
            Node::GroupGen { exp } => {
                let group = x.distinguished_group();
                group.member_matrix(f, exp)
            }
            Node::Concat(a, b) => {
                let ma = a.eval_inner(x, memo)?;
                let mb = b.eval_inner(x, memo)?;
                ma.mul(&mb)
            }
            Node::Inverse(w) => {
                let m = w.eval_inner(x, memo)?;
                m.inverse()
                    .map_err(|_| TvError::Precondition("inverse of singular word".into()))?
            }
            Node::Power { base, exp } => {
                let m = base.eval_inner(x, memo)?;
                match recognize(&m) {
                    Recognized::Proper(t) => match t.power(exp) {
                        Some(p) => p.matrix(),
                        None => Matrix::identity(f, x.n),
                    },
                    Recognized::Identity => Matrix::identity(f, x.n),
                    Recognized::NotTransvection => {
                        return Err(TvError::Precondition(
                            "power node on a non-transvection base".into(),
                        ))
                    }
                }
            }
        };
        memo.insert(self.key(), out.clone());
        Ok(out)
    }

    /// Expanded length over X ∪ X^{-1} ∪ {1}.
    pub fn len(&self, field: &F) -> u64 {
        let mut memo: HashMap<usize, u64> = HashMap::new();
        self.len_inner(field, &mut memo)
    }

    fn len_inner(&self, field: &F, memo: &mut HashMap<usize, u64>) -> u64 {
        if let Some(l) = memo.get(&self.key()) {
            return *l;
        }
        let out = match &*self.0 {
            Node::Identity => 0,
            Node::Gen { .. } => 1,
            Node::GroupGen { exp } => {
                if field.is_zero(exp) {
                    0
                } else {
                    1
                }
            }
            Node::Concat(a, b) => a
                .len_inner(field, memo)
                .saturating_add(b.len_inner(field, memo)),
            Node::Inverse(w) => w.len_inner(field, memo),
            Node::Power { base, exp } => {
                let reps = field.repeat_cost(exp);
                base.len_inner(field, memo).saturating_mul(reps.max(1)) * u64::from(reps > 0)
            }
        };
        memo.insert(self.key(), out);
        out
    }

    /// Flatten the DAG into an indexed node list (root last).
    pub fn to_nodes(&self, field: &F) -> Vec<WordNodeJson> {
        let mut order: Vec<WordNodeJson> = Vec::new();
        let mut index: HashMap<usize, usize> = HashMap::new();
        self.flatten(field, &mut order, &mut index);
        order
    }

    fn flatten(
        &self,
        field: &F,
        order: &mut Vec<WordNodeJson>,
        index: &mut HashMap<usize, usize>,
    ) -> usize {
        if let Some(&i) = index.get(&self.key()) {
            return i;
        }
        let node = match &*self.0 {
            Node::Identity => WordNodeJson::Identity,
            Node::Gen { index, inv } => WordNodeJson::Gen {
                index: *index,
                inv: *inv,
            },
            Node::GroupGen { exp } => WordNodeJson::GroupGen {
                exp: field.format_elem(exp),
            },
            Node::Concat(a, b) => {
                let ia = a.flatten(field, order, index);
                let ib = b.flatten(field, order, index);
                WordNodeJson::Concat { a: ia, b: ib }
            }
            Node::Inverse(w) => {
                let iw = w.flatten(field, order, index);
                WordNodeJson::Inverse { w: iw }
            }
            Node::Power { base, exp } => {
                let ib = base.flatten(field, order, index);
                WordNodeJson::Power {
                    base: ib,
                    exp: field.format_elem(exp),
                }
            }
        };
        order.push(node);
        let i = order.len() - 1;
        index.insert(self.key(), i);
        i
    }

    /// Rebuild a word from a flattened node list.
    pub fn from_nodes(field: &F, nodes: &[WordNodeJson]) -> Result<Word<F>, TvError> {
        let mut built: Vec<Word<F>> = Vec::with_capacity(nodes.len());
        let fetch = |built: &[Word<F>], i: usize| -> Result<Word<F>, TvError> {
            built
                .get(i)
                .cloned()
                .ok_or_else(|| TvError::Precondition(format!("node reference {i} out of range")))
        };
        for node in nodes {
            let w = match node {
                WordNodeJson::Identity => Word::identity(),
                WordNodeJson::Gen { index, inv } => {
                    if *inv {
                        Word::gen_inv(*index)
                    } else {
                        Word::gen(*index)
                    }
                }
                WordNodeJson::GroupGen { exp } => {
                    let e = field
                        .parse_elem(exp)
                        .map_err(|e| TvError::Precondition(e.to_string()))?;
                    Word::group_gen(field, e)
                }
                WordNodeJson::Concat { a, b } => {
                    Word::concat(&fetch(&built, *a)?, &fetch(&built, *b)?)
                }
                WordNodeJson::Inverse { w } => fetch(&built, *w)?.inverse(),
                WordNodeJson::Power { base, exp } => {
                    let e = field
                        .parse_elem(exp)
                        .map_err(|e| TvError::Precondition(e.to_string()))?;
                    Word::power(field, &fetch(&built, *base)?, e)
                }
            };
            built.push(w);
        }
        built
            .pop()
            .ok_or_else(|| TvError::Precondition("empty node list".into()))
    }
}

/// Serialized SLP node. Exponents are field elements formatted as strings;
/// node references are indices into the list.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum WordNodeJson {
    Identity,
    Gen { index: usize, inv: bool },
    GroupGen { exp: String },
    Concat { a: usize, b: usize },
    Inverse { w: usize },
    Power { base: usize, exp: String },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn elementary(field: &PrimeField, n: usize, i: usize, j: usize, lam: i64) -> Matrix<PrimeField> {
        let mut m = Matrix::identity(field, n);
        m.set(i, j, field.from_i64(lam));
        m
    }

    fn small_genset() -> GenSet<PrimeField> {
        let f = PrimeField::new(5).unwrap();
        let gens = vec![
            elementary(&f, 3, 0, 1, 1),
            elementary(&f, 3, 1, 2, 1),
            elementary(&f, 3, 2, 0, 1),
        ];
        GenSet::new(f, 3, gens, Distinguished::Transvection(0)).unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let x = small_genset();
        let w = Word::identity();
        assert!(w.evaluate(&x).unwrap().is_identity());
        assert_eq!(w.len(&x.field), 0);
    }

    #[test]
    fn gen_and_inverse_cancel() {
        let x = small_genset();
        let w = Word::concat(&Word::gen(0), &Word::gen_inv(0));
        assert!(w.evaluate(&x).unwrap().is_identity());
        assert_eq!(w.len(&x.field), 2);
    }

    #[test]
    fn word_matches_naive_product() {
        let x = small_genset();
        let seq = [0usize, 1, 2, 0, 0, 1, 2, 2, 1, 0];
        let w = Word::concat_all(&seq.iter().map(|&i| Word::gen(i)).collect::<Vec<_>>());
        let mut direct = Matrix::identity(&x.field, 3);
        for &i in &seq {
            direct = direct.mul(&x.gens[i]);
        }
        assert_eq!(w.evaluate(&x).unwrap(), direct);
        assert_eq!(w.len(&x.field), 10);
    }

    #[test]
    fn power_cost_convention() {
        let x = small_genset();
        let w = Word::power(&x.field, &Word::gen(0), 3);
        // cost: min(3, 5-3) = 2 repetitions of a length-1 base
        assert_eq!(w.len(&x.field), 2);
        // evaluates to (1+E12)^3
        let g = &x.gens[0];
        assert_eq!(w.evaluate(&x).unwrap(), g.mul(g).mul(g));
        let wz = Word::power(&x.field, &Word::gen(0), 0);
        assert_eq!(wz.len(&x.field), 0);
        assert!(wz.evaluate(&x).unwrap().is_identity());
    }

    #[test]
    fn json_round_trip() {
        let x = small_genset();
        let w = Word::commutator(
            &Word::power(&x.field, &Word::gen(0), 2),
            &Word::concat(&Word::gen(1), &Word::gen_inv(2)),
        );
        let nodes = w.to_nodes(&x.field);
        let back = Word::from_nodes(&x.field, &nodes).unwrap();
        assert_eq!(back.evaluate(&x).unwrap(), w.evaluate(&x).unwrap());
        assert_eq!(back.len(&x.field), w.len(&x.field));
    }
}
