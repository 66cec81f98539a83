use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use super::element::add_into;
use super::{Monomial, OperadElement};
use crate::error::Result;

/// Parity of the generator's weight, which decides whether Koszul signs
/// appear at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

/// Sign behaviour of the cyclic action on the unit and on `∘_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransportKind {
    Anticyclic,
    Cyclic,
}

/// `m ∘_slot m -> Σ coeff · m ∘_t m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub slot: usize,
    pub rhs: Vec<(usize, i64)>,
}

/// One ternary generator together with its relations and its cyclic action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadConfig {
    name: &'static str,
    parity: Parity,
    rules: Vec<RewriteRule>,
    transport: TransportKind,
    generator_value: i64,
}

/// One rule application during a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    /// The monomial rewritten, with its coefficient at that moment.
    pub monomial: Monomial,
    pub coeff: BigInt,
    /// Path of the upper vertex of the redex.
    pub path: Vec<usize>,
    pub slot: usize,
    pub measure_before: u64,
    /// Signed monomials replacing `monomial`.
    pub produced: Vec<(Monomial, i64)>,
    pub measures_after: Vec<u64>,
}

impl RewriteStep {
    pub fn decreases(&self) -> bool {
        self.measures_after.iter().all(|&m| m < self.measure_before)
    }
}

impl OperadConfig {
    /// The operad V: odd generator, `m∘_2m -> m∘_1m + m∘_3m`, anticyclic with
    /// `θ(m) = -m`.
    pub fn v() -> Self {
        OperadConfig {
            name: "V",
            parity: Parity::Odd,
            rules: vec![RewriteRule { slot: 2, rhs: vec![(1, 1), (3, 1)] }],
            transport: TransportKind::Anticyclic,
            generator_value: -1,
        }
    }

    /// V with its cyclic structure `γ = -θ`, so `γ(m) = m`.
    pub fn v_cyclic() -> Self {
        OperadConfig { name: "V-cyclic", transport: TransportKind::Cyclic, generator_value: 1, ..Self::v() }
    }

    /// The dual W: even generator, `w∘_2w -> -w∘_1w`, `w∘_3w -> w∘_1w`,
    /// cyclic with `γ(w) = -w`.
    pub fn w() -> Self {
        OperadConfig {
            name: "W",
            parity: Parity::Even,
            rules: vec![RewriteRule { slot: 2, rhs: vec![(1, -1)] }, RewriteRule { slot: 3, rhs: vec![(1, 1)] }],
            transport: TransportKind::Cyclic,
            generator_value: -1,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn transport(&self) -> TransportKind {
        self.transport
    }

    pub fn generator_value(&self) -> i64 {
        self.generator_value
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Weight of a component with `vertices` generators.
    pub fn weight(&self, vertices: usize) -> usize {
        match self.parity {
            Parity::Odd => vertices,
            Parity::Even => 0,
        }
    }

    fn sign(&self, exponent: usize) -> i64 {
        if self.parity == Parity::Odd && exponent % 2 == 1 {
            -1
        } else {
            1
        }
    }

    /// `a ∘_i b` on monomials: the grafted tree and its sign against
    /// preorder.
    pub fn compose_monomials(&self, a: &Monomial, i: usize, b: &Monomial) -> Result<(Monomial, i64)> {
        let (t, after) = a.graft(i, b)?;
        Ok((t, self.sign(after * b.vertices())))
    }

    /// `a ∘_i b`, bilinear.
    pub fn compose(&self, a: &OperadElement, i: usize, b: &OperadElement) -> Result<OperadElement> {
        let mut out = OperadElement::zero(a.arity() + b.arity() - 1);
        if i == 0 || i > a.arity() {
            return Err(crate::error::Error::PositionOutOfRange { position: i, arity: a.arity() });
        }
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let (t, s) = self.compose_monomials(ma, i, mb)?;
                out.add_term(t, ca * cb * s)?;
            }
        }
        Ok(out)
    }

    /// `a ∘_max b`.
    pub fn compose_max(&self, a: &OperadElement, b: &OperadElement) -> Result<OperadElement> {
        self.compose(a, a.arity(), b)
    }

    fn rule_for(&self, slot: usize) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.slot == slot)
    }

    /// Slots of the vertex at `path` where a rule applies, ascending.
    fn redex_slots(&self, t: &Monomial) -> Vec<usize> {
        let Some(c) = t.children() else { return Vec::new() };
        self.rules.iter().map(|r| r.slot).filter(|&s| !c[s - 1].is_leaf()).collect()
    }

    /// All redexes `(path, slot)`, vertices in preorder.
    pub fn redexes(&self, t: &Monomial) -> Vec<(Vec<usize>, usize)> {
        let mut out = Vec::new();
        for p in t.vertex_paths() {
            let mut slots = self.redex_slots(t.at(&p).expect("path from vertex_paths"));
            slots.sort_unstable();
            out.extend(slots.into_iter().map(|s| (p.clone(), s)));
        }
        out
    }

    /// The leftmost redex: first vertex in preorder, smallest slot.
    pub fn leftmost_redex(&self, t: &Monomial) -> Option<(Vec<usize>, usize)> {
        self.redexes(t).into_iter().next()
    }

    pub fn is_normal(&self, t: &Monomial) -> bool {
        self.leftmost_redex(t).is_none()
    }

    pub fn is_normal_element(&self, e: &OperadElement) -> bool {
        e.terms().all(|(m, _)| self.is_normal(m))
    }

    /// Applies the rule for `slot` at the vertex at `path`.
    pub fn rewrite_at(&self, t: &Monomial, path: &[usize], slot: usize) -> Option<Vec<(Monomial, i64)>> {
        let rule = self.rule_for(slot)?;
        let v = t.at(path)?.children()?;
        let u = v[slot - 1].children()?;
        let mut hanging: Vec<Monomial> = Vec::with_capacity(5);
        hanging.extend(v[..slot - 1].iter().cloned());
        hanging.extend(u.iter().cloned());
        hanging.extend(v[slot..].iter().cloned());
        let prefix = |k: usize| hanging[..k - 1].iter().map(Monomial::vertices).sum::<usize>();
        let mut out = Vec::with_capacity(rule.rhs.len());
        for &(target, c) in &rule.rhs {
            let inner =
                Monomial::node([hanging[target - 1].clone(), hanging[target].clone(), hanging[target + 1].clone()]);
            let mut ch: Vec<Monomial> = hanging[..target - 1].to_vec();
            ch.push(inner);
            ch.extend(hanging[target + 2..].iter().cloned());
            let local = Monomial::node([ch[0].clone(), ch[1].clone(), ch[2].clone()]);
            let sign = self.sign(prefix(slot) + prefix(target));
            out.push((t.replace_at(path, local), c * sign));
        }
        Some(out)
    }

    /// Termination measure, strictly decreasing along every rewrite step.
    ///
    /// For V it counts the middle-slot steps on each vertex's root path; for
    /// W each step into slot `s` costs `s - 1`.
    pub fn measure(&self, t: &Monomial) -> u64 {
        t.vertex_paths()
            .iter()
            .map(|p| match self.parity {
                Parity::Odd => p.iter().filter(|&&k| k == 1).count() as u64,
                Parity::Even => p.iter().map(|&k| k as u64).sum(),
            })
            .sum()
    }

    fn step(
        &self,
        terms: &mut BTreeMap<Monomial, BigInt>,
        m: Monomial,
        c: BigInt,
        path: Vec<usize>,
        slot: usize,
    ) -> RewriteStep {
        let produced = self.rewrite_at(&m, &path, slot).expect("redex located by the engine");
        for (t, s) in &produced {
            add_into(terms, t.clone(), &c * *s);
        }
        RewriteStep {
            measure_before: self.measure(&m),
            measures_after: produced.iter().map(|(t, _)| self.measure(t)).collect(),
            monomial: m,
            coeff: c,
            path,
            slot,
            produced,
        }
    }

    /// Reduces to normal form, always rewriting the leftmost redex of the
    /// smallest non-normal monomial. Returns the trace of rule applications.
    pub fn normal_form_traced(&self, e: &OperadElement) -> (OperadElement, Vec<RewriteStep>) {
        let arity = e.arity();
        let mut work = e.clone().into_terms();
        let mut done = BTreeMap::new();
        let mut trace = Vec::new();
        while let Some((m, c)) = work.pop_first() {
            match self.leftmost_redex(&m) {
                None => add_into(&mut done, m, c),
                Some((path, slot)) => trace.push(self.step(&mut work, m, c, path, slot)),
            }
        }
        (from_map(arity, done), trace)
    }

    pub fn normal_form(&self, e: &OperadElement) -> OperadElement {
        self.normal_form_traced(e).0
    }

    /// Reduces with randomly chosen monomials and redexes.
    pub fn normal_form_random<R: Rng>(&self, e: &OperadElement, rng: &mut R) -> (OperadElement, Vec<RewriteStep>) {
        let arity = e.arity();
        let mut work = e.clone().into_terms();
        let mut done = BTreeMap::new();
        let mut trace = Vec::new();
        while !work.is_empty() {
            let k = rng.gen_range(0..work.len());
            let m = work.keys().nth(k).expect("index in range").clone();
            let c = work.remove(&m).expect("key present");
            let redexes = self.redexes(&m);
            if redexes.is_empty() {
                add_into(&mut done, m, c);
            } else {
                let (path, slot) = redexes[rng.gen_range(0..redexes.len())].clone();
                trace.push(self.step(&mut work, m, c, path, slot));
            }
        }
        (from_map(arity, done), trace)
    }

    /// Applies one rule at a chosen position of every monomial of `e` that
    /// has that redex; other monomials are left alone.
    pub fn rewrite_once(&self, e: &OperadElement, path: &[usize], slot: usize) -> (OperadElement, Vec<RewriteStep>) {
        let mut out = BTreeMap::new();
        let mut trace = Vec::new();
        for (m, c) in e.clone().into_terms() {
            if self.redex_slots(m.at(path).unwrap_or(&Monomial::Leaf)).contains(&slot) {
                trace.push(self.step(&mut out, m, c, path.to_vec(), slot));
            } else {
                add_into(&mut out, m, c);
            }
        }
        (from_map(e.arity(), out), trace)
    }

    /// Normal monomials with `k` vertices.
    pub fn normal_monomials(&self, k: usize) -> Vec<Monomial> {
        Monomial::all(k).into_iter().filter(|t| self.is_normal(t)).collect()
    }
}

fn from_map(arity: usize, terms: BTreeMap<Monomial, BigInt>) -> OperadElement {
    let mut e = OperadElement::zero(arity);
    for (m, c) in terms {
        e.add_term(m, c).expect("reduction preserves arity");
    }
    e
}
