//! Brute-force ground truth on small symplectic groups.
//!
//! Sp(2m, p) is built element by element as the closure of a fixed generating
//! set, its semisimple classes are found by conjugation orbits, and the result
//! is compared with the descriptor enumeration.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::classify::descriptor_of;
use crate::enumerate::{count_classes, emit_representatives, EnumSpec};
use crate::error::{Error, Result};
use crate::ffield::Fp;
use crate::fmatrix::{semisimple_canonical, Mat};
use crate::forms::{is_symplectic, standard_j};

/// Largest group the oracle will enumerate.
pub const GROUP_ORDER_CAP: u128 = 1_000_000;

/// `p^(m²) Π_{i=1..m} (p^(2i) - 1)`, or `None` on overflow.
pub fn sp_order(m: usize, p: u32) -> Option<u128> {
    let p = p as u128;
    let mut order = p.checked_pow((m * m) as u32)?;
    for i in 1..=m {
        order = order.checked_mul(p.checked_pow(2 * i as u32)? - 1)?;
    }
    Some(order)
}

fn encode(x: &Mat) -> Vec<u8> {
    x.data().iter().map(|&v| v as u8).collect()
}

/// Every element of Sp(2m, p) with respect to the standard J.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub m: usize,
    pub field: Fp,
    pub generators: Vec<Mat>,
    pub elements: Vec<Mat>,
    index: HashMap<Vec<u8>, usize>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &Mat) -> bool {
        self.index.contains_key(&encode(x))
    }

    pub fn position(&self, x: &Mat) -> Option<usize> {
        self.index.get(&encode(x)).copied()
    }
}

/// Generators of Sp(2m, p) for `J = (0 I; -I 0)`:
/// `(I S; 0 I)` and `(I 0; S I)` for the elementary symmetric S, together
/// with `diag(A, A'^{-1})` for A running over generators of GL(m, p)
/// (a primitive-root diagonal, `I + E_12` and the cyclic shift).
pub fn sp_generators(field: Fp, m: usize) -> Vec<Mat> {
    let n = 2 * m;
    let mut gens = Vec::new();
    for i in 0..m {
        for j in i..m {
            for lower in [false, true] {
                let mut x = Mat::identity(field, n);
                let (r, c) = if lower { (m, 0) } else { (0, m) };
                x.set(r + i, c + j, 1);
                x.set(r + j, c + i, 1);
                gens.push(x);
            }
        }
    }
    let mut levi = Vec::new();
    let mut d = Mat::identity(field, m);
    d.set(0, 0, field.primitive_root());
    levi.push(d);
    if m >= 2 {
        let mut e = Mat::identity(field, m);
        e.set(0, 1, 1);
        levi.push(e);
        let mut cyc = Mat::zeros(field, m, m);
        for i in 0..m {
            cyc.set(i, (i + 1) % m, 1);
        }
        levi.push(cyc);
    }
    for a in levi {
        let inv_t = a.inverse().expect("GL generator").transpose();
        gens.push(Mat::block_diag(field, &[a, inv_t]));
    }
    gens
}

/// Breadth-first closure of [`sp_generators`], checked against the order formula.
pub fn build_group(m: usize, p: u64) -> Result<GroupTable> {
    let field = Fp::new(p)?;
    if m == 0 {
        return Err(Error::PreconditionViolated("m must be at least 1".into()));
    }
    let expected = sp_order(m, field.p()).ok_or(Error::Overflow)?;
    if expected > GROUP_ORDER_CAP {
        return Err(Error::CapExceeded { order: expected, cap: GROUP_ORDER_CAP });
    }
    let generators = sp_generators(field, m);
    let j = standard_j(field, 2 * m)?;
    for g in &generators {
        assert!(is_symplectic(g, &j)?, "generator does not preserve J");
    }
    let id = Mat::identity(field, 2 * m);
    let mut index = HashMap::new();
    index.insert(encode(&id), 0);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &generators {
            let y = elements[i].mul(g);
            let key = encode(&y);
            if let Entry::Vacant(e) = index.entry(key) {
                e.insert(elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
            if elements.len() as u128 > expected {
                return Err(Error::ClosureMismatch { expected, got: elements.len() as u128 });
            }
        }
    }
    if elements.len() as u128 != expected {
        return Err(Error::ClosureMismatch { expected, got: elements.len() as u128 });
    }
    Ok(GroupTable { m, field, generators, elements, index })
}

#[derive(Clone, Debug)]
pub struct OracleClass {
    /// Lowest-encoded member.
    pub representative: Mat,
    pub size: usize,
}

/// Semisimple conjugacy classes with a membership lookup.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub classes: Vec<OracleClass>,
    /// element index in the group table ↦ class index
    membership: HashMap<usize, usize>,
}

impl ClassPartition {
    pub fn class_of(&self, group: &GroupTable, x: &Mat) -> Option<usize> {
        group.position(x).and_then(|i| self.membership.get(&i).copied())
    }

    pub fn semisimple_count(&self) -> usize {
        self.membership.len()
    }
}

/// Partitions the semisimple elements into conjugacy classes by closing each
/// under conjugation by the generators.
pub fn semisimple_classes(group: &GroupTable) -> ClassPartition {
    let gens: Vec<(Mat, Mat)> = group
        .generators
        .iter()
        .map(|g| (g.clone(), g.inverse().expect("group element")))
        .collect();
    let mut order: Vec<usize> = (0..group.order())
        .filter(|&i| group.elements[i].minpoly().is_separable())
        .collect();
    order.sort_by_key(|&i| encode(&group.elements[i]));
    let mut membership = HashMap::new();
    let mut classes = Vec::new();
    for start in order {
        if membership.contains_key(&start) {
            continue;
        }
        let cls = classes.len();
        membership.insert(start, cls);
        let mut size = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for (g, gi) in &gens {
                let y = g.mul(&group.elements[i]).mul(gi);
                let k = group.position(&y).expect("group is closed under conjugation");
                if let Entry::Vacant(e) = membership.entry(k) {
                    e.insert(cls);
                    size += 1;
                    queue.push_back(k);
                }
            }
        }
        classes.push(OracleClass { representative: group.elements[start].clone(), size });
    }
    ClassPartition { classes, membership }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub m: usize,
    pub p: u32,
    pub group_order: usize,
    pub semisimple_element_count: usize,
    pub oracle_class_count: usize,
    pub enumerated_count: u128,
    pub matched: bool,
    pub mismatches: Vec<String>,
    pub claims: Vec<Claim>,
}

impl CrosscheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn claim(name: &str, failures: &[String], ok_detail: String) -> Claim {
    Claim {
        name: name.into(),
        pass: failures.is_empty(),
        detail: if failures.is_empty() { ok_detail } else { format!("{} failure(s)", failures.len()) },
    }
}

/// Compares the oracle with the enumeration. Failures are reported, not raised;
/// errors only come from building the group.
pub fn crosscheck(m: usize, p: u64) -> Result<CrosscheckReport> {
    let group = build_group(m, p)?;
    let parts = semisimple_classes(&group);
    let spec = EnumSpec::new(m, p)?;
    let enumerated = count_classes(spec)?;
    let mut mismatches = Vec::new();
    let mut claims = Vec::new();

    // partition sanity
    let mut bad = Vec::new();
    let total: usize = parts.classes.iter().map(|c| c.size).sum();
    if total != parts.semisimple_count() {
        bad.push(format!("class sizes sum to {total}, expected {}", parts.semisimple_count()));
    }
    for c in &parts.classes {
        if group.order() % c.size != 0 {
            bad.push(format!("class size {} does not divide {}", c.size, group.order()));
        }
    }
    claims.push(claim("partition", &bad, format!("{} classes", parts.classes.len())));
    mismatches.extend(bad);

    // counts
    let mut bad = Vec::new();
    if parts.classes.len() as u128 != enumerated {
        bad.push(format!("oracle has {} classes, count_classes gives {enumerated}", parts.classes.len()));
    }
    claims.push(claim("class count", &bad, format!("{enumerated} = {}", parts.classes.len())));
    mismatches.extend(bad);

    // transversal
    let mut bad = Vec::new();
    let mut hit = vec![0usize; parts.classes.len()];
    let mut emitted = 0;
    for rep in emit_representatives(spec)? {
        emitted += 1;
        match rep {
            Err(e) => bad.push(format!("representative failed: {e}")),
            Ok(r) => match parts.class_of(&group, &r.x) {
                Some(c) => hit[c] += 1,
                None => bad.push(format!("representative for {} is not a semisimple group element", r.descriptor)),
            },
        }
    }
    for (c, &h) in hit.iter().enumerate() {
        if h != 1 {
            bad.push(format!("oracle class {c} contains {h} representatives"));
        }
    }
    claims.push(claim("transversal", &bad, format!("{emitted} representatives, one per class")));
    mismatches.extend(bad);

    // GL-similar semisimple classes coincide
    let mut bad = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (c, cls) in parts.classes.iter().enumerate() {
        let blocks = semisimple_canonical(&cls.representative)?.blocks;
        let key = format!("{blocks:?}");
        if let Some(prev) = seen.insert(key, c) {
            bad.push(format!("classes {prev} and {c} are GL-similar but not Sp-conjugate"));
        }
        if let Err(e) = descriptor_of(&cls.representative) {
            bad.push(format!("class {c}: descriptor failed: {e}"));
        }
    }
    claims.push(claim("unique Sp-class per GL-class", &bad, format!("{} GL-classes", seen.len())));
    mismatches.extend(bad);

    // every element is similar to its inverse
    let mut bad = Vec::new();
    for x in &group.elements {
        let xi = x.inverse()?;
        if x.similarity_invariants() != xi.similarity_invariants() {
            bad.push(format!("element not similar to its inverse:\n{x}"));
        }
    }
    claims.push(claim("x similar to x^-1", &bad, format!("{} elements", group.order())));
    mismatches.extend(bad);

    Ok(CrosscheckReport {
        m,
        p: group.field.p(),
        group_order: group.order(),
        semisimple_element_count: parts.semisimple_count(),
        oracle_class_count: parts.classes.len(),
        enumerated_count: enumerated,
        matched: claims.iter().all(|c| c.pass),
        mismatches,
        claims,
    })
}

/// GL-similarity classes met by the semisimple elements, for diagnostics.
pub fn gl_class_count(parts: &ClassPartition) -> usize {
    parts
        .classes
        .iter()
        .filter_map(|c| semisimple_canonical(&c.representative).ok())
        .map(|c| format!("{:?}", c.blocks))
        .collect::<HashSet<_>>()
        .len()
}
