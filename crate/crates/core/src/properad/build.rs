//! Construction of concrete finite properads: terminal truncations and a
//! seeded random family.
//!
//! The random family is graded and weighted: operations in an admissible
//! biprofile cell are the elements of a small commutative monoid, cells are
//! admitted by a modular color-weight balance, and composition multiplies
//! the two operations together with a twist raised to the number of
//! independent cycles the graft closes. Units, associativity, and
//! equivariance hold by construction; the axiom checker verifies the
//! assembled tables.

use super::axioms::enumerate_decorated_pgcs;
use super::finite::{FiniteProperad, OpId, PropDecoration};
use crate::graph::{Biprofile, Color};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

/// A small commutative monoid given by a multiplication table.
#[derive(Debug, Clone)]
pub struct SmallMonoid {
    pub name: &'static str,
    pub size: usize,
    pub unit: usize,
    table: fn(usize, usize) -> usize,
}

impl SmallMonoid {
    pub fn mul(&self, a: usize, b: usize) -> usize {
        (self.table)(a, b)
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = self.unit;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }
}

/// The catalog of monoids the random generator draws from.
pub fn monoid_catalog() -> Vec<SmallMonoid> {
    vec![
        SmallMonoid {
            name: "trivial",
            size: 1,
            unit: 0,
            table: |_, _| 0,
        },
        SmallMonoid {
            name: "z2",
            size: 2,
            unit: 0,
            table: |a, b| (a + b) % 2,
        },
        SmallMonoid {
            name: "z3",
            size: 3,
            unit: 0,
            table: |a, b| (a + b) % 3,
        },
        SmallMonoid {
            name: "or",
            size: 2,
            unit: 0,
            table: |a, b| a.max(b),
        },
        SmallMonoid {
            name: "max3",
            size: 3,
            unit: 0,
            table: |a, b| a.max(b),
        },
    ]
}

/// Parameters of a graded weighted properad.
#[derive(Debug, Clone)]
pub struct GradedSpec {
    pub colors: Vec<Color>,
    pub max_in: usize,
    pub max_out: usize,
    pub monoid: SmallMonoid,
    /// Twist multiplied once per independent cycle a composition closes.
    pub twist: usize,
    /// Cells are admitted when input and output weight sums agree mod this.
    pub modulus: usize,
    pub weights: BTreeMap<Color, usize>,
}

fn op_name(z: usize, profile: &Biprofile) -> OpId {
    let ins: Vec<&str> = profile.inputs.iter().map(Color::as_str).collect();
    let outs: Vec<&str> = profile.outputs.iter().map(Color::as_str).collect();
    OpId::new(format!("z{z}({};{})", ins.join(","), outs.join(",")))
}

fn cell_allowed(spec: &GradedSpec, profile: &Biprofile) -> bool {
    let sum = |cs: &[Color]| -> usize {
        cs.iter().map(|c| spec.weights.get(c).copied().unwrap_or(0)).sum()
    };
    if spec.modulus <= 1 {
        return true;
    }
    sum(&profile.inputs) % spec.modulus == sum(&profile.outputs) % spec.modulus
}

fn all_profiles(spec: &GradedSpec) -> Vec<Biprofile> {
    let arity_lists = |max: usize| -> Vec<Vec<Color>> {
        let mut out: Vec<Vec<Color>> = vec![vec![]];
        for _ in 0..max {
            let mut next = out.clone();
            for prefix in &out {
                for c in &spec.colors {
                    let mut ext = prefix.clone();
                    ext.push(c.clone());
                    next.push(ext);
                }
            }
            out = next;
            out.sort();
            out.dedup();
        }
        out
    };
    let ins = arity_lists(spec.max_in);
    let outs = arity_lists(spec.max_out);
    let mut profiles = Vec::new();
    for i in &ins {
        for o in &outs {
            profiles.push(Biprofile::new(i.clone(), o.clone()));
        }
    }
    profiles
}

/// Build the graded weighted properad for `spec`.
pub fn graded_properad(spec: &GradedSpec) -> FiniteProperad {
    let colors: BTreeSet<Color> = spec.colors.iter().cloned().collect();
    let mut ops: BTreeMap<Biprofile, BTreeSet<OpId>> = BTreeMap::new();
    for profile in all_profiles(spec) {
        if !cell_allowed(spec, &profile) {
            continue;
        }
        let cell: BTreeSet<OpId> = (0..spec.monoid.size).map(|z| op_name(z, &profile)).collect();
        ops.insert(profile, cell);
    }
    let units: BTreeMap<Color, OpId> = spec
        .colors
        .iter()
        .map(|c| {
            let profile = Biprofile::new(vec![c.clone()], vec![c.clone()]);
            (c.clone(), op_name(spec.monoid.unit, &profile))
        })
        .collect();

    let mut input_swaps = BTreeMap::new();
    let mut output_swaps = BTreeMap::new();
    for (profile, cell) in &ops {
        for op in cell {
            let z = parse_z(op);
            for i in 1..profile.inputs.len() {
                let mut p2 = profile.clone();
                p2.inputs.swap(i - 1, i);
                input_swaps.insert((op.clone(), i), op_name(z, &p2));
            }
            for i in 1..profile.outputs.len() {
                let mut p2 = profile.clone();
                p2.outputs.swap(i - 1, i);
                output_swaps.insert((op.clone(), i), op_name(z, &p2));
            }
        }
    }

    let mut p = FiniteProperad::assemble(
        colors,
        spec.max_in,
        spec.max_out,
        ops,
        units,
        input_swaps,
        output_swaps,
        Vec::new(),
    )
    .expect("graded spec assembles");

    // Composition table: multiply the two operations, twisting once per
    // parallel graft edge beyond the first.
    let entries: Vec<(PropDecoration, OpId)> = enumerate_decorated_pgcs(&p)
        .into_iter()
        .map(|pgc| {
            let z1 = parse_z(&pgc.vertices[&"u".into()]);
            let z2 = parse_z(&pgc.vertices[&"v".into()]);
            let grafts = pgc.shape.internal_edges().count();
            let z = spec
                .monoid
                .mul(spec.monoid.mul(z1, z2), spec.monoid.pow(spec.twist, grafts - 1));
            let profile = Biprofile::new(
                pgc.shape.inputs().iter().map(|e| pgc.edges[e].clone()).collect(),
                pgc.shape.outputs().iter().map(|e| pgc.edges[e].clone()).collect(),
            );
            let result = op_name(z, &profile);
            (pgc, result)
        })
        .collect();
    for (rep, result) in entries {
        p.insert_entry(rep, result).expect("table entry resolves");
    }
    p
}

fn parse_z(op: &OpId) -> usize {
    let s = op.as_str();
    let digits: String = s[1..].chars().take_while(|c| c.is_ascii_digit()).collect();
    digits.parse().expect("graded op name")
}

/// The terminal properad truncation: the given colors, one operation per
/// biprofile within the arity bounds.
pub fn terminal_properad(colors: &[Color], max_in: usize, max_out: usize) -> FiniteProperad {
    let catalog = monoid_catalog();
    graded_properad(&GradedSpec {
        colors: colors.to_vec(),
        max_in,
        max_out,
        monoid: catalog[0].clone(),
        twist: 0,
        modulus: 1,
        weights: BTreeMap::new(),
    })
}

/// A seeded random properad: random color count, arity caps balanced
/// against the color count, a random monoid from the catalog, a random
/// twist, and a random modular grading. The result always passes
/// [`FiniteProperad::check_axioms`].
pub fn random_properad(rng: &mut impl Rng) -> FiniteProperad {
    let n_colors = rng.random_range(1..=3usize);
    let colors: Vec<Color> = (0..n_colors)
        .map(|i| Color::from(["a", "b", "c"][i]))
        .collect();
    // Keep the decoration spaces desk scale: more colors, lower arities.
    let (max_in, max_out) = match n_colors {
        1 => (rng.random_range(2..=3), rng.random_range(2..=3)),
        2 => (2, 2),
        _ => (1, 1),
    };
    let catalog = monoid_catalog();
    let monoid = catalog[rng.random_range(0..catalog.len())].clone();
    let twist = rng.random_range(0..monoid.size);
    let modulus = rng.random_range(1..=3usize);
    let weights: BTreeMap<Color, usize> = colors
        .iter()
        .map(|c| (c.clone(), rng.random_range(0..modulus.max(1))))
        .collect();
    graded_properad(&GradedSpec {
        colors,
        max_in,
        max_out,
        monoid,
        twist,
        modulus,
        weights,
    })
}
