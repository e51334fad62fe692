use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::potential::RelationSet;
use crate::quiver::{DimVector, Quiver, Representation};

use super::locus::satisfies_relations;
use super::semistable::{graded_factors, same_factors};
use super::stability::{wall_equation, StabilityParameter};
use super::subrep::{advance, enumerate_subreps, SubRepresentation, DEFAULT_SEARCH_LIMIT};

/// Order in which the points of `Rep_Q(m⃗)(F_q)` are visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationOrder {
    Lexicographic,
    Reversed,
    Shuffled(u64),
}

/// `q^{Σ_e m_{s(e)} m_{t(e)}}`, saturating.
pub fn representation_count<F: Field>(quiver: &Quiver, dims: &DimVector) -> Result<u128> {
    let q = F::elements()
        .ok_or_else(|| Error::Unsupported(format!("enumerating representations over {}", F::name())))?
        .len() as u128;
    let entries: usize = quiver.edges().iter().map(|e| dims.get(e.source) * dims.get(e.target)).sum();
    Ok(q.saturating_pow(entries.min(u32::MAX as usize) as u32))
}

/// All representations of dimension `dims` over a finite field, each tagged
/// with its index in lexicographic order of matrix entries.
pub fn enumerate_representations<F: Field>(
    quiver: Arc<Quiver>,
    dims: &DimVector,
    order: EnumerationOrder,
    limit: u128,
) -> Result<Vec<(usize, Representation<F>)>> {
    let estimate = representation_count::<F>(&quiver, dims)?;
    if estimate > limit {
        return Err(Error::Infeasible { estimate, limit });
    }
    let elems = F::elements().expect("checked above");
    let shapes: Vec<(usize, usize)> = quiver.edges().iter().map(|e| (dims.get(e.target), dims.get(e.source))).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut counter = vec![0usize; entries];
    let mut out = Vec::new();
    loop {
        let mut it = counter.iter().rev();
        let maps = shapes
            .iter()
            .map(|&(r, c)| {
                let mut m = Matrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m[(i, j)] = elems[*it.next().expect("entry count")].clone();
                    }
                }
                m
            })
            .collect();
        out.push((out.len(), Representation::new(quiver.clone(), dims.clone(), maps)?));
        if !advance(&mut counter, elems.len()) {
            break;
        }
    }
    match order {
        EnumerationOrder::Lexicographic => {}
        EnumerationOrder::Reversed => out.reverse(),
        EnumerationOrder::Shuffled(seed) => out.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed)),
    }
    Ok(out)
}

/// One S-equivalence class: the common `gr` and the members by index.
#[derive(Clone, Debug)]
pub struct SClass<F> {
    pub factors: Vec<(Representation<F>, usize)>,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SEquivalenceReport<F> {
    pub total: usize,
    pub satisfying: usize,
    pub semistable: usize,
    pub classes: Vec<SClass<F>>,
}

impl<F> SEquivalenceReport<F> {
    /// The partition as sets of lexicographic indices, independent of the
    /// visiting order.
    pub fn partition(&self) -> BTreeSet<BTreeSet<usize>> {
        self.classes.iter().map(|c| c.members.iter().copied().collect()).collect()
    }

    pub fn class_of(&self, index: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&index))
    }
}

struct Point<F> {
    index: usize,
    rep: Representation<F>,
    subs: Vec<SubRepresentation<F>>,
}

fn points<F: Field>(
    quiver: Arc<Quiver>,
    reln: Option<&RelationSet<F>>,
    dims: &DimVector,
    order: EnumerationOrder,
    limit: u128,
) -> Result<(usize, Vec<Point<F>>)> {
    let all = enumerate_representations::<F>(quiver, dims, order, limit)?;
    let total = all.len();
    let mut out = Vec::new();
    for (index, rep) in all {
        if let Some(r) = reln {
            if !satisfies_relations(&rep, r)? {
                continue;
            }
        }
        let subs = enumerate_subreps(&rep, DEFAULT_SEARCH_LIMIT)?;
        out.push(Point { index, rep, subs });
    }
    Ok((total, out))
}

fn semistable_at<F: Field>(param: &StabilityParameter, p: &Point<F>) -> Result<bool> {
    let d = p.rep.dims();
    for s in &p.subs {
        if !s.is_zero() && !s.is_whole(&p.rep) && param.compare(s.dims(), d)? == Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}

fn classify<F: Field>(param: &StabilityParameter, total: usize, pts: &[Point<F>]) -> Result<SEquivalenceReport<F>> {
    let mut classes: Vec<SClass<F>> = Vec::new();
    let mut semistable = 0;
    for p in pts {
        if !semistable_at(param, p)? {
            continue;
        }
        semistable += 1;
        let gr = graded_factors(param, &p.rep)?;
        let mut placed = false;
        for c in classes.iter_mut() {
            if same_factors(&c.factors, &gr)? {
                c.members.push(p.index);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(SClass { factors: gr, members: vec![p.index] });
        }
    }
    Ok(SEquivalenceReport { total, satisfying: pts.len(), semistable, classes })
}

/// Enumerate `Rep_Q(m⃗)(F_q)`, keep the relation-satisfying semistable points
/// and group them by their Jordan–Hölder factors.
pub fn s_equivalence_classes<F: Field>(
    quiver: Arc<Quiver>,
    reln: Option<&RelationSet<F>>,
    dims: &DimVector,
    param: &StabilityParameter,
    order: EnumerationOrder,
    limit: u128,
) -> Result<SEquivalenceReport<F>> {
    if dims.is_zero() {
        return Err(Error::InvalidArgument("zero dimension vector".into()));
    }
    let (total, pts) = points(quiver, reln, dims, order, limit)?;
    classify(param, total, &pts)
}

/// Comparison of the semistable loci for `σ` and a perturbation `σ⁺`.
#[derive(Clone, Debug)]
pub struct WallCrossReport<F> {
    pub sigma: SEquivalenceReport<F>,
    pub sigma_plus: SEquivalenceReport<F>,
    /// Every `σ⁺`-semistable point is `σ`-semistable.
    pub inclusion_holds: bool,
    pub violations: Vec<usize>,
    /// `fibers[c]` lists the `σ⁺`-classes lying over the `σ`-class `c`.
    pub fibers: Vec<Vec<usize>>,
    /// Each `σ⁺`-class lies over a single `σ`-class.
    pub well_defined: bool,
}

impl<F> WallCrossReport<F> {
    /// Bijective fibering with singleton fibers.
    pub fn is_identity(&self) -> bool {
        self.well_defined && self.fibers.iter().all(|f| f.len() == 1) && self.fibers.len() == self.sigma_plus.classes.len()
    }
}

/// Dimension vectors of subrepresentations whose slope comparison with the
/// whole flips strictly between `σ` and `σ⁺` on some enumerated point.
pub fn walls_between<F: Field>(
    quiver: Arc<Quiver>,
    reln: Option<&RelationSet<F>>,
    dims: &DimVector,
    sigma: &StabilityParameter,
    sigma_plus: &StabilityParameter,
    limit: u128,
) -> Result<Vec<DimVector>> {
    let (_, pts) = points(quiver, reln, dims, EnumerationOrder::Lexicographic, limit)?;
    flips(&pts, dims, sigma, sigma_plus)
}

fn flips<F: Field>(pts: &[Point<F>], dims: &DimVector, sigma: &StabilityParameter, sigma_plus: &StabilityParameter) -> Result<Vec<DimVector>> {
    let mut walls: BTreeSet<Vec<usize>> = BTreeSet::new();
    for p in pts {
        for s in &p.subs {
            if s.is_zero() || s.is_whole(&p.rep) {
                continue;
            }
            let a = sigma.compare(s.dims(), dims)?;
            let b = sigma_plus.compare(s.dims(), dims)?;
            if a != Ordering::Equal && b != Ordering::Equal && a != b {
                walls.insert(s.dims().0.clone());
            }
        }
    }
    Ok(walls.into_iter().map(DimVector).collect())
}

/// Check that no wall separates `σ` from `σ⁺`, that `σ⁺`-semistability
/// implies `σ`-semistability, and record how `σ⁺`-classes fiber over
/// `σ`-classes.
pub fn wallcross_compare<F: Field>(
    quiver: Arc<Quiver>,
    reln: Option<&RelationSet<F>>,
    dims: &DimVector,
    sigma: &StabilityParameter,
    sigma_plus: &StabilityParameter,
    limit: u128,
) -> Result<WallCrossReport<F>> {
    if dims.is_zero() {
        return Err(Error::InvalidArgument("zero dimension vector".into()));
    }
    let (total, pts) = points(quiver, reln, dims, EnumerationOrder::Lexicographic, limit)?;
    let walls = flips(&pts, dims, sigma, sigma_plus)?;
    if !walls.is_empty() {
        let eqs: Vec<String> = walls.iter().map(|w| wall_equation(w, dims)).collect();
        return Err(Error::WallDetected(eqs.join("; ")));
    }
    let lower = classify(sigma, total, &pts)?;
    let upper = classify(sigma_plus, total, &pts)?;
    let mut violations = Vec::new();
    for c in &upper.classes {
        for &m in &c.members {
            if lower.class_of(m).is_none() {
                violations.push(m);
            }
        }
    }
    let mut fibers = vec![Vec::new(); lower.classes.len()];
    let mut well_defined = true;
    for (j, c) in upper.classes.iter().enumerate() {
        let targets: BTreeSet<usize> = c.members.iter().filter_map(|&m| lower.class_of(m)).collect();
        if targets.len() != 1 {
            well_defined = false;
        }
        for t in targets {
            fibers[t].push(j);
        }
    }
    Ok(WallCrossReport {
        inclusion_holds: violations.is_empty(),
        violations,
        fibers,
        well_defined,
        sigma: lower,
        sigma_plus: upper,
    })
}
