use crate::error::{Error, Result};
use crate::gl2rep::{char_table_for, induced_principal_series, Gl2Context, Gl2Family, Gl2Table};
use crate::groups::{ConjugacyClasses, Element, GroupHandle, IndexedGroup};
use crate::rep::{kron, realize_by_projection, CharacterTable, RealizedIrrep, DEFAULT_REALIZE_CAP};
use crate::symrep::{mn_character, yor_matrices, Partition};
use crate::wreathrep::{wreath_char_table, wreath_character, wreath_realize, WreathIrrep};
use num_complex::Complex64;
use rayon::prelude::*;

/// Enumeration and realization limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Caps {
    pub enumeration: u128,
    pub realization: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { enumeration: 1_000_000, realization: DEFAULT_REALIZE_CAP }
    }
}

#[derive(Clone, Debug)]
pub enum ModelKind {
    Symmetric(Vec<Partition>),
    Gl2(Box<Gl2Table>),
    Product(Box<GroupModel>, Box<GroupModel>),
    Wreath(Box<GroupModel>, Vec<WreathIrrep>),
}

/// An enumerated group with its conjugacy classes and full character table.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub group: IndexedGroup,
    pub classes: ConjugacyClasses,
    pub table: CharacterTable,
    pub kind: ModelKind,
    caps: Caps,
}

impl GroupModel {
    /// Supports S_n, GL_2(F_q), direct products and wreath products with Z_2.
    pub fn build(handle: &GroupHandle, caps: Caps) -> Result<GroupModel> {
        let group = IndexedGroup::new(handle.clone(), caps.enumeration)?;
        let classes = group.conjugacy_classes();
        let reps: Vec<&Element> = (0..classes.len()).map(|c| group.element(classes.representative(c))).collect();
        let sizes: Vec<usize> = (0..classes.len()).map(|c| classes.size(c)).collect();
        let (kind, table) = match handle {
            GroupHandle::Symmetric(n) => {
                let parts = crate::symrep::partitions(*n)?;
                let mut values = Vec::with_capacity(parts.len());
                for lam in &parts {
                    let row = reps
                        .iter()
                        .map(|e| {
                            let mu = Partition::new(e.as_perm().unwrap().cycle_type())?;
                            Ok(Complex64::new(mn_character(lam, &mu)? as f64, 0.0))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    values.push(row);
                }
                let table = CharacterTable {
                    labels: parts.iter().map(|p| p.to_string()).collect(),
                    dims: parts.iter().map(|p| crate::symrep::dimension(p) as usize).collect(),
                    class_sizes: sizes,
                    values,
                };
                (ModelKind::Symmetric(parts), table)
            }
            GroupHandle::GeneralLinear { k: 2, field } => {
                let gl2 = char_table_for(Gl2Context::from_field(field.clone())?);
                let mats: Vec<_> = reps.iter().map(|e| e.as_mat().unwrap().clone()).collect();
                let table = gl2.to_character_table(&mats, &sizes)?;
                (ModelKind::Gl2(Box::new(gl2)), table)
            }
            GroupHandle::GeneralLinear { k, .. } => {
                return Err(Error::InvalidParameter(format!("character tables of GL_{k} are not available")));
            }
            GroupHandle::Product(a, b) => {
                let (ma, mb) = (GroupModel::build(a, caps)?, GroupModel::build(b, caps)?);
                let mut labels = Vec::new();
                let mut dims = Vec::new();
                for i in 0..ma.table.num_irreps() {
                    for j in 0..mb.table.num_irreps() {
                        labels.push(format!("{}x{}", ma.table.labels[i], mb.table.labels[j]));
                        dims.push(ma.table.dims[i] * mb.table.dims[j]);
                    }
                }
                let mut values = vec![Vec::with_capacity(reps.len()); labels.len()];
                for e in &reps {
                    let (x, y) = e.as_pair().unwrap();
                    let (vx, vy) = (ma.values_at(x)?, mb.values_at(y)?);
                    for i in 0..vx.len() {
                        for j in 0..vy.len() {
                            values[i * vy.len() + j].push(vx[i] * vy[j]);
                        }
                    }
                }
                let table = CharacterTable { labels, dims, class_sizes: sizes, values };
                (ModelKind::Product(Box::new(ma), Box::new(mb)), table)
            }
            GroupHandle::WreathZ2(base) => {
                let mb = GroupModel::build(base, caps)?;
                let irreps = wreath_char_table(&mb.table);
                let mut values = vec![Vec::with_capacity(reps.len()); irreps.len()];
                for e in &reps {
                    let (x, y, b) = e.as_wreath().unwrap();
                    let vx = mb.values_at(x)?;
                    let vy = mb.values_at(y)?;
                    let vxy = mb.values_at(&base.mul_unchecked(x, y))?;
                    for (r, irrep) in irreps.iter().enumerate() {
                        values[r].push(wreath_character(irrep.kind, &vx, &vy, &vxy, b));
                    }
                }
                let table = CharacterTable {
                    labels: irreps.iter().map(|r| r.label.clone()).collect(),
                    dims: irreps.iter().map(|r| r.dim).collect(),
                    class_sizes: sizes,
                    values,
                };
                (ModelKind::Wreath(Box::new(mb), irreps), table)
            }
        };
        Ok(GroupModel { group, classes, table, kind, caps })
    }

    pub fn handle(&self) -> &GroupHandle {
        self.group.handle()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn num_irreps(&self) -> usize {
        self.table.num_irreps()
    }

    /// chi_r(g) for an element position g.
    #[inline]
    pub fn chi(&self, r: usize, g: usize) -> Complex64 {
        self.table.values[r][self.classes.class_of[g]]
    }

    /// All character values at an element.
    pub fn values_at(&self, e: &Element) -> Result<Vec<Complex64>> {
        let c = self.classes.class_of[self.group.index_of(e)?];
        Ok(self.table.values.iter().map(|row| row[c]).collect())
    }

    /// Indices of the one-dimensional irreps.
    pub fn linear_irreps(&self) -> Vec<usize> {
        (0..self.num_irreps()).filter(|&r| self.table.dims[r] == 1).collect()
    }

    /// One unitary realization per irrep, checked against the character table.
    ///
    /// S_n uses Young's orthogonal form, GL_2 uses induced models for W and the
    /// regular-representation projection for the rest, products use Kronecker
    /// products and wreath products use the explicit wreath construction.
    pub fn realize_all(&self, seed: u64) -> Result<Vec<RealizedIrrep>> {
        let realized: Vec<RealizedIrrep> = match &self.kind {
            ModelKind::Symmetric(parts) => {
                parts.par_iter().map(|p| yor_matrices(p)?.realize(&self.group)).collect::<Result<_>>()?
            }
            ModelKind::Gl2(gl2) => (0..self.num_irreps())
                .into_par_iter()
                .map(|r| match gl2.chars[r].family {
                    Gl2Family::W { alpha, beta } => induced_principal_series(&gl2.ctx, alpha, beta, &self.group),
                    _ => {
                        let chi: Vec<Complex64> = (0..self.order()).map(|g| self.chi(r, g)).collect();
                        realize_by_projection(
                            &self.group,
                            &chi,
                            self.table.dims[r],
                            &self.table.labels[r],
                            seed.wrapping_add(r as u64),
                            self.caps.realization,
                        )
                    }
                })
                .collect::<Result<_>>()?,
            ModelKind::Product(ma, mb) => {
                let (ra, rb) = (ma.realize_all(seed)?, mb.realize_all(seed)?);
                let idx: Vec<(usize, usize)> = self
                    .group
                    .elements()
                    .iter()
                    .map(|e| {
                        let (x, y) = e.as_pair().unwrap();
                        Ok((ma.group.index_of(x)?, mb.group.index_of(y)?))
                    })
                    .collect::<Result<_>>()?;
                let mut out = Vec::new();
                for a in &ra {
                    for b in &rb {
                        let mats = idx.iter().map(|&(i, j)| kron(a.matrix(i), b.matrix(j))).collect();
                        out.push(RealizedIrrep::new(
                            format!("{}x{}", a.label, b.label),
                            format!("kronecker({},{})", a.provenance, b.provenance),
                            mats,
                        ));
                    }
                }
                out
            }
            ModelKind::Wreath(mb, irreps) => {
                let base = mb.realize_all(seed)?;
                irreps.par_iter().map(|w| wreath_realize(w, &base, &mb.group, &self.group)).collect::<Result<_>>()?
            }
        };
        self.verify_realizations(&realized, 1e-8)?;
        Ok(realized)
    }

    /// Checks sum d^2 = |G| and traces against the character table.
    pub fn verify_realizations(&self, realized: &[RealizedIrrep], tol: f64) -> Result<()> {
        let total: usize = realized.iter().map(|r| r.dim * r.dim).sum();
        if total != self.order() {
            return Err(Error::Numerical(format!("sum of squared dimensions {total} != |G| = {}", self.order())));
        }
        for (r, rep) in realized.iter().enumerate() {
            for g in 0..self.order() {
                let err = (rep.trace(g) - self.chi(r, g)).norm();
                if err > tol {
                    return Err(Error::Numerical(format!(
                        "trace of {} at {} differs from the character by {err:e}",
                        rep.label,
                        self.group.element(g)
                    )));
                }
            }
        }
        Ok(())
    }
}
