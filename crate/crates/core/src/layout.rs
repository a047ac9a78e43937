//! Vertical layer layout, possibly varying from one interface to the next.
//!
//! Thickness fractions are stored at every velocity interface. Cells take the
//! layering of whichever neighbouring interface has more layers, so each cell
//! layering refines both of its faces. Fluxes through a face are evaluated on
//! the finer of the two adjacent cell layerings and summed into the coarser
//! one, which keeps the density update conservative across layer-count
//! transitions.

use crate::error::{Error, Result};

/// Tolerance on the sum of a fraction table.
pub const FRACTION_SUM_TOL: f64 = 1e-14;
const BOUNDARY_MATCH_TOL: f64 = 1e-12;

/// Maps column values between two conformal layerings.
#[derive(Debug, Clone, PartialEq)]
pub enum Remap {
    Identity,
    /// Target is finer: every target layer copies its parent.
    Refine {
        parent: Vec<usize>,
    },
    /// Target is coarser: fraction-weighted average of the children.
    Coarsen {
        parent: Vec<usize>,
        weight: Vec<f64>,
        n_target: usize,
    },
}

impl Remap {
    /// Builds the map from `src` layering to `dst` layering. The two tables
    /// must be identical, or one must be a partition refinement of the other.
    pub fn between(src: &[f64], dst: &[f64]) -> Result<Self> {
        if src.len() == dst.len() {
            if src == dst {
                return Ok(Remap::Identity);
            }
            return Err(Error::Layout(format!(
                "adjacent tables with {} layers differ: {:?} vs {:?}",
                src.len(),
                src,
                dst
            )));
        }
        let (fine, coarse) = if src.len() > dst.len() { (src, dst) } else { (dst, src) };
        let parent = refinement_parents(fine, coarse)?;
        if dst.len() > src.len() {
            Ok(Remap::Refine { parent })
        } else {
            Ok(Remap::Coarsen { parent, weight: fine.to_vec(), n_target: coarse.len() })
        }
    }

    pub fn apply(&self, src: &[f64], dst: &mut [f64]) {
        match self {
            Remap::Identity => dst.copy_from_slice(src),
            Remap::Refine { parent } => {
                for (d, &p) in dst.iter_mut().zip(parent) {
                    *d = src[p];
                }
            }
            Remap::Coarsen { parent, weight, n_target } => {
                debug_assert_eq!(dst.len(), *n_target);
                let mut wsum = [0.0f64; 64];
                let mut big;
                let wsum: &mut [f64] = if *n_target <= 64 {
                    &mut wsum[..*n_target]
                } else {
                    big = vec![0.0; *n_target];
                    &mut big
                };
                dst.iter_mut().for_each(|d| *d = 0.0);
                for ((&p, &w), &s) in parent.iter().zip(weight).zip(src) {
                    dst[p] += w * s;
                    wsum[p] += w;
                }
                for (d, &w) in dst.iter_mut().zip(wsum.iter()) {
                    *d /= w;
                }
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Remap::Identity)
    }
}

/// For each layer of `fine`, the index of the `coarse` layer containing it.
fn refinement_parents(fine: &[f64], coarse: &[f64]) -> Result<Vec<usize>> {
    let mut parent = Vec::with_capacity(fine.len());
    let mut c = 0;
    let mut fine_top = 0.0;
    let mut coarse_top = coarse[0];
    for &l in fine {
        fine_top += l;
        parent.push(c);
        if fine_top > coarse_top + BOUNDARY_MATCH_TOL {
            return Err(Error::Layout(format!(
                "non-conformal layers: fine boundary {fine_top} crosses coarse boundary {coarse_top}"
            )));
        }
        if (fine_top - coarse_top).abs() <= BOUNDARY_MATCH_TOL && c + 1 < coarse.len() {
            c += 1;
            coarse_top += coarse[c];
        }
    }
    if c + 1 != coarse.len() {
        return Err(Error::Layout("non-conformal layers: coarse layers left unmatched".into()));
    }
    Ok(parent)
}

pub fn validate_fractions(l: &[f64]) -> Result<()> {
    if l.is_empty() {
        return Err(Error::Layout("empty fraction table".into()));
    }
    if let Some(v) = l.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::Layout(format!("fraction {v} is not positive")));
    }
    let s: f64 = l.iter().sum();
    if (s - 1.0).abs() > FRACTION_SUM_TOL {
        return Err(Error::Layout(format!("fractions sum to {s}, not 1")));
    }
    Ok(())
}

/// Offsets of a ragged column store.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Columns {
    offsets: Vec<usize>,
}

impl Columns {
    pub fn from_counts(counts: impl IntoIterator<Item = usize>) -> Self {
        let mut offsets = vec![0];
        for c in counts {
            offsets.push(offsets.last().unwrap() + c);
        }
        Self { offsets }
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn count(&self, k: usize) -> usize {
        self.offsets[k + 1] - self.offsets[k]
    }

    pub fn zeros(&self) -> Ragged {
        Ragged { cols: self.clone(), data: vec![0.0; self.total()] }
    }
}

/// Column-contiguous ragged array: all layers of column `k` are adjacent.
#[derive(Debug, Clone, PartialEq)]
pub struct Ragged {
    pub cols: Columns,
    pub data: Vec<f64>,
}

impl Ragged {
    pub fn col(&self, k: usize) -> &[f64] {
        &self.data[self.cols.range(k)]
    }

    pub fn col_mut(&mut self, k: usize) -> &mut [f64] {
        let r = self.cols.range(k);
        &mut self.data[r]
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn fill(&mut self, v: f64) {
        self.data.iter_mut().for_each(|d| *d = v);
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: f64, other: &Ragged) {
        debug_assert_eq!(self.data.len(), other.data.len());
        for (s, o) in self.data.iter_mut().zip(&other.data) {
            *s += a * o;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// How a cell sees one of its faces.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFace {
    /// Cell layering to face layering.
    pub to_face: Remap,
    /// True when the face flux layering is this cell's own layering; otherwise
    /// this cell is the coarse side and receives summed children.
    pub owns_flux_layering: bool,
    /// For every face layer boundary `k` (0..=N_face), the matching boundary
    /// index in the cell layering.
    pub boundary: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LayerLayout {
    half: Vec<Vec<f64>>,
    cell: Vec<Vec<f64>>,
    periodic: bool,
    face_cols: Columns,
    cell_cols: Columns,
    flux_cols: Columns,
    /// Flux layering fractions and the parent face layer of each flux layer.
    flux_fractions: Vec<Vec<f64>>,
    flux_parent: Vec<Vec<usize>>,
    /// `[left face, right face]` for every cell.
    cell_faces: Vec<[CellFace; 2]>,
    /// Remap from face `j-1` into face `j` and from `j+1` into `j`.
    from_left: Vec<Option<Remap>>,
    from_right: Vec<Option<Remap>>,
}

impl LayerLayout {
    /// Same fraction table at every one of `faces` interfaces.
    pub fn uniform_table(table: &[f64], faces: usize, periodic: bool) -> Result<Self> {
        Self::new(vec![table.to_vec(); faces], periodic)
    }

    /// `n` equal layers everywhere.
    pub fn uniform(n: usize, faces: usize, periodic: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Layout("zero layers".into()));
        }
        Self::uniform_table(&vec![1.0 / n as f64; n], faces, periodic)
    }

    /// Builds the layout from per-interface fraction tables and derives the
    /// cell layerings and all conformal maps.
    pub fn new(half: Vec<Vec<f64>>, periodic: bool) -> Result<Self> {
        let faces = half.len();
        if faces < 4 {
            return Err(Error::Layout(format!("need at least 4 interfaces, got {faces}")));
        }
        for (j, l) in half.iter().enumerate() {
            validate_fractions(l).map_err(|e| Error::Layout(format!("interface {j}: {e}")))?;
        }
        let m = faces - 1;
        if periodic && half[0] != half[m] {
            return Err(Error::Layout("periodic layout must match at both ends".into()));
        }
        let is_transition = |i: usize| half[i].len() != half[i + 1].len() || half[i] != half[i + 1];
        for i in 0..m - 1 {
            if is_transition(i) && is_transition(i + 1) {
                return Err(Error::Layout(format!("consecutive layer transitions in cells {i} and {}", i + 1)));
            }
        }
        if periodic && is_transition(m - 1) && is_transition(0) {
            return Err(Error::Layout("consecutive layer transitions across the periodic seam".into()));
        }

        let mut cell = Vec::with_capacity(m);
        for i in 0..m {
            let (a, b) = (&half[i], &half[i + 1]);
            // Validates conformality; equal counts with different tables are rejected.
            Remap::between(a, b).map_err(|e| Error::Layout(format!("cell {i}: {e}")))?;
            cell.push(if b.len() > a.len() { b.clone() } else { a.clone() });
        }

        let left_cell = |j: usize| -> Option<usize> {
            if j > 0 {
                Some(j - 1)
            } else if periodic {
                Some(m - 1)
            } else {
                None
            }
        };
        let right_cell = |j: usize| -> Option<usize> {
            if j < m {
                Some(j)
            } else if periodic {
                Some(0)
            } else {
                None
            }
        };

        let mut flux_fractions = Vec::with_capacity(faces);
        let mut flux_parent = Vec::with_capacity(faces);
        for j in 0..faces {
            let finest = [left_cell(j), right_cell(j)]
                .into_iter()
                .flatten()
                .max_by_key(|&c| cell[c].len())
                .expect("every face has a cell");
            let fr = cell[finest].clone();
            let parent =
                if fr.len() == half[j].len() { (0..fr.len()).collect() } else { refinement_parents(&fr, &half[j])? };
            flux_fractions.push(fr);
            flux_parent.push(parent);
        }

        let mut cell_faces = Vec::with_capacity(m);
        for i in 0..m {
            let mk = |j: usize| -> Result<CellFace> {
                let to_face = Remap::between(&cell[i], &half[j])?;
                let owns = flux_fractions[j].len() == cell[i].len();
                let boundary = boundary_map(&cell[i], &half[j]);
                Ok(CellFace { to_face, owns_flux_layering: owns, boundary })
            };
            cell_faces.push([mk(i)?, mk(i + 1)?]);
        }

        let mut from_left = Vec::with_capacity(faces);
        let mut from_right = Vec::with_capacity(faces);
        for j in 0..faces {
            let l = if j > 0 {
                Some(j - 1)
            } else if periodic {
                Some(m - 1)
            } else {
                None
            };
            let r = if j < m {
                Some(j + 1)
            } else if periodic {
                Some(1)
            } else {
                None
            };
            from_left.push(l.map(|k| Remap::between(&half[k], &half[j])).transpose()?);
            from_right.push(r.map(|k| Remap::between(&half[k], &half[j])).transpose()?);
        }

        Ok(Self {
            face_cols: Columns::from_counts(half.iter().map(Vec::len)),
            cell_cols: Columns::from_counts(cell.iter().map(Vec::len)),
            flux_cols: Columns::from_counts(flux_fractions.iter().map(Vec::len)),
            half,
            cell,
            periodic,
            flux_fractions,
            flux_parent,
            cell_faces,
            from_left,
            from_right,
        })
    }

    pub fn faces(&self) -> usize {
        self.half.len()
    }

    pub fn cells(&self) -> usize {
        self.cell.len()
    }

    pub fn periodic(&self) -> bool {
        self.periodic
    }

    /// Fractions at interface `j`.
    pub fn face(&self, j: usize) -> &[f64] {
        &self.half[j]
    }

    /// Fractions in cell `i` (copied from the neighbouring interface with more layers).
    pub fn cell(&self, i: usize) -> &[f64] {
        &self.cell[i]
    }

    pub fn n_face(&self, j: usize) -> usize {
        self.half[j].len()
    }

    pub fn n_cell(&self, i: usize) -> usize {
        self.cell[i].len()
    }

    pub fn face_columns(&self) -> &Columns {
        &self.face_cols
    }

    pub fn cell_columns(&self) -> &Columns {
        &self.cell_cols
    }

    pub fn flux_columns(&self) -> &Columns {
        &self.flux_cols
    }

    pub fn flux_fractions(&self, j: usize) -> &[f64] {
        &self.flux_fractions[j]
    }

    pub fn flux_parent(&self, j: usize) -> &[usize] {
        &self.flux_parent[j]
    }

    /// `side` 0 is the left face (interface `i`), 1 the right face (interface `i+1`).
    pub fn cell_face(&self, i: usize, side: usize) -> &CellFace {
        &self.cell_faces[i][side]
    }

    pub fn remap_from_left(&self, j: usize) -> Option<&Remap> {
        self.from_left[j].as_ref()
    }

    pub fn remap_from_right(&self, j: usize) -> Option<&Remap> {
        self.from_right[j].as_ref()
    }

    pub fn max_layers(&self) -> usize {
        self.cell.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Rebuilds the cell fractions from the interface tables alone.
    pub fn rederive_cells(&self) -> Vec<Vec<f64>> {
        self.half.windows(2).map(|w| if w[1].len() > w[0].len() { w[1].clone() } else { w[0].clone() }).collect()
    }
}

/// For each boundary of the coarse `face` layering, the index of the matching
/// boundary in the (equal or finer) `cell` layering.
fn boundary_map(cell: &[f64], face: &[f64]) -> Vec<usize> {
    if cell.len() == face.len() {
        return (0..=cell.len()).collect();
    }
    let mut out = vec![0];
    let mut c_top = 0.0;
    let mut k = 0;
    let mut f_top = 0.0;
    for (b, &l) in face.iter().enumerate() {
        f_top += l;
        while k < cell.len() && c_top + BOUNDARY_MATCH_TOL < f_top {
            c_top += cell[k];
            k += 1;
        }
        if b + 1 == face.len() {
            k = cell.len();
        }
        out.push(k);
    }
    out
}
