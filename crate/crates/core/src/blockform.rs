//! Sparse lower-triangular block forms `Δ_w` of a distinguished component.
//!
//! For `α = (α_1 <= ... <= α_r)` and `n`, the tangent space of the Quot
//! scheme at a fixed point decomposes into `S^1`-weight spaces. The weight-`w`
//! piece is spanned by matrix cells `(i, j)`, `i` a row root index in `1..=n`
//! and `j` a column root index in `1..=r`:
//!
//! * torsion rows `i <= r`: `α_j - α_i < w <= α_j`,
//! * free rows `i > r`: `0 <= w <= α_j`.
//!
//! `Δ_0` is the tangent space of the component; the other forms span the
//! normal bundle.

use serde::{Deserialize, Serialize};

use crate::partitions::{FixedComponent, PartitionSeq};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockForm {
    pub w: i64,
    /// `(row_root, col_root)`, 1-based, row-major order.
    pub cells: Vec<(usize, usize)>,
}

/// A single normal/tangent direction: weight `w` on the cell `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct P0Weight {
    pub w: i64,
    pub i: usize,
    pub j: usize,
}

/// All block forms of `F_{α;0}`, highest weight first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockForms {
    alpha: PartitionSeq,
    n: usize,
    forms: Vec<BlockForm>,
}

impl BlockForms {
    pub fn alpha(&self) -> &PartitionSeq {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forms(&self) -> &[BlockForm] {
        &self.forms
    }

    pub fn get(&self, w: i64) -> Option<&BlockForm> {
        self.forms.iter().find(|f| f.w == w)
    }

    pub fn total_cells(&self) -> usize {
        self.forms.iter().map(|f| f.cells.len()).sum()
    }

    /// Grids of `#`/`.` with `|` between column run blocks, `-` lines between
    /// row run blocks and a `=` line above the free rows.
    pub fn render_ascii(&self) -> String {
        self.forms
            .iter()
            .map(|f| self.render_one(f))
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn col_groups(&self) -> Vec<Vec<usize>> {
        let mut groups = Vec::new();
        let mut start = 1;
        for (_, m) in self.alpha.runs().runs {
            groups.push((start..start + m).collect());
            start += m;
        }
        groups
    }

    pub fn render_one(&self, form: &BlockForm) -> String {
        let r = self.alpha.len();
        let groups = self.col_groups();
        let row = |i: usize| -> String {
            groups
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|&j| if form.cells.contains(&(i, j)) { "#" } else { "." })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join(" | ")
        };
        let rule = |c: char| -> String {
            groups
                .iter()
                .map(|g| std::iter::repeat(c).take(2 * g.len() - 1).collect::<String>())
                .collect::<Vec<_>>()
                .join(&format!("{c}+{c}"))
        };

        let mut lines = vec![format!("w = {}", form.w)];
        let mut i = 1;
        for (k, g) in groups.iter().enumerate() {
            if k > 0 {
                lines.push(rule('-'));
            }
            for _ in 0..g.len() {
                lines.push(row(i));
                i += 1;
            }
        }
        if self.n > r {
            lines.push(rule('='));
            for i in r + 1..=self.n {
                lines.push(row(i));
            }
        }
        lines.join("\n") + "\n"
    }

    /// Flattened `(w, i, j)` triples, zero weights included.
    pub fn p0_weights(&self) -> Vec<P0Weight> {
        self.forms
            .iter()
            .flat_map(|f| f.cells.iter().map(move |&(i, j)| P0Weight { w: f.w, i, j }))
            .collect()
    }
}

fn cell_present(alpha: &[u32], r: usize, w: i64, i: usize, j: usize) -> bool {
    let aj = alpha[j - 1] as i64;
    if i <= r {
        let ai = alpha[i - 1] as i64;
        aj - ai < w && w <= aj
    } else {
        0 <= w && w <= aj
    }
}

pub fn block_forms(alpha: &PartitionSeq, n: usize) -> Result<BlockForms> {
    let r = alpha.len();
    if r == 0 || r > n {
        return Err(Error::usage(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    let a = alpha.parts();
    let top = a[r - 1] as i64;
    let bottom = -((top - a[0] as i64 - 1).max(0));
    let forms = (bottom..=top)
        .rev()
        .map(|w| {
            let cells = (1..=n)
                .flat_map(|i| (1..=r).map(move |j| (i, j)))
                .filter(|&(i, j)| cell_present(a, r, w, i, j))
                .collect();
            BlockForm { w, cells }
        })
        .collect();
    Ok(BlockForms {
        alpha: alpha.clone(),
        n,
        forms,
    })
}

/// Block forms of a component, rejecting `β != 0`.
pub fn component_block_forms(c: &FixedComponent) -> Result<BlockForms> {
    if !c.is_distinguished() {
        return Err(Error::usage(format!(
            "block forms need a distinguished component (beta = 0), got {}",
            c.label()
        )));
    }
    block_forms(c.alpha(), c.n())
}

pub fn p0_weight_system(alpha: &PartitionSeq, n: usize) -> Result<Vec<P0Weight>> {
    Ok(block_forms(alpha, n)?.p0_weights())
}
