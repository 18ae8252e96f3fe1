use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::Result;

/// Reverse standard Young tableau: entries `1..=N` strictly decreasing along
/// rows and down columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rsyt {
    rows: Vec<Vec<usize>>,
    /// `content[i-1] = c(i, T)`.
    content: Vec<i32>,
    /// `(row, col)` of entry `i` at index `i-1`, 0-based.
    position: Vec<(usize, usize)>,
}

impl Rsyt {
    fn from_rows(rows: Vec<Vec<usize>>) -> Self {
        let n: usize = rows.iter().map(|r| r.len()).sum();
        let mut content = vec![0; n];
        let mut position = vec![(0, 0); n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                content[v - 1] = j as i32 - i as i32;
                position[v - 1] = (i, j);
            }
        }
        Rsyt { rows, content, position }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Content vector `[c(1,T), …, c(N,T)]`.
    pub fn content_vector(&self) -> &[i32] {
        &self.content
    }

    /// `c(i, T)` for entry `i` in `1..=N`.
    pub fn content(&self, i: usize) -> i32 {
        self.content[i - 1]
    }

    /// 0-based `(row, col)` of entry `i`.
    pub fn position(&self, i: usize) -> (usize, usize) {
        self.position[i - 1]
    }

    /// Swap entries `i` and `i+1`; `None` when the result is not reverse standard.
    pub fn swap_adjacent(&self, i: usize) -> Option<Rsyt> {
        let (ri, ci) = self.position(i);
        let (rj, cj) = self.position(i + 1);
        if ri == rj || ci == cj {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[ri][ci] = i + 1;
        rows[rj][cj] = i;
        Some(Rsyt::from_rows(rows))
    }

    pub fn is_reverse_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] > w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1]
                .iter()
                .enumerate()
                .all(|(j, &below)| pair[0][j] > below)
        });
        rows_ok && cols_ok
    }
}

/// All reverse standard tableaux of shape `tau`: those with `c(N−1,T) = −1`
/// first, each block sorted by lexicographically decreasing content vector.
pub fn enumerate_rsyt(tau: &Partition) -> Result<Vec<Rsyt>> {
    let n = tau.n();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); tau.len()];
    place(tau, n, &mut rows, &mut out);
    out.sort_by(|a, b| {
        let ka = a.content(n - 1) != -1;
        let kb = b.content(n - 1) != -1;
        ka.cmp(&kb)
            .then_with(|| b.content_vector().cmp(a.content_vector()))
    });
    Ok(out)
}

// Entries are placed in decreasing order, each into an addable corner.
fn place(tau: &Partition, v: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Rsyt>) {
    if v == 0 {
        out.push(Rsyt::from_rows(rows.clone()));
        return;
    }
    for i in 0..rows.len() {
        let len = rows[i].len();
        let fits = len < tau.parts()[i] && (i == 0 || rows[i - 1].len() > len);
        if fits {
            rows[i].push(v);
            place(tau, v - 1, rows, out);
            rows[i].pop();
        }
    }
}
