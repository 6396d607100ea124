use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Entry type of an integer tableau.
trait Entry: Clone {
    fn from_i64(x: i64) -> Self;
    fn sign(&self) -> Ordering;
    fn neg(&self) -> Self;
    /// `(p * a - b * c) / den`, known to divide exactly; `None` on overflow.
    fn update(p: &Self, a: &Self, b: &Self, c: &Self, den: &Self) -> Option<Self>;
    fn big(&self) -> BigInt;
}

impl Entry for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn update(p: &Self, a: &Self, b: &Self, c: &Self, den: &Self) -> Option<Self> {
        let x = p.checked_mul(*a)?.checked_sub(b.checked_mul(*c)?)?;
        Some(x / den)
    }
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn neg(&self) -> Self {
        -self
    }
    fn update(p: &Self, a: &Self, b: &Self, c: &Self, den: &Self) -> Option<Self> {
        Some((p * a - b * c) / den)
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
}

/// The true tableau is `cells / den`; `den` stays positive.
#[derive(Clone)]
struct Mat<T> {
    cells: Vec<Vec<T>>,
    den: T,
}

impl<T: Entry> Mat<T> {
    fn pivot(&mut self, r: usize, c: usize) -> bool {
        let p = self.cells[r][c].clone();
        let mut next = Vec::with_capacity(self.cells.len());
        for (i, row) in self.cells.iter().enumerate() {
            if i == r {
                next.push(row.clone());
                continue;
            }
            let b = &row[c];
            let mut out = Vec::with_capacity(row.len());
            for (a, rc) in row.iter().zip(&self.cells[r]) {
                match T::update(&p, a, b, rc, &self.den) {
                    Some(x) => out.push(x),
                    None => return false,
                }
            }
            next.push(out);
        }
        self.cells = next;
        if p.sign() == Ordering::Less {
            for row in &mut self.cells {
                for x in row.iter_mut() {
                    *x = x.neg();
                }
            }
            self.den = p.neg();
        } else {
            self.den = p;
        }
        true
    }

    fn big(&self) -> Mat<BigInt> {
        Mat {
            cells: self
                .cells
                .iter()
                .map(|r| r.iter().map(Entry::big).collect())
                .collect(),
            den: self.den.big(),
        }
    }

    fn drop_rows_cols(&mut self, rows: &[bool], cols: &[bool]) {
        let mut kept = Vec::new();
        for (i, row) in self.cells.iter().enumerate() {
            if rows[i] {
                kept.push(
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| cols[*j])
                        .map(|(_, x)| x.clone())
                        .collect(),
                );
            }
        }
        self.cells = kept;
    }
}

#[derive(Clone)]
enum Tab {
    Small(Mat<i128>),
    Big(Mat<BigInt>),
}

macro_rules! with {
    ($tab:expr, $m:ident => $e:expr) => {
        match $tab {
            Tab::Small($m) => $e,
            Tab::Big($m) => $e,
        }
    };
}

enum Outcome {
    Optimal,
    Unbounded,
}

/// Exact simplex over `{A x = 0, n . x = 1, x >= 0}` with some coordinates forbidden, maximising
/// an integer objective. Pivoting follows Bland's rule.
#[derive(Clone)]
pub(crate) struct Lp {
    tab: Tab,
    basis: Vec<usize>,
    allowed: Vec<bool>,
    vars: usize,
    /// Number of constraint rows; the phase-one, objective and auxiliary rows follow them.
    rows: usize,
    pub pivots: usize,
}

impl Lp {
    /// Returns `None` when the system is infeasible.
    pub fn new(
        equalities: &[Vec<i64>],
        normal: &[i64],
        objective: &[i64],
        allowed: &[bool],
    ) -> Option<Lp> {
        let vars = normal.len();
        let m = equalities.len() + 1;
        let width = vars + m + 1;
        let rhs = width - 1;
        let mut cells = vec![vec![0i128; width]; m + 3];
        for (i, row) in equalities
            .iter()
            .chain(std::iter::once(&normal.to_vec()))
            .enumerate()
        {
            for (j, &a) in row.iter().enumerate() {
                if allowed[j] {
                    cells[i][j] = a as i128;
                    cells[m][j] -= a as i128;
                }
            }
            cells[i][vars + i] = 1;
        }
        cells[m - 1][rhs] = 1;
        cells[m][rhs] = -1;
        for j in 0..vars {
            cells[m + 1][j] = -(objective[j] as i128);
        }
        let mut allowed_all = allowed.to_vec();
        allowed_all.extend(std::iter::repeat(false).take(m));
        let mut lp = Lp {
            tab: Tab::Small(Mat { cells, den: 1 }),
            basis: (vars..vars + m).collect(),
            allowed: allowed_all,
            vars,
            rows: m,
            pivots: 0,
        };
        lp.run(m);
        if lp.value_of(m).is_negative() {
            return None;
        }
        let mut keep_row = vec![true; m + 3];
        for r in 0..m {
            if lp.basis[r] < vars {
                continue;
            }
            match (0..vars).find(|&j| lp.allowed[j] && lp.sign(r, j) != Ordering::Equal) {
                Some(j) => lp.pivot(r, j),
                None => keep_row[r] = false,
            }
        }
        let mut keep_col = vec![true; width];
        for c in keep_col.iter_mut().take(vars + m).skip(vars) {
            *c = false;
        }
        with!(&mut lp.tab, t => t.drop_rows_cols(&keep_row, &keep_col));
        lp.basis = (0..m)
            .filter(|&r| keep_row[r])
            .map(|r| lp.basis[r])
            .collect();
        lp.rows = lp.basis.len();
        lp.allowed.truncate(vars);
        Some(lp)
    }

    fn width(&self) -> usize {
        with!(&self.tab, t => t.cells[0].len())
    }

    fn sign(&self, i: usize, j: usize) -> Ordering {
        with!(&self.tab, t => Entry::sign(&t.cells[i][j]))
    }

    fn entry(&self, i: usize, j: usize) -> BigInt {
        with!(&self.tab, t => t.cells[i][j].big())
    }

    fn den(&self) -> BigInt {
        with!(&self.tab, t => t.den.big())
    }

    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        let done = match &mut self.tab {
            Tab::Small(t) => t.pivot(r, c),
            Tab::Big(t) => t.pivot(r, c),
        };
        if !done {
            let Tab::Small(t) = &self.tab else {
                unreachable!()
            };
            let mut big = t.big();
            big.pivot(r, c);
            self.tab = Tab::Big(big);
        }
        self.basis[r] = c;
    }

    /// `rhs_i / a_ic` against `rhs_k / a_kc`, both pivots positive.
    fn cmp_ratio(&self, i: usize, k: usize, c: usize) -> Ordering {
        let rhs = self.width() - 1;
        match &self.tab {
            Tab::Small(t) => {
                let (a, b) = (
                    t.cells[i][rhs].checked_mul(t.cells[k][c]),
                    t.cells[k][rhs].checked_mul(t.cells[i][c]),
                );
                if let (Some(a), Some(b)) = (a, b) {
                    return a.cmp(&b);
                }
                (self.entry(i, rhs) * self.entry(k, c))
                    .cmp(&(self.entry(k, rhs) * self.entry(i, c)))
            }
            Tab::Big(t) => {
                (&t.cells[i][rhs] * &t.cells[k][c]).cmp(&(&t.cells[k][rhs] * &t.cells[i][c]))
            }
        }
    }

    fn step(&mut self, obj: usize) -> Option<Outcome> {
        let width = self.width();
        let Some(c) = (0..width - 1)
            .find(|&j| self.allowed.get(j) == Some(&true) && self.sign(obj, j) == Ordering::Less)
        else {
            return Some(Outcome::Optimal);
        };
        let mut best: Option<usize> = None;
        for i in 0..self.rows {
            if self.sign(i, c) != Ordering::Greater {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(k) => match self.cmp_ratio(i, k, c) {
                    Ordering::Less => Some(i),
                    Ordering::Equal if self.basis[i] < self.basis[k] => Some(i),
                    _ => Some(k),
                },
            };
        }
        let Some(r) = best else {
            return Some(Outcome::Unbounded);
        };
        self.pivot(r, c);
        None
    }

    fn run(&mut self, obj: usize) -> Outcome {
        loop {
            if let Some(o) = self.step(obj) {
                return o;
            }
        }
    }

    fn value_of(&self, row: usize) -> BigRational {
        BigRational::new(self.entry(row, self.width() - 1), self.den())
    }

    /// Maximises the objective; `None` if unbounded.
    pub fn maximize(&mut self) -> Option<BigRational> {
        let obj = self.rows + 1;
        match self.run(obj) {
            Outcome::Optimal => Some(self.value_of(obj)),
            Outcome::Unbounded => None,
        }
    }

    /// Adds the constraint `x_j = 0`; returns false if that makes the system infeasible.
    pub fn force_zero(&mut self, j: usize) -> bool {
        self.allowed[j] = false;
        let Some(r) = self.basis.iter().position(|&b| b == j) else {
            return true;
        };
        let rhs = self.width() - 1;
        if self.sign(r, rhs) == Ordering::Greater {
            let aux = self.rows + 2;
            with!(&mut self.tab, t => {
                for k in 0..t.cells[aux].len() {
                    t.cells[aux][k] = if k == j { Entry::from_i64(0) } else { t.cells[r][k].neg() };
                }
            });
            self.run(aux);
            if self.value_of(aux).is_negative() {
                return false;
            }
        }
        if let Some(r) = self.basis.iter().position(|&b| b == j) {
            if let Some(k) =
                (0..self.vars).find(|&k| self.allowed[k] && self.sign(r, k) != Ordering::Equal)
            {
                self.pivot(r, k);
            }
        }
        true
    }

    /// Current basic solution as integers over a common positive denominator.
    pub fn solution(&self) -> (Vec<BigInt>, BigInt) {
        let rhs = self.width() - 1;
        let mut x = vec![BigInt::zero(); self.vars];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.vars {
                x[b] = self.entry(r, rhs);
            }
        }
        (x, self.den())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn simplex_on_a_triangle() {
        // x0 - x1 = 0, x0 + x1 + x2 = 1, maximise x0 + 3 x2.
        let mut lp = Lp::new(&[vec![1, -1, 0]], &[1, 1, 1], &[1, 0, 3], &[true; 3]).unwrap();
        assert_eq!(lp.maximize().unwrap(), int(3));
        assert!(lp.force_zero(2));
        assert_eq!(lp.maximize().unwrap(), BigRational::new(1.into(), 2.into()));
        let (x, d) = lp.solution();
        assert_eq!(x, vec![BigInt::one(), BigInt::one(), BigInt::zero()]);
        assert_eq!(d, BigInt::from(2));
        assert!(!lp.force_zero(0));
    }

    #[test]
    fn infeasible_system() {
        assert!(Lp::new(&[vec![1, 1]], &[1, 1], &[0, 0], &[true; 2]).is_none());
        assert!(Lp::new(&[], &[1, 1], &[0, 0], &[false; 2]).is_none());
    }

    #[test]
    fn redundant_rows_dropped() {
        let rows = vec![vec![1, -1, 0], vec![2, -2, 0], vec![-1, 1, 0]];
        let mut lp = Lp::new(&rows, &[1, 1, 1], &[0, 1, 0], &[true; 3]).unwrap();
        assert_eq!(lp.maximize().unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn big_fallback_matches() {
        let k = 1i64 << 40;
        let rows = vec![vec![k, -(k - 1), 0, 0], vec![0, k + 1, -k, 0]];
        let mut lp = Lp::new(&rows, &[1, 1, 1, 1], &[1, 1, 1, -1], &[true; 4]).unwrap();
        let v = lp.maximize().unwrap();
        assert_eq!(v, int(1));
    }
}
