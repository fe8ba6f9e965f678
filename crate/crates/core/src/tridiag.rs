//! Real symmetric tridiagonal eigenproblems.
//!
//! Single eigenvalues are isolated by Sturm-sequence bisection, which costs
//! O(n) per step and selects an eigenvalue by its rank directly. The matching
//! eigenvector comes from inverse iteration on a pivoted LU factorization.
//! The implicit QL sweep is a second, independent route to the whole
//! spectrum and is used to cross-check the bisection path.

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off` holds the n - 1 entries below (and above) the diagonal.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            let radius = left + right;
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let scale = self.gershgorin_scale();
        let pivmin = f64::MIN_POSITIVE.max(f64::EPSILON * f64::EPSILON * scale * scale);
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            let e = self.off[i - 1];
            q = self.diag[i] - x - e * e / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin_scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(1.0)
    }

    /// The eigenvalue of ascending rank `index` (0-based), by bisection to
    /// full working precision.
    pub fn eigenvalue(&self, index: usize) -> f64 {
        assert!(index < self.len(), "eigenvalue index out of range");
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * self.gershgorin_scale();
        lo -= pad;
        hi += pad;
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Unit eigenvector for an (accurate) eigenvalue `shift`, by inverse
    /// iteration. The sign is left as the iteration produces it.
    pub fn eigenvector(&self, shift: f64) -> Vec<f64> {
        let n = self.len();
        if n == 1 {
            return vec![1.0];
        }
        let lu = ShiftedLu::factor(self, shift);
        // Deterministic, non-degenerate start vector.
        let mut x: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64)
            .collect();
        normalize(&mut x);
        for _ in 0..4 {
            lu.solve(&mut x);
            normalize(&mut x);
        }
        x
    }

    /// All eigenvalues in ascending order by the implicit QL algorithm with
    /// Wilkinson-type shifts.
    pub fn eigenvalues_ql(&self) -> Vec<f64> {
        let n = self.len();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        for l in 0..n {
            let mut iter = 0;
            loop {
                let mut m = l;
                while m + 1 < n {
                    let dd = d[m].abs() + d[m + 1].abs();
                    if e[m].abs() <= f64::EPSILON * dd {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                iter += 1;
                assert!(iter <= 64, "implicit QL failed to converge");
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[m] - d[l] + e[l] / (g + r.copysign(g));
                let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
                let mut underflow = false;
                let mut i = m;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
                    let b = c * e[i];
                    r = f.hypot(g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if underflow {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
        d.sort_by(|a, b| a.total_cmp(b));
        d
    }

    /// `T x` for a dense vector.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

/// LU factorization of `T - shift I` with partial pivoting (the fill-in
/// lands in a second superdiagonal).
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, shift: f64) -> Self {
        let n = t.len();
        let mut dl = t.off.clone();
        let mut d: Vec<f64> = t.diag.iter().map(|v| v - shift).collect();
        let mut du = t.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n - 1];
        let tiny = f64::EPSILON * t.gershgorin_scale();

        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.dl[i] * b[i];
        }
        b[n - 1] /= self.d[n - 1];
        b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn second_difference(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1])
    }

    #[test]
    fn second_difference_spectrum_is_known() {
        let n = 40;
        let t = second_difference(n);
        for k in 0..n {
            let theta = (k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64;
            let exact = 2.0 - 2.0 * theta.cos();
            assert!((t.eigenvalue(k) - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn bisection_and_ql_agree() {
        let diag: Vec<f64> = (0..30).map(|k| (4 * k * k) as f64).collect();
        let off = vec![7.5; 29];
        let t = SymTridiagonal::new(diag, off);
        let ql = t.eigenvalues_ql();
        for (k, v) in ql.iter().enumerate() {
            let b = t.eigenvalue(k);
            assert!((b - v).abs() < 1e-10 * v.abs().max(1.0), "{k}: {b} vs {v}");
        }
    }

    #[test]
    fn eigenvector_satisfies_eigen_equation() {
        let t = second_difference(25);
        let lambda = t.eigenvalue(3);
        let v = t.eigenvector(lambda);
        let tv = t.apply(&v);
        let res = tv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - lambda * b).abs())
            .fold(0.0, f64::max);
        assert!(res < 1e-12, "residual {res}");
    }

    #[test]
    fn diagonal_matrix_counts() {
        let t = SymTridiagonal::new(vec![3.0, 1.0, 2.0], vec![0.0, 0.0]);
        assert_eq!(t.count_below(0.5), 0);
        assert_eq!(t.count_below(1.5), 1);
        assert_eq!(t.count_below(10.0), 3);
        assert_eq!(t.eigenvalues_ql(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn one_by_one() {
        let t = SymTridiagonal::new(vec![-4.0], vec![]);
        assert!((t.eigenvalue(0) + 4.0).abs() < 1e-14);
        assert_eq!(t.eigenvector(-4.0), vec![1.0]);
    }
}
