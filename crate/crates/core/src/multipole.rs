//! Monopole + dipole reduction of a planar point-charge cluster.
//!
//! Far from the cluster, `Σ q_j / |r - a_j| ≈ Q/r + D cos θ / r²` with
//! `Q = Σ q_j`, dipole vector `Σ q_j a_j` (positions taken relative to the
//! cluster origin) and `θ` measured from the dipole axis. The next term is
//! O(a²/r³), so the relative error of the two-term form falls off as r⁻².
//! When `Q != 0` the dipole depends on the chosen origin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec2 = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointCharge {
    pub q: f64,
    pub x: f64,
    pub y: f64,
}

impl PointCharge {
    pub fn new(q: f64, position: Vec2) -> Self {
        Self {
            q,
            x: position[0],
            y: position[1],
        }
    }

    pub fn position(&self) -> Vec2 {
        [self.x, self.y]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChargeCluster {
    charges: Vec<PointCharge>,
    origin: Vec2,
}

/// On-disk forms: a bare array of charges, or an object carrying the array
/// under `charges` and an optional `origin`.
#[derive(Deserialize)]
#[serde(untagged)]
enum ClusterFile {
    Bare(Vec<PointCharge>),
    WithOrigin {
        charges: Vec<PointCharge>,
        #[serde(default)]
        origin: Option<Vec2>,
    },
}

impl ChargeCluster {
    pub fn new(charges: Vec<PointCharge>, origin: Vec2) -> Result<Self> {
        if charges.is_empty() {
            return Err(Error::EmptyCluster);
        }
        let finite = charges
            .iter()
            .all(|c| c.q.is_finite() && c.x.is_finite() && c.y.is_finite());
        if !finite || !origin.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument(
                "cluster has non-finite values".into(),
            ));
        }
        Ok(Self { charges, origin })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: ClusterFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("cluster JSON: {e}")))?;
        match parsed {
            ClusterFile::Bare(charges) => Self::new(charges, [0.0, 0.0]),
            ClusterFile::WithOrigin { charges, origin } => {
                Self::new(charges, origin.unwrap_or([0.0, 0.0]))
            }
        }
    }

    pub fn charges(&self) -> &[PointCharge] {
        &self.charges
    }

    pub fn origin(&self) -> Vec2 {
        self.origin
    }

    pub fn total_charge(&self) -> f64 {
        self.charges.iter().map(|c| c.q).sum()
    }

    /// Largest distance from the origin to a charge.
    pub fn extent(&self) -> f64 {
        self.charges
            .iter()
            .map(|c| (c.x - self.origin[0]).hypot(c.y - self.origin[1]))
            .fold(0.0, f64::max)
    }

    /// The same charges translated by `shift`, origin included.
    pub fn translated(&self, shift: Vec2) -> Self {
        Self {
            charges: self
                .charges
                .iter()
                .map(|c| PointCharge::new(c.q, [c.x + shift[0], c.y + shift[1]]))
                .collect(),
            origin: [self.origin[0] + shift[0], self.origin[1] + shift[1]],
        }
    }

    /// Union of two clusters; keeps `self`'s origin.
    pub fn union(&self, other: &Self) -> Self {
        let mut charges = self.charges.clone();
        charges.extend_from_slice(&other.charges);
        Self {
            charges,
            origin: self.origin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DipoleReduction {
    pub total_charge: f64,
    pub dipole: f64,
    /// Unit vector along the dipole; +x when the dipole vanishes.
    pub axis: Vec2,
    pub dipole_vector: Vec2,
}

pub fn reduce(cluster: &ChargeCluster) -> DipoleReduction {
    let [ox, oy] = cluster.origin;
    let (px, py) = cluster.charges.iter().fold((0.0, 0.0), |(px, py), c| {
        (px + c.q * (c.x - ox), py + c.q * (c.y - oy))
    });
    let dipole = px.hypot(py);
    let axis = if dipole > 0.0 {
        [px / dipole, py / dipole]
    } else {
        [1.0, 0.0]
    };
    DipoleReduction {
        total_charge: cluster.total_charge(),
        dipole,
        axis,
        dipole_vector: [px, py],
    }
}

/// `Σ q_j / |r - a_j|` at an absolute position.
pub fn exact_potential(cluster: &ChargeCluster, point: Vec2) -> Result<f64> {
    let mut sum = 0.0;
    for c in &cluster.charges {
        let dist = (point[0] - c.x).hypot(point[1] - c.y);
        if dist == 0.0 {
            return Err(Error::SingularPoint { point });
        }
        sum += c.q / dist;
    }
    Ok(sum)
}

/// `Q/r + D cos θ / r²`.
pub fn multipole_potential(total_charge: f64, dipole: f64, r: f64, theta: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::SingularPoint { point: [r, theta] });
    }
    Ok(total_charge / r + dipole * theta.cos() / (r * r))
}

/// Relative error `|exact - multipole| / |exact|` at radii `radii` from the
/// origin, along direction `theta` measured from the dipole axis.
pub fn truncation_error(cluster: &ChargeCluster, radii: &[f64], theta: f64) -> Result<Vec<f64>> {
    let red = reduce(cluster);
    let axis_angle = red.axis[1].atan2(red.axis[0]);
    let (s, c) = (axis_angle + theta).sin_cos();
    let [ox, oy] = cluster.origin;
    radii
        .iter()
        .map(|&r| {
            let exact = exact_potential(cluster, [ox + r * c, oy + r * s])?;
            let approx = multipole_potential(red.total_charge, red.dipole, r, theta)?;
            Ok(if exact == 0.0 && approx == 0.0 {
                0.0
            } else {
                ((exact - approx) / exact).abs()
            })
        })
        .collect()
}

/// Least-squares slope of ln y against ln x.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cluster(list: &[(f64, f64, f64)]) -> ChargeCluster {
        ChargeCluster::new(
            list.iter()
                .map(|&(q, x, y)| PointCharge::new(q, [x, y]))
                .collect(),
            [0.0, 0.0],
        )
        .unwrap()
    }

    #[test]
    fn reduction_examples() {
        let single = reduce(&cluster(&[(3.0, 0.0, 0.0)]));
        assert_eq!(
            (single.total_charge, single.dipole, single.axis),
            (3.0, 0.0, [1.0, 0.0])
        );

        let pair = reduce(&cluster(&[(2.0, 0.5, 0.0), (-1.0, -0.5, 0.0)]));
        assert_eq!(pair.total_charge, 1.0);
        assert_eq!(pair.dipole_vector, [1.5, 0.0]);
        assert_eq!(pair.dipole, 1.5);
        assert_eq!(pair.axis, [1.0, 0.0]);

        let sym = reduce(&cluster(&[(1.0, 0.3, 0.0), (1.0, -0.3, 0.0)]));
        assert_eq!((sym.total_charge, sym.dipole), (2.0, 0.0));
    }

    #[test]
    fn potentials() {
        assert_eq!(
            exact_potential(&cluster(&[(1.0, 0.0, 0.0)]), [2.0, 0.0]).unwrap(),
            0.5
        );
        let dip = cluster(&[(1.0, 0.1, 0.0), (-1.0, -0.1, 0.0)]);
        let v = exact_potential(&dip, [1.0, 0.0]).unwrap();
        assert!((v - (1.0 / 0.9 - 1.0 / 1.1)).abs() < 1e-15);
        assert!((v - 0.20202).abs() < 1e-5);

        assert_eq!(multipole_potential(1.0, 0.0, 2.0, 1.2).unwrap(), 0.5);
        assert_eq!(multipole_potential(1.0, 1.5, 1.0, 0.0).unwrap(), 2.5);
        assert!((multipole_potential(1.0, 1.5, 1.0, PI / 2.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singular_points() {
        let c = cluster(&[(1.0, 0.5, 0.5)]);
        assert!(matches!(
            exact_potential(&c, [0.5, 0.5]),
            Err(Error::SingularPoint { .. })
        ));
        assert!(multipole_potential(1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn point_cluster_has_no_truncation_error() {
        let c = cluster(&[(1.0, 0.0, 0.0), (2.0, 0.0, 0.0)]);
        let errs = truncation_error(&c, &[1.0, 10.0, 100.0], 0.4).unwrap();
        assert!(errs.iter().all(|&e| e < 1e-15));
    }

    #[test]
    fn error_slopes() {
        let radii: Vec<f64> = (0..6).map(|k| 10.0 * 2f64.powi(k)).collect();
        let asym = cluster(&[(2.0, 0.5, 0.0), (-1.0, -0.5, 0.2)]);
        let errs = truncation_error(&asym, &radii, 0.0).unwrap();
        assert!((log_log_slope(&radii, &errs) + 2.0).abs() < 0.1);

        let quad = cluster(&[
            (1.0, 0.4, 0.0),
            (1.0, -0.4, 0.0),
            (-0.5, 0.0, 0.4),
            (-0.5, 0.0, -0.4),
        ]);
        assert_eq!(reduce(&quad).dipole, 0.0);
        let errs = truncation_error(&quad, &radii, 0.0).unwrap();
        assert!((log_log_slope(&radii, &errs) + 2.0).abs() < 0.1);
    }

    #[test]
    fn json_forms() {
        let bare = ChargeCluster::from_json(
            r#"[{"q": 2, "x": 0.5, "y": 0}, {"q": -1, "x": -0.5, "y": 0}]"#,
        )
        .unwrap();
        assert_eq!(reduce(&bare).dipole, 1.5);
        let with = ChargeCluster::from_json(
            r#"{"charges": [{"q": 1, "x": 1, "y": 1}], "origin": [1, 0]}"#,
        )
        .unwrap();
        assert_eq!(with.origin(), [1.0, 0.0]);
        assert_eq!(reduce(&with).dipole_vector, [0.0, 1.0]);
        assert!(matches!(
            ChargeCluster::from_json("[]"),
            Err(Error::EmptyCluster)
        ));
        assert!(ChargeCluster::from_json("{nope").is_err());
    }
}
