//! Power-law and mass-action kinetics, evaluated pointwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KineticsKind {
    MassAction,
    PowerLaw,
}

/// Rate constants plus an `r × m` kinetic order matrix, `K_i(x) = k_i Π x_j^F_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kinetics {
    kind: KineticsKind,
    rates: Vec<f64>,
    kinetic_orders: Vec<Vec<f64>>,
}

impl Kinetics {
    /// Mass action: kinetic orders are the reactant complexes.
    pub fn mass_action(net: &Network, rates: Vec<f64>) -> Result<Self> {
        let orders = net
            .reactions()
            .iter()
            .map(|rx| {
                let c = &net.complexes()[rx.reactant];
                (0..net.species_count())
                    .map(|s| f64::from(c.coefficient(s)))
                    .collect()
            })
            .collect();
        Self::build(net, KineticsKind::MassAction, rates, orders)
    }

    pub fn power_law(
        net: &Network,
        rates: Vec<f64>,
        kinetic_orders: Vec<Vec<f64>>,
    ) -> Result<Self> {
        Self::build(net, KineticsKind::PowerLaw, rates, kinetic_orders)
    }

    fn build(
        net: &Network,
        kind: KineticsKind,
        rates: Vec<f64>,
        kinetic_orders: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let (r, m) = (net.reaction_count(), net.species_count());
        if rates.len() != r {
            return Err(Error::Dimension(format!(
                "{} rate constants for {r} reactions",
                rates.len()
            )));
        }
        if kinetic_orders.len() != r || kinetic_orders.iter().any(|row| row.len() != m) {
            return Err(Error::Dimension(format!(
                "kinetic order matrix must be {r}x{m}"
            )));
        }
        if kinetic_orders.iter().flatten().any(|f| !f.is_finite()) {
            return Err(Error::Dimension("kinetic orders must be finite".into()));
        }
        for (j, &k) in rates.iter().enumerate() {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::NonPositiveRate {
                    reaction: net.reaction_name(j),
                    value: k,
                });
            }
        }
        Ok(Self {
            kind,
            rates,
            kinetic_orders,
        })
    }

    pub fn kind(&self) -> KineticsKind {
        self.kind
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn kinetic_orders(&self) -> &[Vec<f64>] {
        &self.kinetic_orders
    }

    /// Restricts the kinetics to the given reactions (parent order), with
    /// kinetic-order columns for the given parent species.
    pub fn restrict(&self, reactions: &[usize], species: &[usize]) -> Self {
        let mut idx = reactions.to_vec();
        idx.sort_unstable();
        idx.dedup();
        Self {
            kind: self.kind,
            rates: idx.iter().map(|&j| self.rates[j]).collect(),
            kinetic_orders: idx
                .iter()
                .map(|&j| species.iter().map(|&s| self.kinetic_orders[j][s]).collect())
                .collect(),
        }
    }

    /// Rate vector `K(x)`.
    pub fn flux(&self, net: &Network, x: &[f64]) -> Result<Vec<f64>> {
        check_point(net, x)?;
        if self.rates.len() != net.reaction_count()
            || self.kinetic_orders.iter().any(|row| row.len() != x.len())
        {
            return Err(Error::Dimension("kinetics do not match the network".into()));
        }
        Ok(self
            .rates
            .iter()
            .zip(&self.kinetic_orders)
            .map(|(k, orders)| {
                orders
                    .iter()
                    .zip(x)
                    .fold(*k, |acc, (&f, &xj)| acc * power(xj, f))
            })
            .collect())
    }
}

fn power(x: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        1.0
    } else if exponent.fract() == 0.0 && exponent.abs() <= f64::from(i32::MAX) {
        x.powi(exponent as i32)
    } else {
        x.powf(exponent)
    }
}

fn check_point(net: &Network, x: &[f64]) -> Result<()> {
    if x.len() != net.species_count() {
        return Err(Error::Dimension(format!(
            "point has {} coordinates for {} species",
            x.len(),
            net.species_count()
        )));
    }
    for (s, &v) in net.species().iter().zip(x) {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositivePoint {
                species: s.name.clone(),
                value: v,
            });
        }
    }
    Ok(())
}

/// Species formation rate `f(x) = N K(x) = Σ_i K_i(x) (product_i - reactant_i)`.
pub fn sfrf(net: &Network, kin: &Kinetics, x: &[f64]) -> Result<Vec<f64>> {
    let k = kin.flux(net, x)?;
    let mut f = vec![0.0; net.species_count()];
    for (rx, rate) in net.reactions().iter().zip(&k) {
        for (s, c) in net.complexes()[rx.product].terms() {
            f[s] += rate * f64::from(c);
        }
        for (s, c) in net.complexes()[rx.reactant].terms() {
            f[s] -= rate * f64::from(c);
        }
    }
    Ok(f)
}

pub const DEFAULT_STEADY_STATE_TOLERANCE: f64 = 1e-9;

/// `‖f(x)‖∞ ≤ tol · max(1, ‖K(x)‖∞)`.
pub fn is_steady_state(net: &Network, kin: &Kinetics, x: &[f64], tol: f64) -> Result<bool> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Dimension("tolerance must be nonnegative".into()));
    }
    let f = sfrf(net, kin, x)?;
    let k = kin.flux(net, x)?;
    let f_norm = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let k_norm = k.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    Ok(f_norm <= tol * k_norm.max(1.0))
}
