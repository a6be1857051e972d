use crate::basemodels::BaseState;
use crate::error::{Error, Point, Result};

use super::PdmModel;

/// `Ψ̃(y) = c · (k M(y))^{1/2} Ψ(x(y))`, where `k` is the family's sheet count and `c` an optional scale.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedState {
    model: PdmModel,
    base_state: BaseState,
    energy: f64,
    scale: f64,
}

impl TransformedState {
    pub fn new(model: PdmModel, base_state: BaseState) -> Result<Self> {
        if !base_state.belongs_to(model.base()) {
            return Err(Error::InvalidParameter {
                name: "base_state",
                reason: format!("{} is not an eigenstate of the model's base potential", base_state.label()),
            });
        }
        let energy = base_state.energy();
        Ok(TransformedState { model, base_state, energy, scale: 1.0 })
    }

    pub fn model(&self) -> &PdmModel {
        &self.model
    }

    pub fn base_state(&self) -> &BaseState {
        &self.base_state
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Same state multiplied by `c` (no longer normalized unless `c = ±1`).
    pub fn scaled(&self, c: f64) -> Self {
        TransformedState { scale: self.scale * c, ..self.clone() }
    }

    pub fn with_exclusion_radius(&self, r: f64) -> Self {
        TransformedState { model: self.model.clone().with_exclusion_radius(r), ..self.clone() }
    }

    pub fn eval(&self, y: Point) -> Result<f64> {
        let l = self.model.local(y)?;
        let k = self.model.family().sheet_count() as f64;
        let v = self.scale * (k * l.mass()).sqrt() * self.base_state.eval(l.x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: y })
        }
    }
}
