use super::VectorField;
use crate::error::{Error, Result};

/// Element of the associated graded algebra: a field whose nonzero
/// coefficients are all homogeneous of total degree `level + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedField {
    field: VectorField,
    level: i64,
}

impl GradedField {
    pub fn new(field: VectorField, level: i64) -> Result<Self> {
        if level < -1 {
            return Err(Error::Precondition(format!("graded level {level} < -1")));
        }
        let degree = (level + 1) as usize;
        let homogeneous = field
            .coeffs()
            .iter()
            .flat_map(|c| c.terms())
            .all(|(m, _)| m.total_degree() == degree);
        if !homogeneous {
            return Err(Error::Precondition(format!(
                "coefficients are not homogeneous of degree {degree}"
            )));
        }
        Ok(GradedField { field, level })
    }

    pub(crate) fn new_unchecked(field: VectorField, level: i64) -> Self {
        GradedField { field, level }
    }

    pub fn field(&self) -> &VectorField {
        &self.field
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn into_field(self) -> VectorField {
        self.field
    }

    /// Bracket in the graded algebra; lands at level `i + j`, `None` if zero.
    pub fn bracket(&self, other: &GradedField) -> Result<Option<GradedField>> {
        let b = self.field.bracket(&other.field)?;
        if b.is_zero() {
            return Ok(None);
        }
        GradedField::new(b, self.level + other.level).map(Some)
    }
}
