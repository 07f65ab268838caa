use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Means {
    pub count: usize,
    #[serde(serialize_with = "super::serialize_ratio")]
    pub arithmetic: BigRational,
    /// Zero as soon as any entry is zero.
    pub geometric: f64,
}

pub fn arithmetic_mean(values: &[BigRational]) -> Result<BigRational> {
    if values.is_empty() {
        return Err(Error::usage("cannot average an empty group"));
    }
    let sum: BigRational = values.iter().sum();
    Ok(sum / BigRational::from_integer(values.len().into()))
}

pub fn geometric_mean(values: &[BigRational]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::usage("cannot average an empty group"));
    }
    if values.iter().any(Zero::is_zero) {
        return Ok(0.0);
    }
    let logs: f64 = values
        .iter()
        .map(|v| v.to_f64().expect("finite ratio").ln())
        .sum();
    Ok((logs / values.len() as f64).exp())
}

pub fn means(values: &[BigRational]) -> Result<Means> {
    Ok(Means {
        count: values.len(),
        arithmetic: arithmetic_mean(values)?,
        geometric: geometric_mean(values)?,
    })
}
