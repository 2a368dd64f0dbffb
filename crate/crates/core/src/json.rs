//! JSON encodings. Exact scalars are strings `"p/q"` (integers as `"p"`),
//! floats are numbers.
//!
//! - dual quaternion: array of 8 scalars `[h0..h7]`
//! - line: `{"direction": [..3], "moment": [..3]}`
//! - motion polynomial: array of dual quaternions, constant term first
//! - real polynomial: array of scalars, constant term first
//! - factorization: `{"label", "params", "factors", "cofactor", "identical_adjacent"}`

use serde::de::{self, Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::{json, Map, Value};

use crate::darboux::{DarbouxParams, Factorization, FactorizationLabel};
use crate::dual_quaternion::DualQuaternion;
use crate::error::{Error, Result};
use crate::line::AxisLine;
use crate::linkage::{Chain, Linkage};
use crate::poly::{MotionPoly, RealPoly};
use crate::scalar::Scalar;

pub trait ToJson {
    fn to_json(&self) -> Value;
}

pub trait FromJson: Sized {
    fn from_json(v: &Value) -> Result<Self>;
}

fn bad(what: &str) -> Error {
    Error::Invalid(format!("malformed {what}"))
}

fn scalars<S: Scalar, const N: usize>(v: &Value, what: &str) -> Result<[S; N]> {
    let arr = v.as_array().filter(|a| a.len() == N).ok_or_else(|| bad(what))?;
    let parsed: Vec<S> = arr.iter().map(|x| S::from_json(x).ok_or_else(|| bad(what))).collect::<Result<_>>()?;
    parsed.try_into().map_err(|_| bad(what))
}

fn scalar_array<S: Scalar>(xs: &[S]) -> Value {
    Value::Array(xs.iter().map(Scalar::to_json).collect())
}

impl<S: Scalar> ToJson for DualQuaternion<S> {
    fn to_json(&self) -> Value {
        scalar_array(&self.coeffs())
    }
}

impl<S: Scalar> FromJson for DualQuaternion<S> {
    fn from_json(v: &Value) -> Result<Self> {
        Ok(Self::from_coeffs(scalars(v, "dual quaternion")?))
    }
}

impl<S: Scalar> ToJson for AxisLine<S> {
    fn to_json(&self) -> Value {
        json!({ "direction": scalar_array(&self.direction), "moment": scalar_array(&self.moment) })
    }
}

impl<S: Scalar> FromJson for AxisLine<S> {
    fn from_json(v: &Value) -> Result<Self> {
        AxisLine::new(scalars(&v["direction"], "line")?, scalars(&v["moment"], "line")?)
    }
}

impl<S: Scalar> ToJson for MotionPoly<S> {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(ToJson::to_json).collect())
    }
}

impl<S: Scalar> FromJson for MotionPoly<S> {
    fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| bad("motion polynomial"))?;
        Ok(MotionPoly::new(arr.iter().map(DualQuaternion::from_json).collect::<Result<_>>()?))
    }
}

impl<S: Scalar> ToJson for RealPoly<S> {
    fn to_json(&self) -> Value {
        scalar_array(self.coeffs())
    }
}

impl<S: Scalar> FromJson for RealPoly<S> {
    fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| bad("real polynomial"))?;
        let cs = arr.iter().map(|x| S::from_json(x).ok_or_else(|| bad("real polynomial"))).collect::<Result<_>>()?;
        Ok(RealPoly::new(cs))
    }
}

impl<S: Scalar> ToJson for DarbouxParams<S> {
    fn to_json(&self) -> Value {
        json!({
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "x": self.x.to_json(),
            "y": self.y.to_json(),
        })
    }
}

impl<S: Scalar> FromJson for DarbouxParams<S> {
    fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| match v.get(k) {
            None | Some(Value::Null) => Ok(S::zero()),
            Some(x) => S::from_json(x).ok_or_else(|| bad("parameters")),
        };
        Ok(DarbouxParams { a: get("a")?, b: get("b")?, c: get("c")?, x: get("x")?, y: get("y")? })
    }
}

impl<S: Scalar> ToJson for Factorization<S> {
    fn to_json(&self) -> Value {
        let adjacent: Vec<Value> = self.identical_adjacent().iter().map(|(i, j)| json!([i + 1, j + 1])).collect();
        json!({
            "label": self.label.to_string(),
            "params": self.params.to_json(),
            "factors": self.factors.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "cofactor": self.cofactor.to_json(),
            "identical_adjacent": adjacent,
        })
    }
}

impl<S: Scalar> FromJson for Factorization<S> {
    fn from_json(v: &Value) -> Result<Self> {
        let label: FactorizationLabel = v["label"].as_str().ok_or_else(|| bad("factorization label"))?.parse()?;
        let factors = v["factors"]
            .as_array()
            .ok_or_else(|| bad("factor list"))?
            .iter()
            .map(MotionPoly::from_json)
            .collect::<Result<_>>()?;
        Ok(Factorization {
            label,
            params: DarbouxParams::from_json(&v["params"])?,
            factors,
            cofactor: RealPoly::from_json(&v["cofactor"])?,
        })
    }
}

impl<S: Scalar> ToJson for Linkage<S> {
    fn to_json(&self) -> Value {
        let joints: Vec<Value> = self
            .joints()
            .iter()
            .map(|j| {
                let mut m = Map::new();
                m.insert("chain".into(), json!(if j.chain == Chain::A { "A" } else { "B" }));
                m.insert("factors".into(), json!(j.factors.iter().map(|i| i + 1).collect::<Vec<_>>()));
                m.insert("axis".into(), j.home.to_json());
                Value::Object(m)
            })
            .collect();
        let sub = self.substructure();
        json!({
            "joint_count": self.joint_count(),
            "degenerate": self.is_degenerate(),
            "joints": joints,
            "chain_a": self.chain_a().to_json(),
            "chain_b": self.chain_b().to_json(),
            "closure_certificate": self.closure_certificate().to_json(),
            "closure_hash": self.closure_hash(),
            "parallel_groups": one_based(&sub.parallel_groups),
            "four_bars": one_based(&sub.four_bars),
            "sarrus": sub.sarrus.iter().map(|s| json!({
                "chains": one_based(&s.chains),
                "fixed_joint": s.fixed_joint + 1,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn one_based(groups: &[Vec<usize>]) -> Vec<Vec<usize>> {
    groups.iter().map(|g| g.iter().map(|i| i + 1).collect()).collect()
}

macro_rules! serde_via_json {
    ($($ty:ident),*) => {$(
        impl<S: Scalar> Serialize for $ty<S> {
            fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
                ToJson::to_json(self).serialize(s)
            }
        }

        impl<'de, S: Scalar> Deserialize<'de> for $ty<S> {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let v = Value::deserialize(d)?;
                <$ty<S> as FromJson>::from_json(&v).map_err(de::Error::custom)
            }
        }
    )*};
}

serde_via_json!(DualQuaternion, AxisLine, MotionPoly, RealPoly, DarbouxParams, Factorization);

impl<S: Scalar> Serialize for Linkage<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        self.to_json().serialize(s)
    }
}

/// A factorization or an array of factorizations.
pub fn factorizations_from_json<S: Scalar>(v: &Value) -> Result<Vec<Factorization<S>>> {
    match v {
        Value::Array(items) => items.iter().map(Factorization::from_json).collect(),
        _ => Ok(vec![Factorization::from_json(v)?]),
    }
}

impl<R: Scalar + Serialize> Serialize for crate::linkage::ConfigSample<R> {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        let mut st = s.serialize_struct("ConfigSample", 5)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("poses_a", &self.poses_a)?;
        st.serialize_field("poses_b", &self.poses_b)?;
        st.serialize_field("joint_angles", &self.joint_angles)?;
        st.serialize_field("axes", &self.axes)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::darboux::{factor_fiii, fiv_chains};
    use crate::Rational;

    #[test]
    fn rational_round_trip() {
        let p = DarbouxParams::<Rational>::from_ratios((3, 2), (-1, 1), (2, 5))
            .with_offsets(Rational::from_ratio(1, 3), Rational::from_ratio(-2, 7));
        let f = factor_fiii(&p).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: Factorization<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert!(back.verify());
    }

    #[test]
    fn exact_scalars_are_strings() {
        let h = DualQuaternion::<Rational>::from_coeffs([0, 1, 0, 0, 0, 0, 0, 0].map(Rational::from_int))
            .scale(&Rational::from_ratio(1, 2));
        assert_eq!(h.to_json(), json!(["0", "1/2", "0", "0", "0", "0", "0", "0"]));
    }

    #[test]
    fn float_scalars_are_numbers() {
        let h = DualQuaternion::<f64>::one();
        assert_eq!(h.to_json(), json!([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn array_of_factorizations() {
        let (a, b) = fiv_chains::<Rational>();
        let v = Value::Array(vec![a.to_json(), b.to_json()]);
        let fs = factorizations_from_json::<Rational>(&v).unwrap();
        assert_eq!(fs, vec![a, b]);
    }

    #[test]
    fn linkage_json_has_hash() {
        let (a, b) = fiv_chains::<Rational>();
        let l = Linkage::new(a, b).unwrap();
        let v = l.to_json();
        assert_eq!(v["joint_count"], 7);
        assert_eq!(v["closure_hash"].as_str().unwrap().len(), 64);
        assert_eq!(v["parallel_groups"], json!([[1, 2, 6, 7], [3, 4, 5]]));
    }
}
