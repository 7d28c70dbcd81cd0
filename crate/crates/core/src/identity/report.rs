//! Verification reports.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::Var;
use crate::series::{rat_to_string, BigRat};

/// Coefficients around a disagreement, starting at power `from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MismatchWindow {
    pub from: i64,
    pub lhs: Vec<BigRat>,
    pub rhs: Vec<BigRat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Mismatch {
        index: i64,
        left: BigRat,
        right: BigRat,
        window: MismatchWindow,
    },
    Error(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::Mismatch { .. } => "mismatch",
            Verdict::Error(_) => "error",
        }
    }

    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

/// Parameter assignment in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Assignment(pub Vec<(Var, i64)>);

impl Assignment {
    pub fn get(&self, var: Var) -> Option<i64> {
        self.0.iter().find(|(v, _)| *v == var).map(|(_, x)| *x)
    }
}

impl std::fmt::Display for Assignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (var, x) in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}={}", var.name(), x)?;
        }
        Ok(())
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (var, x) in &self.0 {
            map.serialize_entry(var.name(), x)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub params: Assignment,
    pub trunc: usize,
    pub verdict: Verdict,
    pub millis: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_equal()
    }
}

fn strings(v: &[BigRat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VerificationReport", 9)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("trunc", &self.trunc)?;
        st.serialize_field("verdict", self.verdict.name())?;
        match &self.verdict {
            Verdict::Equal => {}
            Verdict::Mismatch {
                index,
                left,
                right,
                window,
            } => {
                st.serialize_field("mismatch_index", index)?;
                st.serialize_field("lhs_coeff", &rat_to_string(left))?;
                st.serialize_field("rhs_coeff", &rat_to_string(right))?;
                st.serialize_field("window_start", &window.from)?;
                st.serialize_field("lhs_window", &strings(&window.lhs))?;
                st.serialize_field("rhs_window", &strings(&window.rhs))?;
            }
            Verdict::Error(msg) => st.serialize_field("error", msg)?,
        }
        st.serialize_field("millis", &self.millis)?;
        st.end()
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} [{}] T={}: ", self.id, self.params, self.trunc)?;
        match &self.verdict {
            Verdict::Equal => f.write_str("equal"),
            Verdict::Mismatch {
                index, left, right, ..
            } => write!(
                f,
                "mismatch at q^{index}: lhs {} rhs {}",
                rat_to_string(left),
                rat_to_string(right)
            ),
            Verdict::Error(msg) => write!(f, "error: {msg}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn mismatch_serializes_windows() {
        let r = VerificationReport {
            id: "X".into(),
            params: Assignment(vec![(Var::N, 2)]),
            trunc: 5,
            verdict: Verdict::Mismatch {
                index: 0,
                left: rat(1),
                right: rat(0),
                window: MismatchWindow {
                    from: 0,
                    lhs: vec![rat(1), rat(-1)],
                    rhs: vec![rat(0), rat(0)],
                },
            },
            millis: 0,
        };
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["params"]["n"], 2);
        assert_eq!(v["verdict"], "mismatch");
        assert_eq!(v["mismatch_index"], 0);
        assert_eq!(v["lhs_window"][1], "-1/1");
        assert_eq!(
            r.to_string(),
            "X [n=2] T=5: mismatch at q^0: lhs 1/1 rhs 0/1"
        );
    }
}
