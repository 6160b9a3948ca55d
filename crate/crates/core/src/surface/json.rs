use serde_json::{json, Value};

use crate::error::{LabError, Result};
use crate::json::Node;
use crate::scalar::Real;
use crate::surface::{CurveEdge, FnCoords, PantsDecomposition, PantsSurface, Side};

fn side(node: &Node) -> Result<Side> {
    let pair = node.items_exact(2)?;
    let pant = pair[0].index()?;
    let slot = pair[1].index()?;
    if slot >= 3 {
        return pair[1].fail("boundary slot must be 0, 1 or 2");
    }
    Ok(Side::new(pant, slot))
}

impl<T: Real> PantsSurface<T> {
    /// Reads a surface document:
    /// `{"pants": [..], "curves": [{"id", "ends": [[p, s], [p, s]]}],
    /// "cusps": [[p, s]], "marking": "standard", "fn": {"lengths", "twists"}}`.
    pub fn from_json(doc: &Value) -> Result<Self> {
        let root = Node::root(doc);
        let pants = root.field("pants")?;
        let pant_names = pants.items()?.iter().map(|p| p.ident()).collect::<Result<Vec<_>>>()?;
        let curves_node = root.field("curves")?;
        let mut curves = Vec::new();
        for c in curves_node.items()? {
            let name = c.field("id")?.ident()?;
            if curves.iter().any(|e: &CurveEdge| e.name == name) {
                return c.field("id")?.fail(&format!("duplicate curve id \"{name}\""));
            }
            let ends = c.field("ends")?.items_exact(2)?;
            curves.push(CurveEdge { name, ends: [side(&ends[0])?, side(&ends[1])?] });
        }
        let cusps = match root.opt_field("cusps")? {
            Some(n) => n.items()?.iter().map(side).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        if let Some(m) = root.opt_field("marking")? {
            if m.string()? != "standard" {
                return m.fail("only the \"standard\" marking is supported");
            }
        }
        let fn_node = root.field("fn")?;
        let read = |name: &str| -> Result<Vec<T>> {
            let node = fn_node.field(name)?;
            let items = node.items_exact(curves.len())?;
            items.iter().map(|x| x.number().map(T::lit)).collect()
        };
        let lengths = read("lengths")?;
        let twists = read("twists")?;
        if let Some(k) = lengths.iter().position(|l| *l <= T::zero()) {
            return fn_node.field("lengths")?.items()?[k].fail("length must be positive");
        }
        let topology = PantsDecomposition::new(pant_names, curves, cusps)?;
        Self::new(topology, FnCoords::new(lengths, twists)?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| LabError::Schema(format!("/: {e}")))?;
        Self::from_json(&doc)
    }

    pub fn to_json(&self) -> Value {
        let topo = self.topology();
        let pair = |s: Side| json!([s.pant, s.slot]);
        let mut cusps = Vec::new();
        for p in 0..topo.pant_count() {
            for k in 0..3 {
                if topo.curve_at(Side::new(p, k)).is_none() {
                    cusps.push(json!([p, k]));
                }
            }
        }
        json!({
            "pants": topo.pant_names(),
            "curves": topo.curves().iter().map(|c| json!({
                "id": c.name,
                "ends": [pair(c.ends[0]), pair(c.ends[1])],
            })).collect::<Vec<_>>(),
            "cusps": cusps,
            "marking": "standard",
            "fn": {
                "lengths": self.coords().lengths().iter().map(|x| x.as_f64()).collect::<Vec<_>>(),
                "twists": self.coords().twists().iter().map(|x| x.as_f64()).collect::<Vec<_>>(),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GENUS_TWO: &str = r#"{
        "pants": ["P0", "P1"],
        "curves": [
            {"id": "g1", "ends": [[0, 0], [1, 0]]},
            {"id": "g2", "ends": [[0, 1], [1, 1]]},
            {"id": "g3", "ends": [[0, 2], [1, 2]]}
        ],
        "marking": "standard",
        "fn": {"lengths": [0.1, 0.1, 1.0], "twists": [0.0, 0.25, -1.5]}
    }"#;

    fn schema_path(err: LabError) -> String {
        match err {
            LabError::Schema(m) => m.split(':').next().unwrap().to_string(),
            other => panic!("expected schema error, got {other}"),
        }
    }

    #[test]
    fn reads_genus_two() {
        let s = PantsSurface::<f64>::from_json_str(GENUS_TWO).unwrap();
        assert_eq!(s.topology().genus(), 2);
        assert_eq!(s.coords().twist(2), -1.5);
    }

    #[test]
    fn decimal_round_trip() {
        let mut doc: Value = serde_json::from_str(GENUS_TWO).unwrap();
        doc["fn"]["lengths"][2] = json!(0.123_456_789_012_345_6);
        let s = PantsSurface::<f64>::from_json(&doc).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back = PantsSurface::<f64>::from_json_str(&text).unwrap();
        for j in 0..3 {
            assert!((back.coords().length(j) - s.coords().length(j)).abs() <= 1e-12);
            assert!((back.coords().twist(j) - s.coords().twist(j)).abs() <= 1e-12);
        }
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let mut doc: Value = serde_json::from_str(GENUS_TWO).unwrap();
        doc["fn"]["lengths"][1] = json!("x");
        assert_eq!(schema_path(PantsSurface::<f64>::from_json(&doc).unwrap_err()), "/fn/lengths/1");

        let mut doc: Value = serde_json::from_str(GENUS_TWO).unwrap();
        doc["curves"][2]["ends"][0] = json!([0, 5]);
        assert_eq!(schema_path(PantsSurface::<f64>::from_json(&doc).unwrap_err()), "/curves/2/ends/0/1");

        let mut doc: Value = serde_json::from_str(GENUS_TWO).unwrap();
        doc["fn"]["twists"] = json!([0.0]);
        assert_eq!(schema_path(PantsSurface::<f64>::from_json(&doc).unwrap_err()), "/fn/twists");
    }

    #[test]
    fn gluing_errors_name_the_curve() {
        let mut doc: Value = serde_json::from_str(GENUS_TWO).unwrap();
        doc["curves"][2]["ends"][1] = json!([1, 1]);
        match PantsSurface::<f64>::from_json(&doc).unwrap_err() {
            LabError::Gluing { curve, .. } => assert_eq!(curve, "g3"),
            other => panic!("unexpected {other}"),
        }
    }
}
