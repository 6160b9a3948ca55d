use serde_json::{json, Value};

use crate::curves::{dual_curve, CurveClass, CurveShape, Step};
use crate::error::{LabError, Result};
use crate::json::Node;
use crate::surface::{PantsDecomposition, Side};

/// Named list of curves on a fixed decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    pub curves: Vec<CurveClass>,
}

fn curve_ref(node: &Node, topo: &PantsDecomposition) -> Result<usize> {
    match node.value {
        Value::String(name) => match topo.curve_index(name) {
            Ok(j) => Ok(j),
            Err(_) => node.fail(&format!("unknown curve \"{name}\"")),
        },
        _ => {
            let j = node.index()?;
            if j >= topo.curve_count() {
                return node.fail(&format!("curve index {j} out of range"));
            }
            Ok(j)
        }
    }
}

fn step(node: &Node, topo: &PantsDecomposition) -> Result<Step> {
    let parts = node.items()?;
    let Some(kind) = parts.first() else { return node.fail("empty step") };
    let arity = |n: &[usize]| -> Result<()> {
        if n.contains(&parts.len()) {
            Ok(())
        } else {
            node.fail(&format!("step has {} entries", parts.len()))
        }
    };
    match kind.string()? {
        "seam" => {
            arity(&[3, 4])?;
            let slot = match parts.get(3) {
                Some(s) => {
                    let k = s.index()?;
                    if k >= 3 {
                        return s.fail("boundary slot must be 0, 1 or 2");
                    }
                    Some(k)
                }
                None => None,
            };
            Ok(Step::Seam { from: curve_ref(&parts[1], topo)?, to: curve_ref(&parts[2], topo)?, slot })
        }
        "wind" => {
            arity(&[3])?;
            Ok(Step::Wind { curve: curve_ref(&parts[1], topo)?, turns: parts[2].integer()? })
        }
        "loop" => {
            arity(&[3])?;
            Ok(Step::Loop { curve: curve_ref(&parts[1], topo)?, turns: parts[2].integer()? })
        }
        other => kind.fail(&format!("unknown step kind \"{other}\"")),
    }
}

fn entry(node: &Node, topo: &PantsDecomposition) -> Result<CurveClass> {
    let id = node.field("id")?.ident()?;
    if let Some(p) = node.opt_field("pants_curve")? {
        return Ok(CurveClass::pants_curve(id, curve_ref(&p, topo)?));
    }
    let it = node.field("itinerary")?;
    let steps = it.items()?.iter().map(|s| step(s, topo)).collect::<Result<Vec<_>>>()?;
    if steps.is_empty() {
        return it.fail("empty itinerary");
    }
    let mut c = CurveClass::broken(id, steps);
    if let Some(start) = node.opt_field("start")? {
        let pair = start.items_exact(2)?;
        c = c.with_start(Side::new(pair[0].index()?, pair[1].index()?));
    }
    // catch mismatched itineraries at load time, with the entry's path
    if let Err(e) = c.resolve(topo) {
        return it.fail(&e.to_string());
    }
    Ok(c)
}

impl Catalog {
    /// Reads `[{"id", "itinerary": [["seam", i, j], ["wind", j, k], ...]}]`
    /// or `{"curves": [...]}`. Entries may instead give `"pants_curve": j`.
    pub fn from_json(doc: &Value, topo: &PantsDecomposition) -> Result<Self> {
        let root = Node::root(doc);
        let list = if doc.is_object() { root.field("curves")? } else { root };
        let mut curves: Vec<CurveClass> = Vec::new();
        for e in list.items()? {
            let c = entry(&e, topo)?;
            if curves.iter().any(|d| d.id == c.id) {
                return e.field("id")?.fail(&format!("duplicate curve id \"{}\"", c.id));
            }
            curves.push(c);
        }
        Ok(Self { curves })
    }

    pub fn from_json_str(text: &str, topo: &PantsDecomposition) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| LabError::Schema(format!("/: {e}")))?;
        Self::from_json(&doc, topo)
    }

    pub fn to_json(&self, topo: &PantsDecomposition) -> Value {
        let name = |j: usize| json!(topo.curve(j).name);
        let entries: Vec<Value> = self
            .curves
            .iter()
            .map(|c| match &c.shape {
                CurveShape::PantsCurve(j) => json!({"id": c.id, "pants_curve": name(*j)}),
                CurveShape::Broken { steps, start } => {
                    let it: Vec<Value> = steps
                        .iter()
                        .map(|s| match *s {
                            Step::Seam { from, to, slot: None } => json!(["seam", name(from), name(to)]),
                            Step::Seam { from, to, slot: Some(k) } => {
                                json!(["seam", name(from), name(to), k])
                            }
                            Step::Wind { curve, turns } => json!(["wind", name(curve), turns]),
                            Step::Loop { curve, turns } => json!(["loop", name(curve), turns]),
                        })
                        .collect();
                    let mut v = json!({"id": c.id, "itinerary": it});
                    if let Some(s) = start {
                        v["start"] = json!([s.pant, s.slot]);
                    }
                    v
                }
            })
            .collect();
        json!({ "curves": entries })
    }

    pub fn get(&self, id: &str) -> Result<&CurveClass> {
        self.curves.iter().find(|c| c.id == id).ok_or_else(|| LabError::UnknownCurve(id.to_string()))
    }

    /// Pants curves, duals, once-crossing curves through two pants curves,
    /// and a few of their Dehn twists, on the standard genus-two gluing.
    pub fn genus_two() -> Self {
        let topo = PantsDecomposition::genus_two();
        let mut curves: Vec<CurveClass> = (0..3).map(|j| CurveClass::pants_curve(format!("g{}", j + 1), j)).collect();
        for j in 0..3 {
            let mut d = dual_curve(&topo, j).expect("genus-two duals exist");
            d.id = format!("d{}", j + 1);
            curves.push(d);
        }
        let two_seam = |a: usize, b: usize, ka: i64, kb: i64| {
            vec![
                Step::Seam { from: a, to: b, slot: None },
                Step::Wind { curve: b, turns: kb },
                Step::Seam { from: b, to: a, slot: None },
                Step::Wind { curve: a, turns: ka },
            ]
        };
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            curves.push(CurveClass::broken(format!("b{}{}", a + 1, b + 1), two_seam(a, b, 0, 0)));
        }
        for j in 0..3 {
            let steps = vec![
                Step::Seam { from: j, to: j, slot: None },
                Step::Wind { curve: j, turns: 1 },
                Step::Seam { from: j, to: j, slot: None },
                Step::Wind { curve: j, turns: 1 },
            ];
            curves.push(CurveClass::broken(format!("d{}t", j + 1), steps));
        }
        curves.push(CurveClass::broken("b12t", two_seam(0, 1, 0, 1)));
        Self { curves }
    }
}
