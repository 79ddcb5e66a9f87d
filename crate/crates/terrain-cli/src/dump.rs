//! JSON dumps of the intermediate structures, for debugging.
//!
//! Coordinates are exact rational strings in the terrain's normal form
//! (horizontal base); vertex references are chain indices, counted from
//! the left base vertex along the upper chain to the right base vertex.

use serde_json::{json, Value};
use terrain_core::apex::{Prepared, SolveError};
use terrain_core::geom::Point;
use terrain_core::hst::Hst;
use terrain_core::spt::{ProlongationSet, SpTree};
use terrain_core::terrain::Terrain;

fn point(p: &Point) -> Value {
    json!([p.x.to_string(), p.y.to_string()])
}

fn tree(t: &SpTree) -> Value {
    json!({
        "root": t.root_index(),
        "edges": t.edges().map(|(p, q)| json!([p, q])).collect::<Vec<_>>(),
    })
}

fn prolongations(set: &ProlongationSet) -> Value {
    set.items
        .iter()
        .map(|s| {
            json!({
                "origin": [s.origin.0, s.origin.1],
                "q": point(s.q()),
                "hit": point(s.hit()),
                "hit_edge": s.hit_edge,
                "base_foot": point(&s.base_foot),
            })
        })
        .collect()
}

pub fn spt_json(t: &Terrain, prep: &Prepared) -> Value {
    json!({
        "n": t.n(),
        "chain": t.chain().iter().map(point).collect::<Vec<_>>(),
        "tree_l": tree(&prep.tree_l),
        "tree_r": tree(&prep.tree_r),
        "l": prolongations(&prep.l),
        "r": prolongations(&prep.r),
    })
}

/// Per-node list sizes. With no crossings possible (`L` or `R` empty) the
/// tree is not built and `nodes` is empty.
pub fn hst_json(t: &Terrain, prep: &Prepared) -> Result<Value, SolveError> {
    let n = t.n();
    let nlogn = n as f64 * (n as f64).log2();
    if prep.l.items.is_empty() || prep.r.items.is_empty() {
        return Ok(json!({
            "n": n, "l": prep.l.items.len(), "r": prep.r.items.len(),
            "root": null, "nodes": [], "sum_list_sizes": 0, "normalized": 0.0,
        }));
    }
    let hst = Hst::new(&prep.l, &prep.r)?;
    let nodes: Vec<Value> = hst
        .nodes
        .iter()
        .enumerate()
        .map(|(id, v)| {
            json!({
                "id": id,
                "leaves": [v.lo, v.hi],
                "l_std": v.l_std.len(),
                "r_std": v.r_std.len(),
                "l_her": v.l_her.len(),
                "r_her": v.r_her.len(),
                "size": v.list_size(),
            })
        })
        .collect();
    let total = hst.total_list_size();
    Ok(json!({
        "n": n,
        "l": hst.l.len(),
        "r": hst.r.len(),
        "root": hst.root,
        "nodes": nodes,
        "sum_list_sizes": total,
        "normalized": total as f64 / nlogn,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use terrain_core::apex::prepare;
    use terrain_core::fixtures;

    #[test]
    fn t3_dumps() {
        let t = fixtures::t3();
        let prep = prepare(&t).unwrap();
        let spt = spt_json(&t, &prep);
        assert_eq!(spt["l"].as_array().unwrap().len(), 1);
        assert_eq!(spt["r"].as_array().unwrap().len(), 1);
        assert_eq!(spt["tree_l"]["root"], 0);
        assert_eq!(spt["tree_r"]["root"], 4);
        assert_eq!(spt["tree_l"]["edges"].as_array().unwrap().len(), 4);

        let hst = hst_json(&t, &prep).unwrap();
        let sizes: u64 = hst["nodes"].as_array().unwrap().iter().map(|v| v["size"].as_u64().unwrap()).sum();
        assert_eq!(hst["sum_list_sizes"].as_u64(), Some(sizes));
        assert!(sizes >= 2);
    }

    #[test]
    fn convex_has_no_tree() {
        let t = fixtures::t2();
        let prep = prepare(&t).unwrap();
        let hst = hst_json(&t, &prep).unwrap();
        assert!(hst["root"].is_null());
        assert_eq!(hst["sum_list_sizes"], 0);
    }
}
