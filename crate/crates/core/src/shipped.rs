//! The corpus directory shipped with the tool: one file per lattice, space
//! and orthogonality space, plus maps, union maps, causal relations and the
//! recorded facts. The files are generated from [`Corpus::builtin`].

use std::fs;
use std::path::Path;

use crate::closure::PartialContinuousMap;
use crate::corpus::Corpus;
use crate::error::Result;
use crate::format::{write_causal, write_cspace, write_lattice, write_map, write_ospace, write_partial, write_space_map, write_umap, Workspace};
use crate::lattice::{LatticeRef, Limits};
use crate::maps::{special_maps, LatticeMap};
use crate::state::close_relation;
use crate::suite::{default_fact_keys, fact};
use crate::transition::{power_map, strictness_witness, unbased_instance};
use crate::weak::{restrict_codomain, weak_meet_maps};

fn file_name(object: &str) -> String {
    format!("{}.lat", object.replace(['/', '\\'], "_"))
}

/// `(file name, contents)` for every corpus file, in name order.
pub fn shipped_files() -> Result<Vec<(String, String)>> {
    let lim = Limits::default();
    let c = Corpus::builtin();
    let mut files = Vec::new();
    for l in &c.lattices {
        let ortho = c.ortho.iter().find(|o| o.lattice().name() == l.name());
        files.push((file_name(l.name()), write_lattice(l, ortho)));
    }
    for s in &c.spaces {
        files.push((file_name(s.name()), write_cspace(s)));
    }
    for s in &c.orthospaces {
        files.push((file_name(s.name()), write_ospace(s)));
    }

    let get = |name: &str| -> LatticeRef { c.lattice(name).expect("corpus lattice").clone() };
    let (c2, c3, d4, b4, b8) = (get("C2"), get("C3"), get("D4"), get("Boolean4"), get("Boolean8"));

    let mut maps = String::new();
    maps.push_str(&write_map("id_D4", &LatticeMap::identity(&d4)));
    let alpha = special_maps(&d4, 1).alpha_lower;
    maps.push_str(&write_map("alpha_a_D4", &LatticeMap::new(&c2, &d4, alpha.values().to_vec())?));
    maps.push_str(&write_map("meet_only_D4", &LatticeMap::new(&d4, &d4, vec![0, 0, 0, 3])?));
    maps.push_str(&write_map("project_B4_C2", &LatticeMap::new(&b4, &c2, vec![0, 1, 0, 1])?));
    maps.push_str(&write_map("embed_B4_B8", &LatticeMap::new(&b4, &b8, vec![0, 1, 6, 7])?));
    maps.push_str(&write_map("collapse_C3_C2", &LatticeMap::new(&c3, &c2, vec![0, 0, 1])?));
    let g = weak_meet_maps(&c3, &d4, &lim)?
        .into_iter()
        .find(|g| restrict_codomain(g).is_ok_and(|r| r.alpha.anchor() != d4.bottom()))
        .expect("a weak meet map with a proper anchor");
    maps.push_str(&write_partial("partial_D4_C3", &restrict_codomain(&g)?.alpha));
    let space = |name: &str| c.spaces.iter().find(|s| s.name() == name).expect("corpus space").clone();
    let (s2, s1) = (space("CS2_0"), space("CS1_0"));
    maps.push_str(&write_space_map("id_CS2_0", &PartialContinuousMap::identity(&s2)));
    let kernel_map = [vec![Some(0), None], vec![None, Some(0)], vec![None, None]]
        .into_iter()
        .find_map(|v| PartialContinuousMap::new(&s2, &s1, v).ok())
        .expect("a continuous map with a kernel");
    maps.push_str(&write_space_map("drop_CS2_0_CS1_0", &kernel_map));
    files.push(("maps.lat".into(), maps));

    let mut umaps = String::new();
    umaps.push_str(&write_umap("power_id_D4", &power_map(&LatticeMap::identity(&d4), &lim)?));
    for a in [1, 3] {
        umaps.push_str(&write_umap(&format!("witness_D4_{}", d4.label(a)), &strictness_witness(&d4, a, &lim)?));
    }
    let unbased = unbased_instance(&d4, &d4, &lim)?.expect("D4 has an unbased strongly isotone map");
    umaps.push_str(&write_umap("unbased_D4", &unbased));
    files.push(("umaps.lat".into(), umaps));

    let mut causal = String::new();
    causal.push_str(&write_causal("seeded_D4_C3", &close_relation(&d4, &c3, &[(1, 1)])?));
    causal.push_str(&write_causal("empty_C3_D4", &close_relation(&c3, &d4, &[])?));
    files.push(("causal.lat".into(), causal));

    let ws = Workspace::from_sources(&files, &lim)?;
    let mut expect = String::new();
    for object in ws.object_names() {
        let keys = default_fact_keys(&ws, object);
        if keys.is_empty() {
            continue;
        }
        let facts: Vec<String> = keys.iter().map(|k| fact(&ws, object, k).map(|v| format!("{k}={v}"))).collect::<Result<_>>()?;
        expect.push_str(&format!("expect {object} {}\n", facts.join(" ")));
    }
    files.push(("expectations.lat".into(), expect));
    files.sort();
    Ok(files)
}

/// Writes [`shipped_files`] into `dir`, creating it if needed.
pub fn write_shipped(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (name, text) in shipped_files()? {
        fs::write(dir.join(name), text)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_files_parse_and_name_every_object() {
        let files = shipped_files().unwrap();
        let ws = Workspace::from_sources(&files, &Limits::default()).unwrap();
        assert!(ws.lattices.contains_key("Moore20"));
        assert!(ws.ortho.contains_key("O6"));
        assert_eq!(ws.umaps.len(), 4);
        assert!(ws.expectations.iter().any(|e| e.object == "unbased_D4" && e.key == "based" && e.value == "false"));
    }
}
