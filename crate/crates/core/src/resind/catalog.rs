use super::subgroup::SubgroupSpec;
use crate::algebra::invariant_subalgebras;
use crate::error::Result;
use crate::group::TriangularGroup;

/// The standard test subgroups of `G`: `N = 1 + J`, `H' + J` for each proper
/// nontrivial `H' < H`, and `H + J'` for each maximal `H x H`-invariant
/// subalgebra `J'`. Each comes with a short label.
pub fn catalog_subgroups(group: &TriangularGroup) -> Result<Vec<(String, SubgroupSpec)>> {
    let h = group.h();
    let whole = SubgroupSpec::whole(group);
    let mut out = vec![("N".to_string(), SubgroupSpec::unipotent(group))];
    for members in h.subgroups() {
        if members.len() == 1 || members.len() == h.order() {
            continue;
        }
        let gens: Vec<Vec<u32>> = members.iter().map(|&m| h.element(m).to_vec()).collect();
        let label = format!("H'={:?}+J", gens);
        out.push((
            label,
            SubgroupSpec {
                h_generators: gens,
                j_basis: whole.j_basis.clone(),
            },
        ));
    }
    let all: Vec<usize> = (0..h.order()).collect();
    for sub in invariant_subalgebras(group.algebra(), group.tables(), &all)? {
        if sub.maximal {
            let coords: Vec<Vec<u16>> = sub
                .basis
                .iter()
                .map(|v| v.iter().map(|c| c.0).collect())
                .collect();
            let label = format!("H+J'={coords:?}");
            out.push((
                label,
                SubgroupSpec {
                    h_generators: whole.h_generators.clone(),
                    j_basis: sub.basis,
                },
            ));
        }
    }
    Ok(out)
}
