use crate::opalg::DiffOperator;
use crate::systems::{build_generators, build_hamiltonian_form, schrodinger_operators, SystemKind, SystemSpec, Variable};

/// Names the expression parser resolves to built-in operators.
///
/// `<G>3_<sys>`, `<G>p_<sys>`, `<G>m_<sys>`: generators `G₃, G₊, G₋` in `x`.
/// `D3r_osc …` and `tau3_hyd …`: the same in `r`. `<G>pn_<sys>`, `<G>mn_<sys>`:
/// level-dependent Schrödinger operators. `L_<sys>`: radial operator.
pub const BUILTIN_NAMES: [&str; 30] = [
    "D3_osc", "Dp_osc", "Dm_osc", "T3_hyd", "Tp_hyd", "Tm_hyd", "D3_ph", "Dp_ph", "Dm_ph", "T3_mie", "Tp_mie",
    "Tm_mie", "D3r_osc", "Dpr_osc", "Dmr_osc", "tau3_hyd", "taup_hyd", "taum_hyd", "Dpn_osc", "Dmn_osc",
    "Tpn_hyd", "Tmn_hyd", "Dpn_ph", "Dmn_ph", "Tpn_mie", "Tmn_mie", "L_osc", "L_hyd", "L_ph", "L_mie",
];

fn kind_of(suffix: &str) -> Option<SystemKind> {
    Some(match suffix {
        "osc" => SystemKind::Oscillator,
        "hyd" => SystemKind::Hydrogen,
        "ph" => SystemKind::PseudoHarmonic,
        "mie" => SystemKind::Mie,
        _ => return None,
    })
}

pub fn builtin_operator(name: &str) -> Option<DiffOperator> {
    if !BUILTIN_NAMES.contains(&name) {
        return None;
    }
    let (stem, suffix) = name.rsplit_once('_')?;
    let kind = kind_of(suffix)?;
    if stem == "L" {
        // The radial form only depends on the kind.
        let spec = SystemSpec::of_kind(kind, 3, 0, 0.0).ok()?;
        return build_hamiltonian_form(&spec, None).ok();
    }
    if stem.ends_with("pn") || stem.ends_with("mn") {
        let (plus, minus) = schrodinger_operators(kind);
        return Some(if stem.ends_with("pn") { plus } else { minus });
    }
    let variable = if stem.starts_with("tau") || stem.ends_with('r') { Variable::R } else { Variable::X };
    let g = build_generators(kind, variable).ok()?;
    let role = stem.trim_start_matches("tau").trim_start_matches(['D', 'T']).trim_end_matches('r');
    Some(match role {
        "3" => g.g3,
        "p" => g.gplus,
        "m" => g.gminus,
        _ => return None,
    })
}
