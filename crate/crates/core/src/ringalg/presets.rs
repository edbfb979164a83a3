//! Bundled presentations for the small-level module structures.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetKind {
    FreeBasis,
    RegularSequence,
    Weierstrass,
}

#[derive(Clone, Copy, Debug)]
pub struct Preset {
    pub kind: PresetKind,
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! preset {
    ($kind:ident, $name:literal, $file:literal) => {
        Preset {
            kind: PresetKind::$kind,
            name: $name,
            text: include_str!(concat!("../../presets/", $file)),
        }
    };
}

pub const PRESETS: &[Preset] = &[
    preset!(FreeBasis, "f2-gamma1-3", "freebasis-f2-gamma1-3.txt"),
    preset!(FreeBasis, "f3-gamma1-2", "freebasis-f3-gamma1-2.txt"),
    preset!(FreeBasis, "q-gamma1-2", "freebasis-q-gamma1-2.txt"),
    preset!(FreeBasis, "q-gamma1-3", "freebasis-q-gamma1-3.txt"),
    preset!(RegularSequence, "f2-gamma1-3", "regseq-f2-gamma1-3.txt"),
    preset!(RegularSequence, "f3-gamma1-2", "regseq-f3-gamma1-2.txt"),
    preset!(RegularSequence, "f3-not-regular", "regseq-f3-not-regular.txt"),
    preset!(Weierstrass, "gamma1-2", "weierstrass-gamma1-2.txt"),
    preset!(Weierstrass, "gamma1-3", "weierstrass-gamma1-3.txt"),
    preset!(Weierstrass, "gamma1-3-perturbed", "weierstrass-gamma1-3-perturbed.txt"),
];

pub fn find(kind: PresetKind, name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.kind == kind && p.name == name)
}

pub fn names(kind: PresetKind) -> Vec<&'static str> {
    PRESETS.iter().filter(|p| p.kind == kind).map(|p| p.name).collect()
}
