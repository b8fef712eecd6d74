#![allow(dead_code)]

use irred_core::ffield::Field;
use irred_core::ffield::FieldElem;
use irred_core::gaction::{
    coset_action, decomposition_action, projective_line, projective_space, share, Action,
};
use irred_core::grp::{
    general_linear, projective_general_linear, projective_special_linear, semilinear_extension,
    singer_normalizer, Group, GroupElem, Subgroup,
};
use irred_core::Limits;

pub fn lim() -> Limits {
    Limits::default()
}

pub fn pgl_line(p: u32, f: u32) -> Action {
    let field = Field::new(p, f).unwrap();
    projective_line(
        share(projective_general_linear(2, &field, &lim()).unwrap()),
        &lim(),
    )
    .unwrap()
}

pub fn psl_line(p: u32, f: u32) -> Action {
    let field = Field::new(p, f).unwrap();
    projective_line(
        share(projective_special_linear(2, &field, &lim()).unwrap()),
        &lim(),
    )
    .unwrap()
}

pub fn pgammal_line(p: u32, f: u32) -> Action {
    let field = Field::new(p, f).unwrap();
    let pgl = projective_general_linear(2, &field, &lim()).unwrap();
    projective_line(share(semilinear_extension(&pgl, &lim()).unwrap()), &lim()).unwrap()
}

pub fn singer_cosets() -> Action {
    let (g, h, _) = singer_normalizer(3, &lim()).unwrap();
    coset_action(share(g), &h, &lim()).unwrap()
}

pub fn gl3_2_plane() -> Action {
    let field = Field::new(2, 1).unwrap();
    projective_space(share(general_linear(3, &field, &lim()).unwrap()), &lim()).unwrap()
}

pub fn pgl2_decompositions(p: u32, f: u32) -> Action {
    let field = Field::new(p, f).unwrap();
    decomposition_action(
        share(projective_general_linear(2, &field, &lim()).unwrap()),
        2,
        &lim(),
    )
    .unwrap()
}

/// The cyclic group of order `n` (2 or 3) acting regularly on itself.
pub fn regular_cyclic(n: u32) -> Action {
    let field = Field::new(2, 1).unwrap();
    let m = match n {
        2 => vec![1, 1, 0, 1],
        3 => vec![0, 1, 1, 1],
        _ => panic!("only 2 and 3"),
    };
    let gen = GroupElem::linear(m.into_iter().map(FieldElem).collect());
    let g = Group::closure(format!("C{n}"), field, 2, &[gen], false, &lim()).unwrap();
    let trivial = Subgroup::from_members(vec![g.identity_id()]);
    coset_action(share(g), &trivial, &lim()).unwrap()
}

/// Faithful actions inside the brute-force oracle's guard.
pub fn oracle_instances() -> Vec<Action> {
    vec![
        singer_cosets(),
        gl3_2_plane(),
        pgl_line(2, 2),
        pgammal_line(2, 2),
        pgl_line(5, 1),
        psl_line(7, 1),
        pgl_line(7, 1),
        pgl_line(2, 3),
        pgammal_line(2, 3),
        psl_line(3, 2),
        pgl_line(3, 2),
        pgammal_line(3, 2),
        psl_line(11, 1),
        pgl2_decompositions(3, 1),
        pgl2_decompositions(2, 2),
        regular_cyclic(3),
    ]
}
