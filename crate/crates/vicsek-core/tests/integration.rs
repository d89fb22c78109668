//! Cross-module checks: the decimation machinery against the dense
//! spectral oracle, energies, and the geometric symmetries of extended
//! eigenfunctions.

use vicsek_core::decimation::{
    branch_inverse, extend_basis, extend_eigenfunction, lambda_sequence, Branch,
};
use vicsek_core::graph::{
    apply_neg_laplacian, build_graph, eigen_residual, graph_energy, neumann_laplacian,
    symmetrized_laplacian, EigenfunctionField,
};
use vicsek_core::linalg::jacobi_eigen;
use vicsek_core::words::{fixed_point, ExactPoint};
use vicsek_core::Rational;

#[test]
fn extended_basis_satisfies_eigen_equation_to_level_5() {
    let basis = extend_basis(5).unwrap();
    for m in 1..=5u32 {
        let lam = basis.table.lambda(m as usize);
        for field in [&basis.u1, &basis.u2, &basis.u3] {
            let r = eigen_residual(basis.graph(m), &field[m as usize], lam).unwrap();
            assert!(r < 1e-10, "residual {r} at level {m}");
        }
    }
}

#[test]
fn dense_and_matrix_free_laplacians_agree() {
    let basis = extend_basis(2).unwrap();
    for m in 1..=2u32 {
        let g = basis.graph(m);
        let matrix = neumann_laplacian(g);
        let u = &basis.u1[m as usize];
        let via_matrix = matrix.apply(&u.values);
        let via_adjacency = apply_neg_laplacian(g, &u.values);
        for (a, b) in via_matrix.iter().zip(&via_adjacency) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}

#[test]
fn level2_spectrum_is_the_branch_image_of_level1() {
    // Every level-2 eigenvalue is a branch inverse of a level-1 eigenvalue,
    // with multiplicities fixed by the decimation rules.
    let g = build_graph(2).unwrap();
    let decomp = jacobi_eigen(&symmetrized_laplacian(&g)).unwrap();
    let groups = decomp.multiplicities(1e-8);
    let lam1 = 1.0 / 6.0;
    let five_sixths = 5.0 / 6.0;
    let expected = [
        (0.0, 1usize),
        (branch_inverse(Branch::Phi1, lam1).unwrap(), 3),
        (branch_inverse(Branch::Phi1, five_sixths).unwrap(), 1),
        (lam1, 11),
        (branch_inverse(Branch::Phi2, five_sixths).unwrap(), 1),
        (branch_inverse(Branch::Phi2, lam1).unwrap(), 3),
        (five_sixths, 1),
        (branch_inverse(Branch::Phi3, lam1).unwrap(), 3),
        (branch_inverse(Branch::Phi3, five_sixths).unwrap(), 1),
        (4.0 / 3.0, 51),
    ];
    assert_eq!(groups.len(), expected.len());
    for ((val, mult), (eval, emult)) in groups.iter().zip(expected.iter()) {
        assert!((val - eval).abs() < 1e-9, "{val} vs {eval}");
        assert_eq!(mult, emult);
    }
}

#[test]
fn renormalized_energy_is_monotone_for_extended_u1() {
    let basis = extend_basis(4).unwrap();
    let mut prev = -1.0f64;
    for m in 0..=4u32 {
        let e = graph_energy(basis.graph(m), &basis.u1[m as usize], true).unwrap();
        assert!(e >= prev - 1e-12, "renormalized energy dipped at level {m}");
        prev = e;
    }
    let e0 = graph_energy(basis.graph(0), &basis.u1[0], true).unwrap();
    let e1 = graph_energy(basis.graph(1), &basis.u1[1], true).unwrap();
    assert_eq!(e0, 8.0);
    assert!((e1 - 10.5).abs() < 1e-12, "E_1 renormalized = {e1}");
}

#[test]
fn extension_is_linear() {
    let basis = extend_basis(3).unwrap();
    let lam = basis.table.lambda(3);
    let g2 = basis.graph(2);
    let g3 = basis.graph(3);
    let combo2 = basis.combination(2, [2.5, -1.0, 0.5]);
    let extended_combo = extend_eigenfunction(&combo2, g2, g3, lam).unwrap();
    let combo3 = basis.combination(3, [2.5, -1.0, 0.5]);
    for (a, b) in extended_combo.values.iter().zip(&combo3.values) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn zero_eigenfunction_extends_to_a_constant() {
    // lambda = 0 decimates to itself through the first branch; constants
    // must stay constant because alpha + 3 chi = beta + 3 delta = 1 there.
    let g0 = build_graph(0).unwrap();
    let g1 = build_graph(1).unwrap();
    let constant = EigenfunctionField::new(0, vec![3.25; 4]);
    let extended = extend_eigenfunction(&constant, &g0, &g1, 0.0).unwrap();
    for v in &extended.values {
        assert!((v - 3.25).abs() < 1e-14);
    }
    let r = eigen_residual(&g1, &extended, 0.0).unwrap();
    assert!(r < 1e-14);
}

#[test]
fn extended_u1_has_the_square_symmetries() {
    // Under the reflection across the q1-q3 diagonal, (x,y) -> (1-y, 1-x),
    // the extension of u1 transforms into u1 - u2; under the horizontal
    // midline flip, (x,y) -> (x, 1-y), it is antisymmetric. Both follow
    // from the boundary values and equivariance of the extension.
    let basis = extend_basis(2).unwrap();
    let g = basis.graph(2);
    let one = Rational::ONE;
    let u1 = &basis.u1[2];
    let u2 = &basis.u2[2];
    for id in 0..g.vertex_count() as u32 {
        let p = g.coordinate(id);
        let diag = ExactPoint::new(one.sub(&p.y), one.sub(&p.x));
        let diag_id = g.vertex_id(&diag).unwrap();
        let expect = u1.value(diag_id);
        let got = u1.value(id) - u2.value(id);
        assert!((expect - got).abs() < 1e-13);

        let flip = ExactPoint::new(p.x, one.sub(&p.y));
        let flip_id = g.vertex_id(&flip).unwrap();
        assert!((u1.value(flip_id) + u1.value(id)).abs() < 1e-13);
    }
}

#[test]
fn boundary_vertices_keep_original_values_after_extension() {
    let basis = extend_basis(3).unwrap();
    for m in 0..=3u32 {
        let g = basis.graph(m);
        let ids = g.boundary_ids();
        let expect = [
            [1.0, 0.0, 0.0, -1.0],
            [0.0, 1.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, -1.0],
        ];
        for (which, field) in [&basis.u1, &basis.u2, &basis.u3].iter().enumerate() {
            for (corner, &id) in ids.iter().enumerate() {
                assert_eq!(field[m as usize].value(id), expect[which][corner]);
            }
        }
    }
}

#[test]
fn lambda_sequence_matches_dense_second_eigenvalues() {
    // The second-smallest dense eigenvalue at each level is the decimated
    // lambda_m: an end-to-end check tying the solver to the graphs.
    let seq = lambda_sequence(3).unwrap();
    for m in 1..=3u32 {
        let g = build_graph(m).unwrap();
        let decomp = jacobi_eigen(&symmetrized_laplacian(&g)).unwrap();
        let second = decomp.values[1];
        assert!(
            (second - seq.lambdas[m as usize]).abs() < 1e-9,
            "level {m}: {second} vs {}",
            seq.lambdas[m as usize]
        );
    }
}

#[test]
fn boundary_ids_project_to_unit_square_corners() {
    let g = build_graph(3).unwrap();
    let ids = g.boundary_ids();
    for (i, id) in ids.iter().enumerate() {
        assert_eq!(*g.coordinate(*id), fixed_point(i as u8 + 1));
    }
}
