mod support;

use std::collections::HashMap;

use frobcheck::determinantal::{colex_subsets, GenericMatrix, MinorSpec};
use frobcheck::ideal::{is_regular_sequence, not_in_bracket_max_by};
use frobcheck::text::parse_polynomial;
use frobcheck::{Ideal, MatrixSymbol, Polynomial};
use support::leibniz_det;

const FAMILY: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)];

#[test]
fn minors_agree_with_the_leibniz_formula() {
    let m = GenericMatrix::generic(3, MatrixSymbol::X, 4, 4).unwrap();
    let r = m.ring().clone();
    for k in 1..=4 {
        for rows in colex_subsets(4, k) {
            for cols in colex_subsets(4, k) {
                let sub: Vec<Vec<Polynomial>> = rows.iter().map(|&i| cols.iter().map(|&j| m.entry(i, j)).collect()).collect();
                let spec = MinorSpec::new(rows.clone(), cols.clone()).unwrap();
                assert_eq!(m.minor(&spec).unwrap(), leibniz_det(&r, &sub));
            }
        }
    }
}

#[test]
fn minors_agree_with_cofactor_expansion_along_every_row() {
    let m = GenericMatrix::generic(5, MatrixSymbol::X, 3, 3).unwrap();
    let full = m.minor(&MinorSpec::new(vec![0, 1, 2], vec![0, 1, 2]).unwrap()).unwrap();
    for row in 0..3 {
        let mut acc = Polynomial::zero(m.ring());
        for col in 0..3 {
            let rows: Vec<usize> = (0..3).filter(|&i| i != row).collect();
            let cols: Vec<usize> = (0..3).filter(|&j| j != col).collect();
            let cof = &m.entry(row, col) * &m.minor(&MinorSpec::new(rows, cols).unwrap()).unwrap();
            acc = if (row + col) % 2 == 0 { &acc + &cof } else { &acc - &cof };
        }
        assert_eq!(acc, full);
    }
}

#[test]
fn staircase_minors_are_regular_and_heights_match() {
    for (t, n) in FAMILY {
        let m = GenericMatrix::generic(2, MatrixSymbol::X, t, n).unwrap();
        let stairs = m.staircase_minors();
        assert_eq!(stairs.len(), n - t + 1);
        assert!(is_regular_sequence(&stairs).unwrap(), "({t},{n})");
        assert_eq!(m.det_ideal(t).unwrap().height().unwrap(), n - t + 1, "({t},{n})");
    }
}

#[test]
fn dimension_of_two_by_three_minors() {
    let m = GenericMatrix::generic(2, MatrixSymbol::X, 2, 3).unwrap();
    assert_eq!(m.det_ideal(2).unwrap().dimension().unwrap(), 4);
    let sq = GenericMatrix::generic(2, MatrixSymbol::X, 2, 2).unwrap();
    let i = sq.det_ideal(2).unwrap();
    assert_eq!(i.generators().len(), 1);
    assert_eq!(i.height().unwrap(), 1);
}

#[test]
fn row_operations_leave_minor_ideals_unchanged() {
    for (t, n) in [(2, 3), (2, 4), (3, 4)] {
        let m = GenericMatrix::generic(3, MatrixSymbol::X, t, n).unwrap();
        let r = m.ring().clone();
        let c = Polynomial::constant(&r, 2);
        let mut map: HashMap<_, _> = r.vars().iter().cloned().zip(r.gens()).collect();
        for j in 0..n {
            map.insert(m.entry_var(0, j).clone(), &m.entry(0, j) + &(&c * &m.entry(1, j)));
        }
        let moved: Vec<Polynomial> = m.maximal_minors().iter().map(|d| d.substitute(&r, &map).unwrap()).collect();
        let before = Ideal::new(&r, m.maximal_minors()).unwrap();
        let after = Ideal::new(&r, moved).unwrap();
        assert!(before.equals(&after).unwrap(), "({t},{n})");
    }
}

#[test]
fn leading_terms_of_staircase_minors_are_diagonals() {
    let m = GenericMatrix::generic(2, MatrixSymbol::X, 3, 5).unwrap();
    let lex = m.row_major_lex();
    for (i, d) in m.staircase_minors().iter().enumerate() {
        let diag = &(&m.entry(0, i) * &m.entry(1, i + 1)) * &m.entry(2, i + 2);
        assert_eq!(d.leading_monomial(&lex).unwrap(), diag.terms()[0].0);
    }
}

#[test]
fn bracket_witness_for_the_two_by_three_product() {
    let m = GenericMatrix::generic(2, MatrixSymbol::X, 2, 3).unwrap();
    let r = m.ring().clone();
    let s = m.staircase_minors();
    let f = &(&m.entry(0, 2) * &s[0]) * &s[1];
    let vars: Vec<usize> = (0..r.nvars()).collect();
    let w = not_in_bracket_max_by(&f, &vars, 2, &m.row_major_lex()).unwrap();
    let want = parse_polynomial(&r, "x[1,1]*x[2,2]*x[1,2]*x[2,3]*x[1,3]").unwrap();
    assert_eq!(w, want.terms()[0].0);
}

#[test]
fn radical_of_the_substituted_staircase() {
    // x_{2,1} -> 0 and x_{2,j} -> x_{1,j-1} send [1,2] to x11^2 and [2,3] to x12^2 - x11*x13,
    // so x12 lies in the radical of the image.
    let m = GenericMatrix::generic(2, MatrixSymbol::X, 2, 3).unwrap();
    let r = m.ring().clone();
    let zero = Polynomial::zero(&r);
    let map: HashMap<_, _> = vec![
        (m.entry_var(0, 0).clone(), m.entry(0, 0)),
        (m.entry_var(0, 1).clone(), m.entry(0, 1)),
        (m.entry_var(0, 2).clone(), m.entry(0, 2)),
        (m.entry_var(1, 0).clone(), zero),
        (m.entry_var(1, 1).clone(), m.entry(0, 0)),
        (m.entry_var(1, 2).clone(), m.entry(0, 1)),
    ]
    .into_iter()
    .collect();
    let image: Vec<Polynomial> = m.staircase_minors().iter().map(|d| d.substitute(&r, &map).unwrap()).collect();
    let i = Ideal::new(&r, image).unwrap();
    assert!(i.radical_contains(&m.entry(0, 1)).unwrap());
}
