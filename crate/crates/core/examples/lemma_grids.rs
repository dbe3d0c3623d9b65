//! Runs the binomial-tail inequality grids in exact arithmetic and prints the
//! violation counts and first witnesses.

use bisectlab::tail::{
    verify_lemma_appendix, verify_lemma_diff_identity, verify_lemma_sym_a, verify_lemma_sym_b, LemmaGrid,
};

fn main() {
    let t_max = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    let s_max = std::env::args().nth(2).and_then(|a| a.parse().ok()).unwrap_or(24);
    let grid = LemmaGrid { t_max, s_max };
    let reports = [
        verify_lemma_sym_a(&grid),
        verify_lemma_sym_b(&grid),
        verify_lemma_appendix(&grid),
        verify_lemma_diff_identity(s_max),
    ];
    for r in &reports {
        println!(
            "{:<16} checked={:<6} violations={}",
            r.name,
            r.checked,
            r.violations.len()
        );
        for (part, n) in &r.checked_by_part {
            println!(
                "    part {part:<12} checked={n:<6} violations={}",
                r.violations_in(part)
            );
        }
        if let Some((lo, hi)) = &r.ratio_band {
            println!("    ratio band [{lo}, {hi}]");
        }
        for v in r.violations.iter().take(3) {
            println!("    {} at {:?}: {} < {}", v.part, v.point, v.lhs, v.rhs);
        }
    }
}
