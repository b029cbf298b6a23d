//! Ad-hoc pipeline timing for the heavyweight corpus entries. Ignored by
//! default; run with `cargo test -p areamethod-cli --test profile -- --ignored --nocapture`.

use std::time::Instant;

use areamethod::conjecture::Conjecture;
use areamethod::construction::{Construction, SideConditionProver};
use areamethod::eliminate::{eliminate_point, find_target_point};
use areamethod::error::Result;
use areamethod::prover::{ProveOptions, Prover};
use areamethod_cli::parser::parse;

struct Internal(Prover);

impl SideConditionProver for Internal {
    fn provable(&self, c: &Construction, conj: &Conjecture) -> Result<bool> {
        Ok(!self.0.negation_unprovable(c, conj)?)
    }
}

#[test]
#[ignore]
fn profile_euler_line() {
    let src = include_str!("../corpus/euler_line.geo");
    let file = parse(src).unwrap();
    let c = file.construction;
    let clause = &file.goal.clauses[0];
    let mut diff = clause
        .lhs
        .lower()
        .unwrap()
        .sub(&clause.rhs.lower().unwrap());
    let side = Internal(Prover::new(ProveOptions::default()));
    while let Some(y) = find_target_point(&diff, &c) {
        let t = Instant::now();
        let (next, _) = eliminate_point(&diff, &y, &c, &side).unwrap();
        eprintln!(
            "eliminate {:>4}: {:>7} ms; numerator terms {:>6} -> {:>6} (degree {})",
            y.name(),
            t.elapsed().as_millis(),
            diff.num().term_count(),
            next.num().term_count(),
            next.num().total_degree()
        );
        diff = next;
    }
    let t = Instant::now();
    let expanded = diff.expand_pythagoras();
    eprintln!(
        "pythagoras: {} ms; terms {} degree {}",
        t.elapsed().as_millis(),
        expanded.num().term_count(),
        expanded.num().total_degree()
    );
    let t = Instant::now();
    let (_, frame) = areamethod::area_coords::install_frame(&c).unwrap();
    let coords = areamethod::area_coords::to_area_coordinates(&expanded, &frame).unwrap();
    eprintln!(
        "coords: {} ms; terms {} degree {}",
        t.elapsed().as_millis(),
        coords.num().term_count(),
        coords.num().total_degree()
    );
}
