//! Identity-checking suites behind `compolab verify`.

use super::{CliError, Context, Suite};
use crate::bijection;
use crate::closedform::{
    comp_count_explicit, comp_count_recursive, k1_count_formula, maximin_count_paper,
    minimax_count_formula, row_sum,
};
use crate::graph::LabelledGraph;
use crate::numtheory::bell;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    pub lines: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, line: String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
        self.lines
            .push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} of {} identities hold",
            self.suite,
            self.checked - self.failed,
            self.checked
        )
    }
}

pub fn run_suite(ctx: &mut Context, suite: Suite, n_max: usize) -> Result<SuiteReport, CliError> {
    match suite {
        Suite::Rowsum => {
            let mut r = SuiteReport::new("rowsum");
            for n in 0..=n_max {
                let sum = row_sum(n, &mut ctx.memo);
                let b = bell(n + 1);
                r.record(
                    sum == b,
                    format!(
                        "n={n}: sum over m of C(K_n^-K_m) = {sum}, B({}) = {b}",
                        n + 1
                    ),
                );
            }
            Ok(r)
        }
        Suite::Threeway => {
            let mut r = SuiteReport::new("threeway");
            for n in 0..=n_max {
                for m in 0..=n {
                    let rec = comp_count_recursive(n, m, &mut ctx.memo)?;
                    let exp = comp_count_explicit(n, m)?;
                    let brute = ctx
                        .brute
                        .composition_count(&LabelledGraph::complete_minus_clique(n, m)?)?;
                    let ok = rec == exp && exp == brute;
                    r.record(
                        ok,
                        format!("n={n} m={m}: recursive {rec}, explicit {exp}, brute {brute}"),
                    );
                }
            }
            Ok(r)
        }
        Suite::Bijection => {
            let mut r = SuiteReport::new("bijection");
            for n in 0..=n_max {
                for m in 0..=n {
                    let rep = bijection::verify(n, m, &ctx.brute)?;
                    let expect = comp_count_recursive(n, m, &mut ctx.memo)?;
                    let ok = rep.passed() && rep.lhs_count == expect;
                    r.record(
                        ok,
                        format!(
                            "n={n} m={m}: minimax-{} partitions {}, compositions {}, round trip {}, injective {}, structure {}",
                            m + 1,
                            rep.lhs_count,
                            rep.rhs_count,
                            rep.round_trip_ok,
                            rep.injective_ok,
                            rep.structure_ok
                        ),
                    );
                }
            }
            Ok(r)
        }
        Suite::K1 => {
            let mut r = SuiteReport::new("k1");
            for n in 1..=n_max {
                let brute = ctx.brute.kj_histogram(n, 1)?;
                for (m, b) in brute.iter().enumerate() {
                    let f = k1_count_formula(n, m)?;
                    r.record(&f == b, format!("n={n} m={m}: formula {f}, brute {b}"));
                }
            }
            Ok(r)
        }
        Suite::Reflection => {
            let mut r = SuiteReport::new("reflection");
            for n in 1..=n_max {
                let brute = ctx.brute.minimax_histogram(n)?;
                for m in 1..=n {
                    let mirrored = maximin_count_paper(n, n + 1 - m)?;
                    let formula = minimax_count_formula(n, m)?;
                    let ok = mirrored == formula && formula == brute[m];
                    r.record(
                        ok,
                        format!(
                            "n={n} m={m}: maximin({n},{}) {mirrored}, minimax formula {formula}, brute {}",
                            n + 1 - m,
                            brute[m]
                        ),
                    );
                }
            }
            Ok(r)
        }
    }
}
