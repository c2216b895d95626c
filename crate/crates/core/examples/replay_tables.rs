//! Checks every bundled record at its smallest parameters and tallies the
//! verdicts per table.

use std::collections::BTreeMap;

use lie_branch::expr::Env;
use lie_branch::paperdata::{instantiate, list_cases, CaseFilter};

fn main() -> lie_branch::Result<()> {
    let mut tally: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for c in list_cases(&CaseFilter::default()) {
        let inst = instantiate(&c.id, &Env::new())?;
        let cert = inst.certify(inst.minimal_bound().max(4))?;
        let t = tally.entry(c.table.to_string()).or_default();
        t.1 += 1;
        if cert.passed() {
            t.0 += 1;
        } else {
            println!("FAIL {} at {}", c.id, inst.params_label());
        }
    }
    for (table, (ok, n)) in tally {
        println!("{table:8} {ok}/{n} PASS");
    }
    Ok(())
}
