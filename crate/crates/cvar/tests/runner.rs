mod common;

use common::Vecm;
use cvar::core::{fit_data, longrun_bootstrap, trace_test_data, CvarSpec, Refit, Sequential, TraceMethod};
use cvar::Parallel;

#[test]
fn parallel_schedule_matches_sequential() {
    let data = Vecm::pair().simulate(120, 31);
    let spec = CvarSpec::new(1, 1);
    let est = fit_data(&data, &spec).unwrap();
    let seq = longrun_bootstrap(&est, &data, &Refit::Unrestricted, 199, 5, &Sequential).unwrap();
    let par = longrun_bootstrap(&est, &data, &Refit::Unrestricted, 199, 5, &Parallel).unwrap();
    assert_eq!(seq, par);

    let method = TraceMethod::Bootstrap { replications: 99, seed: 5 };
    let seq = trace_test_data(&data, &spec, method, &Sequential).unwrap();
    let par = trace_test_data(&data, &spec, method, &Parallel).unwrap();
    assert_eq!(seq, par);
}
