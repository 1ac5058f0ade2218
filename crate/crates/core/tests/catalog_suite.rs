use adegree_core::catalog::{catalog_list, verify_entry, CheckStatus};

#[test]
fn every_catalog_entry_verifies_at_default_budgets() {
    for e in catalog_list().unwrap() {
        let r = verify_entry(&e.id, &[], 1e-2).unwrap();
        let failed: Vec<_> = r
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        assert!(r.pass, "{}: {failed:?}", e.id);
    }
}
