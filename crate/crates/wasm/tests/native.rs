use mcfix_wasm::{check_document, homotopy_groups, invariants_table, verify_retraction};

#[test]
fn invariants_from_preset() {
    let t = invariants_table("wedge-s2", 0).unwrap();
    assert!(t.contains("| 2 | 3 | 2 | [u1,u2]; [u1,u1] + [u2,u2] |"), "{t}");
}

#[test]
fn invariants_from_toml() {
    let doc = "[group]\npreset = \"Z2\"\n\n[[algebra.generators]]\nname = \"x\"\ndegree = 3\n\n[[action]]\nelement = \"g\"\nimages = [\"-x\"]\n";
    let t = invariants_table(doc, 3).unwrap();
    assert!(t.contains("| 3 | 1 | 0 |  |"), "{t}");
    assert_eq!(homotopy_groups(doc, 3).unwrap().lines().next(), Some("all rational homotopy groups vanish through degree 3"));
}

#[test]
fn errors_are_strings() {
    assert!(invariants_table("no-such-preset", 0).unwrap_err().contains("unknown preset"));
    assert!(invariants_table("[group]\npreset = \"Z2\"\nbogus = 1\n", 0).is_err());
    assert!(verify_retraction("S3", "1", 6, 0).unwrap_err().contains("above the cap"));
}

#[test]
fn checks_and_retraction() {
    assert!(check_document("cp-n:n=2,a=-1").unwrap().ends_with("all checks pass\n"));
    let r = verify_retraction("Z2", "1,1:swap", 2, 7).unwrap();
    assert!(r.trim_end().ends_with("all checks pass"), "{r}");
}
