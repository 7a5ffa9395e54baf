macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            let out = $module::run_example().expect(concat!($file, " should run"));
            assert!(!out.is_empty());
        }
    };
}

example!(smith_form, "smith_form.rs", smith_form_runs);
example!(class_groups, "class_groups.rs", class_groups_runs);
example!(classify_fields, "classify_fields.rs", classify_fields_runs);
example!(
    pontryagin_duality,
    "pontryagin_duality.rs",
    pontryagin_duality_runs
);
example!(truncation, "truncation.rs", truncation_runs);
example!(
    extension_uniqueness,
    "extension_uniqueness.rs",
    extension_uniqueness_runs
);
example!(diagram_check, "diagram_check.rs", diagram_check_runs);
example!(function_fields, "function_fields.rs", function_fields_runs);
