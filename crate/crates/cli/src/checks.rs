//! Bundled property suites behind `bp2 check <suite>`: deterministic
//! re-runs of the library's structural identities at small sizes, printing
//! one line per check and exiting 2 on the first counterexample.

use bp2_core::gns::{
    gram_model, j_isometry_defect, j_matrix, operator_tower, theta_matrix, theta_quadratic_identity,
};
use bp2_core::kernel::{ldlt_psd_certificate, symmetric_eigs, Scalar};
use bp2_core::partitions::PairPartition;
use bp2_core::semigroup::{standard_form, Diagram};
use bp2_core::weights::{is_multiplicative_upto, is_rotation_invariant_upto, Weight};
use bp2_core::wick::{
    enumerate_monomials, fock_gram, gaussian_gram, moment_inner_product, moments_from_wick,
    psi_pattern, wick_from_moments, wick_inner_product, WickExpression,
};

use crate::parse::ParseFail;

struct Runner {
    json: bool,
    failures: usize,
    results: Vec<(String, bool, String)>,
}

impl Runner {
    fn new(json: bool) -> Self {
        Runner {
            json,
            failures: 0,
            results: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => {
                if !self.json {
                    println!("{name}: pass");
                }
                self.results.push((name.to_string(), true, String::new()));
            }
            Err(ce) => {
                if !self.json {
                    println!("{name}: FAIL ({ce})");
                }
                self.results.push((name.to_string(), false, ce));
                self.failures += 1;
            }
        }
    }

    fn finish(self) -> Result<u8, ParseFail> {
        if self.json {
            let entries: Vec<serde_json::Value> = self
                .results
                .iter()
                .map(|(name, ok, ce)| {
                    if *ok {
                        serde_json::json!({"check": name, "outcome": "pass"})
                    } else {
                        serde_json::json!({"check": name, "outcome": "fail", "counterexample": ce})
                    }
                })
                .collect();
            println!("{}", serde_json::to_string(&entries).unwrap());
        }
        Ok(if self.failures == 0 { 0 } else { 2 })
    }
}

fn ensure(cond: bool, detail: impl Fn() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

pub fn run_suite(suite: &str, json: bool) -> Result<u8, ParseFail> {
    let mut r = Runner::new(json);
    match suite {
        "partitions" => partitions_suite(&mut r),
        "semigroup" => semigroup_suite(&mut r),
        "weights" => weights_suite(&mut r),
        "wick" => wick_suite(&mut r),
        "gns" => gns_suite(&mut r),
        "all" => {
            partitions_suite(&mut r);
            semigroup_suite(&mut r);
            weights_suite(&mut r);
            wick_suite(&mut r);
            gns_suite(&mut r);
        }
        other => {
            return Err(ParseFail(format!(
                "unknown suite {other:?}: expected partitions|semigroup|weights|wick|gns|all"
            )))
        }
    }
    r.finish()
}

fn partitions_suite(r: &mut Runner) {
    r.check("partitions.double_factorial_counts", {
        let expect = [1usize, 1, 3, 15, 105, 945];
        (0..=5usize).try_for_each(|n| {
            ensure(
                PairPartition::enumerate(2 * n as u32).len() == expect[n],
                || format!("count at 2n = {}", 2 * n),
            )
        })
    });
    r.check("partitions.catalan_noncrossing_counts", {
        let catalan = [1usize, 2, 5, 14, 42];
        (1..=5usize).try_for_each(|n| {
            let count = PairPartition::enumerate(2 * n as u32)
                .iter()
                .filter(|v| v.crossings() == 0)
                .count();
            ensure(count == catalan[n - 1], || {
                format!("Catalan at 2n = {}", 2 * n)
            })
        })
    });
    r.check("partitions.noncrossing_iff_singleton_blocks", {
        let mut out = Ok(());
        for n in (2..=8u32).step_by(2) {
            for v in PairPartition::enumerate(n) {
                if (v.crossings() == 0) != (v.n_blocks() == v.n_pairs()) {
                    out = Err(format!("{v}"));
                }
            }
        }
        out
    });
    r.check("partitions.rotation_preserves_statistics", {
        let mut out = Ok(());
        for n in (2..=8u32).step_by(2) {
            for v in PairPartition::enumerate(n) {
                let rot = v.rotate().expect("nonempty");
                if rot.crossings() != v.crossings() || rot.n_blocks() != v.n_blocks() {
                    out = Err(format!("{v}"));
                }
            }
        }
        out
    });
    r.check("partitions.literal_roundtrip", {
        let mut out = Ok(());
        for n in (0..=8u32).step_by(2) {
            for v in PairPartition::enumerate(n) {
                let again: Result<PairPartition, _> = v.to_string().parse();
                if again.as_ref().ok() != Some(&v) {
                    out = Err(format!("{v}"));
                }
            }
        }
        out
    });
}

fn semigroup_suite(r: &mut Runner) {
    let pool = Diagram::enumerate(1, 1, 1);
    r.check("semigroup.associativity", {
        let mut out = Ok(());
        for a in &pool {
            for b in &pool {
                for c in pool.iter().take(6) {
                    if a.multiply(b).multiply(c) != a.multiply(&b.multiply(c)) {
                        out = Err(format!("{a}, {b}, {c}"));
                    }
                }
            }
        }
        out
    });
    r.check("semigroup.involution_antihomomorphism", {
        let mut out = Ok(());
        for a in &pool {
            if a.involution().involution() != *a {
                out = Err(format!("{a}"));
            }
            for b in &pool {
                if a.multiply(b).involution() != b.involution().multiply(&a.involution()) {
                    out = Err(format!("{a}, {b}"));
                }
            }
        }
        out
    });
    r.check("semigroup.underline_commutes_with_involution", {
        let mut out = Ok(());
        for d in Diagram::enumerate(2, 0, 1) {
            if d.underline().involution() != d.involution().underline() {
                out = Err(format!("{d}"));
            }
        }
        out
    });
    r.check("semigroup.standard_form_roundtrip", {
        let mut out = Ok(());
        for n in [2u32, 4, 6, 8] {
            for v in PairPartition::enumerate(n) {
                let word = standard_form(&v);
                if word.evaluate().ok() != Some(Diagram::from_pair_partition(&v)) {
                    out = Err(format!("{v}"));
                }
            }
        }
        out
    });
}

fn weights_suite(r: &mut Runner) {
    let families: Vec<Weight> = vec![
        Weight::Bosonic,
        Weight::Free,
        Weight::Fermionic,
        Weight::block_q(Scalar::ratio(1, 2)).unwrap(),
        Weight::block_q(Scalar::ratio(-1, 2)).unwrap(),
        Weight::crossing_q(Scalar::ratio(1, 2)),
    ];
    for w in &families {
        r.check(&format!("weights.multiplicative[{w}]"), {
            let report = is_multiplicative_upto(w, 8);
            match report.counterexample {
                None => Ok(()),
                Some(ce) => Err(format!("{} into {} at {}", ce.inner, ce.outer, ce.gap)),
            }
        });
        r.check(&format!("weights.rotation_invariant[{w}]"), {
            let report = is_rotation_invariant_upto(w, 8);
            match report.counterexample {
                None => Ok(()),
                Some(ce) => Err(format!("{}", ce.partition)),
            }
        });
    }
    r.check("weights.block_family_endpoints", {
        let w1 = Weight::block_q(Scalar::one()).unwrap();
        let w0 = Weight::block_q(Scalar::zero()).unwrap();
        let mut out = Ok(());
        for n in (0..=8u32).step_by(2) {
            for v in PairPartition::enumerate(n) {
                if w1.evaluate(&v) != Weight::Bosonic.evaluate(&v)
                    || w0.evaluate(&v) != Weight::Free.evaluate(&v)
                {
                    out = Err(format!("{v}"));
                }
            }
        }
        out
    });
}

fn wick_suite(r: &mut Runner) {
    let family: Vec<_> = (0..=4u32)
        .flat_map(|n| enumerate_monomials(n, 2, 2))
        .collect();
    r.check("wick.mobius_roundtrip", {
        let mut out = Ok(());
        for m in &family {
            let forward = wick_from_moments(m);
            let mut back = WickExpression::zero(m.n_points());
            for (mono, coeff) in forward.terms() {
                back.add_scaled(&moments_from_wick(mono), coeff);
            }
            if back.terms().len() != 1 || back.coefficient(m) != Scalar::one() {
                out = Err(crate::parse::display_monomial(m));
            }
        }
        out
    });
    r.check("wick.inner_product_oracle", {
        let w = Weight::block_q(Scalar::ratio(1, 2)).unwrap();
        let mut out = Ok(());
        for (i, a) in family.iter().enumerate() {
            for b in family.iter().skip(i % 3).step_by(5) {
                if a.n_free() != b.n_free() {
                    continue;
                }
                let ea = wick_from_moments(a);
                let eb = wick_from_moments(b);
                let mut brute = Scalar::zero();
                for (ma, ca) in ea.terms() {
                    for (mb, cb) in eb.terms() {
                        brute += (ca * cb) * moment_inner_product(&w, ma, mb);
                    }
                }
                if wick_inner_product(&w, a, b) != brute {
                    out = Err(format!(
                        "{} vs {}",
                        crate::parse::display_monomial(a),
                        crate::parse::display_monomial(b)
                    ));
                }
            }
        }
        out
    });
    r.check("wick.gaussian_fock_gram_equality", {
        let w = Weight::Fermionic;
        let small: Vec<_> = enumerate_monomials(3, 2, 1);
        let palette = small.iter().map(|m| m.pairs().len()).max().unwrap_or(0);
        let gg = gaussian_gram(&w, &small);
        let patterns: Vec<_> = small.iter().map(|m| psi_pattern(m, 2, palette)).collect();
        match fock_gram(&w, &patterns) {
            Ok(fg) => {
                let mut out = Ok(());
                for i in 0..small.len() {
                    for j in 0..small.len() {
                        if gg.get(i, j) != fg.get(i, j) {
                            out = Err(format!("entry ({i},{j})"));
                        }
                    }
                }
                out
            }
            Err(e) => Err(e.to_string()),
        }
    });
}

fn gns_suite(r: &mut Runner) {
    let weights: Vec<Weight> = vec![
        Weight::Bosonic,
        Weight::Free,
        Weight::Fermionic,
        Weight::block_q(Scalar::ratio(1, 2)).unwrap(),
        Weight::block_q(Scalar::ratio(-1, 2)).unwrap(),
    ];
    for w in &weights {
        r.check(&format!("gns.sector_grams_psd[{w}]"), {
            let mut out = Ok(());
            for n in 0..=2usize {
                let model = gram_model(w, &w.to_string(), n, 2);
                if !model.certificate.is_psd() {
                    out = Err(format!("sector {n}"));
                }
            }
            out
        });
        r.check(&format!("gns.j_isometry[{w}]"), {
            let lower = gram_model(w, &w.to_string(), 0, 1);
            let upper = gram_model(w, &w.to_string(), 1, 1);
            match j_matrix(&lower, &upper) {
                Ok(j) => {
                    let defect = j_isometry_defect(&lower, &upper, &j);
                    ensure(defect.is_zero(), || format!("defect {defect}"))
                }
                Err(e) => Err(e.to_string()),
            }
        });
    }
    r.check("gns.toy_weight_not_positive", {
        let toy = Weight::crossing_q(Scalar::from_int(-2));
        let model = gram_model(&toy, "qcr:-2", 2, 1);
        ensure(!model.certificate.is_psd(), || {
            "toy certified PSD".to_string()
        })
    });
    r.check("gns.ldlt_agrees_with_float_spectrum", {
        let mut out = Ok(());
        for w in &weights {
            for n in 0..=2usize {
                let model = gram_model(w, &w.to_string(), n, 1);
                let eigs = symmetric_eigs(&model.gram, 1e-12).expect("tol > 0");
                let min = eigs.last().copied().unwrap_or(0.0);
                let exact = ldlt_psd_certificate(&model.gram).is_psd();
                if exact != (min > -1e-9) {
                    out = Err(format!("{w} sector {n}: exact {exact} vs min eig {min}"));
                }
            }
        }
        out
    });
    r.check("gns.theta_quadratic_identity", {
        let mut out = Ok(());
        for q in [Scalar::ratio(1, 2), Scalar::ratio(-1, 2)] {
            for n in [1usize, 2] {
                match theta_quadratic_identity(&q, n, 1) {
                    Ok(report) if report.holds() => {}
                    Ok(report) => {
                        out = Err(format!("q={q} n={n}: {:?}", report.counterexample));
                    }
                    Err(e) => out = Err(e.to_string()),
                }
            }
        }
        out
    });
    r.check("gns.theta_spectrum_bounded", {
        let w = Weight::block_q(Scalar::ratio(1, 2)).unwrap();
        match theta_matrix(&w, "q:1/2", 2, 1, 1e-9) {
            Ok((_, report)) => ensure(
                report.norm_perp <= 0.5 + 1e-9 && report.eig1_multiplicity == 1,
                || {
                    format!(
                        "norm_perp {} mult {}",
                        report.norm_perp, report.eig1_multiplicity
                    )
                },
            ),
            Err(e) => Err(e.to_string()),
        }
    });
    r.check("gns.operator_evaluation_of_standard_forms", {
        let w = Weight::block_q(Scalar::ratio(1, 2)).unwrap();
        match operator_tower(&w, "q:1/2", 3) {
            Ok(tower) => {
                let mut out = Ok(());
                for n in [2u32, 4, 6] {
                    for v in PairPartition::enumerate(n) {
                        let word = standard_form(&v);
                        if tower.evaluate_as_operators(&word).ok() != Some(w.evaluate(&v)) {
                            out = Err(format!("{v}"));
                        }
                    }
                }
                out
            }
            Err(e) => Err(e.to_string()),
        }
    });
}
