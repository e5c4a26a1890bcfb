//! The `paper-check` fixture suite: every worked example with a published
//! expected value, re-run and compared.

use num_bigint::BigInt;
use num_rational::BigRational;

use ramify_core::equivalence::Verdict;
use ramify_core::field::NumberField;
use ramify_core::invariants::{a_form, alpha, beta, nonresidue_unit};
use ramify_core::parse::parse_poly;
use ramify_core::place::Place;
use ramify_core::qform::{hasse_witt, jordan_decompose, PAdicForm};
use ramify_core::splitting::split_prime;
use ramify_core::symbols::{hilbert, valuation};
use ramify_core::trace::{trace_gram, verify_local_trace};
use ramify_core::{compare_fields, Isometry};

type CheckResult = Result<(), String>;

fn expect<T: PartialEq + std::fmt::Debug>(label: &str, got: T, want: T) -> CheckResult {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got:?}, want {want:?}"))
    }
}

fn field(s: &str) -> NumberField {
    NumberField::new(&parse_poly(s).expect("fixture parses")).expect("fixture is irreducible")
}

fn unit_conventions() -> CheckResult {
    expect("u_2", nonresidue_unit(&Place::finite(2)), BigInt::from(5))?;
    expect("u_-1", nonresidue_unit(&Place::Real), BigInt::from(-1))?;
    expect("u_7", nonresidue_unit(&Place::finite(7)), BigInt::from(3))
}

fn real_valuation() -> CheckResult {
    let v = valuation(&BigRational::from_integer(BigInt::from(-7)), &Place::Real)
        .map_err(|e| e.to_string())?;
    expect("v_-1(-7)", v, -1)
}

fn hilbert_two_five() -> CheckResult {
    let h = hilbert(
        &BigRational::from_integer(BigInt::from(2)),
        &BigRational::from_integer(BigInt::from(5)),
        &Place::finite(2),
    )
    .map_err(|e| e.to_string())?;
    expect("(2,5)_2", h, -1)
}

fn parse_octic() -> CheckResult {
    let p = parse_poly("x^8-3").map_err(|e| e.to_string())?;
    let mut want = [0i64; 9];
    want[0] = -3;
    want[8] = 1;
    expect(
        "coeffs(x^8-3)",
        p.coeffs().to_vec(),
        want.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(),
    )
}

fn septic_pair() -> CheckResult {
    let k = field("x^7 - 3x^6 + 4x^5 - 5x^4 + 3x^3 - x^2 - 2x + 1");
    let l = field("x^7 - x^5 - 2x^4 - 2x^3 + 2x^2 - x + 4");
    let want_disc = BigInt::from(2).pow(6) * BigInt::from(691).pow(2);
    expect("disc K", k.disc().clone(), want_disc.clone())?;
    expect("disc L", l.disc().clone(), want_disc)?;
    let p2 = Place::finite(2);
    expect(
        "alpha_2(K)",
        alpha(&k, &p2).map_err(|e| e.to_string())?,
        BigInt::from(100),
    )?;
    expect(
        "alpha_2(L)",
        alpha(&l, &p2).map_err(|e| e.to_string())?,
        BigInt::from(200),
    )?;
    let p691 = Place::finite(691);
    expect(
        "alpha_691(K)",
        alpha(&k, &p691).map_err(|e| e.to_string())?,
        BigInt::from(8),
    )?;
    expect(
        "alpha_691(L)",
        alpha(&l, &p691).map_err(|e| e.to_string())?,
        BigInt::from(8),
    )?;
    let report = compare_fields(&k, &l, 1000).map_err(|e| e.to_string())?;
    let places: Vec<String> = report
        .differences
        .iter()
        .map(|d| d.place.to_string())
        .collect();
    expect("differing places", places, vec!["2".to_string()])?;
    expect("verdict", report.verdict, Verdict::ConsistentUpTo(1000))
}

fn octic_pair() -> CheckResult {
    let k = field("x^8-3");
    let l = field("x^8-48");
    for p in [2i64, 3] {
        let place = Place::finite(p);
        for (name, f) in [("x^8-3", &k), ("x^8-48", &l)] {
            let st = split_prime(f, &place).map_err(|e| e.to_string())?;
            expect(
                &format!("{name} at {p}"),
                st.pairs().to_vec(),
                vec![(8u32, 1u32)],
            )?;
            expect(
                &format!("alpha_{p}({name})"),
                ramify_core::invariants::alpha_of(&st),
                BigInt::from(8),
            )?;
        }
    }
    let report = compare_fields(&k, &l, 1000).map_err(|e| e.to_string())?;
    expect("differing places", report.differences.len(), 0)?;
    expect("verdict", report.verdict, Verdict::ConsistentUpTo(1000))
}

fn real_place_invariants() -> CheckResult {
    let f = field("x^2+1");
    expect(
        "alpha_-1",
        alpha(&f, &Place::Real).map_err(|e| e.to_string())?,
        BigInt::from(2),
    )?;
    expect(
        "beta_-1",
        beta(&f, &Place::Real).map_err(|e| e.to_string())?,
        BigInt::from(2),
    )?;
    let st = split_prime(&f, &Place::Real).map_err(|e| e.to_string())?;
    let (r, s) = f.signature();
    expect("f_-1 = r + s", st.f_sum() as usize, r + s)
}

fn unramified_beta() -> CheckResult {
    let f = field("x^2+1");
    expect(
        "beta_3",
        beta(&f, &Place::finite(3)).map_err(|e| e.to_string())?,
        BigInt::from(1),
    )
}

fn aform_octic() -> CheckResult {
    let f = field("x^8-3");
    let a = a_form(&f, &Place::finite(3)).map_err(|e| e.to_string())?;
    expect("a_3(x^8-3)", a.to_string(), "<8>".to_string())?;
    expect("det", a.det(), BigInt::from(8))
}

fn unramified_two_adic_hasse() -> CheckResult {
    for f_deg in 1u32..=4 {
        let entries: Vec<BigInt> = if f_deg == 1 {
            vec![BigInt::from(1)]
        } else {
            let mut v = vec![BigInt::from(1); (f_deg - 2) as usize];
            v.push(BigInt::from(-1).pow(f_deg - 1));
            v.push(BigInt::from(-5).pow(f_deg - 1));
            v
        };
        let form =
            PAdicForm::unimodular_diag(&Place::finite(2), &entries).map_err(|e| e.to_string())?;
        let want = if (f_deg - 1) % 2 == 0 { 1 } else { -1 };
        expect(
            &format!("Hasse-Witt at f = {f_deg}"),
            hasse_witt(&form).map_err(|e| e.to_string())?,
            want,
        )?;
    }
    Ok(())
}

fn taussky_signature() -> CheckResult {
    for s in ["x^2+1", "x^3-3", "x^8-3"] {
        let f = field(s);
        let (r, c) = f.signature();
        let form = jordan_decompose(&trace_gram(&f), &Place::Real).map_err(|e| e.to_string())?;
        expect(
            &format!("signature of trace({s})"),
            form.signature(),
            Some((r + c, c)),
        )?;
    }
    Ok(())
}

fn tame_disc_valuation() -> CheckResult {
    let f = field("x^8-3");
    let st = split_prime(&f, &Place::finite(3)).map_err(|e| e.to_string())?;
    let v = ramify_core::arith::int_valuation(f.disc(), &BigInt::from(3));
    expect(
        "v_3(disc) = n - f_3",
        v,
        (f.degree() as u32 - st.f_sum()) as u64,
    )
}

fn hasse_disc_formula() -> CheckResult {
    let f = field("x^2+1");
    for p in [3i64, 5, 7, 13] {
        let place = Place::finite(p);
        let st = split_prime(&f, &place).map_err(|e| e.to_string())?;
        if !st.is_unramified() {
            continue;
        }
        let lhs = ramify_core::symbols::legendre(f.disc(), &BigInt::from(p))
            .map_err(|e| e.to_string())?;
        let rhs = if (f.degree() - st.num_primes()) % 2 == 0 {
            1
        } else {
            -1
        };
        expect(&format!("(disc/{p})"), lhs, rhs)?;
    }
    Ok(())
}

fn golden_quadratic_trace() -> CheckResult {
    let f = field("x^2-5");
    let v = verify_local_trace(&f, &BigInt::from(5)).map_err(|e| e.to_string())?;
    expect(
        "predicted",
        v.predicted.to_string(),
        "<2> + 5*<2>".to_string(),
    )?;
    expect("match", v.matched, Isometry::Isometric)
}

/// Run all fixture checks, printing one pass/fail line per case (or a JSON
/// summary); returns overall success.
pub fn run_paper_checks(json: bool) -> bool {
    let cases: Vec<(&str, fn() -> CheckResult)> = vec![
        ("unit-conventions", unit_conventions),
        ("real-valuation", real_valuation),
        ("hilbert-2-5-at-2", hilbert_two_five),
        ("parse-x8-minus-3", parse_octic),
        ("septic-pair-alpha-and-compare", septic_pair),
        ("octic-pair-alpha-and-compare", octic_pair),
        ("real-place-invariants", real_place_invariants),
        ("unramified-beta-is-one", unramified_beta),
        ("aform-octic-at-3", aform_octic),
        ("unramified-two-adic-hasse", unramified_two_adic_hasse),
        ("trace-signature-at-real-place", taussky_signature),
        ("tame-disc-valuation", tame_disc_valuation),
        ("hasse-disc-formula", hasse_disc_formula),
        ("golden-quadratic-trace", golden_quadratic_trace),
    ];
    let mut all_pass = true;
    let mut entries = Vec::new();
    for (name, f) in cases {
        let outcome = f();
        all_pass &= outcome.is_ok();
        if json {
            entries.push(match &outcome {
                Ok(()) => serde_json::json!({"name": name, "pass": true}),
                Err(d) => serde_json::json!({"name": name, "pass": false, "detail": d}),
            });
        } else {
            match outcome {
                Ok(()) => println!("[PASS] {name}"),
                Err(d) => println!("[FAIL] {name}: {d}"),
            }
        }
    }
    if json {
        println!(
            "{}",
            serde_json::json!({"cases": entries, "all_pass": all_pass})
        );
    } else {
        println!(
            "{}",
            if all_pass {
                "all checks passed"
            } else {
                "CHECKS FAILED"
            }
        );
    }
    all_pass
}
