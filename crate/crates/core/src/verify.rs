//! Seeded property suites behind `dequantlab verify`.
//!
//! Each suite checks a family of identities on randomly generated inputs and
//! records, per property, how many trials passed and the first failure.

use std::f64::consts::LN_2;
use std::fmt;

use rand::Rng;

use crate::circuit::{analyze_dil_with, count_conjunctions, AnalysisOptions};
use crate::entropy::{
    binary_entropy, nc_conjunction_entropy, pi_traced_entropy, projector_entropy, projector_phase_fraction,
    von_neumann_entropy, ConjunctionStep, DensityMatrix,
};
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::projector::{
    commuting_conjunction, direct_product_power, implies, intersection_oracle, nc_conjunction_with, negate,
    product_power_closed_form, semiclassical_convergence, verify_conjunction_theorem, ConjunctionOptions, Projector,
    SemiclassicalFamily,
};
use crate::random::{random_circuit, random_pair, random_state, random_unitary, seeded, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Conjunction,
    Power,
    Limit,
    Entropy,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Conjunction, Suite::Power, Suite::Limit, Suite::Entropy];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Conjunction => "conjunction",
            Suite::Power => "power",
            Suite::Limit => "limit",
            Suite::Entropy => "entropy",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn run(self, seed: u64) -> Result<SuiteReport> {
        let mut rng = seeded(seed);
        let mut report = SuiteReport { suite: self, properties: Vec::new() };
        match self {
            Suite::Conjunction => conjunction_suite(&mut rng, &mut report)?,
            Suite::Power => power_suite(&mut rng, &mut report)?,
            Suite::Limit => limit_suite(&mut report)?,
            Suite::Entropy => entropy_suite(&mut rng, &mut report)?,
        }
        Ok(report)
    }
}

#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.properties.iter().all(PropertyResult::ok)
    }

    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.properties.iter().find_map(|p| p.first_failure.as_deref().map(|f| (p.name.as_str(), f)))
    }

    fn property(&mut self, name: &str) -> &mut PropertyResult {
        if let Some(i) = self.properties.iter().position(|p| p.name == name) {
            return &mut self.properties[i];
        }
        self.properties.push(PropertyResult { name: name.to_string(), passed: 0, total: 0, first_failure: None });
        self.properties.last_mut().expect("just pushed")
    }

    fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let p = self.property(name);
        p.total += 1;
        if ok {
            p.passed += 1;
        } else if p.first_failure.is_none() {
            p.first_failure = Some(detail());
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            writeln!(
                f,
                "[{}] {}/{}: {} {}",
                if p.ok() { "pass" } else { "FAIL" },
                p.passed,
                p.total,
                self.suite.name(),
                p.name
            )?;
        }
        Ok(())
    }
}

pub const CONJUNCTION_TRIALS: usize = 200;
pub const POWER_TRIALS: usize = 100;
pub const THEOREM_TRIALS: usize = 100;
pub const CIRCUIT_TRIALS: usize = 100;
pub const THETA_GRID: [f64; 5] = [0.4, 0.2, 0.1, 0.05, 0.01];

fn describe_pair(p: &Projector, q: &Projector) -> String {
    format!("dim {} ranks ({}, {})", p.dim(), p.rank(), q.rank())
}

fn conjunction_suite(rng: &mut SeededRng, report: &mut SuiteReport) -> Result<()> {
    for _ in 0..CONJUNCTION_TRIALS {
        let d = rng.random_range(2..=16);
        let (p, q) = random_pair(d, rng);
        let meet = nc_conjunction_with(&p, &q, ConjunctionOptions::default())?;
        let oracle = intersection_oracle(&p, &q)?;
        let err = meet.projector.distance(&oracle);
        report.record("meet equals intersection oracle (1e-8)", err <= 1e-8, || {
            format!("{}: |meet - oracle|_F = {err:e}", describe_pair(&p, &q))
        });
        report.record("converges within 60 squarings", meet.squarings <= 60, || {
            format!("{}: {} squarings", describe_pair(&p, &q), meet.squarings)
        });
        let swapped = nc_conjunction_with(&q, &p, ConjunctionOptions::default())?;
        let sym = swapped.projector.distance(&meet.projector);
        report.record("meet is symmetric (1e-8)", sym <= 1e-8, || {
            format!("{}: |P∧Q - Q∧P|_F = {sym:e}", describe_pair(&p, &q))
        });
        let below = implies(&meet.projector, &p)? && implies(&meet.projector, &q)?;
        report.record("meet implies both operands", below, || describe_pair(&p, &q));
    }
    for _ in 0..THEOREM_TRIALS {
        let d = rng.random_range(2..=16);
        let (p, q) = random_pair(d, rng);
        for k in [1, 2, 5] {
            let check = verify_conjunction_theorem(&p, &q, k)?;
            report.record("conjunction theorem, k in {1,2,5}", check.holds(), || {
                format!("{} k={k}: {check:?}", describe_pair(&p, &q))
            });
        }
    }
    Ok(())
}

fn power_suite(rng: &mut SeededRng, report: &mut SuiteReport) -> Result<()> {
    for _ in 0..POWER_TRIALS {
        let d = rng.random_range(2..=8);
        let (p, q) = random_pair(d, rng);
        for n in 1..=8u32 {
            let (closed, _) = product_power_closed_form(&p, &q, n)?;
            let direct = direct_product_power(&p, &q, n)?;
            let err = closed.distance(&direct);
            let name = format!("closed form equals (PQ)^n, n = {n} (1e-9·n)");
            report.record(&name, err <= 1e-9 * n as f64, || format!("{}: residual {err:e}", describe_pair(&p, &q)));
        }
    }
    Ok(())
}

fn limit_suite(report: &mut SuiteReport) -> Result<()> {
    for n in [1u32, 2, 4] {
        let mut last = f64::INFINITY;
        for theta in THETA_GRID {
            let v = semiclassical_convergence(&SemiclassicalFamily::new(theta)?, n)?;
            report.record("strictly decreasing as θ shrinks", v < last, || format!("n={n} θ={theta}: {v} ≥ {last}"));
            report.record("bounded by 3θ", v <= 3.0 * theta, || format!("n={n} θ={theta}: {v}"));
            last = v;
        }
    }
    Ok(())
}

fn entropy_suite(rng: &mut SeededRng, report: &mut SuiteReport) -> Result<()> {
    for _ in 0..50 {
        let d = rng.random_range(2..=16);
        let s = random_state(d, rng);
        let h = von_neumann_entropy(&DensityMatrix::pure(&s))?;
        report.record("H_Q(pure) = 0", h == 0.0, || format!("dim {d}: {h:e}"));

        let u = random_unitary(d, rng);
        let weights: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
        let total: f64 = weights.iter().sum();
        let rho = ComplexMatrix::from_real_diag(&weights.iter().map(|w| w / total).collect::<Vec<_>>());
        let rotated = (&(&u * &rho) * &u.adjoint()).hermitian_part();
        let (h0, h1) =
            (von_neumann_entropy(&DensityMatrix::new(rho)?)?, von_neumann_entropy(&DensityMatrix::new(rotated)?)?);
        report.record("H_Q unitarily invariant (1e-9)", (h0 - h1).abs() <= 1e-9, || format!("{h0} vs {h1}"));
    }

    for i in 0..=1000 {
        let phi = i as f64 / 1000.0;
        let h = binary_entropy(phi)?;
        report.record("H_C(φ) ≤ ln 2", h <= LN_2 + 1e-12, || format!("φ={phi}: {h}"));
    }

    for _ in 0..100 {
        let d = rng.random_range(2..=12);
        let (p, q) = random_pair(d, rng);
        let hp = projector_entropy(&p);
        let hn = projector_entropy(&negate(&p));
        report.record("negation invariance (exact)", hp == hn, || format!("{hp} vs {hn}"));

        let step = ConjunctionStep::new(p.clone(), q.clone())?;
        let s = random_state(d, rng);
        let ln_dim = (step.commutator.dim_pi as f64).ln();
        let ht = pi_traced_entropy(&s, &step.commutator)?;
        report.record("H_Q(ρ_Π) ≤ ln dim Π", ht <= ln_dim + 1e-12, || format!("{}: {ht}", describe_pair(&p, &q)));
        let hc = nc_conjunction_entropy(&s, &step)?;
        report.record("conjunction entropy ≤ ln dim Π + ln 2", hc <= ln_dim + LN_2 + 1e-12, || {
            format!("{}: {hc}", describe_pair(&p, &q))
        });

        // P ≤ Q by nesting frames of one unitary
        let u = random_unitary(d, rng);
        let r2 = rng.random_range(0..=d);
        let r1 = rng.random_range(0..=r2);
        let cols = |r: usize| (0..r).map(|j| u.column(j)).collect::<Vec<_>>();
        let small = Projector::from_frame(d, &cols(r1))?;
        let large = Projector::from_frame(d, &cols(r2))?;
        let meet = crate::projector::nc_conjunction(&small, &large)?;
        let ok = implies(&small, &large)? && projector_entropy(&meet) == projector_entropy(&small);
        report.record("implication keeps entropy (exact)", ok, || format!("dim {d} ranks ({r1}, {r2})"));

        // diagonal commuting pair
        let a: Vec<f64> = (0..d).map(|_| if rng.random::<bool>() { 1.0 } else { 0.0 }).collect();
        let b: Vec<f64> = (0..d).map(|_| if rng.random::<bool>() { 1.0 } else { 0.0 }).collect();
        let pa = Projector::new(ComplexMatrix::from_real_diag(&a))?;
        let pb = Projector::new(ComplexMatrix::from_real_diag(&b))?;
        let meet = commuting_conjunction(&pa, &pb)?;
        let lhs = binary_entropy(projector_phase_fraction(&meet))?;
        let rhs = binary_entropy(projector_phase_fraction(&pa))? + binary_entropy(projector_phase_fraction(&pb))?;
        report.record("commuting conjunction subadditive", lhs <= rhs + 1e-12, || format!("{lhs} > {rhs}"));
    }

    let opts = AnalysisOptions::default();
    let mut done = 0;
    while done < CIRCUIT_TRIALS {
        let n = rng.random_range(1..=5);
        let len = rng.random_range(1..=6);
        let circuit = random_circuit(n, len, rng);
        let counts = count_conjunctions(&circuit);
        if counts.non_commuting() > opts.dil.max_branching_steps as f64 {
            continue;
        }
        let s = random_state(1 << n, rng);
        let r = analyze_dil_with(&circuit, Some(&s), opts)?;
        let exact = r.dil_exact_nats.expect("exact mode");
        report.record("register DIL ≤ upper bound", exact <= r.dil_upper_bound_nats + 1e-9, || {
            format!("{}\nexact {exact} bound {}", circuit.to_text(), r.dil_upper_bound_nats)
        });
        done += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_suite_passes() {
        let r = Suite::Limit.run(0).unwrap();
        assert!(r.ok(), "{r}");
        assert_eq!(r.properties.iter().map(|p| p.total).sum::<usize>(), 30);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }
}
