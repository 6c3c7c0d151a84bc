//! Verification suites: seeded property checks and exhaustive small-instance
//! oracles, one suite per group of invariants.

mod algebra;
mod filtered;
mod points;
mod structure;

use std::collections::BTreeMap;
use std::thread;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use wittforge_core::structure::ENUMERATION_LIMIT;

use crate::{Error, Result};

/// Limits shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    /// Multiplier applied to every random case count.
    pub cases: f64,
    /// Cap on enumerated ring elements.
    pub enumeration: usize,
    /// Cap on sign patterns in the non-freeness search.
    pub search: u64,
    /// Radius of the character box for de Rham computations.
    pub char_box: i64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { cases: 1.0, enumeration: ENUMERATION_LIMIT, search: 1 << 16, char_box: 1 }
    }
}

impl Budget {
    pub fn scaled(&self, n: usize) -> usize {
        ((n as f64 * self.cases).ceil() as usize).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub check: String,
    pub counterexample: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: u64,
    pub failures: Vec<Failure>,
    /// Milliseconds; only filled in on request since it breaks
    /// byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Failures beyond this many per suite are counted but not stored.
const MAX_STORED_FAILURES: usize = 20;

pub struct Runner {
    seed: u64,
    cases: u64,
    failures: Vec<Failure>,
    dropped: u64,
}

impl Runner {
    fn new(seed: u64) -> Runner {
        Runner { seed, cases: 0, failures: Vec::new(), dropped: 0 }
    }

    /// An independent stream per tag, so adding a check never perturbs
    /// the samples seen by another.
    pub fn rng(&self, tag: &str) -> ChaCha8Rng {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in tag.bytes() {
            h = (h ^ u64::from(b)).wrapping_mul(0x100000001b3);
        }
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    pub fn check(&mut self, name: &str, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.fail(name, counterexample());
        }
    }

    /// Errors count as failures, with the message as the counterexample.
    pub fn check_result(&mut self, name: &str, r: wittforge_core::Result<bool>, counterexample: impl FnOnce() -> Value) {
        match r {
            Ok(ok) => self.check(name, ok, counterexample),
            Err(e) => {
                self.cases += 1;
                let ce = counterexample();
                self.fail(name, json!({ "error": e.to_string(), "input": ce }));
            }
        }
    }

    fn fail(&mut self, name: &str, counterexample: Value) {
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(Failure { check: name.to_string(), counterexample });
        } else {
            self.dropped += 1;
        }
    }
}

/// `FnMut() -> u64` view of a generator, as the core samplers expect.
pub fn stream(rng: &mut ChaCha8Rng) -> impl FnMut() -> u64 + '_ {
    move || rng.next_u64()
}

type SuiteFn = fn(&mut Runner, &Budget) -> wittforge_core::Result<()>;

pub struct SuiteInfo {
    pub id: &'static str,
    pub covers: &'static [(&'static str, &'static str)],
    run: SuiteFn,
}

/// Sorted by id.
pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        id: "annihilator-equivalence",
        covers: &[("witt_struct", "W[F] membership agrees with both annihilator descriptions")],
        run: structure::annihilator_equivalence,
    },
    SuiteInfo {
        id: "cli-determinism",
        covers: &[
            ("cli", "identical seed gives identical report"),
            ("cli", "every module invariant is reachable from a suite"),
        ],
        run: cli_determinism,
    },
    SuiteInfo {
        id: "cone-laws",
        covers: &[
            ("cone", "commutativity of cone levels iff the quasi-ideal law"),
            ("cone", "associativity at levels 2 and 3"),
            ("cone", "groupoid composition closes"),
            ("cone", "pi0 cardinality consistency; trivial isotropy and pi0 = R/I for injective d"),
        ],
        run: filtered::cone_laws,
    },
    SuiteInfo {
        id: "derham",
        covers: &[
            ("derham", "d∘d = 0 and slice dimensions are binomial"),
            ("derham", "enlarging the character box leaves H^* unchanged"),
            ("derham", "Künneth for a ≤ 3, b ≤ 2"),
            ("derham", "Euler characteristic"),
            ("derham", "Hodge filtration pattern for a+b ≤ 4"),
            ("derham", "H^0 is Q in filtration degree 0"),
        ],
        run: filtered::derham,
    },
    SuiteInfo {
        id: "hodge-tate-equivalences",
        covers: &[
            ("witt_struct", "Hodge-Tate predicate, V(unit) search and kernel test agree"),
            ("witt_struct", "distinguished predicate agrees with [x]+V(w) search"),
        ],
        run: structure::hodge_tate_equivalences,
    },
    SuiteInfo {
        id: "iadic-gr",
        covers: &[("rees_filtration", "I-adic gr ranks equal Sym ranks of the Kähler module")],
        run: filtered::iadic_gr,
    },
    SuiteInfo {
        id: "local-decomposition",
        covers: &[("witt_struct", "local decomposition is a ring isomorphism, natural in the ring")],
        run: structure::local_decomposition,
    },
    SuiteInfo {
        id: "nonfree-obstruction",
        covers: &[("witt_struct", "non-freeness obstruction certificate for div(10)")],
        run: structure::nonfree_obstruction,
    },
    SuiteInfo {
        id: "prismatic-points",
        covers: &[
            ("prismatic_points", "pi0 maps to R/(ξ_1) are surjective with nilpotent kernels"),
            ("prismatic_points", "unit scaling of ξ preserves the point groupoid"),
            ("prismatic_points", "groupoid axioms"),
            ("prismatic_points", "Hom counts constant on components for free B"),
        ],
        run: points::prismatic_points,
    },
    SuiteInfo {
        id: "rees-dictionary",
        covers: &[
            ("rees_filtration", "Rees round trips"),
            ("rees_filtration", "Day convolution is unital, commutative and associative"),
            ("rees_filtration", "twist by n is a degree shift by -n"),
        ],
        run: filtered::rees_dictionary,
    },
    SuiteInfo {
        id: "ring-axioms",
        covers: &[
            ("ring_core", "normalization is idempotent"),
            ("ring_core", "ring axioms on random triples"),
            ("ring_core", "unit witnesses invert"),
            ("ring_core", "nilpotency witnesses are minimal"),
        ],
        run: algebra::ring_axioms,
    },
    SuiteInfo {
        id: "universal-integrality",
        covers: &[
            ("witt_core", "universal polynomial generation never divides inexactly"),
            ("witt_core", "ghost compatibility of the generated polynomials"),
        ],
        run: algebra::universal_integrality,
    },
    SuiteInfo {
        id: "v-one",
        covers: &[
            ("witt_struct", "V_E(1) lands in VW and is linear"),
            ("witt_struct", "kernel of V_E(1) matches its factor description"),
        ],
        run: structure::v_one,
    },
    SuiteInfo {
        id: "witt-operators",
        covers: &[("witt_core", "F_n ring hom, F_mF_n = F_mn, F_pV_p = p, projection formula, V additive, Teichmüller multiplicative")],
        run: algebra::witt_operators,
    },
    SuiteInfo {
        id: "witt-ring-axioms",
        covers: &[
            ("witt_core", "ring axioms of W_E(R)"),
            ("witt_core", "ghost map is a ring homomorphism"),
            ("witt_core", "functoriality in the base ring"),
            ("witt_core", "unghost and ghost are inverse"),
        ],
        run: algebra::witt_ring_axioms,
    },
    SuiteInfo {
        id: "witt-units",
        covers: &[("witt_struct", "unit test agrees with brute-force inverse search")],
        run: structure::witt_units,
    },
];

pub fn find(id: &str) -> Result<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownSuite(id.to_string()))
}

pub fn run_suite(id: &str, seed: u64, budget: &Budget) -> Result<SuiteReport> {
    let info = find(id)?;
    Ok(run_info(info, seed, budget))
}

fn run_info(info: &SuiteInfo, seed: u64, budget: &Budget) -> SuiteReport {
    let mut runner = Runner::new(seed);
    if let Err(e) = (info.run)(&mut runner, budget) {
        runner.cases += 1;
        runner.fail("suite aborted", json!({ "error": e.to_string() }));
    }
    if runner.dropped > 0 {
        let dropped = runner.dropped;
        runner.failures.push(Failure { check: "further failures omitted".into(), counterexample: json!(dropped) });
    }
    SuiteReport { suite: info.id.to_string(), seed, cases: runner.cases, failures: runner.failures, wall_time_ms: None }
}

/// Runs every suite concurrently; reports come back ordered by id.
pub fn run_all(seed: u64, budget: &Budget) -> Vec<SuiteReport> {
    thread::scope(|s| {
        let handles: Vec<_> = SUITES.iter().map(|info| s.spawn(move || run_info(info, seed, budget))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

/// Runs one suite with its wall time recorded.
pub fn run_timed(id: &str, seed: u64, budget: &Budget) -> Result<SuiteReport> {
    let info = find(id)?;
    let start = std::time::Instant::now();
    let mut r = run_info(info, seed, budget);
    r.wall_time_ms = Some(start.elapsed().as_millis());
    Ok(r)
}

pub const MODULES: &[&str] =
    &["ring_core", "witt_core", "witt_struct", "cone", "rees_filtration", "derham", "prismatic_points", "cli"];

/// `{module: {invariant: [suite ids]}}`.
pub fn coverage() -> Value {
    let mut map: BTreeMap<&str, BTreeMap<&str, Vec<&str>>> = BTreeMap::new();
    for info in SUITES {
        for (module, invariant) in info.covers {
            map.entry(module).or_default().entry(invariant).or_default().push(info.id);
        }
    }
    let ordered: serde_json::Map<String, Value> =
        MODULES.iter().map(|m| (m.to_string(), json!(map.get(m).cloned().unwrap_or_default()))).collect();
    Value::Object(ordered)
}

fn cli_determinism(r: &mut Runner, budget: &Budget) -> wittforge_core::Result<()> {
    for id in ["witt-operators", "cone-laws"] {
        let a = serde_json::to_string(&run_info(find(id).unwrap(), r.seed, budget)).unwrap();
        let b = serde_json::to_string(&run_info(find(id).unwrap(), r.seed, budget)).unwrap();
        r.check("same seed, same report", a == b, || json!({ "suite": id }));
    }
    let cov = coverage();
    for m in MODULES {
        let covered = cov[m].as_object().is_some_and(|o| !o.is_empty());
        r.check("module covered by a suite", covered, || json!({ "module": m }));
    }
    Ok(())
}
