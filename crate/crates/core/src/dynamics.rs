//! Moore machines as lenses `⟨S|S⟩ → ⟨B|A⟩`, wiring by lens composition,
//! parallel composition, and trace simulation.
//!
//! The output interface comes first: `get` is the readout `S → B` and `put`
//! is the update precomposed with the symmetry `S × A ≅ A × S`.

use serde::{Deserialize, Serialize};

use crate::catkit::LawReport;
use crate::error::{Error, Result};
use crate::finset::{hom_count, product, product_map, symmetry, FinFn};
use crate::instances::{ClassicLensMor, ClassicLensOb};
use crate::limit::Limit;

/// States `S`, inputs `A`, outputs `B`, `readout: S → B`, `update: A × S → S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMachine", into = "RawMachine")]
pub struct MooreMachine {
    states: usize,
    inputs: usize,
    outputs: usize,
    readout: FinFn,
    update: FinFn,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMachine {
    states: usize,
    inputs: usize,
    outputs: usize,
    readout: Vec<usize>,
    update: Vec<usize>,
}

impl TryFrom<RawMachine> for MooreMachine {
    type Error = Error;

    fn try_from(raw: RawMachine) -> Result<Self> {
        MooreMachine::new(
            FinFn::new(raw.states, raw.outputs, raw.readout)?,
            FinFn::new(raw.inputs * raw.states, raw.states, raw.update)?,
            raw.inputs,
        )
    }
}

impl From<MooreMachine> for RawMachine {
    fn from(m: MooreMachine) -> Self {
        RawMachine {
            states: m.states,
            inputs: m.inputs,
            outputs: m.outputs,
            readout: m.readout.table().to_vec(),
            update: m.update.table().to_vec(),
        }
    }
}

/// One run: `outputs[k]` is observed before `inputs[k]` is consumed, so
/// there is one more output than inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub initial: usize,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    #[serde(rename = "final")]
    pub final_state: usize,
}

impl MooreMachine {
    /// `inputs` is needed separately because `update`'s domain only fixes
    /// `A × S` when `S > 0`.
    pub fn new(readout: FinFn, update: FinFn, inputs: usize) -> Result<Self> {
        let states = readout.dom();
        if update.dom() != inputs * states || update.cod() != states {
            return Err(Error::MalformedData(format!(
                "update must be a map {inputs} × {states} → {states}"
            )));
        }
        Ok(Self {
            states,
            inputs,
            outputs: readout.cod(),
            readout,
            update,
        })
    }

    /// Builds the update table from a closure `(a, s) ↦ s'`.
    pub fn from_fns(
        states: usize,
        inputs: usize,
        outputs: usize,
        readout: impl FnMut(usize) -> usize,
        mut update: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let p = product(inputs, states);
        let update = FinFn::from_fn(p.size(), states, |k| {
            let (a, s) = p.unpair(k);
            update(a, s)
        })?;
        Self::new(FinFn::from_fn(states, outputs, readout)?, update, inputs)
    }

    /// Two states, input and output bits, readout the state, update xor.
    pub fn toggle() -> Self {
        Self::from_fns(2, 2, 2, |s| s, |a, s| a ^ s).expect("toggle is well formed")
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn readout(&self) -> &FinFn {
        &self.readout
    }

    pub fn update(&self) -> &FinFn {
        &self.update
    }

    /// The interface `⟨B|A⟩`.
    pub fn interface(&self) -> ClassicLensOb {
        ClassicLensOb::new(self.outputs, self.inputs)
    }

    /// `(readout(s), update(a, s))`.
    pub fn step(&self, s: usize, a: usize) -> Result<(usize, usize)> {
        check_index("state", s, self.states)?;
        check_index("input", a, self.inputs)?;
        let p = product(self.inputs, self.states);
        Ok((self.readout.apply(s), self.update.apply(p.pair(a, s))))
    }

    pub fn run(&self, initial: usize, inputs: &[usize]) -> Result<Trace> {
        check_index("state", initial, self.states)?;
        let mut outputs = Vec::with_capacity(inputs.len() + 1);
        let mut s = initial;
        for &a in inputs {
            let (b, next) = self.step(s, a)?;
            outputs.push(b);
            s = next;
        }
        outputs.push(self.readout.apply(s));
        Ok(Trace {
            initial,
            inputs: inputs.to_vec(),
            outputs,
            final_state: s,
        })
    }
}

fn check_index(what: &'static str, index: usize, size: usize) -> Result<()> {
    if index >= size {
        return Err(Error::IndexOutOfRange { what, index, size });
    }
    Ok(())
}

/// `⟨readout | σ_{S,A} ⨟ update⟩: ⟨S|S⟩ → ⟨B|A⟩`.
pub fn machine_to_lens(m: &MooreMachine) -> ClassicLensMor {
    let put = symmetry(m.states, m.inputs)
        .compose(&m.update)
        .expect("shapes agree by construction");
    ClassicLensMor {
        source: ClassicLensOb::new(m.states, m.states),
        target: m.interface(),
        get: m.readout.clone(),
        put,
    }
}

/// Inverse of [`machine_to_lens`]; the source must be of the form `⟨S|S⟩`.
pub fn lens_to_machine(lens: &ClassicLensMor) -> Result<MooreMachine> {
    lens.validate()?;
    let s = lens.source;
    if s.c != s.x {
        return Err(Error::InterfaceMismatch(format!(
            "a machine lens starts at ⟨S|S⟩, not ⟨{}|{}⟩",
            s.c, s.x
        )));
    }
    let a = lens.target.x;
    let update = symmetry(a, s.c).compose(&lens.put)?;
    MooreMachine::new(lens.get.clone(), update, a)
}

/// Runs both machines side by side on paired inputs.
pub fn tensor_machines(m1: &MooreMachine, m2: &MooreMachine) -> MooreMachine {
    let id = FinFn::identity;
    // (A1 × A2) × (S1 × S2) → (A1 × S1) × (A2 × S2)
    let shuffle = product_map(
        &id(m1.inputs),
        &product_map(&symmetry(m2.inputs, m1.states), &id(m2.states)),
    );
    let update = shuffle
        .compose(&product_map(&m1.update, &m2.update))
        .expect("shapes agree by construction");
    MooreMachine::new(
        product_map(&m1.readout, &m2.readout),
        update,
        m1.inputs * m2.inputs,
    )
    .expect("shapes agree by construction")
}

/// `lens_to_machine(machine_to_lens(m) ⨟ w)`.
pub fn wire(m: &MooreMachine, w: &ClassicLensMor) -> Result<MooreMachine> {
    if w.source != m.interface() {
        return Err(Error::InterfaceMismatch(format!(
            "wiring expects interface {} but the machine has {}",
            w.source,
            m.interface()
        )));
    }
    lens_to_machine(&machine_to_lens(m).compose(w)?)
}

/// The wiring `⟨B|A⟩ → ⟨1|1⟩` that feeds `route(b)` back as the input.
pub fn feedback(m: &MooreMachine, route: &FinFn) -> Result<ClassicLensMor> {
    if route.dom() != m.outputs || route.cod() != m.inputs {
        return Err(Error::InterfaceMismatch(format!(
            "feedback route must be a map {} → {}",
            m.outputs, m.inputs
        )));
    }
    ClassicLensMor::new(
        m.interface(),
        ClassicLensOb::new(1, 1),
        crate::finset::terminal(m.outputs),
        route.clone(),
    )
}

/// The wiring `⟨B|A⟩ → ⟨B'|A⟩` that relabels outputs and passes inputs through.
pub fn relabel(m: &MooreMachine, r: &FinFn) -> Result<ClassicLensMor> {
    ClassicLensMor::new(
        m.interface(),
        ClassicLensOb::new(r.cod(), m.inputs),
        r.clone(),
        product(r.dom(), m.inputs).proj2(),
    )
}

/// Simulates through lens composition only: each step composes the machine
/// lens with the wiring that supplies the constant input `a`, reads the
/// output through a point `⟨1|1⟩ → ⟨S|S⟩`, and takes the next state from the
/// composite's put.
pub fn run_via_lenses(m: &MooreMachine, initial: usize, inputs: &[usize]) -> Result<Trace> {
    check_index("state", initial, m.states)?;
    let lens = machine_to_lens(m);
    let one = ClassicLensOb::new(1, 1);
    let point = |s: usize| -> Result<ClassicLensMor> {
        ClassicLensMor::new(
            one,
            lens.source,
            FinFn::constant(1, m.states, s)?,
            FinFn::constant(m.states, 1, 0)?,
        )
    };
    let observe = |s: usize| -> Result<usize> {
        let seen = point(s)?.compose(&lens)?;
        Ok(seen.get.apply(0))
    };
    let mut outputs = Vec::with_capacity(inputs.len() + 1);
    let mut s = initial;
    for &a in inputs {
        check_index("input", a, m.inputs)?;
        let supply = ClassicLensMor::new(
            m.interface(),
            ClassicLensOb::new(m.outputs, 1),
            FinFn::identity(m.outputs),
            FinFn::constant(m.outputs, m.inputs, a)?,
        )?;
        let driven = lens.compose(&supply)?;
        outputs.push(observe(s)?);
        s = driven.put.apply(s);
    }
    outputs.push(observe(s)?);
    Ok(Trace {
        initial,
        inputs: inputs.to_vec(),
        outputs,
        final_state: s,
    })
}

/// Outcome of [`check_wiring_functorial`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WiringReport {
    pub machines: usize,
    pub wirings: usize,
    pub report: LawReport,
}

/// `wire(wire(m, w1), w2) = wire(m, w1 ⨟ w2)` for every machine with all
/// sizes at most `max` and every composable pair of wirings between
/// interfaces of that size. Witnesses are `[machine, w1, w2]` in enumeration
/// order.
pub fn check_wiring_functorial(max: usize, limit: Limit) -> Result<WiringReport> {
    let interfaces: Vec<ClassicLensOb> = (0..=max)
        .flat_map(|b| (0..=max).map(move |a| ClassicLensOb::new(b, a)))
        .collect();
    let n = interfaces.len();
    let mut homs = Vec::with_capacity(n * n);
    for &x in &interfaces {
        for &y in &interfaces {
            let count = hom_count(x.c, y.c)
                .zip(hom_count(x.c * y.x, x.x))
                .and_then(|(g, p)| g.checked_mul(p));
            limit.check_opt(count)?;
            homs.push(ClassicLensMor::all_between(x, y));
        }
    }
    let mut report = LawReport::default();
    let mut machines = 0;
    for s in 0..=max {
        for (i, &interface) in interfaces.iter().enumerate() {
            for lens in ClassicLensMor::all_between(ClassicLensOb::new(s, s), interface) {
                let m = lens_to_machine(&lens)?;
                for j in 0..n {
                    for (p, w1) in homs[i * n + j].iter().enumerate() {
                        let once = wire(&m, w1)?;
                        for k in 0..n {
                            for (q, w2) in homs[j * n + k].iter().enumerate() {
                                let twice = wire(&once, w2)?;
                                let direct = wire(&m, &w1.compose(w2)?)?;
                                report.expect(twice == direct, "wiring-functoriality", || vec![machines, p, q], || {
                                    format!("stepwise {twice:?} differs from composite {direct:?}")
                                });
                            }
                        }
                    }
                }
                machines += 1;
            }
        }
    }
    Ok(WiringReport {
        machines,
        wirings: homs.iter().map(Vec::len).sum(),
        report,
    })
}
