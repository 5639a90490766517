//! Independent checks: dense unitaries for small registers and a stabilizer
//! simulator that executes measurement schedules branch by branch.

pub mod dense;
pub mod stabilizer;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::schedule::{FanoutListing, FanoutOp, FixRule, MeasurementSchedule, Prep};
use crate::tableau::CliffordTableau;
use stabilizer::{ChoiMachine, StabilizerState};

fn machine(n_data: usize, n_ancilla: usize, preps: &[Prep]) -> Result<ChoiMachine> {
    if preps.len() != n_ancilla {
        return Err(Error::Branch(format!(
            "{} preparations for {} ancillas",
            preps.len(),
            n_ancilla
        )));
    }
    let ancilla = if n_ancilla == 0 {
        None
    } else {
        let mut ps: Vec<&Prep> = preps.iter().collect();
        ps.sort_by_key(|p| p.ancilla);
        Some(StabilizerState::from_stabilizers(
            ps.into_iter().map(|p| p.stabilizer.clone()).collect(),
        )?)
    };
    ChoiMachine::new(n_data, ancilla)
}

fn apply_fixups(m: &mut ChoiMachine, fixups: &[FixRule], outcomes: &BitVector) -> Result<()> {
    for f in fixups {
        if f.mask.len() != outcomes.len() {
            return Err(Error::Branch("fix-up mask length".into()));
        }
        if f.fires(outcomes) {
            let p = m.lift_data(&f.pauli)?;
            m.state.apply_pauli(&p)?;
        }
    }
    Ok(())
}

/// Outcome of one simulated run.
#[derive(Clone, Debug)]
pub struct Run {
    pub outcomes: BitVector,
    /// Which outcomes were random.
    pub random: Vec<bool>,
    pub clifford: CliffordTableau,
}

/// Runs the schedule, forcing outcome `k` to `forced[k]` where given.
pub fn run_schedule_forced(s: &MeasurementSchedule, forced: &[Option<bool>]) -> Result<Run> {
    let k = s.n_outcomes();
    if forced.len() != k {
        return Err(Error::Branch(format!(
            "branch of length {}, schedule has {k} outcomes",
            forced.len()
        )));
    }
    let mut m = machine(s.n_data, s.n_ancilla, &s.preps)?;
    let mut outcomes = BitVector::zeros(k);
    let mut random = vec![false; k];
    let observables = s.measurements.iter().map(|j| j.observable.clone()).chain(
        s.readouts
            .iter()
            .map(|r| r.basis.on(s.n_data + s.n_ancilla, s.n_data + r.ancilla)),
    );
    for (i, o) in observables.enumerate() {
        let p = m.lift(&o)?;
        let (out, det) = m.state.measure(&p, forced[i])?;
        outcomes.set(i, out);
        random[i] = !det;
    }
    apply_fixups(&mut m, &s.fixups, &outcomes)?;
    Ok(Run {
        outcomes,
        random,
        clifford: m.data_clifford()?,
    })
}

/// Runs the schedule on one fully specified outcome branch.
pub fn run_schedule(s: &MeasurementSchedule, branch: &[bool]) -> Result<CliffordTableau> {
    let forced: Vec<Option<bool>> = branch.iter().map(|&b| Some(b)).collect();
    Ok(run_schedule_forced(s, &forced)?.clifford)
}

/// Which outcomes are random does not depend on earlier outcomes, so one probe
/// run fixes the set and every assignment to it is enumerated.
pub fn all_branches(s: &MeasurementSchedule) -> Result<Vec<(BitVector, CliffordTableau)>> {
    let k = s.n_outcomes();
    let probe = run_schedule_forced(s, &vec![None; k])?;
    let free: Vec<usize> = (0..k).filter(|&i| probe.random[i]).collect();
    if free.len() > 20 {
        return Err(Error::Guard {
            what: "branch enumeration",
            n: free.len(),
            limit: 20,
        });
    }
    let mut out = Vec::with_capacity(1 << free.len());
    for b in 0u64..1 << free.len() {
        let mut forced = vec![None; k];
        for (bit, &i) in free.iter().enumerate() {
            forced[i] = Some(b >> bit & 1 == 1);
        }
        let run = run_schedule_forced(s, &forced)?;
        if run.random != probe.random {
            return Err(Error::Internal(
                "outcome randomness depends on the branch".into(),
            ));
        }
        out.push((run.outcomes, run.clifford));
    }
    Ok(out)
}

/// Runs the entangler form with every read-out forced to `branch`.
pub fn run_fanout(f: &FanoutListing, branch: &[bool]) -> Result<CliffordTableau> {
    let k = f.n_outcomes();
    if branch.len() != k {
        return Err(Error::Branch(format!(
            "branch of length {}, listing has {k} outcomes",
            branch.len()
        )));
    }
    let mut m = machine(f.n_data, f.n_ancilla, &f.preps)?;
    let total = f.n_data + f.n_ancilla;
    let mut outcomes = BitVector::zeros(k);
    let mut next = 0;
    for op in &f.ops {
        match op {
            FanoutOp::LambdaX { ancilla, pauli, .. } => {
                let x = m.lift(&crate::schedule::Basis::X.on(total, f.n_data + ancilla))?;
                let p = m.lift_data(pauli)?;
                m.state.apply_gen_cz(&x, &p)?;
            }
            FanoutOp::Measure { ancilla, basis } => {
                let p = m.lift(&basis.on(total, f.n_data + ancilla))?;
                let (out, _) = m.state.measure(&p, Some(branch[next]))?;
                outcomes.set(next, out);
                next += 1;
            }
        }
    }
    apply_fixups(&mut m, &f.fixups, &outcomes)?;
    m.data_clifford()
}
