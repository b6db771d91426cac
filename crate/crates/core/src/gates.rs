//! Symbolic gates compiled to unitaries under an explicit convention set.
//!
//! The physical sign conventions (rotation handedness, the iSWAP phase, and
//! the equatorial axis of the decode rotations) are not observable one gate
//! at a time; only the end-to-end search pins them. [`Conventions`] makes the
//! three binary choices explicit, and the canonical point is re-derived by an
//! exhaustive search over all eight convention sets in the test suite rather
//! than trusted as a constant.
//!
//! Two-qubit gates are compiled as exact canonical unitaries. The
//! coupling-Hamiltonian propagator [`coupling_evolution`] exists as an
//! independent physics cross-check: at t = 1/(4g) it must reproduce the
//! iSWAP up to single-qubit Z phases and a global phase.

use crate::error::{Error, Result};
use crate::qmat::{eigh, tensor_product, ComplexMatrix, Pauli};
use num_complex::Complex64;

/// Sign of the rotation generator: R_n(θ) = exp(−i·sign·θ·σ_n/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationSign {
    Positive,
    Negative,
}

impl RotationSign {
    pub fn value(self) -> f64 {
        match self {
            RotationSign::Positive => 1.0,
            RotationSign::Negative => -1.0,
        }
    }
}

/// Phase acquired by the swapped amplitudes of the iSWAP gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IswapPhase {
    PlusI,
    MinusI,
}

impl IswapPhase {
    pub fn value(self) -> Complex64 {
        match self {
            IswapPhase::PlusI => Complex64::I,
            IswapPhase::MinusI => -Complex64::I,
        }
    }
}

/// Rotation axis for single-qubit gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn sigma(self) -> ComplexMatrix {
        match self {
            Axis::X => Pauli::X.matrix(),
            Axis::Y => Pauli::Y.matrix(),
            Axis::Z => Pauli::Z.matrix(),
        }
    }
}

/// Equatorial axis of the final decode rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeAxis {
    X,
    Y,
}

impl DecodeAxis {
    pub fn axis(self) -> Axis {
        match self {
            DecodeAxis::X => Axis::X,
            DecodeAxis::Y => Axis::Y,
        }
    }
}

/// The frame/sign freedom of the gate set, pinned by the end-to-end search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conventions {
    pub rotation_sign: RotationSign,
    pub iswap_phase: IswapPhase,
    pub decode_axis: DecodeAxis,
}

impl Conventions {
    /// The canonical convention set: rotation_sign +1, iswap_phase −i,
    /// decode axis X. The grover test suite re-runs the exhaustive search
    /// over [`Conventions::all`] and asserts this is the point that makes
    /// the noiseless search deterministic with the published sign mapping.
    pub fn canonical() -> Self {
        Conventions {
            rotation_sign: RotationSign::Positive,
            iswap_phase: IswapPhase::MinusI,
            decode_axis: DecodeAxis::X,
        }
    }

    /// All eight convention sets, for the pinning search.
    pub fn all() -> impl Iterator<Item = Conventions> {
        [RotationSign::Positive, RotationSign::Negative]
            .into_iter()
            .flat_map(|rotation_sign| {
                [IswapPhase::PlusI, IswapPhase::MinusI].into_iter().flat_map(move |iswap_phase| {
                    [DecodeAxis::X, DecodeAxis::Y].into_iter().map(move |decode_axis| Conventions {
                        rotation_sign,
                        iswap_phase,
                        decode_axis,
                    })
                })
            })
    }
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions::canonical()
    }
}

/// One of the two register qubits; qubit I is the left tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    I,
    II,
}

/// Which qubit(s) a gate acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Qubit(Qubit),
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    RX,
    RY,
    RZ,
    Iswap,
    SqrtIswap,
    Idle,
}

impl GateKind {
    fn is_rotation(self) -> bool {
        matches!(self, GateKind::RX | GateKind::RY | GateKind::RZ)
    }

    fn name(self) -> &'static str {
        match self {
            GateKind::RX => "RX",
            GateKind::RY => "RY",
            GateKind::RZ => "RZ",
            GateKind::Iswap => "ISWAP",
            GateKind::SqrtIswap => "SQRT_ISWAP",
            GateKind::Idle => "IDLE",
        }
    }
}

/// A symbolic gate: kind, target, rotation angle (radians, rotations only),
/// and duration in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: Target,
    pub angle: f64,
    pub duration_ns: f64,
}

impl Gate {
    pub fn new(kind: GateKind, target: Target, angle: f64, duration_ns: f64) -> Result<Self> {
        if duration_ns < 0.0 || !duration_ns.is_finite() {
            return Err(Error::invalid(format!("gate duration {duration_ns} ns is negative")));
        }
        match (kind.is_rotation(), target) {
            (true, Target::Both) => {
                return Err(Error::invalid(format!("{} must target a single qubit", kind.name())))
            }
            (false, Target::Qubit(_)) => {
                return Err(Error::invalid(format!("{} must target BOTH", kind.name())))
            }
            _ => {}
        }
        if !kind.is_rotation() && angle != 0.0 {
            return Err(Error::invalid(format!("{} takes no angle", kind.name())));
        }
        if kind.is_rotation() && !angle.is_finite() {
            return Err(Error::invalid("rotation angle must be finite"));
        }
        Ok(Gate { kind, target, angle, duration_ns })
    }

    pub fn rx(qubit: Qubit, angle: f64, duration_ns: f64) -> Result<Self> {
        Gate::new(GateKind::RX, Target::Qubit(qubit), angle, duration_ns)
    }

    pub fn ry(qubit: Qubit, angle: f64, duration_ns: f64) -> Result<Self> {
        Gate::new(GateKind::RY, Target::Qubit(qubit), angle, duration_ns)
    }

    pub fn rz(qubit: Qubit, angle: f64, duration_ns: f64) -> Result<Self> {
        Gate::new(GateKind::RZ, Target::Qubit(qubit), angle, duration_ns)
    }

    pub fn iswap(duration_ns: f64) -> Result<Self> {
        Gate::new(GateKind::Iswap, Target::Both, 0.0, duration_ns)
    }

    pub fn sqrt_iswap(duration_ns: f64) -> Result<Self> {
        Gate::new(GateKind::SqrtIswap, Target::Both, 0.0, duration_ns)
    }

    pub fn idle(duration_ns: f64) -> Result<Self> {
        Gate::new(GateKind::Idle, Target::Both, 0.0, duration_ns)
    }
}

/// An ordered gate list; earlier gates are applied first.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GateSequence {
    gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new() -> Self {
        GateSequence { gates: Vec::new() }
    }

    pub fn from_gates(gates: Vec<Gate>) -> Self {
        GateSequence { gates }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: &GateSequence) {
        self.gates.extend_from_slice(&other.gates);
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn total_duration_ns(&self) -> f64 {
        self.gates.iter().map(|g| g.duration_ns).sum()
    }

    /// Line-oriented text form: "KIND TARGET ANGLE_RAD DURATION_NS", with the
    /// angle omitted for ISWAP, SQRT_ISWAP and IDLE.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for gate in &self.gates {
            let target = match gate.target {
                Target::Qubit(Qubit::I) => "I",
                Target::Qubit(Qubit::II) => "II",
                Target::Both => "BOTH",
            };
            if gate.kind.is_rotation() {
                out.push_str(&format!(
                    "{} {} {:.12e} {:.12e}\n",
                    gate.kind.name(),
                    target,
                    gate.angle,
                    gate.duration_ns
                ));
            } else {
                out.push_str(&format!(
                    "{} {} {:.12e}\n",
                    gate.kind.name(),
                    target,
                    gate.duration_ns
                ));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<GateSequence> {
        let mut gates = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::invalid(format!("gate line {}: {msg}", lineno + 1));
            if fields.len() < 3 {
                return Err(bad("expected KIND TARGET [ANGLE] DURATION"));
            }
            let kind = match fields[0] {
                "RX" => GateKind::RX,
                "RY" => GateKind::RY,
                "RZ" => GateKind::RZ,
                "ISWAP" => GateKind::Iswap,
                "SQRT_ISWAP" => GateKind::SqrtIswap,
                "IDLE" => GateKind::Idle,
                other => return Err(bad(&format!("unknown gate kind `{other}`"))),
            };
            let target = match fields[1] {
                "I" => Target::Qubit(Qubit::I),
                "II" => Target::Qubit(Qubit::II),
                "BOTH" => Target::Both,
                other => return Err(bad(&format!("unknown target `{other}`"))),
            };
            let (angle, duration) = if kind.is_rotation() {
                if fields.len() != 4 {
                    return Err(bad("rotations need KIND TARGET ANGLE DURATION"));
                }
                let angle: f64 =
                    fields[2].parse().map_err(|_| bad(&format!("bad angle `{}`", fields[2])))?;
                let dur: f64 =
                    fields[3].parse().map_err(|_| bad(&format!("bad duration `{}`", fields[3])))?;
                (angle, dur)
            } else {
                if fields.len() != 3 {
                    return Err(bad("non-rotations take KIND TARGET DURATION"));
                }
                let dur: f64 =
                    fields[2].parse().map_err(|_| bad(&format!("bad duration `{}`", fields[2])))?;
                (0.0, dur)
            };
            gates.push(Gate::new(kind, target, angle, duration)?);
        }
        Ok(GateSequence { gates })
    }
}

/// Default gate durations. The iSWAP family is forced by the coupling
/// frequency (a full swap takes 1/(4g)); single-qubit pulse lengths are
/// typical transmon values exposed through the configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateTimings {
    pub single_qubit_ns: f64,
    pub z_rotation_ns: f64,
    pub coupling_mhz: f64,
}

impl GateTimings {
    /// Full-swap duration 1/(4g), in nanoseconds.
    pub fn iswap_ns(&self) -> f64 {
        1e3 / (4.0 * self.coupling_mhz)
    }

    /// Half-swap duration 1/(8g), in nanoseconds.
    pub fn sqrt_iswap_ns(&self) -> f64 {
        1e3 / (8.0 * self.coupling_mhz)
    }
}

impl Default for GateTimings {
    fn default() -> Self {
        GateTimings { single_qubit_ns: 25.0, z_rotation_ns: 5.0, coupling_mhz: 4.6 }
    }
}

/// Single-qubit rotation exp(−i·sign·θ·σ_axis/2).
pub fn rotation_unitary(axis: Axis, angle: f64, conventions: &Conventions) -> ComplexMatrix {
    let half = 0.5 * conventions.rotation_sign.value() * angle;
    let cos = Complex64::new(half.cos(), 0.0);
    let msin = Complex64::new(0.0, -half.sin());
    let id = ComplexMatrix::identity(2).expect("dim 2");
    id.scale(cos).add(&axis.sigma().scale(msin)).expect("same dim")
}

/// The exchange gate: identity on |00⟩, |11⟩; |01⟩ ↔ |10⟩ with the
/// convention phase.
pub fn iswap_unitary(conventions: &Conventions) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(4).expect("dim 4");
    let phase = conventions.iswap_phase.value();
    u.set(0, 0, Complex64::ONE);
    u.set(3, 3, Complex64::ONE);
    u.set(2, 1, phase);
    u.set(1, 2, phase);
    u
}

/// Half of the exchange gate; its square is [`iswap_unitary`].
pub fn sqrt_iswap_unitary(conventions: &Conventions) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(4).expect("dim 4");
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let phase = conventions.iswap_phase.value() * inv_sqrt2;
    u.set(0, 0, Complex64::ONE);
    u.set(3, 3, Complex64::ONE);
    u.set(1, 1, inv_sqrt2);
    u.set(2, 2, inv_sqrt2);
    u.set(2, 1, phase);
    u.set(1, 2, phase);
    u
}

/// exp(−i·α·H) for Hermitian H, via eigendecomposition.
fn hermitian_propagator(h: &ComplexMatrix, alpha: f64) -> ComplexMatrix {
    let (eigenvalues, vectors) = eigh(h);
    let mut phases = ComplexMatrix::zeros(h.dim()).expect("valid dim");
    for (i, &l) in eigenvalues.iter().enumerate() {
        phases.set(i, i, Complex64::from_polar(1.0, -alpha * l));
    }
    vectors.mul(&phases).expect("dim").mul(&vectors.dagger()).expect("dim")
}

/// Propagator of the resonant rotating-frame coupling
/// H_eff = (σ_x σ_x + σ_y σ_y)/2 for coupling g (MHz) and time t (ns):
/// exp(−i·2π·g·t·H_eff).
///
/// This is the physics route to the exchange gates: a full swap of the
/// |01⟩/|10⟩ populations at t = 1/(4g) and an equal-superposition swap at
/// t = 1/(8g).
pub fn coupling_evolution(g_mhz: f64, t_ns: f64) -> Result<ComplexMatrix> {
    if !(g_mhz > 0.0) {
        return Err(Error::invalid(format!("coupling frequency {g_mhz} MHz must be positive")));
    }
    if t_ns < 0.0 || !t_ns.is_finite() {
        return Err(Error::invalid(format!("evolution time {t_ns} ns is negative")));
    }
    let xx = tensor_product(&Pauli::X.matrix(), &Pauli::X.matrix())?;
    let yy = tensor_product(&Pauli::Y.matrix(), &Pauli::Y.matrix())?;
    let h_eff = xx.add(&yy)?.scale(Complex64::new(0.5, 0.0));
    // MHz · ns = 1e-3 dimensionless cycles.
    let alpha = 2.0 * std::f64::consts::PI * g_mhz * t_ns * 1e-3;
    Ok(hermitian_propagator(&h_eff, alpha))
}

/// The 4×4 unitary of a single symbolic gate. Single-qubit rotations are
/// embedded with the identity on the untargeted qubit; IDLE is the identity.
pub fn gate_unitary(gate: &Gate, conventions: &Conventions) -> Result<ComplexMatrix> {
    match gate.kind {
        GateKind::Idle => ComplexMatrix::identity(4),
        GateKind::Iswap => Ok(iswap_unitary(conventions)),
        GateKind::SqrtIswap => Ok(sqrt_iswap_unitary(conventions)),
        GateKind::RX | GateKind::RY | GateKind::RZ => {
            let axis = match gate.kind {
                GateKind::RX => Axis::X,
                GateKind::RY => Axis::Y,
                _ => Axis::Z,
            };
            let rot = rotation_unitary(axis, gate.angle, conventions);
            let id = ComplexMatrix::identity(2)?;
            match gate.target {
                Target::Qubit(Qubit::I) => tensor_product(&rot, &id),
                Target::Qubit(Qubit::II) => tensor_product(&id, &rot),
                Target::Both => Err(Error::invalid("rotation gate with target BOTH")),
            }
        }
    }
}

/// Ordered product of a gate sequence; later gates are applied on the left.
pub fn sequence_unitary(seq: &GateSequence, conventions: &Conventions) -> Result<ComplexMatrix> {
    let mut u = ComplexMatrix::identity(4)?;
    for gate in seq.gates() {
        u = gate_unitary(gate, conventions)?.mul(&u)?;
    }
    Ok(u)
}
