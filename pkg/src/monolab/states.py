"""Pure-state constructors: the five-amplitude Schmidt family, named states,
Haar-random states, tensor powers, and the JSON state-spec parser."""

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InputError
from .linalg import check_dim, check_dims, reduce_pure

NORM_TOL = 1e-10

# basis indices of |000>, |100>, |101>, |110>, |111> with party A most significant
SCHMIDT_SUPPORT = (0b000, 0b100, 0b101, 0b110, 0b111)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over ``dims``.

    ``parties`` groups physical subsystems into logical parties. Tensor powers
    use it so that party ``A`` of every copy can be addressed as one unit.
    """

    amplitudes: np.ndarray
    dims: tuple
    parties: tuple = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).ravel()
        dims = check_dims(self.dims)
        if int(np.prod(dims)) != amps.size:
            raise InputError(f"dims {dims} do not match {amps.size} amplitudes")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise InputError(f"not normalized (norm {norm!r})")
        amps.setflags(write=False)
        parties = self.parties
        if parties is None:
            parties = tuple((i,) for i in range(len(dims)))
        else:
            parties = tuple(tuple(int(i) for i in p) for p in parties)
            flat = sorted(i for p in parties for i in p)
            if flat != list(range(len(dims))) or any(not p for p in parties):
                raise InputError("parties must partition the subsystems")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "parties", parties)

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return (self.dims == other.dims and self.parties == other.parties
                and np.array_equal(self.amplitudes, other.amplitudes))

    __hash__ = None

    @property
    def dim(self):
        return self.amplitudes.size

    @property
    def n_parties(self):
        return len(self.parties)

    def party_dims(self):
        return tuple(int(np.prod([self.dims[i] for i in p])) for p in self.parties)

    def subsystems(self, parties):
        """Physical subsystem indices belonging to the given logical parties."""
        if isinstance(parties, (int, np.integer)):
            parties = (parties,)
        out = []
        for p in parties:
            if not 0 <= int(p) < self.n_parties:
                raise InputError("invalid subsystem selection")
            out.extend(self.parties[int(p)])
        return tuple(sorted(out))

    def density(self):
        check_dim(self.dim)
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def reduced(self, parties):
        """Reduced density matrix on ``parties`` and its physical dims."""
        keep = self.subsystems(parties)
        return reduce_pure(self.amplitudes, self.dims, keep), tuple(self.dims[i] for i in keep)


@dataclass(frozen=True)
class SchmidtParams:
    lambdas: tuple
    phi: float = 0.0

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lambdas)
        if len(lam) != 5:
            raise InputError("expected five amplitudes lambda0..lambda4")
        if any(x < 0 or not math.isfinite(x) for x in lam):
            raise InputError("amplitudes must be finite and nonnegative")
        if abs(sum(x * x for x in lam) - 1.0) > NORM_TOL:
            raise InputError("not normalized")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "phi", float(self.phi))

    @property
    def is_canonical(self):
        """True when the tail obeys lambda2 >= lambda3 >= lambda4."""
        _, _, l2, l3, l4 = self.lambdas
        return l2 >= l3 >= l4


def random_schmidt_params(rng, canonical=True):
    """Squares uniform on the 4-simplex, phase uniform on [0, 2pi)."""
    lam = np.sqrt(rng.dirichlet(np.ones(5)))
    if canonical:
        lam[2:] = np.sort(lam[2:])[::-1]
    lam /= np.linalg.norm(lam)
    return SchmidtParams(tuple(lam), rng.uniform(0.0, 2 * np.pi))


def schmidt_state(p):
    """``l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>``."""
    if not isinstance(p, SchmidtParams):
        p = SchmidtParams(tuple(p))
    l0, l1, l2, l3, l4 = p.lambdas
    amps = np.zeros(8, dtype=complex)
    amps[list(SCHMIDT_SUPPORT)] = [l0, l1 * np.exp(1j * p.phi), l2, l3, l4]
    return PureState(amps, (2, 2, 2), label="schmidt")


def w_state(n=3):
    amps = np.zeros(2**n, dtype=complex)
    for k in range(n):
        amps[1 << k] = 1.0
    return PureState(amps / np.sqrt(n), (2,) * n, label=f"W{n}")


def ghz_class(n, weights):
    """``sum_i w_i |i>^{⊗n}`` on ``n`` parties of local dimension ``len(weights)``."""
    w = np.asarray(weights, dtype=complex)
    k = w.size
    if n < 2 or k < 2:
        raise InputError("GHZ_CLASS needs n >= 2 parties and >= 2 terms")
    if abs(np.linalg.norm(w) - 1.0) > NORM_TOL:
        raise InputError("GHZ_CLASS weights not normalized")
    check_dim(k**n)
    amps = np.zeros(k**n, dtype=complex)
    step = sum(k**j for j in range(n))
    amps[np.arange(k) * step] = w
    return PureState(amps, (k,) * n, label=f"GHZ_CLASS({n},{k})")


def qutrit_antisymmetric():
    """Totally antisymmetric three-qutrit state on levels 0, 1, 2."""
    amps = np.zeros(27, dtype=complex)
    for perm, sign in [((0, 1, 2), 1), ((0, 2, 1), -1), ((1, 2, 0), 1),
                       ((1, 0, 2), -1), ((2, 0, 1), 1), ((2, 1, 0), -1)]:
        a, b, c = perm
        amps[9 * a + 3 * b + c] = sign
    return PureState(amps / np.sqrt(6), (3, 3, 3), label="QUTRIT_ANTISYM")


_CALL = re.compile(r"^([A-Z_]+)\(([^)]*)\)$")


def named_state(label, weights=None, n=None):
    """Build a named state.

    Labels: ``W3``, ``GHZ3``, ``QUTRIT_ANTISYM``, ``W(n)``, and
    ``GHZ_CLASS(n)`` / ``GHZ_CLASS(n,k)`` (uniform over ``k`` terms,
    default 2). Explicit GHZ-class weights may be passed via ``weights``.
    """
    label = str(label).strip()
    if label == "W3":
        return w_state(3)
    if label == "GHZ3":
        return ghz_class(3, [1 / np.sqrt(2)] * 2)
    if label == "QUTRIT_ANTISYM":
        return qutrit_antisymmetric()
    m = _CALL.match(label.replace(" ", ""))
    if label == "GHZ_CLASS" or (m and m.group(1) == "GHZ_CLASS"):
        args = [int(a) for a in m.group(2).split(",") if a] if m else []
        n = args[0] if args else n
        if n is None:
            raise InputError("GHZ_CLASS needs a party count")
        if weights is None:
            k = args[1] if len(args) > 1 else 2
            weights = [1 / np.sqrt(k)] * k
        return ghz_class(n, weights)
    if m and m.group(1) == "W":
        return w_state(int(m.group(2)))
    raise InputError(f"unknown state label {label!r}")


def haar_random_pure(dims, seed):
    """Unitarily invariant random pure state, deterministic per ``seed``."""
    dims = check_dims(dims)
    d = check_dim(int(np.prod(dims)))
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(z / np.linalg.norm(z), dims, label="haar")


def tensor_power(s, m):
    """``s`` tensored with itself ``m`` times.

    Physical subsystems are laid out copy by copy; logical party ``p`` owns
    subsystem ``p`` of every copy.
    """
    m = int(m)
    if m < 1:
        raise InputError("copy count must be positive")
    check_dim(s.dim**m)
    amps = s.amplitudes
    for _ in range(m - 1):
        amps = np.kron(amps, s.amplitudes)
    n_sub = len(s.dims)
    parties = tuple(
        tuple(i + c * n_sub for c in range(m) for i in p) for p in s.parties
    )
    return PureState(amps, s.dims * m, parties, label=f"{s.label}^{m}")


def state_from_spec(spec):
    """Resolve a state spec (dict, JSON text, ``@file``, or ``kind:args`` shorthand).

    Shorthands: ``named:W3``, ``haar:2,2,2:7`` (dims, seed),
    ``schmidt:l0,l1,l2,l3,l4[:phi]``.
    """
    if isinstance(spec, PureState):
        return spec
    if isinstance(spec, str):
        text = spec.strip()
        if text.startswith("@"):
            try:
                text = Path(text[1:]).read_text()
            except OSError as exc:
                raise InputError(f"cannot read state spec: {exc}") from None
        if text.startswith("{"):
            try:
                spec = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InputError(f"bad state JSON: {exc}") from None
        else:
            try:
                spec = _shorthand(text)
            except InputError:
                raise
            except ValueError as exc:
                raise InputError(f"cannot parse state spec {text!r}: {exc}") from None
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("state spec must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "schmidt":
            return schmidt_state(SchmidtParams(tuple(spec["lambda"]), spec.get("phi", 0.0)))
        if kind == "named":
            return named_state(spec["label"], spec.get("weights"), spec.get("n"))
        if kind == "haar":
            return haar_random_pure(spec["dims"], int(spec["seed"]))
        if kind == "tensor_power":
            return tensor_power(state_from_spec(spec["base"]), int(spec["m"]))
        if kind == "explicit":
            amps = [complex(re_, im) for re_, im in spec["amplitudes"]]
            return PureState(np.array(amps), tuple(spec["dims"]), label="explicit")
    except (KeyError, TypeError) as exc:
        raise InputError(f"incomplete {kind!r} state spec: {exc}") from None
    raise InputError(f"unknown state kind {kind!r}")


def _shorthand(text):
    kind, _, rest = text.partition(":")
    if kind == "named":
        return {"kind": "named", "label": rest}
    if kind == "haar":
        dims, _, seed = rest.partition(":")
        return {"kind": "haar", "dims": [int(d) for d in dims.split(",")], "seed": int(seed or 0)}
    if kind == "schmidt":
        lam, _, phi = rest.partition(":")
        return {"kind": "schmidt", "lambda": [float(x) for x in lam.split(",")],
                "phi": float(phi or 0.0)}
    raise InputError(f"cannot parse state spec {text!r}")
