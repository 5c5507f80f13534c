"""Kleitman-Winston fingerprints and containers for independent sets.

One step of the algorithm, starting from X_0 = V(G):

    order X_{i-1} by max-ordering (ties to the smallest vertex index);
    x_i := the first vertex of that order lying in I, say at position j;
    S := X_{i-1} minus the first j vertices of the order;
    if deg(x_i, S) < 2 gamma |S| e(G) / N^2:  X_i := S            (sparse)
    else:                                     X_i := S \\ N(x_i)  (shrink)

``reconstruct`` replays the same steps from the fingerprint alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContractViolation, InconsistentFingerprintError, ParameterError
from .graph import ExplicitGraph, bits, to_mask
from .spectral import SupersatParams

SHRINK = "shrink"
SPARSE = "sparse"
_BRANCH_CODE = {SPARSE: "s", SHRINK: "k"}
_BRANCH_NAME = {v: k for k, v in _BRANCH_CODE.items()}


@dataclass(frozen=True)
class ContainerConfig:
    gamma: Fraction
    ell: int
    t: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if self.gamma <= 0:
            raise ParameterError("gamma must be positive")
        if self.ell < 0:
            raise ParameterError("ell must be nonnegative")
        if self.t is not None and not (0 < self.ell < self.t):
            raise ParameterError(f"need 0 < ell < t, got ell={self.ell}, t={self.t}")


@dataclass
class ContainerCertificate:
    fingerprint_L: list[int]
    container_P: frozenset[int]
    chain_sizes: list[int]
    branch: list[str]
    nu: Fraction | None = None
    tag: str | None = None
    chain: list[frozenset[int]] = field(default_factory=list, repr=False)

    def to_text(self) -> str:
        nu = "-" if self.nu is None else f"{self.nu.numerator}/{self.nu.denominator}"
        lines = [
            "L: " + " ".join(map(str, self.fingerprint_L)),
            "P: " + " ".join(map(str, sorted(self.container_P))),
            "branch: " + " ".join(_BRANCH_CODE[b] for b in self.branch),
            f"nu: {nu}",
        ]
        return "\n".join(line.rstrip() for line in lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ContainerCertificate":
        fields: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            if not raw.strip():
                continue
            key, sep, value = raw.partition(":")
            key = key.strip()
            if not sep or key not in ("L", "P", "branch", "nu") or key in fields:
                raise ParameterError(f"certificate line {lineno}: unexpected {raw!r}")
            fields[key] = value.strip()
        missing = {"L", "P", "branch", "nu"} - fields.keys()
        if missing:
            raise ParameterError(f"certificate lacks field(s): {', '.join(sorted(missing))}")
        try:
            L = [int(x) for x in fields["L"].split()]
            P = frozenset(int(x) for x in fields["P"].split())
            branch = [_BRANCH_NAME[x] for x in fields["branch"].split()]
            nu = None if fields["nu"] == "-" else Fraction(fields["nu"])
        except (ValueError, KeyError) as exc:
            raise ParameterError(f"certificate: malformed value ({exc})") from None
        return cls(L, P, [], branch, nu)


def max_ordering(g: ExplicitGraph, X: Iterable[int] | int) -> list[int]:
    """Repeatedly remove a vertex of maximum degree in what is left.

    Ties go to the smallest vertex index, which makes the ordering (and so
    every container) a function of X alone.
    """
    mask = X if isinstance(X, int) else to_mask(X)
    verts = list(bits(mask))
    deg = {v: (g.adj[v] & mask).bit_count() for v in verts}
    remaining = mask
    order = []
    for _ in range(len(verts)):
        best_v, best_d = -1, -1
        for v in bits(remaining):
            d = deg[v]
            if d > best_d:
                best_v, best_d = v, d
        order.append(best_v)
        remaining &= ~(1 << best_v)
        for u in bits(g.adj[best_v] & remaining):
            deg[u] -= 1
    return order


def _step(g: ExplicitGraph, X: int, order: list[int], j: int, gamma: Fraction) -> tuple[int, str]:
    """Apply the branch rule to x = order[j]; returns (X_i, branch)."""
    N = g.vertex_count
    x = order[j]
    S = X
    for v in order[: j + 1]:
        S &= ~(1 << v)
    d = (g.adj[x] & S).bit_count()
    # deg(x, S) < 2 gamma |S| e(G) / N^2, cleared of denominators; edgeless G is all sparse
    if g.edge_count == 0 or d * N * N < 2 * gamma * S.bit_count() * g.edge_count:
        return S, SPARSE
    return S & ~g.adj[x], SHRINK


def fingerprint(
    g: ExplicitGraph,
    I: Iterable[int],
    cfg: ContainerConfig,
    supersat: SupersatParams | None = None,
) -> ContainerCertificate:
    """Run the fingerprint algorithm on the independent set I for cfg.ell steps."""
    I_mask = to_mask(I)
    if not g.is_independent(bits(I_mask)):
        raise ContractViolation("I is not an independent set of g")
    size = I_mask.bit_count()
    if size <= cfg.ell:
        raise ParameterError(f"|I| = {size} must exceed ell = {cfg.ell}")
    if cfg.t is not None and size < cfg.t:
        raise ParameterError(f"|I| = {size} is below t = {cfg.t}")
    L, chain, branch = _run(g, I_mask, cfg.gamma, cfg.ell, stop_at_sparse=False)
    return _certificate(g, L, chain, branch, cfg, supersat)


def _run(g: ExplicitGraph, I_mask: int, gamma: Fraction, ell: int, stop_at_sparse: bool):
    X = g.full_mask
    L, chain, branch = [], [], []
    for _ in range(ell):
        order = max_ordering(g, X)
        j = next((idx for idx, v in enumerate(order) if I_mask >> v & 1), None)
        if j is None:
            raise ParameterError(f"I ran out after {len(L)} steps, before ell = {ell}")
        L.append(order[j])
        X, b = _step(g, X, order, j, gamma)
        chain.append(X)
        branch.append(b)
        if stop_at_sparse and b == SPARSE:
            break
    return L, chain, branch


def reconstruct(
    g: ExplicitGraph, L: Sequence[int], cfg: ContainerConfig, full: bool = False
) -> frozenset[int] | ContainerCertificate:
    """Rebuild P(L) from the fingerprint alone.  ``full=True`` returns the whole certificate."""
    X = g.full_mask
    chain, branch = [], []
    for i, x in enumerate(L, 1):
        if not X >> x & 1:
            raise InconsistentFingerprintError(f"x_{i} = {x} is not in X_{i - 1}")
        order = max_ordering(g, X)
        X, b = _step(g, X, order, order.index(x), cfg.gamma)
        chain.append(X)
        branch.append(b)
    cert = _certificate(g, list(L), chain, branch, cfg, None)
    return cert if full else cert.container_P


def _certificate(g, L, chain, branch, cfg, supersat) -> ContainerCertificate:
    final = chain[-1] if chain else g.full_mask
    nu = None
    if supersat is not None:
        nu = container_bound_nu(g.vertex_count, Fraction(2 * g.edge_count, g.vertex_count or 1), cfg.ell, supersat)
    return ContainerCertificate(
        fingerprint_L=list(L),
        container_P=frozenset(bits(final)),
        chain_sizes=[x.bit_count() for x in chain],
        branch=list(branch),
        nu=nu,
        chain=[frozenset(bits(x)) for x in chain],
    )


def container_bound_nu(N: int, D: int | Fraction, ell: int, supersat: SupersatParams) -> Fraction:
    """nu = max((1 - gamma D / N)^ell, lambda), with gamma and lambda from the certificate."""
    base = 1 - supersat.gamma * Fraction(D) / N
    first = base**ell if base > 0 else (Fraction(1) if ell == 0 else Fraction(0))
    return max(first, supersat.lam)


def _binomial(m: int, j: int) -> int:
    if j < 0 or j > m:
        return 0
    return math.comb(m, j)


def count_independent_sets_bound(N: int, cfg: ContainerConfig, nu: Fraction) -> int:
    """C(N, ell) * C(floor(nu N), t - ell), exact."""
    if cfg.t is None:
        raise ParameterError("count bound needs cfg.t")
    cap = math.floor(Fraction(nu) * N)
    return _binomial(N, cfg.ell) * _binomial(cap, cfg.t - cfg.ell)


# ---------------------------------------------------------------------------
# stability containers


@dataclass(frozen=True)
class StabilityFamily:
    members: tuple[frozenset[int], ...]
    epsilon: Fraction
    delta: Fraction
    lam: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(frozenset(b) for b in self.members))
        for name in ("epsilon", "delta", "lam"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not self.members:
            raise ParameterError("stability family needs at least one member")
        if not (0 < self.delta < 1) or self.epsilon <= 0 or self.lam <= 0:
            raise ParameterError("need epsilon > 0, 0 < delta < 1, lambda > 0")


def kneser_stars(g: ExplicitGraph, n: int, k: int) -> list[frozenset[int]]:
    """Vertex sets of the n principal families inside a graph labelled by colex ranks."""
    from .combinatorics import colex_unrank_mask

    masks = [colex_unrank_mask(r, n, k) for r in g.labels]
    return [frozenset(v for v, m in enumerate(masks) if m >> i & 1) for i in range(n)]


def canonical_stability_ell(N: int, e_G: int, lam: Fraction, delta: Fraction) -> int:
    """ceil(ln(1/((1-delta) lambda)) N^2 / (2 delta e(G)))."""
    if e_G == 0:
        raise ParameterError("canonical ell is undefined for an edgeless graph")
    value = math.log(1.0 / ((1 - float(delta)) * float(lam))) * N * N / (2 * float(delta) * e_G)
    return max(1, math.ceil(value))


class StabilityViolation(Exception):
    """Neither disjunct of the stability container could be verified."""

    def __init__(self, cert: ContainerCertificate, message: str):
        super().__init__(message)
        self.certificate = cert


def stability_container(
    g: ExplicitGraph, I: Iterable[int], stab: StabilityFamily, cfg: ContainerConfig
) -> ContainerCertificate:
    """Fingerprint with gamma = delta, stopped at the first sparse step.

    Only the steps actually taken need a vertex of I, so |I| may be below
    ell when a sparse step comes early.

    The returned certificate is tagged ``near-B(j)`` when |P minus B_j| <= eps lambda N
    for some member (closest member wins, lowest index on ties), otherwise
    ``small`` when |P| <= (1 - delta) lambda N.  If neither holds the
    stability precondition was false and StabilityViolation is raised.
    """
    I_mask = to_mask(I)
    if not g.is_independent(bits(I_mask)):
        raise ContractViolation("I is not an independent set of g")
    run_cfg = ContainerConfig(stab.delta, cfg.ell)
    L, chain, branch = _run(g, I_mask, run_cfg.gamma, run_cfg.ell, stop_at_sparse=True)
    cert = _certificate(g, L, chain, branch, run_cfg, None)
    N = g.vertex_count
    P = cert.container_P
    distances = [len(P - B) for B in stab.members]
    best = min(range(len(distances)), key=lambda i: (distances[i], i))
    if distances[best] <= stab.epsilon * stab.lam * N:
        cert.tag = f"near-B({best})"
    elif len(P) <= (1 - stab.delta) * stab.lam * N:
        cert.tag = "small"
    else:
        raise StabilityViolation(
            cert,
            f"|P| = {len(P)} > (1-delta) lambda N and min |P \\ B| = {distances[best]} > eps lambda N",
        )
    return cert


# ---------------------------------------------------------------------------
# mechanical checks of the certificate properties


def check_fingerprint_bullets(g: ExplicitGraph, I: Iterable[int], cert: ContainerCertificate, gamma) -> list[str]:
    """Every property promised for a fingerprint run; returns the list of failures."""
    gamma = Fraction(gamma)
    I_set = frozenset(I)
    N = g.vertex_count
    e_G = g.edge_count
    problems = []
    prev = frozenset(range(N))
    shrank_all = True
    sparse_seen = False
    for i, X in enumerate(cert.chain, 1):
        prefix = set(cert.fingerprint_L[:i])
        if prefix & X:
            problems.append(f"step {i}: some x_j (j <= i) lies in X_i")
        if not (I_set - prefix) <= X:
            problems.append(f"step {i}: I minus x_1..x_i not inside X_i")
        if not X <= prev:
            problems.append(f"step {i}: X_i not inside X_(i-1)")
        if cert.fingerprint_L[i - 1] not in I_set:
            problems.append(f"step {i}: x_i not in I")
        # |X_i| <= (1 - 2 gamma e/N^2) |X_{i-1}|
        if not len(X) * N * N <= (N * N - 2 * gamma * e_G) * len(prev):
            shrank_all = False
        if cert.branch[i - 1] == SHRINK and not len(X) * N * N <= (N * N - 2 * gamma * e_G) * len(prev):
            problems.append(f"step {i}: shrink branch without the promised shrink")
        e_X = g.edges_within(to_mask(X))
        if e_X * N * N < gamma * len(X) ** 2 * e_G:
            sparse_seen = True
        elif cert.branch[i - 1] == SPARSE and e_G > 0:
            problems.append(f"step {i}: sparse branch but e(X_i) >= gamma |X_i|^2 e(G)/N^2")
        prev = X
    if cert.chain and not (shrank_all or sparse_seen):
        problems.append("neither alternative (i) nor (ii) holds")
    if set(cert.fingerprint_L) & cert.container_P:
        problems.append("L meets P(L)")
    if any(a < b for a, b in zip(cert.chain_sizes, cert.chain_sizes[1:])):
        problems.append("chain sizes increase")
    return problems
