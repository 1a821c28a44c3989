"""ReLU feedforward networks and their conversion to tropical rational form.

The conversion follows the difference-of-convex recursion: each neuron's
output max(sum_k W_k f_k + c, 0) with f_k = g_k - h_k becomes

    g' = max(Y_convex + c, Y_concave),   h' = Y_concave,

where Y_convex collects W+_k g_k + W-_k h_k and Y_concave the mirrored
combination, for the entrywise split W = W+ - W- into nonnegative parts with
disjoint support.  Sums of signomials expand distributively into products of
term sets, so the formal term counts multiply: the denominator gets
prod_k n_k m_k formal terms and the numerator exactly twice that.  Identical
monomials produced by the expansion are merged as they appear, which keeps the
stored representation far below the formal count; ConversionResult reports the
formal counts (these satisfy the n = 2m contract and the architecture bound)
alongside the stored sizes per layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import ConstraintSystem, lp_feasible
from .rationals import Rat, Vec, dot, vec, zeros
from .tropical import SignomialParams, TropicalRationalParams


class TermCapExceededError(RuntimeError):
    """Stored term count outgrew the configured cap during conversion."""


@dataclass(frozen=True)
class ReluNetwork:
    """Layers of (weights, biases); ReLU is applied after every layer,
    including the last, and the output is scalar."""

    layers: tuple[tuple[tuple[Vec, ...], Vec], ...]

    def __post_init__(self):
        if not self.layers:
            raise ValueError("network needs at least one layer")
        prev = self.d_in
        for W, c in self.layers:
            if len(W) != len(c) or not W:
                raise ValueError("weight row count must match bias length")
            for row in W:
                if len(row) != prev:
                    raise ValueError("layer input width mismatch")
            prev = len(W)
        if prev != 1:
            raise ValueError("output layer must have width 1")

    @property
    def d_in(self) -> int:
        return len(self.layers[0][0][0])

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def widths(self) -> tuple[int, ...]:
        return tuple(len(W) for W, _ in self.layers)


def network(layers) -> ReluNetwork:
    built = []
    for W, c in layers:
        built.append((tuple(vec(row) for row in W), vec(c)))
    return ReluNetwork(tuple(built))


def net_eval(net: ReluNetwork, x: Sequence[Fraction]) -> Fraction:
    if len(x) != net.d_in:
        raise ValueError(f"input of length {len(x)}, network expects {net.d_in}")
    cur = tuple(x)
    for W, c in net.layers:
        cur = tuple(
            max(ci + dot(row, cur), Fraction(0)) for row, ci in zip(W, c)
        )
    return cur[0]


@dataclass(frozen=True)
class ConversionResult:
    theta: TropicalRationalParams
    n: int  # formal numerator term count of the construction; always 2 * m
    m: int  # formal denominator term count
    trace: tuple[tuple[int, int, int, int, int], ...]
    # trace rows: (layer, formal_n, formal_m, stored_n, stored_m)


TermSet = dict[tuple[Vec, ...], Fraction]  # slope -> best coefficient


def _terms_to_dict(terms) -> dict:
    out: dict = {}
    for a, s in terms:
        prev = out.get(s)
        if prev is None or a > prev:
            out[s] = a
    return out


def _scale_terms(w: Fraction, terms: dict, d: int) -> dict:
    if w == 0:
        return {(Fraction(0),) * d: Fraction(0)}
    return {tuple(w * x for x in s): w * a for s, a in terms.items()}


def _prod_terms(a: dict, b: dict, cap: int | None) -> dict:
    out: dict = {}
    for s1, a1 in a.items():
        for s2, a2 in b.items():
            s = tuple(x + y for x, y in zip(s1, s2))
            coef = a1 + a2
            prev = out.get(s)
            if prev is None or coef > prev:
                out[s] = coef
    if cap is not None and len(out) > cap:
        raise TermCapExceededError(f"stored term count {len(out)} exceeds cap {cap}")
    return out


def _max_terms(a: dict, b: dict) -> dict:
    out = dict(a)
    for s, coef in b.items():
        prev = out.get(s)
        if prev is None or coef > prev:
            out[s] = coef
    return out


def _shift_terms(terms: dict, c: Fraction) -> dict:
    return {s: a + c for s, a in terms.items()}


def _dict_to_signomial(terms: dict, d: int) -> SignomialParams:
    ordered = tuple(sorted(terms.items(), key=lambda kv: kv[0]))
    return SignomialParams(tuple((a, s) for s, a in ordered), d)


def _split_row(row: Vec) -> tuple[Vec, Vec]:
    plus = tuple(x if x > 0 else Fraction(0) for x in row)
    minus = tuple(-x if x < 0 else Fraction(0) for x in row)
    return plus, minus


def net_to_tropical(net: ReluNetwork, term_cap: int | None = 500_000) -> ConversionResult:
    """Exact tropical rational parameters with the same values as the network.

    The per-layer recursion keeps, for every neuron, the convex pair (g, h)
    with f = g - h; formal counts follow the product expansion of the proof
    sketch in the module docstring and do not depend on the weights.
    """
    d = net.d_in
    # Neuron state: (g terms, h terms) as slope -> coefficient dicts.
    g_list: list[dict] = []
    h_list: list[dict] = []
    formal_n, formal_m = 1, 1  # per-neuron counts, identical across a layer
    trace = []
    for layer_index, (W, c) in enumerate(net.layers, start=1):
        new_g: list[dict] = []
        new_h: list[dict] = []
        if layer_index == 1:
            for row, ci in zip(W, c):
                plus, minus = _split_row(row)
                h_terms = {minus: Fraction(0)}
                g_terms = _max_terms({plus: ci}, h_terms)
                new_g.append(g_terms)
                new_h.append(h_terms)
            formal_n, formal_m = 2, 1
        else:
            prev_n, prev_m = formal_n, formal_m
            for row, ci in zip(W, c):
                y_convex: dict = {zeros(d): Fraction(0)}
                y_concave: dict = {zeros(d): Fraction(0)}
                for k, wk in enumerate(row):
                    plus = wk if wk > 0 else Fraction(0)
                    minus = -wk if wk < 0 else Fraction(0)
                    y_convex = _prod_terms(
                        y_convex,
                        _prod_terms(
                            _scale_terms(plus, g_list[k], d),
                            _scale_terms(minus, h_list[k], d),
                            term_cap,
                        ),
                        term_cap,
                    )
                    y_concave = _prod_terms(
                        y_concave,
                        _prod_terms(
                            _scale_terms(minus, g_list[k], d),
                            _scale_terms(plus, h_list[k], d),
                            term_cap,
                        ),
                        term_cap,
                    )
                new_h.append(y_concave)
                new_g.append(_max_terms(_shift_terms(y_convex, ci), y_concave))
            formal_m = (prev_n * prev_m) ** len(g_list)
            formal_n = 2 * formal_m
        g_list, h_list = new_g, new_h
        trace.append(
            (
                layer_index,
                formal_n,
                formal_m,
                max(len(g) for g in g_list),
                max(len(h) for h in h_list),
            )
        )
    theta = TropicalRationalParams(
        _dict_to_signomial(g_list[0], d), _dict_to_signomial(h_list[0], d)
    )
    return ConversionResult(theta=theta, n=formal_n, m=formal_m, trace=tuple(trace))


def bound_m(hidden_dims: Sequence[int]) -> int:
    """Architecture bound on the denominator term count of the construction:
    2 raised to sum_{k=1}^{L-1} 2^(L-1-k) prod_{l=k}^{L-1} d_l, where the
    d_l are the hidden widths (empty sequence: a single layer, bound 1)."""
    dims = list(hidden_dims)
    L = len(dims) + 1
    exponent = 0
    for k in range(1, L):
        prod = 1
        for l in range(k, L):
            prod *= dims[l - 1]
        exponent += 2 ** (L - 1 - k) * prod
    return 2**exponent


# ---------------------------------------------------------------------------
# Term pruning


class _IntTerms:
    """Terms scaled to integers for fast exact argmax scans."""

    def __init__(self, terms: list[tuple[Fraction, Vec]], d: int):
        self.d = d
        den = 1
        for a, s in terms:
            for x in (a, *s):
                den = den * x.denominator // _gcd(den, x.denominator)
        self.rows = [
            tuple(int(x * den) for x in (a, *s)) for a, s in terms
        ]

    def values_at(self, x: Sequence[Fraction]) -> list[int]:
        den = 1
        for xi in x:
            den = den * xi.denominator // _gcd(den, xi.denominator)
        xi = [int(v * den) for v in x]
        return [row[0] * den + sum(r * v for r, v in zip(row[1:], xi)) for row in self.rows]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _uniquely_attains(terms: list[tuple[Fraction, Vec]], fast: _IntTerms, idx: int, d: int) -> bool:
    """Whether term idx strictly beats all others somewhere, decided by a
    strict-feasibility LP with lazily added competitors."""
    if len(terms) == 1:
        return True
    a_i, s_i = terms[idx]
    active: list[int] = []
    for _ in range(len(terms)):
        strict_rows = [(Fraction(1),) + (Fraction(0),) * d]  # w > 0
        for t in active:
            a_t, s_t = terms[t]
            strict_rows.append((a_i - a_t,) + tuple(u - v for u, v in zip(s_i, s_t)))
        witness = lp_feasible(ConstraintSystem((), tuple(strict_rows), d + 1))
        if witness is None:
            return False
        x = tuple(xi / witness[0] for xi in witness[1:])
        values = fast.values_at(x)
        vi = values[idx]
        best = -1
        for t, v in enumerate(values):
            if t == idx or v < vi:
                continue
            if best < 0 or v > values[best]:
                best = t
        if best < 0:
            return True
        active.append(best)
    raise AssertionError("lazy competitor loop failed to terminate")


def _prune_signomial(sig: SignomialParams, samples: int = 64, seed: int = 7) -> SignomialParams:
    import random

    merged = _terms_to_dict(sig.terms)  # same slope: keep the (dominating) max coefficient
    terms = []
    for a, s in sig.terms:  # original order, first winning occurrence per slope
        if merged.get(s) == a:
            terms.append((a, s))
            del merged[s]
    if len(terms) == 1:
        return SignomialParams(tuple(terms), sig.d)
    fast = _IntTerms(terms, sig.d)
    # Terms with a unique argmax at a sample point are keepers without any LP.
    rng = random.Random(seed)
    certified = set()
    for _ in range(samples):
        x = tuple(Fraction(rng.randint(-4000, 4000), rng.randint(1, 40)) for _ in range(sig.d))
        values = fast.values_at(x)
        top = max(values)
        arg = [t for t, v in enumerate(values) if v == top]
        if len(arg) == 1:
            certified.add(arg[0])
    keep = [
        t
        for i, t in enumerate(terms)
        if i in certified or _uniquely_attains(terms, fast, i, sig.d)
    ]
    if not keep:
        raise AssertionError("upper envelope lost all terms")
    return SignomialParams(tuple(keep), sig.d)


def prune_terms(theta: TropicalRationalParams) -> TropicalRationalParams:
    """Drop terms that never uniquely attain their signomial's maximum; the
    represented function is unchanged and the operation is idempotent."""
    return TropicalRationalParams(_prune_signomial(theta.num), _prune_signomial(theta.den))
