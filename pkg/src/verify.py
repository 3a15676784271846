"""
Theorem-level verification harness, the randomized search for
counterexamples to the B+E_l conjecture and the search over small
k-critical graphs
"""

import random
import sys
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import pandas as pd

from config import VERIFY_DEFAULTS
from src.cli_io import document_from, graph_from_document, GraphDocument
from src.constructions import (
    BpeParams,
    CertifiedPair,
    classify_added_components,
    gstarstar,
    prop3_graph,
    prop4i_graph,
    prop4ii_graph,
    random_bpe,
    satisfies_main_hypothesis,
)
from src.errors import CapacityError, ConstructionError, InputError, ProvedClaimViolation
from src.graph_core import (
    Graph,
    PartitionedGraph,
    bipartition,
    chromatic_number,
    complete_graph,
    cycle_graph,
    degeneracy,
    find_coloring,
    is_k_critical,
    path_graph,
)
from src.reconfig import KempeClassReport, count_kempe_classes, has_connected_bicolored_subgraphs

CLAIMS = (
    'bm5', 'c3e5', 'main', 'fourcri', 'bipar', 'dege', 'fiveedges', 'nointersect',
    'prop3', 'prop4i', 'prop4ii',
)
EXISTENCE_CLAIMS = ('prop3', 'prop4i', 'prop4ii')
# Proved results whose failure must stop the run immediately
ABORTING_CLAIMS = ('bipar', 'dege')
MAIN_SHAPES = ('paths', 'cycles4plus', 'complete_bipartite', 'matching')
SAMPLE_ATTEMPTS = 40
ATLAS_MAX_NODES = 7

GraphLike = Union[Graph, PartitionedGraph]


@dataclass(frozen=True)
class VerifyParams:
    """Knobs of verify_theorem; None means the per-claim default from config"""

    k: Optional[int] = None
    trials: Optional[int] = None
    seed: int = VERIFY_DEFAULTS['seed']
    max_n: Optional[int] = None
    max_ell: Optional[int] = None
    cap: Optional[int] = None
    base_density: float = VERIFY_DEFAULTS['base_density']
    extended: bool = False
    verbose: bool = False

    def resolved(self, claim: str) -> 'VerifyParams':
        defaults = VERIFY_DEFAULTS['claims'][claim]
        return VerifyParams(
            k=self.k if self.k is not None else defaults['k'],
            trials=self.trials if self.trials is not None else defaults['trials'],
            seed=self.seed,
            max_n=self.max_n if self.max_n is not None else defaults['max_n'],
            max_ell=self.max_ell if self.max_ell is not None else defaults['max_ell'],
            cap=self.cap if self.cap is not None else VERIFY_DEFAULTS['instance_cap'],
            base_density=self.base_density,
            extended=self.extended,
            verbose=self.verbose,
        )


@dataclass(frozen=True)
class SearchParams:
    """Knobs of conjecture_search"""

    k: int = VERIFY_DEFAULTS['search']['k']
    n_s: int = VERIFY_DEFAULTS['search']['n_s']
    n_t: int = VERIFY_DEFAULTS['search']['n_t']
    trials: int = VERIFY_DEFAULTS['search']['trials']
    seed: int = VERIFY_DEFAULTS['seed']
    cap: int = VERIFY_DEFAULTS['instance_cap']
    max_ell: int = VERIFY_DEFAULTS['search']['max_ell']
    base_density: float = VERIFY_DEFAULTS['base_density']
    verbose: bool = False


@dataclass(frozen=True)
class CriticalParams:
    """Knobs of critical_search; k=None searches every palette size in config"""

    k: Optional[int] = None
    max_n: int = VERIFY_DEFAULTS['critical']['max_n']
    cap: int = VERIFY_DEFAULTS['instance_cap']
    verbose: bool = False


@dataclass(frozen=True)
class FailureRecord:
    """A failing instance: the document replays the failing Kc computation"""

    trial: int
    instance: Optional[Dict]
    detail: str


@dataclass
class VerificationOutcome:
    """Aggregate result of one claim"""

    claim: str
    tried: int = 0
    passed: int = 0
    failures: List[FailureRecord] = field(default_factory=list)
    skipped: List[Tuple[int, str]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict:
        return {
            'claim': self.claim,
            'tried': self.tried,
            'passed': self.passed,
            'failures': [
                {'trial': f.trial, 'instance': f.instance, 'detail': f.detail}
                for f in self.failures
            ],
            'skipped': [{'trial': t, 'reason': reason} for t, reason in self.skipped],
            'notes': list(self.notes),
        }


@dataclass(frozen=True)
class _Trial:
    index: int
    graph: Optional[GraphLike]
    k: int
    gate: Optional[str] = None  # reason the instance is outside the hypotheses
    label: str = ''


def _trial_rng(claim: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{claim}:{seed}:{trial}")


def _graph_of(obj: GraphLike) -> Graph:
    return obj.graph if isinstance(obj, PartitionedGraph) else obj


def _instance(obj: GraphLike, k: int) -> Dict:
    return document_from(obj, k=k).model_dump(exclude_none=True)


def _log(params, message: str):
    if params.verbose:
        print(message, file=sys.stderr)


def check_conjecture_hypotheses(pg: PartitionedGraph, k: int) -> bool:
    """
    k >= 4, l < C(k,2) and pg is (k-1)-colorable

    Raises:
        CapacityError: the graph is too large for the exact colorability test
    """
    if k < 4 or pg.ell >= comb(k, 2):
        return False
    return find_coloring(pg.graph, k - 1) is not None


def _colorable_within_cap(g: Graph, k: int) -> bool:
    """Sampling filter: graphs too large for the exact test are rejected"""
    try:
        return find_coloring(g, k) is not None
    except CapacityError:
        return False


def _sample_bpe(
    rng: random.Random,
    shape: str,
    ell_range: Tuple[int, int],
    max_n: int,
    density: float,
    accept: Callable[[PartitionedGraph], bool],
) -> Optional[PartitionedGraph]:
    """Draw random B+E_l graphs until one is accepted, giving up after SAMPLE_ATTEMPTS"""
    low, high = ell_range
    if high < low:
        return None
    for _ in range(SAMPLE_ATTEMPTS):
        n = rng.randint(2, max_n)
        n_s = rng.randint(1, n - 1)
        params = BpeParams(
            n_s=n_s, n_t=n - n_s, ell=rng.randint(low, high), shape=shape,
            base_density=density, seed=rng.randrange(2 ** 32),
        )
        try:
            pg = random_bpe(params)
        except InputError:
            continue
        if accept(pg):
            return pg
    return None


def _kc_trials(claim: str, params: VerifyParams) -> Iterator[_Trial]:
    """Instances for the universally quantified claims, hypotheses pre-checked"""
    if claim == 'bm5':
        k = params.k
        for t in range(params.trials):
            rng = _trial_rng(claim, params.seed, t)
            pg = _sample_bpe(
                rng, 'matching', (0, min(params.max_ell, comb(k, 2) - 1)), params.max_n,
                params.base_density, lambda candidate: candidate.is_matching,
            )
            if k < 4:
                yield _Trial(t, pg, k, gate=f"k = {k} < 4")
            else:
                yield _Trial(t, pg, k, gate=None if pg else "no B+M_l instance sampled")

    elif claim == 'c3e5':
        for t in range(params.trials):
            rng = _trial_rng(claim, params.seed, t)
            pg = _sample_bpe(
                rng, 'any', (0, min(params.max_ell, 5)), params.max_n, params.base_density,
                lambda candidate: _colorable_within_cap(candidate.graph, 3),
            )
            yield _Trial(t, pg, params.k, gate=None if pg else "no 3-colorable instance sampled")

    elif claim == 'main':
        for t in range(params.trials):
            rng = _trial_rng(claim, params.seed, t)
            shape = MAIN_SHAPES[t % len(MAIN_SHAPES)]
            k = params.k if params.k is not None else rng.choice((4, 5))
            low = 4 if shape == 'cycles4plus' else 0

            def accept(candidate: PartitionedGraph, k=k) -> bool:
                if not satisfies_main_hypothesis(classify_added_components(candidate)):
                    return False
                try:
                    return check_conjecture_hypotheses(candidate, k)
                except CapacityError:
                    return False

            pg = _sample_bpe(
                rng, shape, (low, min(params.max_ell, comb(k, 2) - 1)), params.max_n,
                params.base_density, accept,
            )
            gate = None if pg else f"no {shape} instance meeting the hypotheses sampled"
            yield _Trial(t, pg, k, gate=gate, label=shape)

    elif claim == 'fourcri':
        bases = [('K_2', path_graph(2)), ('P_3', path_graph(3)), ('K_3', complete_graph(3)),
                 ('C_5', cycle_graph(5))]
        if params.extended:
            bases.append(('K_4', complete_graph(4)))
        for t, (name, base) in enumerate(bases):
            yield _Trial(t, gstarstar(base).gadget, 4, label=name)

    elif claim == 'bipar':
        ks = (params.k,) if params.k is not None else (2, 3)
        t = 0
        for atlas_graph in nx.graph_atlas_g()[1:]:
            if atlas_graph.number_of_nodes() > min(params.max_n, ATLAS_MAX_NODES):
                break
            if not nx.is_connected(atlas_graph) or not nx.is_bipartite(atlas_graph):
                continue
            g = Graph.from_networkx(atlas_graph)
            for k in ks:
                yield _Trial(t, g, k, gate=None if k >= 2 else f"k = {k} < 2")
                t += 1
        if params.max_n > ATLAS_MAX_NODES:
            for extra in range(params.trials):
                rng = _trial_rng(claim, params.seed, extra)
                n = rng.randint(ATLAS_MAX_NODES + 1, params.max_n)
                n_s = rng.randint(1, n - 1)
                pg = random_bpe(BpeParams(n_s, n - n_s, 0, 'any', params.base_density, rng.randrange(2 ** 32)))
                k = rng.choice(ks)
                yield _Trial(t, pg.graph, k, gate=None if k >= 2 else f"k = {k} < 2")
                t += 1

    elif claim == 'dege':
        for t in range(params.trials):
            rng = _trial_rng(claim, params.seed, t)
            chosen = None
            for _ in range(SAMPLE_ATTEMPTS):
                n = rng.randint(2, params.max_n)
                density = rng.random()
                edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
                g = Graph.from_edges(n, edges)
                d = degeneracy(g)
                k = params.k if params.k is not None else d + 1
                if d >= 1 and k > d and (params.k is not None or k <= 4):
                    chosen = (g, k)
                    break
            if chosen is None:
                yield _Trial(t, None, params.k or 0, gate="no graph with d >= 1 and k > d sampled")
            else:
                yield _Trial(t, chosen[0], chosen[1], label=f"d={chosen[1] - 1}")

    elif claim == 'fiveedges':
        t = 0
        for atlas_graph in nx.graph_atlas_g()[1:]:
            if atlas_graph.number_of_nodes() > ATLAS_MAX_NODES:
                break
            if atlas_graph.number_of_edges() > 5:
                continue
            if any(degree == 0 for _, degree in atlas_graph.degree()):
                continue
            g = Graph.from_networkx(atlas_graph)
            if chromatic_number(g) != 3:
                continue
            yield _Trial(t, g, 3)
            t += 1

    elif claim == 'nointersect':
        for t in range(params.trials):
            rng = _trial_rng(claim, params.seed, t)
            shape = MAIN_SHAPES[t % len(MAIN_SHAPES)]
            low = 4 if shape == 'cycles4plus' else 0
            pg = _sample_bpe(rng, shape, (low, params.max_ell), params.max_n,
                             params.base_density, lambda candidate: True)
            if pg is None:
                yield _Trial(t, None, 0, gate=f"no {shape} instance sampled", label=shape)
                continue
            for side_name, side in (('S', pg.side_S), ('T', pg.side_T)):
                sub, _ = pg.graph.subgraph(side)
                needed = 2 if bipartition(sub) is not None else 3
                k = params.k if params.k is not None else needed
                gate = None if k >= needed else f"G[{side_name}] needs {needed} colors, k = {k}"
                yield _Trial(t, sub, k, gate=gate, label=f"{shape}/G[{side_name}]")


def _record_kc(outcome: VerificationOutcome, trial: _Trial, params: VerifyParams):
    outcome.tried += 1
    if trial.gate is not None:
        outcome.skipped.append((trial.index, trial.gate))
        return
    try:
        report = count_kempe_classes(_graph_of(trial.graph), trial.k, params.cap)
    except CapacityError as exc:
        outcome.skipped.append((trial.index, f"capacity: {exc}"))
        return
    if report.num_classes == 1:
        outcome.passed += 1
        _log(params, f"  trial {trial.index} {trial.label}: Kc = 1 over {report.num_colorings} colorings")
        return
    outcome.failures.append(FailureRecord(
        trial.index, _instance(trial.graph, trial.k),
        f"Kc(G,{trial.k}) = {report.num_classes} {trial.label}".strip(),
    ))
    _log(params, f"  trial {trial.index}: FAILED with Kc = {report.num_classes}")


def _verify_existence(claim: str, params: VerifyParams) -> VerificationOutcome:
    outcome = VerificationOutcome(claim, tried=1)
    k = params.k
    builders = {'prop3': prop3_graph, 'prop4i': prop4i_graph, 'prop4ii': prop4ii_graph}
    try:
        cert: CertifiedPair = builders[claim](k)
    except ConstructionError as exc:
        outcome.failures.append(FailureRecord(0, None, f"construction failed for k={k}: {exc}"))
        return outcome

    pg = cert.pg
    problems = []
    if claim == 'prop3':
        if not pg.is_matching or pg.ell != comb(k, 2):
            problems.append(f"expected a matching of {comb(k, 2)} added edges, got l = {pg.ell}")
    elif claim == 'prop4i':
        if pg.ell != comb(k, 2):
            problems.append(f"expected l = {comb(k, 2)}, got {pg.ell}")
        if find_coloring(pg.graph, k - 1) is None:
            problems.append(f"graph is not {k - 1}-colorable")
    else:
        if pg.ell != comb(k, 2) - 1:
            problems.append(f"expected l = {comb(k, 2) - 1}, got {pg.ell}")
        if chromatic_number(pg.graph) != k:
            problems.append(f"graph is not {k}-chromatic")
    if not has_connected_bicolored_subgraphs(pg.graph, cert.c1):
        problems.append("some G(i,j) of the canonical coloring is disconnected")

    try:
        report = count_kempe_classes(pg.graph, k, params.cap)
        if report.num_classes < 2:
            problems.append(f"full enumeration found Kc = {report.num_classes}")
        else:
            outcome.notes.append(
                f"full enumeration: {report.num_colorings} colorings, Kc = {report.num_classes}"
            )
    except CapacityError:
        outcome.notes.append(f"more than {params.cap} colorings; Kc >= 2 certified by rigidity only")

    colorings = {'c1': cert.c1, 'c2': cert.c2}
    if problems:
        instance = document_from(pg, k=k, colorings=colorings).model_dump(exclude_none=True)
        outcome.failures.append(FailureRecord(0, instance, '; '.join(problems)))
    else:
        outcome.passed = 1
    return outcome


def verify_theorem(claim: str, params: Optional[VerifyParams] = None) -> VerificationOutcome:
    """
    Check one claim at desk scale

    Universally quantified claims sample or enumerate instances that satisfy
    the claim's hypotheses and require Kc = 1 by exhaustive search; instances
    over the coloring cap are skipped.  Existence claims build the certified
    pair and confirm Kc >= 2 by the rigidity certificate and, when it fits,
    by full enumeration.

    Args:
        claim: One of CLAIMS
        params: Search parameters; missing values come from config

    Returns:
        VerificationOutcome with failures sorted by trial index

    Raises:
        InputError: unknown claim or a k the claim does not admit
        ProvedClaimViolation: bipar or dege failed on some instance
    """
    if claim not in CLAIMS:
        raise InputError(f"unknown claim '{claim}', expected one of {', '.join(CLAIMS)}")
    resolved = (params or VerifyParams()).resolved(claim)
    if claim == 'c3e5' and resolved.k != 4:
        raise InputError(f"c3e5 is a statement about 4-colorings, got k = {resolved.k}")
    _log(resolved, f"Verifying {claim}...")
    if claim in EXISTENCE_CLAIMS:
        return _verify_existence(claim, resolved)

    outcome = VerificationOutcome(claim)
    for trial in _kc_trials(claim, resolved):
        _record_kc(outcome, trial, resolved)
        if outcome.failures and claim in ABORTING_CLAIMS:
            raise ProvedClaimViolation(
                f"{claim} failed on trial {outcome.failures[-1].trial}: {outcome.failures[-1].detail}",
                outcome,
            )

    if claim == 'fourcri':
        _check_gadget_criticality(outcome, resolved)
    outcome.failures.sort(key=lambda record: record.trial)
    outcome.skipped.sort()
    return outcome


def _check_gadget_criticality(outcome: VerificationOutcome, params: VerifyParams):
    """G** of a 4-critical base is 4-critical; only K_4 is tried, and only in extended runs"""
    if not params.extended:
        print("Warning: G** criticality check skipped (needs the extended run)", file=sys.stderr)
        outcome.notes.append("criticality of G**(K_4) not checked; pass --extended")
        return
    gadget = gstarstar(complete_graph(4)).gadget
    index = outcome.tried
    outcome.tried += 1
    if is_k_critical(gadget, 4):
        outcome.passed += 1
        outcome.notes.append("G**(K_4) is 4-critical")
    else:
        outcome.failures.append(FailureRecord(index, _instance(gadget, 4), "G**(K_4) is not 4-critical"))


def _hypothesis_gate(pg: PartitionedGraph, k: int) -> Optional[str]:
    try:
        if check_conjecture_hypotheses(pg, k):
            return None
    except CapacityError as exc:
        return f"capacity: {exc}"
    return "outside the conjecture's hypotheses"


def conjecture_search(
    params: Optional[SearchParams] = None,
    extra_instances: Sequence[PartitionedGraph] = (),
) -> VerificationOutcome:
    """
    Look for a (k-1)-colorable B+E_l graph with l < C(k,2) and Kc(G,k) >= 2

    Any such instance is recorded as a failure: a counterexample to the
    conjecture, not a bug.  Injected instances go through the same hypothesis
    gate as sampled ones; instances too large for the gate or for the
    coloring cap are recorded as skipped.

    Raises:
        InputError: k < 4
    """
    params = params or SearchParams()
    k = params.k
    if k < 4:
        raise InputError(f"the conjecture concerns k >= 4, got {k}")
    outcome = VerificationOutcome('conjecture')
    upper = min(params.max_ell, comb(k, 2) - 1)
    trials: List[_Trial] = []
    for t in range(params.trials):
        rng = _trial_rng('conjecture', params.seed, t)
        pg, gate = None, None
        for _ in range(SAMPLE_ATTEMPTS):
            candidate = random_bpe(BpeParams(
                params.n_s, params.n_t, rng.randint(0, upper), 'any',
                params.base_density, rng.randrange(2 ** 32),
            ))
            gate = _hypothesis_gate(candidate, k)
            if gate is None:
                pg = candidate
                break
            if gate.startswith('capacity'):
                break
        if pg is None and not gate.startswith('capacity'):
            gate = "no instance meeting the hypotheses sampled"
        trials.append(_Trial(t, pg, k, gate=gate))
    for offset, pg in enumerate(extra_instances):
        trials.append(_Trial(params.trials + offset, pg, k, gate=_hypothesis_gate(pg, k), label='injected'))

    for trial in trials:
        _record_kc(outcome, trial, params)
    if outcome.failures:
        print(f"Warning: {len(outcome.failures)} counterexample(s) found", file=sys.stderr)
    return outcome


def critical_search(params: Optional[CriticalParams] = None) -> VerificationOutcome:
    """
    Look for a k-critical graph G with Kc(G,k) >= 2

    Every connected graph of the networkx atlas with at most max_n vertices
    is tried for each palette size; the k-critical ones are counted.  As with
    conjecture_search, a graph with several classes is recorded as a failure
    for the report only.

    Raises:
        InputError: k < 2, or max_n beyond the atlas
    """
    params = params or CriticalParams()
    ks = (params.k,) if params.k is not None else VERIFY_DEFAULTS['critical']['ks']
    if min(ks) < 2:
        raise InputError(f"critical graphs are searched for k >= 2, got {min(ks)}")
    if params.max_n > ATLAS_MAX_NODES:
        raise InputError(f"the graph atlas stops at {ATLAS_MAX_NODES} vertices, got max_n = {params.max_n}")

    outcome = VerificationOutcome('critical')
    t = 0
    for atlas_index, atlas_graph in enumerate(nx.graph_atlas_g()):
        n = atlas_graph.number_of_nodes()
        if n > params.max_n:
            break
        if n == 0 or not nx.is_connected(atlas_graph):
            continue
        g = Graph.from_networkx(atlas_graph)
        for k in ks:
            if n < k or not is_k_critical(g, k):
                continue
            _record_kc(outcome, _Trial(t, g, k, label=f"atlas #{atlas_index}"), params)
            t += 1
    _log(params, f"  {outcome.tried} critical graph(s) checked")
    if outcome.failures:
        print(f"Warning: {len(outcome.failures)} critical graph(s) with several Kempe classes", file=sys.stderr)
    return outcome


def replay_failure(record: FailureRecord, cap: Optional[int] = None) -> KempeClassReport:
    """Recompute Kc on the stored instance of a failure record"""
    if record.instance is None:
        raise InputError("failure record carries no instance to replay")
    doc = GraphDocument.model_validate(record.instance)
    if doc.k is None:
        raise InputError("failure record instance has no palette size")
    return count_kempe_classes(_graph_of(graph_from_document(doc)), doc.k, cap)


def outcomes_frame(outcomes: Sequence[VerificationOutcome]) -> pd.DataFrame:
    """One summary row per claim"""
    return pd.DataFrame(
        [
            {
                'claim': o.claim,
                'tried': o.tried,
                'passed': o.passed,
                'failed': len(o.failures),
                'skipped': len(o.skipped),
            }
            for o in outcomes
        ],
        columns=['claim', 'tried', 'passed', 'failed', 'skipped'],
    )
