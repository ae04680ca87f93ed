"""Battery runner: every acceptance property of the toolkit, checked on seeded data."""

import logging
import os
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional

from .corpus import CorpusSpec, gen_corpus
from .deflation import analyze_deflation
from .displayed_check import analyze_displayed, is_factorisation_lifting
from .errors import BudgetExhausted, LmtError
from .file_formats import parse_layered_theory
from .grothendieck import grothendieck, grothendieck_cleavage, roundtrip_equivalence_check
from .im_opfibrations import analyze_monoid_translation, componentwise_monoid
from .indexed_monoids import cartesian_monoidal, find_uniform_comonoids, fox_roundtrip
from .layered_prover import prove_eq1, replay_eq1, sliding_goal
from .layered_syntax import enumerate_internal_terms, format_lterm
from .monoidal_deflation import analyze_monoidal_deflation
from .montheory import (Comp, Id, MonSignature, Tensor, Term, diagram_nf, format_term, prove_equal,
                        replay_trace, sort_of, structural_closure, theory_of_monoids)
from .named_categories import cat_1, identity_over, p_h, x3, z2
from .opfibration_check import FuncOver, check_split, is_opfibration
from .profunctor import verify_adjunction
from .results import UNKNOWN, ProofResult
from .retrofunctor_check import check_retrofunctor, retrofunctor_from_cleavage
from .zigzag import prove_twocells_equal, replay_twocells, zigzag_rules

logger = logging.getLogger(__name__)

FIXTURES = Path(__file__).parent / "fixtures"
BUDGET_ENV = "LMT_DEFAULT_BUDGET"
MAX_FAILURES = 5


@dataclass(frozen=True)
class RunConfig:
    """Everything that can change a report. Equal configs give byte-identical reports."""

    seed: int = 0
    budget: int = 10000
    word_length: int = 4
    cell_size: int = 12
    bound: int = 6
    format: str = "text"
    strict: bool = False

    @classmethod
    def from_config(cls, config: Dict) -> "RunConfig":
        return cls(seed=int(config['seed']), budget=int(config['budget']),
                   word_length=int(config['word_length']), cell_size=int(config['cell_size']),
                   bound=int(config['bound']), format=config['format'], strict=bool(config['strict']))


def default_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    if value is None:
        return 10000
    try:
        return int(value)
    except ValueError:
        logger.warning("ignoring non-integer %s=%r", BUDGET_ENV, value)
        return 10000


def catalan_terms(leaves: int) -> List[Term]:
    """Every bracketing of ``leaves`` inputs by the monoid multiplication ``m``."""
    m = theory_of_monoids().signature.gen("m")

    def trees(n):
        if n == 1:
            return [Id(("x",))]
        out = []
        for k in range(1, n):
            for left in trees(k):
                for right in trees(n - k):
                    out.append(Comp(Tensor(left, right), m))
        return out

    return trees(leaves)


class LMTAnalyzer:
    """Runs the property batteries and keeps their result dicts."""

    def __init__(self, config=None):
        """
        Initialize analyzer with configuration.

        Args:
            config: dict with seed, budgets, corpus bounds and analysis toggles
        """
        self.config = config or self.get_default_config()
        self._validate_config()
        self.run = RunConfig.from_config(self.config)
        self.results = {}

    @staticmethod
    def get_default_config():
        """Get default configuration for the batteries."""
        return {
            'seed': 0,
            'budget': default_budget(),  # prover node limit
            'word_length': 4,  # L
            'cell_size': 12,  # B
            'bound': 6,  # enumeration size bound
            'format': 'text',
            'strict': False,
            'corpus': {
                'max_objects': 3,
                'max_morphisms': 8,
                'count': 20,
            },
            'analysis_methods': {
                'grothendieck': True,
                'adjunction': True,
                'conduche': True,
                'structural_nf': True,
                'monoid_prover': True,
                'fox': True,
                'deflation': True,
                'zigzag': True,
                'sliding': True,
                'im_roundtrip': True,
            }
        }

    def _validate_config(self):
        """Fill missing keys from the defaults and reject values of the wrong type."""
        defaults = self.get_default_config()
        self.config = dict(self.config)
        for key, value in defaults.items():
            if key not in self.config:
                self.config[key] = value
                logger.warning("added missing config key '%s' with default value: %s", key, value)
            elif isinstance(value, bool) != isinstance(self.config[key], bool) or \
                    not isinstance(self.config[key], type(value)):
                raise ValueError(f"Configuration key '{key}' must be {type(value).__name__}")
        self.config['corpus'] = {**defaults['corpus'], **self.config['corpus']}
        if self.config['format'] not in ('text', 'json', 'dot', 'markdown', 'html'):
            raise ValueError(f"Unknown format: {self.config['format']}")
        unknown = [m for m in self.config['analysis_methods'] if m not in defaults['analysis_methods']]
        if unknown:
            raise ValueError(f"Unknown function: {unknown[0]}")

    def corpus(self, kind: str, count: Optional[int] = None, filters=()) -> List[object]:
        spec = CorpusSpec.from_config({**self.config['corpus'], 'kind': kind, 'filters': filters,
                                       **({'count': count} if count is not None else {})})
        return gen_corpus(spec, self.run.seed)

    def _proof(self, result: ProofResult, goal: str) -> ProofResult:
        if result.status == UNKNOWN and self.run.strict:
            raise BudgetExhausted(f"no verdict for {goal}: {result.reason}", result.explored)
        return result

    def analyze_single_function(self, function_name):
        """Analyze using a single battery."""
        logger.info("battery %s (seed %d)", function_name, self.run.seed)
        if function_name == 'grothendieck':
            results = self.grothendieck_battery()
        elif function_name == 'adjunction':
            results = self.adjunction_battery()
        elif function_name == 'conduche':
            results = self.conduche_battery()
        elif function_name == 'structural_nf':
            results = self.structural_nf_battery()
        elif function_name == 'monoid_prover':
            results = self.monoid_prover_battery()
        elif function_name == 'fox':
            results = self.fox_battery()
        elif function_name == 'deflation':
            results = self.deflation_battery()
        elif function_name == 'zigzag':
            results = self.zigzag_battery()
        elif function_name == 'sliding':
            results = self.sliding_battery()
        elif function_name == 'im_roundtrip':
            results = self.im_roundtrip_battery()
        else:
            raise ValueError(f"Unknown function: {function_name}")

        self.results[function_name] = results
        return results

    def analyze_all(self):
        """Run every enabled battery; a failing battery does not stop the others."""
        for function_name, enabled in self.config['analysis_methods'].items():
            if enabled:
                try:
                    self.analyze_single_function(function_name)
                except BudgetExhausted:
                    raise
                except (LmtError, ValueError, KeyError) as e:
                    logger.error("error in %s: %s", function_name, e)
                    self.results[function_name] = {'analysis_type': function_name, 'holds': False,
                                                   'error': str(e)}
        return self.results

    def all_hold(self) -> bool:
        return bool(self.results) and all(r.get('holds') for r in self.results.values())

    def summary(self) -> Dict:
        passed = sum(1 for r in self.results.values() if r.get('holds'))
        return {'batteries': len(self.results), 'passed': passed,
                'failed': sorted(k for k, r in self.results.items() if not r.get('holds'))}

    # -- batteries ---------------------------------------------------------------

    @staticmethod
    def _battery(name: str, checked: int, failures: List[Dict], **extra) -> Dict:
        holds = not failures and checked > 0
        return {
            'analysis_type': name,
            'holds': holds,
            'count': checked,
            'failures': failures[:MAX_FAILURES],
            'summary': f"{checked - len(failures)}/{checked} instances pass",
            **extra,
        }

    def grothendieck_battery(self):
        checked, failures = 0, []
        for I in self.corpus("opindexed"):
            q = grothendieck(I)
            cleavage = grothendieck_cleavage(q, I)
            checks = {'opfibration': is_opfibration(q), 'split': check_split(q, cleavage),
                      'roundtrip': roundtrip_equivalence_check(q, cleavage),
                      'retrofunctor': check_retrofunctor(retrofunctor_from_cleavage(q, cleavage))}
            checked += 1
            bad = {k: v.witness for k, v in checks.items() if not v}
            if bad:
                failures.append({'instance': I.name, **bad})
        return self._battery('grothendieck', checked, failures)

    def adjunction_battery(self):
        checked, failures = 0, []
        for F in self.corpus("functor"):
            verdict = verify_adjunction(F)
            checked += 1
            if not verdict:
                failures.append({'instance': F.name, 'witness': verdict.witness})
        return self._battery('adjunction', checked, failures)

    def conduche_battery(self):
        instances = [FuncOver(F) for F in self.corpus("functor")] + [p_h()]
        checked, failures = 0, []
        for q in instances:
            result = analyze_displayed(q)
            checked += 1
            if not result['holds']:
                failures.append({'instance': q.p.name, 'witness': result.get('witness')})
        ph = is_factorisation_lifting(p_h())
        ph_ok = not ph and ph.witness.get('morphism') == "H" and ph.witness.get('factorisation') == ("f", "g")
        if not ph_ok:
            failures.append({'instance': 'p_H', 'witness': ph.witness})
        return self._battery('conduche', checked, failures, p_h_witness=ph.witness)

    def structural_nf_battery(self):
        sig = MonSignature(("a", "b"))
        sig.add("f", ("a",), ("b",))
        sig.add("g", ("a", "b"), ("a",))
        sig.add("k", (), ("b",))
        terms, ds = structural_closure(sig, self.run.bound)
        forms, by_sort = {}, {}
        for t in terms:
            forms[t] = diagram_nf(t)
            by_sort.setdefault(sort_of(t), []).append(t)
        checked, failures = 0, []
        for group in by_sort.values():
            for t, s in combinations(group, 2):
                checked += 1
                if (forms[t] == forms[s]) != ds.same(t, s):
                    failures.append({'lhs': format_term(t), 'rhs': format_term(s),
                                     'normal_form': forms[t] == forms[s]})
        return self._battery('structural_nf', checked, failures, terms=len(terms))

    def monoid_prover_battery(self):
        th = theory_of_monoids()
        trees = catalan_terms(4)
        pairs = [(trees[i], trees[(i + 1) % len(trees)]) for i in range(len(trees))]
        checked, failures, explored = 0, [], []
        for t, s in pairs:
            result = self._proof(prove_equal(th, t, s, self.run.budget), f"{format_term(t)} = {format_term(s)}")
            checked += 1
            explored.append(result.explored)
            if not result.proved or not replay_trace(th, t, s, result.trace):
                failures.append({'lhs': format_term(t), 'rhs': format_term(s), 'status': result.status})
        return self._battery('monoid_prover', checked, failures, trees=len(trees), explored=explored)

    def fox_battery(self):
        checked, failures = 0, []
        for C in self.corpus("category"):
            roundtrip = fox_roundtrip(C)
            strict = roundtrip.details.get('cartesian') and roundtrip.details.get('strict', True)
            comonoids = find_uniform_comonoids(cartesian_monoidal(C))[0] is not None if strict else None
            checked += 1
            if not roundtrip or (strict and not comonoids):
                failures.append({'instance': C.name, 'witness': roundtrip.witness})
        return self._battery('fox', checked, failures)

    def deflation_battery(self):
        checked, failures = 0, []
        count = max(10, self.config['corpus']['count'] // 2)
        for I in self.corpus("opindexed", count=count):
            result = analyze_deflation(grothendieck(I), self.run.word_length, self.run.cell_size)
            checked += 1
            if not result['holds']:
                failures.append({'instance': I.name, 'witness': result['witness']})
        return self._battery('deflation', checked, failures)

    def zigzag_battery(self):
        X = x3()
        checked, failures = 0, []
        for rule in zigzag_rules(X):
            result = self._proof(prove_twocells_equal(X, rule.lhs, rule.rhs, min(self.run.budget, 5000)),
                                 rule.name)
            checked += 1
            if not result.proved or not replay_twocells(X, rule.lhs, rule.rhs, result.trace):
                failures.append({'law': rule.name, 'status': result.status})
        return self._battery('zigzag', checked, failures, base=X.name)

    def sliding_battery(self):
        th = parse_layered_theory(FIXTURES / "sliding.lmt")
        (f,) = th.signature.functors
        source_layer = th.signature.functors[f][0]
        terms = [t for n, ts in sorted(enumerate_internal_terms(th.signature, source_layer, 4).items())
                 for t in ts]
        checked, failures = 0, []
        for x in terms:
            lhs, rhs = sliding_goal(f, x, th)
            for a, b in ((lhs, rhs), (rhs, lhs)):
                result = self._proof(prove_eq1(th, a, b, min(self.run.budget, 20000)), "sliding")
                checked += 1
                if not result.proved or not replay_eq1(th, a, b, result.trace):
                    failures.append({'term': format_lterm(x), 'status': result.status})
        return self._battery('sliding', checked, failures, internal_terms=len(terms))

    def im_roundtrip_battery(self):
        checked, failures, instances = 0, [], {}
        for M in (componentwise_monoid(cat_1(), cat_1()), componentwise_monoid(cat_1(), z2())):
            result = analyze_monoid_translation(M)
            checked += 1
            instances[M.name] = result['summary']
            if not result['holds']:
                failures.append({'instance': M.name, 'witness': result['witness']})
        result = analyze_monoidal_deflation(identity_over(cat_1()))
        checked += 1
        instances['monoidal_deflation'] = result['summary']
        if not (result['holds'] and result.get('roundtrip')):
            failures.append({'instance': 'identity over CAT_1', 'witness': result['witness']})
        return self._battery('im_roundtrip', checked, failures, instances=instances)

