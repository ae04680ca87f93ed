"""``lmt-kit`` command line: parse fixture files, dispatch to the checkers, render reports.

Exit codes: 0 every checked property holds, 1 a property fails or a
precondition is violated, 2 parse error, 3 unknown command, 4 budget exhausted
under ``--strict``.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .corpus import KINDS, CorpusSpec, gen_corpus, write_corpus
from .deflation import (analyze_deflation, deflation_from_split_opfibration, extract_opindexed,
                        is_deflation, is_minimal, opindexed_agree, restrict_circ, restrict_star,
                        unique_lifting_check)
from .displayed_check import (analyze_displayed, benabou_roundtrip, check_displayed, collage,
                              displayed_from_functor, factors_through_coarsen, factors_through_refine,
                              split_factorisation_lifting)
from .errors import BudgetExhausted, LmtError, ParseError, UnknownCommand
from .file_formats import (format_opindexed, parse_category, parse_functor, parse_goals,
                           parse_layered_theory, parse_opindexed, parse_theory, read_goals)
from .fincat import analyze_category, commutative_monoid_structure, compose_functors
from .grothendieck import grothendieck, grothendieck_cleavage, roundtrip_equivalence_check, validate_opindexed
from .im_opfibrations import (analyze_im_opfibration, analyze_monoid_translation, componentwise_monoid,
                              im_roundtrip, im_to_monoid, monoid_roundtrip, monoid_to_im)
from .indexed_monoids import analyze_indexed_monoids, fim_hom, fox_roundtrip
from .layered_prover import prove_eq1, replay_eq1, structural_equations, validate_theory
from .layered_syntax import format_lterm, format_type, parse_lterm
from .lmt_analyzer import LMTAnalyzer, RunConfig, default_budget
from .monoidal_deflation import analyze_monoidal_deflation
from .montheory import (ModelData, check_model, diagram_nf, diagram_to_term, enumerate_hom, format_term,
                        parse_term, prove_equal, replay_trace)
from .opfibration_check import (analyze_opfibration, check_split, FuncOver, is_fibration, is_opfibration,
                                is_prefibration, weakly_opcartesian_composition_closed)
from .profunctor import (composite_is_well_defined, is_prof_iso, refine_composition_iso, refine_embed,
                         verify_adjunction)
from .report_generator import ReportGenerator
from .results import PROVED, UNKNOWN, ProofResult, Verdict
from .retrofunctor_check import check_retrofunctor, retrofunctor_from_cleavage
from .two_terms import format_two_term, parse_two_term, prove_eq2, replay_eq2
from .visualization import create_category_figure, export_dot
from .zigzag import format_word, parse_twocell, parse_word, prove_twocells_equal, replay_twocells, zg_normalize

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "dot", "markdown", "html")


@dataclass
class Outcome:
    """What a command hands back: result dicts, an object to draw, or raw text."""

    results: Dict[str, Dict]
    show: object = None
    text: Optional[str] = None
    inputs: List[str] = field(default_factory=list)


Handler = Callable[[argparse.Namespace, RunConfig], Outcome]
COMMANDS: Dict[Tuple[str, str], Tuple[Handler, Sequence[Tuple[tuple, dict]], str]] = {}


def command(group: str, name: str, *arguments: Tuple[tuple, dict], help: str = ""):
    def register(fn: Handler) -> Handler:
        COMMANDS[(group, name)] = (fn, arguments, help)
        return fn
    return register


def arg(*names, **kwargs) -> Tuple[tuple, dict]:
    return names, kwargs


def _verdict(v: Verdict, analysis_type: str, summary: str = "") -> Dict:
    out = v.to_dict(analysis_type)
    if summary:
        out['summary'] = summary
    return out


def _proof_entry(result: ProofResult, lhs: str, rhs: str, replayed: Optional[bool], replay: Dict) -> Dict:
    return {
        'analysis_type': 'proof',
        'holds': result.proved,
        'lhs': lhs,
        'rhs': rhs,
        'status': result.status,
        'explored': result.explored,
        'reason': result.reason,
        'trace': result.trace,
        'replayed': replayed,
        'replay': replay,
        'summary': f"{result.status} after {result.explored} states",
    }


def _require_verdict(result: ProofResult, run: RunConfig, goal: str) -> None:
    if result.status == UNKNOWN and run.strict:
        raise BudgetExhausted(f"no verdict for {goal} within budget {run.budget}", result.explored)


# -- categories and fibrations -------------------------------------------------

@command("cat", "check", arg("file"), help="validate a .fc category")
def cat_check(args, run):
    c = parse_category(args.file)
    result = analyze_category(c)
    result['summary'] = f"{len(c.objects)} objects, {len(c.morphisms)} morphisms"
    return Outcome({'category': result}, show=c)


@command("fib", "check-op", arg("file"), help="opfibration and preopfibration check")
def fib_check_op(args, run):
    q = parse_functor(args.file)
    result = analyze_opfibration(q)
    closed = weakly_opcartesian_composition_closed(q)
    result['weak_lifts_compose'] = closed.holds
    return Outcome({'opfibration': result}, show=q)


@command("fib", "check-fib", arg("file"), help="fibration and prefibration check")
def fib_check_fib(args, run):
    q = parse_functor(args.file)
    fib, prefib = is_fibration(q), is_prefibration(q)
    result = _verdict(fib, 'fibration', "Every liftable pair has a cartesian lift." if fib
                      else f"No cartesian lift for {fib.witness}.")
    result['prefibration'] = prefib.holds
    return Outcome({'fibration': result}, show=q)


@command("fib", "grothendieck", arg("file", help=".idx strict opindexed category"),
         help="Grothendieck construction and its split cleavage")
def fib_grothendieck(args, run):
    I = parse_opindexed(args.file)
    problems = validate_opindexed(I)
    if problems:
        return Outcome({'grothendieck': {'analysis_type': 'grothendieck', 'holds': False,
                                         'witness': problems[:5], 'summary': "not a strict opindexed category"}})
    q = grothendieck(I)
    cleavage = grothendieck_cleavage(q, I)
    op = is_opfibration(q)
    split = check_split(q, cleavage)
    retro = check_retrofunctor(retrofunctor_from_cleavage(q, cleavage))
    result = {
        'analysis_type': 'grothendieck',
        'holds': op.holds and split.holds and retro.holds,
        'objects': len(q.total.objects),
        'morphisms': len(q.total.morphisms),
        'opfibration': op.holds,
        'split': split.holds,
        'retrofunctor': retro.holds,
        'witness': op.witness or split.witness or retro.witness,
        'summary': f"total category with {len(q.total.objects)} objects and {len(q.total.morphisms)} morphisms",
    }
    return Outcome({'grothendieck': result}, show=q)


@command("fib", "roundtrip", arg("file"), help="Grothendieck of the reindexing is isomorphic over the base")
def fib_roundtrip(args, run):
    q = parse_functor(args.file)
    return Outcome({'roundtrip': _verdict(roundtrip_equivalence_check(q), 'roundtrip')}, show=q)


# -- profunctors and displayed categories ----------------------------------------

@command("prof", "compose", arg("first"), arg("second"),
         help="refine(F);refine(G) against refine(F;G)")
def prof_compose(args, run):
    F, G = parse_functor(args.first).p, parse_functor(args.second).p
    if F.target != G.source:
        raise LmtError(f"{F.name} and {G.name} do not compose")
    t = refine_composition_iso(F, G)
    well = composite_is_well_defined(t.source, refine_embed(F), refine_embed(G))
    iso = is_prof_iso(t)
    classes = {f"{a},{c}": len(members) for (a, c), members in sorted(t.source.elems.items())}
    result = {
        'analysis_type': 'prof_compose',
        'holds': well.holds and iso.holds,
        'well_defined': well.holds,
        'iso': iso.holds,
        'classes': classes,
        'witness': well.witness or iso.witness,
        'summary': f"{sum(classes.values())} coend classes",
    }
    return Outcome({'prof_compose': result}, show=FuncOver(compose_functors(F, G)))


@command("prof", "adjunction", arg("file"), help="refine(F) is left adjoint to coarsen(F)")
def prof_adjunction(args, run):
    q = parse_functor(args.file)
    return Outcome({'adjunction': _verdict(verify_adjunction(q.p), 'adjunction')})


@command("disp", "collage", arg("file"), help="displayed category of a functor and its collage")
def disp_collage(args, run):
    q = parse_functor(args.file)
    D = displayed_from_functor(q)
    displayed = check_displayed(D)
    c = collage(D)
    back = benabou_roundtrip(q)
    result = {
        'analysis_type': 'collage',
        'holds': displayed.holds and back.holds,
        'displayed': displayed.holds,
        'roundtrip': back.holds,
        'objects': len(c.total.objects),
        'morphisms': len(c.total.morphisms),
        'witness': displayed.witness or back.witness,
    }
    return Outcome({'collage': result}, show=c)


@command("disp", "conduche", arg("file"), arg("--split", action="store_true", help="also build chosen lifts"),
         help="factorisation lifting, laxators and the (pre)opfibration equivalences")
def disp_conduche(args, run):
    q = parse_functor(args.file)
    result = analyze_displayed(q)
    if args.split:
        chosen, split = split_factorisation_lifting(q)
        result['split'] = split.holds
        result['chosen_lifts'] = len(chosen)
    return Outcome({'displayed': result}, show=q)


@command("disp", "factor-refine", arg("file"), help="factorisation through refine and through coarsen")
def disp_factor_refine(args, run):
    q = parse_functor(args.file)
    refine, coarsen = factors_through_refine(q), factors_through_coarsen(q)
    result = {
        'analysis_type': 'factor_refine',
        'holds': refine is not None,
        'factors_through_refine': refine is not None,
        'factors_through_coarsen': coarsen is not None,
        'chosen_lifts': len(refine.lifts) if refine is not None else 0,
    }
    return Outcome({'factor_refine': result})


# -- monoidal theories ----------------------------------------------------------

@command("mth", "prove", arg("theory"), arg("goals", help=".eq file"), help="bounded equational prover")
def mth_prove(args, run):
    th = parse_theory(args.theory)
    results = {}
    for name, t, s in parse_goals(args.goals, th):
        r = prove_equal(th, t, s, run.budget)
        _require_verdict(r, run, name)
        replayed = replay_trace(th, t, s, r.trace) if r.proved else None
        results[name] = _proof_entry(r, format_term(t), format_term(s), replayed,
                                     {'kind': 'mth', 'theory': args.theory})
    return Outcome(results, inputs=[args.theory, args.goals])


@command("mth", "nf", arg("theory"), arg("term"), help="structural normal form of a term")
def mth_nf(args, run):
    th = parse_theory(args.theory)
    t = parse_term(args.term, th.signature)
    nf = format_term(diagram_to_term(diagram_nf(t)))
    return Outcome({'normal_form': {'analysis_type': 'normal_form', 'holds': True, 'term': format_term(t),
                                    'normal_form': nf}}, text=nf + "\n")


@command("mth", "enumerate", arg("theory"), arg("--dom", default=""), arg("--cod", default=""),
         help="hom-set classes up to the size bound")
def mth_enumerate(args, run):
    th = parse_theory(args.theory)
    h = enumerate_hom(th, args.dom.split(), args.cod.split(), run.bound, min(run.budget, 2000))
    result = {
        'analysis_type': 'enumeration',
        'holds': True,
        'classes': len(h.classes),
        'representatives': [format_term(t) for t in h.representatives],
        'complete': h.complete,
        'caveat': h.caveat,
        'summary': f"{len(h.classes)} classes of terms up to size {run.bound}",
    }
    return Outcome({'enumeration': result})


@command("mth", "check-model", arg("theory"), arg("category", help="one-object .fc category"),
         arg("--assign", action="append", default=[], help="colour=object or generator=morphism"),
         help="interpret a theory in a commutative monoid category")
def mth_check_model(args, run):
    th = parse_theory(args.theory)
    target = commutative_monoid_structure(parse_category(args.category))
    colours, generators = {}, {}
    for item in args.assign:
        key, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {item!r}")
        (colours if key in th.signature.colours else generators)[key] = value
    for c in th.signature.colours:
        colours.setdefault(c, target.unit)
    verdict = check_model(th, ModelData(target, colours, generators))
    return Outcome({'model': _verdict(verdict, 'model')})


# -- layered theories -----------------------------------------------------------

@command("lmt", "typecheck", arg("theory"), arg("term"), help="sort of a layered term")
def lmt_typecheck(args, run):
    th = parse_layered_theory(args.theory)
    t = parse_lterm(args.term, th.signature)
    typed = th.typecheck(t)
    a, b = typed.sort
    result = {'analysis_type': 'typecheck', 'holds': True, 'term': format_lterm(t),
              'source': format_type(a), 'target': format_type(b), 'internal': typed.internal,
              'summary': f"{format_type(a)} -> {format_type(b)}"}
    return Outcome({'typecheck': result})


@command("lmt", "prove1", arg("theory"), arg("goals"), help="1-level prover over the structural schemas")
def lmt_prove1(args, run):
    th = parse_layered_theory(args.theory)
    results = {}
    for g in read_goals(args.goals):
        t = parse_lterm(g.lhs, th.signature, args.goals, g.line)
        s = parse_lterm(g.rhs, th.signature, args.goals, g.line)
        r = prove_eq1(th, t, s, run.budget)
        _require_verdict(r, run, g.name)
        replayed = replay_eq1(th, t, s, r.trace) if r.proved else None
        results[g.name] = _proof_entry(r, format_lterm(t), format_lterm(s), replayed,
                                       {'kind': 'lmt1', 'theory': args.theory})
    return Outcome(results, inputs=[args.theory, args.goals])


@command("lmt", "prove2", arg("theory"), arg("goals"), help="2-level prover")
def lmt_prove2(args, run):
    th = parse_layered_theory(args.theory)
    results = {}
    for g in read_goals(args.goals):
        a = parse_two_term(g.lhs, th.signature, args.goals, g.line)
        b = parse_two_term(g.rhs, th.signature, args.goals, g.line)
        r = prove_eq2(th, a, b, run.budget)
        _require_verdict(r, run, g.name)
        replayed = replay_eq2(th, a, b, r.trace) if r.proved else None
        results[g.name] = _proof_entry(r, format_two_term(a), format_two_term(b), replayed,
                                       {'kind': 'lmt2', 'theory': args.theory})
    return Outcome(results, inputs=[args.theory, args.goals])


@command("lmt", "schemas", arg("theory"), arg("--dump", action="store_true", help="list every schema"),
         help="structural schemas switched on by the theory")
def lmt_schemas(args, run):
    th = parse_layered_theory(args.theory)
    schemas = structural_equations(th)
    problems = validate_theory(th)
    result = {'analysis_type': 'schemas', 'holds': not problems, 'count': len(schemas),
              'procedure': th.procedure.value, 'witness': problems[:5] or None}
    if args.dump:
        result['schemas'] = [f"{s.level} {s.family} {s.name} ({s.realised_by})" for s in schemas]
    return Outcome({'schemas': result})


# -- indexed monoids ------------------------------------------------------------

@command("imon", "fox", arg("file"), help="cartesian structure iff uniform comonoids")
def imon_fox(args, run):
    c = parse_category(args.file)
    return Outcome({'fox': _verdict(fox_roundtrip(c), 'fox')}, show=c)


@command("imon", "check", arg("file"), help="indexed monoids on a category")
def imon_check(args, run):
    c = parse_category(args.file)
    return Outcome({'indexed_monoids': analyze_indexed_monoids(c)}, show=c)


@command("imon", "fim", arg("file"), arg("--dom", default=""), arg("--cod", default=""),
         help="bounded hom-set of the free category with indexed monoids")
def imon_fim(args, run):
    X = parse_category(args.file)
    h = fim_hom(X, args.dom.split(), args.cod.split(), run.bound, min(run.budget, 2000))
    result = {'analysis_type': 'fim', 'holds': True, 'classes': len(h.classes),
              'representatives': [format_term(t) for t in h.representatives], 'complete': h.complete}
    return Outcome({'fim': result})


@command("imon", "opfib", arg("file"), help="im-opfibration check")
def imon_opfib(args, run):
    q = parse_functor(args.file)
    return Outcome({'im_opfibration': analyze_im_opfibration(q)}, show=q)


def _componentwise(args):
    return componentwise_monoid(parse_category(args.base), parse_category(args.monoid))


@command("imon", "mon2im", arg("base"), arg("monoid", help="commutative one-object .fc"),
         help="monoid on the projection base x BM, presented as an im-opfibration")
def imon_mon2im(args, run):
    M = _componentwise(args)
    result = analyze_monoid_translation(M, min(run.budget, 500))
    result['roundtrip'] = monoid_roundtrip(M, min(run.budget, 500)).holds
    return Outcome({'mon2im': result}, show=M.q)


@command("imon", "im2mon", arg("base"), arg("monoid"), help="presented im-opfibration back to a monoid")
def imon_im2mon(args, run):
    P = monoid_to_im(_componentwise(args))
    budget = min(run.budget, 500)
    M = im_to_monoid(P, budget)
    back = im_roundtrip(P, budget)
    result = _verdict(back, 'im2mon', f"{M.name}: {len(M.tensor_mor)} tensor entries")
    return Outcome({'im2mon': result})


# -- deflations and zigzags -----------------------------------------------------

def _deflation(args, run):
    return deflation_from_split_opfibration(parse_functor(args.file), word_length=run.word_length,
                                            cell_size=run.cell_size)


@command("defl", "build", arg("file"), arg("--from-opfib", action="store_true", default=True),
         help="minimal deflation of a split opfibration")
def defl_build(args, run):
    d = _deflation(args, run)
    result = {'analysis_type': 'deflation', 'holds': is_deflation(d).holds, 'minimal': is_minimal(d),
              'objects': len(d.total.objects), 'fragment': d.fragment}
    return Outcome({'deflation': result}, show=d)


@command("defl", "check", arg("file"), help="deflation battery on one split opfibration")
def defl_check(args, run):
    return Outcome({'deflation': analyze_deflation(parse_functor(args.file), run.word_length, run.cell_size)})


@command("defl", "unique-lift", arg("file"), arg("--object"), arg("--morphism"),
         help="unique lifting of 1-cells above a base morphism")
def defl_unique_lift(args, run):
    d = _deflation(args, run)
    T = d.total
    pairs = [(o, f) for o in T.objects for f in T.X.out_of(T.over(o))
             if (args.object is None or o == args.object) and (args.morphism is None or f == args.morphism)]
    results = {}
    for o, f in pairs:
        results[f"{o}/{f}"] = _verdict(unique_lifting_check(d, o, f), 'unique_lifting')
    if not results:
        raise LmtError("no opliftable pair matches --object/--morphism")
    return Outcome(results)


@command("defl", "restrict", arg("file"), help="forward restriction against the source opfibration")
def defl_restrict(args, run):
    d = _deflation(args, run)
    star, circ = restrict_star(d), restrict_circ(d)
    matches = star.total == grothendieck(d.source).total
    result = {'analysis_type': 'restrict', 'holds': matches, 'star_objects': len(star.total.objects),
              'star_morphisms': len(star.total.morphisms), 'circ_morphisms': len(circ.total.morphisms),
              'circ_fibration': is_fibration(circ).holds}
    return Outcome({'restrict': result}, show=star)


@command("defl", "extract", arg("file"), help="strict opindexed category of a minimal deflation")
def defl_extract(args, run):
    d = _deflation(args, run)
    I = extract_opindexed(d)
    agree = opindexed_agree(I, d.source)
    return Outcome({'extract': _verdict(agree, 'extract')}, text=format_opindexed(I))


@command("defl", "monoidal", arg("file"), help="monoidal deflation and the im-opfibration route")
def defl_monoidal(args, run):
    q = parse_functor(args.file)
    return Outcome({'monoidal_deflation': analyze_monoidal_deflation(q, min(run.word_length, 2), run.cell_size)})


@command("zg", "normalize", arg("category"), arg("word"), help="normal form of a zigzag word")
def zg_normalize_cmd(args, run):
    X = parse_category(args.category)
    w = zg_normalize(X, parse_word(X, args.word))
    result = {'analysis_type': 'zigzag_word', 'holds': True, 'word': args.word, 'normal_form': format_word(w),
              'source': w.src, 'target': w.tgt}
    return Outcome({'normalize': result}, text=format_word(w) + "\n")


@command("zg", "prove", arg("category"), arg("goals"), help="equality of zigzag 2-cells")
def zg_prove(args, run):
    X = parse_category(args.category)
    results = {}
    for g in read_goals(args.goals):
        a = parse_twocell(X, g.lhs, args.goals, g.line)
        b = parse_twocell(X, g.rhs, args.goals, g.line)
        r = prove_twocells_equal(X, a, b, run.budget)
        _require_verdict(r, run, g.name)
        replayed = replay_twocells(X, a, b, r.trace) if r.proved else None
        results[g.name] = _proof_entry(r, g.lhs, g.rhs, replayed, {'kind': 'zg', 'category': args.category})
    return Outcome(results, inputs=[args.category, args.goals])


# -- corpus, traces and the battery ---------------------------------------------

@command("corpus", "gen", arg("--kind", choices=KINDS, default="category"), arg("--count", type=int),
         arg("--max-objects", type=int), arg("--max-morphisms", type=int),
         arg("--filter", action="append", default=[]), arg("--out", default="corpus"),
         help="write a seeded random corpus")
def corpus_gen(args, run):
    config = {'kind': args.kind, 'filters': args.filter}
    for key in ('count', 'max_objects', 'max_morphisms'):
        if getattr(args, key) is not None:
            config[key] = getattr(args, key)
    spec = CorpusSpec.from_config(config)
    paths = write_corpus(gen_corpus(spec, run.seed), args.out)
    result = {'analysis_type': 'corpus', 'holds': len(paths) == spec.count, 'count': len(paths),
              'files': [p.as_posix() for p in paths]}
    return Outcome({'corpus': result})


def _replay_mth(meta, lhs, rhs, trace):
    th = parse_theory(meta['theory'])
    return replay_trace(th, parse_term(lhs, th.signature), parse_term(rhs, th.signature), trace)


def _replay_lmt1(meta, lhs, rhs, trace):
    th = parse_layered_theory(meta['theory'])
    return replay_eq1(th, parse_lterm(lhs, th.signature), parse_lterm(rhs, th.signature), trace)


def _replay_lmt2(meta, lhs, rhs, trace):
    th = parse_layered_theory(meta['theory'])
    return replay_eq2(th, parse_two_term(lhs, th.signature), parse_two_term(rhs, th.signature), trace)


def _replay_zg(meta, lhs, rhs, trace):
    X = parse_category(meta['category'])
    return replay_twocells(X, parse_twocell(X, lhs), parse_twocell(X, rhs), trace)


REPLAYERS = {'mth': _replay_mth, 'lmt1': _replay_lmt1, 'lmt2': _replay_lmt2, 'zg': _replay_zg}


@command("trace", "replay", arg("report", help="JSON report written by a prove command"),
         help="re-check every proved trace of a report")
def trace_replay(args, run):
    try:
        report = json.loads(Path(args.report).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read report: {e}", args.report) from None
    results = {}
    for name, entry in sorted(report.get('results', {}).items()):
        if entry.get('status') != PROVED or not entry.get('replay'):
            continue
        meta = entry['replay']
        ok = REPLAYERS[meta['kind']](meta, entry['lhs'], entry['rhs'], entry['trace'])
        results[name] = {'analysis_type': 'replay', 'holds': ok, 'steps': len(entry['trace'])}
    if not results:
        raise LmtError("report contains no proved traces")
    return Outcome(results, inputs=[args.report])


@command("analyze", "", arg("--only", action="append", default=[], help="run just this battery"),
         arg("--count", type=int, help="corpus size"), help="run the property batteries")
def analyze(args, run):
    config = LMTAnalyzer.get_default_config()
    config.update({'seed': run.seed, 'budget': run.budget, 'word_length': run.word_length,
                   'cell_size': run.cell_size, 'bound': run.bound, 'strict': run.strict})
    if args.count is not None:
        config['corpus']['count'] = args.count
    if args.only:
        config['analysis_methods'] = {name: True for name in args.only}
    analyzer = LMTAnalyzer(config)
    analyzer.analyze_all()
    return Outcome(analyzer.results)


# -- driver ---------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=None, help="prover node limit")
    common.add_argument("--bound", type=int, default=None, help="enumeration size bound")
    common.add_argument("--len", dest="word_length", type=int, default=None, help="zigzag word length L")
    common.add_argument("--cellsize", dest="cell_size", type=int, default=None, help="2-cell size B")
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--strict", action="store_true", default=None,
                        help="budget exhaustion is an error (exit 4)")
    common.add_argument("--output", "-o", default=None, help="write the report here")
    common.add_argument("--verbose", "-v", action="store_true", default=None)
    return common


def _merge(*namespaces: argparse.Namespace) -> argparse.Namespace:
    merged = argparse.Namespace()
    for ns in namespaces:
        for key, value in vars(ns).items():
            if value is not None or not hasattr(merged, key):
                setattr(merged, key, value)
    return merged


def build_parser() -> argparse.ArgumentParser:
    groups = sorted({g for g, _ in COMMANDS})
    parser = argparse.ArgumentParser(prog="lmt-kit", parents=[_common_parser()],
                                     description="Checks and provers for layered monoidal theories.",
                                     epilog="groups: " + ", ".join(groups))
    parser.add_argument("group")
    parser.add_argument("rest", nargs=argparse.REMAINDER)
    return parser


def _command_parser(group: str, name: str) -> argparse.ArgumentParser:
    fn, arguments, help_text = COMMANDS[(group, name)]
    p = argparse.ArgumentParser(prog=f"lmt-kit {group} {name}".strip(), parents=[_common_parser()],
                                description=help_text)
    for names, kwargs in arguments:
        p.add_argument(*names, **kwargs)
    return p


def run_config(args: argparse.Namespace) -> RunConfig:
    """Flags win over LMT_DEFAULT_BUDGET, which wins over the built-in defaults."""
    defaults = RunConfig()
    return RunConfig(
        seed=args.seed if args.seed is not None else defaults.seed,
        budget=args.budget if args.budget is not None else default_budget(),
        word_length=args.word_length if args.word_length is not None else defaults.word_length,
        cell_size=args.cell_size if args.cell_size is not None else defaults.cell_size,
        bound=args.bound if args.bound is not None else defaults.bound,
        format=args.format or defaults.format,
        strict=bool(args.strict),
    )


def resolve(argv: Sequence[str]) -> Tuple[Handler, argparse.Namespace, str]:
    if not argv:
        raise UnknownCommand("no command given; groups: " + ", ".join(sorted({g for g, _ in COMMANDS})))
    try:
        top, _ = build_parser().parse_known_args(list(argv))
    except SystemExit as e:
        if e.code:
            raise UnknownCommand("cannot read the command line") from None
        raise
    group, rest = top.group, list(top.rest)
    if (group, "") in COMMANDS:
        name = ""
    else:
        if not any(g == group for g, _ in COMMANDS):
            raise UnknownCommand(f"unknown command group {group!r}")
        if not rest or (group, rest[0]) not in COMMANDS:
            names = sorted(n for g, n in COMMANDS if g == group)
            raise UnknownCommand(f"unknown {group} command {rest[0] if rest else ''!r}; expected one of {names}")
        name = rest.pop(0)
    parser = _command_parser(group, name)
    try:
        args = parser.parse_args(rest)
    except SystemExit as e:
        if e.code:
            raise ParseError(f"bad arguments for {group} {name}".strip()) from None
        raise
    merged = _merge(top, args)
    return COMMANDS[(group, name)][0], merged, f"{group} {name}".strip()


def render(outcome: Outcome, run: RunConfig, label: str) -> str:
    if run.format == "dot":
        if outcome.show is None:
            raise LmtError(f"{label} has nothing to draw")
        return export_dot(outcome.show)
    if outcome.text is not None and run.format == "text":
        return outcome.text
    report = ReportGenerator(outcome.results, run, label, outcome.inputs)
    figure = create_category_figure(outcome.show) if run.format == "html" and outcome.show is not None else None
    return report.render(run.format, figure)


def run(argv: Sequence[str]) -> Tuple[int, str, Optional[str]]:
    """Execute one command line; returns (exit code, rendered report, --output path)."""
    handler, args, label = resolve(argv)
    config = run_config(args)
    logger.info("%s: seed %d, budget %d, format %s", label, config.seed, config.budget, config.format)
    outcome = handler(args, config)
    text = render(outcome, config, label)
    holds = all(r.get('holds', False) for r in outcome.results.values()) if outcome.results else True
    return (0 if holds else 1), text, args.output


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.DEBUG if "-v" in argv or "--verbose" in argv else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        code, text, output = run(argv)
    except LmtError as e:
        print(f"lmt-kit: {e}", file=sys.stderr)
        return e.exit_code
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
