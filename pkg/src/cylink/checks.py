"""Built-in property corpus shared by the CLI and the test suite.

Each runner exercises one family of invariance properties of the skein
evaluation on randomly generated words and reports pass/fail counts.
"""

from __future__ import annotations

import random

from .braid import BraidWord, defining_relations, random_word
from .diagram import closure
from .ring import derive_params
from .skein import Evaluator


def relation_invariance_cases(rng, count: int, max_strands: int = 4,
                              max_context: int = 4):
    """Random (left, right) word pairs differing by one defining relation."""
    cases = []
    while len(cases) < count:
        n = rng.randrange(2, max_strands + 1)
        rels = defining_relations(n)
        rel_l, rel_r = rels[rng.randrange(len(rels))]
        ulen = rng.randrange(0, max_context // 2 + 1)
        vlen = rng.randrange(0, max_context // 2 + 1)
        u = random_word(rng, n, ulen)
        v = random_word(rng, n, vlen)
        cases.append((u * rel_l * v, u * rel_r * v))
    return cases


def run_relation_invariance(evaluator: Evaluator, rng, count: int):
    passed = failed = 0
    for left, right in relation_invariance_cases(rng, count):
        lhs = evaluator.evaluate(closure(left))
        rhs = evaluator.evaluate(closure(right))
        if lhs == rhs:
            passed += 1
        else:
            failed += 1
    return passed, failed


def run_conjugation_invariance(evaluator: Evaluator, rng, count: int,
                               max_strands: int = 4, max_word: int = 6,
                               max_conj: int = 3):
    passed = failed = 0
    for _ in range(count):
        n = rng.randrange(1, max_strands + 1)
        w = random_word(rng, n, rng.randrange(0, max_word + 1))
        g = random_word(rng, n, rng.randrange(0, max_conj + 1))
        lhs = evaluator.evaluate(closure(g * w * g.inverse()))
        rhs = evaluator.evaluate(closure(w))
        if lhs == rhs:
            passed += 1
        else:
            failed += 1
    return passed, failed


def run_stabilization(evaluator: Evaluator, rng, count: int,
                      max_strands: int = 3, max_word: int = 5):
    lam = evaluator.table["lambda"]
    lam_inv = lam.inverse()
    passed = failed = 0
    for k in range(count):
        n = rng.randrange(1, max_strands + 1)
        w = random_word(rng, n, rng.randrange(0, max_word + 1))
        sign = 1 if k % 2 == 0 else -1
        stabilized = BraidWord(
            n + 1, w.letters + ((n, sign),)
        )
        lhs = evaluator.evaluate(closure(stabilized))
        rhs = (lam if sign > 0 else lam_inv) * evaluator.evaluate(closure(w))
        if lhs == rhs:
            passed += 1
        else:
            failed += 1
    return passed, failed


def run_axiom_corpus(size: int = 25, seed: int = 0):
    """Run every property family; returns (name, passed, failed) triples."""
    table = derive_params()
    evaluator = Evaluator(table)
    out = []
    rng = random.Random(seed)
    out.append(("relation-invariance",
                *run_relation_invariance(evaluator, rng, size)))
    rng = random.Random(seed + 1)
    out.append(("conjugation-invariance",
                *run_conjugation_invariance(evaluator, rng, size)))
    rng = random.Random(seed + 2)
    out.append(("stabilization", *run_stabilization(evaluator, rng, size)))
    return out
