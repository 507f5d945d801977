#!/usr/bin/env python3
# Copyright 2026 The domt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Independent reference computations for the constants frozen into the C++
# tests. Run with python3; prints every value with 17 significant digits.
import itertools
import math
from collections import Counter


def ngrams(toks, n):
    return Counter(tuple(toks[i:i + n]) for i in range(len(toks) - n + 1))


def corpus_bleu(hyps, refs):
    m = [0] * 4
    t = [0] * 4
    c = r = 0
    for h, rf in zip(hyps, refs):
        h, rf = h.split(), rf.split()
        c += len(h)
        r += len(rf)
        for n in range(1, 5):
            hn, rn = ngrams(h, n), ngrams(rf, n)
            m[n - 1] += sum(min(v, rn[g]) for g, v in hn.items())
            t[n - 1] += max(len(h) - n + 1, 0)
    p = [m[i] / t[i] if t[i] else 0.0 for i in range(4)]
    bp = 0.0 if c == 0 else min(1.0, math.exp(1 - r / c))
    bleu = bp * math.exp(sum(math.log(x) for x in p) / 4) if all(p) else 0.0
    return p, bp, c, r, bleu


def sentence_bleu(h, r):
    h, r = h.split(), r.split()
    if not h:
        return 0.0
    logs = 0.0
    for n in range(1, 5):
        hn, rn = ngrams(h, n), ngrams(r, n)
        mm = sum(min(v, rn[g]) for g, v in hn.items())
        tt = max(len(h) - n + 1, 0)
        if n == 1:
            if mm == 0:
                return 0.0
            logs += math.log(mm / tt)
        else:
            logs += math.log((mm + 1) / (tt + 1))
    bp = min(1.0, math.exp(1 - len(r) / len(h)))
    return bp * math.exp(logs / 4)


def chrf(h, r, order=6, beta=2.0):
    hs, rs = h.split(), r.split()
    ps, rc = [], []
    for n in range(1, order + 1):
        hn, rn = Counter(), Counter()
        for w in hs:
            hn.update(w[i:i + n] for i in range(len(w) - n + 1))
        for w in rs:
            rn.update(w[i:i + n] for i in range(len(w) - n + 1))
        if sum(rn.values()) == 0:
            continue
        mm = sum(min(v, rn[g]) for g, v in hn.items())
        ps.append(mm / sum(hn.values()) if hn else 0.0)
        rc.append(mm / sum(rn.values()))
    if not ps:
        return 1.0 if not hs else 0.0
    P, R = sum(ps) / len(ps), sum(rc) / len(rc)
    if P + R == 0:
        return 0.0
    return (1 + beta ** 2) * P * R / (beta ** 2 * P + R)


def meteor_brute(h, r, alpha=0.9, beta=3.0, gamma=0.5):
    h, r = h.split(), r.split()
    best = None
    # every injective partial map hyp->ref over equal words
    options = [[None] + [j for j in range(len(r)) if r[j] == w] for w in h]
    for choice in itertools.product(*options):
        used = [j for j in choice if j is not None]
        if len(used) != len(set(used)):
            continue
        m = len(used)
        chunks = 0
        prev = None
        for i, j in enumerate(choice):
            if j is None:
                prev = None
                continue
            if prev is None or j != prev + 1:
                chunks += 1
            prev = j
        key = (m, -chunks)
        if best is None or key > best:
            best = key
    m, chunks = best[0], -best[1]
    if m == 0:
        return 0, 0, 0.0
    P, R = m / len(h), m / len(r)
    F = P * R / (alpha * P + (1 - alpha) * R)
    return m, chunks, F * (1 - gamma * (chunks / m) ** beta)


def show(name, v):
    if isinstance(v, float):
        print(f"{name} = {v:.17g}")
    else:
        print(f"{name} = {v}")


print("# corpus BLEU fixtures")
fixtures = {
    "clip": (["the the the"], ["the cat"]),
    "identity": (["a b c d e", "x y z w"], ["a b c d e", "x y z w"]),
    "short": (["a"], ["a b"]),
    "two_sent": (["the cat sat on the mat", "a dog ran in the park today"],
                 ["the cat sat on a mat", "the dog ran in the park"]),
    "partial": (["a b c d e f"], ["a b c x e f"]),
    "long_hyp": (["one two three four five six seven"], ["one two three four five"]),
    "three_sent": (["w1 w2 w3 w4", "w5 w6 w7 w8 w9", "w1 w5 w2 w6"],
                   ["w1 w2 w3 w4 w4", "w5 w6 w9 w8 w7", "w1 w5 w2 w6 w3 w3"]),
}
for k, (h, r) in fixtures.items():
    p, bp, c, rl, b = corpus_bleu(h, r)
    show(f"{k}.p", [f"{x:.17g}" for x in p])
    show(f"{k}.bp", bp)
    show(f"{k}.lens", (c, rl))
    show(f"{k}.bleu", b)

print("# sentence BLEU")
show("sbleu(a b c d | a b c e)", sentence_bleu("a b c d", "a b c e"))
show("sbleu(the cat sat on the mat | the cat is on the mat)",
     sentence_bleu("the cat sat on the mat", "the cat is on the mat"))

print("# chrF")
show("chrf(abcd|abce)", chrf("abcd", "abce"))
show("chrf(ab cd|abcd)", chrf("ab cd", "abcd"))
show("chrf(the cat|the hat)", chrf("the cat", "the hat"))

print("# METEOR-lite")
show("meteor(the cat sat|the sat cat)", meteor_brute("the cat sat", "the sat cat"))
show("meteor(a b a b|b a b a)", meteor_brute("a b a b", "b a b a"))
show("meteor(the cat|the cat sat down)", meteor_brute("the cat", "the cat sat down"))
