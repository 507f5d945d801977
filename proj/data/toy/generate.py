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

"""Regenerates the bundled toy data. Output is fixed by the seed."""

import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent

LEXICON = {
    "der": "the", "die": "the", "ein": "a", "eine": "a",
    "arzt": "doctor", "patient": "patient", "pilot": "pilot",
    "richter": "judge", "hund": "dog", "katze": "cat",
    "sieht": "sees", "hilft": "helps", "ruft": "calls", "findet": "finds",
    "heute": "today", "morgen": "tomorrow", "schnell": "quickly",
    "und": "and", "nicht": "not", "oft": "often",
}
DETS = ["der", "die", "ein", "eine"]
NOUNS = ["arzt", "patient", "pilot", "richter", "hund", "katze"]
VERBS = ["sieht", "hilft", "ruft", "findet"]
ADVS = ["heute", "morgen", "schnell", "oft"]


def sentence(rng):
    src = [rng.choice(DETS), rng.choice(NOUNS), rng.choice(VERBS),
           rng.choice(DETS), rng.choice(NOUNS)]
    if rng.random() < 0.5:
        src.append(rng.choice(ADVS))
    if rng.random() < 0.2:
        src.insert(3, "nicht")
    tgt = [LEXICON[w] for w in src]
    if "nicht" in src:
        # "sieht nicht" -> "not sees": a local swap the diagonal prior must absorb.
        k = src.index("nicht")
        tgt[k - 1], tgt[k] = tgt[k], tgt[k - 1]
    return " ".join(src), " ".join(tgt)


def bpe_split(word):
    if len(word) <= 4:
        return word
    return word[:2] + "@@ " + word[2:4] + "@@ " + word[4:]


def main():
    rng = random.Random(1)
    train = [sentence(rng) for _ in range(300)]
    test = [sentence(rng) for _ in range(20)]
    (HERE / "train.de").write_text("".join(s + "\n" for s, _ in train))
    (HERE / "train.en").write_text("".join(t + "\n" for _, t in train))
    (HERE / "test.de").write_text("".join(s + "\n" for s, _ in test))
    (HERE / "test.en").write_text("".join(t + "\n" for _, t in test))

    nouns_en = sorted({LEXICON[n] for n in NOUNS})
    lines, baseline = [], []
    for i, (_, ref) in enumerate(test):
        words = ref.split()
        hyps = []
        for _ in range(5):
            h = list(words)
            k = rng.randrange(len(h))
            if h[k] in nouns_en:
                h[k] = rng.choice(nouns_en)
            elif rng.random() < 0.5 and len(h) > 3:
                del h[k]
            hyps.append(h)
        # A fluent sentence unrelated to the source.
        hyps.append("the weather in the mountains was lovely".split())
        order = list(range(6))
        rng.shuffle(order)
        for rank, j in enumerate(order):
            text = " ".join(bpe_split(w) for w in hyps[j])
            score = -1.0 - 0.25 * rank
            lines.append(f"{i} ||| {text} ||| LM0= {score:.2f} ||| {score:.4f}")
            if rank == 0:
                baseline.append(" ".join(hyps[j]))
    (HERE / "test.nbest").write_text("".join(l + "\n" for l in lines))
    (HERE / "baseline.en").write_text("".join(b + "\n" for b in baseline))


if __name__ == "__main__":
    main()
