#!/usr/bin/env python3
"""Generate the bundled mini-corpus under data/mini/.

The corpus is synthetic but shaped like real dictionary data: derivational
families large enough to clear the signature-frequency filter (quality
nouns, -ity, -ism/-ist, -ation/-ment/-ion action nouns, agent nouns, un-
and pre- prefixation, mutually motivated noun/adjective pairs, derivational
triangles and cycles), plus irregular candidates that the filters must
remove and a block of distractor records that only populate the index.

The output is deterministic; rerunning the script reproduces the same
bytes.  A few malformed lines are planted on purpose to exercise the skip
reports.  The script asserts that every definition token matching a
headword is an intended link, so the golden build stays auditable.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "data" / "mini"

RECORD_TARGET = 300


def rec(lemma, pos, glosses=(), derived=(), related=()):
    return {
        "lemma": lemma,
        "pos": pos,
        "glosses": list(glosses),
        "derived": list(derived),
        "related": list(related),
    }


def gl(raw, lemmatized=None):
    gloss = {"raw": raw}
    if lemmatized is not None:
        gloss["lemmatized"] = list(lemmatized)
    return gloss


def build_normalized() -> list[dict]:
    records: list[dict] = []

    # quality nouns in -ness ("The property of being X."), all bases y-final
    ness_bases = {
        "spry": "Nimble and quick.",
        "dry": "Without water inside.",
        "shy": "Not at ease with others.",
        "sly": "Clever in a hidden way.",
        "wry": "Twisted in humor.",
        "coy": "Quietly reserved.",
        "grey": "Of a color between black and white.",
    }
    for base, filler in ness_bases.items():
        records.append(rec(base, "A", [gl(filler)]))
        records.append(
            rec(
                base + "ness",
                "N",
                [
                    gl(
                        f"The property of being {base}.",
                        ["the", "property", "of", "be", base, "."],
                    )
                ],
            )
        )

    # headwords that appear inside definitions without being related
    records.append(rec("property", "N", [gl("A thing owned.")]))
    records.append(rec("quality", "N", [gl("A trait or feature.")]))
    records.append(rec("be", "V", [gl("To exist.")]))
    records.append(rec("act", "V", [gl("To behave in a given way.")]))
    records.append(rec("advocate", "N", [gl("A person arguing for a cause.")]))

    # quality nouns in -ity ("The quality of being X.")
    ity_bases = {
        "modern": "Of the present time.",
        "solemn": "Deeply serious.",
        "absurd": "Against all sense.",
        "acid": "Sharp and sour.",
        "humid": "Damp with moisture.",
        "rigid": "Not able to bend.",
        "valid": "Well grounded.",
        "timid": "Lacking courage.",
    }
    for base, filler in ity_bases.items():
        records.append(rec(base, "A", [gl(filler)]))
        records.append(
            rec(
                base + "ity",
                "N",
                [
                    gl(
                        f"The quality of being {base}.",
                        ["the", "quality", "of", "be", base, "."],
                    )
                ],
            )
        )

    # -ism / -ist cross-formation ("An advocate of Xism.")
    ism_stems = ["positiv", "femin", "activ", "catastroph", "structural"]
    ism_fillers = [
        "A doctrine grounded in plain facts.",
        "A push for equal rights.",
        "A policy of vigorous action.",
        "A belief in sudden upheavals.",
        "An outlook centered on systems.",
    ]
    for stem, filler in zip(ism_stems, ism_fillers):
        records.append(rec(stem + "ism", "N", [gl(filler)]))
        records.append(
            rec(
                stem + "ist",
                "N",
                [
                    gl(
                        f"An advocate of {stem}ism.",
                        ["a", "advocate", "of", stem + "ism", "."],
                    )
                ],
            )
        )

    # action nouns: -ation (e-final verbs), -ment, -ion; all "The act of Xing."
    def act_gloss(verb: str, ing: str) -> dict:
        return gl(f"The act of {ing}.", ["the", "act", "of", verb, "."])

    ation_verbs = {
        "accuse": "accusing",
        "condense": "condensing",
        "converse": "conversing",
        "deprive": "depriving",
        "derive": "deriving",
        "observe": "observing",
    }
    verb_fillers = {
        "accuse": "To charge with a fault.",
        "condense": "To squeeze into less room.",
        "converse": "To talk together.",
        "deprive": "To keep a needed thing away.",
        "derive": "To draw from a source.",
        "observe": "To watch closely.",
    }
    for verb, ing in ation_verbs.items():
        records.append(rec(verb, "V", [gl(verb_fillers[verb])]))
        records.append(rec(verb[:-1] + "ation", "N", [act_gloss(verb, ing)]))

    ment_verbs = {
        "appraise": ("appraising", "To judge the worth of."),
        "treat": ("treating", "To handle in a set manner."),
        "pay": ("paying", "To give money owed."),
        "move": ("moving", "To change position."),
        "ship": ("shipping", "To send by carrier."),
        "align": ("aligning", "To bring into a row."),
    }
    for verb, (ing, filler) in ment_verbs.items():
        records.append(rec(verb, "V", [gl(filler)]))
        records.append(rec(verb + "ment", "N", [act_gloss(verb, ing)]))

    # -ion verbs also take -ive adjectives, defined from verb and noun:
    # a planted transitive triangle X -> Xion -> Xive with X -> Xive
    ion_verbs = {
        "invent": ("inventing", "To devise something new."),
        "detect": ("detecting", "To notice what is hidden."),
        "direct": ("directing", "To guide along a course."),
        "elect": ("electing", "To choose by vote."),
        "select": ("selecting", "To pick out from a group."),
        "predict": ("predicting", "To state beforehand."),
    }
    for verb, (ing, filler) in ion_verbs.items():
        records.append(rec(verb, "V", [gl(filler)]))
        records.append(rec(verb + "ion", "N", [act_gloss(verb, ing)]))
        records.append(
            rec(
                verb + "ive",
                "A",
                [
                    gl(f"Apt to {verb}.", ["apt", "to", verb, "."]),
                    gl(
                        f"Marked by {verb}ion.",
                        ["mark", "by", verb + "ion", "."],
                    ),
                ],
            )
        )

    # agent nouns ("One who Xs."), consonant-final bases
    er_verbs = {
        "speak": ("speaks", "To utter words."),
        "read": ("reads", "To take in written words."),
        "sing": ("sings", "To utter musical sounds."),
        "paint": ("paints", "To apply color."),
        "teach": ("teaches", "To pass on knowledge."),
        "play": ("plays", "To take part in a game."),
    }
    for verb, (s_form, filler) in er_verbs.items():
        records.append(rec(verb, "V", [gl(filler)]))
        records.append(
            rec(
                verb + "er",
                "N",
                [gl(f"One who {s_form}.", ["one", "who", verb, "."])],
            )
        )

    # e-final bases: agent nouns in -r plus -ing nouns closing a planted
    # cycle X -> Xr -> Xing -> X
    cycle_verbs = {
        "bake": ("bakes", "baking", "To cook food in an oven.", "craft"),
        "dance": ("dances", "dancing", "To step to music.", "art"),
        "ride": ("rides", "riding", "To travel on an animal.", "skill"),
        "skate": ("skates", "skating", "To glide over ice.", "sport"),
        "trade": ("trades", "trading", "To exchange goods.", "business"),
    }
    for verb, (s_form, ing, filler, craft) in cycle_verbs.items():
        records.append(
            rec(
                verb,
                "V",
                [
                    gl(filler),
                    gl(
                        f"To work as in {ing}.",
                        ["to", "work", "as", "in", ing, "."],
                    ),
                ],
            )
        )
        records.append(
            rec(
                verb + "r",
                "N",
                [gl(f"One who {s_form}.", ["one", "who", verb, "."])],
            )
        )
        records.append(
            rec(
                ing,
                "N",
                [
                    gl(
                        f"The {craft} of a {verb}r.",
                        ["the", craft, "of", "a", verb + "r", "."],
                    )
                ],
            )
        )

    # un- prefixation: morph sections on all six bases, definitions on three
    un_bases = {
        "astounding": "Causing astonishment.",
        "available": "Ready for use.",
        "friendly": "Warm and pleasant toward others.",
        "happy": "Feeling joy.",
        "kind": "Caring toward others.",
        "stable": "Firmly fixed.",
    }
    un_defined = {
        "astounding": "Not astounding.",
        "happy": "Not happy.",
        "kind": "Not kind.",
    }
    for base, filler in un_bases.items():
        records.append(rec(base, "A", [gl(filler)], derived=["un" + base]))
        if base in un_defined:
            glosses = [gl(un_defined[base], ["not", base, "."])]
        else:
            glosses = [gl("Not ready at hand.")]
        records.append(rec("un" + base, "A", glosses))

    # mutually motivated noun/adjective pairs; dust gets no reverse
    # definition so the orientation counts stay asymmetric
    weather = {
        "luck": (
            "lucky",
            "The force behind lucky events.",
            ["the", "force", "behind", "lucky", "event", "."],
        ),
        "mist": (
            "misty",
            "Thin fog that makes the air misty.",
            ["thin", "fog", "that", "make", "the", "air", "misty", "."],
        ),
        "rain": (
            "rainy",
            "Water that falls on rainy days.",
            ["water", "that", "fall", "on", "rainy", "day", "."],
        ),
        "wind": (
            "windy",
            "Air that blows on windy days.",
            ["air", "that", "blow", "on", "windy", "day", "."],
        ),
        "dirt": (
            "dirty",
            "Loose earth of a dirty sort.",
            ["loose", "earth", "of", "a", "dirty", "sort", "."],
        ),
        "dust": ("dusty", "Fine powder in the air.", None),
    }
    for noun, (adj, noun_raw, noun_lemm) in weather.items():
        if noun_lemm is None:
            records.append(rec(noun, "N", [gl(noun_raw)]))
        else:
            records.append(rec(noun, "N", [gl(noun_raw, noun_lemm)]))
        records.append(
            rec(adj, "A", [gl(f"Full of {noun}.", ["full", "of", noun, "."])])
        )

    # -ish family: three pairs, below the default bucket threshold, retained
    # only when thresholds are relaxed
    ish_bases = {"boy": "A young male child.", "girl": "A young female child.",
                 "fool": "A person with little sense."}
    for base, filler in ish_bases.items():
        records.append(rec(base, "N", [gl(filler)]))
        records.append(
            rec(
                base + "ish",
                "A",
                [gl(f"Like a {base}.", ["like", "a", base, "."])],
            )
        )

    # pre- prefixation via morph sections plus "in advance" definitions;
    # interpret has an empty gloss list on purpose
    records.append(
        rec(
            "interpret",
            "V",
            [],
            derived=["preinterpret", "reinterpret", "misinterpret"],
            related=["interpretable"],
        )
    )
    records.append(rec("reinterpret", "V",
                       [gl("To interpret anew.", ["to", "interpret", "anew", "."])]))
    pre_bases = {
        "heat": "To make hot.",
        "view": "To look at.",
        "test": "To examine closely.",
        "load": "To place a burden on.",
        "order": "To arrange in sequence.",
    }
    for base, filler in pre_bases.items():
        records.append(rec(base, "V", [gl(filler)], derived=["pre" + base]))
    for base in ["interpret"] + sorted(pre_bases):
        records.append(
            rec(
                "pre" + base,
                "V",
                [gl(f"To {base} in advance.", ["to", base, "in", "advance", "."])],
            )
        )
    return records


DISTRACTOR_NOUNS = [
    "anchor", "barrel", "basket", "beacon", "blanket", "bridge", "candle",
    "canyon", "castle", "cellar", "cobweb", "copper", "cottage", "cradle",
    "crystal", "curtain", "dragon", "ember", "engine", "falcon", "feather",
    "fiddle", "fountain", "garden", "glacier", "goblet", "gravel", "hamlet",
    "hammer", "harbor", "helmet", "island", "ivory", "jungle", "kettle",
    "lantern", "ladder", "lagoon", "lettuce", "lobster", "locket", "marble",
    "meadow", "mirror", "mountain", "needle", "nectar", "orchard", "orchid",
    "palace", "parchment", "pebble", "pillow", "puzzle", "quiver",
]
DISTRACTOR_VERBS = [
    "borrow", "carve", "climb", "crawl", "drift", "gather", "grumble",
    "hover", "juggle", "kneel", "linger", "mumble", "murmur", "nudge",
    "paddle", "ponder", "rummage", "scatter", "scribble", "shiver",
    "simmer", "sprint", "stumble", "swirl", "tangle", "tiptoe", "tremble",
    "trudge", "wander", "whittle", "dawdle", "fidget", "meander", "saunter",
    "squabble",
]
DISTRACTOR_ADJS = [
    "amber", "brittle", "clumsy", "crooked", "dismal", "drowsy", "eager",
    "feeble", "gentle", "gloomy", "humble", "jagged", "mellow", "narrow",
    "oblong", "placid", "plump", "rugged", "scarlet", "shallow", "sleek",
    "slender", "sturdy", "subtle", "tender", "vivid", "weary", "wobbly",
    "zesty", "quaint",
]
DISTRACTOR_ADVS = [
    "briskly", "dimly", "gently", "rarely", "seldom", "swiftly", "barely",
    "nearly", "faintly", "keenly", "meekly", "oddly", "shyly", "tamely",
]

NOUN_GLOSSES = [
    "A small wooden object.",
    "A large stone object.",
    "A round metal object.",
    "A flat object covered with cloth.",
    "A long object kept indoors.",
]
VERB_GLOSSES = [
    "To go slowly.",
    "To go quickly.",
    "To turn without noise.",
    "To go with short steps.",
]
ADJ_GLOSSES = [
    "Rather dull.",
    "Rather bright.",
    "Somewhat pale.",
    "Somewhat odd in shape.",
]
ADV_GLOSSES = ["In a slow manner.", "In a sudden manner."]


def build_distractors() -> list[dict]:
    records = []
    for i, word in enumerate(DISTRACTOR_NOUNS):
        records.append(rec(word, "N", [gl(NOUN_GLOSSES[i % len(NOUN_GLOSSES)])]))
    for i, word in enumerate(DISTRACTOR_VERBS):
        records.append(rec(word, "V", [gl(VERB_GLOSSES[i % len(VERB_GLOSSES)])]))
    for i, word in enumerate(DISTRACTOR_ADJS):
        records.append(rec(word, "A", [gl(ADJ_GLOSSES[i % len(ADJ_GLOSSES)])]))
    for i, word in enumerate(DISTRACTOR_ADVS):
        records.append(rec(word, "R", [gl(ADV_GLOSSES[i % len(ADV_GLOSSES)])]))
    return records


def build_kaikki_lines() -> list[str]:
    """Kaikki-format records: raw glosses only, fallback lemmatization."""

    def kaikki(word, pos, glosses, derived=()):
        entry = {
            "word": word,
            "pos": pos,
            "senses": [{"glosses": [g]} for g in glosses],
        }
        if derived:
            entry["derived"] = [{"word": w} for w in derived]
        return json.dumps(entry, ensure_ascii=False)

    lines = [
        kaikki("stiff", "adj", ["Hard to bend."]),
        kaikki("stiffness", "noun", ["The property of being stiff."]),
        kaikki("calm", "adj", ["Free from worry."]),
        kaikki("calm", "verb", ["To quiet someone down."]),
        kaikki("calmness", "noun", ["The property of being calm."]),
        kaikki("dark", "adj", ["Having little light."], derived=["darkness"]),
        kaikki("darkness", "noun", ["The property of being dark."]),
        kaikki("soft", "adj", ["Easy to press or fold."]),
        kaikki("softness", "noun", ["The property of being soft."]),
        # planted skips: unmappable POS, malformed JSON, missing headword
        kaikki("it", "pron", ["A thing already mentioned."]),
        '{"word": "broken",',
        json.dumps({"pos": "noun", "senses": []}),
    ]
    return lines


def build_morphynet_lines() -> list[str]:
    return [
        "injure\tinjury\tV\tN",
        "grow\tgrowth\tV\tN",
        "accuse\taccusation\tV\tN",
        "shortrow\tonly\tV",
        "strange\tstranger\tX\tN",
    ]


INTENDED_LINKS = """
be property quality act advocate
spry dry shy sly wry coy grey stiff calm dark soft
modern solemn absurd acid humid rigid valid timid
positivism feminism activism catastrophism structuralism
accuse condense converse deprive derive observe
appraise treat pay move ship align
invent detect direct elect select predict
invention detection direction election selection prediction
speak read sing paint teach play
bake dance ride skate trade
baker dancer rider skater trader
baking dancing riding skating trading
astounding happy kind
luck mist rain wind dirt dust lucky misty rainy windy dirty
boy girl fool
interpret heat view test load order
""".split()


def kaikki_as_records(lines: list[str]) -> list[dict]:
    records = []
    for line in lines:
        try:
            entry = json.loads(line)
        except json.JSONDecodeError:
            continue
        if "word" not in entry or entry.get("pos") not in {"noun", "verb", "adj", "adv"}:
            continue
        glosses = [
            gl(g) for sense in entry.get("senses", []) for g in sense.get("glosses", [])
        ]
        records.append(rec(entry["word"], entry["pos"], glosses))
    return records


def audit(records: list[dict]) -> None:
    """Every gloss token matching a headword must be an intended link."""
    headwords = {r["lemma"] for r in records}
    seen = set()
    for record in records:
        for gloss in record["glosses"]:
            tokens = gloss.get("lemmatized")
            if tokens is None:
                tokens = [
                    t.lower()
                    for t in gloss["raw"].replace(".", " .").replace(",", " ,").split()
                ]
            for token in tokens:
                if len(token) <= 1 or token == record["lemma"]:
                    continue
                if token in headwords:
                    seen.add(token)
                    assert token in INTENDED_LINKS, (
                        f"unintended definition link: {token!r} in gloss of "
                        f"{record['lemma']!r}"
                    )
    missing = set(INTENDED_LINKS) - seen
    assert not missing, f"intended links never used: {sorted(missing)}"


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    normalized = build_normalized() + build_distractors()
    kaikki_lines = build_kaikki_lines()
    kaikki_valid = 9

    total = len(normalized) + kaikki_valid
    assert total == RECORD_TARGET, f"expected {RECORD_TARGET} records, got {total}"
    audit(normalized + kaikki_as_records(kaikki_lines))

    lines = [json.dumps(r, ensure_ascii=False) for r in normalized]
    # planted skips: malformed JSON and an out-of-inventory POS
    lines.insert(40, '{"lemma": "torn", "pos":')
    lines.insert(170, json.dumps(rec("hmm", "X", [gl("An interjection.")])))

    (OUT / "records.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")
    (OUT / "extra.kaikki.jsonl").write_text(
        "\n".join(kaikki_lines) + "\n", encoding="utf-8"
    )
    (OUT / "relations.morphynet.tsv").write_text(
        "\n".join(build_morphynet_lines()) + "\n", encoding="utf-8"
    )
    (OUT / "stop_tokens.txt").write_text(
        "\n".join(
            ["# function words excluded from definition matching",
             "the", "a", "an", "of", "to", "be", "being", "who", "one",
             "not", "in", "on", "as", "by", "for", "that"]
        )
        + "\n",
        encoding="utf-8",
    )
    (OUT / "config.toml").write_text(
        "\n".join(
            [
                'language = "en"',
                'normalized = ["records.jsonl"]',
                'kaikki = ["extra.kaikki.jsonl"]',
                'morphynet = ["relations.morphynet.tsv"]',
                'stop_token_list = "stop_tokens.txt"',
            ]
        )
        + "\n",
        encoding="utf-8",
    )
    print(f"wrote {total} records ({len(normalized)} normalized, {kaikki_valid} kaikki)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
