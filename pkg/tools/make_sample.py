#!/usr/bin/env python3
"""Generate the bundled sample corpus: data/sample/eng-sample.1gram.tsv.gz.

Real multi-hundred-GB 1-gram exports cannot ship with the repository,
so the test corpus is generated: an embedded table of high-frequency
English words with realistic relative frequencies, a morphologically
composed Zipf tail, smooth per-word drift across 1800-2008, and a
sprinkling of non-word and malformed lines for pipeline hygiene.

Output is reproducible on a given Python build (fixed seed, zeroed
gzip mtime); libm differences can shift a few rounded counts across
platforms, so the committed file is the reference and tests never
regenerate it.

Usage:
    python tools/make_sample.py [--words N] [--out PATH]

Defaults produce the committed sample: 5.8M lines over 209 years,
about 16 MB gzipped, per-year totals between 2.7M and 9.8M tokens.
"""

from __future__ import annotations

import argparse
import gzip
import math
import random
from pathlib import Path

SEED = 20080131
YEARS = range(1800, 2009)

# Relative token frequencies for the high-frequency head of English,
# consistent in ordering and magnitude with published corpus counts.
# Values are fractions of all word tokens; the content tail below
# receives the remaining mass.
HEAD_FREQUENCIES: dict[str, float] = {
    "the": 0.0714, "of": 0.0416, "and": 0.0304, "to": 0.0260, "a": 0.0233,
    "in": 0.0227, "is": 0.0113, "it": 0.0089, "that": 0.0087, "he": 0.0081,
    "was": 0.0079, "for": 0.0072, "as": 0.0071, "I": 0.0068, "with": 0.0065,
    "on": 0.0063, "his": 0.0059, "by": 0.0051, "had": 0.0050, "at": 0.0047,
    "but": 0.0047, "not": 0.0046, "be": 0.0044, "they": 0.0044, "from": 0.0043,
    "this": 0.0041, "or": 0.0040, "have": 0.0037, "one": 0.0037, "were": 0.0036,
    "which": 0.0034, "she": 0.0033, "you": 0.0032, "all": 0.0030, "her": 0.0029,
    "would": 0.0027, "there": 0.0025, "their": 0.0025, "we": 0.0026, "him": 0.0025,
    "been": 0.0024, "has": 0.0024, "when": 0.0019, "who": 0.0019, "will": 0.0018,
    "no": 0.0018, "more": 0.0018, "if": 0.0017, "out": 0.0017, "so": 0.0016,
    "said": 0.0024, "up": 0.0015, "are": 0.0048, "an": 0.0037, "them": 0.0015,
    "what": 0.0017, "can": 0.0017, "about": 0.0014, "into": 0.0014, "than": 0.0013,
    "only": 0.0012, "other": 0.0012, "time": 0.0012, "some": 0.0012, "could": 0.0012,
    "these": 0.0011, "two": 0.0011, "may": 0.0011, "then": 0.0011, "do": 0.0011,
    "first": 0.0010, "any": 0.0010, "my": 0.0016, "now": 0.0010, "such": 0.0010,
    "like": 0.0009, "our": 0.0009, "over": 0.0009, "man": 0.0009, "me": 0.0012,
    "even": 0.0008, "most": 0.0008, "made": 0.0008, "after": 0.0008, "also": 0.0008,
    "did": 0.0008, "many": 0.0008, "before": 0.0007, "must": 0.0007, "through": 0.0007,
    "years": 0.0007, "where": 0.0007, "much": 0.0007, "your": 0.0012, "way": 0.0006,
    "well": 0.0006, "down": 0.0006, "should": 0.0006, "because": 0.0006, "each": 0.0006,
    "just": 0.0005, "those": 0.0005, "people": 0.0005, "how": 0.0007, "too": 0.0005,
    "little": 0.0005, "state": 0.0005, "good": 0.0005, "very": 0.0007, "make": 0.0005,
    "world": 0.0004, "still": 0.0004, "own": 0.0004, "see": 0.0005, "men": 0.0005,
    "work": 0.0004, "long": 0.0004, "here": 0.0004, "get": 0.0004, "both": 0.0004,
    "between": 0.0004, "life": 0.0004, "being": 0.0004, "under": 0.0004, "never": 0.0004,
    "day": 0.0004, "same": 0.0004, "another": 0.0004, "know": 0.0004, "while": 0.0004,
    "last": 0.0004, "might": 0.0004, "us": 0.0005, "great": 0.0004, "old": 0.0004,
    "year": 0.0004, "off": 0.0003, "come": 0.0003, "since": 0.0003, "against": 0.0003,
    "go": 0.0003, "came": 0.0003, "right": 0.0003, "used": 0.0003, "take": 0.0003,
    "three": 0.0003, "states": 0.0003, "himself": 0.0003, "few": 0.0003, "house": 0.0003,
    "use": 0.0003, "during": 0.0003, "without": 0.0003, "again": 0.0003, "place": 0.0003,
    "american": 0.0003, "around": 0.0003, "however": 0.0003, "home": 0.0002, "small": 0.0002,
    "found": 0.0002, "mrs": 0.0002, "thought": 0.0002, "went": 0.0002, "say": 0.0002,
    "part": 0.0002, "once": 0.0002, "general": 0.0002, "high": 0.0002, "upon": 0.0004,
    "school": 0.0002, "every": 0.0002, "don't": 0.0002, "does": 0.0002, "got": 0.0002,
    "united": 0.0002, "left": 0.0002, "number": 0.0002, "course": 0.0002, "war": 0.0002,
    "until": 0.0002, "always": 0.0002, "away": 0.0002, "something": 0.0002, "fact": 0.0002,
    "though": 0.0002, "water": 0.0002, "less": 0.0002, "public": 0.0002, "put": 0.0002,
    "thing": 0.0002, "almost": 0.0002, "hand": 0.0002, "enough": 0.0002, "far": 0.0002,
    "it's": 0.0001, "took": 0.0001, "head": 0.0001, "yet": 0.0002, "government": 0.0002,
    "system": 0.0002, "better": 0.0001, "set": 0.0001, "told": 0.0001, "nothing": 0.0001,
    "night": 0.0001, "end": 0.0001, "why": 0.0002, "called": 0.0001, "didn't": 0.0001,
    "eyes": 0.0001, "find": 0.0001, "going": 0.0001, "look": 0.0001, "asked": 0.0001,
    "later": 0.0001, "knew": 0.0001, "point": 0.0001, "next": 0.0001, "city": 0.0001,
}

# Content vocabulary machinery: real roots composed with common affixes
# produce a word-shaped Zipf tail with a realistic length distribution.
ROOTS = """
act age aid aim air arm art ash atom back band bank base battle beam bear
beat bed bell belt bench bend bird birth bite blade blame blast blend block
blood bloom board boat body bolt bond bone book boot border bottle bottom
bound bowl box brain branch brand bread break breath brick bridge brief
broad brother brush build burn burst bush butter button cabin cake call camp
canal cap car card care carry cart case cast catch cause cell center chain
chair chalk chance change charge charm chart chase check cheek cheer cheese
chest chief child chin choice circle claim class claw clay clean clear clerk
cliff climb clock cloth cloud club coal coast coat code coin cold collar
color column comb comfort command comment common company compare compete
complete concern condition conduct connect consider construct contact
contain content contest context contract control convert cook copper copy
cord core corn corner cost cotton count country county couple courage court
cover craft crash cream credit crew crime crop cross crowd crown crush cry
culture cup current curve custom cut cycle dance danger dark date deal death
debate debt decide deck declare deep defend degree deliver demand depend
depth design desire desk detail develop device differ dinner direct dirt
discuss distance district divide doctor document dog door double doubt dozen
draft drain drama draw dream dress drift drill drink drive drop drum dry
dust duty earth ease east edge effect effort elect element employ empty
engine enter equal escape estate event evidence exact example exchange
excite exercise exist expand expect expense experiment expert explain
express extend face factor fail faith fall family fancy farm fashion fast
father fault favor fear feature feed feel fence field fight figure file fill
film final finance finger finish fire firm fish fit fix flame flash flat
flavor flight float flood floor flow flower fold follow food foot force
forest forget form fortune forward frame free freeze fresh friend front
fruit fuel function fund future gain game garden gate gather gear gentle
gift glass glory gold govern grace grade grain grand grant grass green greet
ground group grow growth guard guess guest guide gun habit hall hand handle
hang harbor hard harm harvest haste hate head health heart heat heavy help
hill hint hire history hold hole hollow honor hope horn horse host hour
human hunt hurry ice idea image improve inch income increase indeed industry
influence inform insect inside instance instant instead insure interest
invent iron island issue item job join joint journey joy judge juice jump
justice keep key kick kind king kiss knee knife knock knot labor lack lake
land language large last laugh launch law lead leaf league lean learn
leather leave lecture left leg lend length lesson letter level liberty
library lift light limit line link lip list listen live load loan local lock
lodge logic look loose lord loss love lower luck lunch machine mail main
major manage manner map march margin mark market marry mass master match
material matter meal mean measure meat medal meet member memory mention
merit metal meter method middle might mile milk mill mind mine minister
minute mirror miss mission mister mix model modern moment money month moon
moral morning mother motion motor mount mouth move muscle music nail name
nation nature neck need nerve nest net news night noise north note notice
number object observe occasion ocean offer office oil open operate opinion
order organ origin ornament outline owner pack page pain paint pair palace
pan paper parcel parent park part party pass past paste path pattern pause
pay peace pen pencil people perfect perform period person phrase pick
picture piece pig pile pin pipe pitch place plan plane plant plate play
plead please pleasure plenty plot point poison police policy polish politic
pool poor popular port position possess post pot pound powder power practice
praise present press price pride print prison prize problem process produce
product profit program progress project promise proof proper property
propose protect protest prove provide public pull pump punish pupil purchase
pure purpose push quality quarter question quick quiet race radio rail rain
raise range rank rate reach read reason receive record reduce reflect reform
refuse regard region register regret regular relate release relief religion
remain remark remember remove rent repair repeat replace report represent
request require rescue research reserve resist resolve respect rest result
return review reward rhythm rice rich ride right ring rise risk river road
rock roll roof room root rope rough round route row rub rule run rush sad
safe sail sale salt sample sand save scale scene scheme school science score
screen sea seal search season seat second secret section secure seed seek
seem seize select self sell send sense sentence separate series serve
service settle shade shadow shake shape share sharp shelf shell shelter
shield shift shine ship shirt shock shoe shoot shop shore short shot show
side sign signal silk silver simple sing single sister sit size skill skin
skirt sky slave sleep slide slip slope smell smile smoke smooth snake snow
social society soft soil soldier solid solve son song sort sound source
south space speak special speed spell spend spirit split sport spot spread
spring square staff stage stair stamp stand standard star start state
station stay steam steel stem step stick stiff stock stomach stone stop
store storm story strange stream street stress stretch strike string strip
stroke strong structure struggle student study stuff subject substance
succeed sudden sugar suggest suit summer sun supply support suppose surface
surprise surround survey swear sweep sweet swim swing sword symbol system
table tail take talk task taste tax teach team tear tell tend term test
text theory thick thin thing think thought thread threat throat throw thumb
thunder ticket tide tie tight till time tin tip tire title today toe
together tone tongue tool tooth top total touch tour toward tower town track
trade tradition traffic train transfer transport travel treasure treat tree
trial tribe trick trip trouble truck trust truth tube turn twist type uncle
union unit universe urge use valley value vapor variety vehicle venture
verse vessel victory view village visit voice volume vote voyage wage wait
walk wall wander want warm warn wash waste watch water wave wealth weapon
wear weather week weight welcome west wheat wheel while whip whisper white
whole wide wife wild will win wind window wine wing winter wire wise wish
witness woman wonder wood wool word work worry worth wound wrap wreck write
wrong yard yield young
""".split()

PREFIXES = [
    "", "", "", "", "", "", "", "", "", "", "", "", "re", "un", "inter",
    "over", "under", "pre", "post", "anti", "sub", "super", "trans", "non",
    "counter", "out", "dis", "mis", "co", "multi", "semi",
]
SUFFIXES = [
    "", "", "", "", "s", "s", "s", "ed", "ed", "ing", "ing", "er", "ers",
    "ly", "tion", "tions", "ment", "ments", "ness", "ity", "ism", "ist",
    "ists", "al", "ally", "able", "ive", "ous", "ful", "less", "ize",
    "ized", "ization", "ation", "ature",
]

REJECT_TOKENS = ["1900", "3.14", "x_NOUN", "§", "--", "12th", "U.S."]


def build_vocabulary(rng: random.Random, target: int) -> list[tuple[str, float]]:
    """(token, base relative frequency) pairs, head plus Zipf tail."""
    head = list(HEAD_FREQUENCIES.items())
    head_mass = sum(f for _, f in head)

    tail_words: list[str] = []
    seen = set(HEAD_FREQUENCIES)
    while len(tail_words) < target - len(head):
        word = rng.choice(PREFIXES) + rng.choice(ROOTS) + rng.choice(SUFFIXES)
        if word not in seen and 2 <= len(word) <= 20:
            seen.add(word)
            tail_words.append(word)

    # Zipf's law of abbreviation: frequent words tend to be short, so
    # rank correlates with length (noisily) before assigning the tail.
    tail_words.sort(key=lambda w: (len(w) + rng.gauss(0.0, 5.5), w))
    exponent = 1.05
    weights = [1.0 / (rank + 20) ** exponent for rank in range(len(tail_words))]
    scale = (1.0 - head_mass) / sum(weights)
    tail = [(w, weight * scale) for w, weight in zip(tail_words, weights)]
    return head + tail


def year_total(year: int, rng_hash: int) -> int:
    """Word tokens printed for one year; grows through time, always > 1e6."""
    base = 4_000_000 + 26_000 * (year - 1800)
    jitter = ((rng_hash * 2654435761 + year * 40503) % 2000001) - 1_000_000
    return base + jitter // 25  # +-40k


def length_trend(year: int) -> float:
    """Shape of the long-word boom: flat 19th c., rise to 1995, then dip."""
    if year <= 1900:
        return 0.0
    if year <= 1995:
        return (year - 1900) / 95.0
    return 1.0 - 0.35 * (year - 1995) / 13.0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--words", type=int, default=40000, help="vocabulary size")
    parser.add_argument(
        "--out",
        default=str(Path(__file__).resolve().parent.parent / "data" / "sample"
                    / "eng-sample.1gram.tsv.gz"),
    )
    args = parser.parse_args()

    rng = random.Random(SEED)
    vocabulary = build_vocabulary(rng, args.words)

    # Per-word dynamics parameters, fixed up front for determinism.
    dynamics = []
    for index, (word, base_p) in enumerate(vocabulary):
        drift_amp = rng.uniform(0.0, 0.32)
        drift_phase = rng.uniform(0.0, 2 * math.pi)
        drift_period = rng.uniform(60.0, 260.0)
        if index < len(HEAD_FREQUENCIES) or rng.random() < 0.25:
            entry_year = 1700  # present from the start
        else:
            entry_year = rng.randint(1760, 2004)
        dynamics.append((word, base_p, drift_amp, drift_phase, drift_period, entry_year))
    dynamics.sort(key=lambda item: item[0])

    totals = {year: year_total(year, SEED) for year in YEARS}
    beta = 0.020  # coupling of the length trend to word length

    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    lines = 0
    weighted_letters = {year: 0 for year in YEARS}
    written_tokens = {year: 0 for year in YEARS}

    with open(out_path, "wb") as raw:
        # No embedded filename and zeroed mtime: bytes depend only on content.
        with gzip.GzipFile(fileobj=raw, mode="wb", filename="", mtime=0) as gz:
            for word, base_p, amp, phase, period, entry_year in dynamics:
                word_len = len(word)
                rows = []
                for year in YEARS:
                    if year < entry_year:
                        continue
                    ramp = min(1.0, (year - entry_year + 1) / 20.0)
                    drift = math.exp(amp * math.sin(phase + 2 * math.pi * year / period))
                    trend = math.exp(beta * length_trend(year) * (word_len - 4.5))
                    count = int(base_p * ramp * drift * trend * totals[year] + 0.5)
                    if count < 1:
                        continue
                    volumes = max(1, count // 997)
                    rows.append(f"{word}\t{year}\t{count}\t{volumes}\n")
                    weighted_letters[year] += count * word_len
                    written_tokens[year] += count
                if rows:
                    gz.write("".join(rows).encode("ascii"))
                    lines += len(rows)
            # Corpus hygiene exercise: non-words and a few malformed lines.
            junk = []
            for token in REJECT_TOKENS:
                junk.append(f"{token}\t1900\t1234\t12\n")
                junk.append(f"{token}\t1950\t2345\t23\n")
            junk.append("broken line without tabs\n")
            junk.append("word\tyear\tcount\tvolumes\n")
            junk.append("trailing\t2000\t5\n")  # 3-column variant, accepted
            gz.write("".join(junk).encode("utf-8"))
            lines += len(junk)

    means = [weighted_letters[y] / written_tokens[y] for y in YEARS]
    size_mb = out_path.stat().st_size / 1e6
    print(f"wrote {out_path} ({size_mb:.1f} MB gz, {lines} lines)")
    print(f"mean length range {min(means):.3f}..{max(means):.3f}")
    print(f"year totals {min(written_tokens.values())}..{max(written_tokens.values())}")
    if not (4.2 <= min(means) and max(means) <= 5.9):
        raise SystemExit("calibration failure: mean length leaves [4.2, 5.9]")
    if min(written_tokens.values()) <= 1_000_000:
        raise SystemExit("calibration failure: a year total is below 1e6 tokens")


if __name__ == "__main__":
    main()
