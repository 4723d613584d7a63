#!/usr/bin/env python3
"""Independent oracle for the golden feature matrix.

Recomputes the documented feature definitions (cues, 55 stylistic,
dictionary percentages, readability) from scratch in Python, reading the
same asset files the library bundles. Run once to (re)generate
crates/cli/tests/data/golden/expected_matrix.csv, then review the diff.

Usage: python3 tools/golden/oracle_features.py
"""

import json
import math
import os

ROOT = os.path.join(os.path.dirname(__file__), "..", "..")
ASSETS = os.path.join(ROOT, "crates", "core", "assets")
GOLDEN = os.path.join(ROOT, "crates", "cli", "tests", "data", "golden")

PUNCT_MARKS = [".", ",", "!", "?", ";", ":", "'", '"', "-", "(", ")", "_"]


def load_lexicon():
    words, pos = set(), {}
    with open(os.path.join(ASSETS, "function_words.txt")) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "\t" in line:
                w, t = line.split("\t")
                w = w.strip().lower()
                pos[w] = t.strip()
            else:
                w = line.lower()
            words.add(w)
    return words, pos


def load_abbreviations():
    out = set()
    with open(os.path.join(ASSETS, "abbreviations.txt")) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                out.add(line.lower())
    return out


def load_contractions():
    out = []
    with open(os.path.join(ASSETS, "contractions.txt")) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                out.append(line)
    out.sort(key=len, reverse=True)
    return out


def load_dictionary():
    cats = {}
    current = None
    with open(os.path.join(ASSETS, "demo_categories.dict")) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                current = line[1:-1].strip()
                cats[current] = {"literals": set(), "stems": []}
            else:
                pat = line.lower()
                if pat.endswith("*"):
                    cats[current]["stems"].append(pat[:-1])
                else:
                    cats[current]["literals"].add(pat)
    return cats


LEX_WORDS, LEX_POS = load_lexicon()
ABBREV = load_abbreviations()
CLITICS = load_contractions()
DICT = load_dictionary()


def segment_sentences(text):
    chars = list(text)
    n = len(chars)
    boundaries = []
    i = 0
    while i < n:
        c = chars[i]
        if c == "\n":
            boundaries.append(i)
            i += 1
            continue
        if c in ".!?":
            run_start = i
            j = i
            while j + 1 < n and chars[j + 1] in ".!?":
                j += 1
            next_is_break = j + 1 >= n or chars[j + 1].isspace()
            split = next_is_break
            if split and c == "." and j == run_start:
                word = preceding_word(chars, run_start)
                if word:
                    single_initial = len(word) == 1 and word.isupper()
                    if single_initial or (word + ".").lower() in ABBREV:
                        split = False
            if split:
                boundaries.append(j + 1)
            i = j + 1
            continue
        i += 1
    boundaries.append(n)
    spans = []
    start = 0
    for end in boundaries:
        if end > start:
            seg = text[start:end]
            trimmed = seg.strip()
            if trimmed:
                lead = len(seg) - len(seg.lstrip())
                trail = len(seg) - len(seg.rstrip())
                spans.append((start + lead, end - trail))
        start = max(start, end)
    return spans


def preceding_word(chars, idx):
    rev = []
    k = idx
    while k > 0:
        c = chars[k - 1]
        if c.isalpha() or (c == "." and rev):
            rev.append(c)
            k -= 1
        else:
            break
    return "".join(reversed(rev))


def is_punct_char(c):
    return not c.isalnum() and not c.isspace()


def is_punct_token(s):
    return len(s) > 0 and all(is_punct_char(c) for c in s)


def split_word(word, out):
    lower = word.lower()
    for suffix in CLITICS:
        if len(lower) > len(suffix) and lower.endswith(suffix):
            split_word(word[: -len(suffix)], out)
            out.append(word[-len(suffix):])
            return
    out.append(word)


def push_punct_run(chars, out):
    i = 0
    while i < len(chars):
        j = i + 1
        while j < len(chars) and chars[j] == chars[i]:
            j += 1
        out.append("".join(chars[i:j]))
        i = j


def tokenize_words(sentence):
    tokens = []
    for chunk in sentence.split():
        chars = list(chunk)
        start = 0
        while start < len(chars) and is_punct_char(chars[start]):
            start += 1
        end = len(chars)
        while end > start and is_punct_char(chars[end - 1]):
            end -= 1
        push_punct_run(chars[:start], tokens)
        if end > start:
            split_word("".join(chars[start:end]), tokens)
        push_punct_run(chars[end:], tokens)
    return tokens


SUFFIX_RULES = [
    ("ly", 3, "RB"), ("ing", 5, "VBG"), ("ed", 4, "VBD"), ("ful", 4, "JJ"),
    ("ous", 4, "JJ"), ("ive", 4, "JJ"), ("able", 5, "JJ"), ("ible", 5, "JJ"),
    ("less", 5, "JJ"), ("ish", 5, "JJ"), ("tion", 5, "NN"), ("sion", 5, "NN"),
    ("ment", 5, "NN"), ("ness", 5, "NN"), ("ity", 5, "NN"), ("ize", 4, "VB"),
    ("ise", 4, "VB"), ("est", 5, "JJS"),
]


def looks_numeric(surface):
    digits = 0
    for c in surface:
        if c.isdigit() and ord(c) < 128:
            digits += 1
        elif c not in ".,%$+-":
            return False
    return digits > 0


def punct_tag(surface):
    first = surface[0] if surface else "."
    if first in ".!?…":
        return "."
    if first == ",":
        return ","
    if first in ";:":
        return ":"
    if first in "([{":
        return "-LRB-"
    if first in ")]}":
        return "-RRB-"
    if first in "\"'`“”‘’":
        return "''"
    if first in "-–—":
        return "HYPH"
    if first == "$":
        return "$"
    if first == "#":
        return "#"
    if first in "%+=<>^~|*&/\\":
        return "SYM"
    return "NFP"


def tag_open_class(surface, lower, mid_sentence):
    if looks_numeric(surface):
        return "CD"
    if "@" in surface or lower.startswith("http") or lower.startswith("www."):
        return "ADD"
    if mid_sentence and surface[:1].isupper():
        return "NNP"
    for suffix, min_len, tag in SUFFIX_RULES:
        if len(lower) >= min_len and lower.endswith(suffix):
            return tag
    if (len(lower) >= 4 and lower.endswith("s")
            and not lower.endswith("ss") and not lower.endswith("us")
            and not lower.endswith("is")):
        return "NNS"
    return "NN"


def process(text):
    """Tokenized document: list of sentences of (surface, lower, pos, is_fw, is_punct)."""
    sentences = []
    for (s, e) in segment_sentences(text):
        raw = tokenize_words(text[s:e])
        if not raw:
            continue
        toks = []
        word_index = 0
        for surface in raw:
            lower = surface.lower()
            punct = is_punct_token(surface)
            if punct:
                pos = punct_tag(surface)
            elif lower in LEX_POS:
                pos = LEX_POS[lower]
            else:
                pos = tag_open_class(surface, lower, word_index > 0)
            if not punct:
                word_index += 1
            is_fw = (not punct) and lower in LEX_WORDS
            toks.append((surface, lower, pos, is_fw, punct))
        sentences.append(toks)
    return sentences


def count_syllables(word):
    letters = [c.lower() for c in word if c.isalpha()]
    if not letters:
        return 0
    vowels = set("aeiouy")
    groups, in_group = 0, False
    for c in letters:
        if c in vowels:
            if not in_group:
                groups += 1
                in_group = True
        else:
            in_group = False
    if (groups > 1 and letters[-1] == "e" and len(letters) >= 2
            and letters[-2] != "l" and letters[-2] not in vowels):
        groups -= 1
    return max(groups, 1)


def dict_match_count(category, lowers):
    pats = DICT[category]
    count = 0
    for w in lowers:
        if w in pats["literals"] or any(w.startswith(s) for s in pats["stems"]):
            count += 1
    return count


def readability(chars, words, sentences, poly, complex_words, index):
    if words == 0 or sentences == 0:
        return None
    if index == "ari":
        return 4.71 * (chars / words) + 0.5 * (words / sentences) - 21.43
    if index == "smog":
        return 1.0430 * math.sqrt(poly * 30.0 / sentences) + 3.1291
    return 0.4 * ((words / sentences) + 100.0 * (complex_words / words))


def cue_features(text, doc):
    words = [t for s in doc for t in s if not t[4]]
    puncts = sum(1 for s in doc for t in s if t[4])
    w, s = len(words), len(doc)
    verbs = sum(1 for t in words if t[2] in ("VB", "VBD", "VBG", "VBN", "VBP", "VBZ"))
    nouns = sum(1 for t in words if t[2] in ("NN", "NNS", "NNP", "NNPS"))
    adjs = sum(1 for t in words if t[2] in ("JJ", "JJR", "JJS"))
    advs = sum(1 for t in words if t[2] in ("RB", "RBR", "RBS"))
    modals = sum(1 for t in words if t[2] == "MD")
    fw = sum(1 for t in words if t[3])
    selfr = sum(1 for t in words if t[1] in ("i", "me"))
    groupr = sum(1 for t in words if t[1] in ("we", "us"))
    alnum = sum(sum(1 for c in t[0] if c.isalnum()) for t in words)
    poly = sum(1 for t in words if count_syllables(t[0]) >= 3)
    distinct = len({t[1] for t in words})
    content = [t for t in words if not t[3]]
    lowers = [t[1] for t in words]

    fv = {}
    fv["words"] = float(w)
    fv["verbs"] = float(verbs)
    fv["sens"] = float(s)
    fv["modi"] = float(adjs + advs)
    per_sen = lambda num: num / s if s else None
    fv["sen_len"] = per_sen(float(w))
    fv["paus"] = per_sen(float(puncts))
    fv["redun"] = per_sen(float(fw))
    per_word = lambda num: num / w if w else None
    fv["word_len"] = per_word(float(len(text)))
    fv["modal"] = per_word(float(modals))
    fv["self_ref"] = per_word(float(selfr))
    fv["group_ref"] = per_word(float(groupr))
    fv["lex_div"] = per_word(float(distinct))
    fv["emot"] = (adjs + advs) / (nouns + verbs) if nouns + verbs else None
    fv["content_div"] = (len({t[1] for t in content}) / len(content)) if content else None
    dcue = lambda cats: (sum(dict_match_count(c, lowers) for c in cats) / w) if w else None
    fv["cert"] = dcue(["certain"])
    fv["spatio_temp"] = dcue(["space", "time"])
    fv["percep_info"] = dcue(["percep"])
    fv["pos_affect"] = dcue(["posemo"])
    fv["neg_affect"] = dcue(["negemo"])
    fv["ari"] = readability(alnum, w, s, poly, poly, "ari")
    fv["smog"] = readability(alnum, w, s, poly, poly, "smog")
    fv["fog"] = readability(alnum, w, s, poly, poly, "fog")
    return fv


def stylistic_features(text):
    fv = {}
    total = len(text)
    fv["len_text"] = float(total)
    tokens = tokenize_words(text)
    words = [t for t in tokens if not is_punct_token(t)]
    fv["len_words"] = float(len(words))
    if words:
        fv["avg_len"] = sum(len(wd) for wd in words) / len(words)
        counts = {}
        for wd in words:
            counts[wd.lower()] = counts.get(wd.lower(), 0) + 1
        hapax = sum(1 for c in counts.values() if c == 1)
        fv["richness"] = hapax / len(words)
    else:
        fv["avg_len"] = None
        fv["richness"] = None
    fv["num_short_w"] = float(sum(1 for wd in words if len(wd) <= 3))
    if total:
        fv["per_digit"] = sum(1 for c in text if c.isdigit() and ord(c) < 128) / total
        fv["per_cap"] = sum(1 for c in text if c.isupper()) / total
    else:
        fv["per_digit"] = None
        fv["per_cap"] = None

    letters = [0] * 26
    digits = [0] * 10
    for c in text:
        o = ord(c)
        if 65 <= o <= 90:
            letters[o - 65] += 1
        elif 97 <= o <= 122:
            letters[o - 97] += 1
        elif 48 <= o <= 57:
            digits[o - 48] += 1
    tl = sum(letters)
    for i in range(26):
        fv[f"f_{chr(97 + i)}"] = letters[i] / tl if tl else None
    td = sum(digits)
    for i in range(10):
        fv[f"f_{i}"] = digits[i] / td if td else None
    mark_counts = [text.count(m) for m in PUNCT_MARKS]
    tm = sum(mark_counts)
    for i, c in enumerate(mark_counts):
        fv[f"f_e_{i}"] = c / tm if tm else None
    return fv


def dictionary_features(doc):
    words = [t[1] for s in doc for t in s if not t[4]]
    w = len(words)
    s = len(doc)
    fv = {}
    for cat in sorted(DICT):
        fv[cat] = (100.0 * dict_match_count(cat, words) / w) if w else None
    fv["WC"] = float(w)
    fv["WPS"] = (w / s) if s else None
    return fv


def fmt(v):
    if v is None:
        return ""
    return repr(v)


def main():
    docs = []
    with open(os.path.join(GOLDEN, "corpus.jsonl")) as fh:
        for line in fh:
            if line.strip():
                docs.append(json.loads(line))

    rows = []
    names = None
    for d in docs:
        doc = process(d["text"])
        fv = {}
        fv.update(cue_features(d["text"], doc))
        fv.update(stylistic_features(d["text"]))
        fv.update(dictionary_features(doc))
        if names is None:
            names = sorted(fv)
        rows.append((d["id"], d["label"], d["domain"], fv))

    out_path = os.path.join(GOLDEN, "expected_matrix.csv")
    with open(out_path, "w") as out:
        out.write("doc_id,label,domain," + ",".join(names) + "\n")
        for doc_id, label, domain, fv in rows:
            cells = [fmt(fv[n]) for n in names]
            out.write(f"{doc_id},{label},{domain}," + ",".join(cells) + "\n")
    print(f"wrote {out_path}: {len(rows)} rows x {len(names)} features")


if __name__ == "__main__":
    main()
