#!/usr/bin/env python3
"""Regenerates the fixture corpus and the frozen oracle files.

Everything is derived from a fixed seed, so re-running reproduces the
checked-in tree byte for byte. Python's own tokenizer and ast module are
the ground truth for validity and function spans; bandit output is
recorded as an independent cross-check for the labeled scripts.

    python3 tests/fixtures/generate_fixtures.py [--no-bandit]
"""

import argparse
import ast
import io
import json
import random
import shutil
import subprocess
import sys
import tokenize
from fractions import Fraction
from pathlib import Path

import cwe_templates
import snippets

HERE = Path(__file__).resolve().parent
CORPUS = HERE / "corpus"
ORACLE = HERE / "oracle"
SEED = 20240611

GENERAL_SCRIPTS = 130
LABELED_PER_CLASS = 70


# --------------------------------------------------------------------------
# style scrambling

BINARY_OPS = {
    "+", "-", "*", "/", "//", "%", "**", "==", "!=", "<", ">", "<=", ">=", "=",
    "+=", "-=", "*=", "/=", "//=", "%=", "|", "&", "^", "<<", ">>", "|=", "&=",
}
OPENERS = {"(", "[", "{"}
CLOSERS = {")", "]", "}"}


class Policy:
    def __init__(self, rng, allow_tabs):
        self.indent = rng.choice(["  ", "   ", "    ", "    ", "    ", "        "])
        if allow_tabs and rng.random() < 0.08:
            self.indent = "\t"
        self.op_space = rng.choice(["keep", "keep", "none", "random"])
        self.comma_space = rng.choice(["keep", "keep", "none", "random"])
        self.bracket_space = rng.random() < 0.2
        self.kwarg_space = rng.random() < 0.15
        self.quotes = rng.choice(["keep", "single", "double", "random"])
        self.blank_top = rng.choice([0, 1, 1, 2, 2, 3, None])  # None: random per gap
        self.blank_inner = rng.choice([0, 1, 1, None])
        self.comment_gap = rng.choice(["  ", " ", "   "])
        self.trailing_ws = rng.random() < 0.15


def swap_quotes(tok, target):
    s = tok
    i = 0
    while i < len(s) and s[i] not in "'\"":
        i += 1
    prefix, body = s[:i], s[i:]
    if len(body) < 2 or body[:3] in ("'''", '"""'):
        return s
    q = body[0]
    inner = body[1:-1]
    if "'" in inner or '"' in inner or "\\" in inner:
        return s
    nq = "'" if target == "single" else '"'
    if nq == q:
        return s
    return prefix + nq + inner + nq


def scramble(src, rng, allow_tabs=True):
    """Re-lays out `src` with a random but consistent messy policy."""
    pol = Policy(rng, allow_tabs)
    toks = list(tokenize.generate_tokens(io.StringIO(src).readline))
    lines = src.splitlines(keepends=True)

    out = []
    depth = 0
    bracket = 0
    prev = None          # previous significant token on the current logical line
    line_start = True
    pending_blank = 0
    at_top_gap = False
    cur = []

    def flush_line():
        nonlocal cur
        text = "".join(cur)
        if pol.trailing_ws and text.strip() and not text.endswith("\\") and rng.random() < 0.3:
            text += " " * rng.randint(1, 3)
        out.append(text + "\n")
        cur = []

    for tok in toks:
        ttype, s, (srow, scol), (erow, ecol), _ = tok
        if ttype == tokenize.ENCODING or ttype == tokenize.ENDMARKER:
            continue
        if ttype == tokenize.INDENT:
            depth += 1
            continue
        if ttype == tokenize.DEDENT:
            depth -= 1
            continue
        if ttype == tokenize.NL and line_start and not cur:
            pending_blank += 1
            continue
        if ttype in (tokenize.NEWLINE, tokenize.NL):
            if ttype == tokenize.NL and bracket > 0:
                flush_line()
                continue
            if cur:
                flush_line()
            line_start = True
            prev = None
            continue

        if line_start:
            # blank lines before this logical line
            if out:
                if depth == 0 and s in ("def", "class", "@", "async"):
                    n = pol.blank_top if pol.blank_top is not None else rng.randint(0, 3)
                    if prev_line_decorator(out):
                        n = 0
                elif pending_blank:
                    n = pol.blank_inner if pol.blank_inner is not None else rng.randint(0, 2)
                    n = max(n, 0)
                else:
                    n = 0
                out.extend(["\n"] * n)
            pending_blank = 0
            cur.append(pol.indent * depth)
            line_start = False
        elif not cur:
            # continuation line inside brackets: keep the original column
            cur.append(" " * scol)
        else:
            cur.append(gap(pol, prev, tok, lines, rng, bracket))

        if ttype == tokenize.STRING:
            target = pol.quotes
            if target == "random":
                target = rng.choice(["single", "double", "keep"])
            if target != "keep":
                s = swap_quotes(s, target)
            if "\n" in s:
                # multi-line string: emit verbatim and continue on its last row
                parts = s.split("\n")
                cur.append(parts[0])
                for p in parts[1:-1]:
                    cur.append("\n" + p)
                cur.append("\n" + parts[-1])
                prev = tok
                continue
        if ttype == tokenize.COMMENT:
            cur.append(s)
            prev = tok
            continue
        if s in OPENERS:
            bracket += 1
        elif s in CLOSERS:
            bracket -= 1
        cur.append(s)
        prev = tok
    if cur:
        flush_line()
    text = "".join(out)
    return text


def prev_line_decorator(out):
    for line in reversed(out):
        if line.strip():
            return line.lstrip().startswith("@")
    return False


def gap(pol, prev, tok, lines, rng, bracket):
    """Whitespace between two tokens on one physical line."""
    ttype, s, (srow, scol), _, _ = tok
    if prev is None:
        return ""
    _, ps, _, (perow, pecol), _ = prev
    orig = ""
    if perow == srow:
        orig = lines[srow - 1][pecol:scol]
    if ttype == tokenize.COMMENT:
        return pol.comment_gap
    if orig.strip():
        return orig  # line continuation or similar: leave alone
    had_space = len(orig) > 0
    if ps in OPENERS and s not in CLOSERS:
        return " " if pol.bracket_space else ("" if not had_space else orig)
    if s in CLOSERS and ps not in OPENERS:
        return " " if pol.bracket_space else ("" if not had_space else orig)
    if ps == ",":
        if s in CLOSERS:
            return orig
        if pol.comma_space == "none":
            return ""
        if pol.comma_space == "random":
            return rng.choice(["", " "])
        return orig
    if s == "=" or ps == "=":
        if not had_space and bracket > 0:
            return " " if pol.kwarg_space else ""
    if s in BINARY_OPS or ps in BINARY_OPS:
        if not had_space:
            return orig
        if pol.op_space == "none":
            return ""
        if pol.op_space == "random":
            return rng.choice(["", " ", " "])
        return orig
    return orig


def check_same_program(canonical, messy, where):
    a = ast.dump(ast.parse(canonical))
    b = ast.dump(ast.parse(messy))
    if a != b:
        raise SystemExit(f"scrambling changed the program: {where}")


# --------------------------------------------------------------------------
# oracles

def function_spans(text):
    """Module-level defs and defs directly inside (nested) class bodies."""
    tree = ast.parse(text)
    spans = []

    def visit(body):
        for node in body:
            if isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
                spans.append({"name": node.name, "line": node.lineno, "end_line": node.end_lineno})
            elif isinstance(node, ast.ClassDef):
                visit(node.body)

    visit(tree.body)
    spans.sort(key=lambda s: s["line"])
    return spans


def asr_grid(rng):
    pairs = [(0, 1), (1, 1), (0, 100), (100, 100), (237, 500), (1, 3), (2, 3), (1, 7), (0, 10**6), (10**6, 10**6)]
    while len(pairs) < 1000:
        n = rng.choice([rng.randint(1, 50), rng.randint(1, 1000), rng.randint(1, 10**6)])
        nv = rng.choice([0, n, rng.randint(0, n)])
        pairs.append((nv, n))
    rows = []
    for nv, n in pairs:
        exact = float(Fraction(100 * nv, n))  # correctly rounded
        rows.append(f"{nv}\t{n}\t{exact.hex()}")
    return "# n_vulnerable\tn\texpected (hex float, correctly rounded 100*nv/n)\n" + "\n".join(rows) + "\n"


def run_bandit(paths):
    try:
        proc = subprocess.run(
            [sys.executable, "-m", "bandit", "-q", "-f", "json", *map(str, paths)],
            capture_output=True, text=True, check=False)
    except FileNotFoundError:
        return None
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError:
        return None
    found = {}
    for r in doc.get("results", []):
        rel = str(Path(r["filename"]).resolve().relative_to(CORPUS))
        found.setdefault(rel, set()).add(r["test_id"])
    return {k: sorted(v) for k, v in found.items()}


# --------------------------------------------------------------------------

def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--no-bandit", action="store_true")
    args = ap.parse_args()

    rng = random.Random(SEED)
    if CORPUS.exists():
        shutil.rmtree(CORPUS)
    ORACLE.mkdir(parents=True, exist_ok=True)

    labels = []
    spans = {}

    for i in range(GENERAL_SCRIPTS):
        canonical, topic = snippets.general_script(rng, i)
        messy = scramble(canonical, rng)
        check_same_program(canonical, messy, f"general {i}")
        rel = f"general/g{i:03d}_{topic}.py"
        write(CORPUS / rel, messy)
        spans[rel] = function_spans(messy)

    for cwe in cwe_templates.CWES:
        for label in ("vulnerable", "secure"):
            for i in range(LABELED_PER_CLASS):
                canonical, stem = cwe_templates.script(rng, cwe, label, i)
                messy = scramble(canonical, rng, allow_tabs=False)
                check_same_program(canonical, messy, f"cwe{cwe} {label} {i}")
                rel = f"cwe{cwe}/{label}/{label[0]}{i:03d}_{stem}.py"
                write(CORPUS / rel, messy)
                spans[rel] = function_spans(messy)
                labels.append((rel, cwe, label))

    write(ORACLE / "labels.tsv",
          "# path\tcwe\tlabel\n" + "".join(f"{p}\t{c}\t{l}\n" for p, c, l in labels))
    write(ORACLE / "ast_spans.json", json.dumps(spans, indent=1, sort_keys=True) + "\n")
    write(ORACLE / "asr_grid.tsv", asr_grid(random.Random(SEED + 1)))

    if not args.no_bandit:
        found = run_bandit([CORPUS / p for p, _, _ in labels])
        if found is None:
            print("bandit unavailable; oracle/bandit.json left unchanged", file=sys.stderr)
        else:
            write(ORACLE / "bandit.json", json.dumps(found, indent=1, sort_keys=True) + "\n")

    print(f"{GENERAL_SCRIPTS} general scripts, {len(labels)} labeled scripts")


if __name__ == "__main__":
    main()
