#!/usr/bin/env python3
"""Compare the stored oracle fixtures with sympy's reduced Gröbner bases."""

import json
import subprocess
import sys
from pathlib import Path

import sympy

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "crates" / "core" / "tests" / "fixtures"
BINARY = ROOT / "target" / "release" / "sigbasis"


def generators(system):
    text = subprocess.run(
        [BINARY, "show", "--builtin", system], check=True, capture_output=True, text=True
    ).stdout
    header, _, body = text.partition("gens:\n")
    fields = dict(line.split(": ", 1) for line in header.splitlines())
    return fields, [line for line in body.splitlines() if line.strip()]


def check(system):
    fixture = json.loads((FIXTURES / f"{system}.json").read_text())
    fields, gens = generators(system)
    # Declared variables run from smallest to largest.
    names = list(reversed(fields["vars"].split()))
    symbols = sympy.symbols(names)
    local = dict(zip(names, symbols))

    def parse(text):
        return sympy.expand(sympy.sympify(text.replace("^", "**"), locals=local))

    order = {"degrevlex": "grevlex", "lex": "lex"}[fields["order"]]
    expected = sympy.groebner([parse(g) for g in gens], *symbols, order=order, domain="QQ")
    mine = {parse(g) for g in fixture["reduced_basis"]}
    theirs = {sympy.expand(g) for g in expected.exprs}
    ok = mine == theirs
    print(f"{system}: {len(mine)} elements, {'agree' if ok else 'DIFFER'}")
    return ok


def main():
    systems = sys.argv[1:] or ["mora", "katsura4", "katsura5", "katsura6"]
    results = [check(s) for s in systems]
    sys.exit(0 if all(results) else 1)


if __name__ == "__main__":
    main()
