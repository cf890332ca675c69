"""Extracts the printed singular vectors for the p(1,0,0) families into JSON."""
import json
import re
import sys

FAMILIES = [
    ("x1*w1+w2", "x_1\\omega_1+\\omega_2$. Then"),
    ("x1*w1+w3", "x_1\\omega_1+\\omega_3$. Then"),
    ("x1*w1+2*w2", "x_1\\omega_1+2\\omega_2$.  Then"),
    ("x1*w1+w2+w3", "x_1\\omega_1+\\omega_2+\\omega_3$. Then"),
    ("x1*w1+2*w3", "x_1\\omega_1+2\\omega_3$. Then"),
]
ITEM = "\\item Suppose $\\lambda="


def clean(expr):
    for tok in ["\\\\\\notag", "\\notag", "\\left(", "\\right)", "\\left.", "\\right.", "&&", "&", "\\\\"]:
        expr = expr.replace(tok, " ")
    expr = re.sub(r"\\cdot\s*v_\{?\\lambda\}?", " ", expr)
    expr = re.sub(r"\s+", " ", expr).strip()
    while expr.startswith("(") and expr.endswith(")") and balanced(expr[1:-1]):
        expr = expr[1:-1].strip()
    return expr


def balanced(s):
    d = 0
    for c in s:
        d += c == "("
        d -= c == ")"
        if d < 0:
            return False
    return d == 0


def main(source, out):
    text = open(source, encoding="utf-8").read()
    start = text.index("\\begin{theorem}\\label{leBranchingExplicit(x_1,0,0),(1,a,b)}")
    end = text.index("\\end{theorem}", start)
    body = text[start:end]
    result = []
    for i, (name, marker) in enumerate(FAMILIES):
        a = body.index(ITEM + marker)
        b = body.index(ITEM + FAMILIES[i + 1][1]) if i + 1 < len(FAMILIES) else len(body)
        block = body[a:b]
        block = block[: re.search(r"are\s+linearly", block).start()]
        parts = re.split(r"v_\{\\lambda, ?(\d)\}\s*&:=&", block)
        vectors = []
        for k in range(1, len(parts), 2):
            expr = parts[k + 1]
            expr = expr.replace("\\end{eqnarray}", " ").replace("\\begin{eqnarray}", " ")
            vectors.append({"index": int(parts[k]), "latex": clean(expr)})
        result.append({"lambda": name, "vectors": vectors})
    json.dump({"parabolic": [1, 0, 0], "families": result}, open(out, "w"), indent=1)
    open(out, "a").write("\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
