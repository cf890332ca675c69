"""Extracts the reference tables of a markdown source into data/reference/*.json."""
import json
import os
import re
import sys


def read(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def dump(obj, path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=1, ensure_ascii=False)
        f.write("\n")


def longtable(text, label):
    a = text.index("\\label{" + label + "}")
    b = text.index("\\end{longtable}", a)
    body = text[a:b]
    if "\\endhead" in body:
        body = body[body.index("\\endhead") + len("\\endhead"):]
    return body


def split_top(s, sep):
    out, cur, depth, arr = [], [], 0, 0
    i = 0
    while i < len(s):
        if s.startswith("\\begin{array}", i):
            arr += 1
        elif s.startswith("\\end{array}", i):
            arr -= 1
        c = s[i]
        if c == "{":
            depth += 1
        elif c == "}":
            depth -= 1
        if s.startswith(sep, i) and depth == 0 and arr == 0:
            out.append("".join(cur))
            cur = []
            i += len(sep)
            continue
        cur.append(c)
        i += 1
    out.append("".join(cur))
    return out


def unwrap(cell):
    cell = cell.strip()
    m = re.match(r"\\multirow\{\d+\}\{\*\}\{(.*)\}$", cell, re.S)
    if m:
        cell = m.group(1).strip()
    cell = cell.strip()
    if cell.startswith("$") and cell.endswith("$"):
        cell = cell[1:-1]
    cell = re.sub(r"\\begin\{array\}\{\w+\}", " ", cell)
    cell = cell.replace("\\end{array}", " ")
    cell = cell.replace("\\\\", " ").replace("&&", " ")
    return re.sub(r"\s+", " ", cell).strip()


def module_name(cell):
    m = re.match(r"V_\{(.*)\}$", cell)
    if m:
        return m.group(1)
    m = re.match(r"V_(\w)$", cell)
    return m.group(1) if m else cell


def rows_by_hline(body, cline):
    blocks = []
    for chunk in body.split("\\hline"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p for p in chunk.split(cline)]
        rows = []
        for p in parts:
            p = p.strip()
            if p.endswith("\\\\"):
                p = p[:-2]
            p = p.strip()
            if p:
                rows.append([unwrap(c) for c in split_top(p, "&")])
        if rows:
            blocks.append(rows)
    return blocks


def fd_table(text):
    out = []
    for rows in rows_by_hline(longtable(text, "tableB3fdsOverG2charsAndHWV"), "\\cline{3-5}"):
        head = rows[0]
        entry = {"module": module_name(head[0]), "dim": int(head[1]), "constituents": []}
        for r in rows:
            entry["constituents"].append({"weight": module_name(r[2]), "dim": int(r[3]), "vector": r[4]})
        out.append(entry)
    return out


def parabolic_table(text, crossing):
    label = "tableB3fdsOverG2charsAndHWV(" + ", ".join(map(str, crossing)) + ")"
    out = []
    for rows in rows_by_hline(longtable(text, label), "\\cline{3-7}"):
        head = rows[0]
        entry = {"module": module_name(head[0]), "dim": int(head[1]), "constituents": []}
        for r in rows:
            factors = [] if r[5] == "id" else re.findall(r"12\(i\(\\bar c_1\) - \((.*?)\)\)", r[5])
            entry["constituents"].append({
                "weight": module_name(r[2]),
                "dim": int(r[3]),
                "fd_vector": r[4],
                "projector": r[5],
                "projector_p1": [re.sub(r"\s+", "", f) for f in factors],
                "vector": r[6],
            })
        out.append(entry)
    return out


def condition_b_table(text, crossing):
    label = "tableB3fdsOverG2charsonly(" + ", ".join(map(str, crossing)) + ")"
    body = longtable(text, label)
    out = []
    for chunk in body.split("\\hline"):
        chunk = chunk.strip()
        if not chunk:
            continue
        lines = split_top(chunk, "\\\\")
        head = split_top(lines[0].strip(), "&")
        if len(head) != 2:
            continue
        entry = {"module": module_name(unwrap(head[0])), "decomposition": [], "strong_b": None}
        for term in unwrap(head[1]).split("\\oplus"):
            term = term.strip()
            m = re.match(r"(\d*)\s*V_\{(.*)\}$", term)
            entry["decomposition"].append({"mult": int(m.group(1) or 1), "weight": m.group(2)})
        for extra in lines[1:]:
            m = re.search(r"Strong Condition B: (.*?)\\normalsize", extra)
            if m:
                entry["strong_b"] = [s.strip().strip("$").strip() for s in m.group(1).split(",")]
        out.append(entry)
    return out


def p1_table(text):
    body = longtable(text, "tableHWVover(1,0,1)")
    out = []
    for chunk in re.split(r"\\multicolumn\{4\}\{\|c\|\}\{Highest weight \$\\lambda= ", body)[1:]:
        lam = chunk[: chunk.index("$}")].strip()
        rows = []
        for line in chunk.split("\\\\")[2:]:
            cells = split_top(line.replace("\\hline", ""), "&")
            if len(cells) != 4:
                continue
            rows.append({
                "weight": unwrap(cells[0]),
                "fd_vector": unwrap(cells[1]),
                "projection": unwrap(cells[2]),
                "p1": unwrap(cells[3]),
            })
        out.append({"lambda": lam, "rows": rows})
    return out


def monomial_bases(text):
    body = longtable(text, "tableMonBases(1,0,0)")
    out = []
    for chunk in re.split(r"\\multicolumn\{5\}\{\|c\|\}\{ Highest weight \$\\lambda=", body)[1:]:
        lam = chunk[: chunk.index("$")].strip()
        rows = []
        for line in chunk.split("\\\\")[1:]:
            cells = split_top(line.replace("\\hline", ""), "&")
            if len(cells) != 5 or "m_" not in cells[0]:
                continue
            rows.append({
                "element": unwrap(cells[0]),
                "weight": unwrap(cells[1]),
                "monomial": unwrap(cells[2]),
                "g2": unwrap(cells[3]),
                "g3": unwrap(cells[4]),
            })
        out.append({"lambda": lam, "rows": rows})
    return out


def certificates(text):
    body = longtable(text, "tableCriticalValuesvlambda")
    body = re.sub(r"\\offlineVersionOnly\{.*?\}\\\\\\hline\s*\}", "", body, flags=re.S)
    out = []
    for chunk in re.split(r"\\multicolumn\{3\}\{\|c\|\}\{\$\\lambda=", body)[1:]:
        lam = chunk[: chunk.index("$}")].strip()
        rows = []
        for m in re.finditer(r"\$v_\{\\lambda,(\d)\} \$\s*&\s*\$\s*\\begin\{array\}\{l\}(.*?)\\end\{array\}\$\s*&(.*?)\\\\", chunk, re.S):
            poly = re.sub(r"\s+", "", m.group(2).replace("\\\\", ""))
            roots = [r.strip() for r in m.group(3).split(",") if r.strip()]
            rows.append({"index": int(m.group(1)), "poly": poly, "roots": roots})
        out.append({"lambda": lam, "rows": rows})
    return out


def casimir(text):
    def grab(start, end):
        a = text.index(start)
        b = text.index(end, a)
        s = text[a + len(start): b]
        for tok in ["\\\\\\notag", "\\\\", "&&", "&", "\\quad", ","]:
            s = s.replace(tok, " ")
        return re.sub(r"\s+", " ", s).strip().rstrip(".").strip()
    return {
        "bar_casimir_36": grab("36 \\bar c_1&=&", "\\end{eqnarray}"),
        "image_casimir_12": grab("12 i(\\bar c_1)&=&", "\\end{eqnarray*}"),
        "p1_closed_form": grab("p_1(\\mu):=", "\\]"),
    }


def direct_sums(text):
    a = text.index("\\label{corGenVermaDecomposB3G2}")
    b = text.index("\\end{corollary}", a)
    body = text[a:b]
    out = []
    for item in body.split("\\item")[1:]:
        m = re.search(r"x_1\\notin\s*\\?\{(.*?)\\\}", item)
        excluded = [s.strip() for s in m.group(1).split(",")] if m else []
        lam = re.search(r"M_\{(.*?)\}\(so\(7\)", item).group(1)
        summands = re.findall(r"M_\{(.*?)\}\(\\LieGtwo", item[item.index("\\simeq"):])
        out.append({"lambda": lam, "excluded": excluded, "summands": summands})
    return out


def main(source, outdir):
    text = read(source)
    os.makedirs(outdir, exist_ok=True)
    dump(fd_table(text), os.path.join(outdir, "fd_decompositions.json"))
    dump({
        "".join(map(str, c)): parabolic_table(text, c)
        for c in [(0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
    }, os.path.join(outdir, "parabolic_singular_vectors.json"))
    dump({
        "".join(map(str, c)): condition_b_table(text, c)
        for c in [(0, 1, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
    }, os.path.join(outdir, "strong_condition_b.json"))
    dump(p1_table(text), os.path.join(outdir, "p1_table.json"))
    dump(monomial_bases(text), os.path.join(outdir, "monomial_bases.json"))
    dump(certificates(text), os.path.join(outdir, "certificates.json"))
    dump(casimir(text), os.path.join(outdir, "casimir.json"))
    dump(direct_sums(text), os.path.join(outdir, "direct_sums.json"))


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
