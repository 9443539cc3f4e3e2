"""Text and LaTeX pictures of arc diagrams, Hasse diagrams and tables."""

from __future__ import annotations

from .arcs import ArcDiagram
from .errors import UnknownElement
from .posets import Poset, render_hasse_ascii


def _extension(poset: Poset, which: int):
    for k, ext in enumerate(poset.linear_extensions()):
        if k == which:
            return ext
    raise UnknownElement(f"poset has no linear extension number {which}")


def _label_text(lab) -> str:
    return str(lab) if lab.field.e == 1 else "(" + ",".join(map(str, lab.coeffs)) + ")"


def render_arcs_ascii(d: ArcDiagram, extension: int = 0) -> str:
    """Nodes along one row (in the chosen linear extension), one line per arc above them."""
    order = _extension(d.poset, extension)
    width = max([len(x) for x in order] + [1]) + 3
    col = {x: k * width for k, x in enumerate(order)}
    total = width * max(len(order), 1)
    lines = []
    arcs = sorted(d.arcs, key=lambda a: (order.index(a[0]), order.index(a[1])))
    for a, b, lab in arcs:
        lo, hi = sorted((col[a], col[b]))
        row = [" "] * total
        row[lo] = "+"
        row[hi] = "+"
        for k in range(lo + 1, hi):
            row[k] = "-"
        text = _label_text(lab)
        mid = (lo + hi) // 2 - len(text) // 2
        for k, ch in enumerate(text):
            if lo < mid + k < hi:
                row[mid + k] = ch
        lines.append("".join(row).rstrip())
    nodes = [" "] * total
    for x in order:
        for k, ch in enumerate(x):
            nodes[col[x] + k] = ch
    lines.append("".join(nodes).rstrip())
    return "\n".join(lines)


def render_arcs_latex(d: ArcDiagram, extension: int = 0) -> str:
    order = _extension(d.poset, extension)
    out = [r"\documentclass[tikz]{standalone}", r"\begin{document}", r"\begin{tikzpicture}"]
    for k, x in enumerate(order):
        out.append(rf"\node[circle,fill,inner sep=1.2pt,label=below:{{${x}$}}] (n{k}) at ({k},0) {{}};")
    if not order:
        out.append(r"\node at (0,0) {};")
    for a, b, lab in sorted(d.arcs, key=lambda t: (order.index(t[0]), order.index(t[1]))):
        i, j = order.index(a), order.index(b)
        lo, hi = min(i, j), max(i, j)
        out.append(rf"\draw (n{lo}) to[out=70,in=110] node[above]{{${_label_text(lab)}$}} (n{hi});")
    out += [r"\end{tikzpicture}", r"\end{document}"]
    return "\n".join(out) + "\n"


def render_hasse_latex(P: Poset) -> str:
    out = [r"\documentclass[tikz]{standalone}", r"\begin{document}", r"\begin{tikzpicture}"]
    for h, level in enumerate(P.levels()):
        for k, x in enumerate(level):
            out.append(rf"\node (v{P.index[x]}) at ({k},{h}) {{${x}$}};")
    if not P.elements:
        out.append(r"\node at (0,0) {};")
    for a, b in P.covers:
        out.append(rf"\draw (v{P.index[a]}) -- (v{P.index[b]});")
    out += [r"\end{tikzpicture}", r"\end{document}"]
    return "\n".join(out) + "\n"


def _cell(v) -> str:
    return str(v)


def table_ascii(table) -> str:
    head = ["", "|K|"] + [repr(c) for c in table.cols]
    rows = [head, ["|K|", ""] + [str(s) for s in table.class_sizes]] if table.class_sizes else [head]
    for eta, vals in zip(table.rows, table.values):
        rows.append([repr(eta), ""] + [_cell(v) for v in vals])
    widths = [max(len(r[k]) for r in rows) for k in range(len(head))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _latex_cell(v) -> str:
    return "$" + str(v).replace("z^", r"\zeta^").replace("z", r"\zeta").replace("*", "") + "$"


def table_latex(table) -> str:
    ncol = len(table.cols)
    out = [r"\begin{tabular}{l|" + "r" * ncol + "}"]
    out.append(" & " + " & ".join("$" + repr(c).replace("{", r"\{").replace("}", r"\}") + "$"
                                  for c in table.cols) + r" \\ \hline")
    for eta, vals in zip(table.rows, table.values):
        out.append("$" + repr(eta).replace("{", r"\{").replace("}", r"\}") + "$ & "
                   + " & ".join(_latex_cell(v) for v in vals) + r" \\")
    out.append(r"\end{tabular}")
    return "\n".join(out) + "\n"


__all__ = ["render_arcs_ascii", "render_arcs_latex", "render_hasse_ascii", "render_hasse_latex",
           "table_ascii", "table_latex"]
