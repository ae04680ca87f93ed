"""DOT export and plotly views of finite categories and functors over a base."""

from typing import Dict, List, Optional, Tuple

import numpy as np
import plotly.graph_objects as go

from .deflation import DeflationData, star_restriction
from .errors import PreconditionError
from .fincat import FinCategory
from .grothendieck import StrictOpIndexedCat, grothendieck
from .opfibration_check import FuncOver

FIBRE_COLOURS = ['rgb(231,76,60)', 'rgb(52,152,219)', 'rgb(46,204,113)', 'rgb(243,156,18)',
                 'rgb(155,89,182)', 'rgb(26,188,156)']


def _quote(name: str) -> str:
    return '"' + name.replace('\\', '\\\\').replace('"', '\\"') + '"'


def _as_displayable(obj) -> Tuple[FinCategory, Optional[FuncOver]]:
    if isinstance(obj, FinCategory):
        return obj, None
    if isinstance(obj, StrictOpIndexedCat):
        obj = grothendieck(obj)
    if isinstance(obj, DeflationData):
        obj = star_restriction(obj)[0]
    if isinstance(obj, FuncOver):
        return obj.total, obj
    raise PreconditionError(f"cannot draw {type(obj).__name__}")


def _arrows(c: FinCategory) -> List[str]:
    return [m for m in c.morphisms if not c.is_identity(m)]


def export_dot(obj) -> str:
    """Directed graph of the non-identity morphisms; objects over the same base object are clustered."""
    c, q = _as_displayable(obj)
    lines = [f"digraph {_quote(c.name or 'category')} {{", "  rankdir=LR;", "  node [shape=circle];"]
    if q is None:
        lines.extend(f"  {_quote(o)};" for o in c.objects)
    else:
        for i, x in enumerate(q.base.objects):
            lines.append(f"  subgraph {_quote(f'cluster_{i}')} {{")
            lines.append(f"    label={_quote(x)};")
            lines.extend(f"    {_quote(o)};" for o in q.objects_over(x))
            lines.append("  }")
    for m in _arrows(c):
        label = m if q is None else f"{m} / {q.p.mmap[m]}"
        style = ""
        if q is not None and q.base.is_identity(q.p.mmap[m]):
            style = ", style=dashed"
        lines.append(f"  {_quote(c.dom[m])} -> {_quote(c.cod[m])} [label={_quote(label)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def circular_layout(objects) -> Dict[str, Tuple[float, float]]:
    n = max(len(objects), 1)
    angles = np.linspace(0.0, 2 * np.pi, n, endpoint=False) + np.pi / 2
    return {o: (float(np.cos(a)), float(np.sin(a))) for o, a in zip(objects, angles)}


def create_category_figure(obj):
    """Interactive view: objects on a circle, morphisms as arrows, a dropdown per fibre."""
    c, q = _as_displayable(obj)
    pos = circular_layout(c.objects)
    fig = go.Figure()

    groups = [("All objects", list(c.objects), 'rgb(44,62,80)')]
    if q is not None:
        for i, x in enumerate(q.base.objects):
            groups.append((f"Fibre over {x}", q.objects_over(x), FIBRE_COLOURS[i % len(FIBRE_COLOURS)]))

    for i, (name, objects, colour) in enumerate(groups):
        fig.add_trace(go.Scatter(
            x=[pos[o][0] for o in objects], y=[pos[o][1] for o in objects],
            mode='markers+text', text=list(objects), textposition='top center',
            marker=dict(size=18, color=colour),
            name=name, visible=i == 0 or q is not None,
        ))

    annotations = []
    for m in _arrows(c):
        (x0, y0), (x1, y1) = pos[c.dom[m]], pos[c.cod[m]]
        if c.dom[m] == c.cod[m]:
            x1, y1 = x0 + 0.15, y0 + 0.15
        annotations.append(dict(x=x1, y=y1, ax=x0, ay=y0, xref='x', yref='y', axref='x', ayref='y',
                                showarrow=True, arrowhead=2, arrowsize=1, opacity=0.6,
                                text=m, font=dict(size=10)))

    dropdown_buttons = []
    for i, (name, _, _) in enumerate(groups):
        visibility = [True] * len(groups) if i == 0 else [j == i for j in range(len(groups))]
        dropdown_buttons.append({'label': name, 'method': 'update', 'args': [{'visible': visibility}]})

    fig.update_layout(
        title=f"{c.name or 'category'}: {len(c.objects)} objects, {len(c.morphisms)} morphisms",
        xaxis=dict(visible=False), yaxis=dict(visible=False, scaleanchor='x'),
        annotations=annotations,
        width=900,
        height=700,
        updatemenus=[{
            'buttons': dropdown_buttons,
            'direction': 'down',
            'showactive': True,
            'x': 0.02,
            'xanchor': 'left',
            'y': 0.98,
            'yanchor': 'top'
        }] if q is not None else [],
    )
    return fig
