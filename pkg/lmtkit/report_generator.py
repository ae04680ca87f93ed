import json
from typing import Dict, Optional, Sequence

from .results import plain

SCHEMA_VERSION = 1


class ReportGenerator:
    """Generate check reports in various formats.

    Reports carry no timestamps or timings, so equal inputs and run settings
    give byte-identical text and JSON.
    """

    def __init__(self, results: Dict[str, Dict], run=None, command: str = "analyze",
                 inputs: Sequence[str] = ()):
        self.results = results
        self.run = run
        self.command = command
        self.inputs = [str(p) for p in inputs]

    @classmethod
    def from_analyzer(cls, analyzer, inputs: Sequence[str] = ()) -> "ReportGenerator":
        return cls(analyzer.results, analyzer.run, "analyze", inputs)

    def holds(self) -> bool:
        return bool(self.results) and all(r.get('holds', False) for r in self.results.values())

    def _run_settings(self) -> Dict:
        if self.run is None:
            return {}
        return {'seed': self.run.seed, 'budget': self.run.budget, 'word_length': self.run.word_length,
                'cell_size': self.run.cell_size, 'bound': self.run.bound}

    def report(self) -> Dict:
        return {
            'schema': SCHEMA_VERSION,
            'command': self.command,
            'inputs': self.inputs,
            'run': self._run_settings(),
            'holds': self.holds(),
            'results': plain(self.results),
            'recommendations': self._generate_recommendations(),
        }

    def generate_json_report(self):
        """Generate JSON report for programmatic use."""
        return json.dumps(self.report(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def generate_text_report(self):
        lines = [f"{self.command}: {'true' if self.holds() else 'false'}"]
        for name, results in self.results.items():
            label = name.replace('_', ' ')
            if 'error' in results:
                lines.append(f"  {label}: error: {results['error']}")
                continue
            lines.append(f"  {label}: {'true' if results.get('holds') else 'false'}"
                         + (f" ({results['summary']})" if results.get('summary') else ""))
            for key, value in results.items():
                if key in ('analysis_type', 'holds', 'summary', 'trace') or value in (None, [], {}):
                    continue
                lines.append(f"    {key}: {_inline(value)}")
            for i, step in enumerate(results.get('trace') or [], start=1):
                lines.append(f"    {i:>3}. {step.get('rule')} [{step.get('direction')}] {step.get('after')}")
        return "\n".join(lines) + "\n"

    def generate_markdown_report(self):
        """Generate Markdown report."""
        md = f"# lmt-kit report: {self.command}\n\n"
        if self.inputs:
            md += "Inputs: " + ", ".join(f"`{p}`" for p in self.inputs) + "\n\n"
        settings = self._run_settings()
        if settings:
            md += "## Run settings\n\n"
            for key, value in settings.items():
                md += f"- **{key.replace('_', ' ').title()}:** {value}\n"
            md += "\n"

        md += "## Results\n\n"
        for name, results in self.results.items():
            md += f"### {name.replace('_', ' ').title()}\n\n"
            if 'error' in results:
                md += f"❌ **Error:** {results['error']}\n\n"
                continue
            md += ("✅ **Holds**\n\n" if results.get('holds') else "⚠️ **Fails**\n\n")
            if results.get('summary'):
                md += f"{results['summary']}\n\n"
            if results.get('witness'):
                md += f"- **Witness:** `{_inline(results['witness'])}`\n"
            if results.get('count') is not None:
                md += f"- **Checked:** {results['count']}\n"
            for failure in results.get('failures') or []:
                md += f"- {_inline(failure)}\n"
            md += "\n"

        md += "## Recommendations\n\n"
        for rec in self._generate_recommendations():
            md += f"- {rec}\n"
        return md

    def generate_html_report(self, figure=None):
        """Generate an HTML report; ``figure`` is an optional plotly figure of the checked object."""
        status = "holds" if self.holds() else "fails"
        html = f"""
<!DOCTYPE html>
<html>
<head>
    <title>lmt-kit report</title>
    <style>
        body {{
            font-family: Arial, sans-serif;
            margin: 20px;
            background-color: #f5f5f5;
        }}
        .header {{
            background-color: #2c3e50;
            color: white;
            padding: 20px;
            border-radius: 10px;
            margin-bottom: 20px;
        }}
        .section {{
            background-color: white;
            padding: 20px;
            margin-bottom: 20px;
            border-radius: 10px;
            box-shadow: 0 2px 5px rgba(0,0,0,0.1);
        }}
        .status-box {{
            font-size: 32px;
            font-weight: bold;
            text-align: center;
            padding: 20px;
            border-radius: 10px;
            margin: 20px 0;
        }}
        .holds {{ background-color: #2ecc71; color: white; }}
        .fails {{ background-color: #e74c3c; color: white; }}
        .check-item {{
            background-color: #f8f9fa;
            padding: 15px;
            margin: 10px 0;
            border-left: 5px solid #e74c3c;
            border-radius: 5px;
        }}
        .passed {{
            border-left-color: #2ecc71;
        }}
        .recommendation {{
            background-color: #e8f4f8;
            padding: 15px;
            border-left: 5px solid #3498db;
            margin: 10px 0;
            border-radius: 5px;
        }}
        code {{ white-space: pre-wrap; }}
    </style>
</head>
<body>
    <div class="header">
        <h1>lmt-kit: {_escape(self.command)}</h1>
        <p>{_escape(', '.join(self.inputs))}</p>
    </div>

    <div class="section">
        <div class="status-box {status}">{status}</div>
    </div>
"""
        if figure is not None:
            html += f"""
    <div class="section">
        <h2>Structure</h2>
        {figure.to_html(full_html=False, include_plotlyjs='cdn')}
    </div>
"""
        html += """
    <div class="section">
        <h2>Detailed Results</h2>
"""
        for name, results in self.results.items():
            html += f"""
        <div class="check-item {'passed' if results.get('holds') else ''}">
            <h3>{_escape(name.replace('_', ' ').title())}</h3>
"""
            if 'error' in results:
                html += f"<p style='color: red;'>Error: {_escape(results['error'])}</p>"
            else:
                if results.get('summary'):
                    html += f"<p>{_escape(results['summary'])}</p>"
                if results.get('witness'):
                    html += f"<p><strong>Witness:</strong> <code>{_escape(_inline(results['witness']))}</code></p>"
                if results.get('failures'):
                    html += "<ul>" + "".join(f"<li><code>{_escape(_inline(f))}</code></li>"
                                             for f in results['failures']) + "</ul>"
            html += "</div>"

        html += """
    </div>

    <div class="section">
        <h2>Recommendations</h2>
"""
        for rec in self._generate_recommendations():
            html += f"<div class='recommendation'>{_escape(rec)}</div>"
        html += """
    </div>
</body>
</html>
"""
        return html

    def _generate_recommendations(self):
        """Next steps suggested by the results."""
        recs = []
        for name, results in self.results.items():
            if 'error' in results:
                recs.append(f"{name}: fix the input or precondition ({results['error']}).")
            elif results.get('status') == 'unknown':
                recs.append(f"{name}: no verdict within the budget; rerun with a larger --budget.")
            elif not results.get('holds', True) and results.get('witness'):
                recs.append(f"{name}: inspect the witness {_inline(results['witness'])}.")
        if not recs:
            recs.append("All checked properties hold.")
        return recs

    def render(self, fmt: str, figure=None) -> str:
        if fmt == "json":
            return self.generate_json_report()
        elif fmt == "markdown":
            return self.generate_markdown_report()
        elif fmt == "html":
            return self.generate_html_report(figure)
        return self.generate_text_report()


def _inline(value) -> str:
    return json.dumps(plain(value), sort_keys=True, ensure_ascii=False)


def _escape(text) -> str:
    return (str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))


def single_result(result: Dict, name: Optional[str] = None) -> Dict[str, Dict]:
    return {name or result.get('analysis_type', 'result'): result}
