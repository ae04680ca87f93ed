"""
lmt-kit - Command Line Interface

``python lmt_kit.py <group> <command> ...`` runs one command (see
``python lmt_kit.py --help``). ``python lmt_kit.py report [DIR]`` runs every
property battery and writes text, JSON, Markdown and HTML reports.
"""

import os
import sys
import webbrowser

from lmtkit.cli import main as cli_main
from lmtkit.errors import LmtError
from lmtkit.lmt_analyzer import LMTAnalyzer
from lmtkit.named_categories import gr_1
from lmtkit.report_generator import ReportGenerator
from lmtkit.visualization import create_category_figure


def run_battery_report(output_dir: str = "reports", open_browser: bool = True):
    """
    Run all batteries and write the reports.

    Args:
        output_dir: Directory for the report files
        open_browser: Whether to open the HTML report in a browser
    """
    print("lmt-kit property batteries")
    print("=" * 60)

    try:
        analyzer = LMTAnalyzer()
        print("Running batteries...")
        analyzer.analyze_all()
    except LmtError as e:
        print(f"ERROR: Battery run failed: {e}")
        return False

    os.makedirs(output_dir, exist_ok=True)
    report = ReportGenerator.from_analyzer(analyzer)
    files = {
        'text': os.path.join(output_dir, "battery.txt"),
        'json': os.path.join(output_dir, "battery.json"),
        'markdown': os.path.join(output_dir, "battery.md"),
        'html': os.path.join(output_dir, "battery.html"),
    }
    figure = create_category_figure(gr_1())
    for fmt, path in files.items():
        with open(path, "w", encoding="utf-8") as f:
            f.write(report.render(fmt, figure))

    print("\n" + "=" * 60)
    print("BATTERY RESULTS")
    print("=" * 60)
    for name, result in analyzer.results.items():
        if 'error' in result:
            print(f"{name:<16} error: {result['error']}")
        else:
            status = "holds" if result.get('holds') else "FAILS"
            print(f"{name:<16} {status:<6} ({result.get('count', 0)} checked)")
    print("=" * 60)

    print("\nGenerated report files:")
    for fmt, path in files.items():
        print(f"  - {path} ({fmt})")

    if open_browser:
        try:
            webbrowser.open(f"file://{os.path.abspath(files['html'])}")
        except Exception as e:
            print(f"Could not open browser: {e}")

    return report.holds()


def main():
    """Main command-line interface."""
    if len(sys.argv) > 1 and sys.argv[1] == "report":
        output_dir = sys.argv[2] if len(sys.argv) > 2 else "reports"
        open_browser = len(sys.argv) <= 3 or sys.argv[3].lower() != 'nobrowser'
        if not run_battery_report(output_dir, open_browser):
            sys.exit(1)
        return
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
