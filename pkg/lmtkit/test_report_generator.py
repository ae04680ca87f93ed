"""
Test script to verify report rendering in every format.
"""

import json

from lmtkit.fincat import analyze_category
from lmtkit.lmt_analyzer import RunConfig
from lmtkit.named_categories import p_h, x3
from lmtkit.opfibration_check import analyze_opfibration
from lmtkit.report_generator import ReportGenerator, single_result
from lmtkit.visualization import create_category_figure


def passing_report():
    return ReportGenerator(single_result(analyze_category(x3())), RunConfig(), "cat check", ["x3.fc"])


def failing_report():
    return ReportGenerator(single_result(analyze_opfibration(p_h())), RunConfig(budget=50), "fib check-op")


def test_json_report_is_deterministic():
    first = passing_report().generate_json_report()
    second = passing_report().generate_json_report()
    assert first == second
    data = json.loads(first)
    assert data['schema'] == 1
    assert data['holds'] is True
    assert data['command'] == "cat check"
    assert data['inputs'] == ["x3.fc"]
    assert data['run']['budget'] == 10000
    assert data['recommendations'] == ["All checked properties hold."]


def test_text_report_header():
    text = passing_report().render("text")
    assert text.startswith("cat check: true\n")
    assert "  category: true" in text


def test_failures_get_a_recommendation():
    report = failing_report()
    assert not report.holds()
    recs = report.report()['recommendations']
    assert len(recs) == 1 and recs[0].startswith("opfibration: inspect the witness")
    assert report.render("text").startswith("fib check-op: false\n")


def test_markdown_and_html():
    report = failing_report()
    md = report.render("markdown")
    assert md.startswith("# lmt-kit report: fib check-op")
    assert "⚠️ **Fails**" in md
    html = passing_report().render("html", create_category_figure(x3()))
    assert "<!DOCTYPE html>" in html
    assert '<div class="status-box holds">holds</div>' in html


def test_empty_results_do_not_hold():
    assert not ReportGenerator({}).holds()


if __name__ == "__main__":
    test_json_report_is_deterministic()
    test_text_report_header()
    test_failures_get_a_recommendation()
    print("report checks complete")
