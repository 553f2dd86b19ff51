import math
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entangled_gup.errors import DegenerateDataError, DomainError, RecordParseError, RootError
from entangled_gup.kim_shih import (
    KIM_SHIH_1999,
    ExperimentRecord,
    RootConditionWarning,
    RootMethod,
    critical_beta,
    default_record_text,
    entangled_margin,
    estimate_bound,
    load_experiment,
    paper_root_condition,
    parse_experiment,
    report_lines,
    slit_roots_exact,
    slit_roots_paper,
)


def test_default_file_matches_builtin_record():
    rec = parse_experiment(default_record_text())
    assert rec.slit_width == 0.16
    assert rec.ratio_ns_over_s == pytest.approx(1.25 / 2.15, rel=1e-15)
    assert rec.eta == 1.0 and rec.length_unit == "mm"
    assert rec.slit_width == KIM_SHIH_1999.slit_width


def test_thresholds():
    assert paper_root_condition(KIM_SHIH_1999) == pytest.approx(0.0256)
    assert critical_beta(KIM_SHIH_1999) == pytest.approx(0.0064)


def test_exact_roots_solve_the_quadratic():
    w, beta = 0.16, 0.003
    big, small = slit_roots_exact(beta, KIM_SHIH_1999)
    assert big > small
    for x in (big, small):
        assert 2 * beta * x * x - w * x + 0.5 == pytest.approx(0.0, abs=1e-13)


def test_exact_roots_at_discriminant_zero():
    big, small = slit_roots_exact(0.0064, KIM_SHIH_1999)
    assert big == pytest.approx(6.25) and small == pytest.approx(6.25)
    with pytest.raises(RootError, match="0.0064"):
        slit_roots_exact(0.0065, KIM_SHIH_1999)


def test_series_values():
    big, small = slit_roots_paper(0.01, KIM_SHIH_1999)
    a = 0.32
    assert small == pytest.approx(1 / a + 0.01 / a ** 3, rel=1e-15)
    assert big == pytest.approx(a / 0.01 - small, rel=1e-15)


def test_series_warns_past_condition():
    with pytest.warns(RootConditionWarning):
        slit_roots_paper(0.03, KIM_SHIH_1999)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        slit_roots_paper(0.02, KIM_SHIH_1999)


@pytest.mark.parametrize("beta", [1e-6, 1e-8, 1e-10])
def test_small_root_agrees_as_beta_vanishes(beta):
    # both forms share the small root hbar eta/(2w) to leading order
    _, s_exact = slit_roots_exact(beta, KIM_SHIH_1999)
    _, s_series = slit_roots_paper(beta, KIM_SHIH_1999)
    # first-order terms differ: 122 beta against 30.5 beta
    assert s_exact == pytest.approx(s_series, rel=50 * beta)
    assert s_exact == pytest.approx(1 / 0.32, rel=50 * beta)


def test_large_roots_differ_by_four():
    b_exact, _ = slit_roots_exact(1e-9, KIM_SHIH_1999)
    b_series, _ = slit_roots_paper(1e-9, KIM_SHIH_1999)
    assert b_series / b_exact == pytest.approx(4.0, rel=1e-6)


def test_paper_series_estimate():
    est = estimate_bound(KIM_SHIH_1999, RootMethod.PAPER_SERIES)
    assert est.binding == "entangled-bound"
    assert est.beyond_real_root_condition
    assert entangled_margin(est.beta_max, KIM_SHIH_1999) >= 0
    assert entangled_margin(math.nextafter(est.beta_max, 1.0) * (1 + 1e-14), KIM_SHIH_1999) < 0
    assert est.l_min_upper == pytest.approx(1e-3 * math.sqrt(est.beta_max), rel=1e-15)


def test_exact_estimate_hits_real_root_limit():
    est = estimate_bound(KIM_SHIH_1999, "exact-quadratic")
    assert est.binding == "real-root-limit"
    assert est.beta_max == pytest.approx(0.0064, rel=1e-15)
    assert est.l_min_upper == pytest.approx(8e-5, rel=1e-12)


def test_degenerate_record():
    # non-slit spread far above the slit one: fails for every beta
    for method in RootMethod:
        with pytest.raises(DegenerateDataError, match="lower endpoint"):
            estimate_bound(ExperimentRecord(ratio_ns_over_s=10.0), method)


@pytest.mark.parametrize("method", list(RootMethod))
def test_estimate_is_unit_invariant(method):
    mm = estimate_bound(KIM_SHIH_1999, method)
    um = estimate_bound(KIM_SHIH_1999.to_unit("um"), method)
    assert um.l_min_upper == pytest.approx(mm.l_min_upper, rel=1e-12)
    assert um.beta_max == pytest.approx(mm.beta_max * 1e6, rel=1e-12)


def test_unit_round_trip_exact():
    back = KIM_SHIH_1999.to_unit("m").to_unit("mm")
    assert back.slit_width == pytest.approx(0.16, rel=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(RootMethod)), st.floats(0.3, 1.0), st.floats(1.01, 1.5))
def test_beta_max_grows_with_ratio(method, ratio, step):
    if ratio * step > 1.0:
        return
    lo = estimate_bound(ExperimentRecord(ratio_ns_over_s=ratio), method)
    hi = estimate_bound(ExperimentRecord(ratio_ns_over_s=ratio * step), method)
    assert hi.beta_max >= lo.beta_max


def test_parse_errors():
    with pytest.raises(RecordParseError, match="ratio_s required"):
        parse_experiment("slit_width = 0.16\nslit_width_unit = mm\nratio_ns = 1.25\n")
    with pytest.raises(RecordParseError, match="slit_width: must be positive"):
        parse_experiment("slit_width = -1\nslit_width_unit = mm\nratio_ns = 1\nratio_s = 2\n")
    with pytest.raises(RecordParseError, match="unknown key"):
        parse_experiment("slit = 1\n")
    with pytest.raises(RecordParseError, match="slit_width_unit"):
        parse_experiment("slit_width = 1\nslit_width_unit = furlong\nratio_ns = 1\nratio_s = 2\n")
    with pytest.raises(RecordParseError, match="not a number"):
        parse_experiment("slit_width = wide\nslit_width_unit = mm\nratio_ns = 1\nratio_s = 2\n")
    with pytest.raises(RecordParseError, match="cannot read"):
        load_experiment("/nonexistent/record.txt")
    with pytest.raises(DomainError):
        ExperimentRecord(eta=0.5)


def test_load_from_path_and_text(tmp_path):
    text = "slit_width = 160  # microns\nslit_width_unit = um\nratio_ns = 1\nratio_s = 2\n"
    path = tmp_path / "rec.txt"
    path.write_text(text)
    assert load_experiment(path) == load_experiment(text)
    assert load_experiment(str(path)).slit_width == 160.0


def test_report_documents_discrepancy():
    ests = [estimate_bound(KIM_SHIH_1999, m) for m in RootMethod]
    keys = dict(report_lines(ests, KIM_SHIH_1999))
    assert "4x" in keys["note.root_discrepancy"]
    assert keys["paper_series.binding"] == "entangled-bound"
    assert keys["exact_quadratic.binding"] == "real-root-limit"
