"""Command-line contract: output bytes, exit codes, diagnostics.

Exit codes: 0 success / property holds, 1 property false with printed
counterexample, 2 malformed invocation or input file.

Frozen outputs below were cross-checked against the library-level tests
(the emitters are pinned byte-exactly in test_forms / test_seeds); the
CLI tests mostly assert plumbing, exit codes, and stable formatting.
"""

import pytest

from clusterwp.catalog import catalog
from clusterwp.cli import main
from clusterwp.seeds import emit_seed_file, is_acyclic, parse_seed_file


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ---------------------------------------------------------------------------
# catalog


def test_catalog_emits_seed_file(capsys):
    rc, out, err = run(capsys, "catalog", "sl2")
    assert rc == 0 and err == ""
    assert out == "rank 3\nmutable 1\nnames x c1 c2\nrow 0 1 1\n"


def test_catalog_point_emission(capsys):
    rc, out, _ = run(capsys, "catalog", "a3", "--point", "deep")
    assert rc == 0
    assert out == (
        "x13 = 0\nx14 = -1\nx15 = 0\n"
        "x24 = 0\nx25 = -1\nx26 = 0\n"
        "x35 = 0\nx36 = -1\nx46 = 0\n"
    )


def test_catalog_form_emission(capsys):
    rc, out, _ = run(capsys, "catalog", "sl2", "--form", "regular")
    assert rc == 0
    assert out == "gen x' = x^-1*c1*c2 + x^-1\nc1^-1*c2^-1 ; x ; x'\n"


def test_catalog_unknown_key(capsys):
    rc, out, err = run(capsys, "catalog", "e8")
    assert rc == 2 and out == ""
    assert err.startswith("error: unknown catalog key 'e8'")


def test_catalog_unknown_form_and_point(capsys):
    rc, _, err = run(capsys, "catalog", "sl2", "--form", "nope")
    assert rc == 2 and "available" in err
    rc, _, err = run(capsys, "catalog", "markov", "--point", "nope")
    assert rc == 2 and "available" in err


# ---------------------------------------------------------------------------
# mutate


def test_mutate_uses_catalog_naming(capsys):
    rc, out, _ = run(capsys, "mutate", "a3", "1")
    assert rc == 0
    assert "names x24 x14 x15" in out.splitlines()


def test_mutate_walks_affine_indices(capsys):
    rc, out, _ = run(capsys, "mutate", "affine-a11", "1", "2", "1")
    assert rc == 0
    assert "names x4 x3" in out.splitlines()


def test_mutate_is_involutive_on_emission(capsys):
    rc, once, _ = run(capsys, "catalog", "sl2")
    rc, twice, _ = run(capsys, "mutate", "sl2", "1", "1")
    assert once == twice


def test_mutate_file_seed_prime_toggles(capsys, tmp_path):
    path = tmp_path / "s.seed"
    path.write_text(emit_seed_file(catalog("sl2").seed))
    rc, out, _ = run(capsys, "mutate", str(path), "1")
    assert rc == 0
    assert "names x' c1 c2" in out.splitlines()


def test_mutate_direction_out_of_range(capsys):
    rc, _, err = run(capsys, "mutate", "sl2", "9")
    assert rc == 2
    assert err == "error: direction 9 outside 1..1\n"


# ---------------------------------------------------------------------------
# explore


def test_explore_sl2_snapshot(capsys):
    rc, out, _ = run(capsys, "explore", "sl2")
    assert rc == 0
    assert out == (
        "clusters 2\nvariables 4\ntruncated no\n"
        "cluster 1: x c1 c2\ncluster 2: x' c1 c2\n"
        "variable x' = x^-1*c1*c2 + x^-1\n"
    )


def test_explore_a3_census(capsys):
    rc, out, _ = run(capsys, "explore", "a3")
    lines = out.splitlines()
    assert rc == 0
    assert lines[0] == "clusters 14"
    assert lines[1] == "variables 9"
    assert lines[2] == "truncated no"
    assert any(line.startswith("variable x24 = ") for line in lines)


def test_explore_budget_truncates(capsys):
    rc, out, _ = run(capsys, "explore", "markov", "--max-seeds", "4")
    assert rc == 0
    assert "truncated yes" in out.splitlines()


# ---------------------------------------------------------------------------
# acyclic


def test_acyclic_yes(capsys):
    rc, out, _ = run(capsys, "acyclic", "a3")
    assert (rc, out) == (0, "acyclic\n")


def test_acyclic_reports_cycle(capsys):
    rc, out, _ = run(capsys, "acyclic", "markov")
    assert (rc, out) == (1, "cycle: 1 -> 2 -> 3\n")


def test_acyclic_search_fails_on_markov(capsys):
    rc, out, _ = run(capsys, "acyclic", "markov", "--search", "30")
    assert rc == 1
    assert out.startswith("no acyclic seed found")


def test_acyclic_search_succeeds_from_cyclic_chart(capsys, tmp_path):
    path = tmp_path / "c.seed"
    path.write_text(emit_seed_file(catalog("a3").seed.mutated(2)))
    rc, report, _ = run(capsys, "acyclic", str(path))
    assert rc == 1
    rc, out, _ = run(capsys, "acyclic", str(path), "--search", "10")
    assert rc == 0
    found = parse_seed_file(out, "<out>")
    assert is_acyclic(found.matrix)


# ---------------------------------------------------------------------------
# present


def test_present_sl2(capsys):
    rc, out, _ = run(capsys, "present", "sl2")
    assert rc == 0
    assert out == (
        "generators x c1 c2 x'\n"
        "frozen c1 c2\n"
        "relation x*x' - c1*c2 - 1\n"
    )


def test_present_a3_uses_diagonal_primes(capsys):
    rc, out, _ = run(capsys, "present", "a3")
    assert rc == 0
    assert out == (
        "generators x13 x14 x15 x24 x35 x46\n"
        "relation x13*x24 - x14 - 1\n"
        "relation x14*x35 - x13 - x15\n"
        "relation x15*x46 - x14 - 1\n"
    )


def test_present_affine(capsys):
    rc, out, _ = run(capsys, "present", "affine-a11")
    assert rc == 0
    assert out.splitlines()[0] == "generators x0 x1 x2 xm1"


def test_present_cyclic_chart_fails(capsys):
    rc, out, _ = run(capsys, "present", "markov")
    assert (rc, out) == (1, "not acyclic: cycle 1 -> 2 -> 3\n")


# ---------------------------------------------------------------------------
# wp / equal


def test_wp_markov_snapshot(capsys):
    rc, out, _ = run(capsys, "wp", "markov")
    assert rc == 0
    assert out == (
        "2*x1^-1*x2^-1 ; x1 ; x2\n"
        "-2*x1^-1*x3^-1 ; x1 ; x3\n"
        "2*x2^-1*x3^-1 ; x2 ; x3\n"
    )


def test_wp_a3_snapshot(capsys):
    rc, out, _ = run(capsys, "wp", "a3")
    assert rc == 0
    assert out == "x13^-1*x14^-1 ; x13 ; x14\nx14^-1*x15^-1 ; x14 ; x15\n"


def test_wp_file_seed_matches_catalog(capsys, tmp_path):
    path = tmp_path / "m.seed"
    path.write_text(emit_seed_file(catalog("markov").seed))
    _, from_key, _ = run(capsys, "wp", "markov")
    _, from_file, _ = run(capsys, "wp", str(path))
    assert from_key == from_file


def _write(capsys, tmp_path, name, *argv):
    rc, out, err = run(capsys, *argv)
    assert rc == 0, err
    path = tmp_path / name
    path.write_text(out)
    return str(path)


def test_equal_accepts_equivalent_expressions(capsys, tmp_path):
    a = _write(capsys, tmp_path, "a.form", "wp", "sl2")
    b = _write(capsys, tmp_path, "b.form", "catalog", "sl2", "--form", "regular")
    rc, out, _ = run(capsys, "equal", "sl2", a, b)
    assert (rc, out) == (0, "equal\n")


def test_equal_rejects_candidate_with_exact_difference(capsys, tmp_path):
    a = _write(capsys, tmp_path, "wp.form", "wp", "affine-a11")
    b = _write(capsys, tmp_path, "cand.form",
               "catalog", "affine-a11", "--form", "candidate")
    rc, out, _ = run(capsys, "equal", "affine-a11", a, b)
    assert rc == 1
    assert out == (
        "not equal\n"
        "difference (first - second):\n"
        "x0^-1*x1^-1 ; x0 ; x1\n"
    )


def test_equal_detects_scaling(capsys, tmp_path):
    a = _write(capsys, tmp_path, "wp.form", "wp", "affine-a11")
    doubled = tmp_path / "d.form"
    doubled.write_text("4*x0^-1*x1^-1 ; x0 ; x1\n")
    rc, out, _ = run(capsys, "equal", "affine-a11", a, str(doubled))
    assert rc == 1
    assert "difference (first - second):\n-2*x0^-1*x1^-1 ; x0 ; x1\n" in out


def test_equal_bad_form_file(capsys, tmp_path):
    a = _write(capsys, tmp_path, "wp.form", "wp", "sl2")
    bad = tmp_path / "bad.form"
    bad.write_text("pfft\n")
    rc, _, err = run(capsys, "equal", "sl2", a, str(bad))
    assert rc == 2
    assert "bad.form:1:" in err


# ---------------------------------------------------------------------------
# invariance


def test_invariance_sl2_depth_two(capsys):
    rc, out, _ = run(capsys, "invariance", "sl2", "--depth", "2")
    assert rc == 0
    assert out == "1 pass\n1,1 pass\nall 2 sequences pass\n"


def test_invariance_markov_depth_one(capsys):
    rc, out, _ = run(capsys, "invariance", "markov", "--depth", "1")
    assert rc == 0
    assert out == "1 pass\n2 pass\n3 pass\nall 3 sequences pass\n"


def test_invariance_rejects_zero_depth(capsys):
    rc, _, err = run(capsys, "invariance", "sl2", "--depth", "0")
    assert rc == 2
    assert "at least 1" in err


# ---------------------------------------------------------------------------
# regularize


_A3_REGULARIZED = (
    "gen x24 = x13^-1*x14 + x13^-1\n"
    "gen x46 = x14*x15^-1 + x15^-1\n"
    "x14^-1 ; x13 ; x24\n"
    "1 ; x15 ; x46\n"
    "-x14^-1*x46 ; x15 ; x14\n"
)


def test_regularize_a3_by_pattern(capsys):
    rc, out, _ = run(capsys, "regularize", "a3", "--pattern", "1,3")
    assert (rc, out) == (0, _A3_REGULARIZED)


def test_regularize_a3_by_point(capsys, tmp_path):
    point = _write(capsys, tmp_path, "deep.point",
                   "catalog", "a3", "--point", "deep")
    rc, out, _ = run(capsys, "regularize", "a3", "--point", point)
    assert (rc, out) == (0, _A3_REGULARIZED)


def test_regularize_single_index_uses_namer(capsys):
    rc, out, _ = run(capsys, "regularize", "a3", "--pattern", "2")
    assert rc == 0
    assert out.splitlines()[0] == "gen x35 = x13*x14^-1 + x14^-1*x15"


def test_regularize_sl2_matches_catalog_form(capsys):
    rc, out, _ = run(capsys, "regularize", "sl2", "--pattern", "1")
    _, catalog_form, _ = run(capsys, "catalog", "sl2", "--form", "regular")
    assert rc == 0
    assert out == catalog_form


def test_regularize_adjacent_vanishing_fails(capsys):
    rc, out, _ = run(capsys, "regularize", "markov", "--pattern", "1,2")
    assert rc == 1
    assert out == ("hypothesis violated: vanishing variables 1 and 2 "
                   "are exchange-adjacent (B_12 = 2)\n")


def test_regularize_search_exhausts_on_markov(capsys):
    rc, out, _ = run(capsys, "regularize", "markov",
                     "--pattern", "1,2,3", "--search", "40")
    assert rc == 1
    assert out.startswith("no regularizing seed found")


def test_regularize_search_immediate_hit_emits_seed_and_form(capsys):
    rc, out, _ = run(capsys, "regularize", "a3",
                     "--pattern", "1,3", "--search", "5")
    assert rc == 0
    assert out.startswith("rank 3\n")
    assert "form:\n" in out
    assert out.endswith(_A3_REGULARIZED)


def test_regularize_pattern_validation(capsys):
    rc, _, err = run(capsys, "regularize", "a3", "--pattern", "1,9")
    assert rc == 2 and "9" in err
    rc, _, err = run(capsys, "regularize", "a3", "--pattern", "1;3")
    assert rc == 2 and "comma-separated" in err


def test_regularize_requires_pattern_or_point():
    with pytest.raises(SystemExit) as exc:
        main(["regularize", "a3"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# tangent


def test_tangent_sl2_deep(capsys, tmp_path):
    point = _write(capsys, tmp_path, "p.point",
                   "catalog", "sl2", "--point", "deep")
    rc, out, _ = run(capsys, "tangent", "sl2", "--point", point)
    assert (rc, out) == (0, "3\n")


def test_tangent_a3_deep(capsys, tmp_path):
    point = _write(capsys, tmp_path, "p.point",
                   "catalog", "a3", "--point", "deep")
    rc, out, _ = run(capsys, "tangent", "a3", "--point", point)
    assert (rc, out) == (0, "4\n")


def test_tangent_a3_generic(capsys, tmp_path):
    path = tmp_path / "g.point"
    path.write_text("x13 = 1\nx14 = 1\nx15 = 1\n"
                    "x24 = 2\nx35 = 2\nx46 = 2\n")
    rc, out, _ = run(capsys, "tangent", "a3", "--point", str(path))
    assert (rc, out) == (0, "3\n")


def test_tangent_needs_full_assignment(capsys, tmp_path):
    path = tmp_path / "p.point"
    path.write_text("x = 0\n")
    rc, _, err = run(capsys, "tangent", "sl2", "--point", str(path))
    assert rc == 2
    assert "unassigned generator" in err


def test_tangent_cyclic_chart_fails(capsys, tmp_path):
    path = tmp_path / "p.point"
    path.write_text("x1 = 0\n")
    rc, out, _ = run(capsys, "tangent", "markov", "--point", str(path))
    assert rc == 1
    assert out.startswith("not acyclic")


# ---------------------------------------------------------------------------
# grade


def test_grade_markov(capsys):
    rc, out, _ = run(capsys, "grade", "markov")
    assert (rc, out) == (0, "-2\n")


def test_grade_affine(capsys):
    rc, out, _ = run(capsys, "grade", "affine-a11")
    assert (rc, out) == (0, "-2\n")


def test_grade_explicit_weights(capsys):
    rc, out, _ = run(capsys, "grade", "sl2", "--weights", "1,1,1")
    assert (rc, out) == (0, "-2\n")
    rc, out, _ = run(capsys, "grade", "a3", "--weights", "2,3,4")
    assert (rc, out) == (0, "-2\n")


def test_grade_weight_count_mismatch(capsys):
    rc, _, err = run(capsys, "grade", "a3", "--weights", "1,2")
    assert rc == 2
    assert "needs 3 entries" in err


def test_grade_zero_form(capsys, tmp_path):
    path = tmp_path / "z.seed"
    path.write_text("rank 1\nmutable 1\nnames a\nrow 0\n")
    rc, out, _ = run(capsys, "grade", str(path))
    assert rc == 1
    assert "no degree" in out


# ---------------------------------------------------------------------------
# deep


def test_deep_affine_window_is_relative(capsys, tmp_path):
    point = _write(capsys, tmp_path, "p0.point",
                   "catalog", "affine-a11", "--point", "p0")
    rc, out, _ = run(capsys, "deep", "affine-a11", "--point", point)
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "cluster 1 (x0 x1): has-determined-zero"
    assert lines[-1] == "verdict deep-relative"
    assert len(lines) == 8


def test_deep_a3_certifies(capsys, tmp_path):
    point = _write(capsys, tmp_path, "deep.point",
                   "catalog", "a3", "--point", "deep")
    rc, out, _ = run(capsys, "deep", "a3", "--point", point)
    assert rc == 0
    assert out.splitlines()[-1] == "verdict deep"


def test_deep_generic_point_is_not_deep(capsys, tmp_path):
    path = tmp_path / "g.point"
    path.write_text("x = 1\nc1 = 1\nc2 = 1\n")
    rc, out, _ = run(capsys, "deep", "sl2", "--point", str(path))
    assert rc == 1
    assert out.splitlines()[-1] == "verdict not-deep"


def test_deep_file_seed_needs_budget(capsys, tmp_path):
    seed = tmp_path / "m.seed"
    seed.write_text(emit_seed_file(catalog("markov").seed))
    point = tmp_path / "z.point"
    point.write_text("x1 = 0\nx2 = 0\nx3 = 0\n")
    rc, _, err = run(capsys, "deep", str(seed), "--point", str(point))
    assert rc == 2
    assert "--max-seeds is required" in err
    rc, out, _ = run(capsys, "deep", str(seed), "--point", str(point),
                     "--max-seeds", "10")
    assert rc == 0
    assert out.splitlines()[-1] == "verdict deep-relative"


def test_deep_inconsistent_point_rejected(capsys, tmp_path):
    point = tmp_path / "bad.point"
    point.write_text("x0 = i\nx1 = 0\nx2 = 5\n")
    rc, _, err = run(capsys, "deep", "affine-a11", "--point", str(point))
    assert rc == 2
    assert err.startswith("error: invalid point:")


# ---------------------------------------------------------------------------
# shared plumbing


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_seed_argument_resolution_failure(capsys):
    rc, _, err = run(capsys, "wp", "no-such-thing")
    assert rc == 2
    assert "not a catalog key" in err


def test_seed_file_diagnostics_carry_location(capsys, tmp_path):
    path = tmp_path / "bad.seed"
    path.write_text("rank 2\nmutable 2\nnames a b\nrow 0 1\nrow 1 0\n")
    rc, _, err = run(capsys, "wp", str(path))
    assert rc == 2
    assert f"error: {path}:5:" in err


def test_point_file_diagnostics_carry_location(capsys, tmp_path):
    path = tmp_path / "bad.point"
    path.write_text("x := 1\n")
    rc, _, err = run(capsys, "tangent", "sl2", "--point", str(path))
    assert rc == 2
    assert f"{path}:1:" in err
