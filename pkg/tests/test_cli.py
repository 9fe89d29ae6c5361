"""Command line interface: outputs, exit codes, file formats."""

import json

import pytest

from koszulalg.cli import (
    SpecError,
    format_lift,
    load_lift_spec,
    load_ring_spec,
    main,
    parse_chain,
)
from koszulalg.koszul import KoszulComplex, class_of, homology_basis
from koszulalg.dgmap import elementary_lift

from conftest import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_betti_text(capsys):
    code, out, _ = run(capsys, "betti", "--ring", fixture_path("q_x2_xy_y2_z2.json"))
    assert code == 0
    assert out == (
        "       0 1 2 3\n"
        "total: 1 4 5 2\n"
        "    0: 1 - - -\n"
        "    1: - 4 2 -\n"
        "    2: - - 3 2\n"
    )


def test_betti_json_canonical(capsys):
    code, out, _ = run(
        capsys, "betti", "--ring", fixture_path("q_x2_xy_y2_z2.json"), "--json")
    assert code == 0
    assert out == (
        '{"pdim":3,"regularity":2,"rows":'
        '{"0":[1,0,0,0],"1":[0,4,2,0],"2":[0,0,3,2]}}\n'
    )


def test_betti_slow_path_matches(capsys):
    ring = fixture_path("q_x2_xy_y2_z2.json")
    _, fast, _ = run(capsys, "betti", "--ring", ring, "--json")
    code, slow, _ = run(capsys, "betti", "--ring", ring, "--json", "--slow",
                        "--threads", "2")
    assert code == 0
    assert slow == fast


def test_homology_text(capsys):
    code, out, _ = run(capsys, "homology", "--ring", fixture_path("f2_ci_x2_y2.json"))
    assert code == 0
    assert out == (
        "H_0: dim 1\n"
        "  h0.1 (degree 0): (1)\n"
        "H_1: dim 2\n"
        "  h1.1 (degree 2): (x)*e1\n"
        "  h1.2 (degree 2): (y)*e2\n"
        "H_2: dim 1\n"
        "  h2.1 (degree 4): (x*y)*e1e2\n"
    )


def test_homology_degree_filter(capsys):
    code, out, _ = run(capsys, "homology", "--ring",
                       fixture_path("f2_ci_x2_y2.json"), "--degrees", "1")
    assert code == 0
    assert "H_1" in out and "H_0" not in out and "H_2" not in out


def test_homology_representatives_round_trip(capsys):
    ring_file = fixture_path("f2_semigroup_6_10_14_15.json")
    code, out, _ = run(capsys, "homology", "--ring", ring_file, "--json")
    assert code == 0
    data = json.loads(out)
    K = KoszulComplex(load_ring_spec(ring_file))
    for i_str, classes in data["classes"].items():
        i = int(i_str)
        basis = homology_basis(K, i)
        for idx, cls in enumerate(classes):
            z = parse_chain(K, cls["representative"])
            coords = class_of(K, i, z)
            expect = [K.field.one if t == idx else K.field.zero
                      for t in range(basis.dim)]
            assert coords == expect


def test_check_identity_true(capsys):
    code, out, _ = run(capsys, "check-identity", "--ring",
                       fixture_path("f2_identity_true.json"))
    assert code == 0
    assert out == "identity: true\n"


def test_check_identity_false(capsys):
    code, out, _ = run(capsys, "check-identity", "--ring",
                       fixture_path("f2_identity_false.json"))
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "identity: false"
    assert lines[1] == "witness: e1 -> e1 + h1.4 fails on H_2"


def test_check_identity_degree_restriction(capsys):
    # H_1(phi) is always the identity, so restricting to degree 1 passes
    code, out, _ = run(capsys, "check-identity", "--ring",
                       fixture_path("f2_semigroup_6_10_14_15.json"),
                       "--degrees", "1")
    assert code == 0


def test_lift_action(capsys):
    code, out, _ = run(capsys, "lift-action",
                       "--ring", fixture_path("f2_semigroup_6_10_14_15.json"),
                       "--lift", fixture_path("lift_6101415_e1.txt"))
    assert code == 1
    assert out == (
        "e1 -> (1)*e1 + (t^16)*e3 + (t^15)*e4\n"
        "e2 -> (1)*e2\n"
        "e3 -> (1)*e3\n"
        "e4 -> (1)*e4\n"
        "H_0(phi) identity: true\n"
        "H_1(phi) identity: true\n"
        "H_2(phi) identity: false\n"
        "H_3(phi) identity: true\n"
        "identity: false\n"
        "gr-identity: true\n"
        "min level shift: 1\n"
    )


def test_lift_action_identity_exit_zero(capsys, tmp_path):
    lift = tmp_path / "id.txt"
    lift.write_text("e1 -> e1\ne2 -> e2\n")
    code, out, _ = run(capsys, "lift-action",
                       "--ring", fixture_path("f2_ci_x2_y2.json"),
                       "--lift", str(lift))
    assert code == 0
    assert "identity: true" in out


def test_lift_action_requires_lift(capsys):
    code, _, err = run(capsys, "lift-action",
                       "--ring", fixture_path("f2_ci_x2_y2.json"))
    assert code == 2
    assert "lift" in err


def test_order(capsys):
    code, out, _ = run(capsys, "order", "--ring", fixture_path("f2_weighted_2_3.json"))
    assert code == 0
    assert out == "order: 2\n"


def test_order_infinite(capsys):
    code, out, _ = run(capsys, "order", "--ring", fixture_path("semigroup_regular.json"))
    assert code == 0
    assert out == "order: infinity\n"


def test_gr_text(capsys):
    code, out, _ = run(capsys, "gr", "--ring", fixture_path("f2_weighted_2_3.json"))
    assert code == 0
    assert out == (
        "gr H_0 levels: {0: 1}\n"
        "gr H_1 levels: {2: 1, 4: 1}\n"
        "gr H_2 levels: {7: 1}\n"
        "positive gr products vanish: true\n"
    )


def test_products_golod(capsys):
    code, out, _ = run(capsys, "products", "--ring", fixture_path("f2_golod_m2.json"))
    assert code == 0
    assert out == "H(1,1) product vanishes: true\n"


def test_products_witness(capsys):
    code, out, _ = run(capsys, "products", "--ring", fixture_path("f2_ci_x2_y2.json"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "H(1,1) product vanishes: false"
    assert lines[1].startswith("witness (1,1): ")
    assert "!= 0" in lines[1]


def test_suite_json_deterministic(capsys):
    args = ["suite", "--ring", fixture_path("f2_ci_x2_y2.json"), "--json",
            "--seed", "5"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["identity"]["overall"] is True
    assert report["complete_intersection"] is True


def test_suite_slow(capsys):
    code, out, _ = run(capsys, "suite", "--ring",
                       fixture_path("f2_products_row3.json"), "--json", "--slow")
    assert code == 0
    report = json.loads(out)
    assert report["order"] == 2
    assert report["identity_by_filtration"]["2"] is True


def test_suite_slow_rejects_semigroup(capsys):
    code, _, err = run(capsys, "suite", "--ring",
                       fixture_path("f2_semigroup_6_10_14_15.json"), "--slow")
    assert code == 2
    assert "standard graded" in err


def test_missing_ring_file(capsys):
    code, _, err = run(capsys, "betti", "--ring", "/nonexistent/ring.json")
    assert code == 2
    assert "error:" in err


def test_bad_field_name(capsys, tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text(json.dumps({
        "field": "F4",
        "presentation": {"type": "quotient", "variables": ["x"], "ideal": ["x^2"]},
    }))
    code, _, err = run(capsys, "betti", "--ring", str(spec))
    assert code == 2
    assert "field" in err


def test_bad_json_syntax(capsys, tmp_path):
    spec = tmp_path / "broken.json"
    spec.write_text("{not json")
    code, _, err = run(capsys, "betti", "--ring", str(spec))
    assert code == 2


def test_bad_presentation_type(capsys, tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text(json.dumps({
        "field": "F2",
        "presentation": {"type": "free", "variables": ["x"]},
    }))
    code, _, err = run(capsys, "betti", "--ring", str(spec))
    assert code == 2


def test_bad_degrees(capsys):
    code, _, err = run(capsys, "homology", "--ring",
                       fixture_path("f2_ci_x2_y2.json"), "--degrees", "1,x")
    assert code == 2


def test_lift_missing_generator(capsys, tmp_path):
    lift = tmp_path / "short.txt"
    lift.write_text("e1 -> e1\n")
    code, _, err = run(capsys, "lift-action",
                       "--ring", fixture_path("f2_ci_x2_y2.json"),
                       "--lift", str(lift))
    assert code == 2
    assert "e2" in err


def test_lift_non_cycle_perturbation(capsys, tmp_path):
    # e1 + y e1 fails the lift condition: (1+y) x != x since xy != 0
    lift = tmp_path / "bad.txt"
    lift.write_text("e1 -> e1 + y*e1\ne2 -> e2\n")
    code, _, err = run(capsys, "lift-action",
                       "--ring", fixture_path("f2_ci_x2_y2.json"),
                       "--lift", str(lift))
    assert code == 2


def test_lift_bad_degree(capsys, tmp_path):
    # t^7 is not in the semigroup, so the coefficient cannot be parsed
    lift = tmp_path / "bad.txt"
    lift.write_text("e1 -> e1 + t^7*e2\ne2 -> e2\ne3 -> e3\ne4 -> e4\n")
    code, _, err = run(capsys, "lift-action",
                       "--ring", fixture_path("f2_semigroup_6_10_14_15.json"),
                       "--lift", str(lift))
    assert code == 2


def test_format_lift_round_trip(tmp_path):
    ring_file = fixture_path("f2_semigroup_6_10_14_15.json")
    K = KoszulComplex(load_ring_spec(ring_file))
    R = K.ring
    z = K.element({(2,): R.parse_element("t^16"), (3,): R.parse_element("t^15")})
    phi = elementary_lift(K, 0, z)
    text = format_lift(phi)
    out = tmp_path / "lift.txt"
    out.write_text(text + "\n")
    phi2 = load_lift_spec(str(out), K)
    assert phi2.entries == phi.entries


def test_no_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2


def test_spec_weights_accepted(capsys):
    code, out, _ = run(capsys, "order", "--ring",
                       fixture_path("f2_weighted_2_3.json"), "--json")
    assert code == 0
    assert json.loads(out)["order"] == 2
