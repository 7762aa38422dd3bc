import json

import numpy as np
import pytest

from symrect.cli import main
from symrect.pipeline import resolve_max_load, run_mincuts, run_partition
from symrect.report import (
    PartitionReport,
    ProfileError,
    density_csv,
    density_grid,
    density_table,
    make_report,
    performance_profile,
    profile_csv,
)
from symrect.sparse import SparseMatrix, save_matrix
from symrect.synthetic import random_matrix

EYE6 = SparseMatrix.from_dense(np.eye(6, dtype=int))

# load imbalance at p = 8, natural order: NIC, UNI, PBD, PBI, PTC per graph
PUBLISHED_NAT_P8 = {
    "cit-HepTh": (1.7, 1.1, 1.4, 1.7, 0.6),
    "email-EuAll": (2.2, 1.1, 1.9, 2.2, 0.2),
    "soc-Epinions1": (1.7, 2.1, 1.3, 1.7, 0.7),
    "cit-HepPh": (1.7, 0.8, 1.3, 1.7, 0.6),
    "soc-Slashdot0811": (1.8, 2.4, 1.3, 1.8, 0.7),
    "soc-Slashdot0902": (1.8, 2.6, 1.3, 1.8, 0.7),
    "flickrEdges": (1.6, 1.2, 1.1, 1.6, 0.6),
    "amazon0312": (1.8, 1.1, 1.6, 1.8, 0.4),
    "amazon0505": (1.8, 1.2, 1.6, 1.8, 0.4),
    "amazon0601": (2.1, 3.0, 1.9, 2.1, 0.6),
    "scale18": (1.7, 1.4, 0.9, 1.7, 0.8),
    "scale19": (2.2, 6.7, 2.2, 2.2, 1.1),
    "as-Skitter": (1.7, 1.6, 1.0, 1.7, 0.9),
    "scale20": (1.7, 1.4, 1.0, 1.7, 0.9),
    "cit-Patents": (1.9, 2.2, 1.8, 1.9, 1.0),
    "scale21": (1.7, 1.3, 1.0, 1.7, 0.9),
    "soc-LiveJournal1": (1.9, 7.7, 1.7, 1.9, 0.4),
    "wb-edu": (3.4, 4.0, 3.4, 3.4, 3.2),
    "twitter": (1.7, 2.0, 1.2, 1.7, 0.3),
    "friendster": (1.3, 2.7, 1.1, 1.3, 0.6),
}
ALGOS = ("nic", "uni", "pbd", "pbi", "ptc")


@pytest.fixture
def matrix_file(tmp_path):
    path = tmp_path / "ten.mtx"
    path.write_bytes(save_matrix(random_matrix(10, 0.3, seed=4, symmetric=True), format="mtx"))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- reports


def test_report_roundtrip():
    A = random_matrix(12, 0.3, seed=1)
    r = run_partition(A, "ptc", 3, input_info={"name": "x"})
    back = PartitionReport.from_json(r.to_json())
    assert back == r
    assert back.recompute_lambda() == pytest.approx(r.lam, abs=1e-12)


@pytest.mark.parametrize("algo", ALGOS)
def test_lambda_recomputable(algo):
    A = random_matrix(14, 0.25, seed=3)
    r = run_partition(A, algo, 4)
    assert abs(r.recompute_lambda() - r.lam) <= 1e-12
    assert sum(map(sum, r.tile_loads)) == A.nnz


def test_report_schema_checked():
    r = make_report(EYE6, "uni", "nat", [0, 3, 6], input_info={"name": "eye"})
    d = r.to_dict()
    d["schema"] = 99
    with pytest.raises(ValueError):
        PartitionReport.from_dict(d)


def test_report_timing_excluded():
    A = random_matrix(12, 0.3, seed=2)
    a = run_partition(A, "pbd", 3).to_json(timing=False)
    b = run_partition(A, "pbd", 3).to_json(timing=False)
    assert a == b and "wall_ms" not in a


def test_nic_report_is_asymmetric():
    A = random_matrix(16, 0.2, seed=5)
    r = run_partition(A, "nic", 3, q=4)
    assert (r.p, r.q) == (4, 3)
    assert "lambda_sym_row" in r.extra


def test_mincuts_report():
    A = random_matrix(12, 0.3, seed=6)
    r = run_mincuts(A, "ptl", A.nnz)
    assert r.p == 1 and r.flags["bound_satisfied"] and r.kind == "mincuts"


def test_resolve_max_load():
    assert resolve_max_load(100, frac=0.125) == 12
    assert resolve_max_load(100, max_load=7) == 7
    assert resolve_max_load(3, frac=0.1) == 1
    with pytest.raises(ValueError):
        resolve_max_load(10)


# ---------------------------------------------------------------- density maps


def test_density_identity():
    r = make_report(EYE6, "x", "nat", [0, 3, 6], input_info={})
    assert density_grid(r.tile_loads).tolist() == [[50, 0], [0, 50]]
    assert density_grid([[7]]).tolist() == [[100]]


def test_density_random_matches_loads():
    A = random_matrix(15, 0.3, seed=7)
    r = run_partition(A, "pbi", 4)
    grid = density_grid(r.tile_loads)
    assert abs(grid.sum() - 100) <= 0.01
    rows = density_csv(grid).splitlines()
    assert rows[0] == "band,0,1,2,3"
    parsed = np.array([[float(v) for v in line.split(",")[1:]] for line in rows[1:]])
    want = np.array(r.tile_loads) / A.nnz * 100
    assert np.allclose(parsed, want, atol=1e-4)
    assert len(density_table(grid).splitlines()) == 5


def test_density_empty():
    assert density_grid([[0, 0], [0, 0]]).sum() == 0


# ---------------------------------------------------------------- profiles


def test_profile_single_algorithm():
    prof = performance_profile([("a", "x", 1.0), ("b", "x", 3.0)])
    assert all(frac == 1.0 for _, frac in prof["x"])


def test_profile_dominant():
    rows = [(i, "good", 1.0) for i in "abc"] + [(i, "bad", 2.5) for i in "abc"]
    prof = performance_profile(rows, [1, 2, 3])
    assert prof["good"] == [(1.0, 1.0), (2.0, 1.0), (3.0, 1.0)]
    assert prof["bad"] == [(1.0, 0.0), (2.0, 0.0), (3.0, 1.0)]


def test_profile_published_nat_block():
    rows = [(g, a, v) for g, vals in PUBLISHED_NAT_P8.items() for a, v in zip(ALGOS, vals)]
    prof = performance_profile(rows)
    at_one = {a: prof[a][0][1] for a in ALGOS}
    assert all(at_one["ptc"] > at_one[a] for a in ALGOS if a != "ptc")
    assert profile_csv(prof).splitlines()[0] == "x,nic,pbd,pbi,ptc,uni"


def test_profile_missing_keys():
    with pytest.raises(ProfileError, match="b:i2"):
        performance_profile([("i1", "a", 1), ("i2", "a", 1), ("i1", "b", 1)])
    with pytest.raises(ProfileError):
        performance_profile([])


# ---------------------------------------------------------------- cli


def test_cli_uni_two_parts(matrix_file, capsys):
    code, out, _ = run_cli(capsys, "partition", "--input", matrix_file, "--algo", "uni",
                           "--parts", "2")
    assert code == 0
    assert json.loads(out)["col_cuts"] == [0, 5, 10]


def test_cli_deterministic(matrix_file, capsys):
    argv = ("partition", "--input", matrix_file, "--algo", "pbd,ptc", "--parts", "2,3",
            "--order", "nat,rcm")
    outs = []
    for jobs in ("1", "4"):
        code, out, _ = run_cli(capsys, *argv, "--jobs", jobs)
        assert code == 0
        data = json.loads(out)
        for d in data:
            d.pop("timing")
        outs.append(json.dumps(data, sort_keys=True))
    assert outs[0] == outs[1]
    assert len(json.loads(outs[0])) == 8


def test_cli_csv_and_out(matrix_file, tmp_path, capsys):
    dest = tmp_path / "r.csv"
    code, out, _ = run_cli(capsys, "partition", "--input", matrix_file, "--algo", "nic",
                           "--parts", "2", "--output", "csv", "--out", str(dest))
    assert code == 0 and out == ""
    assert dest.read_text().startswith("algorithm,ordering,input")


def test_cli_mincuts(matrix_file, capsys):
    code, out, _ = run_cli(capsys, "mincuts", "--input", matrix_file, "--algo", "ptl",
                           "--max-load-frac", "1")
    assert code == 0 and json.loads(out)["p"] == 1
    code, out, _ = run_cli(capsys, "mincuts", "--input", matrix_file, "--algo", "btl-pbd",
                           "--max-load", "3")
    rep = json.loads(out)
    assert code == 0 and rep["extra"]["Z"] == 3


def test_cli_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\nx y\n")
    code, out, err = run_cli(capsys, "partition", "--input", str(bad), "--algo", "uni",
                             "--parts", "2")
    assert code == 2 and out == "" and "line 2" in err


def test_cli_missing_file(capsys):
    code, _, _ = run_cli(capsys, "partition", "--input", "/nonexistent.mtx", "--algo", "uni",
                         "--parts", "2")
    assert code == 2


def test_cli_dimension_error(tmp_path, capsys):
    f = tmp_path / "rect.mtx"
    f.write_text("%%MatrixMarket matrix coordinate pattern general\n2 3 1\n1 3\n")
    code, _, _ = run_cli(capsys, "partition", "--input", str(f), "--no-symmetrize",
                         "--algo", "uni", "--parts", "1")
    assert code == 2


def test_cli_bad_arguments(matrix_file, capsys):
    assert run_cli(capsys, "partition", "--input", matrix_file, "--algo", "zzz",
                   "--parts", "2")[0] == 2
    assert run_cli(capsys, "partition", "--input", matrix_file)[0] == 2


def test_cli_infeasible(matrix_file, capsys):
    code, out, err = run_cli(capsys, "partition", "--input", matrix_file, "--algo", "pbd",
                             "--parts", "11")
    assert code == 3 and out == "" and "infeasible" in err
    assert run_cli(capsys, "mincuts", "--input", matrix_file, "--algo", "ptl",
                   "--max-load", "0")[0] == 3


def test_cli_density_map(matrix_file, tmp_path, capsys):
    rep = tmp_path / "r.json"
    assert main(["partition", "--input", matrix_file, "--algo", "ptc", "--parts", "2",
                 "--out", str(rep)]) == 0
    grid_csv = tmp_path / "g.csv"
    code, out, _ = run_cli(capsys, "density-map", "--report", str(rep), "--csv", str(grid_csv))
    assert code == 0
    vals = [float(v) for line in grid_csv.read_text().splitlines()[1:]
            for v in line.split(",")[1:]]
    assert abs(sum(vals) - 100) <= 0.01
    code, out, _ = run_cli(capsys, "density-map", "--input", matrix_file, "--parts", "2")
    assert code == 0 and out.startswith("band,0,1")
    assert run_cli(capsys, "density-map")[0] == 2


def test_cli_perf_profile(matrix_file, tmp_path, capsys):
    paths = []
    for algo in ("uni", "ptc"):
        p = tmp_path / f"{algo}.json"
        main(["partition", "--input", matrix_file, "--algo", algo, "--parts", "2,3",
              "--out", str(p)])
        paths.append(str(p))
    code, out, _ = run_cli(capsys, "perf-profile", *paths, "--x-grid", "1,2")
    assert code == 0
    assert out.splitlines()[0] == "x,ptc,uni"
    table = tmp_path / "t.csv"
    table.write_text("instance,algorithm,lambda\na,x,1\nb,x,2\na,y,1\n")
    code, _, err = run_cli(capsys, "perf-profile", "--table", str(table))
    assert code == 2 and "y:b" in err


def test_cli_edge_list_gz(tmp_path, capsys):
    import gzip

    f = tmp_path / "g.txt.gz"
    f.write_bytes(gzip.compress(b"0 1\n1 2\n2 3\n"))
    code, out, _ = run_cli(capsys, "partition", "--input", str(f), "--algo", "uni",
                           "--parts", "2")
    rep = json.loads(out)
    assert code == 0 and rep["input"]["nnz"] == 6 and len(rep["input"]["sha256"]) == 64


def test_cli_bad_order(matrix_file, capsys):
    code, _, err = run_cli(capsys, "partition", "--input", matrix_file, "--algo", "uni",
                           "--parts", "2", "--order", "nat,xyz")
    assert code == 2 and "xyz" in err
