import io
import json
import sys
import threading
import urllib.error
import urllib.request

import pytest

from plabica.cli import main
from plabica.plabic import PlabicGraph, build_checkboard
from plabica.service import Session, graph_payload, serve


def run_cli(argv, stdin_payload=None, capsys=None):
    if stdin_payload is not None:
        sys.stdin = io.StringIO(json.dumps(stdin_payload))
    try:
        code = 0
        try:
            main(argv)
        except SystemExit as exc:
            code = exc.code or 0
        out, err = capsys.readouterr()
        return code, out, err
    finally:
        sys.stdin = sys.__stdin__


class TestCLI:
    def test_build_then_labels(self, capsys):
        code, out, _ = run_cli(["build", "--family", "ch", "--k", "3", "--n", "6"], capsys=capsys)
        assert code == 0
        graph = json.loads(out)
        code, out, _ = run_cli(["labels"], stdin_payload=graph, capsys=capsys)
        assert code == 0
        data = json.loads(out)
        assert len(data["left"]["labels"]) == 10
        assert [2, 3, 5] in data["right"]["labels"]

    def test_mutate_frozen_exits_2(self, capsys):
        code, out, _ = run_cli(["build", "--family", "ch", "--k", "3", "--n", "6"], capsys=capsys)
        graph = json.loads(out)
        code, _, err = run_cli(["mutate", "--label", "1,2,3"], stdin_payload=graph, capsys=capsys)
        assert code == 2
        assert "frozen" in err

    def test_bad_family_parameters_exit_2(self, capsys):
        code, _, err = run_cli(["build", "--family", "ch", "--k", "1", "--n", "6"], capsys=capsys)
        assert code == 2

    def test_mutate_roundtrip(self, capsys):
        code, out, _ = run_cli(["build", "--family", "ch", "--k", "2", "--n", "5"], capsys=capsys)
        graph = json.loads(out)
        code, out, _ = run_cli(["mutate", "--label", "1,3"], stdin_payload=graph, capsys=capsys)
        assert code == 0
        mutated = json.loads(out)
        assert mutated != graph

    def test_orbit_and_stabilizer(self, capsys):
        code, out, _ = run_cli(["build", "--family", "ch", "--k", "2", "--n", "5"], capsys=capsys)
        graph = json.loads(out)
        code, out, _ = run_cli(["orbit"], stdin_payload=graph, capsys=capsys)
        assert json.loads(out)["size"] == 5
        code, out, _ = run_cli(["stabilizer"], stdin_payload=graph, capsys=capsys)
        assert json.loads(out)["order"] == 2

    def test_quiver(self, capsys):
        code, out, _ = run_cli(["build", "--family", "rec", "--k", "2", "--n", "4"], capsys=capsys)
        graph = json.loads(out)
        code, out, _ = run_cli(["quiver"], stdin_payload=graph, capsys=capsys)
        data = json.loads(out)
        assert len(data["vertices"]) == 5

    def test_superpotential_closed_form(self, capsys):
        code, out, _ = run_cli(
            ["superpotential", "--closed-form", "ch-rot", "--m", "1", "--k", "2", "--n", "4"],
            capsys=capsys,
        )
        assert code == 0
        assert "W" in json.loads(out)

    def test_check_gt(self, capsys):
        code, out, _ = run_cli(["build", "--family", "ch", "--k", "2", "--n", "4"], capsys=capsys)
        graph = json.loads(out)
        code, out, _ = run_cli(["check-gt"], stdin_payload=graph, capsys=capsys)
        assert code == 0
        assert json.loads(out)["gt_equivalent"] is True

    def test_dot(self, capsys):
        code, out, _ = run_cli(["build", "--family", "ch", "--k", "2", "--n", "4", "--dot"], capsys=capsys)
        assert out.startswith("graph plabic {")


@pytest.fixture()
def server(tmp_path):
    srv = serve(port=0, session_path=tmp_path / "session.json")
    port = srv.server_address[1]
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{port}"
    srv.shutdown()


def request(base, method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        base + path, data=data, method=method, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as exc:
        return exc.code, json.loads(exc.read())


class TestService:
    def test_reset_and_graph(self, server):
        status, data = request(server, "POST", "/reset", {"family": "ch", "k": 3, "n": 6})
        assert status == 200
        assert len(data["faces"]) == 10
        status, data = request(server, "GET", "/graph")
        assert status == 200
        assert len(data["faces"]) == 10
        assert data["graph"]["n"] == 6

    def test_mutate_involution(self, server):
        request(server, "POST", "/reset", {"family": "ch", "k": 3, "n": 6})
        status, first = request(server, "POST", "/mutate", {"label": [1, 4, 6]})
        assert status == 200
        status, second = request(server, "POST", "/mutate", {"label": first["changed"]["added"]})
        assert status == 200
        assert len(second["history"]) == 2
        status, base = request(server, "POST", "/reset", {"family": "ch", "k": 3, "n": 6})
        assert base["graph"] == second["graph"]

    def test_error_codes(self, server):
        request(server, "POST", "/reset", {"family": "ch", "k": 3, "n": 6})
        status, _ = request(server, "POST", "/mutate", {"label": [1, 2, 3]})
        assert status == 409
        status, _ = request(server, "POST", "/mutate", {"label": "junk"})
        assert status == 400
        status, _ = request(server, "POST", "/reset", {"family": "ch", "k": 1, "n": 6})
        assert status == 422

    def test_history_replay_determinism(self, server, tmp_path):
        request(server, "POST", "/reset", {"family": "ch", "k": 3, "n": 6})
        request(server, "POST", "/mutate", {"label": [1, 4, 6]})
        request(server, "POST", "/mutate", {"label": [1, 3, 4]})
        _, doc = request(server, "GET", "/history")
        _, live = request(server, "GET", "/graph")
        replayed = Session._replay(doc)
        assert json.dumps(replayed.to_json(), sort_keys=True) == json.dumps(
            live["graph"], sort_keys=True
        )

    def test_orbit_and_polytope_endpoints(self, server):
        request(server, "POST", "/reset", {"family": "ch", "k": 2, "n": 4})
        status, data = request(server, "GET", "/orbit")
        assert status == 200 and len(data["orbit"]) == 2
        status, data = request(server, "GET", "/polytope?r=1")
        assert status == 200 and data["rows"]

    def test_superpotential_endpoint(self, server):
        request(server, "POST", "/reset", {"family": "ch", "k": 2, "n": 4})
        status, data = request(server, "GET", "/superpotential")
        assert status == 200
        assert set(data["terms"]) == {"1", "2", "3", "4"}

    def test_dihedral_reset(self, server):
        status, data = request(
            server,
            "POST",
            "/reset",
            {"family": "ch", "k": 2, "n": 5, "dihedral": {"shift": 2, "reflected": True}},
        )
        assert status == 200
        assert len(data["faces"]) == 7


class TestPayload:
    def test_graph_payload_shape(self):
        payload = graph_payload(build_checkboard(3, 6))
        assert len(payload["faces"]) == 10
        mutable = [f for f in payload["faces"] if f["mutable"]]
        frozen = [f for f in payload["faces"] if f["frozen"]]
        assert len(mutable) == 4 and len(frozen) == 6
        assert all(str(v["id"]) in payload["layout"] for v in payload["graph"]["vertices"])

    def test_session_replay_invariant(self, tmp_path):
        session = Session(tmp_path / "s.json")
        session.reset("ch", 3, 6)
        G1, _ = session.mutate(build_checkboard(3, 6).mutable_labels()[0])
        doc = session.history()
        assert Session._replay(doc).label_collection() == G1.label_collection()


def test_build_with_dihedral_flags(capsys):
    code, out, _ = run_cli(
        ["build", "--family", "ch", "--k", "2", "--n", "5", "--shift", "2", "--reflect"],
        capsys=capsys,
    )
    assert code == 0
    graph = json.loads(out)
    code, out, _ = run_cli(["labels"], stdin_payload=graph, capsys=capsys)
    data = json.loads(out)
    assert len(data["left"]["labels"]) == 7
    # reflected graphs still have the right trip type
    G = PlabicGraph.from_json(graph)
    assert G.trip_permutation() == tuple((i + 2 - 1) % 5 + 1 for i in range(1, 6))
