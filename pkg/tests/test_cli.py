from __future__ import annotations

import json
import subprocess
import sys
import time

import pytest

from mutinv import mutation
from mutinv.cli import main

FAMILY = "3\n0 2 3\n-1 0 3\n-1 -2 0\n"


def family(x1, x2, x3):
    return [[0, 2 * x1, 3 * x2], [-x1, 0, 3 * x3], [-x2, -2 * x3, 0]]


@pytest.fixture
def write(tmp_path):
    def _write(name, content):
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCheck:
    def test_family(self, capsys, write):
        code, out, _ = run(capsys, "check", write("b.txt", FAMILY))
        assert code == 0 and "symmetrizer: 1 2 3" in out

    def test_sign_incoherent(self, capsys, write):
        code, _, err = run(capsys, "check", write("b.txt", "2\n0 1\n1 0\n"))
        assert code == 2 and "sign" in err.lower()

    def test_malformed(self, capsys, write):
        code, _, err = run(capsys, "check", write("b.txt", "2\n0 1\n"))
        assert code == 3 and err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "check", str(tmp_path / "nope"))[0] == 3

    def test_json_output(self, capsys, write):
        code, out, _ = run(capsys, "check", "--output", "json", write("b.txt", FAMILY))
        assert code == 0 and json.loads(out)["symmetrizer"] == [1, 2, 3]


class TestMutate:
    def test_zero(self, capsys, write):
        code, out, _ = run(capsys, "mutate", write("z.txt", "2\n0 0\n0 0\n"), "1")
        assert code == 0 and out.split() == ["2", "0", "0", "0", "0"]

    def test_involution(self, capsys, write):
        code, out, _ = run(capsys, "mutate", write("b.txt", FAMILY), "1,1")
        assert code == 0 and out.split() == FAMILY.split()

    def test_one_step(self, capsys, write):
        code, out, _ = run(capsys, "mutate", "--output", "json", write("b.txt", FAMILY), "1")
        assert code == 0 and json.loads(out)["entries"] == [[0, -2, -3], [1, 0, 3], [1, -2, 0]]

    def test_bad_index(self, capsys, write):
        assert run(capsys, "mutate", write("b.txt", FAMILY), "4")[0] == 2

    def test_bad_sequence(self, capsys, write):
        assert run(capsys, "mutate", write("b.txt", FAMILY), "1,x")[0] == 3

    def test_json_round_trip(self, capsys, write):
        _, out, _ = run(capsys, "mutate", "--output", "json", write("b.txt", FAMILY), "2,3")
        _, back, _ = run(capsys, "mutate", "--output", "json", write("c.json", out), "3,2")
        assert json.loads(back)["entries"] == family(1, 1, 1)


class TestDelta:
    def test_delta(self, capsys, write):
        code, out, _ = run(capsys, "delta", write("b.json", {"n": 3, "entries": family(1, 1, 0)}))
        assert code == 0 and out.startswith("delta = 2 (mod 4)")

    def test_zero(self, capsys, write):
        code, out, _ = run(capsys, "delta", write("z.txt", "3\n0 0 0\n0 0 0\n0 0 0\n"))
        assert out.strip() == "delta = 0 (mod 4), det = 8"

    def test_prime_with_flag(self, capsys, write):
        path = write("b.json", {"n": 3, "entries": family(1, 0, 0)})
        code, out, _ = run(capsys, "delta", "--prime", "--symmetrizer", "1,2,3", path)
        assert code == 0 and out.startswith("delta' = 12 (mod 24)")

    def test_prime_from_file(self, capsys, write):
        path = write("b.json", {"n": 3, "entries": family(1, 0, 0), "symmetrizer": [1, 2, 3]})
        code, out, _ = run(capsys, "delta", "--prime", path)
        assert out.strip() == "delta' = 12 (mod 24), det = 36"

    def test_not_coprime(self, capsys, write):
        path = write("b.txt", "2\n0 2\n-1 0\n")
        assert run(capsys, "delta", "--prime", "--symmetrizer", "2,4", path)[0] == 2

    def test_json(self, capsys, write):
        _, out, _ = run(capsys, "delta", "--output", "json", write("b.txt", FAMILY))
        obj = json.loads(out)
        assert obj["modulus"] == 4 and isinstance(obj["det"], str)


class TestExplore:
    def test_rank_two(self, capsys, write):
        code, out, _ = run(capsys, "explore", write("r.txt", "2\n0 1\n-1 0\n"))
        assert code == 0 and "members: 1" in out and "complete: true" in out

    def test_dump_resume(self, capsys, write, tmp_path):
        dump = str(tmp_path / "class.jsonl")
        src = write("b.txt", FAMILY)
        assert run(capsys, "explore", "--depth", "2", "--out", dump, src)[0] == 0
        code, out, _ = run(capsys, "explore", "--depth", "3", "--resume", dump, "--output", "json")
        _, direct, _ = run(capsys, "explore", "--depth", "3", "--output", "json", src)
        assert code == 0 and json.loads(out)["members"] == json.loads(direct)["members"]

    def test_needs_input(self, capsys):
        assert run(capsys, "explore")[0] == 2

    def test_bad_budget(self, capsys, write):
        assert run(capsys, "explore", "--nodes", "0", write("b.txt", FAMILY))[0] == 2

    def test_dimension_cap(self, capsys, write):
        text = "3\n0 0 0\n0 0 0\n0 0 0\n"
        assert run(capsys, "explore", "--canon-cap", "2", write("z.txt", text))[0] == 2


class TestDistinguish:
    def test_provably_different(self, capsys, write):
        a = write("a.json", {"n": 3, "entries": family(1, 0, 0), "symmetrizer": [1, 2, 3]})
        b = write("b.json", {"n": 3, "entries": family(1, 0, 1), "symmetrizer": [1, 2, 3]})
        code, out, _ = run(capsys, "distinguish", a, b)
        assert code == 1 and out.strip() == "ProvablyDifferent: delta' 12 ≠ 0"

    def test_same_class(self, capsys, write):
        a = write("a.txt", FAMILY)
        b = write("b.json", {"n": 3, "entries": [[0, -2, 9], [1, 0, -3], [-3, 2, 0]]})
        code, out, _ = run(capsys, "distinguish", a, b)
        assert code == 0 and out.startswith("SameClass: seq=2")

    def test_unknown(self, capsys, write):
        a = write("a.txt", "3\n0 3 -3\n-3 0 3\n3 -3 0\n")
        _, far, _ = run(capsys, "mutate", "--output", "json", a, "1,2,3,1,2,3")
        b = write("b.json", far)
        code, out, _ = run(capsys, "distinguish", "--depth", "1", "--nodes", "10", a, b)
        assert code == 4 and out.startswith("Unknown")


class TestEvidence:
    def test_binary(self, capsys):
        code, out, _ = run(capsys, "evidence", "--n", "3", "--d", "1,1,1", "--samples", "100", "--seed", "7")
        values = set(map(int, out.strip()[len("delta values: {"):-1].split(", ")))
        assert code == 0 and values <= {0, 2}

    def test_wrong_length(self, capsys):
        assert run(capsys, "evidence", "--n", "3", "--d", "1,1")[0] == 2


class TestSelftest:
    def test_default(self, capsys):
        code, out, _ = run(capsys, "selftest")
        assert code == 0 and "passed" in out

    def test_thousand_samples_under_a_minute(self, capsys):
        t = time.perf_counter()
        assert run(capsys, "selftest", "--samples", "1000")[0] == 0
        assert time.perf_counter() - t < 60

    def test_broken_formula_detected(self, capsys, monkeypatch):
        real = mutation._mutate_by_factors

        def broken(B, k):
            rows = [list(r) for r in real(B, k)]
            rows[0][-1] += 1
            return tuple(map(tuple, rows))

        monkeypatch.setattr(mutation, "_mutate_by_factors", broken)
        code, _, err = run(capsys, "selftest", "--samples", "20")
        assert code == 5 and "factor-form" in err


def test_module_entry_point(tmp_path):
    p = tmp_path / "b.txt"
    p.write_text(FAMILY)
    proc = subprocess.run([sys.executable, "-m", "mutinv", "check", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0 and "symmetrizer: 1 2 3" in proc.stdout
