import csv
import io
import json
import subprocess
import sys


from chordcount import cli
from chordcount.cache import ENV_VAR, MemoStore


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def counts_of(text):
    return [int(line.split()[-1]) for line in text.splitlines() if line.strip().startswith("k=")]


def test_catalan(capsys):
    code, out, _ = run(capsys, "count", "--mode", "orientable", "--genus", "0", "--backbones", "1",
                       "--max-chords", "7", "--method", "toprec")
    assert code == 0
    assert counts_of(out) == [1, 1, 2, 5, 14, 42, 132, 429]


def test_qcurve_example(capsys):
    code, out, _ = run(capsys, "count", "--mode", "nonoriented", "--crosscap", "2", "--backbones", "3",
                       "--max-chords", "6", "--method", "qcurve")
    assert code == 0
    assert counts_of(out)[4:] == [2952, 105300, 2021396]


def test_empty_diagram_json(capsys):
    code, out, _ = run(capsys, "count", "--mode", "orientable", "--genus", "0", "--backbones", "1",
                       "--max-chords", "0", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["entries"] == [{"g_or_h": 0, "b": 1, "k": 0, "count": "1"}]


def test_json_roundtrip(capsys):
    code, out, _ = run(capsys, "count", "--mode", "nonoriented", "--crosscap", "1-2", "--backbones", "1,2",
                       "--max-chords", "5", "--format", "json")
    doc = json.loads(out)
    assert set(doc) == {"method", "mode", "entries"}
    assert doc["method"] == "toprec" and doc["mode"] == "nonoriented"
    table = {(e["g_or_h"], e["b"], e["k"]): int(e["count"]) for e in doc["entries"]}
    assert all(isinstance(e["count"], str) for e in doc["entries"])
    assert table[(2, 1, 3)] == 52 and len(table) == 2 * 2 * 6
    assert json.loads(json.dumps(doc)) == doc


def test_csv(capsys):
    code, out, _ = run(capsys, "count", "--genus", "1", "--backbones", "2", "--max-chords", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["g_or_h", "b", "k", "count"]
    assert rows[-1] == ["1", "2", "4", "440"]


def test_deterministic_output(capsys):
    argv = ("count", "--mode", "nonorientable-only", "--crosscap", "2", "--backbones", "1-2", "--max-chords", "5",
            "--format", "json")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    third = run(capsys, *argv, "--no-cache")[1]
    assert first == second == third


def test_all_methods_agree(capsys):
    code, out, err = run(capsys, "count", "--mode", "nonorientable-only", "--crosscap", "2", "--backbones", "1",
                         "--max-chords", "4", "--method", "all")
    assert code == 0
    assert "klein" in err and "oracle" in err and "MISMATCH" not in err


def test_mismatch_exit(capsys, monkeypatch):
    real = cli.RUNNERS["qcurve"]

    def broken(cfg):
        entries = dict(real(cfg))
        key = max(entries)
        entries[key] += 1
        return entries

    monkeypatch.setitem(cli.RUNNERS, "qcurve", broken)
    code, _, err = run(capsys, "count", "--genus", "0", "--backbones", "1", "--max-chords", "3", "--method", "all")
    assert code == 1 and "MISMATCH" in err


def test_infeasible(capsys):
    code, _, err = run(capsys, "count", "--mode", "nonoriented", "--crosscap", "1", "--backbones", "3",
                       "--max-chords", "9", "--method", "oracle")
    assert code == 2 and "infeasible" in err
    assert run(capsys, "count", "--mode", "orientable", "--crosscap", "1")[0] == 2
    assert run(capsys, "count", "--backbones", "0")[0] == 2


def test_verify_fixtures(capsys):
    code, out, _ = run(capsys, "verify", "--fixture", "appendix-a")
    assert code == 0 and "(22)" in out and "(42)" in out
    code, out, _ = run(capsys, "verify", "--fixture", "appendix-c")
    assert code == 0 and "0 failed" in out


def _populate(capsys):
    assert run(capsys, "count", "--genus", "1", "--backbones", "2", "--max-chords", "3")[0] == 0


def test_cache_lifecycle(capsys, tmp_path):
    _populate(capsys)
    code, out, _ = run(capsys, "cache", "list")
    assert code == 0
    labels = [line for line in out.splitlines() if line.startswith("chi=")]
    chis = [int(line.split()[0][4:]) for line in labels]
    assert labels and chis == sorted(chis)
    code, out, _ = run(capsys, "cache", "validate")
    assert code == 0 and "STALE" not in out
    code, out, _ = run(capsys, "cache", "clear")
    assert code == 0 and "removed" in out
    assert MemoStore().load() == {}


def _tamper(store):
    lines = store.path.read_text().splitlines()
    i = next(n for n, line in enumerate(lines) if not line.startswith("#"))
    head, body = lines[i].split("\t")
    coeff, rest = body.split("/", 1)
    lines[i] = f"{head}\t{int(coeff) + 1}/{rest}"
    store.path.write_text("\n".join(lines) + "\n")
    return head


def test_cache_tamper_detected(capsys):
    _populate(capsys)
    store = MemoStore()
    head = _tamper(store)
    g, h, l = (int(v) for v in head.split()[:3])
    code, out, _ = run(capsys, "cache", "validate")
    assert code == 3
    assert "STALE" in out and f"(g,h,l)=({g},{h},{l})" in out and "+++ recomputed" in out


def test_cache_corruption(capsys):
    _populate(capsys)
    store = MemoStore()
    store.path.write_text(store.path.read_text() + "1 1 0\tnot a body\n")
    code, _, err = run(capsys, "count", "--genus", "1", "--backbones", "1", "--max-chords", "3")
    assert code == 3 and "corrupt" in err
    assert run(capsys, "cache", "validate")[0] == 3


def test_cache_dir_flag(capsys, tmp_path):
    d = tmp_path / "elsewhere"
    assert run(capsys, "--cache-dir", str(d), "count", "--genus", "1", "--max-chords", "3")[0] == 0
    assert (d / "memo.txt").exists()


def test_module_entry_point(tmp_path):
    env = {ENV_VAR: str(tmp_path), "PATH": "/usr/bin:/bin"}
    res = subprocess.run([sys.executable, "-m", "chordcount", "count", "--max-chords", "3", "--format", "csv"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0 and res.stdout.splitlines()[-1] == "0,1,3,5"
