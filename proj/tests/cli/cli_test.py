"""Exit codes, summaries and error reporting of the command-line driver."""
import json
import pathlib
import subprocess
import sys
import tempfile

root = pathlib.Path(sys.argv[1])
cli = sys.argv[2]
inst = root / "examples_instances"
failures = 0


def run(*args):
    return subprocess.run([cli, *map(str, args)], capture_output=True, text=True)


def expect(name, result, code, needle=None, stream="stdout"):
    global failures
    text = getattr(result, stream)
    ok = result.returncode == code and (needle is None or needle in text)
    if not ok:
        failures += 1
        print(f"FAIL {name}: exit {result.returncode}, {stream}: {text.strip()[:300]}")
    else:
        print(f"ok   {name}")


expect("bounded zero", run("decide-bounded", "--instance", inst / "two_plus_two_cos.json"), 0, "has_zero")
expect("bounded no zero", run("decide-bounded", "--instance", inst / "cos_minus_two.json", "--interval", 0, 10), 0,
       "no_zero")
expect("interval override", run("decide-bounded", "--instance", inst / "one_minus_cos.json", "--interval", 1, 2), 0,
       "no_zero")
expect("one frequency bounded", run("decide-unbounded", "--instance", inst / "cos_minus_two.json"), 0, "bounded")
expect("one frequency unbounded", run("decide-unbounded", "--instance", inst / "one_minus_cos.json"), 0, "unbounded")
expect("refusal", run("decide-unbounded", "--instance", inst / "non_simple_two_freq.json"), 2, "refused")
expect("case I without parameters", run("decide-unbounded", "--instance", inst / "two_freq_near_miss.json"), 2,
       "inconclusive")
expect("case I with parameters",
       run("decide-unbounded", "--instance", inst / "two_freq_near_miss.json", "--baker", 10, 1000), 0,
       "bounded_conditional")
expect("factor", run("factor", "--instance", inst / "laurent_example.json"), 0, "type3")
expect("continued fraction", run("cf", "--minpoly", -2, 0, 1, "--box", 1, 2, "-k", 6), 0, "1; 2, 2, 2, 2, 2")
expect("type bounds", run("type-bounds", "--minpoly", -1, -1, 1, "--box", 1, 2, "-k", 20), 0, "0.44")

verdict = run("decide-bounded", "--instance", inst / "two_plus_two_cos.json", "--json")
try:
    doc = json.loads(verdict.stdout)
    expect("json verdict", verdict, 0, '"outcome": "has_zero"')
    if doc["kind"] != "type3-h-crossing":
        failures += 1
        print("FAIL json verdict kind:", doc["kind"])
except (json.JSONDecodeError, KeyError) as e:
    failures += 1
    print("FAIL json verdict:", e)

with tempfile.TemporaryDirectory() as tmp:
    trace = pathlib.Path(tmp) / "trace.csv"
    # the envelope alone cannot certify the tangential zero, so the trace run ends undecided
    expect("trace", run("eval-trace", "--instance", inst / "two_plus_two_cos.json", "--trace", trace), 2,
           "undecided")
    lines = trace.read_text().splitlines() if trace.exists() else []
    if not lines or lines[0] != "round,t,lower,upper" or len(lines) < 3:
        failures += 1
        print("FAIL trace columns:", lines[:2])

    bad_json = pathlib.Path(tmp) / "bad_json.json"
    bad_json.write_text('{\n  "mode": "exppoly",\n  "terms": []\n  "interval": [0, 1]\n}\n')
    expect("malformed json", run("decide-bounded", "--instance", bad_json), 1, "line 4, column", "stderr")

    bad_poly = pathlib.Path(tmp) / "bad_poly.json"
    bad_poly.write_text('{\n  "mode": "exppoly",\n  "terms": [\n    {"lambda": "0", "poly": "1 + * t"}\n  ],\n'
                        '  "interval": [0, 1]\n}\n')
    expect("malformed expression", run("decide-bounded", "--instance", bad_poly), 1, "line 4, column 34", "stderr")

    missing = run("decide-bounded", "--instance", pathlib.Path(tmp) / "absent.json")
    expect("missing file", missing, 1, "cannot read", "stderr")

expect("bad flag", run("decide-bounded", "--bogus"), 1)

print("cli ok" if failures == 0 else f"{failures} failures")
sys.exit(1 if failures else 0)
