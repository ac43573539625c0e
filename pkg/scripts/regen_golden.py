"""Regenerate the golden files under src/fpp_verify/data.

Run after an intentional change to the configurations or the claim list;
the test suite compares the shipped files against fresh output.
"""

import json
from pathlib import Path

from fpp_verify import surfacecalc as sc
from fpp_verify import verifier as vf
from fpp_verify.registry import registry_listing

DATA = Path(__file__).resolve().parents[1] / "src" / "fpp_verify" / "data"


def descent_scripts() -> dict:
    out = {"search": {}, "printed_caseI": {}}
    for case in ("I", "II"):
        x, _ = vf.attach_line_bundle(sc.build_config_X(case))
        out["search"][case] = {str(i): list(vf.descent_search(x, i).script) for i in range(1, 7)}
    x, _ = vf.attach_line_bundle(sc.build_config_X("I"))
    for i in range(1, 7):
        trace, remainder = vf.descent_to_target(x, i, vf.PRINTED_DESCENT[i])
        out["printed_caseI"][str(i)] = {"script": list(trace.script),
                                        "remainder": dict(sorted(remainder.items()))}
    return out


def main():
    for name, payload in (("descent_scripts.json", descent_scripts()),
                          ("claims.json", registry_listing())):
        (DATA / name).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
        print("wrote", DATA / name)


if __name__ == "__main__":
    main()
