"""Regenerate the bundled knot tables from the KnotInfo snapshot.

Needs ``database_knotinfo`` (dev only, not a runtime dependency)::

    pip install database_knotinfo
    python scripts/build_tables.py
"""
import csv
from pathlib import Path

from database_knotinfo import link_list

DATA = Path(__file__).resolve().parents[1] / "src" / "gamma4" / "data"

# targets of band moves plus the sub-10 knots cited as known values
AUXILIARY = [
    "3_1", "5_2", "6_1", "6_2", "7_4", "8_6", "8_7", "8_8", "8_9", "8_10",
    "8_11", "8_14", "8_16", "8_20", "9_1", "9_3", "9_5", "9_6", "9_8", "9_9",
    "9_21", "9_22", "9_25", "9_26", "9_27", "9_29", "9_31", "9_32", "9_35",
    "9_41", "9_44", "9_45", "11n_83",
]


def pd_text(raw):
    rows = raw.strip()[2:-2].split("],[")
    return ",".join(f"X[{r}]" for r in rows)


def main():
    table = {r["name"]: r for r in link_list()[1:]}
    tens = [r for r in table.values() if r["crossing_number"] == "10"]
    tens.sort(key=lambda r: int(r["name"].split("_")[1]))
    with open(DATA / "knots10.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["name", "pd_code", "signature", "arf", "determinant", "slice", "alternating"])
        for r in tens:
            w.writerow([
                r["name"],
                pd_text(r["pd_notation"]),
                r["signature"],
                r["arf_invariant"],
                r["determinant"],
                int(r["smooth_four_genus"] == "0"),
                int(r["alternating"] == "Y"),
            ])
    with open(DATA / "known.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["name", "gamma4"])
        for name in AUXILIARY:
            w.writerow([name, table[name]["smooth_4d_crosscap_number"]])


if __name__ == "__main__":
    main()
