#!/usr/bin/env python3
"""Materialize the benchmark datasets into the suite directory.

Wine and Iris are written from scikit-learn's bundled copies of the UCI
files, so they work without network access. The remaining datasets are
downloaded from the UCI Machine Learning Repository and converted to the
canonical comma-separated layout described in datasets/registry.json.

Usage:
    python3 scripts/fetch_datasets.py [--suite datasets] [--only name ...]

Every produced file is reported with its SHA-256 so it can be compared
against the registry (where a checksum is pinned) or recorded.
"""

import argparse
import hashlib
import io
import sys
import urllib.request
from pathlib import Path

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"

def fmt(value: float) -> str:
    """Shortest round-trip decimal; integral values without a trailing .0"""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def write_rows(path: Path, rows) -> None:
    text = "".join(",".join(row) + "\n" for row in rows)
    path.write_text(text)


def sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def report(path: Path) -> None:
    print(f"  {path.name}: {len(path.read_text().splitlines())} rows, sha256 {sha256(path)}")


def fetch(url: str) -> str:
    with urllib.request.urlopen(url, timeout=60) as resp:
        return resp.read().decode("utf-8", errors="strict")


# ---- local (no network) -----------------------------------------------------

def make_wine(suite: Path) -> None:
    from sklearn.datasets import load_wine

    bundle = load_wine()
    rows = []
    for features, target in zip(bundle.data, bundle.target):
        rows.append([str(target + 1)] + [fmt(v) for v in features])
    write_rows(suite / "wine.csv", rows)
    report(suite / "wine.csv")


def make_iris(suite: Path) -> None:
    from sklearn.datasets import load_iris

    bundle = load_iris()
    names = ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]
    rows = []
    for features, target in zip(bundle.data, bundle.target):
        rows.append([fmt(v) for v in features] + [names[target]])
    write_rows(suite / "iris.csv", rows)
    report(suite / "iris.csv")


# ---- UCI downloads -----------------------------------------------------------

def save_plain(suite: Path, name: str, url: str) -> None:
    text = fetch(url)
    rows = [[f.strip() for f in line.split(",")]
            for line in text.splitlines() if line.strip()]
    write_rows(suite / name, rows)
    report(suite / name)


def make_zoo(suite: Path) -> None:
    save_plain(suite, "zoo.csv", f"{UCI}/zoo/zoo.data")


def make_hayes_roth(suite: Path) -> None:
    save_plain(suite, "hayes-roth.csv", f"{UCI}/hayes-roth/hayes-roth.data")


def make_liver(suite: Path) -> None:
    save_plain(suite, "liver.csv", f"{UCI}/liver-disorders/bupa.data")


def make_abalone(suite: Path) -> None:
    save_plain(suite, "abalone.csv", f"{UCI}/abalone/abalone.data")


def make_banknote(suite: Path) -> None:
    # The UCI file has no published train/test split. Deterministic split:
    # per class, every k-th row (evenly spaced) goes to the 100-row test set
    # (50 per class), the rest stay in the train set.
    text = fetch(f"{UCI}/00267/data_banknote_authentication.txt")
    rows = [[f.strip() for f in line.split(",")]
            for line in text.splitlines() if line.strip()]
    by_class = {}
    for row in rows:
        by_class.setdefault(row[-1], []).append(row)
    test, train = [], []
    per_class = 50
    for label in sorted(by_class):
        members = by_class[label]
        step = len(members) / per_class
        picks = {int(i * step) for i in range(per_class)}
        for idx, row in enumerate(members):
            (test if idx in picks else train).append(row)
    write_rows(suite / "banknote_train.csv", train)
    write_rows(suite / "banknote_test.csv", test)
    report(suite / "banknote_train.csv")
    report(suite / "banknote_test.csv")


def make_spect(suite: Path) -> None:
    save_plain(suite, "spect_train.csv", f"{UCI}/spect/SPECT.train")
    save_plain(suite, "spect_test.csv", f"{UCI}/spect/SPECT.test")


def make_letters(suite: Path) -> None:
    text = fetch(f"{UCI}/letter-recognition/letter-recognition.data")
    rows = [[f.strip() for f in line.split(",")]
            for line in text.splitlines() if line.strip()]
    if len(rows) != 20000:
        print(f"warning: expected 20000 letter rows, found {len(rows)}")
    write_rows(suite / "letters_train.csv", rows[:16000])
    write_rows(suite / "letters_test.csv", rows[16000:])
    report(suite / "letters_train.csv")
    report(suite / "letters_test.csv")


def make_user_modelling(suite: Path) -> None:
    # Shipped by UCI as an Excel workbook with separate train/test sheets.
    import pandas as pd

    url = f"{UCI}/00257/Data_User_Modeling_Dataset_Hamdi%20Tolga%20KAHRAMAN.xls"
    with urllib.request.urlopen(url, timeout=60) as resp:
        payload = resp.read()
    sheets = pd.read_excel(io.BytesIO(payload), sheet_name=None)
    def convert(frame, name):
        cols = list(frame.columns)[:6]  # STG SCG STR LPR PEG UNS
        rows = []
        for _, record in frame.iterrows():
            values = [record[c] for c in cols]
            if any(pd.isna(v) for v in values):
                continue
            rows.append([fmt(v) for v in values[:5]] + [str(values[5]).strip()])
        write_rows(suite / name, rows)
        report(suite / name)
    train_sheet = next(s for s in sheets if "train" in s.lower())
    test_sheet = next(s for s in sheets if "test" in s.lower())
    convert(sheets[train_sheet], "um_train.csv")
    convert(sheets[test_sheet], "um_test.csv")


MAKERS = {
    "wine": make_wine,
    "iris": make_iris,
    "zoo": make_zoo,
    "hayes-roth": make_hayes_roth,
    "liver": make_liver,
    "abalone": make_abalone,
    "banknote": make_banknote,
    "spect-heart": make_spect,
    "letters": make_letters,
    "user-modelling": make_user_modelling,
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--suite", default="datasets", help="suite directory")
    parser.add_argument("--only", nargs="*", help="dataset names to materialize")
    args = parser.parse_args()

    suite = Path(args.suite)
    suite.mkdir(parents=True, exist_ok=True)
    names = args.only if args.only else list(MAKERS)
    failures = []
    for name in names:
        if name not in MAKERS:
            print(f"unknown dataset: {name} (choices: {', '.join(MAKERS)})")
            return 2
        print(f"{name}:")
        try:
            MAKERS[name](suite)
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures.append(name)
            print(f"  failed: {exc}")
    if failures:
        print(f"\nnot materialized: {', '.join(failures)}")
        print("(network datasets need access to archive.ics.uci.edu)")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
