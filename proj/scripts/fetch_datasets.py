#!/usr/bin/env python3
"""Fetch the open wind-speed archives used by the optional reproduction
suite and normalize them into the observation CSV format the CLI reads
(`timestamp,wind_speed_mps`, 10-min cadence, UTC ISO-8601 timestamps).

Sources:
  * Kelmarsh wind farm SCADA (Zenodo record 5841834, turbine 1)
  * Penmanshiel wind farm SCADA (Zenodo record 5946808, turbine 1)
  * DWD 10-minute station wind (opendata.dwd.de), stations:
      Aachen (00003), Boltenhagen (00880), Fichtelberg (05467),
      Zugspitze (05792)

Usage:
  python3 scripts/fetch_datasets.py --out datasets/
  WINDRES_DATASET_DIR=datasets ctest --test-dir build -R dataset

The downloads are several GB; nothing here is needed for the default test
suite. Requires `requests` (pip install requests).
"""

import argparse
import csv
import datetime as dt
import io
import sys
import zipfile
from pathlib import Path

try:
    import requests
except ImportError:  # pragma: no cover
    sys.exit("this script needs the 'requests' package (pip install requests)")

ZENODO = {
    # record id, filename substring to pick turbine-1 SCADA zips
    "kelmarsh": ("5841834", "Kelmarsh_SCADA"),
    "penmanshiel": ("5946808", "Penmanshiel_SCADA"),
}

DWD_BASE = (
    "https://opendata.dwd.de/climate_environment/CDC/observations_germany/"
    "climate/10_minutes/wind/historical/"
)
DWD_STATIONS = {
    "dwd_aachen": "00003",
    "dwd_boltenhagen": "00880",
    "dwd_fichtelberg": "05467",
    "dwd_zugspitze": "05792",
}


def list_zenodo_files(record: str):
    url = f"https://zenodo.org/api/records/{record}"
    response = requests.get(url, timeout=60)
    response.raise_for_status()
    return response.json()["files"]


def fetch(url: str) -> bytes:
    print(f"  downloading {url}")
    response = requests.get(url, timeout=600)
    response.raise_for_status()
    return response.content


def scada_rows(zip_bytes: bytes):
    """Extract `# Date and time` + `Wind speed (m/s)` rows from SCADA CSVs."""
    rows = []
    with zipfile.ZipFile(io.BytesIO(zip_bytes)) as archive:
        for name in sorted(archive.namelist()):
            if not name.endswith(".csv") or "Status" in name:
                continue
            with archive.open(name) as member:
                text = io.TextIOWrapper(member, encoding="utf-8-sig")
                # SCADA files carry a comment preamble before the header;
                # header fields may be quoted and contain commas
                header = None
                for line in text:
                    if "Date and time" in line:
                        header = next(csv.reader([line.lstrip("#").strip()]))
                        break
                if header is None:
                    continue
                time_col = header.index("Date and time")
                speed_col = next(
                    i for i, h in enumerate(header) if h.startswith("Wind speed (m/s)")
                )
                for record in csv.reader(text):
                    if len(record) <= max(time_col, speed_col):
                        continue
                    stamp = record[time_col].strip()
                    speed = record[speed_col].strip()
                    rows.append((stamp, speed))
    return rows


def normalize_dwd(zip_blobs, out_path: Path):
    """DWD produkt_zehn_min_ff files: columns STATIONS_ID;MESS_DATUM;...;FF_10;DD_10."""
    rows = []
    for blob in zip_blobs:
        with zipfile.ZipFile(io.BytesIO(blob)) as archive:
            for name in sorted(archive.namelist()):
                if not name.startswith("produkt"):
                    continue
                with archive.open(name) as member:
                    text = io.TextIOWrapper(member, encoding="latin-1")
                    header = next(text).strip().split(";")
                    date_col = header.index("MESS_DATUM")
                    speed_col = header.index("FF_10")
                    for line in text:
                        fields = [f.strip() for f in line.split(";")]
                        if len(fields) <= speed_col:
                            continue
                        rows.append((fields[date_col], fields[speed_col]))
    write_observations(rows, out_path, stamp_format="%Y%m%d%H%M", missing={"-999", "-999.0"})


def write_observations(rows, out_path: Path, stamp_format: str, missing=frozenset({"-999"})):
    seen = set()
    parsed = []
    for stamp, speed in rows:
        try:
            when = dt.datetime.strptime(stamp, stamp_format)
        except ValueError:
            continue
        if when in seen:  # duplicated timestamps are dropped, first wins
            continue
        seen.add(when)
        parsed.append((when, speed))
    parsed.sort()
    with out_path.open("w") as out:
        out.write("timestamp,wind_speed_mps\n")
        for when, speed in parsed:
            value = "-999" if (not speed or speed in missing) else speed
            out.write(f"{when.strftime('%Y-%m-%dT%H:%M:%SZ')},{value}\n")
    print(f"  wrote {out_path} ({len(parsed)} records)")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("datasets"))
    parser.add_argument(
        "--sites",
        default="kelmarsh,penmanshiel,dwd",
        help="comma list from: kelmarsh, penmanshiel, dwd",
    )
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    wanted = set(args.sites.split(","))

    for site, (record, needle) in ZENODO.items():
        if site not in wanted:
            continue
        print(f"{site}: Zenodo record {record}")
        blobs = []
        for entry in list_zenodo_files(record):
            name = entry["key"]
            if needle in name and name.endswith(".zip") and "_WT01" not in name:
                # per-year zips of all turbines; turbine 1 files are inside
                blobs.append(fetch(entry["links"]["self"]))
        if not blobs:
            print(f"  no SCADA zips matched '{needle}', skipping")
            continue
        all_rows = []
        for blob in blobs:
            all_rows.extend(scada_rows(blob))
        write_observations(all_rows, args.out / f"{site}.csv",
                           stamp_format="%Y-%m-%d %H:%M:%S")

    if "dwd" in wanted:
        listing = requests.get(DWD_BASE, timeout=120).text
        for site, station in DWD_STATIONS.items():
            print(f"{site}: DWD station {station}")
            blobs = []
            for token in listing.split('"'):
                if token.endswith(".zip") and f"_{station}_" in token:
                    blobs.append(fetch(DWD_BASE + token))
            if blobs:
                normalize_dwd(blobs, args.out / f"{site}.csv")
            else:
                print("  no archives found, skipping")

    print("done. point WINDRES_DATASET_DIR at", args.out)


if __name__ == "__main__":
    main()
