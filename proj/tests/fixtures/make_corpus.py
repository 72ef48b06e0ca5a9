#!/usr/bin/env python3
# Copyright 2026 The TQL Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates tests/fixtures/corpus deterministically. Output is committed."""

import csv
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent / "corpus"
rng = random.Random(20260414)

CITIES = [
    ("New York", "NY"), ("Los Angeles", "CA"), ("Chicago", "IL"), ("Houston", "TX"),
    ("Phoenix", "AZ"), ("Philadelphia", "PA"), ("San Antonio", "TX"), ("San Diego", "CA"),
    ("Dallas", "TX"), ("San Jose", "CA"), ("Austin", "TX"), ("Seattle", "WA"),
    ("Denver", "CO"), ("Boston", "MA"), ("Atlanta", "GA"), ("Miami", "FL"),
]
STATES = ["AZ", "CA", "CO", "FL", "GA", "IL", "MA", "NY", "PA", "TX", "WA"]
YEARS = [2021, 2022, 2023]


def write(name, header, rows):
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / f"{name}.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(["" if v is None else v for v in row])


def money(lo, hi):
    return round(rng.uniform(lo, hi), 1)


def main():
    gdp = [(c, s, money(80, 2000), 2022) for c, s in CITIES]
    gdp[5] = (gdp[5][0], gdp[5][1], None, 2022)  # missing figure
    write("cities_gdp", ["nm", "state", "gdp_usd_bn", "year"], gdp)

    write("cities_population", ["nm", "state", "population", "area_km2"],
          [(c, s, rng.randrange(300_000, 9_000_000), money(150, 1300)) for c, s in CITIES[:12]]
          + [("Portland", "OR", 652_503, 375.5), ("Las Vegas", "NV", 641_903, 352.0)])

    # Near-duplicate of cities_gdp under different column names.
    write("metro_output", ["metro", "state", "output_usd_bn", "year"],
          [(c, s, g, y) for c, s, g, y in gdp[:14]] + [("Detroit", "MI", 250.4, 2022)])

    write("country_gdp_growth", ["country", "year", "GDP_growth_pct"],
          [(c, y, round(rng.uniform(-3, 7), 2))
           for c in ["Canada", "France", "Japan", "Kenya", "Mexico", "Peru"] for y in YEARS])

    write("state_gdp", ["state", "year", "gdp_per_capita_usd"],
          [(s, y, rng.randrange(50_000, 95_000)) for s in STATES for y in YEARS[1:]])

    write("state_obesity", ["state", "obesity_rate", "year"],
          [(s, round(rng.uniform(22, 38), 1), y) for s in STATES for y in YEARS[1:]])

    write("state_social_media", ["state", "social media hours", "year"],
          [(s, round(rng.uniform(1.5, 3.5), 2), y) for s in STATES[:8] for y in YEARS[1:]])

    write("teen_survey", ["state", "year", "social media minutes", "screen time hours"],
          [(s, 2023, rng.randrange(90, 300), round(rng.uniform(4, 9), 1)) for s in STATES[3:10]])

    write("county_health", ["county", "state", "obesity_pct", "smokers_pct"],
          [("Cook", "IL", 27.1, 14.0), ("Harris", "TX", 31.5, 13.2), ("King", "WA", 24.0, 9.8),
           ("Maricopa", "AZ", 29.3, 12.1), ("Miami-Dade", "FL", 26.4, None), ("Suffolk", "MA", 23.8, 11.0)])

    depts = [(10, "Engineering", 1_200_000), (20, "Sales", 800_000), (30, "Support", 300_000),
             (40, "Research", 950_000)]
    write("departments", ["dept_id", "dept_name", "budget"], depts)
    first = ["Ada", "Ben", "Cy", "Dee", "Eli", "Fay", "Gus", "Hal", "Ivy", "Jo"]
    write("employees", ["emp_id", "name", "dept_id", "salary"],
          [(100 + i, n, rng.choice([10, 20, 30]), rng.randrange(60, 180) * 1000) for i, n in enumerate(first)])

    products = [(1, "widget", 2.5), (2, "gadget", 10.0), (3, "doohickey", 7.25), (4, "gizmo", 3.0),
                (5, "sprocket", 1.1)]
    write("products", ["product_id", "product_name", "price"], products)
    write("customers", ["customer_id", "name", "city"],
          [(i, n, c) for i, (n, (c, _)) in enumerate(zip(["Kim", "Lee", "Max", "Ned", "Oli", "Pat"], CITIES), 1)])
    write("orders", ["order_id", "product_id", "customer_id", "qty"],
          [(5000 + i, rng.randrange(1, 6), rng.randrange(1, 7), rng.randrange(1, 10)) for i in range(12)])

    airports = [("JFK", "New York", "NY", 13), ("LAX", "Los Angeles", "CA", 125), ("ORD", "Chicago", "IL", 672),
                ("IAH", "Houston", "TX", 97), ("SEA", "Seattle", "WA", 433), ("DEN", "Denver", "CO", 5434)]
    write("airports", ["code", "city", "state", "elevation_ft"], airports)
    write("weather_daily", ["date", "airport_code", "temp_c", "precip_mm"],
          [(f"2023-07-0{d}", a[0], round(rng.uniform(12, 35), 1), rng.choice([0, 0, 0.5, 2.3, None]))
           for d in range(1, 4) for a in airports[:4]])

    write("movies", ["title", "year", "rating"],
          [("Arrival", 2016, 7.9), ("Heat", 1995, 8.3), ("Up", 2009, 8.3), ("Alien", 1979, 8.5),
           ("Her", 2013, 8.0), ("Jaws", 1975, 8.1)])

    write("schools", ["school", "state", "enrollment"],
          [(f"School {i}", s, rng.randrange(200, 3000)) for i, s in enumerate(STATES[:7], 1)])
    write("hospitals", ["hospital", "state", "beds"],
          [(f"General {i}", s, rng.randrange(80, 900)) for i, s in enumerate(STATES[4:], 1)])

    write("empty_table", ["id", "note"], [])


if __name__ == "__main__":
    main()
