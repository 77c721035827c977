"""Regenerates the synthetic fixtures. Output is committed; rerunning reproduces it."""
import datetime as dt
import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
START = dt.date(2020, 1, 22)
DAYS = 300
rng = np.random.default_rng(20200122)
dates = [START + dt.timedelta(days=i) for i in range(DAYS)]


def daily_cases(onset, scale):
    t = np.arange(DAYS)
    wave = scale * (np.exp(-0.5 * ((t - onset - 60) / 25) ** 2) + 0.6 * np.exp(-0.5 * ((t - onset - 200) / 35) ** 2))
    noisy = wave * np.exp(0.35 * rng.standard_normal(DAYS)) + (rng.pareto(1.5, DAYS) * scale * 0.02)
    noisy[t < onset] = 0
    return np.floor(noisy).astype(np.int64)


def mdyy(d):
    return f"{d.month}/{d.day}/{d.year % 100:02d}"


with open(os.path.join(HERE, "counts_infections.csv"), "w") as f:
    f.write("Province/State,Country/Region,Lat,Long," + ",".join(mdyy(d) for d in dates) + "\n")
    rows = [
        ("North", "Alphaland", 50.1, 8.2, daily_cases(15, 900)),
        ("South", "Alphaland", 47.3, 9.0, daily_cases(22, 400)),
        ("", "Betaland", 40.4, -3.7, daily_cases(30, 1500)),
        ("", "Gammaland", 59.3, 18.1, daily_cases(40, 600)),
    ]
    for prov, country, lat, lon, d in rows:
        cum = np.cumsum(d)
        f.write(f"{prov},{country},{lat},{lon}," + ",".join(str(v) for v in cum) + "\n")

weekdays = [d for d in dates if d.weekday() < 5]


def write_prices(name, days, vol, drop=None):
    p = 100.0
    with open(os.path.join(HERE, "prices", f"{name}.csv"), "w") as f:
        f.write("Date,Open,High,Low,Close,Adj Close,Volume\n")
        for i, d in enumerate(days):
            p *= np.exp(vol * rng.standard_t(4) / np.sqrt(2))
            if drop is not None and i == drop:
                f.write(f"{d.isoformat()},null,null,null,null,null,null\n")
                continue
            o, h, l = p * 0.999, p * 1.01, p * 0.99
            f.write(f"{d.isoformat()},{o:.4f},{h:.4f},{l:.4f},{p:.4f},{p:.4f},{int(rng.integers(1e5, 1e6))}\n")


write_prices("ALPHA_IDX", weekdays, 0.012, drop=37)
write_prices("BETA_IDX", weekdays, 0.015)

with open(os.path.join(HERE, "rates.csv"), "w") as f:
    f.write("date,rate_pct\n")
    f.write("2019-12-01,0.75\n2020-03-16,0.25\n2020-03-19,0.10\n2020-08-01,0.10\n")

# Factor panel in percent on weekdays; the coin loads on market and size.
fac = {c: rng.standard_normal(len(weekdays)) * s for c, s in
       [("Mkt.RF", 1.2), ("SMB", 0.6), ("HML", 0.8), ("MOM", 0.9), ("RMW", 0.4), ("CMA", 0.4)]}
fac["RF"] = np.full(len(weekdays), 0.001)
with open(os.path.join(HERE, "factors.csv"), "w") as f:
    cols = ["Mkt.RF", "SMB", "HML", "MOM", "RMW", "CMA", "RF"]
    f.write("date," + ",".join(cols) + "\n")
    for i, d in enumerate(weekdays):
        f.write(d.isoformat() + "," + ",".join(f"{fac[c][i]:.2f}" for c in cols) + "\n")

p = 0.25
by_day = {d: i for i, d in enumerate(weekdays)}
with open(os.path.join(HERE, "prices", "COIN.csv"), "w") as f:
    f.write("Date,Open,High,Low,Close,Adj Close,Volume\n")
    for d in dates:
        i = by_day.get(d)
        r = 0.0005 + 0.04 * rng.standard_t(3) / np.sqrt(3)
        if i is not None:
            r += 0.01 * (0.3 * fac["Mkt.RF"][i] + 0.5 * fac["SMB"][i])
        p *= 1 + r
        f.write(f"{d.isoformat()},{p:.6f},{p * 1.02:.6f},{p * 0.98:.6f},{p:.6f},{p:.6f},{int(rng.integers(1e6, 1e7))}\n")
