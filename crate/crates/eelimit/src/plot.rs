//! Standalone matplotlib scripts that redraw a sweep from its CSV file(s).

use eelimit_core::sweeps::FigureId;

const PRELUDE: &str = r##"#!/usr/bin/env python3
# Generated by eelimit. Reads the CSV written next to this script.
import csv
import os
import sys

import matplotlib.pyplot as plt


def load(path):
    with open(path, newline="") as fh:
        rows = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(rows)
    data = {name: [] for name in reader.fieldnames}
    for record in reader:
        for name, value in record.items():
            data[name].append(float(value))
    return data


here = os.path.dirname(os.path.abspath(__file__))
"##;

const FIG1: &str = r##"
data = load(os.path.join(here, "{csv}"))
fig, ax = plt.subplots()
ax.semilogy(data["beta_db"], data["ee_limit_bit_per_joule"], "k-")
for dist in (8.0, 80.0, 800.0):
    near = min(range(len(data["free_space_distance_m"])),
               key=lambda i: abs(data["free_space_distance_m"][i] - dist))
    ax.annotate(f"{dist:g} m", (data["beta_db"][near], data["ee_limit_bit_per_joule"][near]))
ax.set_xlabel("Channel gain [dB]")
ax.set_ylabel("Energy efficiency limit [bit/Joule]")
ax.grid(True, which="both", linestyle=":")
fig.savefig(os.path.join(here, "{stem}.pdf"))
if "--show" in sys.argv:
    plt.show()
"##;

const FIG3: &str = r##"
data = load(os.path.join(here, "{csv}"))
fig, ax = plt.subplots()
for name in data:
    if name.startswith("ee_beta_"):
        label = name[len("ee_beta_"):].replace("m", "-")
        line, = ax.loglog(data["bandwidth_hz"], data[name], label=f"beta = {label}")
        ax.loglog(data["bandwidth_hz"], data["limit_beta_" + name[len("ee_beta_"):]],
                  linestyle="--", color=line.get_color())
ax.set_xlabel("Bandwidth [Hz]")
ax.set_ylabel("Energy efficiency [bit/Joule]")
ax.legend()
ax.grid(True, which="both", linestyle=":")
fig.savefig(os.path.join(here, "{stem}.pdf"))
if "--show" in sys.argv:
    plt.show()
"##;

const FIG4: &str = r##"
import numpy as np

locus = load(os.path.join(here, "{stem}_locus.csv"))
fig, axes = plt.subplots(1, 2, figsize=(11, 4.5))
for ax, name, column, label in (
    (axes[0], "{stem}_ee.csv", "ee_bit_per_joule", "Energy efficiency [bit/Joule]"),
    (axes[1], "{stem}_rate.csv", "rate_bit_per_s", "Data rate [bit/s]"),
):
    data = load(os.path.join(here, name))
    p = np.array(data["power_w"])
    b = np.array(data["bandwidth_hz"])
    z = np.array(data[column])
    ps = np.unique(p)
    bs = np.unique(b)
    grid = z.reshape(len(ps), len(bs))
    mesh = ax.pcolormesh(bs, ps, np.log10(grid), shading="auto")
    fig.colorbar(mesh, ax=ax, label="log10 " + label)
    ax.plot(locus["bandwidth_hz"], locus["power_w"], "w-", linewidth=3, label="Maximum EE")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlim(bs[0], bs[-1])
    ax.set_ylim(ps[0], ps[-1])
    ax.set_xlabel("Bandwidth [Hz]")
    ax.set_ylabel("Transmit power [W]")
    ax.legend(loc="lower right")
fig.tight_layout()
fig.savefig(os.path.join(here, "{stem}.pdf"))
if "--show" in sys.argv:
    plt.show()
"##;

/// Script for `figure`. `stem` is the output file name without extension; for fig1/fig3 the
/// script reads `{stem}.csv`, for fig4 the three `{stem}_*.csv` files.
pub fn script(figure: FigureId, stem: &str) -> String {
    let body = match figure {
        FigureId::Fig1 => FIG1,
        FigureId::Fig3 => FIG3,
        FigureId::Fig4 => FIG4,
    };
    let csv = format!("{stem}.csv");
    let mut out = String::from(PRELUDE);
    out.push_str(&body.replace("{csv}", &csv).replace("{stem}", stem));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scripts_reference_their_inputs() {
        assert!(script(FigureId::Fig1, "fig1").contains("\"fig1.csv\""));
        let s = script(FigureId::Fig4, "out");
        assert!(s.contains("out_locus.csv") && s.contains("out_ee.csv") && s.contains("out_rate.csv"));
        assert!(!s.contains("{stem}"));
    }
}
