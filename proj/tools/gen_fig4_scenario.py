#!/usr/bin/env python3
"""Generate scenarios/fig4_twelve_apps.scenario.

Twelve tasks on one DU share four E2 streams. Every xApp in a group reads the
same (du1, kind) stream, so E2 traffic grows sublinearly with the app count.
Monitoring tasks only have xApp implementations and set a traffic floor the
dApp cap cannot remove. The stream rates below were tuned once against
`dappsim sweep --figure fig4` and are frozen; rerun with --check to print the
resulting reduction factors.
"""
import argparse
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "scenarios" / "fig4_twelve_apps.scenario"

XAPP_PERIOD_US = 20000
DAPP_PERIOD_US = 5000

# (task, kind, xApp input rate in Mbit/s, has a dApp implementation), in
# deployment order. A shared stream is carried at its fastest subscriber's rate.
TASKS = [
    ("kpm-monitor", "DuKpm", 10.0, False),
    ("mcs-selection", "RlcPackets", 3.0, True),
    ("beam-management", "FreqDomainIQ", 15.7, True),
    ("harq-tuning", "RlcPackets", 3.4, True),
    ("anomaly-detection", "DuKpm", 8.0, False),
    ("link-adaptation", "TransportBlocks", 5.0, True),
    ("buffer-forecast", "RlcPackets", 3.8, True),
    ("power-control", "RlcPackets", 4.2, True),
    ("energy-saving", "DuKpm", 9.0, False),
    ("ue-scheduling", "RlcPackets", 4.6, True),
    ("handover-prep", "DuKpm", 7.0, False),
    ("slice-enforcement", "RlcPackets", 5.0, True),
]


def volume_bits(rate_mbps, period_us):
    return round(rate_mbps * period_us)


def render():
    lines = [
        "# Twelve control tasks on one DU. Generated by tools/gen_fig4_scenario.py;",
        "# stream volumes are a frozen calibration, edit the generator instead.",
        "",
        "topology:",
        "  nodes:",
        "    - {id: ru1, kind: RU}",
        "    - {id: du1, kind: DU, resources: {cpu: 16, gpu: 2, memory_mib: 32768}}",
        "    - {id: cu1, kind: CU, resources: {cpu: 8, gpu: 0, memory_mib: 16384}}",
        "    - {id: ric, kind: NearRtRic, resources: {cpu: 64, gpu: 4, memory_mib: 131072}}",
        "  links:",
        "    - {src: ru1, dst: du1, interface: OpenFronthaul, propagation_us: 5, switching_us: 1, capacity_bps: 25.0e9}",
        "    - {src: du1, dst: cu1, interface: F1, propagation_us: 20, switching_us: 5, capacity_bps: 10.0e9}",
        "    - {src: ric, dst: du1, interface: E2, propagation_us: 200, switching_us: 50, capacity_bps: 1.0e9}",
        "    - {src: ric, dst: cu1, interface: E2, propagation_us: 200, switching_us: 50, capacity_bps: 1.0e9}",
        "",
        "apps:",
    ]
    for task, kind, rate, has_dapp in TASKS:
        param = task.replace("-", "_")
        variants = [("xapp", "xApp", XAPP_PERIOD_US)]
        if has_dapp:
            variants.append(("dapp", "dApp", DAPP_PERIOD_US))
        for suffix, app_kind, period in variants:
            lines += [
                f"  - id: {task}-{suffix}",
                f"    kind: {app_kind}",
                f"    control_period_us: {period}",
                "    inference_latency_us: 400",
                "    footprint: {cpu: 1, gpu: 0, memory_mib: 1024}",
                "    inputs:",
                f"      - {{kind: {kind}, volume_bits: {volume_bits(rate, period)}, freshness_us: {XAPP_PERIOD_US}}}",
                "    controls:",
                f"      - {{parameter: {param}, controlled_at: DU, granularity_us: {period}}}",
            ]
    lines += ["", "intent:", "  id: fig4-twelve-apps", "  tasks:"]
    for task, kind, _, _ in TASKS:
        param = task.replace("-", "_")
        lines += [
            f"    - id: {task}",
            f"      inputs: [{kind}]",
            "      controls:",
            f"        - {{parameter: {param}, controlled_at: DU, granularity_us: {XAPP_PERIOD_US}}}",
            f"      deadline_us: {XAPP_PERIOD_US}",
            "      scope: [du1]",
        ]
    lines += [
        "",
        "simulation:",
        "  duration_us: 100000",
        "  seed: 11",
        "",
        "sweep:",
        "  axis: app_count",
        "  values: [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]",
        "  caps: [0, 2, 8]",
        "",
    ]
    return "\n".join(lines)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", metavar="DAPPSIM", help="run the fig4 sweep with this binary")
    args = ap.parse_args()
    OUT.write_text(render())
    if args.check:
        out = subprocess.run([args.check, "sweep", str(OUT), "--figure", "fig4"],
                             check=True, capture_output=True, text=True).stdout
        sys.stdout.write(out)


if __name__ == "__main__":
    main()
