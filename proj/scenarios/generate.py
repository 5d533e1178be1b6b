#!/usr/bin/env python3
"""Writes the bundled scenario, problem and counter-dump files.

Run from anywhere: python3 scenarios/generate.py
Everything is deterministic; rerunning reproduces the checked-in files.
"""

import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

# Injected one-way delays (ms) between the nine workers, row = source.
MEASURED_PATTERN = [
    [0, 3, 8, 10, 14, 6, 27, 13, 21],
    [8, 0, 4, 13, 14, 18, 38, 31, 29],
    [4, 12, 0, 8, 18, 11, 4, 12, 15],
    [17, 15, 7, 0, 5, 6, 22, 13, 25],
    [20, 12, 11, 10, 0, 9, 7, 4, 9],
    [17, 26, 18, 16, 6, 0, 5, 10, 5],
    [20, 10, 10, 9, 11, 5, 0, 5, 9],
    [21, 25, 4, 10, 12, 15, 10, 0, 6],
    [36, 22, 40, 9, 25, 8, 7, 6, 0],
]

WORKERS = [f"node{i}" for i in range(1, 10)]


def matrix(rows, units="ms"):
    n = len(rows)
    return {"dim": n, "units": units, "data": [float(v) for r in rows for v in r]}


def scaled(rows, factor):
    return [[round(v * factor, 3) for v in r] for r in rows]


def permuted(rows, perm):
    n = len(rows)
    return [[rows[perm[a]][perm[b]] for b in range(n)] for a in range(n)]


def zeros(n):
    return [[0.0] * n for _ in range(n)]


# name, cpu, memory (GiB), migratable
SERVICES = [
    ("nginx-web-server", 1.0, 0.5, True),
    ("compose-post-service", 0.5, 0.25, True),
    ("text-service", 0.5, 0.25, True),
    ("user-mention-service", 0.3, 0.25, True),
    ("url-shorten-service", 0.3, 0.25, True),
    ("media-service", 0.5, 0.5, True),
    ("unique-id-service", 0.2, 0.1, True),
    ("user-service", 0.5, 0.25, True),
    ("post-storage-service", 0.6, 0.5, True),
    ("user-timeline-service", 0.5, 0.25, True),
    ("home-timeline-service", 0.5, 0.25, True),
    ("social-graph-service", 0.4, 0.25, True),
    ("write-home-timeline-rabbitmq", 0.4, 0.5, True),
    ("post-storage-memcached", 0.3, 1.0, True),
    ("post-storage-mongodb", 0.8, 2.0, False),
    ("user-timeline-redis", 0.3, 1.0, True),
    ("user-timeline-mongodb", 0.6, 1.5, True),
    ("home-timeline-redis", 0.3, 1.0, True),
    ("social-graph-redis", 0.3, 0.5, True),
    ("social-graph-mongodb", 0.5, 1.0, True),
    ("user-memcached", 0.2, 0.5, True),
    ("user-mongodb", 0.5, 1.0, True),
    ("url-shorten-memcached", 0.2, 0.5, True),
    ("url-shorten-mongodb", 0.4, 1.0, True),
    ("media-memcached", 0.2, 0.5, True),
    ("media-mongodb", 0.5, 1.5, True),
    ("jaeger-agent", 0.5, 0.5, False),
]


def call(frm, to, req, resp):
    return {"from": frm, "to": to, "request_bytes": req, "response_bytes": resp}


COMPOSE_POST = {
    "name": "compose-post",
    "root": "nginx-web-server",
    "processing_ms": {
        "nginx-web-server": 2.0,
        "compose-post-service": 3.0,
        "text-service": 2.0,
        "user-mention-service": 1.0,
        "url-shorten-service": 1.0,
        "media-service": 2.0,
        "unique-id-service": 0.5,
        "user-service": 1.0,
        "post-storage-service": 2.0,
        "user-timeline-service": 1.5,
        "write-home-timeline-rabbitmq": 1.0,
        "home-timeline-service": 1.5,
        "social-graph-service": 1.0,
    },
    "calls": [
        call("nginx-web-server", "compose-post-service", 2048, 512),
        call("compose-post-service", "unique-id-service", 64, 64),
        call("compose-post-service", "text-service", 2048, 2560),
        call("text-service", "user-mention-service", 512, 1024),
        call("user-mention-service", "user-memcached", 256, 1024),
        call("text-service", "url-shorten-service", 512, 512),
        call("url-shorten-service", "url-shorten-memcached", 256, 256),
        call("url-shorten-service", "url-shorten-mongodb", 512, 128),
        call("compose-post-service", "media-service", 8192, 256),
        call("media-service", "media-memcached", 4096, 128),
        call("media-service", "media-mongodb", 8192, 128),
        call("compose-post-service", "user-service", 256, 512),
        call("user-service", "user-mongodb", 256, 512),
        call("compose-post-service", "post-storage-service", 6144, 128),
        call("post-storage-service", "post-storage-mongodb", 6144, 128),
        call("compose-post-service", "user-timeline-service", 512, 128),
        call("user-timeline-service", "user-timeline-redis", 256, 64),
        call("user-timeline-service", "user-timeline-mongodb", 512, 64),
        call("compose-post-service", "write-home-timeline-rabbitmq", 1024, 64),
        call("write-home-timeline-rabbitmq", "home-timeline-service", 1024, 64),
        call("home-timeline-service", "social-graph-service", 256, 2048),
        call("social-graph-service", "social-graph-redis", 256, 2048),
        call("social-graph-service", "social-graph-mongodb", 256, 1024),
        call("home-timeline-service", "home-timeline-redis", 2048, 64),
    ],
}

READ_USER_TIMELINE = {
    "name": "read-user-timeline",
    "root": "nginx-web-server",
    "processing_ms": {
        "nginx-web-server": 2.0,
        "user-timeline-service": 2.0,
        "post-storage-service": 2.0,
    },
    "calls": [
        call("nginx-web-server", "user-timeline-service", 256, 16384),
        call("user-timeline-service", "user-timeline-redis", 128, 1024),
        call("user-timeline-service", "user-timeline-mongodb", 128, 1024),
        call("user-timeline-service", "post-storage-service", 1024, 16384),
        call("post-storage-service", "post-storage-memcached", 1024, 16384),
        call("post-storage-service", "post-storage-mongodb", 1024, 8192),
    ],
}

READ_HOME_TIMELINE = {
    "name": "read-home-timeline",
    "root": "nginx-web-server",
    "processing_ms": {
        "nginx-web-server": 2.0,
        "home-timeline-service": 2.0,
        "post-storage-service": 2.0,
    },
    "calls": [
        call("nginx-web-server", "home-timeline-service", 256, 16384),
        call("home-timeline-service", "home-timeline-redis", 128, 1024),
        call("home-timeline-service", "post-storage-service", 1024, 16384),
        call("post-storage-service", "post-storage-memcached", 1024, 16384),
        call("post-storage-service", "post-storage-mongodb", 1024, 8192),
    ],
}


def social_network(name, seed, duration_s, schedule, qos, workload=None, control=None):
    services = [
        {"name": n, "demand": {"cpu": cpu, "memory": mem}, "migratable": mig}
        for n, cpu, mem, mig in SERVICES
    ]
    return {
        "schema_version": 1,
        "name": name,
        "seed": seed,
        "duration_s": duration_s,
        "resources": ["cpu", "memory"],
        "nodes": [{"name": w, "capacity": {"cpu": 4.0, "memory": 8.0}} for w in WORKERS],
        "services": services,
        "request_types": [COMPOSE_POST, READ_USER_TIMELINE, READ_HOME_TIMELINE],
        "workload": workload
        or {
            "qps": 60.0,
            "arrival": "poisson",
            "jitter_ms": 40.0,
            "mix": [
                {"request_type": "compose-post", "ratio": 0.6},
                {"request_type": "read-user-timeline", "ratio": 0.2},
                {"request_type": "read-home-timeline", "ratio": 0.2},
            ],
        },
        "delay": {"base_ms": 0.5, "update_period_s": 300.0, "reserved": [], "schedule": schedule},
        "noise": {"distribution": "uniform", "magnitude_ms": 1.0},
        "qos": qos,
        "control": control or {"launch_s": 10.0, "workers": 4, "max_rounds": 10, "netmarks_top_pairs": 5},
        "simulation": {"timeout_ms": 1000.0, "bandwidth_gbps": 16.0, "parallel_fanout": False, "sidecar_ms": 0.0},
    }


LIGHT = scaled(permuted(MEASURED_PATTERN, [4, 7, 2, 0, 8, 1, 6, 3, 5]), 0.7)
HEAVY = scaled(MEASURED_PATTERN, 2.0)
MEDIUM = scaled(permuted(MEASURED_PATTERN, [2, 5, 8, 1, 4, 7, 0, 3, 6]), 1.3)


def four_phase():
    schedule = [
        {"at_s": 0.0, "label": "zero", "injected": matrix(zeros(9))},
        {"at_s": 300.0, "label": "light", "injected": matrix(LIGHT)},
        {"at_s": 600.0, "label": "heavy", "injected": matrix(HEAVY)},
        {"at_s": 900.0, "label": "medium", "injected": matrix(MEDIUM)},
    ]
    qos = {"target_ms": 300.0, "poll_period_s": 30.0, "window_s": 60.0}
    return social_network("social-network-four-phase", 7, 1200.0, schedule, qos)


def delay_step():
    schedule = [
        {"at_s": 0.0, "label": "zero", "injected": matrix(zeros(9))},
        {"at_s": 300.0, "label": "heavy", "injected": matrix(HEAVY)},
    ]
    qos = {"target_ms": 300.0, "poll_period_s": 30.0, "window_s": 60.0}
    return social_network("delay-step", 11, 600.0, schedule, qos)


def zero_delay():
    schedule = [{"at_s": 0.0, "label": "zero", "injected": matrix(zeros(9))}]
    qos = {"target_ms": 300.0, "poll_period_s": 30.0, "window_s": 60.0}
    s = social_network("zero-delay", 5, 300.0, schedule, qos)
    s["delay"]["base_ms"] = 0.0
    return s


def tiny_problem():
    # a->b 10, b->c 4, a->c 1; every cross-node delay 2 ms; two slots per node.
    return {
        "schema_version": 1,
        "resources": ["cpu"],
        "nodes": [{"name": "n0", "capacity": {"cpu": 2.0}}, {"name": "n1", "capacity": {"cpu": 2.0}}],
        "services": [{"name": s, "demand": {"cpu": 1.0}} for s in ("a", "b", "c")],
        "traffic": matrix([[0, 10, 1], [0, 0, 4], [0, 0, 0]], "bytes/s"),
        "delay": matrix([[0, 2], [2, 0]]),
        "initial_placement": ["n0", "n1", "n0"],
        "weights": {"forward": 0.5, "backward": 0.5, "penalty_factor": 1000.0},
    }


def dense_problem(k=27, p=10, seed=2024):
    rng = random.Random(seed)
    t = [[0.0 if u == v else round(rng.uniform(0, 1000), 3) for v in range(k)] for u in range(k)]
    d = [[0.0 if a == b else round(rng.uniform(0.2, 10), 3) for b in range(p)] for a in range(p)]
    demands = [round(rng.uniform(0.1, 1.0), 3) for _ in range(k)]
    cap = round(1.5 * sum(demands) / p + max(demands), 3)
    return {
        "schema_version": 1,
        "resources": ["cpu"],
        "nodes": [{"name": f"n{i}", "capacity": {"cpu": cap}} for i in range(p)],
        "services": [{"name": f"s{i}", "demand": {"cpu": demands[i]}} for i in range(k)],
        "traffic": matrix(t, "bytes/s"),
        "delay": matrix(d),
    }


def counter_dump():
    # frontend->backend: requests are ~40x the responses.
    samples = []
    for ts, scale in ((0.0, 0), (60.0, 1)):
        samples.append({"upstream": "frontend", "downstream": "backend", "sent_bytes_total": 300000.0 * scale,
                        "received_bytes_total": 12000000.0 * scale, "timestamp": ts})
        samples.append({"upstream": "backend", "downstream": "cache", "sent_bytes_total": 4000000.0 * scale,
                        "received_bytes_total": 4000000.0 * scale, "timestamp": ts})
        samples.append({"upstream": "frontend", "downstream": "auth", "sent_bytes_total": 9000000.0 * scale,
                        "received_bytes_total": 300000.0 * scale, "timestamp": ts})
    return {"schema_version": 1, "services": ["frontend", "backend", "cache", "auth"], "window_s": 60.0,
            "samples": samples}


def write(name, obj):
    (HERE / name).write_text(json.dumps(obj, indent=1) + "\n")


if __name__ == "__main__":
    write("social_network_four_phase.json", four_phase())
    write("delay_step.json", delay_step())
    write("zero_delay.json", zero_delay())
    write("tiny_problem.json", tiny_problem())
    write("dense_k27_p10.json", dense_problem())
    write("counter_dump.json", counter_dump())
