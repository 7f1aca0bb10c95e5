#!/usr/bin/env python3
"""Deterministic NDJSON scorer used by the test suite.

logprob = -(1.5 * len(tokens) + 0.01 * total characters), with optional
bonuses so tests can steer which candidate wins.
"""
import argparse
import json
import socket
import sys


def score(tokens, bonus):
    value = -(1.5 * len(tokens) + 0.01 * sum(len(t) for t in tokens))
    for t in tokens:
        value += bonus.get(t, 0.0)
    return value


def serve(lines, write, args):
    bonus = {}
    for item in args.bonus or []:
        word, amount = item.split("=")
        bonus[word] = float(amount)
    held = []
    answered = 0
    for raw in lines:
        raw = raw.strip()
        if not raw:
            continue
        try:
            req = json.loads(raw)
            rid = int(req["id"])
            tokens = list(req["tokens"])
        except Exception as exc:  # noqa: BLE001
            write({"id": -1, "error": "bad request: %s" % exc})
            continue
        if rid == 0 and not tokens:
            write({"id": 0, "logprob": -1.0 if args.mode == "bad-ping" else 0.0})
            continue
        if args.mode == "die-after" and answered >= args.count:
            sys.exit(7)
        if args.mode == "hang":
            continue
        if args.error_on and args.error_on in tokens:
            write({"id": rid, "error": "refusing token %s" % args.error_on})
        else:
            reply = {"id": rid, "logprob": score(tokens, bonus)}
            if args.mode == "reverse":
                held.append(reply)
                if len(held) == 2:
                    write(held[1])
                    write(held[0])
                    held.clear()
                answered += 1
                continue
            write(reply)
        answered += 1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--mode", default="normal",
                    choices=["normal", "reverse", "die-after", "hang", "bad-ping"])
    ap.add_argument("--count", type=int, default=0)
    ap.add_argument("--error-on", default=None)
    ap.add_argument("--bonus", action="append", help="word=amount added per occurrence")
    ap.add_argument("--tcp-port-file", default=None,
                    help="listen on an ephemeral TCP port, write it to this file")
    args = ap.parse_args()

    if args.tcp_port_file:
        srv = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        srv.bind(("127.0.0.1", 0))
        srv.listen(1)
        with open(args.tcp_port_file + ".tmp", "w") as f:
            f.write(str(srv.getsockname()[1]))
        import os
        os.replace(args.tcp_port_file + ".tmp", args.tcp_port_file)
        conn, _ = srv.accept()
        rfile = conn.makefile("r", encoding="utf-8")
        wfile = conn.makefile("w", encoding="utf-8")

        def write(obj):
            wfile.write(json.dumps(obj) + "\n")
            wfile.flush()

        serve(rfile, write, args)
        return

    def write(obj):
        sys.stdout.write(json.dumps(obj) + "\n")
        sys.stdout.flush()

    serve(sys.stdin, write, args)


if __name__ == "__main__":
    main()
