"""Command-line entry point.

All output is JSON (UTF-8, sorted keys, newline-terminated); naturals are
written as decimal strings.  Exit status: 0 on pass/success, 1 when a
check finds a violation or a search fails, 2 on usage or configuration
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

from .constructions import (ConstructionError, build_sigma, build_tau, counterexample_triple,
                            decide_via_inverter, default_trashbin, totalize, witness_scan_bound)
from .core import all_strings, is_bits, pair_decode
from .functions import Concatenation, LengthLexMax, TableFn
from .protocols import (StringSampler, WitnessFormSampler, attack_bound, eve_bruteforce_attack,
                        eve_combination_attack, seeded_multi_party, seeded_signature,
                        seeded_two_party, sign, verify_sig)
from .relations import (GenerationError, SubsetSumInstance, SubsetSumRelation,
                        gen_subset_sum, relation_from_name)
from .verification import (BudgetExceeded, HonestyPolynomial, SearchExhausted, Universe,
                           check_associative, check_commutative, check_honest, check_total,
                           check_unordered_injective, check_weakly_associative, domain_universe,
                           eval_homan_bound, first_argument_inverter, homan_search,
                           preimage_census, search_partner)

FN_CHOICES = ["sigma", "tau", "sigma-total", "tau-total", "concat", "lexmax", "table"]
PROPS = {
    "assoc": check_associative,
    "weak-assoc": check_weakly_associative,
    "comm": check_commutative,
    "total": check_total,
    "uinj": check_unordered_injective,
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    relation: str = "mock"
    fn: str = "sigma"
    max_len: int = 3
    items: int = 8
    want: int = 3
    instance: Optional[str] = None
    table: Optional[str] = None
    decoys: int = 20
    max_triples: int = 50_000_000
    budget_ms: Optional[int] = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                for k, v in d.items()}


class Context:
    """Relation, operation and sampling choices resolved from a RunConfig."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.relation = relation_from_name(cfg.relation)
        self.instance = None
        if isinstance(self.relation, SubsetSumRelation):
            if cfg.instance:
                with open(cfg.instance, encoding="utf-8") as fh:
                    self.instance = SubsetSumInstance.from_dict(json.load(fh))
            else:
                self.instance = gen_subset_sum(cfg.seed, cfg.items, cfg.want)
        self.trashbin = None
        self.fn = self._build_fn(cfg.fn)

    @property
    def inputs(self) -> list[str]:
        if self.instance is not None:
            return [self.instance.encoding]
        return all_strings(self.cfg.max_len)

    def _build_fn(self, name):
        r = self.relation
        if name == "sigma":
            return build_sigma(r)
        if name == "tau":
            return build_tau(r)
        if name in ("sigma-total", "tau-total"):
            inner = build_sigma(r) if name == "sigma-total" else build_tau(r)
            if "trashbin" in self.cfg.extra:
                self.trashbin = self.cfg.extra["trashbin"]
            else:
                self.trashbin = default_trashbin(inner, r)
            return totalize(inner, self.trashbin)
        if name == "concat":
            return Concatenation()
        if name == "lexmax":
            return LengthLexMax()
        if name == "table":
            if not self.cfg.table:
                raise ConfigError("--fn table needs --table FILE")
            with open(self.cfg.table, encoding="utf-8") as fh:
                return TableFn.from_dict(json.load(fh))
        raise ConfigError(f"unknown function {name!r}")

    def universe(self, kind: str = "auto") -> Universe:
        if kind == "auto":
            if isinstance(self.fn, TableFn):
                kind = "table"
            elif self.cfg.fn in ("concat", "lexmax"):
                kind = "exhaustive"
            else:
                kind = "domain"
        if kind == "exhaustive":
            u = Universe.exhaustive(self.cfg.max_len)
        elif kind == "table":
            if not isinstance(self.fn, TableFn):
                raise ConfigError("--universe table needs --fn table")
            u = Universe.explicit(self.fn.elements, "table")
        elif kind == "domain":
            u = domain_universe(self.relation, self.inputs, self.cfg.decoys, self.cfg.seed)
        else:
            raise ConfigError(f"unknown universe kind {kind!r}")
        if self.trashbin is not None and self.trashbin not in u:
            u = u.extended([self.trashbin], "trashbin")
        return u

    def sampler(self):
        if self.cfg.fn in ("concat", "lexmax", "table"):
            return StringSampler(max_len=8)
        if self.instance is not None:
            return WitnessFormSampler(self.relation, [self.instance.encoding])
        bases = [q for q in all_strings(self.cfg.max_len) if q]
        return WitnessFormSampler(self.relation, bases)

    def describe(self) -> dict:
        d = {"relation": self.relation.descriptor, "fn": self.fn.descriptor}
        if self.trashbin is not None:
            d["trashbin"] = self.trashbin
        if self.instance is not None:
            d["instance"] = self.instance.to_dict()
        return d


def emit(obj, out: Optional[str]):
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _bits_arg(value: str) -> str:
    if value in ("eps", "ε"):
        return ""
    if not is_bits(value):
        raise argparse.ArgumentTypeError(f"not a bit string: {value!r}")
    return value


def _nonneg(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_nonneg, default=None,
                        help="master seed (falls back to $AOWF_SEED, then 0)")
    common.add_argument("--relation", choices=["mock", "subset-sum"], default="mock")
    common.add_argument("--fn", choices=FN_CHOICES, default="sigma")
    common.add_argument("--max-len", type=_nonneg, default=3)
    common.add_argument("--items", type=_nonneg, default=8, help="subset-sum items to generate")
    common.add_argument("--want", type=_nonneg, default=3, help="minimum witnesses to generate")
    common.add_argument("--instance", help="subset-sum instance file")
    common.add_argument("--table", help="operation table file for --fn table")
    common.add_argument("--trashbin", type=_bits_arg, help="override the totalization trashbin")
    common.add_argument("--decoys", type=_nonneg, default=20)
    common.add_argument("--max-triples", type=_nonneg, default=50_000_000)
    common.add_argument("--budget-ms", type=_nonneg, default=None)
    common.add_argument("--out", help="write JSON here instead of stdout")

    p = argparse.ArgumentParser(prog="aowf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("gen", parents=[common], help="generate a subset-sum instance")

    c = sub.add_parser("check", parents=[common], help="check a property over a universe")
    c.add_argument("--prop", choices=list(PROPS) + ["honest"], required=True)
    c.add_argument("--universe", choices=["auto", "exhaustive", "domain", "table"], default="auto")
    c.add_argument("--poly", default="8,4",
                   help="honesty polynomial coefficients, constant term first")
    c.add_argument("--limit", type=int, default=-1, help="max violations listed (-1: all)")

    c = sub.add_parser("census", parents=[common], help="preimage census")
    c.add_argument("--universe", choices=["auto", "exhaustive", "domain", "table"], default="auto")

    c = sub.add_parser("homan", parents=[common], help="search for an image with n preimages")
    c.add_argument("--n", type=_nonneg, required=True)
    c.add_argument("--schedule-max-len", type=_nonneg, default=10)

    c = sub.add_parser("bound", parents=[common], help="evaluate the many-to-one lower-bound formula")
    c.add_argument("--m", type=_nonneg, required=True)
    c.add_argument("--x", type=_nonneg, required=True)

    c = sub.add_parser("invert", parents=[common], help="brute-force one argument")
    c.add_argument("--known", type=_bits_arg, required=True)
    c.add_argument("--target", type=_bits_arg, required=True)
    c.add_argument("--side", choices=["first", "second"], default="second",
                   help="which argument to search for")
    c.add_argument("--bound", type=_nonneg, required=True)
    c.add_argument("--no-prune", action="store_true")

    sub.add_parser("reduce", parents=[common],
                   help="decide membership through the brute-force inverter, compare to enumeration")

    c = sub.add_parser("agree2", parents=[common], help="two-party key agreement sessions")
    c.add_argument("--sessions", type=_nonneg, default=10)
    c = sub.add_parser("agreek", parents=[common], help="k-party ring key agreement sessions")
    c.add_argument("--sessions", type=_nonneg, default=10)
    c.add_argument("--k", type=_nonneg, default=3)

    c = sub.add_parser("sign", parents=[common], help="seeded key generation and signature")
    c.add_argument("--index", type=_nonneg, default=0)
    c.add_argument("--message", type=_bits_arg, help="sign this message instead of a drawn one")
    c = sub.add_parser("verifysig", parents=[common], help="verify a signature file")
    c.add_argument("--in", dest="infile", required=True)

    c = sub.add_parser("attack", parents=[common], help="eavesdropper attacks on two-party sessions")
    c.add_argument("--sessions", type=_nonneg, default=10)
    c.add_argument("--bound", type=_nonneg, default=None)

    c = sub.add_parser("counterexample", parents=[common],
                       help="triple breaking weak associativity of the totalized tau")
    c.add_argument("--x0", type=_bits_arg, default=None)
    return p


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("AOWF_SEED")
    if env is None:
        return 0
    try:
        n = int(env)
    except ValueError:
        raise ConfigError(f"AOWF_SEED is not an integer: {env!r}") from None
    if n < 0:
        raise ConfigError("AOWF_SEED must be nonnegative")
    return n


def config_from_args(args) -> RunConfig:
    extra = {}
    if args.trashbin is not None:
        extra["trashbin"] = args.trashbin
    return RunConfig(
        command=args.command, seed=_seed(args), relation=args.relation, fn=args.fn,
        max_len=args.max_len, items=args.items, want=args.want, instance=args.instance,
        table=args.table, decoys=args.decoys, max_triples=args.max_triples,
        budget_ms=args.budget_ms, extra=extra,
    )


def cmd_gen(args, cfg):
    inst = gen_subset_sum(cfg.seed, cfg.items, cfg.want)
    emit(inst.to_dict(), args.out)
    return 0


def cmd_check(args, cfg):
    ctx = Context(cfg)
    u = ctx.universe(args.universe)
    if args.limit == 0:
        raise ConfigError("--limit must be -1 or positive")
    if args.prop == "honest":
        coeffs = tuple(int(c) for c in args.poly.split(","))
        report = check_honest(ctx.fn, u, HonestyPolynomial(coeffs), cfg.max_triples)
    elif args.prop == "uinj":
        report = check_unordered_injective(ctx.fn, u, cfg.max_triples)
    else:
        report = PROPS[args.prop](ctx.fn, u, cfg.max_triples, args.limit)
    out = report.to_dict()
    out["config"] = cfg.to_dict()
    out["context"] = ctx.describe()
    emit(out, args.out)
    return 0 if report.passed else 1


def cmd_census(args, cfg):
    ctx = Context(cfg)
    profile = preimage_census(ctx.fn, ctx.universe(args.universe), cfg.max_triples)
    out = profile.to_dict()
    out["config"] = cfg.to_dict()
    emit(out, args.out)
    return 0


def cmd_homan(args, cfg):
    ctx = Context(cfg)
    try:
        res = homan_search(ctx.fn, args.n, max_len=args.schedule_max_len, budget_ms=cfg.budget_ms)
    except SearchExhausted as exc:
        emit({"n": str(args.n), "fn": ctx.fn.descriptor, "found": False, "reason": str(exc),
              "config": cfg.to_dict()}, args.out)
        return 1
    out = res.to_dict()
    out.update(found=True, verified=res.verify(ctx.fn), fn=ctx.fn.descriptor, config=cfg.to_dict())
    emit(out, args.out)
    return 0


def cmd_bound(args, cfg):
    value = eval_homan_bound(args.m, args.x)
    emit({"m": str(args.m), "x": str(args.x), "value": str(value)}, args.out)
    return 0


def cmd_invert(args, cfg):
    ctx = Context(cfg)
    side = "second" if args.side == "second" else "first"
    found, probes = search_partner(ctx.fn, args.known, args.target, args.bound, side,
                                   prune=not args.no_prune)
    emit({"fn": ctx.fn.descriptor, "known": args.known, "target": args.target,
          "side": side, "bound": str(args.bound), "found": found, "probes": str(probes),
          "config": cfg.to_dict()}, args.out)
    return 0 if found is not None else 1


def reduce_inputs(ctx) -> list[str]:
    if ctx.instance is not None or isinstance(ctx.relation, SubsetSumRelation):
        return [x for x in all_strings(ctx.cfg.max_len) if SubsetSumInstance.decode(x) is not None]
    return all_strings(ctx.cfg.max_len)


def cmd_reduce(args, cfg):
    ctx = Context(cfg)
    r = ctx.relation
    sigma = build_sigma(r)
    g = first_argument_inverter(sigma, lambda a, c: witness_scan_bound(r, pair_decode(a)[0]))
    rows = []
    agree = 0
    for x in reduce_inputs(ctx):
        decided = decide_via_inverter(r, x, g)
        direct = bool(r.enumerate_witnesses(x))
        agree += decided == direct
        rows.append({"x": x, "via_inverter": decided, "enumeration": direct})
    emit({"relation": r.descriptor, "inputs": str(len(rows)), "agree": str(agree),
          "results": rows, "config": cfg.to_dict()}, args.out)
    return 0 if agree == len(rows) else 1


def cmd_agree2(args, cfg):
    ctx = Context(cfg)
    sampler = ctx.sampler()
    ts = [seeded_two_party(ctx.fn, sampler, cfg.seed, i) for i in range(args.sessions)]
    agreed = sum(t.agreed for t in ts)
    emit({"context": ctx.describe(), "sessions": str(len(ts)), "agreed": str(agreed),
          "transcripts": [t.to_dict() for t in ts], "config": cfg.to_dict()}, args.out)
    return 0 if agreed == len(ts) else 1


def cmd_agreek(args, cfg):
    if args.k < 2:
        raise ConfigError("--k must be at least 2")
    ctx = Context(cfg)
    sampler = ctx.sampler()
    ts = [seeded_multi_party(ctx.fn, sampler, cfg.seed, i, args.k) for i in range(args.sessions)]
    agreed = sum(t.agreed for t in ts)
    emit({"context": ctx.describe(), "k": str(args.k), "sessions": str(len(ts)),
          "agreed": str(agreed), "transcripts": [t.to_dict() for t in ts],
          "config": cfg.to_dict()}, args.out)
    return 0 if agreed == len(ts) else 1


def cmd_sign(args, cfg):
    ctx = Context(cfg)
    keys, m, s = seeded_signature(ctx.fn, ctx.sampler(), cfg.seed, args.index)
    if args.message is not None:
        m = args.message
        s = sign(ctx.fn, m, keys)
    emit({"kind": "signature", "context": ctx.describe(), "message": m, "signature": s,
          "public": list(keys.public), "config": cfg.to_dict()}, args.out)
    return 0


def cmd_verifysig(args, cfg):
    with open(args.infile, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("kind") != "signature":
        raise ConfigError("not a signature file")
    saved = data["config"]
    scfg = RunConfig(command="verifysig", seed=int(saved["seed"]), relation=saved["relation"],
                     fn=saved["fn"], max_len=int(saved["max_len"]), items=int(saved["items"]),
                     want=int(saved["want"]), instance=saved.get("instance"),
                     table=saved.get("table"), extra=dict(saved.get("extra") or {}))
    ctx = Context(scfg)
    ok = verify_sig(ctx.fn, data["message"], data["signature"], tuple(data["public"]))
    emit({"valid": ok, "fn": ctx.fn.descriptor, "message": data["message"],
          "signature": data["signature"]}, args.out)
    return 0 if ok else 1


def cmd_attack(args, cfg):
    ctx = Context(cfg)
    sampler = ctx.sampler()
    ts = []
    wins = recovered = 0
    for i in range(args.sessions):
        t = seeded_two_party(ctx.fn, sampler, cfg.seed, i)
        cand, ok = eve_combination_attack(ctx.fn, t)
        bound = args.bound if args.bound is not None else attack_bound(t)
        found, probes = eve_bruteforce_attack(ctx.fn, t, bound)
        t.attacks = {"combination": {"candidate": cand, "success": ok},
                     "bruteforce": {"recovered": found, "probes": str(probes),
                                    "bound": str(bound)}}
        wins += ok
        recovered += found is not None
        ts.append(t)
    emit({"context": ctx.describe(), "sessions": str(len(ts)),
          "combination_successes": str(wins), "bruteforce_recoveries": str(recovered),
          "transcripts": [t.to_dict() for t in ts], "config": cfg.to_dict()}, args.out)
    return 0


def cmd_counterexample(args, cfg):
    r = relation_from_name(cfg.relation)
    x0 = args.x0
    if x0 is None and isinstance(r, SubsetSumRelation):
        x0 = Context(cfg).instance.encoding
    ce = counterexample_triple(r, x0=x0, trashbin=cfg.extra.get("trashbin"))
    out = ce.to_dict()
    out["relation"] = r.descriptor
    out["config"] = cfg.to_dict()
    emit(out, args.out)
    return 0


COMMANDS = {
    "gen": cmd_gen, "check": cmd_check, "census": cmd_census, "homan": cmd_homan,
    "bound": cmd_bound, "invert": cmd_invert, "reduce": cmd_reduce, "agree2": cmd_agree2,
    "agreek": cmd_agreek, "sign": cmd_sign, "verifysig": cmd_verifysig, "attack": cmd_attack,
    "counterexample": cmd_counterexample,
}


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, ConstructionError, GenerationError, BudgetExceeded,
            OSError, ValueError, KeyError) as exc:
        print(f"aowf {args.command}: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))
