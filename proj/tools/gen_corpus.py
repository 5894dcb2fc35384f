#!/usr/bin/env python3
"""Generate seeded MicroC programs in the style of fuzzer-produced tests.

Each program computes a lot and prints a little, so most of it is
irrelevant to the printed output but tangled up with the relevant part
through calls, parameters, globals, struct pointers and gotos.

    tools/gen_corpus.py --microc build/tools/microc --out corpus
"""

import argparse
import pathlib
import random
import subprocess
import tempfile


class Function:
    def __init__(self, index, returns_void, params):
        self.name = f"f{index}"
        self.returns_void = returns_void
        self.params = params  # list of (type, name)

    def signature(self):
        ret = "void" if self.returns_void else "int"
        params = ", ".join(f"{t} {n}" for t, n in self.params)
        return f"{ret} {self.name}({params})"


class Generator:
    def __init__(self, seed):
        self.rng = random.Random(seed)
        self.structs = []
        self.globals = []
        self.functions = []
        self.label_count = 0

    def literal(self):
        return str(self.rng.randint(1, 9))

    def expr(self, ints, callees, depth=0):
        r = self.rng.random()
        if depth < 2 and r < 0.35:
            op = self.rng.choice(["+", "-", "*"])
            rhs = self.literal() if op == "*" else self.expr(ints, callees, depth + 1)
            return f"{self.expr(ints, callees, depth + 1)} {op} {rhs}"
        if depth == 0 and callees and r < 0.55:
            return self.call(self.rng.choice(callees), ints)
        if ints and r < 0.85:
            return self.rng.choice(ints)
        return self.literal()

    def call(self, fn, ints):
        args = []
        for t, _ in fn.params:
            if t == "int":
                args.append(self.rng.choice(ints) if ints and self.rng.random() < 0.7 else self.literal())
            else:
                args.append(f"({t})0")
        return f"{fn.name}({', '.join(args)})"

    def block(self, fn_index, ints, callees, locals_prefix, count, depth=0):
        stmts = []
        ints = list(ints)
        value_callees = [f for f in callees if not f.returns_void]
        for k in range(count):
            kind = self.rng.choice(
                ["local", "local", "global", "call", "if", "loop", "struct", "goto"]
                if depth == 0 else ["global", "local", "call"])
            name = f"{locals_prefix}{depth}_{k}"
            if kind == "local":
                stmts.append(f"int {name} = {self.expr(ints, value_callees)};")
                ints.append(name)
            elif kind == "global":
                g = self.rng.choice(self.globals)
                stmts.append(f"{g} = {g} + {self.expr(ints, value_callees)};")
            elif kind == "call" and callees:
                stmts.append(f"{self.call(self.rng.choice(callees), ints)};")
            elif kind == "if":
                then = self.block(fn_index, ints, callees, name + "t", 2, depth + 1)
                other = self.block(fn_index, ints, callees, name + "e", 1, depth + 1)
                cond = f"{self.expr(ints, [])} < {self.expr(ints, [])}"
                stmts.append(f"if ({cond}) {{ {' '.join(then)} }} else {{ {' '.join(other)} }}")
            elif kind == "loop":
                body = self.block(fn_index, ints + [name], callees, name + "w", 2, depth + 1)
                stmts.append(f"int {name} = 0;")
                stmts.append(f"while ({name} < 3) {{ {' '.join(body)} {name} = {name} + 1; }}")
                ints.append(name)
            elif kind == "struct" and self.structs:
                s = self.rng.choice(self.structs)
                stmts.append(f"struct {s}* {name} = (struct {s}*)0;")
            elif kind == "goto":
                label = f"skip{self.label_count}"
                self.label_count += 1
                g = self.rng.choice(self.globals)
                stmts.append(f"goto {label};")
                stmts.append(f"{g} = {g} + {self.literal()};")
                stmts.append(f"{label}: {g} = {g} - {self.literal()};")
        return stmts

    def program(self, n_functions):
        out = []
        for i in range(self.rng.randint(1, 2)):
            name = f"S{i}"
            fields = [f"int x{j};" for j in range(self.rng.randint(1, 3))]
            if self.structs:
                fields.append(f"struct {self.structs[-1]}* link;")
            out.append(f"struct {name} {{ {' '.join(fields)} }};")
            self.structs.append(name)
        for j in range(self.rng.randint(3, 5)):
            name = f"g{j}"
            self.globals.append(name)
            out.append(f"int {name} = {self.literal()};")

        for i in range(n_functions):
            params = [("int", f"a{i}_{k}") for k in range(self.rng.randint(1, 3))]
            if self.rng.random() < 0.3:
                params.append((f"struct {self.rng.choice(self.structs)}*", f"a{i}_s"))
            self.functions.append(Function(i, self.rng.random() < 0.2, params))

        forwards = [f for f in self.functions if self.rng.random() < 0.3]
        for f in forwards:
            out.append(f.signature() + ";")

        for i, fn in enumerate(self.functions):
            ints = [n for t, n in fn.params if t == "int"] + self.globals
            callees = self.rng.sample(self.functions[:i], min(2, i))
            body = self.block(i, ints, callees, f"l{i}_", self.rng.randint(2, 4))
            if not fn.returns_void:
                body.append(f"return {self.expr(ints, [])};")
            out.append(f"{fn.signature()} {{ {' '.join(body)} }}")

        main = []
        results = []
        for k, fn in enumerate(self.rng.sample(self.functions, min(4, len(self.functions)))):
            if fn.returns_void:
                main.append(f"{self.call(fn, results + self.globals)};")
            else:
                main.append(f"int r{k} = {self.call(fn, results + self.globals)};")
                results.append(f"r{k}")
        if self.rng.random() < 0.5:
            main.append(f"void*** handle = {self.rng.choice(self.functions).name};")
        shown = self.rng.sample(results + self.globals, 1 + (self.rng.random() < 0.3))
        for v in shown:
            main.append(f"print({v});")
        main.append("return 0;")
        out.append(f"int main() {{ {' '.join(main)} }}")
        return "\n".join(out) + "\n"


def runs_quickly(microc, text):
    with tempfile.NamedTemporaryFile("w", suffix=".mc", delete=False) as f:
        f.write(text)
    try:
        fmt = subprocess.run([microc, "fmt", f.name], capture_output=True, text=True)
        run = subprocess.run([microc, "run", "--max-steps", "20000", f.name],
                             capture_output=True, text=True)
        return run.returncode == 0, fmt.stdout, run.stdout
    finally:
        pathlib.Path(f.name).unlink()


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--microc", required=True)
    parser.add_argument("--out", required=True, type=pathlib.Path)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--seed", type=int, default=2024)
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    seed = args.seed
    for index in range(1, args.count + 1):
        while True:
            seed += 1
            text = Generator(seed).program(n_functions=4 + index % 4)
            ok, formatted, output = runs_quickly(args.microc, text)
            if ok:
                break
        stem = args.out / f"gen{index:02d}"
        stem.with_suffix(".mc").write_text(formatted)
        stem.with_suffix(".expected").write_text(output)
        print(f"{stem.name}: seed {seed}, {len(output.split())} printed value(s)")


if __name__ == "__main__":
    main()
