#!/usr/bin/env python3
"""Regenerates the large reduction fixtures under tests/fixtures.

The outputs are committed; rerunning with the same seed is byte-stable.
"""
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def helper(rng, k):
    a, b, c = rng.randint(2, 9), rng.randint(1, 5), rng.randint(3, 20)
    return [
        f"int helper{k}(int a) {{",
        "  int s = 0;",
        "  int i = 0;",
        f"  while (i < {b + 2}) {{",
        f"    s = s + a % {a};",
        "    i++;",
        "  }",
        f"  if (s > {c}) {{",
        f"    s = s - {b};",
        "  } else {",
        "    s = s + 1;",
        "  }",
        "  return s;",
        "}",
    ]


def planted_crash(rng, target_lines=500):
    lines = []
    k = 0
    # Helpers first, main last; the planted call sits midway through main.
    while len(lines) < target_lines - 140:
        lines += helper(rng, k)
        k += 1
    body = ["  int acc = 0;", "  int t = rand(0, 9);"]
    for i in range(k):
        body.append(f"  int r{i} = helper{i}(t);")
        body.append(f"  acc = acc + r{i} % 5;")
    planted_at = len(body) // 2
    body[planted_at:planted_at] = [
        "  int d = rand(-3, -1);",
        "  __builtin_crash_if_mod_by_negative(acc, d);",
    ]
    while len(lines) + len(body) + 3 + 3 <= target_lines:
        body += [f"  if (acc > {rng.randint(0, 50)}) {{", f"    acc = acc - {rng.randint(1, 4)};", "  }"]
    while len(lines) + len(body) + 3 < target_lines:
        body.append(f"  acc = acc + {rng.randint(1, 3)};")
    lines += ["int main(int n) {"] + body + ["  print(acc);", "}"]
    return "\n".join(lines) + "\n"


def differential(rng, target_lines=200):
    body = ["  int total = 0;"]
    n = 0
    planted = False
    while len(body) + 7 <= target_lines - 3:
        if not planted and len(body) > target_lines // 2:
            body += ["  int k = rand(0, 4);", "  int q = 100 / k;", "  total = total + q % 3;"]
            planted = True
            continue
        lo = rng.randint(1, 5)
        hi = lo + rng.randint(0, 5)
        body += [
            f"  int v{n} = rand({lo}, {hi});",
            f"  int w{n} = {rng.randint(10, 90)} / v{n};",
            f"  if (w{n} > {rng.randint(5, 40)}) {{",
            f"    total = total + v{n} % 4;",
            "  } else {",
            f"    total = total - w{n} % 3;",
            "  }",
        ]
        n += 1
    while len(body) < target_lines - 3:
        body.append(f"  total = total + {rng.randint(1, 3)};")
    return "\n".join(["int main() {"] + body + ["  print(total);", "}"]) + "\n"


def main():
    rng = random.Random(20240601)
    (OUT / "planted_crash.mini").write_text(planted_crash(rng))
    (OUT / "differential.mini").write_text(differential(rng))


if __name__ == "__main__":
    main()
